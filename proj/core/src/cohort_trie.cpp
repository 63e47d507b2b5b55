// Copyright 2026 The cohortlex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cohortlex/cohort_trie.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cohortlex/error.hpp"

namespace cohortlex {

CohortTrie::CohortTrie(Lexicon lexicon) : lexicon_(std::move(lexicon)) {
  nodes_.emplace_back();
  const auto& entries = lexicon_.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    std::uint32_t cur = 0;
    nodes_[cur].cum_freq += e.frequency;
    ++nodes_[cur].entry_count;
    for (const auto& ph : e.pron) {
      auto it = nodes_[cur].children.find(ph);
      std::uint32_t next;
      if (it == nodes_[cur].children.end()) {
        next = static_cast<std::uint32_t>(nodes_.size());
        nodes_[cur].children.emplace(ph, next);
        nodes_.emplace_back();
      } else {
        next = it->second;
      }
      cur = next;
      nodes_[cur].cum_freq += e.frequency;
      ++nodes_[cur].entry_count;
    }
    nodes_[cur].terminals.push_back(i);
  }
}

const CohortTrie::Node* CohortTrie::walk(std::span<const Phoneme> prefix) const {
  const Node* node = &nodes_.front();
  for (const auto& ph : prefix) {
    auto it = node->children.find(ph);
    if (it == node->children.end()) return nullptr;
    node = &nodes_[it->second];
  }
  return node;
}

void CohortTrie::collect(const Node& node, std::vector<std::size_t>& out) const {
  out.insert(out.end(), node.terminals.begin(), node.terminals.end());
  for (const auto& [ph, child] : node.children) collect(nodes_[child], out);
}

double CohortTrie::prefix_frequency(std::span<const Phoneme> prefix) const {
  const Node* node = walk(prefix);
  return node ? node->cum_freq : 0.0;
}

std::size_t CohortTrie::cohort_size(std::span<const Phoneme> prefix) const {
  const Node* node = walk(prefix);
  return node ? node->entry_count : 0;
}

Cohort CohortTrie::cohort_at(std::span<const Phoneme> prefix) const {
  const Node* node = walk(prefix);
  if (!node)
    throw ImpossibleContinuation("no word starts with /" + format_phonemes(prefix) + "/");

  std::vector<std::size_t> indices;
  indices.reserve(node->entry_count);
  collect(*node, indices);
  std::sort(indices.begin(), indices.end());

  Cohort cohort;
  cohort.prefix.assign(prefix.begin(), prefix.end());
  cohort.members.reserve(indices.size());
  for (std::size_t i : indices)
    cohort.members.push_back({i, lexicon_.entries()[i].frequency / node->cum_freq});
  return cohort;
}

double CohortTrie::conditional_prob(std::span<const Phoneme> prefix) const {
  if (prefix.empty()) throw std::invalid_argument("conditional_prob needs a non-empty prefix");
  const double denom = prefix_frequency(prefix.first(prefix.size() - 1));
  if (denom <= 0.0)
    throw ImpossibleContinuation("no word starts with /" +
                                 format_phonemes(prefix.first(prefix.size() - 1)) + "/");
  return prefix_frequency(prefix) / denom;
}

std::optional<std::size_t> CohortTrie::uniqueness_point(const LexiconEntry& entry) const {
  if (lexicon_.find(entry) == Lexicon::npos)
    throw LookupError("'" + entry.orthography + "' is not in the lexicon");

  const Node* full = walk(entry.pron);
  const std::size_t homophones = full->terminals.size();
  const Node* node = &nodes_.front();
  for (std::size_t t = 1; t <= entry.pron.size(); ++t) {
    node = &nodes_[node->children.at(entry.pron[t - 1])];
    if (node->entry_count == homophones) return t;
  }
  return std::nullopt;
}

bool CohortTrie::verify_aggregates(double rel_tol) const {
  for (const auto& node : nodes_) {
    double sum = 0.0;
    std::size_t count = node.terminals.size();
    for (std::size_t i : node.terminals) sum += lexicon_.entries()[i].frequency;
    for (const auto& [ph, child] : node.children) {
      sum += nodes_[child].cum_freq;
      count += nodes_[child].entry_count;
    }
    if (!(node.cum_freq > 0.0)) return false;
    if (count != node.entry_count) return false;
    if (std::abs(sum - node.cum_freq) > rel_tol * node.cum_freq) return false;
  }
  return true;
}

}  // namespace cohortlex

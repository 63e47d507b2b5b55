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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cohortlex/lexicon.hpp"

namespace cohortlex {

struct CohortMember {
  std::size_t entry;  // index into the trie's lexicon
  double prob;
};

// Words consistent with a heard prefix, each with P(w|C) = f(w) / f(prefix).
// Members are ordered by lexicon index.
struct Cohort {
  PhonemeSeq prefix;
  std::vector<CohortMember> members;
};

// Phoneme prefix tree over a lexicon. Every node stores the summed frequency
// of all entries whose pronunciation passes through it, so prefix sums are
// O(prefix length). Immutable after construction; all queries are const and
// safe to call concurrently.
class CohortTrie {
 public:
  explicit CohortTrie(Lexicon lexicon);

  const Lexicon& lexicon() const noexcept { return lexicon_; }
  const LexiconEntry& entry(std::size_t index) const { return lexicon_.entries().at(index); }

  double total_frequency() const noexcept { return nodes_.front().cum_freq; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  // Summed frequency of entries starting with `prefix`; 0 when none do. The
  // empty prefix yields the total frequency.
  double prefix_frequency(std::span<const Phoneme> prefix) const;

  // Number of entries starting with `prefix`.
  std::size_t cohort_size(std::span<const Phoneme> prefix) const;

  // Throws ImpossibleContinuation when no entry starts with `prefix`.
  Cohort cohort_at(std::span<const Phoneme> prefix) const;

  // f(prefix) / f(prefix minus its last phoneme). Throws
  // ImpossibleContinuation when the denominator is 0 and std::invalid_argument
  // for an empty prefix.
  double conditional_prob(std::span<const Phoneme> prefix) const;

  // First 1-based position at which every surviving entry shares this entry's
  // pronunciation (i.e. only the entry and its homophones remain). nullopt if
  // a longer word keeps the whole pronunciation as its prefix. Throws
  // LookupError for an entry not in the lexicon.
  std::optional<std::size_t> uniqueness_point(const LexiconEntry& entry) const;

  // Recomputes the per-node aggregate from children and terminals; used by
  // tests to check the structural invariant.
  bool verify_aggregates(double rel_tol = 1e-12) const;

 private:
  struct Node {
    std::map<Phoneme, std::uint32_t> children;
    std::vector<std::size_t> terminals;
    double cum_freq = 0.0;
    std::size_t entry_count = 0;
  };

  const Node* walk(std::span<const Phoneme> prefix) const;
  void collect(const Node& node, std::vector<std::size_t>& out) const;

  Lexicon lexicon_;
  std::vector<Node> nodes_;
};

inline CohortTrie build_trie(Lexicon lexicon) { return CohortTrie(std::move(lexicon)); }

}  // namespace cohortlex

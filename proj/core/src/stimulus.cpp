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

#include "cohortlex/stimulus.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

namespace cohortlex {

std::optional<std::size_t> divergence_point(std::span<const Phoneme> a,
                                            std::span<const Phoneme> b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("divergence_point needs pronunciations of length >= 2");
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 1; i < n; ++i)
    if (a[i] != b[i]) return i + 1;
  return std::nullopt;
}

std::vector<WordPair> find_word_pairs(const Lexicon& lexicon, const PairSearchOptions& options) {
  if (options.min_shared < 1) throw std::invalid_argument("min_shared must be >= 1");

  // Bucket entries by onset so each voicing pair only compares its buckets.
  std::map<Phoneme, std::vector<const LexiconEntry*>> by_onset;
  for (const auto& e : lexicon.entries())
    if (e.pron.size() >= 2) by_onset[e.pron.front()].push_back(&e);

  std::vector<WordPair> pairs;
  for (const auto& [voiced, voiceless] : plosive_voicing_pairs()) {
    const auto va = by_onset.find(voiced);
    const auto vb = by_onset.find(voiceless);
    if (va == by_onset.end() || vb == by_onset.end()) continue;
    for (const LexiconEntry* a : va->second) {
      for (const LexiconEntry* b : vb->second) {
        const auto div = divergence_point(a->pron, b->pron);
        const std::size_t shared =
            div ? *div - 2 : std::min(a->pron.size(), b->pron.size()) - 1;
        if (shared < options.min_shared) continue;
        if (!div && options.require_divergence) continue;
        pairs.push_back({*a, *b, {voiced, voiceless}, shared, div});
      }
    }
  }

  std::sort(pairs.begin(), pairs.end(), [](const WordPair& l, const WordPair& r) {
    if (l.shared_len != r.shared_len) return l.shared_len > r.shared_len;
    if (l.entry_a.orthography != r.entry_a.orthography)
      return l.entry_a.orthography < r.entry_a.orthography;
    if (l.entry_b.orthography != r.entry_b.orthography)
      return l.entry_b.orthography < r.entry_b.orthography;
    if (l.entry_a.pron != r.entry_a.pron) return l.entry_a.pron < r.entry_a.pron;
    return l.entry_b.pron < r.entry_b.pron;
  });

  std::set<std::pair<std::string, std::string>> seen;
  std::vector<WordPair> unique;
  for (auto& p : pairs) {
    auto key = std::minmax(p.entry_a.orthography, p.entry_b.orthography);
    if (seen.emplace(key.first, key.second).second) unique.push_back(std::move(p));
  }
  return unique;
}

void write_pairs_csv(std::ostream& out, std::span<const WordPair> pairs) {
  out << "word_a,word_b,onset_a,onset_b,shared_len,divergence_point\n";
  for (const auto& p : pairs) {
    out << p.entry_a.orthography << ',' << p.entry_b.orthography << ','
        << p.onset_pair.first.symbol() << ',' << p.onset_pair.second.symbol() << ','
        << p.shared_len << ',';
    if (p.divergence)
      out << *p.divergence;
    else
      out << "end";
    out << '\n';
  }
}

}  // namespace cohortlex

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
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cohortlex/lexicon.hpp"

namespace cohortlex {

// First 1-based position >= 2 at which the pronunciations differ, or nullopt
// ("end") when they agree through the shorter one. Onsets are not compared.
// Throws std::invalid_argument if either is shorter than 2.
std::optional<std::size_t> divergence_point(std::span<const Phoneme> a,
                                            std::span<const Phoneme> b);

// Two words whose onsets form a voicing pair and whose phonemes after the
// onset agree up to a point of disambiguation. entry_a has the voiced onset.
struct WordPair {
  LexiconEntry entry_a;
  LexiconEntry entry_b;
  std::pair<Phoneme, Phoneme> onset_pair;
  std::size_t shared_len = 0;
  std::optional<std::size_t> divergence;  // nullopt: one pron ends first / identical
};

struct PairSearchOptions {
  std::size_t min_shared = 1;
  // Drop pairs that never diverge (one post-onset sequence is a prefix of the
  // other).
  bool require_divergence = true;
};

// Sorted by shared_len descending, then by entry_a and entry_b orthography.
// An unordered orthography pair is reported at most once.
std::vector<WordPair> find_word_pairs(const Lexicon& lexicon,
                                      const PairSearchOptions& options = {});

// Columns: word_a,word_b,onset_a,onset_b,shared_len,divergence_point
void write_pairs_csv(std::ostream& out, std::span<const WordPair> pairs);

}  // namespace cohortlex

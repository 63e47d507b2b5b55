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

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cohortlex {

// A single phoneme token such as "B" or "AE". Tokens are stored upper-case;
// equality is exact token equality.
class Phoneme {
 public:
  Phoneme() = default;
  // Normalizes to upper case. Throws ValidationError on an empty or
  // whitespace-containing token.
  explicit Phoneme(std::string_view symbol);

  const std::string& symbol() const noexcept { return symbol_; }

  friend bool operator==(const Phoneme&, const Phoneme&) = default;
  friend auto operator<=>(const Phoneme&, const Phoneme&) = default;

 private:
  std::string symbol_;
};

std::ostream& operator<<(std::ostream& os, const Phoneme& p);

// Positions are 1-based in the public vocabulary (t = 1 is the onset) but the
// container is an ordinary 0-indexed vector.
using PhonemeSeq = std::vector<Phoneme>;

// Parses "B AE T" (any run of spaces/tabs as separator).
PhonemeSeq parse_phonemes(std::string_view text);
std::string format_phonemes(std::span<const Phoneme> seq);

// Returns true when `prefix` is a prefix of `seq` (the empty prefix always is).
bool has_prefix(std::span<const Phoneme> seq, std::span<const Phoneme> prefix);

struct LexiconEntry {
  std::string orthography;
  PhonemeSeq pron;
  double frequency = 0.0;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

enum class FrequencyUnit { kCounts, kPerMillion };

std::string_view to_string(FrequencyUnit unit);

// Immutable word list with a phoneme inventory. Homophones (same pron,
// different orthography) are distinct entries; an orthography+pron pair may
// appear only once.
class Lexicon {
 public:
  // Validates every invariant; throws ValidationError on violation.
  Lexicon(std::vector<LexiconEntry> entries, std::set<Phoneme> inventory,
          FrequencyUnit unit = FrequencyUnit::kCounts);

  // Inventory is the union of phonemes seen in the entries.
  explicit Lexicon(std::vector<LexiconEntry> entries,
                   FrequencyUnit unit = FrequencyUnit::kCounts);

  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  const std::set<Phoneme>& inventory() const noexcept { return inventory_; }
  FrequencyUnit frequency_unit() const noexcept { return unit_; }
  std::size_t size() const noexcept { return entries_.size(); }

  double total_frequency() const noexcept { return total_; }

  // Index of the entry with this orthography (first match), or npos.
  std::size_t find(std::string_view orthography) const noexcept;
  // Index of the entry with this exact orthography and pron, or npos.
  std::size_t find(const LexiconEntry& entry) const noexcept;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.entries_ == b.entries_ && a.inventory_ == b.inventory_ &&
           a.unit_ == b.unit_;
  }

 private:
  void validate();

  std::vector<LexiconEntry> entries_;
  std::set<Phoneme> inventory_;
  FrequencyUnit unit_ = FrequencyUnit::kCounts;
  double total_ = 0.0;
};

struct ParseOptions {
  // Add-lambda smoothing. With lambda > 0 a zero frequency is accepted and
  // every frequency becomes f + lambda. Negative frequencies are always
  // rejected.
  double smoothing = 0.0;
};

// TSV format:
//   #unit: counts|per-million        (optional)
//   #inventory: B P AE ...           (optional; restricts the phoneme set)
//   # anything else                  (comment)
//   orthography<TAB>PH1 PH2 ...<TAB>frequency
Lexicon parse_lexicon(std::istream& in, const ParseOptions& options = {});
Lexicon parse_lexicon_text(std::string_view text,
                           const ParseOptions& options = {});
Lexicon parse_lexicon(const std::filesystem::path& path,
                      const ParseOptions& options = {});

// Writes a TSV that parse_lexicon reads back into an identical Lexicon
// (inventory header included, frequencies at round-trip precision).
void write_lexicon(std::ostream& out, const Lexicon& lexicon);

// Voiced/voiceless plosive pairs: (B,P), (D,T), (G,K).
const std::vector<std::pair<Phoneme, Phoneme>>& plosive_voicing_pairs();
bool is_plosive_voicing_pair(const Phoneme& voiced, const Phoneme& voiceless);

}  // namespace cohortlex

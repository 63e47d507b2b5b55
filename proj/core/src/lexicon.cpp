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

#include "cohortlex/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cohortlex/error.hpp"

namespace cohortlex {
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// std::from_chars for double is available in libstdc++ 11.
bool parse_double(std::string_view s, double& value) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(value);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

Phoneme::Phoneme(std::string_view symbol) {
  if (symbol.empty()) throw ValidationError("empty phoneme token");
  symbol_.reserve(symbol.size());
  for (char c : symbol) {
    if (is_blank(c)) throw ValidationError("phoneme token contains whitespace");
    symbol_.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
}

std::ostream& operator<<(std::ostream& os, const Phoneme& p) {
  return os << p.symbol();
}

PhonemeSeq parse_phonemes(std::string_view text) {
  PhonemeSeq seq;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_blank(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_blank(text[j])) ++j;
    if (j > i) seq.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return seq;
}

std::string format_phonemes(std::span<const Phoneme> seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out.push_back(' ');
    out += seq[i].symbol();
  }
  return out;
}

bool has_prefix(std::span<const Phoneme> seq, std::span<const Phoneme> prefix) {
  return prefix.size() <= seq.size() &&
         std::equal(prefix.begin(), prefix.end(), seq.begin());
}

std::string_view to_string(FrequencyUnit unit) {
  return unit == FrequencyUnit::kPerMillion ? "per-million" : "counts";
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries, std::set<Phoneme> inventory,
                 FrequencyUnit unit)
    : entries_(std::move(entries)), inventory_(std::move(inventory)), unit_(unit) {
  validate();
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries, FrequencyUnit unit)
    : entries_(std::move(entries)), unit_(unit) {
  for (const auto& e : entries_) inventory_.insert(e.pron.begin(), e.pron.end());
  validate();
}

void Lexicon::validate() {
  if (entries_.empty()) throw ValidationError("empty lexicon");
  std::set<std::pair<std::string, PhonemeSeq>> seen;
  total_ = 0.0;
  for (const auto& e : entries_) {
    if (e.pron.empty())
      throw ValidationError("empty pronunciation for '" + e.orthography + "'");
    if (!(e.frequency > 0.0) || !std::isfinite(e.frequency))
      throw ValidationError("non-positive frequency for '" + e.orthography + "'");
    for (const auto& ph : e.pron) {
      if (!inventory_.contains(ph))
        throw ValidationError("phoneme '" + ph.symbol() + "' in '" + e.orthography +
                              "' is not in the inventory");
    }
    if (!seen.emplace(e.orthography, e.pron).second)
      throw ValidationError("duplicate entry '" + e.orthography + "' /" +
                            format_phonemes(e.pron) + "/");
    total_ += e.frequency;
  }
}

std::size_t Lexicon::find(std::string_view orthography) const noexcept {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].orthography == orthography) return i;
  return npos;
}

std::size_t Lexicon::find(const LexiconEntry& entry) const noexcept {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].orthography == entry.orthography &&
        entries_[i].pron == entry.pron)
      return i;
  return npos;
}

Lexicon parse_lexicon(std::istream& in, const ParseOptions& options) {
  if (!(options.smoothing >= 0.0) || !std::isfinite(options.smoothing))
    throw ValidationError("smoothing must be a finite value >= 0");

  std::vector<LexiconEntry> entries;
  std::set<std::pair<std::string, PhonemeSeq>> seen;
  std::set<Phoneme> declared;
  bool has_inventory = false;
  FrequencyUnit unit = FrequencyUnit::kCounts;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (trim(line).empty()) continue;

    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const std::size_t colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string key = lower(trim(body.substr(0, colon)));
      const std::string_view value = trim(body.substr(colon + 1));
      if (key == "unit") {
        const std::string v = lower(value);
        if (v == "counts")
          unit = FrequencyUnit::kCounts;
        else if (v == "per-million")
          unit = FrequencyUnit::kPerMillion;
        else
          throw ValidationError("unknown frequency unit '" + std::string(value) + "'",
                                line_no);
      } else if (key == "inventory") {
        has_inventory = true;
        for (auto& ph : parse_phonemes(value)) declared.insert(std::move(ph));
      }
      continue;
    }

    const auto fields = split_tabs(line);
    if (fields.size() != 3)
      throw ParseError("expected 3 tab-separated columns, found " +
                           std::to_string(fields.size()),
                       line_no);

    LexiconEntry entry;
    entry.orthography = std::string(trim(fields[0]));
    if (entry.orthography.empty()) throw ParseError("empty orthography", line_no);
    try {
      entry.pron = parse_phonemes(fields[1]);
    } catch (const ValidationError& e) {
      throw ValidationError(e.what(), line_no);
    }
    if (entry.pron.empty()) throw ValidationError("empty pronunciation", line_no);

    double freq = 0.0;
    if (!parse_double(fields[2], freq))
      throw ValidationError("non-numeric frequency '" + std::string(trim(fields[2])) + "'",
                            line_no);
    if (freq < 0.0 || (freq == 0.0 && options.smoothing == 0.0))
      throw ValidationError("frequency must be > 0", line_no);
    entry.frequency = freq + options.smoothing;

    if (!seen.emplace(entry.orthography, entry.pron).second)
      throw ValidationError("duplicate entry '" + entry.orthography + "'", line_no);
    if (has_inventory) {
      for (const auto& ph : entry.pron)
        if (!declared.contains(ph))
          throw ValidationError("phoneme '" + ph.symbol() + "' not in declared inventory",
                                line_no);
    }
    entries.push_back(std::move(entry));
  }

  if (entries.empty()) throw ValidationError("empty lexicon");
  if (has_inventory) return Lexicon(std::move(entries), std::move(declared), unit);
  return Lexicon(std::move(entries), unit);
}

Lexicon parse_lexicon_text(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_lexicon(in, options);
}

Lexicon parse_lexicon(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw LookupError("cannot open lexicon file '" + path.string() + "'");
  return parse_lexicon(in, options);
}

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  out << "#unit: " << to_string(lexicon.frequency_unit()) << '\n';
  out << "#inventory:";
  for (const auto& ph : lexicon.inventory()) out << ' ' << ph.symbol();
  out << '\n';
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& e : lexicon.entries())
    out << e.orthography << '\t' << format_phonemes(e.pron) << '\t' << e.frequency
        << '\n';
  out.precision(old_precision);
}

const std::vector<std::pair<Phoneme, Phoneme>>& plosive_voicing_pairs() {
  static const std::vector<std::pair<Phoneme, Phoneme>> pairs = {
      {Phoneme("B"), Phoneme("P")},
      {Phoneme("D"), Phoneme("T")},
      {Phoneme("G"), Phoneme("K")},
  };
  return pairs;
}

bool is_plosive_voicing_pair(const Phoneme& voiced, const Phoneme& voiceless) {
  const auto& pairs = plosive_voicing_pairs();
  return std::find(pairs.begin(), pairs.end(), std::pair{voiced, voiceless}) !=
         pairs.end();
}

}  // namespace cohortlex

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
#include <span>
#include <string>
#include <vector>

#include "cohortlex/cohort_trie.hpp"
#include "cohortlex/lexicon.hpp"

namespace cohortlex {

// Graded two-alternative evidence about the word onset: P(a|A) = p_a and
// P(b|A) = 1 - p_a.
class AcousticEvidence {
 public:
  // Throws ValidationError if a == b or p_a is outside [0, 1].
  AcousticEvidence(Phoneme a, Phoneme b, double p_a);

  const Phoneme& phoneme_a() const noexcept { return a_; }
  const Phoneme& phoneme_b() const noexcept { return b_; }
  double p_a() const noexcept { return p_a_; }
  double p_b() const noexcept { return 1.0 - p_a_; }

  // Onset the switch model commits to: the more probable phoneme, with
  // phoneme_a winning ties.
  const Phoneme& committed() const noexcept { return p_a_ >= 0.5 ? a_ : b_; }

 private:
  Phoneme a_;
  Phoneme b_;
  double p_a_;
};

// -sum p log2 p with 0 log 0 = 0.
double entropy_bits(std::span<const double> probs);

// -log2(p), returning +0 for p >= 1.
double surprisal_bits(double prob);

// Entropy of the frequency-normalized cohort at `prefix`.
double switch_entropy(const CohortTrie& trie, std::span<const Phoneme> prefix);

// -log2 of f(prefix) / f(prefix minus last). Throws ImpossibleContinuation
// when no word continues with the last phoneme.
double switch_surprisal(const CohortTrie& trie, std::span<const Phoneme> prefix);

// The union of the two onset sub-cohorts, Ca = [a]+continuation and
// Cb = [b]+continuation. Members of Ca come first, each block in lexicon
// order.
struct WeightedCohort {
  PhonemeSeq continuation;
  std::vector<CohortMember> members;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  // Sum of P(w|Cx) P(x|A) before renormalization. Below 1 only when one
  // sub-cohort is empty.
  double raw_mass = 0.0;
  bool renormalized = false;
};

// P(w|C,A) = P(w|Ca) P(a|A) + P(w|Cb) P(b|A). When one sub-cohort is empty
// the survivor is rescaled to sum to 1. Throws ImpossibleContinuation when
// both are empty, or when the only surviving sub-cohort carries zero
// acoustic weight.
WeightedCohort acoustic_weighted_probs(const CohortTrie& trie,
                                       const AcousticEvidence& evidence,
                                       std::span<const Phoneme> continuation);

double acoustic_entropy(const CohortTrie& trie, const AcousticEvidence& evidence,
                        std::span<const Phoneme> continuation);

// The argument of the log in the acoustic-weighted surprisal:
//   sum_x P(x|A) * f(x,cont) / f(x,cont[:-1]) * Q_x,
//   Q_x = f(x,cont) / (f(a,cont) + f(b,cont)).
// An empty continuation gives the onset form, where f(x,cont[:-1]) is the
// lexicon total. The result is always in [0, 1].
double acoustic_surprisal_inner(const CohortTrie& trie, const AcousticEvidence& evidence,
                                std::span<const Phoneme> continuation);

// Surprisal at position t = continuation.size() + 1 >= 2. Throws
// std::invalid_argument for an empty continuation and ImpossibleContinuation
// when neither onset admits it.
double acoustic_surprisal(const CohortTrie& trie, const AcousticEvidence& evidence,
                          std::span<const Phoneme> continuation);

double acoustic_surprisal_onset(const CohortTrie& trie, const AcousticEvidence& evidence);

struct MetricPoint {
  std::size_t position = 0;
  Phoneme phoneme;
  double switch_surprisal = 0.0;
  double acoustic_surprisal = 0.0;
  double switch_entropy = 0.0;
  double acoustic_entropy = 0.0;
  std::size_t switch_cohort_size = 0;
  std::size_t joint_cohort_size = 0;
};

struct MetricTrace {
  LexiconEntry word;
  AcousticEvidence evidence;
  std::vector<MetricPoint> points;

  const MetricPoint* at(std::size_t position) const noexcept {
    return position >= 1 && position <= points.size() ? &points[position - 1] : nullptr;
  }
};

// One point per phoneme of `word`. The switch model stays committed to
// evidence.committed() for the whole word; the acoustic model uses the
// word's phonemes after the onset as the continuation. The word need not be
// in the lexicon (non-word continuum endpoints are valid stimuli), but its
// onset must be one of the evidence phonemes.
MetricTrace metric_trace(const CohortTrie& trie, const LexiconEntry& word,
                         const AcousticEvidence& evidence);

enum class Quantity { kSurprisal, kEntropy };

std::string_view to_string(Quantity q);

// Pearson r. Throws UndefinedCorrelation for fewer than two points or a
// constant input.
double pearson(std::span<const double> x, std::span<const double> y);

// Correlation across traces between the switch and acoustic values at one
// position. Traces shorter than `position` are skipped; at least three must
// remain.
double model_correlation(std::span<const MetricTrace> traces, std::size_t position,
                         Quantity quantity);

struct Divergence {
  std::string orthography;
  double switch_value = 0.0;
  double acoustic_value = 0.0;
  double difference = 0.0;  // |acoustic - switch|
};

// Traces ordered by descending |acoustic - switch| at `position`, ties broken
// by orthography. Traces shorter than `position` are skipped.
std::vector<Divergence> model_divergence_ranking(std::span<const MetricTrace> traces,
                                                 std::size_t position, Quantity quantity);

}  // namespace cohortlex

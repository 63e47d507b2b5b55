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

#include "cohortlex/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cohortlex/error.hpp"

namespace cohortlex {
namespace {

PhonemeSeq with_onset(const Phoneme& onset, std::span<const Phoneme> continuation) {
  PhonemeSeq seq;
  seq.reserve(continuation.size() + 1);
  seq.push_back(onset);
  seq.insert(seq.end(), continuation.begin(), continuation.end());
  return seq;
}

double entropy_of(const std::vector<CohortMember>& members) {
  double h = 0.0;
  for (const auto& m : members)
    if (m.prob > 0.0) h -= m.prob * std::log2(m.prob);
  return std::max(h, 0.0);
}

}  // namespace

AcousticEvidence::AcousticEvidence(Phoneme a, Phoneme b, double p_a)
    : a_(std::move(a)), b_(std::move(b)), p_a_(p_a) {
  if (a_ == b_) throw ValidationError("evidence phonemes must differ");
  if (!(p_a_ >= 0.0 && p_a_ <= 1.0))
    throw ValidationError("evidence probability must lie in [0, 1]");
}

double entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log2(p);
  return std::max(h, 0.0);
}

double surprisal_bits(double prob) { return prob >= 1.0 ? 0.0 : -std::log2(prob); }

double switch_entropy(const CohortTrie& trie, std::span<const Phoneme> prefix) {
  return entropy_of(trie.cohort_at(prefix).members);
}

double switch_surprisal(const CohortTrie& trie, std::span<const Phoneme> prefix) {
  const double p = trie.conditional_prob(prefix);
  if (p <= 0.0)
    throw ImpossibleContinuation("no word continues /" +
                                 format_phonemes(prefix.first(prefix.size() - 1)) +
                                 "/ with " + prefix.back().symbol());
  return surprisal_bits(p);
}

WeightedCohort acoustic_weighted_probs(const CohortTrie& trie,
                                       const AcousticEvidence& evidence,
                                       std::span<const Phoneme> continuation) {
  const PhonemeSeq prefix_a = with_onset(evidence.phoneme_a(), continuation);
  const PhonemeSeq prefix_b = with_onset(evidence.phoneme_b(), continuation);
  const bool has_a = trie.prefix_frequency(prefix_a) > 0.0;
  const bool has_b = trie.prefix_frequency(prefix_b) > 0.0;
  if (!has_a && !has_b)
    throw ImpossibleContinuation("neither /" + format_phonemes(prefix_a) + "/ nor /" +
                                 format_phonemes(prefix_b) + "/ starts a word");

  WeightedCohort out;
  out.continuation.assign(continuation.begin(), continuation.end());

  if (has_a && has_b) {
    const Cohort ca = trie.cohort_at(prefix_a);
    const Cohort cb = trie.cohort_at(prefix_b);
    out.size_a = ca.members.size();
    out.size_b = cb.members.size();
    out.members.reserve(out.size_a + out.size_b);
    for (const auto& m : ca.members) out.members.push_back({m.entry, m.prob * evidence.p_a()});
    for (const auto& m : cb.members) out.members.push_back({m.entry, m.prob * evidence.p_b()});
    out.raw_mass = 0.0;
    for (const auto& m : out.members) out.raw_mass += m.prob;
    return out;
  }

  // One sub-cohort is empty: weighting leaves mass P(x|A) on the survivor, which
  // is rescaled back to P(w|Cx).
  const double weight = has_a ? evidence.p_a() : evidence.p_b();
  if (weight <= 0.0)
    throw ImpossibleContinuation("the only onset consistent with /" +
                                 format_phonemes(continuation) +
                                 "/ has zero acoustic probability");
  const Cohort survivor = trie.cohort_at(has_a ? prefix_a : prefix_b);
  (has_a ? out.size_a : out.size_b) = survivor.members.size();
  out.members = survivor.members;
  out.raw_mass = weight;
  out.renormalized = true;
  return out;
}

double acoustic_entropy(const CohortTrie& trie, const AcousticEvidence& evidence,
                        std::span<const Phoneme> continuation) {
  return entropy_of(acoustic_weighted_probs(trie, evidence, continuation).members);
}

double acoustic_surprisal_inner(const CohortTrie& trie, const AcousticEvidence& evidence,
                                std::span<const Phoneme> continuation) {
  const PhonemeSeq prefix_a = with_onset(evidence.phoneme_a(), continuation);
  const PhonemeSeq prefix_b = with_onset(evidence.phoneme_b(), continuation);
  const double cur_a = trie.prefix_frequency(prefix_a);
  const double cur_b = trie.prefix_frequency(prefix_b);
  const double joint = cur_a + cur_b;
  if (joint <= 0.0) return 0.0;

  const auto prev = [&](const PhonemeSeq& prefix) {
    return trie.prefix_frequency(std::span(prefix).first(prefix.size() - 1));
  };
  const auto term = [&](double weight, double cur, double previous) {
    if (cur <= 0.0 || previous <= 0.0) return 0.0;
    return weight * (cur / previous) * (cur / joint);
  };

  const double inner = term(evidence.p_a(), cur_a, prev(prefix_a)) +
                       term(evidence.p_b(), cur_b, prev(prefix_b));
  // Each conditional and each Q is at most 1 and the weights sum to 1.
  if (inner > 1.0 + 1e-12) throw std::logic_error("acoustic surprisal term exceeds 1");
  return std::min(inner, 1.0);
}

double acoustic_surprisal(const CohortTrie& trie, const AcousticEvidence& evidence,
                          std::span<const Phoneme> continuation) {
  if (continuation.empty())
    throw std::invalid_argument("acoustic_surprisal needs a post-onset continuation");
  const double inner = acoustic_surprisal_inner(trie, evidence, continuation);
  if (inner <= 0.0)
    throw ImpossibleContinuation("neither onset admits the continuation /" +
                                 format_phonemes(continuation) + "/");
  return surprisal_bits(inner);
}

double acoustic_surprisal_onset(const CohortTrie& trie, const AcousticEvidence& evidence) {
  const double inner = acoustic_surprisal_inner(trie, evidence, {});
  if (inner <= 0.0)
    throw ImpossibleContinuation("neither " + evidence.phoneme_a().symbol() + " nor " +
                                 evidence.phoneme_b().symbol() + " begins a word");
  return surprisal_bits(inner);
}

MetricTrace metric_trace(const CohortTrie& trie, const LexiconEntry& word,
                         const AcousticEvidence& evidence) {
  if (word.pron.empty()) throw ValidationError("word has an empty pronunciation");
  const Phoneme& onset = word.pron.front();
  if (onset != evidence.phoneme_a() && onset != evidence.phoneme_b())
    throw ValidationError("onset of '" + word.orthography + "' (" + onset.symbol() +
                          ") is not one of the evidence phonemes");

  MetricTrace trace{word, evidence, {}};
  trace.points.reserve(word.pron.size());
  const std::span<const Phoneme> pron(word.pron);
  for (std::size_t t = 1; t <= pron.size(); ++t) {
    const auto continuation = pron.subspan(1, t - 1);
    const PhonemeSeq committed = with_onset(evidence.committed(), continuation);
    const WeightedCohort joint = acoustic_weighted_probs(trie, evidence, continuation);

    MetricPoint point;
    point.position = t;
    point.phoneme = pron[t - 1];
    point.switch_surprisal = switch_surprisal(trie, committed);
    point.switch_entropy = switch_entropy(trie, committed);
    point.acoustic_surprisal = t == 1 ? acoustic_surprisal_onset(trie, evidence)
                                      : acoustic_surprisal(trie, evidence, continuation);
    point.acoustic_entropy = entropy_of(joint.members);
    point.switch_cohort_size = trie.cohort_size(committed);
    point.joint_cohort_size = joint.size_a + joint.size_b;
    trace.points.push_back(std::move(point));
  }
  return trace;
}

std::string_view to_string(Quantity q) {
  return q == Quantity::kSurprisal ? "surprisal" : "entropy";
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw UndefinedCorrelation("correlation needs at least two points");
  const auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
  };
  if (constant(x) || constant(y))
    throw UndefinedCorrelation("correlation is undefined for a constant variable");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0)
    throw UndefinedCorrelation("correlation is undefined for a constant variable");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

std::pair<double, double> values_at(const MetricPoint& p, Quantity q) {
  return q == Quantity::kSurprisal ? std::pair{p.switch_surprisal, p.acoustic_surprisal}
                                   : std::pair{p.switch_entropy, p.acoustic_entropy};
}

}  // namespace

double model_correlation(std::span<const MetricTrace> traces, std::size_t position,
                         Quantity quantity) {
  std::vector<double> sw, ac;
  for (const auto& trace : traces) {
    if (const MetricPoint* p = trace.at(position)) {
      const auto [s, a] = values_at(*p, quantity);
      sw.push_back(s);
      ac.push_back(a);
    }
  }
  if (sw.size() < 3)
    throw UndefinedCorrelation("fewer than three traces reach position " +
                               std::to_string(position));
  return pearson(sw, ac);
}

std::vector<Divergence> model_divergence_ranking(std::span<const MetricTrace> traces,
                                                 std::size_t position, Quantity quantity) {
  std::vector<Divergence> out;
  for (const auto& trace : traces) {
    if (const MetricPoint* p = trace.at(position)) {
      const auto [s, a] = values_at(*p, quantity);
      out.push_back({trace.word.orthography, s, a, std::abs(a - s)});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Divergence& l, const Divergence& r) {
    if (l.difference != r.difference) return l.difference > r.difference;
    return l.orthography < r.orthography;
  });
  return out;
}

}  // namespace cohortlex

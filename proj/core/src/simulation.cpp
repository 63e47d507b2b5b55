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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "cohortlex/analysis.hpp"
#include "cohortlex/error.hpp"
#include "cohortlex/format.hpp"
#include "cohortlex/random.hpp"

namespace cohortlex {
namespace {

constexpr std::int64_t kTrialsPerSession = 515;  // 103 items x 5 continuum steps
constexpr std::int64_t kBlocks = 4;

std::string subject_label(std::size_t index, std::size_t count) {
  const int width = static_cast<int>(std::to_string(count).size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%0*zu", width, index + 1);
  return buf;
}

double ambiguity_of(const AcousticEvidence& evidence) {
  for (double level : {0.25, 0.75})
    if (std::abs(evidence.p_a() - level) <= 1e-9) return level;
  throw ValidationError("simulated trials need partially ambiguous evidence (0.25 or 0.75), got " +
                        format_fixed(evidence.p_a()));
}

}  // namespace

double latency_mean(std::size_t position) {
  return 87.0 + (static_cast<double>(position) - 2.0) * (411.0 - 87.0) / 4.0;
}

double latency_sd(std::size_t position) {
  return std::max(1.0, 25.0 + (static_cast<double>(position) - 2.0) * (78.0 - 25.0) / 4.0);
}

std::vector<RegressionRow> simulate_dataset(std::span<const MetricTrace> traces,
                                            const SimulationConfig& config) {
  if (traces.empty()) throw std::invalid_argument("simulate_dataset: no traces");
  if (config.n_subjects < 2) throw std::invalid_argument("simulate_dataset: need >= 2 subjects");
  if (config.position < 1) throw std::invalid_argument("simulate_dataset: position must be >= 1");
  if (config.noise_sd < 0.0 || config.subject_sd < 0.0)
    throw std::invalid_argument("simulate_dataset: standard deviations must be >= 0");

  struct Source {
    const MetricPoint* point;
    std::string pair;
    double ambiguity;
  };
  std::vector<Source> sources;
  sources.reserve(traces.size());
  for (const auto& trace : traces) {
    const MetricPoint* point = trace.at(config.position);
    if (!point)
      throw ValidationError("trace for '" + trace.word.orthography + "' has no position " +
                            std::to_string(config.position));
    sources.push_back({point,
                       trace.evidence.phoneme_a().symbol() + "-" +
                           trace.evidence.phoneme_b().symbol(),
                       ambiguity_of(trace.evidence)});
  }

  Rng rng(config.seed);
  const double lat_mean = latency_mean(config.position);
  const double lat_sd = latency_sd(config.position);
  const bool acoustic = config.generator == ModelKind::kAcoustic;

  std::vector<RegressionRow> rows;
  rows.reserve(config.n_subjects * config.rows_per_subject);
  for (std::size_t s = 0; s < config.n_subjects; ++s) {
    const std::string subject = subject_label(s, config.n_subjects);
    const double intercept = config.subject_sd * rng.normal();
    for (std::size_t i = 0; i < config.rows_per_subject; ++i) {
      const auto& src = sources[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(sources.size()) - 1))];
      const MetricPoint& pt = *src.point;
      RegressionRow row;
      row.acoustic_surprisal = pt.acoustic_surprisal;
      row.acoustic_entropy = pt.acoustic_entropy;
      row.switch_surprisal = pt.switch_surprisal;
      row.switch_entropy = pt.switch_entropy;
      row.phoneme_latency = rng.normal(lat_mean, lat_sd);
      row.trial_number = static_cast<double>(rng.uniform_int(1, kTrialsPerSession));
      row.block_number = static_cast<double>(rng.uniform_int(1, kBlocks));
      row.onset_amplitude = rng.normal();
      row.phoneme_pair = src.pair;
      row.ambiguity = src.ambiguity;
      row.subject_id = subject;
      const double gen_s = acoustic ? pt.acoustic_surprisal : pt.switch_surprisal;
      const double gen_e = acoustic ? pt.acoustic_entropy : pt.switch_entropy;
      row.response = config.beta_surprisal * gen_s + config.beta_entropy * gen_e + intercept +
                     config.noise_sd * rng.normal();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

RecoverySummary model_recovery(std::span<const MetricTrace> traces, const RecoveryConfig& config) {
  if (config.n_sims < 1) throw std::invalid_argument("model_recovery: n_sims must be >= 1");
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw std::invalid_argument("model_recovery: alpha must lie in (0, 1)");

  const PredictorSet full_set = full_model_predictors();
  const PredictorSet no_acoustic = without_model(full_set, ModelKind::kAcoustic);
  const PredictorSet no_switch = without_model(full_set, ModelKind::kSwitch);

  RecoverySummary summary;
  summary.generator = config.simulation.generator;
  summary.n_sims = config.n_sims;
  summary.alpha = config.alpha;
  std::size_t gen_hits = 0, other_hits = 0, only_hits = 0, either_hits = 0;
  for (std::size_t i = 0; i < config.n_sims; ++i) {
    SimulationConfig sim = config.simulation;
    sim.seed = config.simulation.seed + i;
    const auto rows = simulate_dataset(traces, sim);
    const FitResult full = ols_fit(rows, full_set);
    SimulationOutcome outcome;
    outcome.drop_acoustic =
        likelihood_ratio_test(full, ols_fit(rows, no_acoustic), config.df_override);
    outcome.drop_switch = likelihood_ratio_test(full, ols_fit(rows, no_switch), config.df_override);

    const bool acoustic_sig = outcome.drop_acoustic.p_value < config.alpha;
    const bool switch_sig = outcome.drop_switch.p_value < config.alpha;
    const bool gen_sig = summary.generator == ModelKind::kAcoustic ? acoustic_sig : switch_sig;
    const bool other_sig = summary.generator == ModelKind::kAcoustic ? switch_sig : acoustic_sig;
    gen_hits += gen_sig;
    other_hits += other_sig;
    only_hits += gen_sig && !other_sig;
    either_hits += gen_sig || other_sig;
    summary.mean_delta_ll_acoustic += outcome.drop_acoustic.delta_loglik;
    summary.mean_delta_ll_switch += outcome.drop_switch.delta_loglik;
    summary.outcomes.push_back(outcome);
  }
  const double n = static_cast<double>(config.n_sims);
  summary.generating_rate = static_cast<double>(gen_hits) / n;
  summary.other_rate = static_cast<double>(other_hits) / n;
  summary.only_generating_rate = static_cast<double>(only_hits) / n;
  summary.either_rate = static_cast<double>(either_hits) / n;
  summary.mean_delta_ll_acoustic /= n;
  summary.mean_delta_ll_switch /= n;
  return summary;
}

namespace {

constexpr const char* kDatasetHeader =
    "response,acoustic_surprisal,acoustic_entropy,switch_surprisal,switch_entropy,"
    "phoneme_latency,trial_number,block_number,onset_amplitude,phoneme_pair,ambiguity,"
    "subject_id";

double parse_number(const std::string& field, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError("non-numeric field '" + field + "'", line);
  return v;
}

}  // namespace

void write_dataset_csv(std::ostream& out, std::span<const RegressionRow> rows) {
  out << kDatasetHeader << '\n';
  for (const auto& r : rows) {
    out << format_fixed(r.response) << ',' << format_fixed(r.acoustic_surprisal) << ','
        << format_fixed(r.acoustic_entropy) << ',' << format_fixed(r.switch_surprisal) << ','
        << format_fixed(r.switch_entropy) << ',' << format_fixed(r.phoneme_latency) << ','
        << format_fixed(r.trial_number) << ',' << format_fixed(r.block_number) << ','
        << format_fixed(r.onset_amplitude) << ',' << r.phoneme_pair << ','
        << format_fixed(r.ambiguity) << ',' << r.subject_id << '\n';
  }
}

std::vector<RegressionRow> read_dataset_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ValidationError("empty dataset file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kDatasetHeader) throw ParseError("unexpected dataset header", line_no);

  std::vector<RegressionRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv(line);
    if (f.size() != 12) throw ParseError("expected 12 columns", line_no);
    RegressionRow r;
    r.response = parse_number(f[0], line_no);
    r.acoustic_surprisal = parse_number(f[1], line_no);
    r.acoustic_entropy = parse_number(f[2], line_no);
    r.switch_surprisal = parse_number(f[3], line_no);
    r.switch_entropy = parse_number(f[4], line_no);
    r.phoneme_latency = parse_number(f[5], line_no);
    r.trial_number = parse_number(f[6], line_no);
    r.block_number = parse_number(f[7], line_no);
    r.onset_amplitude = parse_number(f[8], line_no);
    r.phoneme_pair = f[9];
    r.ambiguity = parse_number(f[10], line_no);
    r.subject_id = f[11];
    if (std::abs(r.ambiguity - 0.25) > 1e-9 && std::abs(r.ambiguity - 0.75) > 1e-9)
      throw ValidationError("ambiguity must be 0.25 or 0.75", line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace cohortlex

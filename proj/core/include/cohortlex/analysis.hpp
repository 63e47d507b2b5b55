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
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohortlex/metrics.hpp"

namespace cohortlex {

// One simulated observation: a response time-locked to a phoneme, the four
// model predictors at that phoneme, and the nuisance covariates.
struct RegressionRow {
  double response = 0.0;
  double acoustic_surprisal = 0.0;
  double acoustic_entropy = 0.0;
  double switch_surprisal = 0.0;
  double switch_entropy = 0.0;
  double phoneme_latency = 0.0;  // ms
  double trial_number = 0.0;
  double block_number = 0.0;
  double onset_amplitude = 0.0;
  std::string phoneme_pair;  // categorical, e.g. "B-P"
  double ambiguity = 0.75;   // categorical: 0.25 or 0.75
  std::string subject_id;    // categorical

  friend bool operator==(const RegressionRow&, const RegressionRow&) = default;
};

// Predictor names are RegressionRow field names. The numeric ones enter the
// design matrix as-is; phoneme_pair, ambiguity and subject_id are dummy-coded
// against their lexicographically first level. An intercept is always fitted.
using PredictorSet = std::set<std::string, std::less<>>;

const std::vector<std::string>& numeric_predictor_names();
const std::vector<std::string>& categorical_predictor_names();

enum class ModelKind { kAcoustic, kSwitch };

std::string_view to_string(ModelKind kind);

// Both models' surprisal and entropy, the four covariates, phoneme pair,
// ambiguity and subject.
PredictorSet full_model_predictors();
// `full` minus the surprisal and entropy predictors of `kind`.
PredictorSet without_model(PredictorSet full, ModelKind kind);

struct FitResult {
  std::vector<std::string> coefficient_names;  // "(intercept)", "x", "subject_id=s02", ...
  std::vector<double> coefficients;
  double residual_variance = 0.0;  // ML estimate RSS/n, floored
  double log_likelihood = 0.0;
  std::size_t n = 0;
  std::size_t p = 0;  // number of coefficients
  PredictorSet predictors;
  std::uint64_t data_fingerprint = 0;  // identifies the response vector

  // Throws LookupError for an unknown name.
  double coefficient(std::string_view name) const;
};

inline constexpr double kResidualVarianceFloor = 1e-12;

// Ordinary least squares with a Gaussian log-likelihood. Throws
// SingularDesign (naming the collinear columns) when the design matrix is
// rank deficient or has no more rows than columns, and std::invalid_argument
// for an unknown predictor name.
FitResult ols_fit(std::span<const RegressionRow> rows, const PredictorSet& predictors);

struct ModelComparisonResult {
  double chi2 = 0.0;
  int df = 0;
  double p_value = 1.0;
  double delta_loglik = 0.0;  // ll(full) - ll(reduced)
};

// Likelihood-ratio test of nested fits over the same rows. df defaults to the
// difference in coefficient count. Throws NestingError otherwise.
ModelComparisonResult likelihood_ratio_test(const FitResult& full, const FitResult& reduced,
                                            std::optional<int> df_override = std::nullopt);

// Regularized upper incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);

// Upper tail of the chi-square distribution, Q(df/2, x/2).
double chi_square_sf(double x, double df);

// Mean and SD of phoneme latency (ms) used for simulated rows at `position`.
// Anchored at 87/25 ms for the second phoneme and 411/78 ms for the sixth,
// linear in between and beyond.
double latency_mean(std::size_t position);
double latency_sd(std::size_t position);

struct SimulationConfig {
  std::size_t position = 2;
  ModelKind generator = ModelKind::kAcoustic;
  double beta_surprisal = 1.0;
  double beta_entropy = 1.0;
  double noise_sd = 1.0;
  std::size_t n_subjects = 10;
  std::size_t rows_per_subject = 500;
  double subject_sd = 1.0;
  std::uint64_t seed = 0;
};

// response = beta_s * surprisal + beta_e * entropy (of the generating model)
//          + subject intercept ~ N(0, subject_sd^2) + N(0, noise_sd^2).
// Each row draws its trace uniformly; covariates: latency ~ N(latency_mean,
// latency_sd), trial ~ U{1..515}, block ~ U{1..4}, onset amplitude ~ N(0, 1).
// Every trace must reach `position` and carry evidence p_a of 0.25 or 0.75.
std::vector<RegressionRow> simulate_dataset(std::span<const MetricTrace> traces,
                                            const SimulationConfig& config);

struct RecoveryConfig {
  SimulationConfig simulation;
  std::size_t n_sims = 100;
  double alpha = 0.05;
  std::optional<int> df_override;
};

struct SimulationOutcome {
  ModelComparisonResult drop_acoustic;
  ModelComparisonResult drop_switch;
};

struct RecoverySummary {
  ModelKind generator = ModelKind::kAcoustic;
  std::size_t n_sims = 0;
  double alpha = 0.05;
  double generating_rate = 0.0;       // generating model's removal significant
  double other_rate = 0.0;            // other model's removal significant
  double only_generating_rate = 0.0;  // generating significant, other not
  double either_rate = 0.0;           // at least one significant
  double mean_delta_ll_acoustic = 0.0;
  double mean_delta_ll_switch = 0.0;
  std::vector<SimulationOutcome> outcomes;
};

// Simulation i uses seed config.simulation.seed + i.
RecoverySummary model_recovery(std::span<const MetricTrace> traces, const RecoveryConfig& config);

// Header row is the RegressionRow field names in declaration order.
void write_dataset_csv(std::ostream& out, std::span<const RegressionRow> rows);
std::vector<RegressionRow> read_dataset_csv(std::istream& in);

}  // namespace cohortlex

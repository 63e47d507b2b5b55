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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <set>
#include <numbers>
#include <stdexcept>

#include "cohortlex/analysis.hpp"
#include "cohortlex/error.hpp"
#include "cohortlex/format.hpp"

namespace cohortlex {
namespace {

double numeric_value(const RegressionRow& r, std::string_view name) {
  if (name == "acoustic_surprisal") return r.acoustic_surprisal;
  if (name == "acoustic_entropy") return r.acoustic_entropy;
  if (name == "switch_surprisal") return r.switch_surprisal;
  if (name == "switch_entropy") return r.switch_entropy;
  if (name == "phoneme_latency") return r.phoneme_latency;
  if (name == "trial_number") return r.trial_number;
  if (name == "block_number") return r.block_number;
  if (name == "onset_amplitude") return r.onset_amplitude;
  throw std::invalid_argument("unknown numeric predictor '" + std::string(name) + "'");
}

std::string ambiguity_level(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", a);
  return buf;
}

std::string categorical_value(const RegressionRow& r, std::string_view name) {
  if (name == "phoneme_pair") return r.phoneme_pair;
  if (name == "ambiguity") return ambiguity_level(r.ambiguity);
  if (name == "subject_id") return r.subject_id;
  throw std::invalid_argument("unknown categorical predictor '" + std::string(name) + "'");
}

bool is_numeric(std::string_view name) {
  const auto& names = numeric_predictor_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_categorical(std::string_view name) {
  const auto& names = categorical_predictor_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::uint64_t fingerprint(std::span<const RegressionRow> rows) {
  std::uint64_t h = 1469598103934665603ULL;
  const auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  mix(rows.size());
  for (const auto& r : rows) {
    std::uint64_t bits;
    std::memcpy(&bits, &r.response, sizeof bits);
    mix(bits);
  }
  return h;
}

Eigen::Index matrix_rank(const Eigen::MatrixXd& x) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  return qr.rank();
}

}  // namespace

const std::vector<std::string>& numeric_predictor_names() {
  static const std::vector<std::string> names = {
      "acoustic_surprisal", "acoustic_entropy", "switch_surprisal", "switch_entropy",
      "phoneme_latency",    "trial_number",     "block_number",     "onset_amplitude"};
  return names;
}

const std::vector<std::string>& categorical_predictor_names() {
  static const std::vector<std::string> names = {"phoneme_pair", "ambiguity", "subject_id"};
  return names;
}

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::kAcoustic ? "acoustic" : "switch";
}

PredictorSet full_model_predictors() {
  PredictorSet set(numeric_predictor_names().begin(), numeric_predictor_names().end());
  set.insert(categorical_predictor_names().begin(), categorical_predictor_names().end());
  return set;
}

PredictorSet without_model(PredictorSet full, ModelKind kind) {
  const std::string prefix(to_string(kind));
  full.erase(prefix + "_surprisal");
  full.erase(prefix + "_entropy");
  return full;
}

double FitResult::coefficient(std::string_view name) const {
  for (std::size_t i = 0; i < coefficient_names.size(); ++i)
    if (coefficient_names[i] == name) return coefficients[i];
  throw LookupError("no coefficient named '" + std::string(name) + "'");
}

FitResult ols_fit(std::span<const RegressionRow> rows, const PredictorSet& predictors) {
  for (const auto& name : predictors)
    if (!is_numeric(name) && !is_categorical(name))
      throw std::invalid_argument("unknown predictor '" + name + "'");

  // Column layout: intercept, numeric predictors in canonical order, then the
  // dummies of each categorical (levels sorted, first level dropped).
  std::vector<std::string> names = {"(intercept)"};
  for (const auto& name : numeric_predictor_names())
    if (predictors.contains(name)) names.push_back(name);
  std::vector<std::pair<std::string, std::vector<std::string>>> dummies;
  for (const auto& name : categorical_predictor_names()) {
    if (!predictors.contains(name)) continue;
    std::set<std::string> levels;
    for (const auto& r : rows) levels.insert(categorical_value(r, name));
    std::vector<std::string> kept(levels.begin(), levels.end());
    if (!kept.empty()) kept.erase(kept.begin());
    for (const auto& level : kept) names.push_back(name + "=" + level);
    dummies.emplace_back(name, std::move(kept));
  }

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto p = static_cast<Eigen::Index>(names.size());
  if (n <= p)
    throw SingularDesign("design has " + std::to_string(n) + " rows for " + std::to_string(p) +
                         " coefficients");

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    y(i) = r.response;
    Eigen::Index col = 0;
    x(i, col++) = 1.0;
    for (const auto& name : numeric_predictor_names())
      if (predictors.contains(name)) x(i, col++) = numeric_value(r, name);
    for (const auto& [name, levels] : dummies) {
      const std::string value = categorical_value(r, name);
      for (const auto& level : levels) x(i, col++) = value == level ? 1.0 : 0.0;
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < p) {
    // Name the columns that add nothing to the span of those before them.
    std::string collinear;
    std::vector<Eigen::Index> independent;
    for (Eigen::Index c = 0; c < p; ++c) {
      Eigen::MatrixXd trial(n, static_cast<Eigen::Index>(independent.size()) + 1);
      for (std::size_t k = 0; k < independent.size(); ++k)
        trial.col(static_cast<Eigen::Index>(k)) = x.col(independent[k]);
      trial.col(trial.cols() - 1) = x.col(c);
      if (matrix_rank(trial) == trial.cols()) {
        independent.push_back(c);
      } else {
        if (!collinear.empty()) collinear += ", ";
        collinear += names[static_cast<std::size_t>(c)];
      }
    }
    throw SingularDesign("rank-deficient design; collinear columns: " + collinear);
  }

  const Eigen::VectorXd beta = qr.solve(y);
  const double rss = (y - x * beta).squaredNorm();

  FitResult fit;
  fit.coefficient_names = std::move(names);
  fit.coefficients.assign(beta.data(), beta.data() + beta.size());
  fit.n = rows.size();
  fit.p = static_cast<std::size_t>(p);
  fit.residual_variance = std::max(rss / static_cast<double>(n), kResidualVarianceFloor);
  fit.log_likelihood = -0.5 * static_cast<double>(n) *
                           std::log(2.0 * std::numbers::pi * fit.residual_variance) -
                       rss / (2.0 * fit.residual_variance);
  fit.predictors = predictors;
  fit.data_fingerprint = fingerprint(rows);
  return fit;
}

ModelComparisonResult likelihood_ratio_test(const FitResult& full, const FitResult& reduced,
                                            std::optional<int> df_override) {
  if (full.n != reduced.n || full.data_fingerprint != reduced.data_fingerprint)
    throw NestingError("fits were computed on different data");
  if (!std::includes(full.predictors.begin(), full.predictors.end(),
                     reduced.predictors.begin(), reduced.predictors.end()))
    throw NestingError("reduced predictor set is not a subset of the full set");
  if (reduced.p > full.p) throw NestingError("reduced model has more coefficients");
  if (df_override && *df_override < 1) throw std::invalid_argument("df override must be >= 1");

  ModelComparisonResult out;
  out.delta_loglik = full.log_likelihood - reduced.log_likelihood;
  out.chi2 = std::max(0.0, 2.0 * out.delta_loglik);
  out.df = df_override ? *df_override : static_cast<int>(full.p - reduced.p);
  out.p_value = out.df > 0 ? chi_square_sf(out.chi2, out.df) : 1.0;
  return out;
}

}  // namespace cohortlex

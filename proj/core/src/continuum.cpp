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

#include "cohortlex/continuum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <set>

#include "cohortlex/error.hpp"
#include "cohortlex/format.hpp"

namespace cohortlex {
namespace {

constexpr double kTieTolerance = 1e-12;

double logistic(double step, double midpoint, double slope) {
  const double z = slope * (step - midpoint);
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

double sum_squared_error(const IdentificationCurve& curve, double midpoint, double slope) {
  double sse = 0.0;
  for (std::size_t i = 0; i < kAcousticSteps; ++i) {
    const double r = logistic(static_cast<double>(i + 1), midpoint, slope) -
                     curve.proportions()[i];
    sse += r * r;
  }
  return sse;
}

}  // namespace

IdentificationCurve::IdentificationCurve(std::span<const std::pair<int, double>> steps) {
  if (steps.size() != kAcousticSteps)
    throw ValidationError("identification curve needs exactly 11 steps, got " +
                          std::to_string(steps.size()));
  std::set<int> seen;
  for (const auto& [step, p] : steps) {
    if (step < 1 || step > static_cast<int>(kAcousticSteps))
      throw ValidationError("step index " + std::to_string(step) + " outside 1..11");
    if (!seen.insert(step).second)
      throw ValidationError("duplicate step index " + std::to_string(step));
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError("proportion at step " + std::to_string(step) +
                            " outside [0, 1]");
    proportions_[static_cast<std::size_t>(step - 1)] = p;
  }
}

IdentificationCurve IdentificationCurve::from_proportions(std::span<const double> proportions) {
  std::vector<std::pair<int, double>> steps;
  for (std::size_t i = 0; i < proportions.size(); ++i)
    steps.emplace_back(static_cast<int>(i + 1), proportions[i]);
  return IdentificationCurve(steps);
}

double LogisticFit::predict(double step) const { return logistic(step, midpoint, slope); }

LogisticFit fit_psychometric(const IdentificationCurve& curve,
                             const PsychometricFitOptions& options) {
  const auto& y = curve.proportions();
  if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); }))
    throw DegenerateCurve("all identification proportions are equal");

  LogisticFit fit;
  fit.midpoint = options.initial_midpoint;
  fit.slope = options.initial_slope;
  fit.sse = sum_squared_error(curve, fit.midpoint, fit.slope);

  double lambda = 1e-3;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    fit.iterations = iter + 1;
    // J^T J and J^T r for residual r = P - y.
    double a11 = 0, a12 = 0, a22 = 0, g1 = 0, g2 = 0;
    for (std::size_t i = 0; i < kAcousticSteps; ++i) {
      const double x = static_cast<double>(i + 1);
      const double p = logistic(x, fit.midpoint, fit.slope);
      const double dp = p * (1.0 - p);
      const double jm = fit.slope * dp;
      const double js = -(x - fit.midpoint) * dp;
      const double r = p - y[i];
      a11 += jm * jm;
      a12 += jm * js;
      a22 += js * js;
      g1 += jm * r;
      g2 += js * r;
    }
    if (std::abs(g1) + std::abs(g2) < 1e-15) break;

    bool improved = false;
    while (lambda < 1e12) {
      const double d11 = a11 * (1.0 + lambda) + 1e-300;
      const double d22 = a22 * (1.0 + lambda) + 1e-300;
      const double det = d11 * d22 - a12 * a12;
      if (!(det > 0.0)) {
        lambda *= 10.0;
        continue;
      }
      const double dm = -(d22 * g1 - a12 * g2) / det;
      const double ds = -(d11 * g2 - a12 * g1) / det;
      const double sse = sum_squared_error(curve, fit.midpoint + dm, fit.slope + ds);
      if (sse < fit.sse) {
        fit.midpoint += dm;
        fit.slope += ds;
        const double gain = fit.sse - sse;
        fit.sse = sse;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (gain <= 1e-300) lambda = 1e12;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  return fit;
}

std::vector<std::size_t> assign_targets(std::span<const double> values) {
  if (values.size() < kPerceptualTargets.size())
    throw ValidationError("need at least " + std::to_string(kPerceptualTargets.size()) +
                          " candidates to assign continuum targets");
  std::vector<bool> used(values.size(), false);
  std::vector<std::size_t> out;
  for (double target : kPerceptualTargets) {
    std::size_t best = values.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(values[i] - target);
      if (d < best_dist - kTieTolerance) {
        best = i;
        best_dist = d;
      }
    }
    used[best] = true;
    out.push_back(best);
  }
  return out;
}

PerceptualContinuum resample_continuum(const IdentificationCurve& curve, ResampleMode mode) {
  PerceptualContinuum out;
  out.fit = fit_psychometric(curve);

  std::array<double, kAcousticSteps> fitted{};
  for (std::size_t i = 0; i < kAcousticSteps; ++i)
    fitted[i] = out.fit.predict(static_cast<double>(i + 1));

  const auto& basis = mode == ResampleMode::kNearestProportion ? curve.proportions() : fitted;
  const auto chosen = assign_targets(basis);
  for (std::size_t k = 0; k < kPerceptualTargets.size(); ++k) {
    const std::size_t i = chosen[k];
    out.selected[k] = {kPerceptualTargets[k], static_cast<int>(i + 1), curve.proportions()[i],
                       fitted[i]};
  }
  return out;
}

AcousticEvidence evidence_for_target(const PerceptualContinuum& continuum, double target,
                                     const std::pair<Phoneme, Phoneme>& pair,
                                     EvidenceSource source) {
  for (const auto& s : continuum.selected) {
    if (std::abs(s.target - target) <= 1e-9) {
      const double p = source == EvidenceSource::kDesignTarget ? s.target : s.achieved;
      return AcousticEvidence(pair.first, pair.second, p);
    }
  }
  throw LookupError("no continuum step for target " + format_fixed(target));
}

std::map<std::string, IdentificationCurve> read_identification_curves(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = split_csv(line);
  }
  if (header.empty()) throw ValidationError("empty continuum file");

  const auto column = [&](std::string_view name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int item_col = column("item");
  const int step_col = column("step");
  const int prop_col = column("proportion");
  if (step_col < 0 || prop_col < 0)
    throw ParseError("continuum header must name 'step' and 'proportion'", line_no);

  std::map<std::string, std::vector<std::pair<int, double>>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " columns", line_no);
    int step = 0;
    double prop = 0.0;
    const auto& sf = fields[static_cast<std::size_t>(step_col)];
    const auto& pf = fields[static_cast<std::size_t>(prop_col)];
    const auto r1 = std::from_chars(sf.data(), sf.data() + sf.size(), step);
    const auto r2 = std::from_chars(pf.data(), pf.data() + pf.size(), prop);
    if (r1.ec != std::errc() || r1.ptr != sf.data() + sf.size() || r2.ec != std::errc() ||
        r2.ptr != pf.data() + pf.size())
      throw ParseError("non-numeric step or proportion", line_no);
    const std::string item = item_col >= 0 ? fields[static_cast<std::size_t>(item_col)] : "";
    rows[item].emplace_back(step, prop);
  }

  std::map<std::string, IdentificationCurve> curves;
  for (const auto& [item, steps] : rows) {
    try {
      curves.emplace(item, IdentificationCurve(steps));
    } catch (const ValidationError& e) {
      throw ValidationError((item.empty() ? std::string() : "item '" + item + "': ") + e.what());
    }
  }
  if (curves.empty()) throw ValidationError("continuum file has no data rows");
  return curves;
}

}  // namespace cohortlex

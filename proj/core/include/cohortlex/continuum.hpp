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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cohortlex/lexicon.hpp"
#include "cohortlex/metrics.hpp"

namespace cohortlex {

inline constexpr std::size_t kAcousticSteps = 11;

// Design-level onset probabilities of the perceptual continuum, in selection
// order. Only 0.25 and 0.75 are fixed by the experimental design; the
// endpoints and midpoint complete the 5-step grid.
inline constexpr std::array<double, 5> kPerceptualTargets = {1.0, 0.75, 0.5, 0.25, 0.0};

// Proportion of phoneme-a responses at each of the 11 acoustic steps.
class IdentificationCurve {
 public:
  // (step index 1..11, proportion) in any order. Throws ValidationError
  // unless there are exactly 11 distinct steps with proportions in [0, 1].
  explicit IdentificationCurve(std::span<const std::pair<int, double>> steps);
  // Proportions for steps 1..11 in order.
  static IdentificationCurve from_proportions(std::span<const double> proportions);

  double proportion(int step) const { return proportions_.at(static_cast<std::size_t>(step - 1)); }
  const std::array<double, kAcousticSteps>& proportions() const noexcept { return proportions_; }

 private:
  IdentificationCurve() = default;
  std::array<double, kAcousticSteps> proportions_{};
};

// P(step) = 1 / (1 + exp(slope * (step - midpoint)))
struct LogisticFit {
  double midpoint = 6.0;
  double slope = 1.0;
  double sse = 0.0;
  int iterations = 0;

  double predict(double step) const;
};

struct PsychometricFitOptions {
  double initial_midpoint = 6.0;
  double initial_slope = 1.0;
  int max_iterations = 500;
};

// Levenberg-Marquardt least squares over the 11 points. Throws
// DegenerateCurve when every proportion is equal.
LogisticFit fit_psychometric(const IdentificationCurve& curve,
                             const PsychometricFitOptions& options = {});

struct ContinuumStep {
  double target = 0.0;
  int step = 0;
  double achieved = 0.0;  // raw identification proportion at `step`
  double fitted = 0.0;    // fitted logistic at `step`
};

struct PerceptualContinuum {
  std::array<ContinuumStep, kPerceptualTargets.size()> selected{};
  LogisticFit fit;
};

enum class ResampleMode {
  kNearestProportion,  // match targets against the raw proportions
  kFittedInversion,    // match targets against the fitted curve
};

// Greedy assignment in kPerceptualTargets order: each target takes the unused
// candidate whose value is nearest, ties going to the lower index. Returns
// 0-based candidate indices, one per target.
std::vector<std::size_t> assign_targets(std::span<const double> values);

PerceptualContinuum resample_continuum(const IdentificationCurve& curve,
                                       ResampleMode mode = ResampleMode::kNearestProportion);

enum class EvidenceSource { kDesignTarget, kAchievedProportion };

// Evidence for the continuum step selected for `target`. Throws LookupError
// when `target` is not one of kPerceptualTargets.
AcousticEvidence evidence_for_target(const PerceptualContinuum& continuum, double target,
                                     const std::pair<Phoneme, Phoneme>& pair,
                                     EvidenceSource source = EvidenceSource::kDesignTarget);

// Reads `step,proportion` or long-format `item,step,proportion` CSV (header
// required, any column order). Single-curve files map to the item "".
std::map<std::string, IdentificationCurve> read_identification_curves(std::istream& in);

}  // namespace cohortlex

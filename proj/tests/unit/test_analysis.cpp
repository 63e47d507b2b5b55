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

#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <sstream>

#include "cohortlex/analysis.hpp"
#include "cohortlex/error.hpp"
#include "cohortlex/random.hpp"
#include "cohortlex/stimulus.hpp"
#include "pair_traces.hpp"

using namespace cohortlex;

namespace {

std::vector<MetricTrace> recovery_traces() {
  const CohortTrie trie(testing::pair_rich_lexicon(80, 17));
  return testing::pair_traces(trie, find_word_pairs(trie.lexicon()), {0.25, 0.75});
}

RegressionRow noise_row(Rng& rng, std::size_t subjects) {
  RegressionRow r;
  r.response = rng.normal();
  r.acoustic_surprisal = rng.normal();
  r.acoustic_entropy = rng.normal();
  r.switch_surprisal = rng.normal();
  r.switch_entropy = rng.normal();
  r.phoneme_latency = rng.normal(87, 25);
  r.trial_number = static_cast<double>(rng.uniform_int(1, 515));
  r.block_number = static_cast<double>(rng.uniform_int(1, 4));
  r.onset_amplitude = rng.normal();
  r.phoneme_pair = rng.uniform() < 0.5 ? "B-P" : "D-T";
  r.ambiguity = rng.uniform() < 0.5 ? 0.25 : 0.75;
  r.subject_id = "s" + std::to_string(rng.uniform_int(1, static_cast<std::int64_t>(subjects)));
  return r;
}

}  // namespace

TEST_CASE("Rng uses the standard mt19937_64 sequence") {
  Rng rng(5489);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next();
  CHECK(v == 9981545732273789042ULL);

  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.normal() == b.normal());
    CHECK(a.uniform_int(-3, 7) == b.uniform_int(-3, 7));
  }
  Rng c(1);
  for (int i = 0; i < 10000; ++i) {
    const auto k = c.uniform_int(1, 6);
    CHECK(k >= 1);
    CHECK(k <= 6);
    const double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("chi_square_sf special values and closed forms") {
  for (int k = 1; k <= 20; ++k) CHECK(chi_square_sf(0.0, k) == 1.0);
  CHECK(std::abs(chi_square_sf(5.02, 1) - std::erfc(std::sqrt(5.02 / 2))) < 1e-12);
  CHECK(chi_square_sf(5.02, 1) == doctest::Approx(0.02506).epsilon(1e-3));
  CHECK(std::abs(chi_square_sf(5.26, 2) - std::exp(-2.63)) < 1e-12);
  CHECK(chi_square_sf(5.26, 2) == doctest::Approx(0.0721).epsilon(1e-3));
  for (double x = 0.0; x <= 100.0; x += 0.37) {
    CHECK(std::abs(chi_square_sf(x, 2) - std::exp(-x / 2)) <= 1e-12);
    CHECK(std::abs(chi_square_sf(x, 1) - std::erfc(std::sqrt(x / 2))) <= 1e-12);
  }
  CHECK_THROWS_AS(chi_square_sf(-1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(chi_square_sf(1.0, 0), std::invalid_argument);
}

TEST_CASE("chi_square_sf agrees with Boost's incomplete gamma") {
  double worst = 0.0;
  for (int df = 1; df <= 20; ++df) {
    double previous = 2.0;
    for (double x = 0.0; x <= 100.0; x += 0.05) {
      const double got = chi_square_sf(x, df);
      const double ref = boost::math::gamma_q(df / 2.0, x / 2.0);
      worst = std::max(worst, std::abs(got - ref));
      CHECK(got <= previous);
      if (ref > 1e-300 && previous < 1.0 - 1e-12) CHECK(got < previous);
      previous = got;
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("ols_fit recovers an exact linear relation") {
  Rng rng(3);
  std::vector<RegressionRow> rows;
  for (int i = 0; i < 200; ++i) {
    RegressionRow r;
    r.acoustic_surprisal = rng.normal(2, 1);
    r.response = 0.5 + 1.75 * r.acoustic_surprisal;
    rows.push_back(r);
  }
  const FitResult fit = ols_fit(rows, {"acoustic_surprisal"});
  CHECK(std::abs(fit.coefficient("acoustic_surprisal") - 1.75) < 1e-9);
  CHECK(std::abs(fit.coefficient("(intercept)") - 0.5) < 1e-9);
  CHECK(fit.residual_variance == kResidualVarianceFloor);
  CHECK(fit.p == 2);
  CHECK(fit.n == 200);
  CHECK_THROWS_AS(fit.coefficient("nope"), LookupError);
}

TEST_CASE("ols_fit log-likelihood gain from a pure-noise predictor") {
  Rng rng(10);
  double total = 0.0;
  const int reps = 1000;
  for (int rep = 0; rep < reps; ++rep) {
    std::vector<RegressionRow> rows(100);
    for (auto& r : rows) {
      r.response = rng.normal();
      r.onset_amplitude = rng.normal();
    }
    total += ols_fit(rows, {"onset_amplitude"}).log_likelihood - ols_fit(rows, {}).log_likelihood;
  }
  CHECK(total / reps < 0.6);
  CHECK(total / reps > 0.0);
}

TEST_CASE("ols_fit reports collinear columns") {
  Rng rng(4);
  std::vector<RegressionRow> rows(50);
  for (auto& r : rows) {
    r.response = rng.normal();
    r.acoustic_surprisal = rng.normal();
    r.switch_surprisal = r.acoustic_surprisal;
  }
  try {
    ols_fit(rows, {"acoustic_surprisal", "switch_surprisal"});
    FAIL("expected SingularDesign");
  } catch (const SingularDesign& e) {
    CHECK(std::string(e.what()).find("switch_surprisal") != std::string::npos);
  }
  CHECK_THROWS_AS(ols_fit(std::span(rows).first(2), {"acoustic_surprisal"}), SingularDesign);
  CHECK_THROWS_AS(ols_fit(rows, {"shoe_size"}), std::invalid_argument);
}

TEST_CASE("dummy coding drops the lexicographically first level") {
  Rng rng(6);
  std::vector<RegressionRow> rows;
  for (int i = 0; i < 300; ++i) rows.push_back(noise_row(rng, 3));
  const FitResult fit = ols_fit(rows, full_model_predictors());
  const auto& names = fit.coefficient_names;
  CHECK(std::find(names.begin(), names.end(), "subject_id=s1") == names.end());
  CHECK(std::find(names.begin(), names.end(), "subject_id=s2") != names.end());
  CHECK(std::find(names.begin(), names.end(), "ambiguity=0.75") != names.end());
  CHECK(std::find(names.begin(), names.end(), "phoneme_pair=D-T") != names.end());
  CHECK(fit.p == 1 + 8 + 2 + 1 + 1);
}

TEST_CASE("adding predictors never lowers the log-likelihood") {
  Rng rng(12);
  std::vector<RegressionRow> rows;
  for (int i = 0; i < 400; ++i) rows.push_back(noise_row(rng, 5));
  const auto all = full_model_predictors();
  const std::vector<std::string> names(all.begin(), all.end());
  for (int trial = 0; trial < 100; ++trial) {
    PredictorSet small, big;
    for (const auto& n : names) {
      const double u = rng.uniform();
      if (u < 0.35) small.insert(n);
      if (u < 0.7) big.insert(n);
    }
    const FitResult fs = ols_fit(rows, small);
    const FitResult fb = ols_fit(rows, big);
    CHECK(fb.log_likelihood >= fs.log_likelihood - 1e-9 * std::abs(fs.log_likelihood));
    const ModelComparisonResult lrt = likelihood_ratio_test(fb, fs);
    CHECK(lrt.chi2 >= 0.0);
    CHECK(lrt.df == static_cast<int>(fb.p - fs.p));
  }
}

TEST_CASE("likelihood_ratio_test") {
  Rng rng(8);
  std::vector<RegressionRow> rows;
  for (int i = 0; i < 200; ++i) rows.push_back(noise_row(rng, 4));
  const FitResult full = ols_fit(rows, full_model_predictors());

  const ModelComparisonResult same = likelihood_ratio_test(full, full);
  CHECK(same.chi2 == 0.0);
  CHECK(same.p_value == 1.0);
  CHECK(same.df == 0);

  const FitResult reduced = ols_fit(rows, without_model(full_model_predictors(), ModelKind::kSwitch));
  const ModelComparisonResult lrt = likelihood_ratio_test(full, reduced);
  CHECK(lrt.df == 2);
  CHECK(lrt.chi2 == doctest::Approx(2.0 * (full.log_likelihood - reduced.log_likelihood)));
  CHECK(lrt.p_value == doctest::Approx(chi_square_sf(lrt.chi2, 2)));
  CHECK(likelihood_ratio_test(full, reduced, 1).p_value == doctest::Approx(chi_square_sf(lrt.chi2, 1)));

  CHECK_THROWS_AS(likelihood_ratio_test(reduced, full), NestingError);
  const FitResult other = ols_fit(rows, {"onset_amplitude", "trial_number"});
  const FitResult sideways = ols_fit(rows, {"onset_amplitude", "block_number"});
  CHECK_THROWS_AS(likelihood_ratio_test(other, sideways), NestingError);
  auto shifted = rows;
  shifted[0].response += 1.0;
  CHECK_THROWS_AS(likelihood_ratio_test(ols_fit(shifted, full_model_predictors()), reduced), NestingError);
}

TEST_CASE("simulate_dataset") {
  const auto traces = recovery_traces();
  REQUIRE(traces.size() >= 100);

  SUBCASE("null generator is independent of the predictors") {
    SimulationConfig cfg;
    cfg.beta_surprisal = cfg.beta_entropy = 0.0;
    cfg.noise_sd = 1.0;
    cfg.subject_sd = 0.0;
    cfg.n_subjects = 4;
    cfg.rows_per_subject = 500;
    cfg.seed = 99;
    const auto rows = simulate_dataset(traces, cfg);
    CHECK(rows.size() == 2000);
    std::vector<double> y;
    for (const auto& r : rows) y.push_back(r.response);
    const auto column = [&](auto member) {
      std::vector<double> v;
      for (const auto& r : rows) v.push_back(r.*member);
      return v;
    };
    for (auto member : {&RegressionRow::acoustic_surprisal, &RegressionRow::acoustic_entropy,
                        &RegressionRow::switch_surprisal, &RegressionRow::switch_entropy,
                        &RegressionRow::phoneme_latency, &RegressionRow::trial_number,
                        &RegressionRow::block_number, &RegressionRow::onset_amplitude})
      CHECK(std::abs(pearson(y, column(member))) < 0.1);
  }

  SUBCASE("noiseless generator reproduces its predictor") {
    SimulationConfig cfg;
    cfg.generator = ModelKind::kSwitch;
    cfg.beta_surprisal = 1.0;
    cfg.beta_entropy = 0.0;
    cfg.noise_sd = 0.0;
    cfg.subject_sd = 0.0;
    cfg.rows_per_subject = 50;
    for (const auto& r : simulate_dataset(traces, cfg)) CHECK(r.response == r.switch_surprisal);
  }

  SUBCASE("covariates and labels") {
    SimulationConfig cfg;
    cfg.n_subjects = 12;
    cfg.rows_per_subject = 400;
    const auto rows = simulate_dataset(traces, cfg);
    double lat = 0.0;
    for (const auto& r : rows) {
      lat += r.phoneme_latency;
      CHECK((r.ambiguity == 0.25 || r.ambiguity == 0.75));
      CHECK(r.trial_number >= 1);
      CHECK(r.trial_number <= 515);
      CHECK(r.block_number >= 1);
      CHECK(r.block_number <= 4);
    }
    CHECK(lat / rows.size() == doctest::Approx(87.0).epsilon(0.02));
    CHECK(rows.front().subject_id == "s01");
    CHECK(rows.back().subject_id == "s12");
  }

  SUBCASE("fixed seed gives byte-identical output") {
    SimulationConfig cfg;
    cfg.seed = 7;
    std::ostringstream a, b;
    write_dataset_csv(a, simulate_dataset(traces, cfg));
    write_dataset_csv(b, simulate_dataset(traces, cfg));
    CHECK(a.str() == b.str());
    cfg.seed = 8;
    std::ostringstream c;
    write_dataset_csv(c, simulate_dataset(traces, cfg));
    CHECK(a.str() != c.str());

    std::istringstream in(a.str());
    const auto back = read_dataset_csv(in);
    CHECK(back.size() == 5000);
    std::ostringstream again;
    write_dataset_csv(again, back);
    CHECK(again.str() == a.str());
  }

  SUBCASE("invalid inputs") {
    SimulationConfig cfg;
    cfg.position = 40;
    CHECK_THROWS_AS(simulate_dataset(traces, cfg), ValidationError);
    cfg.position = 2;
    cfg.n_subjects = 1;
    CHECK_THROWS_AS(simulate_dataset(traces, cfg), std::invalid_argument);

    const CohortTrie trie(testing::pair_rich_lexicon(20, 3));
    const auto unambiguous = testing::pair_traces(trie, find_word_pairs(trie.lexicon()), {1.0});
    CHECK_THROWS_AS(simulate_dataset(unambiguous, SimulationConfig{}), ValidationError);
  }
}

TEST_CASE("model_recovery with a noiseless generator") {
  const auto traces = recovery_traces();
  RecoveryConfig cfg;
  cfg.n_sims = 1;
  cfg.simulation.noise_sd = 0.0;
  cfg.simulation.subject_sd = 0.0;
  cfg.simulation.rows_per_subject = 100;
  const RecoverySummary s = model_recovery(traces, cfg);
  CHECK(s.generating_rate == 1.0);
  CHECK(s.outcomes[0].drop_acoustic.p_value < 1e-100);
  CHECK(s.outcomes[0].drop_switch.p_value == 1.0);
  CHECK(s.only_generating_rate == 1.0);
}

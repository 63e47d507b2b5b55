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

#include <benchmark/benchmark.h>

#include "cohortlex/analysis.hpp"
#include "cohortlex/cohort_trie.hpp"
#include "cohortlex/metrics.hpp"
#include "cohortlex/stimulus.hpp"
#include "pair_traces.hpp"
#include "random_lexicon.hpp"

using namespace cohortlex;

namespace {

Lexicon make_lexicon(std::size_t n) {
  testing::RandomLexiconOptions opt;
  opt.n_words = n;
  opt.seed = 3;
  return testing::random_lexicon(opt);
}

void BM_TrieBuild(benchmark::State& state) {
  const Lexicon lex = make_lexicon(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    CohortTrie trie(lex);
    benchmark::DoNotOptimize(trie.node_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrieBuild)->Arg(1000)->Arg(10000)->Arg(50000);

void BM_MetricTraces(benchmark::State& state) {
  const CohortTrie trie(make_lexicon(static_cast<std::size_t>(state.range(0))));
  const AcousticEvidence ev(Phoneme("B"), Phoneme("P"), 0.75);
  std::vector<const LexiconEntry*> words;
  for (const auto& e : trie.lexicon().entries())
    if (e.pron.front() == ev.phoneme_a()) words.push_back(&e);
  for (auto _ : state) {
    for (const auto* w : words) {
      try {
        benchmark::DoNotOptimize(metric_trace(trie, *w, ev));
      } catch (const ImpossibleContinuation&) {
      }
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(words.size()));
}
BENCHMARK(BM_MetricTraces)->Arg(1000)->Arg(10000);

void BM_OlsFit(benchmark::State& state) {
  const CohortTrie trie(testing::pair_rich_lexicon(60, 4));
  const auto traces = testing::pair_traces(trie, find_word_pairs(trie.lexicon()), {0.25, 0.75});
  SimulationConfig cfg;
  cfg.rows_per_subject = static_cast<std::size_t>(state.range(0));
  const auto rows = simulate_dataset(traces, cfg);
  const auto predictors = full_model_predictors();
  for (auto _ : state) benchmark::DoNotOptimize(ols_fit(rows, predictors));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows.size()));
}
BENCHMARK(BM_OlsFit)->Arg(100)->Arg(500);

void BM_ChiSquareSf(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi_square_sf(x, 2.0));
    x = x > 60.0 ? 0.0 : x + 0.37;
  }
}
BENCHMARK(BM_ChiSquareSf);

}  // namespace

BENCHMARK_MAIN();

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

#include "cohortlex/cohort_trie.hpp"
#include "cohortlex/error.hpp"
#include "naive_oracle.hpp"
#include "random_lexicon.hpp"
#include "toy_lexicons.hpp"

using namespace cohortlex;
using cohortlex::testing::ph;

namespace {

PhonemeSeq seq(std::string_view s) { return parse_phonemes(s); }

double prob_of(const CohortTrie& trie, const Cohort& c, std::string_view word) {
  for (const auto& m : c.members)
    if (trie.entry(m.entry).orthography == word) return m.prob;
  return -1.0;
}

}  // namespace

TEST_CASE("build_trie aggregates frequencies") {
  const CohortTrie trie(testing::toy_b());
  CHECK(trie.total_frequency() == 12.0);
  CHECK(trie.prefix_frequency(seq("B")) == 4.0);
  CHECK(trie.prefix_frequency(seq("P")) == 8.0);
  CHECK(trie.verify_aggregates());

  const CohortTrie single(parse_lexicon_text("a\tAH\t5\n"));
  CHECK(single.node_count() == 2);
  CHECK(single.total_frequency() == 5.0);
  CHECK(single.prefix_frequency(seq("AH")) == 5.0);
}

TEST_CASE("prefix_frequency") {
  const CohortTrie trie(testing::toy_b());
  CHECK(trie.prefix_frequency(seq("P")) == 8.0);
  CHECK(trie.prefix_frequency({}) == 12.0);
  CHECK(trie.prefix_frequency(seq("Z")) == 0.0);
  CHECK(trie.prefix_frequency(seq("B AE T AH")) == 0.0);
}

TEST_CASE("cohort_at") {
  const CohortTrie trie(testing::toy_b());
  const Cohort b = trie.cohort_at(seq("B"));
  REQUIRE(b.members.size() == 2);
  CHECK(prob_of(trie, b, "bat") == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(prob_of(trie, b, "bin") == doctest::Approx(0.25).epsilon(1e-15));

  const Cohort bat = trie.cohort_at(seq("B AE T"));
  REQUIRE(bat.members.size() == 1);
  CHECK(bat.members[0].prob == 1.0);

  CHECK_THROWS_AS(trie.cohort_at(seq("Z")), ImpossibleContinuation);
}

TEST_CASE("a word equal to the prefix stays in the cohort") {
  const CohortTrie trie(parse_lexicon_text("cat\tK AE T\t1\ncats\tK AE T S\t1\n"));
  CHECK(trie.cohort_at(seq("K AE T")).members.size() == 2);
  CHECK(trie.cohort_at(seq("K AE T S")).members.size() == 1);
}

TEST_CASE("conditional_prob") {
  const CohortTrie trie(testing::toy_b());
  CHECK(trie.conditional_prob(seq("B AE")) == 0.75);
  CHECK(trie.conditional_prob(seq("P AE")) == 0.5);
  CHECK(trie.conditional_prob(seq("P AE T")) == 1.0);  // single child
  CHECK(trie.conditional_prob(seq("B")) == doctest::Approx(4.0 / 12.0));
  CHECK(trie.conditional_prob(seq("B Z")) == 0.0);
  CHECK_THROWS_AS(trie.conditional_prob(seq("Z AE")), ImpossibleContinuation);
  CHECK_THROWS_AS(trie.conditional_prob({}), std::invalid_argument);
}

TEST_CASE("uniqueness_point") {
  const CohortTrie trie(testing::toy_b());
  const auto& lex = trie.lexicon();
  CHECK(trie.uniqueness_point(lex.entries()[lex.find("bin")]) == 2u);
  CHECK(trie.uniqueness_point(lex.entries()[lex.find("bat")]) == 2u);

  const CohortTrie single(parse_lexicon_text("a\tAH\t5\n"));
  CHECK(single.uniqueness_point(single.lexicon().entries()[0]) == 1u);

  const CohortTrie embedded(parse_lexicon_text("cat\tK AE T\t1\ncats\tK AE T S\t1\n"));
  CHECK_FALSE(embedded.uniqueness_point(embedded.lexicon().entries()[0]).has_value());
  CHECK(embedded.uniqueness_point(embedded.lexicon().entries()[1]) == 4u);

  // homophones share a uniqueness point
  const CohortTrie homo(parse_lexicon_text("pair\tP EH R\t5\npear\tP EH R\t3\npet\tP EH T\t1\n"));
  CHECK(homo.uniqueness_point(homo.lexicon().entries()[0]) == 3u);

  CHECK_THROWS_AS(trie.uniqueness_point({"zzz", seq("Z"), 1.0}), LookupError);
}

TEST_CASE("trie agrees exactly with a naive scan on random lexicons") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    testing::RandomLexiconOptions opt;
    opt.seed = seed;
    opt.n_words = 40 * seed;
    const CohortTrie trie(testing::random_lexicon(opt));
    const auto& entries = trie.lexicon().entries();
    CHECK(trie.verify_aggregates());
    for (const auto& e : entries) {
      for (std::size_t t = 0; t <= e.pron.size(); ++t) {
        const PhonemeSeq prefix(e.pron.begin(), e.pron.begin() + static_cast<std::ptrdiff_t>(t));
        REQUIRE(trie.prefix_frequency(prefix) == testing::naive::f(entries, prefix));
        const auto expected = testing::naive::cohort(entries, prefix);
        const Cohort got = trie.cohort_at(prefix);
        REQUIRE(got.members.size() == expected.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < expected.size(); ++i) {
          REQUIRE(got.members[i].entry == expected[i].first);
          REQUIRE(got.members[i].prob == expected[i].second);
          sum += got.members[i].prob;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-9);
      }
    }
  }
}

TEST_CASE("prefix frequency is monotone and conditionals telescope") {
  testing::RandomLexiconOptions opt;
  opt.seed = 77;
  opt.n_words = 600;
  opt.integer_frequencies = false;
  const CohortTrie trie(testing::random_lexicon(opt));
  for (const auto& e : trie.lexicon().entries()) {
    double product = 1.0;
    for (std::size_t t = 1; t <= e.pron.size(); ++t) {
      const std::span<const Phoneme> prefix(e.pron.data(), t);
      CHECK(trie.prefix_frequency(prefix) <= trie.prefix_frequency(prefix.first(t - 1)));
      product *= trie.conditional_prob(prefix);
    }
    const double direct = trie.prefix_frequency(e.pron) / trie.total_frequency();
    CHECK(std::abs(product - direct) <= 1e-12 * direct);
  }
}

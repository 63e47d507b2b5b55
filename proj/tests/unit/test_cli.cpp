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

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cohortlex/cli.hpp"
#include "cohortlex/format.hpp"
#include "cohortlex/lexicon.hpp"
#include "pair_traces.hpp"

using namespace cohortlex;
namespace fs = std::filesystem;

namespace {

const std::string kData = COHORTLEX_TEST_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("cohortlex_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const fs::path p = path / name;
    if (!content.empty()) std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// CSV tables (blank-line separated) as lists of column->text maps.
std::vector<std::vector<std::map<std::string, std::string>>> parse_csv_tables(const std::string& text) {
  std::vector<std::vector<std::map<std::string, std::string>>> tables;
  std::vector<std::string> header;
  for (const auto& line : lines_of(text)) {
    if (line.empty()) {
      header.clear();
      continue;
    }
    if (header.empty()) {
      header = split_csv(line);
      tables.emplace_back();
      continue;
    }
    const auto f = split_csv(line);
    REQUIRE(f.size() == header.size());
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < f.size(); ++i) row[header[i]] = f[i];
    tables.back().push_back(row);
  }
  return tables;
}

// JSON-lines output regrouped by the "table" field, in order of appearance.
std::vector<std::vector<nlohmann::ordered_json>> parse_json_tables(const std::string& text) {
  std::vector<std::vector<nlohmann::ordered_json>> tables;
  std::string current = "\x01";
  for (const auto& line : lines_of(text)) {
    auto obj = nlohmann::ordered_json::parse(line);
    const std::string name = obj.contains("table") ? obj["table"].get<std::string>() : "";
    if (name != current) {
      tables.emplace_back();
      current = name;
    }
    obj.erase("table");
    tables.back().push_back(obj);
  }
  return tables;
}

void check_parity(std::vector<std::string> args) {
  auto csv_args = args;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  auto json_args = args;
  json_args.insert(json_args.end(), {"--format", "json"});
  const Result csv = run(csv_args);
  const Result json = run(json_args);
  REQUIRE(csv.code == 0);
  REQUIRE(json.code == 0);
  const auto ct = parse_csv_tables(csv.out);
  const auto jt = parse_json_tables(json.out);
  std::size_t non_empty = 0;
  for (const auto& t : ct) non_empty += !t.empty();
  REQUIRE(non_empty == jt.size());
  std::size_t j = 0;
  for (const auto& table : ct) {
    if (table.empty()) continue;
    REQUIRE(table.size() == jt[j].size());
    for (std::size_t r = 0; r < table.size(); ++r) {
      const auto& obj = jt[j][r];
      CHECK(obj.size() == table[r].size());
      for (const auto& [key, text] : table[r]) {
        REQUIRE(obj.contains(key));
        const auto& v = obj[key];
        if (v.is_null()) {
          CHECK(text == "NA");
        } else if (v.is_string()) {
          CHECK(v.get<std::string>() == text);
        } else {
          CHECK(v.get<double>() == std::stod(text));
        }
      }
    }
    ++j;
  }
}

const std::string kToy = kData + "/toy.tsv";

}  // namespace

TEST_CASE("trace command") {
  const Result r = run({"trace", "--lexicon", kToy, "--word", "bat", "--pair", "B,P", "--p-a", "0.75"});
  REQUIRE(r.code == cli::kOk);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] ==
        "position,phoneme,switch_surprisal,acoustic_surprisal,switch_entropy,acoustic_entropy,"
        "switch_cohort_size,joint_cohort_size");
  CHECK(split_csv(lines[2])[3] == "1.678072");

  const Result certain = run({"trace", "--lexicon", kToy, "--word", "bat", "--p-a", "1.0"});
  REQUIRE(certain.code == 0);
  const auto rows = parse_csv_tables(certain.out);
  for (const auto& row : rows[0])
    CHECK(row.at("switch_entropy") == row.at("acoustic_entropy"));

  CHECK(run({"trace", "--lexicon", kToy, "--word", "zzz", "--p-a", "0.75"}).code == cli::kNotFound);

  TempDir tmp;
  const auto lex = tmp.file("lex.tsv", "bat\tB AE T\t2\npin\tP IH N\t5\n");
  CHECK(run({"trace", "--lexicon", lex, "--word", "pin", "--p-a", "1"}).code == cli::kUndefined);
  const Result all = run({"trace", "--lexicon", lex, "--all", "--p-a", "1"});
  CHECK(all.code == 0);
  CHECK(all.err.find("skipped 1") != std::string::npos);
}

TEST_CASE("trace with continuum evidence") {
  const auto base = std::vector<std::string>{"trace", "--lexicon", kToy, "--word", "bat"};
  auto args = base;
  args.insert(args.end(), {"--continuum", kData + "/curve.csv", "--target", "0.75"});
  const Result design = run(args);
  const Result direct = run({"trace", "--lexicon", kToy, "--word", "bat", "--p-a", "0.75"});
  REQUIRE(design.code == 0);
  CHECK(design.out == direct.out);

  args.insert(args.end(), {"--evidence-source", "achieved"});
  const Result achieved = run(args);
  const Result at_08 = run({"trace", "--lexicon", kToy, "--word", "bat", "--p-a", "0.8"});
  CHECK(achieved.out == at_08.out);

  auto bad = base;
  bad.insert(bad.end(), {"--continuum", kData + "/curve.csv", "--target", "0.4"});
  CHECK(run(bad).code == cli::kNotFound);
  CHECK(run(base).code == cli::kUsage);
}

TEST_CASE("compare recomputation from the emitted traces") {
  TempDir tmp;
  std::ostringstream lex_text;
  write_lexicon(lex_text, testing::pair_rich_lexicon(60, 21));
  const auto lex = tmp.file("lex.tsv", lex_text.str());
  const auto traces_path = tmp.file("traces.csv");
  const Result r = run({"compare", "--lexicon", lex, "--p-a", "0.75", "--position", "2",
                        "--position", "3", "--traces-out", traces_path});
  REQUIRE(r.code == 0);
  const auto tables = parse_csv_tables(r.out);
  REQUIRE(tables.size() == 2);
  const auto& row = tables[0][0];
  CHECK(row.at("position") == "2");

  // spreadsheet-style: means, then sums of products, from the 6-decimal CSV
  std::vector<double> s, a;
  const auto trace_tables = parse_csv_tables(slurp(traces_path));
  for (const auto& t : trace_tables[0]) {
    if (t.at("position") != "2") continue;
    s.push_back(std::stod(t.at("switch_surprisal")));
    a.push_back(std::stod(t.at("acoustic_surprisal")));
  }
  REQUIRE(s.size() == static_cast<std::size_t>(std::stoi(row.at("n"))));
  long double ms = 0, ma = 0;
  for (std::size_t i = 0; i < s.size(); ++i) ms += s[i], ma += a[i];
  ms /= s.size();
  ma /= a.size();
  long double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sab += (s[i] - ms) * (a[i] - ma);
    saa += (s[i] - ms) * (s[i] - ms);
    sbb += (a[i] - ma) * (a[i] - ma);
  }
  const double r_sheet = static_cast<double>(sab / std::sqrt(saa * sbb));
  CHECK(std::abs(std::stod(row.at("r_surprisal")) - r_sheet) < 1e-5);

  CHECK(tables[1].size() == 10);
  CHECK(tables[1][0].at("rank") == "1");
}

TEST_CASE("compare edge cases") {
  CHECK(run({"compare", "--lexicon", kToy, "--p-a", "1", "--position", "1"}).code ==
        cli::kUndefined);
  const Result defaults = run({"compare", "--lexicon", kToy, "--p-a", "1"});
  CHECK(defaults.code == 0);
  CHECK(defaults.err.find("undefined at position 1") != std::string::npos);

  const Result two = run({"compare", "--lexicon", kToy, "--p-a", "0.75", "--word", "bat",
                          "--word", "pin"});
  CHECK(two.code == 0);
  CHECK(two.err.find("only 2 word(s)") != std::string::npos);
}

TEST_CASE("pairs command") {
  TempDir tmp;
  const auto lex = tmp.file("lex.tsv",
                            "palate\tP AE L AH T\t12\nbalance\tB AE L AH N S\t40\n"
                            "ballad\tB AE L AH D\t9\nbat\tB AE T\t30\npad\tP AE D\t15\n");
  const Result r = run({"pairs", "--lexicon", lex, "--min-shared", "3"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv_tables(r.out)[0];
  // ballad/palate also share AE L AH, so both appear; balance/palate is the fixture pair
  const auto it = std::find_if(rows.begin(), rows.end(), [](const auto& row) {
    return row.at("word_a") == "balance" && row.at("word_b") == "palate";
  });
  REQUIRE(it != rows.end());
  CHECK(it->at("shared_len") == "3");
  CHECK(it->at("divergence_point") == "5");
  CHECK(it->at("onset_a") == "B");
  CHECK(it->at("onset_b") == "P");
}

TEST_CASE("continuum command") {
  const Result r = run({"continuum", "--in", kData + "/curve.csv"});
  REQUIRE(r.code == 0);
  std::vector<std::string> steps;
  const auto tables = parse_csv_tables(r.out);
  for (const auto& row : tables[0]) steps.push_back(row.at("step"));
  CHECK(steps == std::vector<std::string>{"1", "5", "6", "8", "11"});

  TempDir tmp;
  std::string flat = "step,proportion\n";
  for (int s = 1; s <= 11; ++s) flat += std::to_string(s) + ",0.5\n";
  CHECK(run({"continuum", "--in", tmp.file("flat.csv", flat)}).code == cli::kAnalysis);
  CHECK(run({"continuum", "--in", tmp.file("bad.csv", "step,proportion\n1,0.5\n")}).code ==
        cli::kBadInput);
  CHECK(run({"continuum", "--in", (tmp.path / "missing.csv").string()}).code == cli::kNotFound);
}

TEST_CASE("simfit command") {
  TempDir tmp;
  std::ostringstream lex_text;
  write_lexicon(lex_text, testing::pair_rich_lexicon(40, 5));
  const auto lex = tmp.file("lex.tsv", lex_text.str());
  const std::vector<std::string> args = {"simfit", "--lexicon", lex, "--sims", "3", "--subjects",
                                         "3", "--rows", "60", "--seed", "11", "--noise", "0.5"};
  auto with_out = args;
  with_out.insert(with_out.end(), {"--dataset-out", tmp.file("data.csv")});
  const Result a = run(with_out);
  REQUIRE(a.code == 0);
  const Result b = run(args);
  CHECK(a.out == b.out);
  const auto tables = parse_csv_tables(a.out);
  REQUIRE(tables.size() == 2);
  CHECK(tables[0][0].at("removed_model") == "acoustic");
  CHECK(tables[0][0].at("df") == "2");
  CHECK(tables[1][0].at("bonferroni_alpha") == "0.008333");
  CHECK(tables[1][0].at("model") == "ols-fixed-effects");
  CHECK(lines_of(slurp(tmp.path / "data.csv")).size() == 1 + 3 * 60);

  auto df1 = args;
  df1.insert(df1.end(), {"--df", "1"});
  CHECK(parse_csv_tables(run(df1).out)[0][0].at("df") == "1");
  CHECK(run({"simfit", "--lexicon", lex, "--betas", "1"}).code == cli::kUsage);
}

TEST_CASE("ingest-check and error codes") {
  const Result r = run({"ingest-check", "--lexicon", kToy});
  REQUIRE(r.code == 0);
  const auto row = parse_csv_tables(r.out)[0][0];
  CHECK(row.at("entries") == "4");
  CHECK(row.at("total_frequency") == "12.000000");

  TempDir tmp;
  CHECK(run({"ingest-check", "--lexicon", tmp.file("bad.tsv", "bat\tB AE T\tlots\n")}).code ==
        cli::kBadInput);
  CHECK(run({"ingest-check", "--lexicon", tmp.file("zero.tsv", "bat\tB AE T\t0\n")}).code ==
        cli::kBadInput);
  CHECK(run({"ingest-check", "--smoothing", "1", "--lexicon", tmp.file("zero.tsv")}).code == 0);
  CHECK(run({"ingest-check", "--lexicon", (tmp.path / "none.tsv").string()}).code ==
        cli::kNotFound);
  CHECK(run({"ingest-check"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"trace", "--lexicon", kToy, "--word", "bat", "--p-a", "1.5"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("--out writes the same bytes as stdout") {
  TempDir tmp;
  const auto path = tmp.file("out.csv");
  const Result to_stdout = run({"trace", "--lexicon", kToy, "--all", "--p-a", "0.25"});
  const Result to_file = run({"trace", "--lexicon", kToy, "--all", "--p-a", "0.25", "--out", path});
  REQUIRE(to_file.code == 0);
  CHECK(to_file.out.empty());
  CHECK(slurp(path) == to_stdout.out);
}

TEST_CASE("csv and json carry identical values") {
  TempDir tmp;
  std::ostringstream lex_text;
  write_lexicon(lex_text, testing::pair_rich_lexicon(30, 9));
  const auto lex = tmp.file("lex.tsv", lex_text.str());
  check_parity({"ingest-check", "--lexicon", lex});
  check_parity({"trace", "--lexicon", lex, "--all", "--p-a", "0.75"});
  check_parity({"compare", "--lexicon", lex, "--p-a", "0.75"});
  check_parity({"pairs", "--lexicon", lex});
  check_parity({"continuum", "--in", kData + "/curve.csv"});
  check_parity({"simfit", "--lexicon", lex, "--sims", "2", "--subjects", "2", "--rows", "40"});
}

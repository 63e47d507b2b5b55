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

#include "cohortlex/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cohortlex/analysis.hpp"
#include "cohortlex/cohort_trie.hpp"
#include "cohortlex/continuum.hpp"
#include "cohortlex/error.hpp"
#include "cohortlex/format.hpp"
#include "cohortlex/lexicon.hpp"
#include "cohortlex/metrics.hpp"
#include "cohortlex/stimulus.hpp"
#include "cohortlex/trace_io.hpp"

namespace cohortlex::cli {
namespace {

struct Na {};
using Cell = std::variant<std::string, double, long long, Na>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return format_fixed(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return "NA";
}

std::string json_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return json_quote(*s);
  if (const auto* d = std::get_if<double>(&c))
    return std::isfinite(*d) ? format_fixed(*d) : std::string("null");
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return "null";
}

// CSV: tables separated by a blank line. JSON lines: one object per row; with
// several tables each object carries a leading "table" field.
void write_tables(std::ostream& os, const std::vector<Table>& tables, OutputFormat format) {
  const bool tag = tables.size() > 1;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const Table& table = tables[t];
    if (format == OutputFormat::kCsv) {
      if (t > 0) os << '\n';
      for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << table.columns[c];
      os << '\n';
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
        os << '\n';
      }
    } else {
      for (const auto& row : table.rows) {
        os << '{';
        if (tag) os << "\"table\":" << json_quote(table.name) << ',';
        for (std::size_t c = 0; c < row.size(); ++c)
          os << (c ? "," : "") << json_quote(table.columns[c]) << ':' << json_cell(row[c]);
        os << "}\n";
      }
    }
  }
}

struct Common {
  std::string lexicon;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  double smoothing = 0.0;

  OutputFormat output_format() const {
    return format == "json" ? OutputFormat::kJsonLines : OutputFormat::kCsv;
  }
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Lexicon load_lexicon(const Common& common) {
  if (common.lexicon.empty()) throw UsageError("--lexicon is required");
  ParseOptions opt;
  opt.smoothing = common.smoothing;
  return parse_lexicon(std::filesystem::path(common.lexicon), opt);
}

std::pair<Phoneme, Phoneme> parse_pair(const std::string& text) {
  const auto parts = split_csv(text);
  if (parts.size() != 2) throw UsageError("--pair expects two phonemes, e.g. B,P");
  return {Phoneme(parts[0]), Phoneme(parts[1])};
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LookupError("cannot open '" + path + "'");
  return in;
}

// Everything a command writes to its result stream is buffered and only
// emitted once the command has succeeded.
void emit(const Common& common, const std::string& text, std::ostream& out) {
  if (common.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.out, std::ios::binary);
  if (!file) throw LookupError("cannot write '" + common.out + "'");
  file << text;
}

// ---- ingest-check ----------------------------------------------------------

void cmd_ingest(const Common& common, std::ostream& out) {
  const CohortTrie trie(load_lexicon(common));
  const Lexicon& lex = trie.lexicon();
  if (!trie.verify_aggregates()) throw std::logic_error("trie aggregates disagree with a rescan");

  std::size_t max_len = 0;
  std::map<PhonemeSeq, std::size_t> by_pron;
  for (const auto& e : lex.entries()) {
    max_len = std::max(max_len, e.pron.size());
    ++by_pron[e.pron];
  }
  const auto homophones = std::count_if(by_pron.begin(), by_pron.end(),
                                        [](const auto& kv) { return kv.second > 1; });
  const std::vector<Phoneme> inventory(lex.inventory().begin(), lex.inventory().end());

  Table t{"summary",
          {"entries", "inventory_size", "inventory", "total_frequency", "frequency_unit",
           "max_length", "homophone_groups", "trie_nodes"},
          {}};
  t.rows.push_back({static_cast<long long>(lex.size()),
                    static_cast<long long>(inventory.size()), format_phonemes(inventory),
                    lex.total_frequency(), std::string(to_string(lex.frequency_unit())),
                    static_cast<long long>(max_len), static_cast<long long>(homophones),
                    static_cast<long long>(trie.node_count())});
  std::ostringstream os;
  write_tables(os, {t}, common.output_format());
  emit(common, os.str(), out);
}

// ---- evidence --------------------------------------------------------------

struct EvidenceArgs {
  std::string pair = "B,P";
  std::optional<double> p_a;
  std::string continuum;
  std::string item;
  std::optional<double> target;
  std::string source = "design";
};

void add_evidence_options(CLI::App* cmd, EvidenceArgs& ev) {
  cmd->add_option("--pair", ev.pair, "Onset phonemes a,b (a is the voiced member)")
      ->capture_default_str();
  cmd->add_option("--p-a", ev.p_a, "Acoustic probability of the first onset")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--continuum", ev.continuum, "Identification curve CSV (instead of --p-a)");
  cmd->add_option("--item", ev.item, "Item name in a long-format continuum file");
  cmd->add_option("--target", ev.target, "Continuum target level, one of 1,.75,.5,.25,0");
  cmd->add_option("--evidence-source", ev.source, "Use the design target or achieved proportion")
      ->check(CLI::IsMember({"design", "achieved"}))
      ->capture_default_str();
}

AcousticEvidence make_evidence(const EvidenceArgs& ev) {
  const auto pair = parse_pair(ev.pair);
  if (!ev.continuum.empty()) {
    if (ev.p_a) throw UsageError("give either --p-a or --continuum, not both");
    if (!ev.target) throw UsageError("--continuum needs --target");
    auto in = open_input(ev.continuum);
    const auto curves = read_identification_curves(in);
    const auto it = curves.find(ev.item);
    if (it == curves.end()) throw LookupError("no continuum item '" + ev.item + "'");
    const auto source = ev.source == "achieved" ? EvidenceSource::kAchievedProportion
                                                : EvidenceSource::kDesignTarget;
    return evidence_for_target(resample_continuum(it->second), *ev.target, pair, source);
  }
  if (!ev.p_a) throw UsageError("give --p-a or --continuum with --target");
  return AcousticEvidence(pair.first, pair.second, *ev.p_a);
}

// Entries named in `words`, or with `all`, every entry whose onset is one of
// the evidence phonemes.
std::vector<std::size_t> select_words(const Lexicon& lex, const std::vector<std::string>& words,
                                      bool all, const AcousticEvidence& evidence) {
  std::vector<std::size_t> out;
  if (all) {
    for (std::size_t i = 0; i < lex.size(); ++i) {
      const Phoneme& onset = lex.entries()[i].pron.front();
      if (onset == evidence.phoneme_a() || onset == evidence.phoneme_b()) out.push_back(i);
    }
    return out;
  }
  if (words.empty()) throw UsageError("name at least one --word or pass --all");
  for (const auto& w : words) {
    const std::size_t i = lex.find(w);
    if (i == Lexicon::npos) throw LookupError("word '" + w + "' is not in the lexicon");
    out.push_back(i);
  }
  return out;
}

std::vector<MetricTrace> build_traces(const CohortTrie& trie,
                                      const std::vector<std::size_t>& indices,
                                      const AcousticEvidence& evidence, bool skip_impossible,
                                      std::ostream& err) {
  std::vector<MetricTrace> traces;
  traces.reserve(indices.size());
  std::size_t skipped = 0;
  for (std::size_t i : indices) {
    try {
      traces.push_back(metric_trace(trie, trie.entry(i), evidence));
    } catch (const ImpossibleContinuation& e) {
      if (!skip_impossible) throw;
      ++skipped;
    }
  }
  if (skipped > 0)
    err << "warning: skipped " << skipped
        << " word(s) the committed onset cannot reach\n";
  return traces;
}

// ---- trace -----------------------------------------------------------------

struct TraceArgs {
  EvidenceArgs evidence;
  std::vector<std::string> words;
  bool all = false;
};

void cmd_trace(const Common& common, const TraceArgs& args, std::ostream& out,
               std::ostream& err) {
  const AcousticEvidence evidence = make_evidence(args.evidence);
  const CohortTrie trie(load_lexicon(common));
  const auto indices = select_words(trie.lexicon(), args.words, args.all, evidence);
  const auto traces = build_traces(trie, indices, evidence, args.all, err);
  std::ostringstream os;
  write_traces(os, traces, common.output_format(), traces.size() != 1 || args.all);
  emit(common, os.str(), out);
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
  EvidenceArgs evidence;
  std::vector<std::string> words;
  std::vector<std::size_t> positions;
  std::size_t top = 10;
  std::size_t rank_position = 2;
  std::string quantity = "surprisal";
  std::string traces_out;
};

std::optional<double> correlation_at(std::span<const MetricTrace> traces, std::size_t position,
                                     Quantity quantity) {
  std::vector<double> sw, ac;
  for (const auto& trace : traces) {
    if (const MetricPoint* p = trace.at(position)) {
      sw.push_back(quantity == Quantity::kSurprisal ? p->switch_surprisal : p->switch_entropy);
      ac.push_back(quantity == Quantity::kSurprisal ? p->acoustic_surprisal : p->acoustic_entropy);
    }
  }
  try {
    return pearson(sw, ac);
  } catch (const UndefinedCorrelation&) {
    return std::nullopt;
  }
}

void cmd_compare(const Common& common, const CompareArgs& args, std::ostream& out,
                 std::ostream& err) {
  const AcousticEvidence evidence = make_evidence(args.evidence);
  const CohortTrie trie(load_lexicon(common));
  const bool all = args.words.empty();
  const auto indices = select_words(trie.lexicon(), args.words, all, evidence);
  const auto traces = build_traces(trie, indices, evidence, all, err);
  const bool small = traces.size() < 3;
  if (small)
    err << "warning: only " << traces.size()
        << " word(s); correlations rest on too few points to mean much\n";

  std::vector<std::size_t> positions = args.positions;
  const bool explicit_positions = !positions.empty();
  if (!explicit_positions) {
    std::size_t max_len = 0;
    for (const auto& t : traces) max_len = std::max(max_len, t.points.size());
    for (std::size_t p = 1; p <= max_len; ++p) positions.push_back(p);
  }

  Table corr{"correlation", {"position", "n", "r_surprisal", "r_entropy"}, {}};
  bool any_defined = false;
  for (std::size_t pos : positions) {
    if (pos < 1) throw UsageError("positions start at 1");
    const auto n = std::count_if(traces.begin(), traces.end(),
                                 [&](const MetricTrace& t) { return t.at(pos) != nullptr; });
    const auto rs = correlation_at(traces, pos, Quantity::kSurprisal);
    const auto re = correlation_at(traces, pos, Quantity::kEntropy);
    if ((!rs || !re) && !small) {
      if (explicit_positions)
        throw UndefinedCorrelation("correlation at position " + std::to_string(pos) +
                                   " is undefined (fewer than two words or a constant column)");
      err << "warning: correlation undefined at position " << pos << '\n';
    }
    any_defined = any_defined || rs || re;
    corr.rows.push_back({static_cast<long long>(pos), static_cast<long long>(n),
                         rs ? Cell{*rs} : Cell{Na{}}, re ? Cell{*re} : Cell{Na{}}});
  }
  if (!any_defined && !small)
    throw UndefinedCorrelation("no position has a defined correlation");

  const Quantity q = args.quantity == "entropy" ? Quantity::kEntropy : Quantity::kSurprisal;
  const auto ranking = model_divergence_ranking(traces, args.rank_position, q);
  Table div{"divergence",
            {"rank", "word", "position", "quantity", "switch_value", "acoustic_value",
             "difference"},
            {}};
  for (std::size_t i = 0; i < std::min(args.top, ranking.size()); ++i) {
    const auto& d = ranking[i];
    div.rows.push_back({static_cast<long long>(i + 1), d.orthography,
                        static_cast<long long>(args.rank_position), std::string(to_string(q)),
                        d.switch_value, d.acoustic_value, d.difference});
  }

  if (!args.traces_out.empty()) {
    std::ofstream file(args.traces_out, std::ios::binary);
    if (!file) throw LookupError("cannot write '" + args.traces_out + "'");
    write_traces(file, traces, common.output_format(), true);
  }
  std::ostringstream os;
  write_tables(os, {corr, div}, common.output_format());
  emit(common, os.str(), out);
}

// ---- pairs -----------------------------------------------------------------

struct PairsArgs {
  std::size_t min_shared = 1;
  bool include_nondiverging = false;
};

void cmd_pairs(const Common& common, const PairsArgs& args, std::ostream& out,
               std::ostream& err) {
  const Lexicon lex = load_lexicon(common);
  PairSearchOptions opt;
  opt.min_shared = args.min_shared;
  opt.require_divergence = !args.include_nondiverging;
  const auto pairs = find_word_pairs(lex, opt);
  err << "found " << pairs.size() << " pair(s)\n";
  std::ostringstream os;
  if (common.output_format() == OutputFormat::kCsv) {
    write_pairs_csv(os, pairs);
  } else {
    Table t{"pairs", {"word_a", "word_b", "onset_a", "onset_b", "shared_len", "divergence_point"}, {}};
    for (const auto& p : pairs)
      t.rows.push_back({p.entry_a.orthography, p.entry_b.orthography,
                        p.onset_pair.first.symbol(), p.onset_pair.second.symbol(),
                        static_cast<long long>(p.shared_len),
                        p.divergence ? Cell{static_cast<long long>(*p.divergence)}
                                     : Cell{std::string("end")}});
    write_tables(os, {t}, OutputFormat::kJsonLines);
  }
  emit(common, os.str(), out);
}

// ---- continuum -------------------------------------------------------------

struct ContinuumArgs {
  std::string in;
  std::string mode = "nearest";
};

void cmd_continuum(const Common& common, const ContinuumArgs& args, std::ostream& out) {
  auto in = open_input(args.in);
  const auto curves = read_identification_curves(in);
  const auto mode = args.mode == "fitted" ? ResampleMode::kFittedInversion
                                          : ResampleMode::kNearestProportion;
  Table t{"continuum", {"item", "target", "step", "achieved", "fitted", "midpoint", "slope"}, {}};
  for (const auto& [item, curve] : curves) {
    const PerceptualContinuum c = resample_continuum(curve, mode);
    for (const auto& s : c.selected)
      t.rows.push_back({item, s.target, static_cast<long long>(s.step), s.achieved, s.fitted,
                        c.fit.midpoint, c.fit.slope});
  }
  std::ostringstream os;
  write_tables(os, {t}, common.output_format());
  emit(common, os.str(), out);
}

// ---- simfit ----------------------------------------------------------------

struct SimfitArgs {
  std::string generator = "acoustic";
  std::string betas = "1,1";
  double noise = 1.0;
  std::size_t sims = 100;
  std::size_t subjects = 10;
  std::size_t rows = 500;
  double subject_sd = 1.0;
  std::size_t position = 2;
  double alpha = 0.05;
  std::optional<int> df;
  std::size_t min_shared = 1;
  std::string dataset_out;
};

void cmd_simfit(const Common& common, const SimfitArgs& args, std::ostream& out,
                std::ostream& err) {
  const auto beta_fields = split_csv(args.betas);
  if (beta_fields.size() != 2) throw UsageError("--betas expects surprisal,entropy");
  RecoveryConfig cfg;
  try {
    cfg.simulation.beta_surprisal = std::stod(beta_fields[0]);
    cfg.simulation.beta_entropy = std::stod(beta_fields[1]);
  } catch (const std::logic_error&) {
    throw UsageError("--betas expects two numbers");
  }
  cfg.simulation.generator = args.generator == "switch" ? ModelKind::kSwitch : ModelKind::kAcoustic;
  cfg.simulation.noise_sd = args.noise;
  cfg.simulation.n_subjects = args.subjects;
  cfg.simulation.rows_per_subject = args.rows;
  cfg.simulation.subject_sd = args.subject_sd;
  cfg.simulation.position = args.position;
  cfg.simulation.seed = common.seed;
  cfg.n_sims = args.sims;
  cfg.alpha = args.alpha;
  cfg.df_override = args.df;

  const CohortTrie trie(load_lexicon(common));
  PairSearchOptions opt;
  opt.min_shared = args.min_shared;
  const auto pairs = find_word_pairs(trie.lexicon(), opt);
  std::vector<MetricTrace> traces;
  for (double level : {0.25, 0.75}) {
    for (const auto& p : pairs) {
      const AcousticEvidence ev(p.onset_pair.first, p.onset_pair.second, level);
      for (const auto* e : {&p.entry_a, &p.entry_b}) {
        try {
          auto trace = metric_trace(trie, *e, ev);
          if (trace.at(args.position)) traces.push_back(std::move(trace));
        } catch (const ImpossibleContinuation&) {
        }
      }
    }
  }
  if (traces.empty())
    throw ValidationError("no word pair yields a trace reaching position " +
                          std::to_string(args.position));
  err << "simulating from " << traces.size() << " traces (" << pairs.size() << " pairs)\n";
  err << "note: fixed-effects OLS with subject intercepts stands in for a mixed model\n";

  if (!args.dataset_out.empty()) {
    std::ofstream file(args.dataset_out, std::ios::binary);
    if (!file) throw LookupError("cannot write '" + args.dataset_out + "'");
    write_dataset_csv(file, simulate_dataset(traces, cfg.simulation));
  }

  const RecoverySummary s = model_recovery(traces, cfg);
  const auto n = static_cast<double>(s.n_sims);
  double chi_a = 0.0, chi_s = 0.0, hit_a = 0.0, hit_s = 0.0;
  for (const auto& o : s.outcomes) {
    chi_a += o.drop_acoustic.chi2;
    chi_s += o.drop_switch.chi2;
    hit_a += o.drop_acoustic.p_value < s.alpha;
    hit_s += o.drop_switch.p_value < s.alpha;
  }
  const long long df = s.outcomes.front().drop_acoustic.df;

  Table drops{"comparison",
              {"removed_model", "df", "mean_delta_loglik", "mean_chi2", "detection_rate"},
              {}};
  drops.rows.push_back({std::string("acoustic"), df, s.mean_delta_ll_acoustic, chi_a / n, hit_a / n});
  drops.rows.push_back({std::string("switch"), df, s.mean_delta_ll_switch, chi_s / n, hit_s / n});
  Table summary{"summary",
                {"generator", "n_sims", "alpha", "bonferroni_alpha", "generating_rate",
                 "other_rate", "only_generating_rate", "either_rate", "model"},
                {}};
  summary.rows.push_back({std::string(to_string(s.generator)), static_cast<long long>(s.n_sims),
                          s.alpha, s.alpha / 6.0, s.generating_rate, s.other_rate,
                          s.only_generating_rate, s.either_rate,
                          std::string("ols-fixed-effects")});
  std::ostringstream os;
  write_tables(os, {drops, summary}, common.output_format());
  emit(common, os.str(), out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohort entropy and surprisal under switch-based and acoustic-weighted models",
               "cohortlex"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--lexicon", common.lexicon, "Lexicon TSV: orthography, phonemes, frequency");
  app.add_option("--out", common.out, "Write results here instead of stdout");
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", common.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--smoothing", common.smoothing, "Add-lambda frequency smoothing")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* ingest = app.add_subcommand("ingest-check", "Validate a lexicon and summarise it");

  TraceArgs trace_args;
  auto* trace = app.add_subcommand("trace", "Per-phoneme metrics for words");
  add_evidence_options(trace, trace_args.evidence);
  trace->add_option("--word", trace_args.words, "Word to trace (repeatable)");
  trace->add_flag("--all", trace_args.all, "Trace every word starting with either onset");

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Correlate the two models across words");
  add_evidence_options(compare, compare_args.evidence);
  compare->add_option("--word", compare_args.words, "Restrict to these words (repeatable)");
  compare->add_option("--position", compare_args.positions, "Positions to report (repeatable)");
  compare->add_option("--top", compare_args.top, "Rows in the divergence ranking")
      ->capture_default_str();
  compare->add_option("--rank-position", compare_args.rank_position,
                      "Position for the divergence ranking")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  compare->add_option("--quantity", compare_args.quantity, "Quantity ranked by divergence")
      ->check(CLI::IsMember({"surprisal", "entropy"}))
      ->capture_default_str();
  compare->add_option("--traces-out", compare_args.traces_out, "Also write the traces here");

  PairsArgs pairs_args;
  auto* pairs = app.add_subcommand("pairs", "Find voicing minimal-onset word pairs");
  pairs->add_option("--min-shared", pairs_args.min_shared,
                    "Minimum shared phonemes after the onset")
      ->capture_default_str();
  pairs->add_flag("--include-nondiverging", pairs_args.include_nondiverging,
                  "Keep pairs where one word ends inside the other");

  ContinuumArgs continuum_args;
  auto* continuum = app.add_subcommand("continuum", "Resample an 11-step continuum to 5 steps");
  continuum->add_option("--in", continuum_args.in, "Identification curve CSV")->required();
  continuum->add_option("--mode", continuum_args.mode, "Match raw or fitted proportions")
      ->check(CLI::IsMember({"nearest", "fitted"}))
      ->capture_default_str();

  SimfitArgs sim_args;
  auto* simfit = app.add_subcommand("simfit", "Simulate responses and test model recovery");
  simfit->add_option("--generator", sim_args.generator, "Model generating the responses")
      ->check(CLI::IsMember({"acoustic", "switch"}))
      ->capture_default_str();
  simfit->add_option("--betas", sim_args.betas, "Surprisal,entropy coefficients")
      ->capture_default_str();
  simfit->add_option("--noise", sim_args.noise, "Residual noise sd")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simfit->add_option("--sims", sim_args.sims, "Number of simulated datasets")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simfit->add_option("--subjects", sim_args.subjects, "Subjects per dataset")
      ->capture_default_str();
  simfit->add_option("--rows", sim_args.rows, "Rows per subject")->capture_default_str();
  simfit->add_option("--subject-sd", sim_args.subject_sd, "Subject intercept sd")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simfit->add_option("--position", sim_args.position, "Phoneme position of the metrics")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simfit->add_option("--alpha", sim_args.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  simfit->add_option("--df", sim_args.df, "Override the likelihood-ratio degrees of freedom")
      ->check(CLI::PositiveNumber);
  simfit->add_option("--min-shared", sim_args.min_shared, "Pair search minimum shared length")
      ->capture_default_str();
  simfit->add_option("--dataset-out", sim_args.dataset_out,
                     "Write the first simulated dataset here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*ingest) cmd_ingest(common, out);
    else if (*trace) cmd_trace(common, trace_args, out, err);
    else if (*compare) cmd_compare(common, compare_args, out, err);
    else if (*pairs) cmd_pairs(common, pairs_args, out, err);
    else if (*continuum) cmd_continuum(common, continuum_args, out);
    else if (*simfit) cmd_simfit(common, sim_args, out, err);
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const LookupError& e) {
    err << "error: " << e.what() << "\n";
    return kNotFound;
  } catch (const ImpossibleContinuation& e) {
    err << "error: impossible continuation: " << e.what() << "\n";
    return kUndefined;
  } catch (const UndefinedCorrelation& e) {
    err << "error: undefined correlation: " << e.what() << "\n";
    return kUndefined;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << "\n";
    return kBadInput;
  } catch (const ValidationError& e) {
    err << "error: invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const DegenerateCurve& e) {
    err << "error: " << e.what() << "\n";
    return kAnalysis;
  } catch (const SingularDesign& e) {
    err << "error: " << e.what() << "\n";
    return kAnalysis;
  } catch (const NestingError& e) {
    err << "error: " << e.what() << "\n";
    return kAnalysis;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace cohortlex::cli

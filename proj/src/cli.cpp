// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include "finconsist/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "finconsist/backtest.hpp"
#include "finconsist/corpus.hpp"
#include "finconsist/error.hpp"
#include "finconsist/hash.hpp"
#include "finconsist/io.hpp"
#include "finconsist/metrics.hpp"
#include "finconsist/transform.hpp"
#include "finconsist/version.hpp"

namespace finconsist::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Common {
  unsigned threads = 1;
};

// Provenance shared by every artifact: toolkit version, config snapshot,
// input hashes and the lexicon fingerprint.
class Manifest {
 public:
  explicit Manifest(std::string command) { doc_["command"] = std::move(command); }

  void config(const std::string& key, json value) { doc_["config"][key] = std::move(value); }

  void input(const std::string& role, const fs::path& path) {
    doc_["inputs"][role] = {{"file", path.filename().string()}, {"sha256", sha256_file(path)}};
  }

  void lexicon(const std::string& fingerprint) { doc_["lexicon_fingerprint"] = fingerprint; }

  void summary(const std::string& key, json value) { doc_["summary"][key] = std::move(value); }

  void output(const fs::path& path) {
    doc_["outputs"][path.filename().string()] = sha256_file(path);
  }

  json document() const {
    json doc = doc_;
    doc["toolkit"] = {{"name", std::string(kToolName)}, {"version", std::string(kVersion)}};
    if (!doc.contains("config")) doc["config"] = json::object();
    if (!doc.contains("inputs")) doc["inputs"] = json::object();
    return doc;
  }

  void write(const fs::path& dir) const { write_file(dir / "manifest.json", document().dump(2) + "\n"); }

 private:
  json doc_;
};

json horizons_json(const std::vector<int>& horizons) { return json(horizons); }

void check_horizons(const std::vector<int>& horizons) {
  if (horizons.empty()) throw Error(ErrorKind::kInvalidArgument, "no horizons given");
  for (const int h : horizons) {
    if (h <= 0) throw Error(ErrorKind::kInvalidArgument, "horizons must be positive integers");
  }
}

SplitSpec split_spec(const std::vector<double>& ratios) {
  SplitSpec spec{ratios.at(0), ratios.at(1), ratios.at(2)};
  spec.validate();
  return spec;
}

void write_text(const fs::path& path, const std::string& text) { write_file(path, text); }

std::string labels_text(const std::vector<LabeledSample>& samples) {
  std::ostringstream out;
  write_labels(out, samples);
  return out.str();
}

// Labels every transcript at every horizon, reporting all failures at once.
std::vector<LabeledSample> label_all(const std::vector<Transcript>& transcripts,
                                     const PriceSeries& prices, const std::vector<int>& horizons) {
  std::vector<LabeledSample> labels;
  std::vector<std::string> failures;
  for (const auto& t : transcripts) {
    for (const int h : horizons) {
      try {
        labels.push_back(label_transcript(prices, t, h));
      } catch (const Error& e) {
        failures.push_back(t.id + "@h" + std::to_string(h) + ": " + e.what());
      }
    }
  }
  if (!failures.empty()) {
    std::string msg = "cannot label " + std::to_string(failures.size()) + " sample(s):";
    for (std::size_t i = 0; i < std::min<std::size_t>(10, failures.size()); ++i) {
      msg += "\n  " + failures[i];
    }
    throw Error(ErrorKind::kInsufficientPriceData, msg);
  }
  return labels;
}

void write_jsonl(const fs::path& path, const std::vector<Transcript>& transcripts) {
  std::ostringstream out;
  write_transcripts(out, transcripts);
  write_file(path, out.str());
}

json metrics_json(const ConfusionMatrix& cm) {
  json doc;
  doc["confusion"] = {{"tp", cm.tp}, {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}};
  if (cm.total() > 0) {
    const auto m = classification_metrics(cm);
    doc["accuracy"] = m.accuracy;
    doc["f1"] = m.f1;
    doc["mcc"] = m.mcc;
  }
  return doc;
}

json result_json(const PortfolioResult& r) {
  json doc;
  doc["strategy"] = r.strategy;
  doc["horizon"] = r.horizon == 0 ? json("pooled") : json(r.horizon);
  doc["n_trades"] = r.n_trades;
  doc["profit_ratio"] = r.profit_ratio;
  doc["mean_return"] = r.mean_return;
  doc["stdev_return"] = r.stdev_return ? json(*r.stdev_return) : json(nullptr);
  doc["sharpe_ratio"] = r.sharpe_ratio ? json(*r.sharpe_ratio) : json(nullptr);
  doc["r_f"] = r.risk_free;
  return doc;
}

std::string suite_fingerprint(const fs::path& suite_dir) {
  const auto manifest = suite_dir / "manifest.json";
  if (!fs::exists(manifest)) return AntonymLexicon::builtin().fingerprint();
  return json::parse(read_file(manifest)).value("lexicon_fingerprint", std::string());
}

void add_suite_inputs(Manifest& manifest, const fs::path& suite_dir) {
  manifest.input("suite/originals.jsonl", suite_dir / "originals.jsonl");
  manifest.input("suite/variants.jsonl", suite_dir / "variants.jsonl");
}

// --- subcommands ---------------------------------------------------------

struct LabelArgs {
  std::string transcripts, prices, out;
  std::vector<int> horizons{kDefaultHorizons.begin(), kDefaultHorizons.end()};
};

void cmd_label(const LabelArgs& a, const Common&) {
  check_horizons(a.horizons);
  const auto transcripts = load_transcripts(a.transcripts);
  const auto prices = PriceSeries::load(a.prices);
  const auto labels = label_all(transcripts, prices, a.horizons);

  fs::create_directories(a.out);
  write_text(fs::path(a.out) / "labels.csv", labels_text(labels));
  Manifest m("label");
  m.config("horizons", horizons_json(a.horizons));
  m.input("transcripts", a.transcripts);
  m.input("prices", a.prices);
  m.lexicon(AntonymLexicon::builtin().fingerprint());
  m.output(fs::path(a.out) / "labels.csv");
  m.write(a.out);
}

struct SplitArgs {
  std::string transcripts, out;
  std::vector<double> ratios{0.7, 0.1, 0.2};
};

void cmd_split(const SplitArgs& a, const Common&, std::ostream& err) {
  const auto spec = split_spec(a.ratios);
  auto split = chronological_split(load_transcripts(a.transcripts), spec);
  for (const auto& w : split.warnings) err << "warning: " << w << '\n';

  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_jsonl(dir / "train.jsonl", split.train);
  write_jsonl(dir / "validation.jsonl", split.validation);
  write_jsonl(dir / "test.jsonl", split.test);
  Manifest m("split");
  m.config("split", a.ratios);
  m.input("transcripts", a.transcripts);
  m.lexicon(AntonymLexicon::builtin().fingerprint());
  for (const auto* name : {"train.jsonl", "validation.jsonl", "test.jsonl"}) m.output(dir / name);
  m.write(dir);
}

struct SuiteArgs {
  std::string transcripts, prices, lexicon, sectors, protect, out;
  std::vector<int> horizons{kDefaultHorizons.begin(), kDefaultHorizons.end()};
  std::vector<double> ratios{0.7, 0.1, 0.2};
};

void cmd_suite(const SuiteArgs& a, const Common& common, std::ostream& err) {
  check_horizons(a.horizons);
  const auto spec = split_spec(a.ratios);
  const auto lexicon = a.lexicon.empty() ? AntonymLexicon::builtin() : AntonymLexicon::load(a.lexicon);
  const auto sectors = a.sectors.empty() ? SectorMap::builtin() : SectorMap::load(a.sectors);
  SuiteOptions options;
  options.threads = common.threads;
  if (!a.protect.empty()) {
    std::istringstream words(read_file(a.protect));
    for (std::string w; words >> w;) options.protected_tokens.insert(w);
  }

  const auto transcripts = load_transcripts(a.transcripts);
  const auto prices = PriceSeries::load(a.prices);
  auto split = chronological_split(transcripts, spec);
  for (const auto& w : split.warnings) err << "warning: " << w << '\n';
  const auto labels = label_all(split.test, prices, a.horizons);
  const auto suite = build_suite(split.test, labels, a.horizons, lexicon, sectors, options);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_suite(dir, suite);
  write_text(dir / "labels.csv", labels_text(labels));
  write_text(dir / "lexicon.tsv", lexicon.canonical_text());

  std::size_t zero_substitution = 0;
  std::size_t self_pairs = 0;
  for (const auto& v : suite.variants) {
    zero_substitution += v.zero_substitution;
    self_pairs += v.self_pair;
  }
  if (zero_substitution > 0) {
    err << "warning: " << zero_substitution
        << " negation variant(s) had no lexicon substitutions\n";
  }

  Manifest m("suite");
  m.config("horizons", horizons_json(a.horizons));
  m.config("split", a.ratios);
  m.config("protected_tokens", json(std::vector<std::string>(options.protected_tokens.begin(),
                                                             options.protected_tokens.end())));
  m.config("lexicon", a.lexicon.empty() ? json("builtin") : json("file"));
  m.config("sectors", a.sectors.empty() ? json("builtin") : json("file"));
  m.input("transcripts", a.transcripts);
  m.input("prices", a.prices);
  if (!a.lexicon.empty()) m.input("lexicon", a.lexicon);
  if (!a.sectors.empty()) m.input("sectors", a.sectors);
  m.lexicon(suite.lexicon_fingerprint);
  m.summary("counts", {{"train", split.train.size()},
                      {"validation", split.validation.size()},
                      {"test", split.test.size()},
                      {"variants", suite.variants.size()},
                      {"zero_substitution", zero_substitution},
                      {"self_pairs", self_pairs}});
  for (const auto* name : {"originals.jsonl", "variants.jsonl", "labels.csv", "lexicon.tsv"}) {
    m.output(dir / name);
  }
  m.write(dir);
}

struct ScoreArgs {
  std::string suite, preds, model, out;
  std::vector<int> horizons;
  bool strict = false;
};

void cmd_score(const ScoreArgs& a, const Common&, std::ostream& out) {
  const auto suite = load_suite(a.suite);
  auto preds = PredictionSet::load(a.preds);
  preds.model_name = a.model;
  const auto horizons = a.horizons.empty() ? suite.horizons : a.horizons;
  check_horizons(horizons);

  Manifest m("score");
  m.config("horizons", horizons_json(horizons));
  m.config("strict", a.strict);
  m.config("model", a.model);
  add_suite_inputs(m, a.suite);
  m.input("predictions", a.preds);
  m.lexicon(suite.lexicon_fingerprint.empty() ? suite_fingerprint(a.suite)
                                              : suite.lexicon_fingerprint);

  json report = m.document();
  report["notes"] = {
      "f1 is 0 when precision or recall is undefined; mcc is 0 when its denominator is 0",
      a.strict ? "negation variants without lexicon substitutions are excluded from consis_n"
               : "consistency denominators include every original sample",
  };
  report["results"] = json::array();
  for (const int h : horizons) {
    std::map<std::string, Label> golds;
    for (const auto& o : suite.originals) golds.emplace(o.transcript.id, o.gold.at(h));
    const auto cm = confusion(preds, golds, h);
    const auto consistency = consistency_scores(preds, suite, h, ConsistencyOptions{a.strict});

    ConfusionMatrix transformed;
    std::map<std::string, ConfusionMatrix> by_kind;
    for (const auto& v : suite.variants) {
      if (v.horizon && *v.horizon != h) continue;
      const auto predicted = preds.find(v.id(), h);
      if (!predicted) continue;  // consistency_scores already enforced coverage
      transformed.add(v.gold.at(h), *predicted);
      by_kind[std::string(code(v.kind))].add(v.gold.at(h), *predicted);
    }

    json entry;
    entry["horizon"] = h;
    entry["original"] = metrics_json(cm);
    entry["transformed"] = metrics_json(transformed);
    for (const auto& [kind, matrix] : by_kind) entry["by_kind"][kind] = metrics_json(matrix);
    entry["consistency"] = {
        {"consis_n", consistency.consis_n},         {"consis_s", consistency.consis_s},
        {"consis_a", consistency.consis_a},         {"consis_t", consistency.consis_t},
        {"consis", consistency.consis},             {"denominator_n", consistency.denominator_n},
        {"denominator_s", consistency.denominator_s}, {"denominator_a", consistency.denominator_a},
        {"denominator_t", consistency.denominator_t}, {"excluded_n", consistency.excluded_n},
    };
    report["results"].push_back(entry);
  }

  const auto text = report.dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
    return;
  }
  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_text(dir / "report.json", text);
  m.output(dir / "report.json");
  m.write(dir);
}

struct BacktestArgs {
  std::string suite, prices, preds, variant = "original", out;
  std::vector<int> horizons;
  std::vector<std::string> strategies;
  std::uint64_t seed = 0;
  double risk_free = 0.0;
};

void cmd_backtest(const BacktestArgs& a, const Common& common) {
  const fs::path suite_dir(a.suite);
  const auto samples = load_labels(suite_dir / "labels.csv");
  const auto prices = PriceSeries::load(a.prices);
  std::vector<int> horizons = a.horizons;
  if (horizons.empty()) {
    for (const auto& s : samples) {
      if (std::find(horizons.begin(), horizons.end(), s.horizon) == horizons.end()) {
        horizons.push_back(s.horizon);
      }
    }
    std::sort(horizons.begin(), horizons.end());
  }
  check_horizons(horizons);

  std::vector<std::string> strategies = a.strategies;
  if (strategies.empty()) {
    if (!a.preds.empty()) strategies.push_back("model");
    for (const auto kind : {BaselineKind::kBuyAll, BaselineKind::kShortSellAll,
                            BaselineKind::kRandom}) {
      strategies.emplace_back(to_string(kind));
    }
  }
  SimulateOptions sim;
  sim.threads = common.threads;
  if (a.variant != "original") {
    sim.variant = parse_variant_kind(a.variant);
    if (!sim.variant) {
      throw Error(ErrorKind::kInvalidArgument, "--variant must be original, N, S, A or T");
    }
  }
  std::optional<PredictionSet> preds;
  if (!a.preds.empty()) preds = PredictionSet::load(a.preds);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  Manifest m("backtest");
  m.config("horizons", horizons_json(horizons));
  m.config("strategies", strategies);
  m.config("variant", a.variant);
  m.config("seed", a.seed);
  m.config("r_f", a.risk_free);
  m.input("suite/labels.csv", suite_dir / "labels.csv");
  m.input("prices", a.prices);
  if (preds) m.input("predictions", a.preds);
  m.lexicon(suite_fingerprint(suite_dir));

  json results = json::array();
  for (const auto& strategy : strategies) {
    std::vector<TradeLedger> ledgers;
    for (const int h : horizons) {
      TradeLedger ledger;
      if (strategy == "model") {
        if (!preds) throw Error(ErrorKind::kInvalidArgument, "strategy 'model' needs --preds");
        ledger = simulate(*preds, prices, samples, h, sim);
      } else if (const auto kind = parse_baseline(strategy)) {
        ledger = baseline_ledger(BaselineStrategy{*kind, a.seed}, samples, prices, h);
      } else {
        throw Error(ErrorKind::kInvalidArgument, "unknown strategy '" + strategy + "'");
      }
      std::ostringstream csv_text;
      write_ledger(csv_text, ledger);
      const auto name = "ledger_" + strategy + "_h" + std::to_string(h) + ".csv";
      write_text(dir / name, csv_text.str());
      m.output(dir / name);
      results.push_back(result_json(evaluate(ledger, a.risk_free)));
      ledgers.push_back(std::move(ledger));
    }
    auto pooled = pool(ledgers);
    pooled.strategy = strategy;
    results.push_back(result_json(evaluate(pooled, a.risk_free)));
  }

  json doc = m.document();
  doc["results"] = results;
  doc["notes"] = {"sharpe ratio uses the sample standard deviation (n - 1)",
                  "pooled rows concatenate the per-horizon ledgers"};
  write_text(dir / "results.json", doc.dump(2) + "\n");
  m.output(dir / "results.json");
  m.write(dir);
}

struct ProbeArgs {
  std::string records, setting = "all", out;
};

void cmd_probe(const ProbeArgs& a, const Common&, std::ostream& out) {
  const auto records = load_probe_records(a.records);
  std::vector<ProbeSetting> settings;
  if (a.setting == "all") {
    settings = {ProbeSetting::kBoth, ProbeSetting::kPositiveOnly, ProbeSetting::kNegativeOnly};
  } else if (const auto s = parse_probe_setting(a.setting)) {
    settings = {*s};
  } else {
    throw Error(ErrorKind::kInvalidArgument,
                "--setting must be both, positive_only, negative_only or all");
  }

  Manifest m("probe-score");
  m.config("setting", a.setting);
  m.input("records", a.records);
  m.lexicon(AntonymLexicon::builtin().fingerprint());
  json doc = m.document();
  doc["notes"] = {
      "positive_only / negative_only score the pairs whose original-context choice has that "
      "polarity; this is an operational reading of the single-polarity settings"};
  doc["scores"] = json::object();
  for (const auto setting : settings) {
    try {
      const auto s = plm_consistency(records, setting);
      doc["scores"][std::string(to_string(setting))] = {
          {"score", s.score}, {"consistent", s.consistent}, {"pairs", s.pairs}, {"ties", s.ties}};
    } catch (const Error& e) {
      // A single-polarity subset can legitimately be empty when reporting all settings.
      if (e.kind() != ErrorKind::kEmptyCandidates || settings.size() == 1 ||
          setting == ProbeSetting::kBoth) {
        throw;
      }
      doc["scores"][std::string(to_string(setting))] = nullptr;
    }
  }
  const auto text = doc.dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
    return;
  }
  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_text(dir / "probe.json", text);
  m.output(dir / "probe.json");
  m.write(dir);
}

struct ReportArgs {
  std::vector<std::string> from;
  std::string out;
};

void cmd_report(const ReportArgs& a, const Common&, std::ostream& out) {
  json doc;
  doc["toolkit"] = {{"name", std::string(kToolName)}, {"version", std::string(kVersion)}};
  doc["command"] = "report";
  doc["artifacts"] = json::array();
  std::vector<std::string> fingerprints;
  for (const auto& entry : a.from) {
    const fs::path dir(entry);
    const auto manifest_path = dir / "manifest.json";
    if (!fs::exists(manifest_path)) {
      throw Error(ErrorKind::kInvalidArgument, entry + " has no manifest.json");
    }
    json artifact;
    try {
      artifact["manifest"] = json::parse(read_file(manifest_path));
      for (const auto* name : {"report.json", "results.json", "probe.json"}) {
        if (fs::exists(dir / name)) artifact["documents"][name] = json::parse(read_file(dir / name));
      }
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParse, entry + ": " + e.what());
    }
    artifact["name"] = dir.filename().empty() ? dir.parent_path().filename().string()
                                              : dir.filename().string();
    const auto fp = artifact["manifest"].value("lexicon_fingerprint", std::string());
    if (!fp.empty() && std::find(fingerprints.begin(), fingerprints.end(), fp) == fingerprints.end()) {
      fingerprints.push_back(fp);
    }
    doc["artifacts"].push_back(std::move(artifact));
  }
  doc["lexicon_fingerprints"] = fingerprints;
  const auto text = doc.dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    if (const auto parent = fs::path(a.out).parent_path(); !parent.empty()) {
      fs::create_directories(parent);
    }
    write_text(a.out, text);
  }
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finconsist: logical-consistency evaluation for financial forecasting models",
               std::string(kToolName)};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "TOML/INI file with option values; flags override it")
      ->envname(kConfigEnv);

  Common common;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", common.threads, "Worker threads (outputs do not depend on it)")
        ->check(CLI::Range(1u, 256u));
  };
  const auto& positive_horizons = CLI::PositiveNumber;

  LabelArgs label;
  auto* label_cmd = app.add_subcommand("label", "Derive n-day movement labels");
  label_cmd->add_option("--transcripts", label.transcripts, "Transcript JSONL")->required();
  label_cmd->add_option("--prices", label.prices, "Price CSV")->required();
  label_cmd->add_option("--horizons", label.horizons, "Horizons in days")->delimiter(',')->check(positive_horizons)->capture_default_str();
  label_cmd->add_option("--out", label.out, "Output directory")->required();
  add_common(label_cmd);

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "Chronological train/validation/test split");
  split_cmd->add_option("--transcripts", split.transcripts, "Transcript JSONL")->required();
  split_cmd->add_option("--split", split.ratios, "Train,validation,test ratios")->delimiter(',')->expected(3)->capture_default_str();
  split_cmd->add_option("--out", split.out, "Output directory")->required();
  add_common(split_cmd);

  SuiteArgs suite;
  auto* suite_cmd = app.add_subcommand("suite", "Build the consistency suite from the test split");
  suite_cmd->add_option("--transcripts", suite.transcripts, "Transcript JSONL")->required();
  suite_cmd->add_option("--prices", suite.prices, "Price CSV")->required();
  suite_cmd->add_option("--lexicon", suite.lexicon, "Antonym lexicon TSV (default: built in)");
  suite_cmd->add_option("--sectors", suite.sectors, "Sector map TSV (default: built in)");
  suite_cmd->add_option("--protect", suite.protect, "Whitespace-separated words that keep their capital");
  suite_cmd->add_option("--horizons", suite.horizons, "Horizons in days")->delimiter(',')->check(positive_horizons)->capture_default_str();
  suite_cmd->add_option("--split", suite.ratios, "Train,validation,test ratios")->delimiter(',')->expected(3)->capture_default_str();
  suite_cmd->add_option("--out", suite.out, "Output directory")->required();
  add_common(suite_cmd);

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Accuracy/F1/MCC and consistency scores");
  score_cmd->add_option("--suite", score.suite, "Suite directory")->required();
  score_cmd->add_option("--preds", score.preds, "Prediction CSV")->required();
  score_cmd->add_option("--horizon,--horizons", score.horizons, "Horizons to score (default: all in suite)")->delimiter(',')->check(positive_horizons);
  score_cmd->add_flag("--strict", score.strict, "Exclude negations without substitutions from Consis^N");
  score_cmd->add_option("--model", score.model, "Model name recorded in the report");
  score_cmd->add_option("--out", score.out, "Output directory (default: report to stdout)");
  add_common(score_cmd);

  BacktestArgs backtest;
  auto* backtest_cmd = app.add_subcommand("backtest", "Trading simulation and baselines");
  backtest_cmd->add_option("--suite", backtest.suite, "Suite directory")->required();
  backtest_cmd->add_option("--prices", backtest.prices, "Price CSV")->required();
  backtest_cmd->add_option("--preds", backtest.preds, "Prediction CSV");
  backtest_cmd->add_option("--horizons", backtest.horizons, "Horizons (default: all in suite)")->delimiter(',')->check(positive_horizons);
  backtest_cmd->add_option("--strategy", backtest.strategies, "model, buy-all, short-sell-all, random")->delimiter(',');
  backtest_cmd->add_option("--variant", backtest.variant, "Trade on predictions for: original, N, S, A, T")->capture_default_str();
  backtest_cmd->add_option("--seed", backtest.seed, "Seed for the random baseline")->capture_default_str();
  backtest_cmd->add_option("--rf", backtest.risk_free, "Risk-free return per trade")->capture_default_str();
  backtest_cmd->add_option("--out", backtest.out, "Output directory")->required();
  add_common(backtest_cmd);

  ProbeArgs probe;
  auto* probe_cmd = app.add_subcommand("probe-score", "Score masked-LM probe records");
  probe_cmd->add_option("--records", probe.records, "Probe record CSV")->required();
  probe_cmd->add_option("--setting", probe.setting, "both, positive_only, negative_only or all")->capture_default_str();
  probe_cmd->add_option("--out", probe.out, "Output directory (default: stdout)");
  add_common(probe_cmd);

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Merge artifact directories into one document");
  report_cmd->add_option("--from", report.from, "Artifact directories")->required();
  report_cmd->add_option("--out", report.out, "Output file (default: stdout)");
  add_common(report_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    const auto* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failing->help();
    return kExitUsage;
  }

  try {
    if (label_cmd->parsed()) cmd_label(label, common);
    if (split_cmd->parsed()) cmd_split(split, common, err);
    if (suite_cmd->parsed()) cmd_suite(suite, common, err);
    if (score_cmd->parsed()) cmd_score(score, common, out);
    if (backtest_cmd->parsed()) cmd_backtest(backtest, common);
    if (probe_cmd->parsed()) cmd_probe(probe, common, out);
    if (report_cmd->parsed()) cmd_report(report, common, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace finconsist::cli

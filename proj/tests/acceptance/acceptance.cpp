// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion carries its own tolerance and time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "finconsist/backtest.hpp"
#include "finconsist/cli.hpp"
#include "finconsist/corpus.hpp"
#include "finconsist/csv.hpp"
#include "finconsist/io.hpp"
#include "finconsist/metrics.hpp"
#include "finconsist/transform.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using namespace finconsist;

namespace {

const fs::path kFixtures = FINCONSIST_FIXTURE_DIR;

// Collects the first few failure details of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) details_ += (details_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    if (ok()) return std::to_string(checks_) + " checks";
    return std::to_string(failures_) + "/" + std::to_string(checks_) + " failed: " + details_;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string details_;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// A suite of `n` parents at horizon 30 whose predictions realise the given
// component fractions exactly (k/n agreements per kind).
double consis_from_counts(std::size_t n, std::size_t neg, std::size_t sym, std::size_t add,
                          std::size_t tra) {
  ConsistencySuite suite;
  suite.horizons = {30};
  PredictionSet preds;
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = "S" + std::to_string(i);
    Transcript t{id, "AAA", "Energy", Date{}, {"x"}};
    suite.originals.push_back({t, {{30, Label::kPositive}}});
    preds.add(id, 30, Label::kPositive);
    for (const auto kind : kVariantKinds) {
      VariantSample v;
      v.parent_id = id;
      v.kind = kind;
      if (kind == VariantKind::kAdditive) v.horizon = 30;
      v.transcript = t;
      v.transcript.id = variant_id(id, kind, v.horizon);
      v.expected_relation = relation_for(kind);
      v.gold = {{30, kind == VariantKind::kNegation ? Label::kNegative : Label::kPositive}};
      suite.variants.push_back(v);
      bool agree = false;
      switch (kind) {
        case VariantKind::kNegation: agree = i >= neg; break;  // first `neg` disagree
        case VariantKind::kSymmetric: agree = i < sym; break;
        case VariantKind::kAdditive: agree = i < add; break;
        case VariantKind::kTransitive: agree = i < tra; break;
      }
      preds.add(v.id(), 30, agree ? Label::kPositive : Label::kNegative);
    }
  }
  suite.reindex();
  return consistency_scores(preds, suite, 30).consis;
}

std::size_t thousandths(const std::string& field) {
  double v = 0.0;
  if (!csv::parse_double(field, v)) throw std::runtime_error("bad fixture value " + field);
  return static_cast<std::size_t>(std::llround(v * 1000.0));
}

std::string consistency_mean_arithmetic(Check& c) {
  static constexpr std::array<std::string_view, 7> kHeader{"model", "period", "avg", "add",
                                                           "neg",   "sym",    "tra"};
  const auto rows = csv::read(kFixtures / "consistency_components.csv", kHeader);
  c.expect(rows.size() == 16, "expected 16 rows, got " + std::to_string(rows.size()));
  for (const auto& row : rows) {
    const auto& f = row.fields;
    double avg = 0, add = 0, neg = 0, sym = 0, tra = 0;
    csv::parse_double(f[2], avg);
    csv::parse_double(f[3], add);
    csv::parse_double(f[4], neg);
    csv::parse_double(f[5], sym);
    csv::parse_double(f[6], tra);
    const auto label = f[0] + "/" + f[1];
    const double mean = consistency_mean(neg, sym, add, tra);
    c.expect(std::abs(mean - avg) <= 1e-3, label + " mean " + fmt(mean) + " vs " + f[2]);
    const double scored =
        consis_from_counts(1000, thousandths(f[4]), thousandths(f[5]), thousandths(f[3]),
                           thousandths(f[6]));
    c.expect(std::abs(scored - avg) <= 1e-3, label + " scored " + fmt(scored) + " vs " + f[2]);
  }
  return "16 rows, tol 1e-3";
}

std::string metric_oracle(Check& c) {
  testing::Rng rng(20230601);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(64);
    const double bias = rng.unit();
    const double skill = rng.unit();
    std::vector<std::pair<Label, Label>> pairs;
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < n; ++i) {
      const Label gold = rng.unit() < bias ? Label::kPositive : Label::kNegative;
      const Label pred = rng.unit() < skill ? gold : (rng.coin() ? Label::kPositive : Label::kNegative);
      pairs.emplace_back(gold, pred);
      cm.add(gold, pred);
    }
    const auto got = classification_metrics(cm);
    const auto want = testing::oracle_metrics(pairs);
    const double err = std::max({std::abs(got.accuracy - want.accuracy),
                                 std::abs(got.f1 - want.f1), std::abs(got.mcc - want.mcc)});
    worst = std::max(worst, err);
    c.expect(err <= 1e-12, "trial " + std::to_string(trial) + " err " + fmt(err));
  }
  ConfusionMatrix hand;
  hand.tp = 3;
  hand.tn = 2;
  hand.fp = 1;
  hand.fn = 2;
  const double mcc = classification_metrics(hand).mcc;
  c.expect(std::abs(mcc - 4.0 / std::sqrt(240.0)) <= 1e-9, "hand mcc " + fmt(mcc));
  return "1000 sets, max err " + fmt(worst) + ", tol 1e-12";
}

std::string transformation_properties(Check& c) {
  const auto& lex = AntonymLexicon::builtin();
  const auto sentences = testing::synthetic_sentences(200, 314);
  std::size_t negated = 0, rotated = 0;
  for (const auto& s : sentences) {
    const auto once = negate_sentence(s, lex);
    negated += once != s;
    c.expect(negate_sentence(once, lex) == s, "involution: " + s);
    const auto sym = symmetrize(s);
    rotated += sym != s;
    c.expect(testing::segment_multiset(sym) == testing::segment_multiset(s), "segments: " + s);
    c.expect(testing::only_pronouns_changed(s, "NextEra Energy, Inc."), "transitive: " + s);
  }

  const auto corpus = testing::synthetic_corpus(200, 314);
  std::vector<LabeledSample> labels;
  for (const auto& t : corpus.transcripts) {
    for (const int h : kDefaultHorizons) labels.push_back(label_transcript(corpus.prices, t, h));
  }
  const auto split = chronological_split(corpus.transcripts, SplitSpec{});
  const auto suite =
      build_suite(split.test, labels, kDefaultHorizons, lex, SectorMap::builtin());
  for (const int h : kDefaultHorizons) {
    std::size_t at_h = 0;
    for (const auto& v : suite.variants) at_h += !v.horizon || *v.horizon == h;
    c.expect(at_h == 4 * split.test.size(),
             "h" + std::to_string(h) + ": " + std::to_string(at_h) + " variants for " +
                 std::to_string(split.test.size()) + " parents");
  }
  return "200 sentences (" + std::to_string(negated) + " negated, " + std::to_string(rotated) +
         " rotated), suite of " + std::to_string(split.test.size()) + " parents";
}

std::string backtest_antisymmetry(Check& c) {
  double worst = 0.0;
  for (const int h : kDefaultHorizons) {
    const auto market = testing::synthetic_market(100, h, 1000 + static_cast<std::uint64_t>(h));
    const auto buy = baseline_ledger({BaselineKind::kBuyAll, 0}, market.samples, market.prices, h);
    const auto shorted =
        baseline_ledger({BaselineKind::kShortSellAll, 0}, market.samples, market.prices, h);
    c.expect(profit_ratio(shorted) == -profit_ratio(buy),
             "h" + std::to_string(h) + " profit " + fmt(profit_ratio(shorted)) + " vs " +
                 fmt(profit_ratio(buy)));
    const double gap = std::abs(sharpe_ratio(shorted, 0.0) + sharpe_ratio(buy, 0.0));
    worst = std::max(worst, gap);
    c.expect(gap <= 1e-9, "h" + std::to_string(h) + " sharpe gap " + fmt(gap));
  }
  return "100 paths x 4 horizons, profit exact, sharpe gap " + fmt(worst) + " (tol 1e-9)";
}

std::string flip_equivalence(Check& c) {
  testing::Rng rng(77);
  double worst = 0.0;
  for (const int h : kDefaultHorizons) {
    const auto market = testing::synthetic_market(100, h, 2000 + static_cast<std::uint64_t>(h));
    PredictionSet preds, flipped;
    for (const auto& s : market.samples) {
      const Label p = rng.coin() ? Label::kPositive : Label::kNegative;
      preds.add(s.transcript_id, h, p);
      flipped.add(s.transcript_id, h, flip(p));
    }
    const auto a = simulate(preds, market.prices, market.samples, h);
    const auto b = simulate(flipped, market.prices, market.samples, h);
    for (std::size_t i = 0; i < a.trades.size(); ++i) {
      const double gap = std::abs(a.trades[i].unit_return + b.trades[i].unit_return);
      worst = std::max(worst, gap);
      c.expect(gap <= 1e-12 && a.trades[i].side != b.trades[i].side,
               a.trades[i].sample_id + " gap " + fmt(gap));
    }
  }
  return "400 trades, max gap " + fmt(worst) + " (tol 1e-12)";
}

int cli(const std::vector<std::string>& args, std::string& err) {
  std::ostringstream out, errs;
  const int code = cli::run(args, out, errs);
  err = errs.str();
  return code;
}

// Runs suite, score and backtest on the fixture corpus into `root`.
bool pipeline(const fs::path& root, unsigned threads, Check& c) {
  const auto corpus = kFixtures / "corpus";
  const auto t = std::to_string(threads);
  std::string err;
  const auto suite = root / "suite";
  if (cli({"suite", "--transcripts", (corpus / "transcripts.jsonl").string(), "--prices",
           (corpus / "prices.csv").string(), "--lexicon",
           (kFixtures / ".." / ".." / "data" / "default_lexicon.tsv").string(), "--sectors",
           (kFixtures / ".." / ".." / "data" / "default_sectors.tsv").string(), "--threads", t,
           "--out", suite.string()},
          err) != 0) {
    c.expect(false, "suite: " + err);
    return false;
  }
  const auto preds = root / "preds.csv";
  testing::write_predictions(preds, testing::synthetic_predictions(load_suite(suite), 99));
  if (cli({"score", "--suite", suite.string(), "--preds", preds.string(), "--threads", t,
           "--out", (root / "score").string()},
          err) != 0) {
    c.expect(false, "score: " + err);
    return false;
  }
  if (cli({"backtest", "--suite", suite.string(), "--prices", (corpus / "prices.csv").string(),
           "--preds", preds.string(), "--strategy", "model,buy-all,short-sell-all,random",
           "--seed", "7", "--threads", t, "--out", (root / "backtest").string()},
          err) != 0) {
    c.expect(false, "backtest: " + err);
    return false;
  }
  return true;
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = read_file(e.path());
  }
  return files;
}

std::string end_to_end_determinism(Check& c) {
  testing::TempDir dir("acceptance");
  const auto a = dir.path() / "run1";
  const auto b = dir.path() / "run2";
  const auto d = dir.path() / "run4";
  if (!pipeline(a, 1, c) || !pipeline(b, 1, c) || !pipeline(d, 4, c)) return "pipeline failed";
  const auto sa = snapshot(a);
  const auto sb = snapshot(b);
  const auto sd = snapshot(d);
  c.expect(sa.size() >= 10, "only " + std::to_string(sa.size()) + " artifacts");
  for (const auto& [other, label] : {std::pair{&sb, "rerun"}, std::pair{&sd, "4 threads"}}) {
    c.expect(other->size() == sa.size(), std::string(label) + ": artifact sets differ");
    for (const auto& [name, bytes] : sa) {
      const auto it = other->find(name);
      c.expect(it != other->end() && it->second == bytes, std::string(label) + ": " + name);
    }
  }
  return std::to_string(sa.size()) + " artifacts, 2 runs + 4 threads";
}

std::string consistency_flip_invariance(Check& c) {
  const auto corpus = testing::synthetic_corpus(100, 55);
  std::vector<LabeledSample> labels;
  for (const auto& t : corpus.transcripts) {
    for (const int h : kDefaultHorizons) labels.push_back(label_transcript(corpus.prices, t, h));
  }
  const auto suite = build_suite(corpus.transcripts, labels, kDefaultHorizons,
                                 AntonymLexicon::builtin(), SectorMap::builtin());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto preds = testing::synthetic_predictions(suite, seed);
    PredictionSet flipped;
    for (const auto& [key, label] : preds.entries()) flipped.add(key.first, key.second, flip(label));
    for (const int h : kDefaultHorizons) {
      const auto x = consistency_scores(preds, suite, h);
      const auto y = consistency_scores(flipped, suite, h);
      c.expect(x.consis_n == y.consis_n && x.consis_s == y.consis_s &&
                   x.consis_a == y.consis_a && x.consis_t == y.consis_t,
               "seed " + std::to_string(seed) + " h" + std::to_string(h));
    }
  }
  return "100 prediction sets x 4 horizons";
}

std::string split_correctness(Check& c) {
  const auto corpus = testing::synthetic_corpus(576, 576);
  const auto split = chronological_split(corpus.transcripts, SplitSpec{});
  c.expect(split.train.size() == 403 && split.validation.size() == 57 && split.test.size() == 116,
           "sizes (" + std::to_string(split.train.size()) + "," +
               std::to_string(split.validation.size()) + "," + std::to_string(split.test.size()) +
               ")");
  const auto before = [](const Transcript& x, const Transcript& y) {
    return std::chrono::sys_days{x.call_date} <= std::chrono::sys_days{y.call_date};
  };
  std::size_t pairs = 0;
  bool ok = true;
  for (const auto& r : split.train) {
    for (const auto& v : split.validation) ok &= before(r, v), ++pairs;
    for (const auto& t : split.test) ok &= before(r, t), ++pairs;
  }
  for (const auto& v : split.validation) {
    for (const auto& t : split.test) ok &= before(v, t), ++pairs;
  }
  c.expect(ok, "a later sample precedes an earlier partition");

  std::vector<LabeledSample> labels;
  for (const auto& t : corpus.transcripts) labels.push_back(label_transcript(corpus.prices, t, 30));
  const auto by_label = chronological_split(labels, SplitSpec{});
  c.expect(by_label.train.size() == 403 && by_label.validation.size() == 57 &&
               by_label.test.size() == 116,
           "labeled-sample split sizes");
  return "(403, 57, 116), " + std::to_string(pairs) + " ordered pairs";
}

struct Criterion {
  std::string name;
  double budget_seconds;  // 0 for no budget
  std::function<std::string(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"consistency-mean-arithmetic", 1.0, consistency_mean_arithmetic},
      {"metric-oracle-equivalence", 5.0, metric_oracle},
      {"transformation-properties", 5.0, transformation_properties},
      {"backtest-antisymmetry", 1.0, backtest_antisymmetry},
      {"flip-equivalence", 0.0, flip_equivalence},
      {"end-to-end-determinism", 0.0, end_to_end_determinism},
      {"consistency-flip-invariance", 0.0, consistency_flip_invariance},
      {"split-correctness", 0.0, split_correctness},
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    Check check;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    try {
      detail = criterion.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.budget_seconds > 0 && seconds >= criterion.budget_seconds) {
      check.expect(false, "over budget " + fmt(criterion.budget_seconds) + " s");
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", seconds);
    std::cout << (check.ok() ? "PASS " : "FAIL ") << criterion.name << "  [" << timing << "]  "
              << detail << "  (" << check.summary() << ")\n";
    failed += !check.ok();
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << '\n';
  return failed == 0 ? 0 : 1;
}

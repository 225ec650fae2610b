// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "finconsist/error.hpp"
#include "finconsist/io.hpp"
#include "finconsist/transform.hpp"
#include "synthetic.hpp"

namespace finconsist {
namespace {

constexpr std::string_view kCostSentence =
    "the cost of raw materials has been greatly decreased, with a change of 30% compared with "
    "last year";

Date d(int y, unsigned m, unsigned day) {
  return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{day}};
}

LabeledSample sample(std::string id, Date date, Label label, int horizon = 30) {
  LabeledSample s;
  s.transcript_id = std::move(id);
  s.ticker = "AAA";
  s.call_date = date;
  s.horizon = horizon;
  s.label = label;
  return s;
}

}  // namespace

TEST_CASE("negation flips lexicon words and leaves numbers alone") {
  const auto& lex = AntonymLexicon::builtin();
  std::size_t n = 0;
  const auto out = negate_sentence(kCostSentence, lex, &n);
  CHECK(out ==
        "the cost of raw materials has been greatly increased, with a change of 30% compared "
        "with last year");
  CHECK(n == 1);
  CHECK(out.find("30%") != std::string::npos);
}

TEST_CASE("negation matches bigrams before single tokens and keeps casing") {
  const auto& lex = AntonymLexicon::builtin();
  CHECK(negate_sentence("Sales were more than planned.", lex) == "Sales were less than planned.");
  CHECK(negate_sentence("Results came in ABOVE EXPECTATIONS", lex) ==
        "Results came in BELOW EXPECTATIONS");
  CHECK(negate_sentence("Increased demand, higher margins.", lex) ==
        "Decreased demand, lower margins.");
  CHECK(negate_sentence("Margins went up-to-date", lex) == "Margins went up-to-date");
  CHECK(negate_sentence("Revenue grew strongly", lex) == "Revenue grew strongly");
  CHECK(negate_sentence("InCreased", lex) == "InCreased");
  std::size_t n = 7;
  CHECK(negate_sentence("", lex, &n).empty());
  CHECK(n == 0);
}

TEST_CASE("negation is an involution on a synthetic corpus") {
  const auto& lex = AntonymLexicon::builtin();
  std::size_t changed = 0;
  for (const auto& s : testing::synthetic_sentences(2000, 99)) {
    const auto once = negate_sentence(s, lex);
    if (once != s) ++changed;
    CHECK(negate_sentence(once, lex) == s);
  }
  CHECK(changed > 500);
}

TEST_CASE("symmetrize examples") {
  CHECK(symmetrize(kCostSentence) ==
        "with a change of 30% compared with last year, the cost of raw materials has been "
        "greatly decreased");
  CHECK(symmetrize("Revenue grew strongly") == "Revenue grew strongly");
  CHECK(symmetrize("A, B, C") == "C, A, B");
  CHECK(symmetrize("Revenue rose, driven by services.") == "Driven by services, revenue rose.");
  CHECK(symmetrize("Revenue rose, said Tim.", {"Revenue"}) == "Said Tim, Revenue rose.");
  CHECK(symmetrize("Sales hit 1,200 units (up 4%, or 50) today") ==
        "Sales hit 1,200 units (up 4%, or 50) today");
  CHECK(symmetrize(R"(He said "strong, steady", then left)") ==
        R"(Then left, he said "strong, steady")");
  CHECK(symmetrize("Trailing comma,") == "Trailing comma,");
}

TEST_CASE("symmetrize preserves segment multisets") {
  std::size_t rotated = 0;
  for (const auto& s : testing::synthetic_sentences(2000, 17)) {
    const auto out = symmetrize(s);
    if (out != s) ++rotated;
    CHECK_MESSAGE(testing::segment_multiset(out) == testing::segment_multiset(s), s);
  }
  CHECK(rotated > 300);
}

TEST_CASE("transitivize examples") {
  const auto& map = SectorMap::builtin();
  const std::vector<std::string> in{
      "we believe that our products can bring convenience to everyone's life"};
  CHECK(transitivize(in, "Information Technology", map)[0] ==
        "Apple Inc. believe that Apple Inc.'s products can bring convenience to everyone's "
        "life");
  std::size_t n = 0;
  CHECK(transitivize_sentence("We expanded. Power supply improved.", "Apple Inc.", &n) ==
        "Apple Inc. expanded. Power supply improved.");
  CHECK(n == 1);
  CHECK(transitivize_sentence("Wealth, ours and weather", "X", &n) == "Wealth, ours and weather");
  CHECK(n == 0);
  CHECK(transitivize_sentence("OUR team; we're", "X", &n) == "X's team; we're");
  CHECK(n == 1);
  try {
    transitivize(in, "Cryptocurrency", map);
    FAIL("expected unknown-sector");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnknownSector);
  }
}

TEST_CASE("transitivize changes only pronoun tokens") {
  for (const auto& s : testing::synthetic_sentences(1000, 4)) {
    CHECK_MESSAGE(testing::only_pronouns_changed(s, "Exxon Mobil Corporation"), s);
  }
}

TEST_CASE("additive partner selection") {
  const auto self = sample("ZZZ_1", d(2017, 3, 10), Label::kPositive);
  SUBCASE("closest same-label candidate") {
    const std::vector<LabeledSample> pool{
        self, sample("NEAR_9", d(2017, 3, 19), Label::kPositive),
        sample("NEAR_3", d(2017, 3, 7), Label::kPositive),
        sample("NEG_1", d(2017, 3, 10), Label::kNegative),
        sample("OTHER_H", d(2017, 3, 10), Label::kPositive, 7)};
    const auto p = additive_partner(self, pool);
    CHECK(p.partner_id == "NEAR_3");
    CHECK_FALSE(p.self_pair);
  }
  SUBCASE("ties go to the smaller id") {
    const std::vector<LabeledSample> pool{
        self, sample("BBB_1", d(2017, 3, 15), Label::kPositive),
        sample("AAA_1", d(2017, 3, 5), Label::kPositive)};
    CHECK(additive_partner(self, pool).partner_id == "AAA_1");
  }
  SUBCASE("falls back to a self pair") {
    const std::vector<LabeledSample> pool{self, sample("N_1", d(2017, 3, 9), Label::kNegative)};
    const auto p = additive_partner(self, pool);
    CHECK(p.partner_id == "ZZZ_1");
    CHECK(p.self_pair);
  }
}

TEST_CASE("variant ids and kinds") {
  CHECK(variant_id("AAPL_2017Q1", VariantKind::kNegation) == "AAPL_2017Q1#N");
  CHECK(variant_id("AAPL_2017Q1", VariantKind::kAdditive, 30) == "AAPL_2017Q1#A#h30");
  for (const auto k : kVariantKinds) CHECK(parse_variant_kind(code(k)) == k);
  CHECK_FALSE(parse_variant_kind("X").has_value());
  CHECK(relation_for(VariantKind::kNegation) == Relation::kFlipped);
  CHECK(relation_for(VariantKind::kTransitive) == Relation::kSame);
}

namespace {

struct Fixture {
  testing::SyntheticCorpus corpus;
  std::vector<LabeledSample> labels;
};

Fixture labeled(std::size_t n, std::uint64_t seed) {
  Fixture f{testing::synthetic_corpus(n, seed), {}};
  for (const auto& t : f.corpus.transcripts) {
    for (const int h : kDefaultHorizons) f.labels.push_back(label_transcript(f.corpus.prices, t, h));
  }
  return f;
}

}  // namespace

TEST_CASE("build_suite cardinality, ids and gold coupling") {
  const auto f = labeled(113, 6);
  const auto suite = build_suite(f.corpus.transcripts, f.labels, kDefaultHorizons,
                                 AntonymLexicon::builtin(), SectorMap::builtin());
  const auto n = f.corpus.transcripts.size();
  CHECK(suite.originals.size() == n);
  CHECK(suite.variants.size() == n * (3 + kDefaultHorizons.size()));
  for (const auto kind : kVariantKinds) {
    const auto count = std::count_if(suite.variants.begin(), suite.variants.end(),
                                     [&](const VariantSample& v) { return v.kind == kind; });
    const std::size_t expected = kind == VariantKind::kAdditive ? n * kDefaultHorizons.size() : n;
    CHECK(static_cast<std::size_t>(count) == expected);
  }
  std::map<std::pair<std::string, int>, Label> gold;
  for (const auto& s : f.labels) gold[{s.transcript_id, s.horizon}] = s.label;
  for (const auto& o : suite.originals) {
    for (const int h : kDefaultHorizons) {
      const auto parent = o.gold.at(h);
      CHECK(parent == gold.at({o.transcript.id, h}));
      const auto* neg = suite.find(o.transcript.id, VariantKind::kNegation);
      const auto* sym = suite.find(o.transcript.id, VariantKind::kSymmetric);
      const auto* tra = suite.find(o.transcript.id, VariantKind::kTransitive);
      const auto* add = suite.find(o.transcript.id, VariantKind::kAdditive, h);
      REQUIRE(neg != nullptr);
      REQUIRE(sym != nullptr);
      REQUIRE(tra != nullptr);
      REQUIRE(add != nullptr);
      CHECK(neg->id() == o.transcript.id + "#N");
      CHECK(add->id() == o.transcript.id + "#A#h" + std::to_string(h));
      CHECK(neg->gold.at(h) == flip(parent));
      CHECK(neg->expected_relation == Relation::kFlipped);
      CHECK(sym->gold.at(h) == parent);
      CHECK(tra->gold.at(h) == parent);
      CHECK(add->gold.at(h) == parent);
      CHECK(add->gold.size() == 1);
      CHECK(gold.at({add->partner_id, h}) == parent);
      CHECK(add->self_pair == (add->partner_id == o.transcript.id));
      CHECK(neg->zero_substitution == (neg->substitutions == 0));
      CHECK(add->transcript.sentences.size() > o.transcript.sentences.size());
    }
  }
}

TEST_CASE("build_suite edge cases") {
  const auto f = labeled(5, 9);
  const auto& lex = AntonymLexicon::builtin();
  const auto& map = SectorMap::builtin();
  CHECK(build_suite({}, f.labels, kDefaultHorizons, lex, map).variants.empty());

  const std::span<const Transcript> one(f.corpus.transcripts.data(), 1);
  const auto single = build_suite(one, f.labels, kDefaultHorizons, lex, map);
  CHECK(single.variants.size() == 7);
  for (const int h : kDefaultHorizons) {
    const auto* add = single.find(one[0].id, VariantKind::kAdditive, h);
    REQUIRE(add != nullptr);
    CHECK(add->self_pair);
    CHECK(add->transcript.sentences.size() == 2 * one[0].sentences.size());
  }

  auto bad = f.corpus.transcripts;
  bad[2].sector = "Cryptocurrency";
  CHECK_THROWS_AS(build_suite(bad, f.labels, kDefaultHorizons, lex, map), Error);

  const std::vector<int> extra{3, 60};
  CHECK_THROWS_AS(build_suite(f.corpus.transcripts, f.labels, extra, lex, map), Error);
  const std::vector<int> dup{3, 3};
  CHECK_THROWS_AS(build_suite(f.corpus.transcripts, f.labels, dup, lex, map), Error);
}

TEST_CASE("build_suite is independent of thread count") {
  const auto f = labeled(80, 12);
  const auto& lex = AntonymLexicon::builtin();
  const auto& map = SectorMap::builtin();
  const auto a = build_suite(f.corpus.transcripts, f.labels, kDefaultHorizons, lex, map, {1, {}});
  const auto b = build_suite(f.corpus.transcripts, f.labels, kDefaultHorizons, lex, map, {4, {}});
  REQUIRE(a.variants.size() == b.variants.size());
  for (std::size_t i = 0; i < a.variants.size(); ++i) {
    CHECK(a.variants[i].id() == b.variants[i].id());
    CHECK(a.variants[i].transcript.sentences == b.variants[i].transcript.sentences);
  }
}

TEST_CASE("suite files round trip") {
  const auto f = labeled(30, 13);
  const auto suite = build_suite(f.corpus.transcripts, f.labels, kDefaultHorizons,
                                 AntonymLexicon::builtin(), SectorMap::builtin());
  testing::TempDir dir("suite");
  write_suite(dir.path(), suite);
  const auto back = load_suite(dir.path());
  CHECK(back.horizons == suite.horizons);
  REQUIRE(back.originals.size() == suite.originals.size());
  REQUIRE(back.variants.size() == suite.variants.size());
  for (std::size_t i = 0; i < suite.variants.size(); ++i) {
    const auto& x = suite.variants[i];
    const auto& y = back.variants[i];
    CHECK(x.id() == y.id());
    CHECK(x.parent_id == y.parent_id);
    CHECK(x.kind == y.kind);
    CHECK(x.horizon == y.horizon);
    CHECK(x.gold == y.gold);
    CHECK(x.partner_id == y.partner_id);
    CHECK(x.self_pair == y.self_pair);
    CHECK(x.zero_substitution == y.zero_substitution);
    CHECK(x.transcript.sentences == y.transcript.sentences);
  }
  testing::TempDir again("suite2");
  write_suite(again.path(), back);
  CHECK(read_file(dir.path() / "variants.jsonl") == read_file(again.path() / "variants.jsonl"));
  CHECK(read_file(dir.path() / "originals.jsonl") == read_file(again.path() / "originals.jsonl"));
}

TEST_CASE("lexicon parsing and validation") {
  const auto lex = AntonymLexicon::parse("# header\nrise\tfall\n\nmore than\tless than  # tail\n",
                                         "lex.tsv");
  CHECK(lex.rules().size() == 4);
  REQUIRE(lex.find("fall") != nullptr);
  CHECK((*lex.find("fall"))[0] == "rise");
  REQUIRE(lex.find("less than") != nullptr);
  CHECK((*lex.find("less than"))[1] == "than");

  const auto kind = [](std::string_view text) {
    try {
      AntonymLexicon::parse(text, "lex.tsv");
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kIo;
  };
  CHECK(kind("gain\tloss\nprofit\tloss\n") == ErrorKind::kLexiconConflict);
  CHECK(kind("up\tup\n") == ErrorKind::kLexiconConflict);
  CHECK(kind("more than\tfewer\n") == ErrorKind::kLexiconConflict);
  CHECK(kind("just one column\n") == ErrorKind::kParse);
  CHECK(kind("up\tdown\nup\tdown\n") != ErrorKind::kLexiconConflict);

  const auto a = AntonymLexicon::parse("rise\tfall\n", "a");
  const auto b = AntonymLexicon::parse("# comment\n  rise\tfall\n", "b");
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != lex.fingerprint());
  CHECK(AntonymLexicon::parse(a.canonical_text(), "c").fingerprint() == a.fingerprint());
}

TEST_CASE("every lexicon rule has its reverse") {
  const auto& lex = AntonymLexicon::builtin();
  for (const auto& rule : lex.rules()) {
    std::string replacement;
    for (const auto& t : rule.replacement) replacement += (replacement.empty() ? "" : " ") + t;
    const auto* back = lex.find(replacement);
    REQUIRE(back != nullptr);
    CHECK(*back == rule.pattern);
  }
}

TEST_CASE("shipped data files match the built-in defaults") {
  const std::filesystem::path data = std::filesystem::path(FINCONSIST_SOURCE_DIR) / "data";
  CHECK(AntonymLexicon::load(data / "default_lexicon.tsv").fingerprint() ==
        AntonymLexicon::builtin().fingerprint());
  CHECK(SectorMap::load(data / "default_sectors.tsv").entries() == SectorMap::builtin().entries());
}

}  // namespace finconsist

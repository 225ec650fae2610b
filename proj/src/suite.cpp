// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "finconsist/error.hpp"
#include "finconsist/io.hpp"
#include "finconsist/parallel.hpp"
#include "finconsist/transform.hpp"

namespace finconsist {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kGoldPrefix = "gold_label_h";



ordered_json base_record(const Transcript& t) {
  ordered_json record;
  record["id"] = t.id;
  record["ticker"] = t.ticker;
  record["sector"] = t.sector;
  record["call_date"] = to_iso(t.call_date);
  record["sentences"] = t.sentences;
  return record;
}

void add_gold(ordered_json& record, const std::map<int, Label>& gold) {
  for (const auto& [horizon, label] : gold) {
    record[std::string(kGoldPrefix) + std::to_string(horizon)] = std::string(to_string(label));
  }
}

std::map<int, Label> read_gold(const json& record, std::string_view source, std::size_t row) {
  std::map<int, Label> gold;
  for (const auto& [key, value] : record.items()) {
    if (key.rfind(kGoldPrefix, 0) != 0) continue;
    int horizon = 0;
    try {
      horizon = std::stoi(key.substr(kGoldPrefix.size()));
    } catch (const std::exception&) {
      horizon = 0;
    }
    const auto label = value.is_string() ? parse_label(value.get<std::string>()) : std::nullopt;
    if (horizon <= 0 || !label) {
      throw Error(ErrorKind::kParse, std::string(source) + ": record " + std::to_string(row) +
                                         ": invalid field '" + key + "'");
    }
    gold.emplace(horizon, *label);
  }
  return gold;
}

// Non-blank lines parsed as JSON, in file order.
std::vector<json> json_lines(std::string_view text) {
  std::vector<json> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                     : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    out.push_back(json::parse(line));
  }
  return out;
}

}  // namespace

void ConsistencySuite::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < variants.size(); ++i) index_.emplace(variants[i].id(), i);
}

const VariantSample* ConsistencySuite::find(std::string_view parent_id, VariantKind kind,
                                            std::optional<int> horizon) const {
  if (kind != VariantKind::kAdditive) horizon.reset();
  const auto it = index_.find(variant_id(parent_id, kind, horizon));
  return it == index_.end() ? nullptr : &variants[it->second];
}

ConsistencySuite build_suite(std::span<const Transcript> test_set,
                             std::span<const LabeledSample> labels,
                             std::span<const int> horizons, const AntonymLexicon& lexicon,
                             const SectorMap& sector_map, const SuiteOptions& options) {
  ConsistencySuite suite;
  suite.lexicon_fingerprint = lexicon.fingerprint();
  suite.horizons.assign(horizons.begin(), horizons.end());
  {
    auto sorted = suite.horizons;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        (!sorted.empty() && sorted.front() <= 0)) {
      throw Error(ErrorKind::kInvalidArgument, "horizons must be distinct positive integers");
    }
  }
  if (test_set.empty()) return suite;
  if (suite.horizons.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "at least one horizon is required");
  }

  std::unordered_map<std::string, const Transcript*> by_id;
  for (const auto& t : test_set) {
    if (!by_id.emplace(t.id, &t).second) {
      throw Error(ErrorKind::kDuplicateId, "duplicate transcript id '" + t.id + "' in test set");
    }
    (void)sector_map.company_for(t.sector);  // throws kUnknownSector
  }

  // Label lookup and the per-horizon additive pool, restricted to the test set.
  std::map<std::pair<std::string, int>, const LabeledSample*> label_of;
  std::map<int, std::vector<LabeledSample>> pool;
  for (const auto& s : labels) {
    if (!by_id.count(s.transcript_id)) continue;
    if (std::find(horizons.begin(), horizons.end(), s.horizon) == horizons.end()) continue;
    if (label_of.emplace(std::make_pair(s.transcript_id, s.horizon), &s).second) {
      pool[s.horizon].push_back(s);
    }
  }
  std::vector<std::string> missing;
  for (const auto& t : test_set) {
    for (const int h : horizons) {
      if (!label_of.count({t.id, h})) missing.push_back(t.id + "@h" + std::to_string(h));
    }
  }
  if (!missing.empty()) {
    std::string msg = "missing labels for " + std::to_string(missing.size()) + " sample(s):";
    for (std::size_t i = 0; i < std::min<std::size_t>(10, missing.size()); ++i) {
      msg += " " + missing[i];
    }
    throw Error(ErrorKind::kInvalidArgument, msg);
  }

  suite.originals.resize(test_set.size());
  std::vector<std::vector<VariantSample>> produced(test_set.size());
  parallel_for(test_set.size(), options.threads, [&](std::size_t i) {
    const auto& parent = test_set[i];
    std::map<int, Label> gold;
    for (const int h : horizons) gold.emplace(h, label_of.at({parent.id, h})->label);
    suite.originals[i] = SuiteOriginal{parent, gold};

    auto make = [&](VariantKind kind, std::optional<int> horizon) {
      VariantSample v;
      v.transcript = parent;
      v.transcript.id = variant_id(parent.id, kind, horizon);
      v.parent_id = parent.id;
      v.kind = kind;
      v.horizon = horizon;
      v.expected_relation = relation_for(kind);
      return v;
    };
    auto& out = produced[i];

    auto negation = make(VariantKind::kNegation, std::nullopt);
    auto negated = negate(parent.sentences, lexicon);
    negation.transcript.sentences = std::move(negated.sentences);
    negation.substitutions = negated.substitutions;
    negation.zero_substitution = negated.substitutions == 0;
    for (const auto& [h, label] : gold) negation.gold.emplace(h, flip(label));
    out.push_back(std::move(negation));

    auto symmetric = make(VariantKind::kSymmetric, std::nullopt);
    for (auto& s : symmetric.transcript.sentences) s = symmetrize(s, options.protected_tokens);
    symmetric.gold = gold;
    out.push_back(std::move(symmetric));

    for (const int h : horizons) {
      auto additive = make(VariantKind::kAdditive, h);
      const auto pairing = additive_partner(*label_of.at({parent.id, h}), pool.at(h));
      const auto& partner = *by_id.at(pairing.partner_id);
      additive.transcript.sentences.insert(additive.transcript.sentences.end(),
                                           partner.sentences.begin(), partner.sentences.end());
      additive.partner_id = pairing.partner_id;
      additive.self_pair = pairing.self_pair;
      additive.gold.emplace(h, gold.at(h));
      out.push_back(std::move(additive));
    }

    auto transitive = make(VariantKind::kTransitive, std::nullopt);
    const auto& company = sector_map.company_for(parent.sector);
    std::size_t replaced = 0;
    for (auto& s : transitive.transcript.sentences) {
      std::size_t n = 0;
      s = transitivize_sentence(s, company, &n);
      replaced += n;
    }
    transitive.substitutions = replaced;
    transitive.gold = gold;
    out.push_back(std::move(transitive));
  });

  for (auto& group : produced) {
    for (auto& v : group) suite.variants.push_back(std::move(v));
  }
  suite.reindex();
  return suite;
}

void write_suite(const std::filesystem::path& dir, const ConsistencySuite& suite) {
  std::filesystem::create_directories(dir);
  std::string originals;
  for (const auto& o : suite.originals) {
    auto record = base_record(o.transcript);
    add_gold(record, o.gold);
    originals += record.dump() + "\n";
  }
  std::string variants;
  for (const auto& v : suite.variants) {
    auto record = base_record(v.transcript);
    record["parent_id"] = v.parent_id;
    record["kind"] = std::string(code(v.kind));
    if (v.horizon) record["horizon"] = *v.horizon;
    record["expected_relation"] = std::string(to_string(v.expected_relation));
    add_gold(record, v.gold);
    auto flags = ordered_json::array();
    if (v.zero_substitution) flags.push_back("zero_substitution");
    if (v.self_pair) flags.push_back("self_pair");
    record["flags"] = flags;
    if (v.kind == VariantKind::kAdditive) record["partner_id"] = v.partner_id;
    record["substitutions"] = v.substitutions;
    variants += record.dump() + "\n";
  }
  write_file(dir / "originals.jsonl", originals);
  write_file(dir / "variants.jsonl", variants);
}

ConsistencySuite load_suite(const std::filesystem::path& dir) {
  ConsistencySuite suite;
  const auto originals_path = dir / "originals.jsonl";
  const auto variants_path = dir / "variants.jsonl";
  const auto originals_text = read_file(originals_path);
  const auto variants_text = read_file(variants_path);

  try {
    const auto transcripts = parse_transcripts(originals_text, originals_path.string());
    const auto records = json_lines(originals_text);
    for (std::size_t i = 0; i < transcripts.size(); ++i) {
      suite.originals.push_back(
          SuiteOriginal{transcripts[i], read_gold(records[i], originals_path.string(), i + 1)});
    }

    const auto variant_transcripts = parse_transcripts(variants_text, variants_path.string());
    const auto variant_records = json_lines(variants_text);
    for (std::size_t i = 0; i < variant_transcripts.size(); ++i) {
      const auto& r = variant_records[i];
      const auto where = variants_path.string() + ": record " + std::to_string(i + 1);
      VariantSample v;
      v.transcript = variant_transcripts[i];
      v.parent_id = r.value("parent_id", std::string());
      const auto kind = parse_variant_kind(r.value("kind", std::string()));
      if (v.parent_id.empty() || !kind) {
        throw Error(ErrorKind::kParse, where + ": missing parent_id or kind");
      }
      v.kind = *kind;
      if (r.contains("horizon")) v.horizon = r.at("horizon").get<int>();
      const auto relation = r.value("expected_relation", std::string());
      if (relation != "same" && relation != "flipped") {
        throw Error(ErrorKind::kParse, where + ": invalid expected_relation");
      }
      v.expected_relation = relation == "flipped" ? Relation::kFlipped : Relation::kSame;
      if (v.expected_relation != relation_for(v.kind)) {
        throw Error(ErrorKind::kParse, where + ": expected_relation does not match kind");
      }
      if (v.id() != variant_id(v.parent_id, v.kind, v.horizon)) {
        throw Error(ErrorKind::kParse, where + ": id does not match parent/kind/horizon");
      }
      v.gold = read_gold(r, variants_path.string(), i + 1);
      for (const auto& flag : r.value("flags", json::array())) {
        if (flag == "zero_substitution") v.zero_substitution = true;
        if (flag == "self_pair") v.self_pair = true;
      }
      v.partner_id = r.value("partner_id", std::string());
      v.substitutions = r.value("substitutions", std::size_t{0});
      suite.variants.push_back(std::move(v));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, dir.string() + ": malformed suite record: " + e.what());
  }

  if (!suite.originals.empty()) {
    for (const auto& [h, _] : suite.originals.front().gold) suite.horizons.push_back(h);
    for (const auto& o : suite.originals) {
      if (o.gold.size() != suite.horizons.size() ||
          !std::equal(suite.horizons.begin(), suite.horizons.end(), o.gold.begin(),
                      [](int h, const auto& entry) { return h == entry.first; })) {
        throw Error(ErrorKind::kParse,
                    "original '" + o.transcript.id + "' has a different horizon set");
      }
    }
  }
  if (const auto manifest = dir / "manifest.json"; std::filesystem::exists(manifest)) {
    try {
      const auto doc = json::parse(read_file(manifest));
      suite.lexicon_fingerprint = doc.value("lexicon_fingerprint", std::string());
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParse, manifest.string() + ": " + e.what());
    }
  }
  suite.reindex();
  return suite;
}

}  // namespace finconsist

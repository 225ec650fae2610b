// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <map>
#include <set>

#include "finconsist/csv.hpp"
#include "finconsist/error.hpp"
#include "finconsist/io.hpp"
#include "finconsist/metrics.hpp"

namespace finconsist {
namespace {

struct Choice {
  Polarity polarity = Polarity::kPositive;
  bool tied = false;
};

struct ContextPair {
  std::vector<const ProbeRecord*> original;
  std::vector<const ProbeRecord*> negated;
};

Choice choose(const std::string& context, std::string_view variant,
              const std::vector<const ProbeRecord*>& candidates) {
  double best_positive = -1.0;
  double best_negative = -1.0;
  for (const auto* r : candidates) {
    auto& best = r->polarity == Polarity::kPositive ? best_positive : best_negative;
    best = std::max(best, r->probability);
  }
  if (best_positive < 0.0 || best_negative < 0.0) {
    throw Error(ErrorKind::kEmptyCandidates, "context '" + context + "' (" + std::string(variant) +
                                                 ") needs at least one positive and one "
                                                 "negative candidate");
  }
  if (best_positive == best_negative) return {Polarity::kPositive, true};
  return {best_positive > best_negative ? Polarity::kPositive : Polarity::kNegative, false};
}

}  // namespace

std::string_view to_string(ProbeSetting setting) {
  switch (setting) {
    case ProbeSetting::kBoth: return "both";
    case ProbeSetting::kPositiveOnly: return "positive_only";
    case ProbeSetting::kNegativeOnly: return "negative_only";
  }
  return "both";
}

std::optional<ProbeSetting> parse_probe_setting(std::string_view text) {
  if (text == "both") return ProbeSetting::kBoth;
  if (text == "positive_only") return ProbeSetting::kPositiveOnly;
  if (text == "negative_only") return ProbeSetting::kNegativeOnly;
  return std::nullopt;
}

std::vector<ProbeRecord> parse_probe_records(std::string_view text, std::string_view source) {
  static constexpr std::array<std::string_view, 5> kHeader{"context_id", "variant", "token",
                                                           "polarity", "probability"};
  std::vector<ProbeRecord> out;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& row : csv::parse(text, source, kHeader)) {
    const auto where = std::string(source) + ":" + std::to_string(row.line) + ": ";
    ProbeRecord r;
    r.context_id = row.fields[0];
    r.token = row.fields[2];
    if (r.context_id.empty() || r.token.empty()) {
      throw Error(ErrorKind::kParse, where + "context_id and token must be non-empty");
    }
    if (row.fields[1] == "original") {
      r.variant = ProbeVariant::kOriginal;
    } else if (row.fields[1] == "negated") {
      r.variant = ProbeVariant::kNegated;
    } else {
      throw Error(ErrorKind::kParse,
                  where + "variant must be original or negated, got '" + row.fields[1] + "'");
    }
    if (row.fields[3] == "positive") {
      r.polarity = Polarity::kPositive;
    } else if (row.fields[3] == "negative") {
      r.polarity = Polarity::kNegative;
    } else {
      throw Error(ErrorKind::kParse,
                  where + "polarity must be positive or negative, got '" + row.fields[3] + "'");
    }
    if (!csv::parse_double(row.fields[4], r.probability) || r.probability < 0.0 ||
        r.probability > 1.0) {
      throw Error(ErrorKind::kParse,
                  where + "probability must be in [0, 1], got '" + row.fields[4] + "'");
    }
    if (!seen.emplace(r.context_id, row.fields[1], r.token).second) {
      throw Error(ErrorKind::kDuplicateId, where + "duplicate record for (" + r.context_id + ", " +
                                               row.fields[1] + ", " + r.token + ")");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ProbeRecord> load_probe_records(const std::filesystem::path& path) {
  return parse_probe_records(read_file(path), path.string());
}

ProbeScore plm_consistency(std::span<const ProbeRecord> records, ProbeSetting setting) {
  std::map<std::string, ContextPair> contexts;
  for (const auto& r : records) {
    auto& pair = contexts[r.context_id];
    (r.variant == ProbeVariant::kOriginal ? pair.original : pair.negated).push_back(&r);
  }

  ProbeScore score;
  for (const auto& [id, pair] : contexts) {
    if (pair.original.empty() || pair.negated.empty()) {
      throw Error(ErrorKind::kUnpairedContext,
                  "context '" + id + "' has no " +
                      std::string(pair.original.empty() ? "original" : "negated") + " variant");
    }
    const auto original = choose(id, "original", pair.original);
    const auto negated = choose(id, "negated", pair.negated);
    if (setting != ProbeSetting::kBoth) {
      const auto wanted =
          setting == ProbeSetting::kPositiveOnly ? Polarity::kPositive : Polarity::kNegative;
      if (original.tied || original.polarity != wanted) continue;
    }
    ++score.pairs;
    if (original.tied || negated.tied) {
      ++score.ties;
      continue;
    }
    if (original.polarity != negated.polarity) ++score.consistent;
  }
  if (score.pairs == 0) {
    throw Error(ErrorKind::kEmptyCandidates,
                "no context pairs to score under setting " + std::string(to_string(setting)));
  }
  score.score = static_cast<double>(score.consistent) / static_cast<double>(score.pairs);
  return score;
}

const std::vector<std::pair<std::string, Polarity>>& default_polarity_lexicon() {
  static const std::vector<std::pair<std::string, Polarity>> lexicon{
      {"increased", Polarity::kPositive}, {"rise", Polarity::kPositive},
      {"up", Polarity::kPositive},        {"higher", Polarity::kPositive},
      {"positive", Polarity::kPositive},  {"decreased", Polarity::kNegative},
      {"fall", Polarity::kNegative},      {"down", Polarity::kNegative},
      {"lower", Polarity::kNegative},     {"negative", Polarity::kNegative},
  };
  return lexicon;
}

}  // namespace finconsist

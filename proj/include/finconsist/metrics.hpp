// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

// Classification metrics, consistency scores, correlation and masked-LM
// probe scoring.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finconsist/corpus.hpp"
#include "finconsist/transform.hpp"

namespace finconsist {

/// Model outputs keyed by (sample id, horizon). Sample ids are transcript
/// ids for originals and variant ids for suite variants.
class PredictionSet {
 public:
  std::string model_name;
  std::optional<std::uint64_t> run_seed;

  /// Throws kDuplicateId when the key is already present.
  void add(std::string sample_id, int horizon, Label prediction);

  std::optional<Label> find(std::string_view sample_id, int horizon) const;
  std::size_t size() const { return predictions_.size(); }
  const std::map<std::pair<std::string, int>, Label>& entries() const { return predictions_; }

  /// CSV with header `sample_id,horizon,prediction`, prediction pos|neg.
  static PredictionSet parse(std::string_view text, std::string_view source);
  static PredictionSet load(const std::filesystem::path& path);
  void write(std::ostream& out) const;

 private:
  std::map<std::pair<std::string, int>, Label> predictions_;
};

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }
  void add(Label gold, Label predicted);
  bool operator==(const ConfusionMatrix&) const = default;
};

/// Positive is the positive class. Throws IncompletePredictionsError
/// listing every gold id without a prediction at `horizon`.
ConfusionMatrix confusion(const PredictionSet& preds, const std::map<std::string, Label>& golds,
                          int horizon);

struct ClassificationMetrics {
  double accuracy = 0.0;
  double f1 = 0.0;
  double mcc = 0.0;
};

/// F1 is 0 when precision or recall is undefined (or both are 0); MCC is 0
/// when any factor of its denominator is 0. Throws kEmptyMatrix.
ClassificationMetrics classification_metrics(const ConfusionMatrix& cm);

struct ConsistencyReport {
  int horizon = 0;
  double consis_n = 0.0;
  double consis_s = 0.0;
  double consis_a = 0.0;
  double consis_t = 0.0;
  double consis = 0.0;
  std::size_t denominator_n = 0;
  std::size_t denominator_s = 0;
  std::size_t denominator_a = 0;
  std::size_t denominator_t = 0;
  std::size_t excluded_n = 0;  // zero-substitution negations dropped under strict
};

/// Mean of the four component scores.
double consistency_mean(double consis_n, double consis_s, double consis_a, double consis_t);

struct ConsistencyOptions {
  /// Drop negation variants flagged zero_substitution from Consis^N.
  bool strict = false;
};

/// Consis^N is the fraction of parents whose negation prediction differs;
/// Consis^S/A/T the fraction whose variant prediction agrees. Throws
/// IncompletePredictionsError for any missing original or variant.
ConsistencyReport consistency_scores(const PredictionSet& preds, const ConsistencySuite& suite,
                                     int horizon, const ConsistencyOptions& options = {});

/// Pearson r. Throws kLengthMismatch (or fewer than two points) and
/// kZeroVariance for a constant series.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Welch's two-sample t statistic, for run-to-run comparisons in reports.
/// Needs at least two values per side and non-zero pooled variance.
double welch_t(std::span<const double> xs, std::span<const double> ys);

enum class ProbeVariant { kOriginal, kNegated };
enum class Polarity { kPositive, kNegative };

struct ProbeRecord {
  std::string context_id;
  ProbeVariant variant = ProbeVariant::kOriginal;
  std::string token;
  Polarity polarity = Polarity::kPositive;
  double probability = 0.0;
};

/// Which (original, negated) pairs are scored: all of them, or only those
/// whose original-context choice has the given polarity.
enum class ProbeSetting { kBoth, kPositiveOnly, kNegativeOnly };

std::string_view to_string(ProbeSetting setting);
std::optional<ProbeSetting> parse_probe_setting(std::string_view text);

/// CSV with header `context_id,variant,token,polarity,probability`.
std::vector<ProbeRecord> parse_probe_records(std::string_view text, std::string_view source);
std::vector<ProbeRecord> load_probe_records(const std::filesystem::path& path);

struct ProbeScore {
  double score = 0.0;
  std::size_t consistent = 0;
  std::size_t pairs = 0;
  std::size_t ties = 0;  // pairs with a tied argmax in either context
};

/// A pair is consistent iff the polarity of the highest-probability
/// candidate differs between its original and negated contexts; ties are
/// inconsistent. Under kPositiveOnly/kNegativeOnly only pairs whose original
/// choice is untied and of that polarity are scored. Throws
/// kUnpairedContext, kEmptyCandidates (a context without both polarities,
/// or no pair left to score).
ProbeScore plm_consistency(std::span<const ProbeRecord> records, ProbeSetting setting);

/// Default candidate tokens, mirrored by the probe adapter.
const std::vector<std::pair<std::string, Polarity>>& default_polarity_lexicon();

}  // namespace finconsist

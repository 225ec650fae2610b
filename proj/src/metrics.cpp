// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include "finconsist/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "finconsist/error.hpp"

namespace finconsist {

void ConfusionMatrix::add(Label gold, Label predicted) {
  if (gold == Label::kPositive) {
    ++(predicted == Label::kPositive ? tp : fn);
  } else {
    ++(predicted == Label::kPositive ? fp : tn);
  }
}

ConfusionMatrix confusion(const PredictionSet& preds, const std::map<std::string, Label>& golds,
                          int horizon) {
  ConfusionMatrix cm;
  std::vector<std::string> missing;
  for (const auto& [id, gold] : golds) {
    const auto predicted = preds.find(id, horizon);
    if (!predicted) {
      missing.push_back(id);
      continue;
    }
    cm.add(gold, *predicted);
  }
  if (!missing.empty()) throw IncompletePredictionsError(std::move(missing));
  return cm;
}

ClassificationMetrics classification_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) {
    throw Error(ErrorKind::kEmptyMatrix, "confusion matrix has no scored pairs");
  }
  const auto tp = static_cast<double>(cm.tp);
  const auto tn = static_cast<double>(cm.tn);
  const auto fp = static_cast<double>(cm.fp);
  const auto fn = static_cast<double>(cm.fn);

  ClassificationMetrics m;
  m.accuracy = (tp + tn) / (tp + tn + fp + fn);

  if (cm.tp + cm.fp > 0 && cm.tp + cm.fn > 0) {
    const double precision = tp / (tp + fp);
    const double recall = tp / (tp + fn);
    if (precision + recall > 0.0) m.f1 = 2.0 * precision * recall / (precision + recall);
  }

  const double a = tp + fp;
  const double b = tp + fn;
  const double c = tn + fp;
  const double d = tn + fn;
  if (a > 0 && b > 0 && c > 0 && d > 0) {
    m.mcc = (tp * tn - fp * fn) / std::sqrt(a * b * c * d);
    m.mcc = std::clamp(m.mcc, -1.0, 1.0);
  }
  return m;
}

double consistency_mean(double consis_n, double consis_s, double consis_a, double consis_t) {
  return (consis_n + consis_s + consis_a + consis_t) / 4.0;
}

ConsistencyReport consistency_scores(const PredictionSet& preds, const ConsistencySuite& suite,
                                     int horizon, const ConsistencyOptions& options) {
  if (std::find(suite.horizons.begin(), suite.horizons.end(), horizon) == suite.horizons.end()) {
    throw Error(ErrorKind::kInvalidArgument,
                "horizon " + std::to_string(horizon) + " is not part of the suite");
  }
  if (suite.originals.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "consistency suite has no original samples");
  }

  std::size_t agree_n = 0, agree_s = 0, agree_a = 0, agree_t = 0;
  ConsistencyReport report;
  report.horizon = horizon;
  std::vector<std::string> missing;
  std::vector<std::string> absent_variants;

  for (const auto& original : suite.originals) {
    const auto& parent_id = original.transcript.id;
    const auto parent = preds.find(parent_id, horizon);
    if (!parent) missing.push_back(parent_id);
    for (const auto kind : kVariantKinds) {
      const auto* variant = suite.find(parent_id, kind, horizon);
      if (variant == nullptr) {
        absent_variants.push_back(variant_id(parent_id, kind,
                                             kind == VariantKind::kAdditive
                                                 ? std::optional<int>(horizon)
                                                 : std::nullopt));
        continue;
      }
      const auto predicted = preds.find(variant->id(), horizon);
      if (!predicted) {
        missing.push_back(variant->id());
        continue;
      }
      if (!parent) continue;
      const bool same = *predicted == *parent;
      switch (kind) {
        case VariantKind::kNegation:
          if (options.strict && variant->zero_substitution) {
            ++report.excluded_n;
            break;
          }
          ++report.denominator_n;
          if (!same) ++agree_n;
          break;
        case VariantKind::kSymmetric:
          ++report.denominator_s;
          if (same) ++agree_s;
          break;
        case VariantKind::kAdditive:
          ++report.denominator_a;
          if (same) ++agree_a;
          break;
        case VariantKind::kTransitive:
          ++report.denominator_t;
          if (same) ++agree_t;
          break;
      }
    }
  }
  if (!absent_variants.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "suite is missing " + std::to_string(absent_variants.size()) +
                    " variant(s), e.g. " + absent_variants.front());
  }
  if (!missing.empty()) throw IncompletePredictionsError(std::move(missing));
  if (report.denominator_n == 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "strict mode excluded every negation variant (no lexicon substitutions)");
  }

  const auto frac = [](std::size_t k, std::size_t n) {
    return static_cast<double>(k) / static_cast<double>(n);
  };
  report.consis_n = frac(agree_n, report.denominator_n);
  report.consis_s = frac(agree_s, report.denominator_s);
  report.consis_a = frac(agree_a, report.denominator_a);
  report.consis_t = frac(agree_t, report.denominator_t);
  report.consis = consistency_mean(report.consis_n, report.consis_s, report.consis_a,
                                   report.consis_t);
  return report;
}

namespace {

void require_pairable(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorKind::kLengthMismatch, "series lengths differ: " +
                                                std::to_string(xs.size()) + " vs " +
                                                std::to_string(ys.size()));
  }
  if (xs.size() < 2) {
    throw Error(ErrorKind::kLengthMismatch, "need at least two points");
  }
}

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double mean(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
  require_pairable(xs, ys);
  if (constant(xs) || constant(ys)) {
    throw Error(ErrorKind::kZeroVariance, "pearson: a series is constant");
  }
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double welch_t(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 2 || ys.size() < 2) {
    throw Error(ErrorKind::kLengthMismatch, "welch_t needs at least two values per sample");
  }
  const auto variance = [](std::span<const double> v, double m) {
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return ss / static_cast<double>(v.size() - 1);
  };
  const double mx = mean(xs);
  const double my = mean(ys);
  const double se2 = variance(xs, mx) / static_cast<double>(xs.size()) +
                     variance(ys, my) / static_cast<double>(ys.size());
  if (!(se2 > 0.0)) throw Error(ErrorKind::kZeroVariance, "welch_t: both samples are constant");
  return (mx - my) / std::sqrt(se2);
}

}  // namespace finconsist

// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

// Equal-stake long/short trading simulation with Profit Ratio and Sharpe
// Ratio, plus Buy-all / Short-sell-all / Random baselines.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finconsist/corpus.hpp"
#include "finconsist/metrics.hpp"
#include "finconsist/transform.hpp"

namespace finconsist {

enum class Side { kLong, kShort };

std::string_view to_string(Side side);

/// (close - open) / open for a long position, (open - close) / open for a
/// short one.
double unit_return(Side side, double open_price, double close_price);

struct Trade {
  std::string sample_id;
  std::string ticker;
  Date open_date;
  Date close_date;
  Side side = Side::kLong;
  double open_price = 0.0;
  double close_price = 0.0;
  double unit_return = 0.0;
};

/// One unit invested per trade; no costs, no reinvestment.
struct TradeLedger {
  std::string strategy;
  int horizon = 0;  // 0 for a ledger pooled across horizons
  std::vector<Trade> trades;

  std::vector<double> returns() const;
};

struct SimulateOptions {
  /// Trade on predictions for this suite variant of each sample instead of
  /// the original transcript (the "+transformed" setting).
  std::optional<VariantKind> variant;
  unsigned threads = 1;
};

/// Positive prediction -> long, negative -> short, one trade per sample at
/// `horizon`, prices resolved with the effective-trading-day rule. Throws
/// IncompletePredictionsError or kInsufficientPriceData (listing ids).
TradeLedger simulate(const PredictionSet& preds, const PriceSeries& prices,
                     std::span<const LabeledSample> samples, int horizon,
                     const SimulateOptions& options = {});

enum class BaselineKind { kBuyAll, kShortSellAll, kRandom };

struct BaselineStrategy {
  BaselineKind kind = BaselineKind::kBuyAll;
  std::uint64_t seed = 0;  // kRandom only
};

std::string_view to_string(BaselineKind kind);
std::optional<BaselineKind> parse_baseline(std::string_view text);

/// Random draws each side from a std::mt19937_64 seeded with `seed`, one
/// draw per sample in input order.
TradeLedger baseline_ledger(const BaselineStrategy& strategy,
                            std::span<const LabeledSample> samples, const PriceSeries& prices,
                            int horizon);

/// Sum of unit returns over the number of trades. Throws kEmptyLedger.
double profit_ratio(const TradeLedger& ledger);

/// (mean - r_f) / sample stdev (n - 1). Throws kEmptyLedger for fewer than
/// two trades and kZeroVolatility when every return is equal.
double sharpe_ratio(const TradeLedger& ledger, double risk_free = 0.0);

/// Concatenates trades in argument order under horizon 0.
TradeLedger pool(std::span<const TradeLedger> ledgers);

struct PortfolioResult {
  std::string strategy;
  int horizon = 0;
  std::size_t n_trades = 0;
  double profit_ratio = 0.0;
  double mean_return = 0.0;
  std::optional<double> stdev_return;  // undefined for fewer than two trades
  std::optional<double> sharpe_ratio;  // undefined when stdev is 0 or missing
  double risk_free = 0.0;
};

PortfolioResult evaluate(const TradeLedger& ledger, double risk_free = 0.0);

/// CSV with header
/// `ticker,open_date,close_date,side,open_price,close_price,unit_return`.
void write_ledger(std::ostream& out, const TradeLedger& ledger);

}  // namespace finconsist

// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include "finconsist/backtest.hpp"

#include <cmath>
#include <random>

#include "finconsist/csv.hpp"
#include "finconsist/error.hpp"
#include "finconsist/parallel.hpp"

namespace finconsist {
namespace {

std::vector<const LabeledSample*> at_horizon(std::span<const LabeledSample> samples,
                                             int horizon) {
  std::vector<const LabeledSample*> out;
  for (const auto& s : samples) {
    if (s.horizon == horizon) out.push_back(&s);
  }
  return out;
}

// Resolves prices for every sample, collecting all failures before throwing.
std::vector<Trade> open_trades(const std::vector<const LabeledSample*>& samples,
                               const PriceSeries& prices, int horizon, unsigned threads) {
  std::vector<Trade> trades(samples.size());
  std::vector<std::string> failures(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const auto& s = *samples[i];
    try {
      const auto priced = movement_label(prices, s.ticker, s.call_date, horizon);
      auto& t = trades[i];
      t.sample_id = s.transcript_id;
      t.ticker = s.ticker;
      t.open_date = priced.open_date;
      t.close_date = priced.close_date;
      t.open_price = priced.open_price;
      t.close_price = priced.close_price;
    } catch (const Error& e) {
      failures[i] = s.transcript_id + " (" + e.what() + ")";
    }
  });
  std::vector<std::string> failed;
  for (auto& f : failures) {
    if (!f.empty()) failed.push_back(std::move(f));
  }
  if (!failed.empty()) {
    std::string msg = "missing prices for " + std::to_string(failed.size()) + " sample(s): ";
    for (std::size_t i = 0; i < std::min<std::size_t>(10, failed.size()); ++i) {
      if (i) msg += "; ";
      msg += failed[i];
    }
    throw Error(ErrorKind::kInsufficientPriceData, msg);
  }
  return trades;
}

void settle(Trade& trade, Side side) {
  trade.side = side;
  trade.unit_return = unit_return(side, trade.open_price, trade.close_price);
}

}  // namespace

std::string_view to_string(Side side) { return side == Side::kLong ? "long" : "short"; }

double unit_return(Side side, double open_price, double close_price) {
  if (!(open_price > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "open price must be positive");
  }
  return side == Side::kLong ? (close_price - open_price) / open_price
                             : (open_price - close_price) / open_price;
}

std::vector<double> TradeLedger::returns() const {
  std::vector<double> out;
  out.reserve(trades.size());
  for (const auto& t : trades) out.push_back(t.unit_return);
  return out;
}

TradeLedger simulate(const PredictionSet& preds, const PriceSeries& prices,
                     std::span<const LabeledSample> samples, int horizon,
                     const SimulateOptions& options) {
  const auto chosen = at_horizon(samples, horizon);
  std::vector<Label> sides(chosen.size());
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const auto& id = chosen[i]->transcript_id;
    const auto key =
        options.variant
            ? variant_id(id, *options.variant,
                         *options.variant == VariantKind::kAdditive ? std::optional<int>(horizon)
                                                                    : std::nullopt)
            : id;
    const auto predicted = preds.find(key, horizon);
    if (!predicted) {
      missing.push_back(key);
      continue;
    }
    sides[i] = *predicted;
  }
  if (!missing.empty()) throw IncompletePredictionsError(std::move(missing));

  TradeLedger ledger;
  ledger.strategy = "model";
  ledger.horizon = horizon;
  ledger.trades = open_trades(chosen, prices, horizon, options.threads);
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    settle(ledger.trades[i], sides[i] == Label::kPositive ? Side::kLong : Side::kShort);
  }
  return ledger;
}

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kBuyAll: return "buy-all";
    case BaselineKind::kShortSellAll: return "short-sell-all";
    case BaselineKind::kRandom: return "random";
  }
  return "buy-all";
}

std::optional<BaselineKind> parse_baseline(std::string_view text) {
  for (const auto kind : {BaselineKind::kBuyAll, BaselineKind::kShortSellAll,
                          BaselineKind::kRandom}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

TradeLedger baseline_ledger(const BaselineStrategy& strategy,
                            std::span<const LabeledSample> samples, const PriceSeries& prices,
                            int horizon) {
  const auto chosen = at_horizon(samples, horizon);
  TradeLedger ledger;
  ledger.strategy = std::string(to_string(strategy.kind));
  ledger.horizon = horizon;
  ledger.trades = open_trades(chosen, prices, horizon, 1);
  std::mt19937_64 rng(strategy.seed);
  for (auto& trade : ledger.trades) {
    Side side = Side::kLong;
    switch (strategy.kind) {
      case BaselineKind::kBuyAll: side = Side::kLong; break;
      case BaselineKind::kShortSellAll: side = Side::kShort; break;
      case BaselineKind::kRandom: side = (rng() >> 63) != 0 ? Side::kLong : Side::kShort; break;
    }
    settle(trade, side);
  }
  return ledger;
}

double profit_ratio(const TradeLedger& ledger) {
  if (ledger.trades.empty()) throw Error(ErrorKind::kEmptyLedger, "ledger has no trades");
  double total = 0.0;
  for (const auto& t : ledger.trades) total += t.unit_return;
  return total / static_cast<double>(ledger.trades.size());
}

namespace {

struct Moments {
  double mean = 0.0;
  double stdev = 0.0;
};

Moments sample_moments(const TradeLedger& ledger) {
  const auto n = static_cast<double>(ledger.trades.size());
  Moments m;
  for (const auto& t : ledger.trades) m.mean += t.unit_return;
  m.mean /= n;
  double ss = 0.0;
  for (const auto& t : ledger.trades) ss += (t.unit_return - m.mean) * (t.unit_return - m.mean);
  m.stdev = std::sqrt(ss / (n - 1.0));
  return m;
}

bool all_equal(const TradeLedger& ledger) {
  for (const auto& t : ledger.trades) {
    if (t.unit_return != ledger.trades.front().unit_return) return false;
  }
  return true;
}

}  // namespace

double sharpe_ratio(const TradeLedger& ledger, double risk_free) {
  if (ledger.trades.size() < 2) {
    throw Error(ErrorKind::kEmptyLedger, "sharpe ratio needs at least two trades");
  }
  if (all_equal(ledger)) {
    throw Error(ErrorKind::kZeroVolatility, "sharpe ratio undefined: returns have zero volatility");
  }
  const auto m = sample_moments(ledger);
  return (m.mean - risk_free) / m.stdev;
}

TradeLedger pool(std::span<const TradeLedger> ledgers) {
  TradeLedger out;
  if (!ledgers.empty()) out.strategy = ledgers.front().strategy;
  for (const auto& l : ledgers) out.trades.insert(out.trades.end(), l.trades.begin(), l.trades.end());
  return out;
}

PortfolioResult evaluate(const TradeLedger& ledger, double risk_free) {
  PortfolioResult r;
  r.strategy = ledger.strategy;
  r.horizon = ledger.horizon;
  r.n_trades = ledger.trades.size();
  r.risk_free = risk_free;
  r.profit_ratio = profit_ratio(ledger);
  r.mean_return = r.profit_ratio;
  if (ledger.trades.size() >= 2) {
    r.stdev_return = all_equal(ledger) ? 0.0 : sample_moments(ledger).stdev;
    if (*r.stdev_return > 0.0) r.sharpe_ratio = sharpe_ratio(ledger, risk_free);
  }
  return r;
}

void write_ledger(std::ostream& out, const TradeLedger& ledger) {
  out << "ticker,open_date,close_date,side,open_price,close_price,unit_return\n";
  for (const auto& t : ledger.trades) {
    out << csv::escape(t.ticker) << ',' << to_iso(t.open_date) << ',' << to_iso(t.close_date)
        << ',' << to_string(t.side) << ',' << csv::format_double(t.open_price) << ','
        << csv::format_double(t.close_price) << ',' << csv::format_double(t.unit_return) << '\n';
  }
}

}  // namespace finconsist

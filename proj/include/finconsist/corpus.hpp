// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

// Transcript and price ingestion, n-day movement labels and chronological
// train/validation/test splits.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finconsist/date.hpp"

namespace finconsist {

enum class Label { kNegative, kPositive };

constexpr Label flip(Label label) {
  return label == Label::kPositive ? Label::kNegative : Label::kPositive;
}

/// "pos" / "neg", the spelling used by every file format.
std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view text);

inline constexpr std::array<int, 4> kDefaultHorizons{3, 7, 15, 30};

/// Anchor dates roll forward at most this many calendar days to find a
/// trading day.
inline constexpr int kMaxRollForwardDays = 10;

struct Transcript {
  std::string id;
  std::string ticker;
  std::string sector;
  Date call_date;
  std::vector<std::string> sentences;
};

/// Parses one JSON-lines record per non-blank line. Errors name the line
/// number and field; duplicate ids name both lines.
std::vector<Transcript> parse_transcripts(std::string_view text, std::string_view source);
std::vector<Transcript> load_transcripts(const std::filesystem::path& path);

/// One compact JSON object per line with keys in a fixed order.
void write_transcripts(std::ostream& out, std::span<const Transcript> transcripts);

/// Per-ticker closing prices sorted by date.
class PriceSeries {
 public:
  struct Point {
    Date date;
    double close = 0.0;
  };

  PriceSeries() = default;

  /// Sorts each ticker's points; rejects duplicate dates and non-positive
  /// or non-finite prices.
  explicit PriceSeries(std::map<std::string, std::vector<Point>> series);

  /// CSV with header `date,ticker,close`.
  static PriceSeries parse(std::string_view text, std::string_view source);
  static PriceSeries load(const std::filesystem::path& path);

  bool has_ticker(std::string_view ticker) const;
  std::span<const Point> points(std::string_view ticker) const;
  std::vector<std::string> tickers() const;

  /// First trading day on or after `anchor`, no later than anchor +
  /// kMaxRollForwardDays. Throws kUnknownTicker for an absent ticker.
  std::optional<Point> effective_day(std::string_view ticker, Date anchor) const;

 private:
  std::map<std::string, std::vector<Point>, std::less<>> series_;
};

struct LabeledSample {
  std::string transcript_id;
  std::string ticker;
  Date call_date;
  int horizon = 0;
  Label label = Label::kNegative;
  Date open_date;
  double open_price = 0.0;
  Date close_date;
  double close_price = 0.0;
};

/// Positive iff the effective close at date+horizon is strictly above the
/// effective close at date. The returned sample has an empty transcript_id.
LabeledSample movement_label(const PriceSeries& prices, std::string_view ticker, Date date,
                             int horizon);

LabeledSample label_transcript(const PriceSeries& prices, const Transcript& transcript,
                               int horizon);

/// CSV with header
/// `transcript_id,ticker,call_date,horizon,open_date,open_price,close_date,close_price,label`.
void write_labels(std::ostream& out, std::span<const LabeledSample> samples);
std::vector<LabeledSample> parse_labels(std::string_view text, std::string_view source);
std::vector<LabeledSample> load_labels(const std::filesystem::path& path);

struct SplitSpec {
  double train = 0.7;
  double validation = 0.1;
  double test = 0.2;

  /// Throws kInvalidArgument unless all ratios are >= 0 and sum to 1
  /// within 1e-9.
  void validate() const;
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

/// floor(train * n), floor(validation * n), remainder to test.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

template <typename T>
struct Split {
  std::vector<T> train;
  std::vector<T> validation;
  std::vector<T> test;
  std::vector<std::string> warnings;
};

/// Sorts by (call_date, id) and cuts into consecutive partitions, so every
/// training date precedes or equals every validation and test date.
/// Throws kTooFewSamples for fewer than three items.
Split<LabeledSample> chronological_split(std::vector<LabeledSample> samples,
                                         const SplitSpec& spec);
Split<Transcript> chronological_split(std::vector<Transcript> transcripts,
                                      const SplitSpec& spec);

}  // namespace finconsist

// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include "finconsist/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "finconsist/csv.hpp"
#include "finconsist/error.hpp"
#include "finconsist/io.hpp"

namespace finconsist {
namespace {

using nlohmann::json;

[[noreturn]] void record_error(std::string_view source, std::size_t line,
                               const std::string& what) {
  throw Error(ErrorKind::kParse,
              std::string(source) + ":" + std::to_string(line) + ": " + what);
}

std::string require_string(const json& record, const char* field, std::string_view source,
                           std::size_t line) {
  const auto it = record.find(field);
  if (it == record.end()) record_error(source, line, std::string("missing field '") + field + "'");
  if (!it->is_string() || it->get_ref<const std::string&>().empty()) {
    record_error(source, line, std::string("field '") + field + "' must be a non-empty string");
  }
  return it->get<std::string>();
}


template <typename T>
const std::string& sort_id(const T& item) {
  if constexpr (std::is_same_v<T, Transcript>) {
    return item.id;
  } else {
    return item.transcript_id;
  }
}

template <typename T>
Split<T> split_sorted(std::vector<T> items, const SplitSpec& spec) {
  spec.validate();
  if (items.size() < 3) {
    throw Error(ErrorKind::kTooFewSamples,
                "chronological split needs at least 3 samples, got " +
                    std::to_string(items.size()));
  }
  std::stable_sort(items.begin(), items.end(), [](const T& a, const T& b) {
    const auto da = std::chrono::sys_days{a.call_date};
    const auto db = std::chrono::sys_days{b.call_date};
    if (da != db) return da < db;
    return sort_id(a) < sort_id(b);
  });
  const auto sizes = split_sizes(items.size(), spec);
  Split<T> out;
  auto first = std::make_move_iterator(items.begin());
  out.train.assign(first, first + static_cast<std::ptrdiff_t>(sizes.train));
  first += static_cast<std::ptrdiff_t>(sizes.train);
  out.validation.assign(first, first + static_cast<std::ptrdiff_t>(sizes.validation));
  first += static_cast<std::ptrdiff_t>(sizes.validation);
  out.test.assign(first, std::make_move_iterator(items.end()));
  if (out.train.empty()) out.warnings.push_back("train partition is empty");
  if (out.validation.empty()) out.warnings.push_back("validation partition is empty");
  if (out.test.empty()) out.warnings.push_back("test partition is empty");
  return out;
}

}  // namespace

std::string_view to_string(Label label) {
  return label == Label::kPositive ? "pos" : "neg";
}

std::optional<Label> parse_label(std::string_view text) {
  if (text == "pos") return Label::kPositive;
  if (text == "neg") return Label::kNegative;
  return std::nullopt;
}

std::vector<Transcript> parse_transcripts(std::string_view text, std::string_view source) {
  std::vector<Transcript> out;
  std::unordered_map<std::string, std::size_t> first_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                     : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      record_error(source, line_no, std::string("malformed record: ") + e.what());
    }
    if (!record.is_object()) record_error(source, line_no, "record must be a JSON object");

    Transcript t;
    t.id = require_string(record, "id", source, line_no);
    t.ticker = require_string(record, "ticker", source, line_no);
    t.sector = require_string(record, "sector", source, line_no);
    const auto date_text = require_string(record, "call_date", source, line_no);
    const auto date = parse_iso_date(date_text);
    if (!date) {
      record_error(source, line_no, "field 'call_date' is not a valid ISO-8601 date: " + date_text);
    }
    t.call_date = *date;

    const auto sentences = record.find("sentences");
    if (sentences == record.end()) record_error(source, line_no, "missing field 'sentences'");
    if (!sentences->is_array() || sentences->empty()) {
      record_error(source, line_no, "field 'sentences' must be a non-empty array");
    }
    for (const auto& s : *sentences) {
      if (!s.is_string()) record_error(source, line_no, "field 'sentences' must hold strings");
      t.sentences.push_back(s.get<std::string>());
    }

    const auto [it, inserted] = first_line.emplace(t.id, line_no);
    if (!inserted) {
      throw Error(ErrorKind::kDuplicateId, std::string(source) + ": duplicate id '" + t.id +
                                               "' on lines " + std::to_string(it->second) +
                                               " and " + std::to_string(line_no));
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Transcript> load_transcripts(const std::filesystem::path& path) {
  return parse_transcripts(read_file(path), path.string());
}

void write_transcripts(std::ostream& out, std::span<const Transcript> transcripts) {
  for (const auto& t : transcripts) {
    nlohmann::ordered_json record;
    record["id"] = t.id;
    record["ticker"] = t.ticker;
    record["sector"] = t.sector;
    record["call_date"] = to_iso(t.call_date);
    record["sentences"] = t.sentences;
    out << record.dump() << '\n';
  }
}

PriceSeries::PriceSeries(std::map<std::string, std::vector<Point>> series) {
  for (auto& [ticker, points] : series) {
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
      return std::chrono::sys_days{a.date} < std::chrono::sys_days{b.date};
    });
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!(points[i].close > 0.0) || !std::isfinite(points[i].close)) {
        throw Error(ErrorKind::kParse, "price for " + ticker + " on " + to_iso(points[i].date) +
                                           " must be a positive number");
      }
      if (i > 0 && points[i].date == points[i - 1].date) {
        throw Error(ErrorKind::kParse,
                    "duplicate price for " + ticker + " on " + to_iso(points[i].date));
      }
    }
    series_.emplace(ticker, std::move(points));
  }
}

PriceSeries PriceSeries::parse(std::string_view text, std::string_view source) {
  static constexpr std::array<std::string_view, 3> kHeader{"date", "ticker", "close"};
  std::map<std::string, std::vector<Point>> series;
  for (const auto& row : csv::parse(text, source, kHeader)) {
    const auto where = std::string(source) + ":" + std::to_string(row.line) + ": ";
    const auto date = parse_iso_date(row.fields[0]);
    if (!date) throw Error(ErrorKind::kParse, where + "invalid date '" + row.fields[0] + "'");
    if (row.fields[1].empty()) throw Error(ErrorKind::kParse, where + "empty ticker");
    double close = 0.0;
    if (!csv::parse_double(row.fields[2], close) || close <= 0.0) {
      throw Error(ErrorKind::kParse, where + "close must be a positive decimal, got '" +
                                         row.fields[2] + "'");
    }
    series[row.fields[1]].push_back(Point{*date, close});
  }
  return PriceSeries(std::move(series));
}

PriceSeries PriceSeries::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

bool PriceSeries::has_ticker(std::string_view ticker) const {
  return series_.find(ticker) != series_.end();
}

std::span<const PriceSeries::Point> PriceSeries::points(std::string_view ticker) const {
  const auto it = series_.find(ticker);
  if (it == series_.end()) {
    throw Error(ErrorKind::kUnknownTicker, "unknown ticker '" + std::string(ticker) + "'");
  }
  return it->second;
}

std::vector<std::string> PriceSeries::tickers() const {
  std::vector<std::string> out;
  for (const auto& [ticker, _] : series_) out.push_back(ticker);
  return out;
}

std::optional<PriceSeries::Point> PriceSeries::effective_day(std::string_view ticker,
                                                             Date anchor) const {
  const auto series = points(ticker);
  const auto target = std::chrono::sys_days{anchor};
  const auto it = std::lower_bound(series.begin(), series.end(), target,
                                   [](const Point& p, std::chrono::sys_days d) {
                                     return std::chrono::sys_days{p.date} < d;
                                   });
  if (it == series.end() || days_between(anchor, it->date) > kMaxRollForwardDays) {
    return std::nullopt;
  }
  return *it;
}

LabeledSample movement_label(const PriceSeries& prices, std::string_view ticker, Date date,
                             int horizon) {
  if (horizon <= 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "horizon must be a positive number of days, got " + std::to_string(horizon));
  }
  const auto open = prices.effective_day(ticker, date);
  const auto close_anchor = add_days(date, horizon);
  const auto close = prices.effective_day(ticker, close_anchor);
  if (!open || !close) {
    const auto anchor = !open ? date : close_anchor;
    throw Error(ErrorKind::kInsufficientPriceData,
                "no trading day for " + std::string(ticker) + " within " +
                    std::to_string(kMaxRollForwardDays) + " days of " + to_iso(anchor));
  }
  LabeledSample s;
  s.ticker = std::string(ticker);
  s.call_date = date;
  s.horizon = horizon;
  s.open_date = open->date;
  s.open_price = open->close;
  s.close_date = close->date;
  s.close_price = close->close;
  s.label = s.close_price > s.open_price ? Label::kPositive : Label::kNegative;
  return s;
}

LabeledSample label_transcript(const PriceSeries& prices, const Transcript& transcript,
                               int horizon) {
  auto s = movement_label(prices, transcript.ticker, transcript.call_date, horizon);
  s.transcript_id = transcript.id;
  return s;
}

void write_labels(std::ostream& out, std::span<const LabeledSample> samples) {
  out << "transcript_id,ticker,call_date,horizon,open_date,open_price,close_date,close_price,"
         "label\n";
  for (const auto& s : samples) {
    out << csv::escape(s.transcript_id) << ',' << csv::escape(s.ticker) << ','
        << to_iso(s.call_date) << ',' << s.horizon << ',' << to_iso(s.open_date) << ','
        << csv::format_double(s.open_price) << ',' << to_iso(s.close_date) << ','
        << csv::format_double(s.close_price) << ',' << to_string(s.label) << '\n';
  }
}

std::vector<LabeledSample> parse_labels(std::string_view text, std::string_view source) {
  static constexpr std::array<std::string_view, 9> kHeader{
      "transcript_id", "ticker",     "call_date",   "horizon", "open_date",
      "open_price",    "close_date", "close_price", "label"};
  std::vector<LabeledSample> out;
  for (const auto& row : csv::parse(text, source, kHeader)) {
    const auto where = std::string(source) + ":" + std::to_string(row.line) + ": ";
    LabeledSample s;
    s.transcript_id = row.fields[0];
    s.ticker = row.fields[1];
    const auto call = parse_iso_date(row.fields[2]);
    const auto open = parse_iso_date(row.fields[4]);
    const auto close = parse_iso_date(row.fields[6]);
    if (!call || !open || !close) throw Error(ErrorKind::kParse, where + "invalid date");
    s.call_date = *call;
    s.open_date = *open;
    s.close_date = *close;
    double horizon = 0;
    if (!csv::parse_double(row.fields[3], horizon) || horizon <= 0 ||
        horizon != std::floor(horizon)) {
      throw Error(ErrorKind::kParse, where + "invalid horizon '" + row.fields[3] + "'");
    }
    s.horizon = static_cast<int>(horizon);
    if (!csv::parse_double(row.fields[5], s.open_price) ||
        !csv::parse_double(row.fields[7], s.close_price) || s.open_price <= 0 ||
        s.close_price <= 0) {
      throw Error(ErrorKind::kParse, where + "invalid price");
    }
    const auto label = parse_label(row.fields[8]);
    if (!label) throw Error(ErrorKind::kParse, where + "label must be pos or neg");
    s.label = *label;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<LabeledSample> load_labels(const std::filesystem::path& path) {
  return parse_labels(read_file(path), path.string());
}

void SplitSpec::validate() const {
  if (train < 0 || validation < 0 || test < 0) {
    throw Error(ErrorKind::kInvalidArgument, "split ratios must be non-negative");
  }
  if (std::abs(train + validation + test - 1.0) > 1e-9) {
    throw Error(ErrorKind::kInvalidArgument, "split ratios must sum to 1");
  }
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
  spec.validate();
  // The epsilon keeps products such as 0.7 * 10 from landing just below an
  // integer and losing a sample to floating-point error.
  const auto floor_of = [n](double ratio) {
    return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
  };
  SplitSizes sizes;
  sizes.train = std::min(n, floor_of(spec.train));
  sizes.validation = std::min(n - sizes.train, floor_of(spec.validation));
  sizes.test = n - sizes.train - sizes.validation;
  return sizes;
}

Split<LabeledSample> chronological_split(std::vector<LabeledSample> samples,
                                         const SplitSpec& spec) {
  return split_sorted(std::move(samples), spec);
}

Split<Transcript> chronological_split(std::vector<Transcript> transcripts,
                                      const SplitSpec& spec) {
  return split_sorted(std::move(transcripts), spec);
}

}  // namespace finconsist

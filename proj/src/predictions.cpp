// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cmath>
#include <ostream>

#include "finconsist/csv.hpp"
#include "finconsist/error.hpp"
#include "finconsist/io.hpp"
#include "finconsist/metrics.hpp"

namespace finconsist {

void PredictionSet::add(std::string sample_id, int horizon, Label prediction) {
  const auto key = std::make_pair(std::move(sample_id), horizon);
  if (!predictions_.emplace(key, prediction).second) {
    throw Error(ErrorKind::kDuplicateId, "duplicate prediction for " + key.first + " at horizon " +
                                             std::to_string(horizon));
  }
}

std::optional<Label> PredictionSet::find(std::string_view sample_id, int horizon) const {
  const auto it = predictions_.find(std::make_pair(std::string(sample_id), horizon));
  if (it == predictions_.end()) return std::nullopt;
  return it->second;
}

PredictionSet PredictionSet::parse(std::string_view text, std::string_view source) {
  static constexpr std::array<std::string_view, 3> kHeader{"sample_id", "horizon", "prediction"};
  PredictionSet set;
  for (const auto& row : csv::parse(text, source, kHeader)) {
    const auto where = std::string(source) + ":" + std::to_string(row.line) + ": ";
    if (row.fields[0].empty()) throw Error(ErrorKind::kParse, where + "empty sample_id");
    double horizon = 0;
    if (!csv::parse_double(row.fields[1], horizon) || horizon <= 0 ||
        horizon != std::floor(horizon) || horizon > 1e6) {
      throw Error(ErrorKind::kParse, where + "invalid horizon '" + row.fields[1] + "'");
    }
    const auto label = parse_label(row.fields[2]);
    if (!label) {
      throw Error(ErrorKind::kParse,
                  where + "prediction must be pos or neg, got '" + row.fields[2] + "'");
    }
    try {
      set.add(row.fields[0], static_cast<int>(horizon), *label);
    } catch (const Error& e) {
      throw Error(e.kind(), where + e.what());
    }
  }
  return set;
}

PredictionSet PredictionSet::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

void PredictionSet::write(std::ostream& out) const {
  out << "sample_id,horizon,prediction\n";
  for (const auto& [key, label] : predictions_) {
    out << csv::escape(key.first) << ',' << key.second << ',' << to_string(label) << '\n';
  }
}

}  // namespace finconsist

// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include "finconsist/error.hpp"

#include <algorithm>

namespace finconsist {
namespace {

std::string describe_missing(const std::vector<std::string>& ids) {
  constexpr std::size_t kShown = 10;
  std::string msg = "incomplete predictions: " + std::to_string(ids.size()) + " missing";
  msg += ids.size() > kShown ? " (first 10: " : " (";
  for (std::size_t i = 0; i < std::min(kShown, ids.size()); ++i) {
    if (i) msg += ", ";
    msg += ids[i];
  }
  msg += ")";
  return msg;
}

std::vector<std::string> sorted_unique(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "io";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kDuplicateId: return "duplicate-id";
    case ErrorKind::kUnknownTicker: return "unknown-ticker";
    case ErrorKind::kInsufficientPriceData: return "insufficient-price-data";
    case ErrorKind::kTooFewSamples: return "too-few-samples";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kUnknownSector: return "unknown-sector";
    case ErrorKind::kLexiconConflict: return "lexicon-conflict";
    case ErrorKind::kIncompletePredictions: return "incomplete-predictions";
    case ErrorKind::kEmptyMatrix: return "empty-matrix";
    case ErrorKind::kLengthMismatch: return "length-mismatch";
    case ErrorKind::kZeroVariance: return "zero-variance";
    case ErrorKind::kUnpairedContext: return "unpaired-context";
    case ErrorKind::kEmptyCandidates: return "empty-candidates";
    case ErrorKind::kEmptyLedger: return "empty-ledger";
    case ErrorKind::kZeroVolatility: return "zero-volatility";
  }
  return "unknown";
}

IncompletePredictionsError::IncompletePredictionsError(std::vector<std::string> missing)
    : Error(ErrorKind::kIncompletePredictions, describe_missing(sorted_unique(missing))),
      missing_(sorted_unique(std::move(missing))) {}

}  // namespace finconsist

// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace finconsist {

enum class ErrorKind {
  kIo,
  kParse,
  kDuplicateId,
  kUnknownTicker,
  kInsufficientPriceData,
  kTooFewSamples,
  kInvalidArgument,
  kUnknownSector,
  kLexiconConflict,
  kIncompletePredictions,
  kEmptyMatrix,
  kLengthMismatch,
  kZeroVariance,
  kUnpairedContext,
  kEmptyCandidates,
  kEmptyLedger,
  kZeroVolatility,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind is stable and machine
/// checkable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when predictions do not cover every sample a computation needs.
/// `missing()` is sorted and de-duplicated.
class IncompletePredictionsError : public Error {
 public:
  explicit IncompletePredictionsError(std::vector<std::string> missing);

  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  std::vector<std::string> missing_;
};

}  // namespace finconsist

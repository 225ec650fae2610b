// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace finconsist::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source file
  std::vector<std::string> fields;
};

/// Reads a comma-separated file whose first line must equal `header`
/// (field for field, surrounding whitespace ignored). Double-quoted fields
/// are supported; blank lines are skipped. Throws Error(kIo / kParse).
std::vector<Row> read(const std::filesystem::path& path,
                      std::span<const std::string_view> header);

/// Same as read() over in-memory text; `source` names it in diagnostics.
std::vector<Row> parse(std::string_view text, std::string_view source,
                       std::span<const std::string_view> header);

/// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

/// Strict decimal parse of the whole string; nullopt-like failure via bool.
bool parse_double(std::string_view text, double& out);

}  // namespace finconsist::csv

// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include "finconsist/csv.hpp"

#include <charconv>
#include <cmath>

#include "finconsist/error.hpp"
#include "finconsist/io.hpp"

namespace finconsist::csv {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(std::string_view line, std::string_view source,
                                      std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(c);
    }
  }
  if (quoted) {
    throw Error(ErrorKind::kParse, std::string(source) + ":" + std::to_string(line_no) +
                                       ": unterminated quoted field");
  }
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return fields;
}

}  // namespace

std::vector<Row> parse(std::string_view text, std::string_view source,
                       std::span<const std::string_view> header) {
  std::vector<Row> rows;
  std::size_t line_no = 0;
  bool seen_header = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                     : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line, source, line_no);
    if (!seen_header) {
      bool ok = fields.size() == header.size();
      for (std::size_t i = 0; ok && i < header.size(); ++i) ok = fields[i] == header[i];
      if (!ok) {
        std::string expected;
        for (std::size_t i = 0; i < header.size(); ++i) {
          if (i) expected += ',';
          expected += header[i];
        }
        throw Error(ErrorKind::kParse, std::string(source) + ":" + std::to_string(line_no) +
                                           ": expected header '" + expected + "'");
      }
      seen_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::kParse,
                  std::string(source) + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    rows.push_back(Row{line_no, std::move(fields)});
  }
  if (!seen_header) {
    throw Error(ErrorKind::kParse, std::string(source) + ": missing header line");
  }
  return rows;
}

std::vector<Row> read(const std::filesystem::path& path,
                      std::span<const std::string_view> header) {
  return parse(read_file(path), path.string(), header);
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size() && std::isfinite(out);
}

}  // namespace finconsist::csv

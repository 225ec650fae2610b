// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "finconsist/error.hpp"
#include "finconsist/io.hpp"
#include "finconsist/hash.hpp"
#include "finconsist/transform.hpp"

namespace finconsist {
namespace {


std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::vector<std::string> phrase_tokens(std::string_view phrase) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : phrase) {
    if (c == ' ' || c == '\t') {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

// At least two letters, so UPPER and Capitalized casings stay distinguishable.
bool valid_token(std::string_view token) {
  if (std::count_if(token.begin(), token.end(),
                    [](char c) { return std::isalpha(static_cast<unsigned char>(c)); }) < 2) {
    return false;
  }
  if (!std::isalnum(static_cast<unsigned char>(token.front())) ||
      !std::isalnum(static_cast<unsigned char>(token.back()))) {
    return false;
  }
  return std::all_of(token.begin(), token.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-';
  });
}

// Splits each non-comment line on its first tab.
std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> read_tsv(
    std::string_view text, std::string_view source) {
  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    auto line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorKind::kParse, std::string(source) + ":" + std::to_string(line_no) +
                                         ": expected two tab-separated columns");
    }
    const auto left = trim(line.substr(0, tab));
    const auto right = trim(line.substr(tab + 1));
    if (left.empty() || right.empty() || right.find('\t') != std::string_view::npos) {
      throw Error(ErrorKind::kParse, std::string(source) + ":" + std::to_string(line_no) +
                                         ": expected two non-empty tab-separated columns");
    }
    rows.push_back({line_no, {std::string(left), std::string(right)}});
  }
  return rows;
}

}  // namespace

AntonymLexicon AntonymLexicon::from_pairs(
    std::span<const std::pair<std::string, std::string>> pairs) {
  AntonymLexicon lex;
  auto add = [&lex](std::vector<std::string> pattern, std::vector<std::string> replacement) {
    const auto key = join(pattern);
    if (const auto it = lex.index_.find(key); it != lex.index_.end()) {
      if (lex.rules_[it->second].replacement != replacement) {
        throw Error(ErrorKind::kLexiconConflict,
                    "lexicon conflict: '" + key + "' maps to both '" +
                        join(lex.rules_[it->second].replacement) + "' and '" +
                        join(replacement) + "'");
      }
      return;
    }
    lex.index_.emplace(key, lex.rules_.size());
    lex.rules_.push_back(Rule{std::move(pattern), std::move(replacement)});
  };

  for (const auto& [lhs, rhs] : pairs) {
    auto pattern = phrase_tokens(lhs);
    auto replacement = phrase_tokens(rhs);
    if (pattern.empty() || pattern.size() > 2) {
      throw Error(ErrorKind::kLexiconConflict,
                  "lexicon rule '" + lhs + "' must have one or two tokens");
    }
    if (pattern.size() != replacement.size()) {
      throw Error(ErrorKind::kLexiconConflict,
                  "lexicon rule '" + lhs + "' -> '" + rhs + "' changes the token count");
    }
    for (const auto* side : {&pattern, &replacement}) {
      for (const auto& token : *side) {
        if (!valid_token(token)) {
          throw Error(ErrorKind::kLexiconConflict,
                      "lexicon token '" + token +
                          "' must be a word with at least two letters");
        }
      }
    }
    if (pattern == replacement) {
      throw Error(ErrorKind::kLexiconConflict, "lexicon rule '" + lhs + "' maps to itself");
    }
    add(pattern, replacement);
    add(replacement, pattern);
  }
  return lex;
}

AntonymLexicon AntonymLexicon::parse(std::string_view text, std::string_view source) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto& [line, pair] : read_tsv(text, source)) pairs.push_back(std::move(pair));
  try {
    return from_pairs(pairs);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(source) + ": " + e.what());
  }
}

AntonymLexicon AntonymLexicon::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

const AntonymLexicon& AntonymLexicon::builtin() {
  static const AntonymLexicon lexicon = [] {
    const std::vector<std::pair<std::string, std::string>> pairs{
        {"more than", "less than"},
        {"better than", "worse than"},
        {"above expectations", "below expectations"},
        {"increased", "decreased"},
        {"increase", "decrease"},
        {"increases", "decreases"},
        {"increasing", "decreasing"},
        {"up", "down"},
        {"rise", "fall"},
        {"rises", "falls"},
        {"rising", "falling"},
        {"rose", "fell"},
        {"growth", "decline"},
        {"gain", "loss"},
        {"gains", "losses"},
        {"higher", "lower"},
        {"positive", "negative"},
        {"strong", "weak"},
        {"stronger", "weaker"},
        {"improved", "worsened"},
        {"improve", "worsen"},
        {"improving", "worsening"},
        {"exceeded", "missed"},
    };
    return from_pairs(pairs);
  }();
  return lexicon;
}

const std::vector<std::string>* AntonymLexicon::find(std::string_view phrase) const {
  const auto it = index_.find(std::string(phrase));
  return it == index_.end() ? nullptr : &rules_[it->second].replacement;
}

std::string AntonymLexicon::canonical_text() const {
  std::string out;
  for (const auto& rule : rules_) {
    out += join(rule.pattern);
    out += '\t';
    out += join(rule.replacement);
    out += '\n';
  }
  return out;
}

std::string AntonymLexicon::fingerprint() const { return sha256_hex(canonical_text()); }

SectorMap::SectorMap(std::map<std::string, std::string> entries) {
  for (auto& [sector, company] : entries) {
    if (sector.empty() || company.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "sector map entries must be non-empty");
    }
    entries_.emplace(sector, std::move(company));
  }
}

SectorMap SectorMap::parse(std::string_view text, std::string_view source) {
  std::map<std::string, std::string> entries;
  for (auto& [line, pair] : read_tsv(text, source)) {
    if (!entries.emplace(pair.first, pair.second).second) {
      throw Error(ErrorKind::kParse, std::string(source) + ":" + std::to_string(line) +
                                         ": sector '" + pair.first + "' listed twice");
    }
  }
  return SectorMap(std::move(entries));
}

SectorMap SectorMap::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

const SectorMap& SectorMap::builtin() {
  static const SectorMap map(std::map<std::string, std::string>{
      {"Consumer Discretionary", "Amazon.com, Inc."},
      {"Consumer Staples", "Walmart Inc."},
      {"Energy", "Exxon Mobil Corporation"},
      {"Financials", "Berkshire Hathaway Inc."},
      {"Health Care", "Johnson & Johnson"},
      {"Industrials", "General Electric Company"},
      {"Information Technology", "Apple Inc."},
      {"Materials", "DowDuPont Inc."},
      {"Real Estate", "American Tower Corporation"},
      {"Telecommunication Services", "AT&T Inc."},
      {"Utilities", "NextEra Energy, Inc."},
  });
  return map;
}

const std::string& SectorMap::company_for(std::string_view sector) const {
  const auto it = entries_.find(sector);
  if (it == entries_.end()) {
    throw Error(ErrorKind::kUnknownSector,
                "sector '" + std::string(sector) + "' has no entry in the sector map");
  }
  return it->second;
}

bool SectorMap::contains(std::string_view sector) const {
  return entries_.find(sector) != entries_.end();
}

}  // namespace finconsist

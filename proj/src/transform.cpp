// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

#include "finconsist/transform.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>

#include "finconsist/error.hpp"

namespace finconsist {
namespace {

struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u);
}

// Maximal runs of letters/digits (and UTF-8 bytes); an apostrophe or
// hyphen continues a word only when another word character follows it, so
// "we're" and "up-to-date" are single tokens.
std::vector<TokenSpan> word_tokens(std::string_view text) {
  std::vector<TokenSpan> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_byte(text[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < text.size()) {
      if (is_word_byte(text[i])) {
        ++i;
      } else if ((text[i] == '\'' || text[i] == '-') && i + 1 < text.size() &&
                 is_word_byte(text[i + 1])) {
        i += 2;
      } else {
        break;
      }
    }
    tokens.push_back({begin, i});
  }
  return tokens;
}

enum class Casing { kLower, kCapitalized, kUpper, kOther };

Casing classify(std::string_view token) {
  std::size_t upper = 0;
  std::size_t lower = 0;
  for (char c : token) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isupper(u)) ++upper;
    if (std::islower(u)) ++lower;
  }
  if (upper == 0) return Casing::kLower;
  if (upper == 1 && std::isupper(static_cast<unsigned char>(token.front()))) {
    return Casing::kCapitalized;
  }
  if (lower == 0) return Casing::kUpper;
  return Casing::kOther;
}

std::string apply_casing(std::string_view lower_token, Casing casing) {
  std::string out(lower_token);
  if (casing == Casing::kUpper) {
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  } else if (casing == Casing::kCapitalized && !out.empty()) {
    out.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(out.front())));
  }
  return out;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool only_blanks(std::string_view s) {
  return !s.empty() && s.find_first_not_of(" \t") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Comma positions outside brackets, double quotes and digit groups.
std::vector<std::size_t> top_level_commas(std::string_view text) {
  std::vector<std::size_t> commas;
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '"') {
      quoted = !quoted;
    } else if (quoted) {
      continue;
    } else if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      depth = std::max(0, depth - 1);
    } else if (c == ',' && depth == 0) {
      const bool digit_group = i > 0 && i + 1 < text.size() && is_digit(text[i - 1]) &&
                               is_digit(text[i + 1]);
      if (!digit_group) commas.push_back(i);
    }
  }
  return commas;
}

}  // namespace

std::string negate_sentence(std::string_view sentence, const AntonymLexicon& lexicon,
                            std::size_t* substitutions) {
  const auto tokens = word_tokens(sentence);
  std::string out;
  out.reserve(sentence.size() + 8);
  std::size_t copied = 0;
  std::size_t count = 0;

  auto token_text = [&](std::size_t i) {
    return sentence.substr(tokens[i].begin, tokens[i].end - tokens[i].begin);
  };
  auto emit = [&](std::size_t i, const std::string& replacement_token) {
    out.append(sentence.substr(copied, tokens[i].begin - copied));
    out += apply_casing(replacement_token, classify(token_text(i)));
    copied = tokens[i].end;
  };

  for (std::size_t i = 0; i < tokens.size();) {
    const auto first = token_text(i);
    const auto first_casing = classify(first);
    if (first_casing == Casing::kOther) {
      ++i;
      continue;
    }
    if (i + 1 < tokens.size() &&
        only_blanks(sentence.substr(tokens[i].end, tokens[i + 1].begin - tokens[i].end)) &&
        classify(token_text(i + 1)) != Casing::kOther) {
      const auto phrase = lowercase(first) + " " + lowercase(token_text(i + 1));
      if (const auto* replacement = lexicon.find(phrase); replacement != nullptr) {
        emit(i, (*replacement)[0]);
        emit(i + 1, (*replacement)[1]);
        ++count;
        i += 2;
        continue;
      }
    }
    if (const auto* replacement = lexicon.find(lowercase(first)); replacement != nullptr) {
      emit(i, (*replacement)[0]);
      ++count;
    }
    ++i;
  }
  out.append(sentence.substr(copied));
  if (substitutions != nullptr) *substitutions = count;
  return out;
}

NegationResult negate(std::span<const std::string> sentences, const AntonymLexicon& lexicon) {
  NegationResult result;
  result.sentences.reserve(sentences.size());
  for (const auto& s : sentences) {
    std::size_t n = 0;
    result.sentences.push_back(negate_sentence(s, lexicon, &n));
    result.substitutions += n;
  }
  return result;
}

std::string symmetrize(std::string_view sentence, const ProtectedTokens& protect) {
  auto body = trim(sentence);
  std::size_t terminal = body.size();
  while (terminal > 0 && (body[terminal - 1] == '.' || body[terminal - 1] == '!' ||
                          body[terminal - 1] == '?')) {
    --terminal;
  }
  const auto punctuation = body.substr(terminal);
  body = body.substr(0, terminal);

  const auto commas = top_level_commas(body);
  if (commas.empty()) return std::string(sentence);

  std::vector<std::string> segments;
  std::size_t start = 0;
  for (const auto comma : commas) {
    segments.emplace_back(trim(body.substr(start, comma - start)));
    start = comma + 1;
  }
  segments.emplace_back(trim(body.substr(start)));
  if (std::any_of(segments.begin(), segments.end(),
                  [](const std::string& s) { return s.empty(); })) {
    return std::string(sentence);
  }

  const bool capitalized_head = std::isupper(static_cast<unsigned char>(segments.front()[0]));
  std::rotate(segments.rbegin(), segments.rbegin() + 1, segments.rend());

  if (capitalized_head) {
    auto& old_head = segments[1];
    const auto tokens = word_tokens(old_head);
    if (!tokens.empty() && tokens.front().begin == 0) {
      const std::string_view word(old_head.data(), tokens.front().end);
      if (word.size() >= 2 && classify(word) == Casing::kCapitalized &&
          protect.find(word) == protect.end()) {
        old_head[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(old_head[0])));
      }
    }
    auto& new_head = segments.front();
    if (std::islower(static_cast<unsigned char>(new_head[0]))) {
      new_head[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(new_head[0])));
    }
  }

  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) out += ", ";
    out += segments[i];
  }
  out += punctuation;
  return out;
}

std::string transitivize_sentence(std::string_view sentence, std::string_view company,
                                  std::size_t* replacements) {
  std::string out;
  std::size_t copied = 0;
  std::size_t count = 0;
  for (const auto& token : word_tokens(sentence)) {
    const auto word = lowercase(sentence.substr(token.begin, token.end - token.begin));
    if (word != "we" && word != "our") continue;
    out.append(sentence.substr(copied, token.begin - copied));
    out += company;
    if (word == "our") out += "'s";
    copied = token.end;
    ++count;
  }
  out.append(sentence.substr(copied));
  if (replacements != nullptr) *replacements = count;
  return out;
}

std::vector<std::string> transitivize(std::span<const std::string> sentences,
                                      std::string_view sector, const SectorMap& map) {
  const auto& company = map.company_for(sector);
  std::vector<std::string> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(transitivize_sentence(s, company));
  return out;
}

AdditivePairing additive_partner(const LabeledSample& sample,
                                 std::span<const LabeledSample> pool) {
  const LabeledSample* best = nullptr;
  int best_distance = std::numeric_limits<int>::max();
  for (const auto& candidate : pool) {
    if (candidate.horizon != sample.horizon || candidate.label != sample.label ||
        candidate.transcript_id == sample.transcript_id) {
      continue;
    }
    const int distance = std::abs(days_between(sample.call_date, candidate.call_date));
    if (best == nullptr || distance < best_distance ||
        (distance == best_distance && candidate.transcript_id < best->transcript_id)) {
      best = &candidate;
      best_distance = distance;
    }
  }
  if (best == nullptr) return {sample.transcript_id, true};
  return {best->transcript_id, false};
}

std::string_view code(VariantKind kind) {
  switch (kind) {
    case VariantKind::kNegation: return "N";
    case VariantKind::kSymmetric: return "S";
    case VariantKind::kAdditive: return "A";
    case VariantKind::kTransitive: return "T";
  }
  return "?";
}

std::optional<VariantKind> parse_variant_kind(std::string_view text) {
  for (const auto kind : kVariantKinds) {
    if (code(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(Relation relation) {
  return relation == Relation::kFlipped ? "flipped" : "same";
}

std::string variant_id(std::string_view parent_id, VariantKind kind,
                       std::optional<int> horizon) {
  std::string id(parent_id);
  id += '#';
  id += code(kind);
  if (horizon) id += "#h" + std::to_string(*horizon);
  return id;
}

}  // namespace finconsist

// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

// The four logical-consistency rewrites (negation, symmetric, additive,
// transitive) and assembly of the consistency suite from a test split.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "finconsist/corpus.hpp"

namespace finconsist {

/// Antonym substitution rules over one- and two-token phrases. Always
/// involutive: every rule a -> b has its reverse b -> a.
class AntonymLexicon {
 public:
  struct Rule {
    std::vector<std::string> pattern;      // lowercase tokens
    std::vector<std::string> replacement;  // same token count
  };

  AntonymLexicon() = default;

  /// Adds the reverse of every pair. Throws kLexiconConflict when a phrase
  /// would map to two different replacements, maps to itself, or the two
  /// sides differ in token count.
  static AntonymLexicon from_pairs(
      std::span<const std::pair<std::string, std::string>> pairs);

  /// `pattern<TAB>replacement` per line, `#` starts a comment.
  static AntonymLexicon parse(std::string_view text, std::string_view source);
  static AntonymLexicon load(const std::filesystem::path& path);

  /// The shipped default rule base.
  static const AntonymLexicon& builtin();

  const std::vector<Rule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

  /// Replacement for a lowercase phrase whose tokens are joined by single
  /// spaces, or nullptr.
  const std::vector<std::string>* find(std::string_view phrase) const;

  /// One `pattern<TAB>replacement` line per rule, forward rules in input
  /// order each followed by its reverse.
  std::string canonical_text() const;

  /// SHA-256 of canonical_text(); independent of comments and layout.
  std::string fingerprint() const;

 private:
  std::vector<Rule> rules_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Sector name -> display name of the sector's top-valued company.
class SectorMap {
 public:
  SectorMap() = default;
  explicit SectorMap(std::map<std::string, std::string> entries);

  /// `sector<TAB>company_display_name` per line, `#` comments.
  static SectorMap parse(std::string_view text, std::string_view source);
  static SectorMap load(const std::filesystem::path& path);

  /// Eleven GICS sectors mapped to their largest S&P 500 constituent
  /// around 2017.
  static const SectorMap& builtin();

  /// Throws kUnknownSector.
  const std::string& company_for(std::string_view sector) const;
  bool contains(std::string_view sector) const;
  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

struct NegationResult {
  std::vector<std::string> sentences;
  std::size_t substitutions = 0;
};

/// Single left-to-right pass per sentence; two-token rules are tried before
/// one-token rules at each position. Only tokens cased as lower,
/// Capitalized or UPPER are matched, and the replacement takes the same
/// casing, so negate(negate(s)) == s.
std::string negate_sentence(std::string_view sentence, const AntonymLexicon& lexicon,
                            std::size_t* substitutions = nullptr);
NegationResult negate(std::span<const std::string> sentences, const AntonymLexicon& lexicon);

/// Words that keep their capital when a sentence head moves into the
/// middle. Single letters and words with two or more capitals are always
/// protected.
using ProtectedTokens = std::set<std::string, std::less<>>;

/// Rotates the top-level comma segments of a sentence by one (last segment
/// first). Commas inside brackets, quotes or digit groups ("1,000") do not
/// split. Terminal punctuation stays at the end.
std::string symmetrize(std::string_view sentence, const ProtectedTokens& protect = {});

/// Whole-word, case-insensitive: "we" -> company, "our" -> company + "'s".
std::string transitivize_sentence(std::string_view sentence, std::string_view company,
                                  std::size_t* replacements = nullptr);
std::vector<std::string> transitivize(std::span<const std::string> sentences,
                                      std::string_view sector, const SectorMap& map);

struct AdditivePairing {
  std::string partner_id;
  bool self_pair = false;
};

/// Same-label pool sample (other than `sample`) closest in call date; ties
/// go to the smaller id. Falls back to `sample` itself with self_pair set.
/// Only pool entries at sample.horizon are considered.
AdditivePairing additive_partner(const LabeledSample& sample,
                                 std::span<const LabeledSample> pool);

enum class VariantKind { kNegation, kSymmetric, kAdditive, kTransitive };
inline constexpr std::array<VariantKind, 4> kVariantKinds{
    VariantKind::kNegation, VariantKind::kSymmetric, VariantKind::kAdditive,
    VariantKind::kTransitive};

/// "N", "S", "A", "T".
std::string_view code(VariantKind kind);
std::optional<VariantKind> parse_variant_kind(std::string_view code);

enum class Relation { kSame, kFlipped };
std::string_view to_string(Relation relation);

constexpr Relation relation_for(VariantKind kind) {
  return kind == VariantKind::kNegation ? Relation::kFlipped : Relation::kSame;
}

/// `<parent>#<N|S|A|T>` plus `#h<horizon>` for additive variants.
std::string variant_id(std::string_view parent_id, VariantKind kind,
                       std::optional<int> horizon = std::nullopt);

struct SuiteOriginal {
  Transcript transcript;
  std::map<int, Label> gold;  // horizon -> label
};

struct VariantSample {
  Transcript transcript;  // id is the variant id; text is transformed
  std::string parent_id;
  VariantKind kind = VariantKind::kNegation;
  std::optional<int> horizon;  // additive variants only
  Relation expected_relation = Relation::kSame;
  std::map<int, Label> gold;
  std::string partner_id;  // additive variants only
  std::size_t substitutions = 0;
  bool zero_substitution = false;
  bool self_pair = false;

  const std::string& id() const { return transcript.id; }
};

struct ConsistencySuite {
  std::vector<int> horizons;
  std::vector<SuiteOriginal> originals;
  std::vector<VariantSample> variants;
  std::string lexicon_fingerprint;

  /// nullptr when absent.
  const VariantSample* find(std::string_view parent_id, VariantKind kind,
                            std::optional<int> horizon = std::nullopt) const;

  /// Rebuilds the index behind find(); call after editing `variants`.
  void reindex();

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

struct SuiteOptions {
  unsigned threads = 1;
  ProtectedTokens protected_tokens;
};

/// Per test transcript: one negation, one symmetric and one transitive
/// variant, plus one additive variant per horizon. `labels` must hold a
/// sample for every (test transcript, horizon).
ConsistencySuite build_suite(std::span<const Transcript> test_set,
                             std::span<const LabeledSample> labels,
                             std::span<const int> horizons, const AntonymLexicon& lexicon,
                             const SectorMap& sector_map, const SuiteOptions& options = {});

/// Writes `originals.jsonl` and `variants.jsonl` under `dir`.
void write_suite(const std::filesystem::path& dir, const ConsistencySuite& suite);

/// Reads what write_suite() wrote, plus the lexicon fingerprint from
/// `manifest.json` when present.
ConsistencySuite load_suite(const std::filesystem::path& dir);

}  // namespace finconsist

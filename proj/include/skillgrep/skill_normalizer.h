// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Skill surface normalization, lexicon lemmatization, frequency filtering and
// the lemma dictionary that maps every observed skill form to its lemma.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skillgrep/corpus.h"

namespace skillgrep {

struct SkillForms {
  std::string original;    // lowercased, trimmed surface
  std::string normalized;  // after pattern substitutions

  bool operator==(const SkillForms&) const = default;
};

// Token-level rewrite rules shared by skills and descriptions. `token` must
// be lowercase and contain no whitespace. Never returns an empty vector for a
// non-empty token.
//   "&" / "+"           -> "and" (standalone, or between two alphanumerics),
//                          except the literal token "r&d"
//   letter-dash-word    -> dash removed ("e-mail" -> "email")
//   other intra-word    -> dash split into its own token ("full-stack" ->
//   dashes                 "full", "-", "stack")
std::vector<std::string> normalize_token(std::string_view token);

// Throws Error(kEmptySkill) when `surface` is blank.
SkillForms normalize_skill(std::string_view surface);

// A description after the skill normalization schema. Each normalized token
// remembers which raw token it came from, so matches can be reported in the
// form that actually appeared in the text.
struct NormalizedText {
  std::vector<std::string> raw;         // lowercased, edge punctuation removed
  std::vector<std::string> tokens;      // normalized tokens
  std::vector<std::size_t> origin;      // tokens[i] came from raw[origin[i]]

  std::string joined() const;
};

NormalizedText normalize_description(std::string_view description);

class LemmaLexicon {
 public:
  LemmaLexicon() = default;
  explicit LemmaLexicon(std::map<std::string, std::string> entries);

  // TSV: surface_ngram<TAB>lemma_ngram, '#' comments.
  static LemmaLexicon load(const std::filesystem::path& path);

  std::optional<std::string> lookup(std::string_view ngram) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string, std::less<>> index_;
  std::map<std::string, std::string> entries_;
};

// Longest-match-first (3 -> 1 words) replacement of ngrams of the normalized
// form by their lexicon lemma; unmatched words are kept.
std::string lemmatize_skill(const SkillForms& forms, const LemmaLexicon& lexicon);

// Minimum co-occurrence count per skill word count.
class SkillThresholds {
 public:
  // max(2, ceil(8 / n)).
  static SkillThresholds defaults();
  static SkillThresholds uniform(std::uint64_t minimum);
  // "1:8,2:4,3:3" style. Word counts beyond the largest listed use the value
  // of the largest listed one.
  static SkillThresholds parse(std::string_view spec);

  std::uint64_t minimum(std::uint32_t word_count) const;

 private:
  std::vector<std::uint64_t> per_word_count_;  // index n-1
};

std::vector<RawSkillEntry> filter_skills(std::span<const RawSkillEntry> entries,
                                         const SkillThresholds& thresholds);

class SkillStoplist {
 public:
  SkillStoplist() = default;
  explicit SkillStoplist(std::set<std::string> terms);

  // One lemma per line, '#' comments.
  static SkillStoplist load(const std::filesystem::path& path);

  bool contains(std::string_view lemma) const;
  void add(const std::string& lemma) { terms_.insert(lemma); }
  const std::set<std::string, std::less<>>& terms() const { return terms_; }

 private:
  std::set<std::string, std::less<>> terms_;
};

// The `n` lemmas with the largest summed co-occurrence count (ties broken by
// lemma), the automatic alternative to a curated stoplist.
std::vector<std::string> most_frequent_lemmas(
    std::span<const RawSkillEntry> entries, const LemmaLexicon& lexicon,
    std::size_t n);

class LemmaDictionary {
 public:
  LemmaDictionary() = default;
  LemmaDictionary(std::map<std::string, std::string> forms_to_lemma,
                  std::set<std::string> lemma_set);

  std::optional<std::string> lemma_for(std::string_view form) const;

  // Resolves free text typed by a user: tries the lowercased surface, then its
  // normalized form.
  std::optional<std::string> resolve(std::string_view skill) const;

  bool has_lemma(std::string_view lemma) const {
    return lemma_set_.contains(lemma);
  }
  const std::map<std::string, std::string, std::less<>>& forms_to_lemma() const {
    return forms_to_lemma_;
  }
  const std::set<std::string, std::less<>>& lemma_set() const {
    return lemma_set_;
  }

  bool operator==(const LemmaDictionary&) const = default;

 private:
  std::map<std::string, std::string, std::less<>> forms_to_lemma_;
  std::set<std::string, std::less<>> lemma_set_;
};

// Key collisions keep the lemma whose entry has the larger co-occurrence count;
// equal counts keep the lexicographically smaller lemma.
LemmaDictionary build_lemma_dictionary(std::span<const RawSkillEntry> entries,
                                       const LemmaLexicon& lexicon,
                                       const SkillStoplist& stoplist);

void save_dictionary(const LemmaDictionary& dict,
                     const std::filesystem::path& path);
LemmaDictionary load_dictionary(const std::filesystem::path& path);

}  // namespace skillgrep

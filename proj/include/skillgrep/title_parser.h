// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Job-title normalization, management-level / department classification and
// title ngram generation.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skillgrep {

// Ordered by seniority so that std::max picks the most senior level.
enum class ManagementLevel : std::uint8_t {
  kNonManager = 0,
  kManager = 1,
  kDirector = 2,
  kVpLevel = 3,
  kCLevel = 4,
};

std::string_view level_name(ManagementLevel level);
std::optional<ManagementLevel> parse_level(std::string_view name);

enum class Department : std::uint8_t {
  kAdministrative,
  kComputingIt,
  kEngineering,
  kEducator,
  kFinance,
  kHr,
  kMarketing,
  kSales,
  kOperations,
  kLegal,
  kMedical,
  kOther,
};

using DepartmentSet = std::set<Department>;

std::string_view department_name(Department department);
// Case-insensitive; also accepts a few common spellings ("it",
// "human resources").
std::optional<Department> parse_department(std::string_view name);

using WordSet = std::set<std::string, std::less<>>;

// One word per line, '#' comments.
WordSet load_word_set(const std::filesystem::path& path);

struct NormalizedTitle {
  std::string text;
  std::set<std::string> acronym_variants;

  bool operator==(const NormalizedTitle&) const = default;
};

class TitleNormalizer {
 public:
  TitleNormalizer() = default;
  TitleNormalizer(std::map<std::string, std::string> substitutions,
                  std::set<std::string> acronyms);

  // Substitutions: TSV ngram<TAB>replacement. Acronyms: one token per line.
  static TitleNormalizer load(const std::filesystem::path& substitutions,
                              const std::filesystem::path& acronyms);

  // Character cleanup, level-tail stripping, ngram substitution, then dotted
  // acronym variants. Throws Error(kEmptyTitle) if nothing is left.
  NormalizedTitle normalize(std::string_view raw) const;

 private:
  std::map<std::string, std::string, std::less<>> substitutions_;
  std::set<std::string, std::less<>> acronyms_;
  std::size_t max_substitution_words_ = 0;
};

class TitleTaxonomy {
 public:
  struct Row {
    std::optional<ManagementLevel> level;
    DepartmentSet departments;
  };

  TitleTaxonomy() = default;
  explicit TitleTaxonomy(std::map<std::string, Row> rows);

  // CSV: ngram,level,departments (departments ';'-separated). Either of the
  // last two columns may be empty.
  static TitleTaxonomy load(const std::filesystem::path& path);

  const Row* find(std::string_view ngram) const;
  std::size_t max_words() const { return max_words_; }
  std::size_t size() const { return rows_.size(); }

 private:
  std::map<std::string, Row, std::less<>> rows_;
  std::size_t max_words_ = 0;
};

struct TitleClass {
  ManagementLevel level = ManagementLevel::kNonManager;
  DepartmentSet departments;

  bool operator==(const TitleClass&) const = default;
};

// Most senior matched level (default Non-Manager); union of matched
// departments, {Other} when nothing matched.
TitleClass parse_title(const NormalizedTitle& title,
                       const TitleTaxonomy& taxonomy);

// Title words with punctuation removed, in order.
std::vector<std::string> title_words(std::string_view normalized_text);

struct TitleVocabulary {
  std::map<std::string, std::uint64_t> unigrams;
  std::map<std::string, std::uint64_t> bigrams;

  bool has_unigram(const std::string& w) const { return unigrams.contains(w); }
  bool has_bigram(const std::string& b) const { return bigrams.contains(b); }
  bool operator==(const TitleVocabulary&) const = default;
};

// Grams whose corpus occurrence count reaches `min_freq` and that contain no
// stopword. Throws Error(kDomainError) when min_freq is 0.
TitleVocabulary build_title_vocab(std::span<const NormalizedTitle> titles,
                                  std::uint64_t min_freq,
                                  const WordSet& stopwords);

using TitleNgramSet = std::set<std::string>;

TitleNgramSet generate_title_ngrams(const NormalizedTitle& title,
                                    const TitleVocabulary& vocab,
                                    const WordSet& stopwords);

}  // namespace skillgrep

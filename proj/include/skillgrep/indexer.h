// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Bag-of-skills extraction, document frequencies, LTU term weighting and the
// per-posting index.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skillgrep/company_resolver.h"
#include "skillgrep/corpus.h"
#include "skillgrep/skill_normalizer.h"
#include "skillgrep/title_parser.h"

namespace skillgrep {

struct SkillCount {
  std::uint64_t total_count = 0;
  std::map<std::string, std::uint64_t> form_counts;

  bool operator==(const SkillCount&) const = default;
};

// lemma -> counts
using BagOfSkills = std::map<std::string, SkillCount>;

std::uint64_t doc_length(const BagOfSkills& bag);

// Longest-match-first, non-overlapping matcher over dictionary keys. Keys are
// compared in normalized form; hits are credited to the surface form that
// appeared in the text when that form is itself a dictionary key.
class SkillMatcher {
 public:
  explicit SkillMatcher(const LemmaDictionary& dict);

  BagOfSkills count(const NormalizedText& text) const;

 private:
  struct Target {
    std::string lemma;
    std::string key;  // dictionary key the entry came from
  };
  const LemmaDictionary* dict_;
  std::map<std::string, Target, std::less<>> by_normalized_;
  std::size_t max_words_ = 0;
};

BagOfSkills generate_bow(std::string_view description, const LemmaDictionary& dict);

struct IndexStats {
  std::uint64_t n_docs = 0;
  double avg_doc_len = 0.0;
  std::uint32_t min_df = 1;
  std::map<std::string, std::uint64_t> df;

  bool operator==(const IndexStats&) const = default;
};

struct DocumentFrequencies {
  IndexStats stats;
  std::vector<std::size_t> retained;  // positions in the input that survived
  std::vector<BagOfSkills> bags;      // filtered bags, parallel to `retained`
};

// Drops lemmas with df < min_df from every bag, then drops documents left
// with zero length. Throws Error(kDomainError) for min_df == 0 and
// Error(kEmptyCorpus) when no document survives.
DocumentFrequencies compute_document_frequencies(std::vector<BagOfSkills> bags,
                                                 std::uint32_t min_df);

// (log2(tf) + 1) * log2(n_docs / df) / (0.8 + 0.2 * doc_len / avg_doc_len)
// Throws Error(kDomainError) unless tf >= 1, 1 <= df <= n_docs, doc_len >= 1
// and avg_doc_len > 0.
double compute_ltu(std::uint64_t tf, std::uint64_t df, std::uint64_t n_docs,
                   std::uint64_t doc_len, double avg_doc_len);

inline double compute_ltu(std::uint64_t tf, std::uint64_t df,
                          const IndexStats& stats, std::uint64_t doc_len) {
  return compute_ltu(tf, df, stats.n_docs, doc_len, stats.avg_doc_len);
}

// Divides every value by the map's maximum; all-zero maps are returned as is.
std::map<std::string, double> scale_tfidf(const std::map<std::string, double>& ltu);

struct IndexedPosting {
  std::string id;
  std::string title_raw;
  std::string company_name_raw;
  std::optional<std::string> location;
  std::optional<std::string> date_posted;

  std::string normalized_title;  // empty when the title had no usable text
  std::string company_normalized;
  std::string domain;  // empty when unresolved
  double domain_confidence = 0.0;
  TitleNgramSet title_ngrams;
  ManagementLevel level = ManagementLevel::kNonManager;
  DepartmentSet departments;
  std::string description_text;  // normalized description tokens

  std::uint64_t doc_len = 0;
  BagOfSkills bag;
  std::map<std::string, double> ltu;
  std::map<std::string, double> scaled_tfidf;

  // Filled by the weight engine.
  std::map<std::string, double> weights;
  std::map<std::string, double> final_scores;

  bool operator==(const IndexedPosting&) const = default;
};

struct PostingIndex {
  IndexStats stats;
  std::vector<IndexedPosting> postings;
  LemmaDictionary dictionary;
  std::uint64_t build_timestamp = 0;
  bool has_weights = false;

  const IndexedPosting* find(std::string_view id) const;

  bool operator==(const PostingIndex&) const = default;
};

// Everything the build needs besides the corpus.
struct IndexResources {
  const LemmaDictionary& dictionary;
  const TitleNormalizer& title_normalizer;
  const TitleTaxonomy& taxonomy;
  const WordSet& title_stopwords;
  const CompanyNameNormalizer& company_normalizer;
  const AliasTable& aliases;
};

struct BuildOptions {
  std::uint32_t min_df = 2;
  std::uint64_t title_min_freq = 3;
  std::uint64_t build_timestamp = 0;
};

// BOW -> document frequencies -> LTU -> scaling, plus the forward references
// (domain, title ngrams, level, departments). Weights are not attached.
PostingIndex build_index(const Corpus& corpus, const IndexResources& resources,
                         const BuildOptions& options);

}  // namespace skillgrep

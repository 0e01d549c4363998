// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Title-ngram x skill count matrix and the P(skill | ngram) / P(skill) weights.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "skillgrep/indexer.h"

namespace skillgrep {

struct CountMatrix {
  // ngram -> lemma -> summed tf over documents carrying the ngram
  std::map<std::string, std::map<std::string, std::uint64_t>, std::less<>> counts;
  std::map<std::string, std::uint64_t, std::less<>> ngram_totals;
  std::map<std::string, std::uint64_t, std::less<>> global_counts;
  std::uint64_t global_total = 0;

  std::uint64_t count(std::string_view ngram, std::string_view lemma) const;

  bool operator==(const CountMatrix&) const = default;
};

CountMatrix build_count_matrix(const PostingIndex& index);

// (counts[g,l] / ngram_totals[g]) / (global_counts[l] / global_total), 0 when
// counts[g,l] is 0. Throws Error(kDomainError) on a zero denominator.
double skill_weight(std::string_view lemma, std::string_view ngram,
                    const CountMatrix& m);

// Mean skill weight over the posting's title ngrams, per BOW lemma.
// Throws Error(kNoTitleNgrams) when the posting has no title ngrams.
std::map<std::string, double> average_posting_weights(const IndexedPosting& posting,
                                                      const CountMatrix& m);

// weight x scaled_tfidf per lemma.
std::map<std::string, double> final_scores(const IndexedPosting& posting,
                                           const std::map<std::string, double>& weights);

// Fills weights and final_scores for every posting. Postings without title
// ngrams get weight 1.0 for each of their skills.
void attach_weights(PostingIndex& index, const CountMatrix& m);

// Tab-separated "ngram lemma count" rows, for inspection.
std::string count_matrix_tsv(const CountMatrix& m);

}  // namespace skillgrep

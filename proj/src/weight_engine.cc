// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/weight_engine.h"

#include "skillgrep/error.h"

namespace skillgrep {

std::uint64_t CountMatrix::count(std::string_view ngram, std::string_view lemma) const {
  auto row = counts.find(ngram);
  if (row == counts.end()) return 0;
  auto it = row->second.find(std::string(lemma));
  return it == row->second.end() ? 0 : it->second;
}

CountMatrix build_count_matrix(const PostingIndex& index) {
  CountMatrix m;
  for (const auto& doc : index.postings) {
    for (const auto& [lemma, c] : doc.bag) {
      m.global_counts[lemma] += c.total_count;
      m.global_total += c.total_count;
    }
    for (const auto& g : doc.title_ngrams) {
      auto& row = m.counts[g];
      for (const auto& [lemma, c] : doc.bag) {
        row[lemma] += c.total_count;
        m.ngram_totals[g] += c.total_count;
      }
    }
  }
  return m;
}

double skill_weight(std::string_view lemma, std::string_view ngram,
                    const CountMatrix& m) {
  std::uint64_t joint = m.count(ngram, lemma);
  if (joint == 0) return 0.0;
  auto total = m.ngram_totals.find(ngram);
  auto global = m.global_counts.find(lemma);
  if (total == m.ngram_totals.end() || total->second == 0 || m.global_total == 0 ||
      global == m.global_counts.end() || global->second == 0) {
    throw Error(ErrorCode::kDomainError, "skill weight has a zero denominator");
  }
  double conditional =
      static_cast<double>(joint) / static_cast<double>(total->second);
  double prior =
      static_cast<double>(global->second) / static_cast<double>(m.global_total);
  return conditional / prior;
}

std::map<std::string, double> average_posting_weights(const IndexedPosting& posting,
                                                      const CountMatrix& m) {
  if (posting.title_ngrams.empty()) {
    throw Error(ErrorCode::kNoTitleNgrams, "posting " + posting.id + " has no title ngrams");
  }
  std::map<std::string, double> out;
  const double n = static_cast<double>(posting.title_ngrams.size());
  for (const auto& [lemma, c] : posting.bag) {
    double sum = 0.0;
    for (const auto& g : posting.title_ngrams) sum += skill_weight(lemma, g, m);
    out[lemma] = sum / n;
  }
  return out;
}

std::map<std::string, double> final_scores(const IndexedPosting& posting,
                                           const std::map<std::string, double>& weights) {
  std::map<std::string, double> out;
  for (const auto& [lemma, scaled] : posting.scaled_tfidf) {
    auto w = weights.find(lemma);
    out[lemma] = (w == weights.end() ? 0.0 : w->second) * scaled;
  }
  return out;
}

void attach_weights(PostingIndex& index, const CountMatrix& m) {
  for (auto& doc : index.postings) {
    if (doc.title_ngrams.empty()) {
      doc.weights.clear();
      for (const auto& [lemma, c] : doc.bag) doc.weights[lemma] = 1.0;
    } else {
      doc.weights = average_posting_weights(doc, m);
    }
    doc.final_scores = final_scores(doc, doc.weights);
  }
  index.has_weights = true;
}

std::string count_matrix_tsv(const CountMatrix& m) {
  std::string out = "ngram\tlemma\tcount\n";
  for (const auto& [g, row] : m.counts) {
    for (const auto& [lemma, n] : row) {
      out += g + '\t' + lemma + '\t' + std::to_string(n) + '\n';
    }
  }
  return out;
}

}  // namespace skillgrep

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/indexer.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "skillgrep/error.h"
#include "skillgrep/text.h"

namespace skillgrep {
namespace {

// Runs fn(i) for i in [0, n) on a few threads. Each index is written by
// exactly one thread, so results are independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::size_t>(workers, std::max<std::size_t>(1, n / 16));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([=, &fn] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
}

}  // namespace

std::uint64_t doc_length(const BagOfSkills& bag) {
  std::uint64_t n = 0;
  for (const auto& [lemma, c] : bag) n += c.total_count;
  return n;
}

SkillMatcher::SkillMatcher(const LemmaDictionary& dict) : dict_(&dict) {
  for (const auto& [key, lemma] : dict.forms_to_lemma()) {
    auto tokens = normalize_description(key).tokens;
    if (tokens.empty()) continue;
    auto normalized = text::join(tokens, " ");
    max_words_ = std::max(max_words_, tokens.size());
    auto [it, inserted] = by_normalized_.try_emplace(normalized, Target{lemma, key});
    if (inserted) continue;
    // Prefer the key that is already in normalized form, then the smaller key.
    Target& cur = it->second;
    bool cur_exact = cur.key == normalized;
    bool new_exact = key == normalized;
    if ((new_exact && !cur_exact) || (new_exact == cur_exact && key < cur.key)) {
      cur = Target{lemma, key};
    }
  }
}

BagOfSkills SkillMatcher::count(const NormalizedText& t) const {
  BagOfSkills bag;
  const auto& tokens = t.tokens;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t matched = 0;
    for (std::size_t n = std::min(max_words_, tokens.size() - i); n >= 1; --n) {
      auto span = text::join_range(tokens, i, i + n);
      auto it = by_normalized_.find(span);
      if (it == by_normalized_.end()) continue;
      const Target& target = it->second;

      std::string form;
      std::size_t end = i + n;
      bool aligned = (i == 0 || t.origin[i - 1] != t.origin[i]) &&
                     (end == tokens.size() || t.origin[end] != t.origin[end - 1]);
      if (aligned) {
        auto raw = text::join_range(t.raw, t.origin[i], t.origin[end - 1] + 1);
        if (dict_->lemma_for(raw) == target.lemma) form = std::move(raw);
      }
      if (form.empty()) {
        form = dict_->lemma_for(span) == target.lemma ? span : target.key;
      }
      SkillCount& c = bag[target.lemma];
      ++c.total_count;
      ++c.form_counts[form];
      matched = n;
      break;
    }
    i += matched > 0 ? matched : 1;
  }
  return bag;
}

BagOfSkills generate_bow(std::string_view description, const LemmaDictionary& dict) {
  return SkillMatcher(dict).count(normalize_description(description));
}

DocumentFrequencies compute_document_frequencies(std::vector<BagOfSkills> bags,
                                                 std::uint32_t min_df) {
  if (min_df == 0) throw Error(ErrorCode::kDomainError, "min_df must be >= 1");
  std::map<std::string, std::uint64_t> df;
  for (const auto& bag : bags) {
    for (const auto& [lemma, c] : bag) {
      if (c.total_count > 0) ++df[lemma];
    }
  }
  std::erase_if(df, [&](const auto& kv) { return kv.second < min_df; });

  DocumentFrequencies out;
  std::uint64_t total_len = 0;
  for (std::size_t i = 0; i < bags.size(); ++i) {
    BagOfSkills& bag = bags[i];
    std::erase_if(bag, [&](const auto& kv) {
      return kv.second.total_count == 0 || !df.contains(kv.first);
    });
    std::uint64_t len = doc_length(bag);
    if (len == 0) continue;
    total_len += len;
    out.retained.push_back(i);
    out.bags.push_back(std::move(bag));
  }
  if (out.bags.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no document has a non-empty skill bag");
  }
  out.stats.n_docs = out.bags.size();
  out.stats.avg_doc_len =
      static_cast<double>(total_len) / static_cast<double>(out.stats.n_docs);
  out.stats.min_df = min_df;
  out.stats.df = std::move(df);
  return out;
}

double compute_ltu(std::uint64_t tf, std::uint64_t df, std::uint64_t n_docs,
                   std::uint64_t doc_len, double avg_doc_len) {
  if (tf < 1 || df < 1 || df > n_docs || doc_len < 1 || !(avg_doc_len > 0.0)) {
    throw Error(ErrorCode::kDomainError,
                "LTU needs tf>=1, 1<=df<=n_docs, doc_len>=1, avg_doc_len>0");
  }
  double tf_part = std::log2(static_cast<double>(tf)) + 1.0;
  double idf = std::log2(static_cast<double>(n_docs) / static_cast<double>(df));
  double pivot = 0.8 + 0.2 * static_cast<double>(doc_len) / avg_doc_len;
  return tf_part * idf / pivot;
}

std::map<std::string, double> scale_tfidf(const std::map<std::string, double>& ltu) {
  double max_value = 0.0;
  for (const auto& [k, v] : ltu) max_value = std::max(max_value, v);
  if (max_value <= 0.0) return ltu;
  std::map<std::string, double> out;
  for (const auto& [k, v] : ltu) out[k] = v / max_value;
  return out;
}

const IndexedPosting* PostingIndex::find(std::string_view id) const {
  for (const auto& p : postings) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

PostingIndex build_index(const Corpus& corpus, const IndexResources& res,
                         const BuildOptions& options) {
  const auto& postings = corpus.postings();
  const std::size_t n = postings.size();

  std::vector<std::optional<NormalizedTitle>> titles(n);
  std::vector<NormalizedTitle> title_list;
  for (std::size_t i = 0; i < n; ++i) {
    try {
      titles[i] = res.title_normalizer.normalize(postings[i].title_raw);
      title_list.push_back(*titles[i]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyTitle) throw;
    }
  }
  TitleVocabulary vocab =
      build_title_vocab(title_list, options.title_min_freq, res.title_stopwords);

  SkillMatcher matcher(res.dictionary);
  std::vector<IndexedPosting> docs(n);
  std::vector<BagOfSkills> bags(n);
  parallel_for(n, [&](std::size_t i) {
    const JobPosting& src = postings[i];
    IndexedPosting& doc = docs[i];
    doc.id = src.id;
    doc.title_raw = src.title_raw;
    doc.company_name_raw = src.company_name_raw;
    doc.location = src.location;
    doc.date_posted = src.date_posted;
    if (titles[i]) {
      doc.normalized_title = titles[i]->text;
      TitleClass cls = parse_title(*titles[i], res.taxonomy);
      doc.level = cls.level;
      doc.departments = std::move(cls.departments);
      doc.title_ngrams = generate_title_ngrams(*titles[i], vocab, res.title_stopwords);
    } else {
      doc.departments = {Department::kOther};
    }
    try {
      doc.company_normalized = res.company_normalizer.normalize(src.company_name_raw);
      std::optional<std::string_view> where;
      if (src.location) where = *src.location;
      if (auto match = res.aliases.resolve(doc.company_normalized, where)) {
        doc.domain = match->domain;
        doc.domain_confidence = match->confidence;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyName) throw;
    }
    NormalizedText text = normalize_description(src.description_raw);
    doc.description_text = text.joined();
    bags[i] = matcher.count(text);
  });

  DocumentFrequencies freq = compute_document_frequencies(std::move(bags), options.min_df);

  PostingIndex index;
  index.stats = std::move(freq.stats);
  index.dictionary = res.dictionary;
  index.build_timestamp = options.build_timestamp;
  index.postings.reserve(freq.retained.size());
  for (std::size_t k = 0; k < freq.retained.size(); ++k) {
    IndexedPosting doc = std::move(docs[freq.retained[k]]);
    doc.bag = std::move(freq.bags[k]);
    doc.doc_len = doc_length(doc.bag);
    for (const auto& [lemma, c] : doc.bag) {
      doc.ltu[lemma] = compute_ltu(c.total_count, index.stats.df.at(lemma),
                                   index.stats, doc.doc_len);
    }
    doc.scaled_tfidf = scale_tfidf(doc.ltu);
    index.postings.push_back(std::move(doc));
  }
  return index;
}

}  // namespace skillgrep

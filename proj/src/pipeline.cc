// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/pipeline.h"

#include <charconv>
#include <cstdlib>
#include <string_view>

#include "skillgrep/weight_engine.h"

namespace skillgrep {

Resources Resources::load(const std::filesystem::path& data_dir) {
  Resources r;
  r.title_normalizer = TitleNormalizer::load(data_dir / data_files::kTitleSubstitutions,
                                             data_dir / data_files::kTitleAcronyms);
  r.taxonomy = TitleTaxonomy::load(data_dir / data_files::kTitleTaxonomy);
  r.title_stopwords = load_word_set(data_dir / data_files::kTitleStopwords);
  r.company_normalizer = CompanyNameNormalizer::load(data_dir / data_files::kCompanyAffixes,
                                                     data_dir / data_files::kCompanyStopwords);
  return r;
}

std::uint64_t default_build_timestamp() {
  const char* env = std::getenv("SOURCE_DATE_EPOCH");
  if (env == nullptr) return 0;
  std::string_view s(env);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return 0;
  return v;
}

LemmaDictionary build_dictionary(const std::filesystem::path& skill_lexicon,
                                 const LemmaLexicon& lexicon,
                                 const SkillStoplist& stoplist,
                                 const SkillThresholds& thresholds) {
  auto entries = ingest_skill_lexicon(skill_lexicon);
  auto kept = filter_skills(entries, thresholds);
  return build_lemma_dictionary(kept, lexicon, stoplist);
}

PostingIndex build_search_index(const Corpus& corpus, const LemmaDictionary& dict,
                                const Resources& resources, const AliasTable& aliases,
                                const BuildOptions& options) {
  IndexResources res{dict,
                     resources.title_normalizer,
                     resources.taxonomy,
                     resources.title_stopwords,
                     resources.company_normalizer,
                     aliases};
  PostingIndex index = build_index(corpus, res, options);
  attach_weights(index, build_count_matrix(index));
  return index;
}

CompanyStore load_company_store(const std::filesystem::path& path,
                                const Resources& resources) {
  return CompanyStore::load(path, resources.title_normalizer, resources.taxonomy);
}

}  // namespace skillgrep

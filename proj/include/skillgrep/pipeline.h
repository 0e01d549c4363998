// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Wiring of the data files and the end-to-end index build.

#pragma once

#include <cstdint>
#include <filesystem>

#include "skillgrep/company_resolver.h"
#include "skillgrep/corpus.h"
#include "skillgrep/indexer.h"
#include "skillgrep/skill_normalizer.h"
#include "skillgrep/title_parser.h"

namespace skillgrep {

// File names inside a data directory.
namespace data_files {
inline constexpr const char* kTitleSubstitutions = "title_substitutions.tsv";
inline constexpr const char* kTitleAcronyms = "title_acronyms.txt";
inline constexpr const char* kTitleTaxonomy = "title_taxonomy.csv";
inline constexpr const char* kTitleStopwords = "title_stopwords.txt";
inline constexpr const char* kCompanyAffixes = "company_affixes.txt";
inline constexpr const char* kCompanyStopwords = "company_stopwords.txt";
inline constexpr const char* kAliases = "aliases.csv";
inline constexpr const char* kLemmaLexicon = "lemma_lexicon.tsv";
inline constexpr const char* kSkillStoplist = "skill_stoplist.txt";
inline constexpr const char* kSkillLexicon = "skills_sample.csv";
}  // namespace data_files

struct Resources {
  TitleNormalizer title_normalizer;
  TitleTaxonomy taxonomy;
  WordSet title_stopwords;
  CompanyNameNormalizer company_normalizer;

  static Resources load(const std::filesystem::path& data_dir);
};

// Build timestamp for reproducible artifacts: SOURCE_DATE_EPOCH when set,
// otherwise 0.
std::uint64_t default_build_timestamp();

// Lexicon -> thresholds -> lemma dictionary.
LemmaDictionary build_dictionary(const std::filesystem::path& skill_lexicon,
                                 const LemmaLexicon& lexicon,
                                 const SkillStoplist& stoplist,
                                 const SkillThresholds& thresholds);

// build_index followed by the count matrix and weight attachment.
PostingIndex build_search_index(const Corpus& corpus, const LemmaDictionary& dict,
                                const Resources& resources, const AliasTable& aliases,
                                const BuildOptions& options);

CompanyStore load_company_store(const std::filesystem::path& path,
                                const Resources& resources);

}  // namespace skillgrep

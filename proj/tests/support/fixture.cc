// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "fixture.h"

#include <atomic>
#include <chrono>
#include <random>

namespace skillgrep::testing {

std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(SKILLGREP_DATA_DIR) / name;
}

std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(SKILLGREP_FIXTURE_DIR) / name;
}

LemmaDictionary shipped_dictionary() {
  return build_dictionary(data_path(data_files::kSkillLexicon),
                          LemmaLexicon::load(data_path(data_files::kLemmaLexicon)),
                          SkillStoplist::load(data_path(data_files::kSkillStoplist)),
                          SkillThresholds::defaults());
}

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture out;
    out.resources = Resources::load(SKILLGREP_DATA_DIR);
    out.dictionary = shipped_dictionary();
    out.aliases = AliasTable::load(fixture_path("aliases.csv"),
                                   out.resources.company_normalizer);
    out.corpus = ingest_postings(fixture_path("postings_100.jsonl"), RecordFormat::kJsonl);
    out.store = load_company_store(fixture_path("companies_30.jsonl"), out.resources);
    out.index = build_search_index(out.corpus, out.dictionary, out.resources, out.aliases,
                                   BuildOptions{});
    return out;
  }();
  return f;
}

std::unique_ptr<SearchService> fixture_service(std::filesystem::path feedback_log,
                                               std::vector<std::string> cors) {
  const Fixture& f = fixture();
  return std::make_unique<SearchService>(f.index, f.store, f.aliases, f.resources,
                                         std::move(feedback_log), kDefaultResultLimit,
                                         std::move(cors));
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("skillgrep-test-" + std::to_string(stamp) + "-" + std::to_string(rd()) + "-" +
           std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace skillgrep::testing

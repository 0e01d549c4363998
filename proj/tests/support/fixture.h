// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Shared test corpus: shipped data files plus tests/fixtures.

#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "skillgrep/company_resolver.h"
#include "skillgrep/corpus.h"
#include "skillgrep/indexer.h"
#include "skillgrep/pipeline.h"
#include "skillgrep/service.h"
#include "skillgrep/skill_normalizer.h"

namespace skillgrep::testing {

std::filesystem::path data_path(const std::string& name);
std::filesystem::path fixture_path(const std::string& name);

struct Fixture {
  Resources resources;
  LemmaDictionary dictionary;
  AliasTable aliases;
  Corpus corpus;
  CompanyStore store;
  PostingIndex index;
};

// Built once per process.
const Fixture& fixture();

LemmaDictionary shipped_dictionary();

// Service over copies of the fixture.
std::unique_ptr<SearchService> fixture_service(std::filesystem::path feedback_log = {},
                                               std::vector<std::string> cors = {});

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace skillgrep::testing

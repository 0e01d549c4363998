// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Company-name normalization, alias-table website resolution and the local
// firmographic attribute store.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "skillgrep/title_parser.h"

namespace skillgrep {

class CompanyNameNormalizer {
 public:
  CompanyNameNormalizer() = default;
  CompanyNameNormalizer(WordSet affixes, WordSet stopwords)
      : affixes_(std::move(affixes)), stopwords_(std::move(stopwords)) {}

  static CompanyNameNormalizer load(const std::filesystem::path& affixes,
                                    const std::filesystem::path& stopwords);

  // Lowercase, "'s" -> "s", non-alphanumerics -> spaces, then affix tokens are
  // dropped at the name edges and stopword tokens anywhere, repeated to a
  // fixed point. A step that would delete every token is skipped.
  // Throws Error(kEmptyName) for names with no alphanumeric content.
  std::string normalize(std::string_view raw) const;

 private:
  WordSet affixes_;
  WordSet stopwords_;
};

struct WebsiteMatch {
  std::string domain;
  double confidence = 0.0;  // 1.0 iff exact alias hit

  bool operator==(const WebsiteMatch&) const = default;
};

// Lowercase bare domain: scheme, "www.", port and path removed.
std::string canonical_domain(std::string_view url);

double token_jaccard(std::string_view a, std::string_view b);

class AliasTable {
 public:
  struct Row {
    std::string alias;  // normalized name
    std::string domain;
    std::string location;  // lowercase, may be empty
  };

  static constexpr double kFuzzyFloor = 0.6;

  AliasTable() = default;
  explicit AliasTable(std::vector<Row> rows);

  // CSV: alias,domain[,location]. Aliases are normalized with `normalizer`.
  static AliasTable load(const std::filesystem::path& path,
                         const CompanyNameNormalizer& normalizer);

  // Exact hit -> confidence 1.0; otherwise best token-Jaccard alias with
  // similarity >= 0.6. Equal-similarity candidates prefer a matching
  // location, then the smaller domain.
  std::optional<WebsiteMatch> resolve(
      std::string_view normalized_name,
      std::optional<std::string_view> location = std::nullopt) const;

  const std::vector<Row>& rows() const { return rows_; }

 private:
  std::vector<Row> rows_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> exact_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_token_;
};

struct Contact {
  std::string name;
  std::string title_raw;
  ManagementLevel level = ManagementLevel::kNonManager;
  DepartmentSet departments;

  bool operator==(const Contact&) const = default;
};

struct CompanyRecord {
  std::string domain;
  std::string name;  // display name, may be empty
  std::optional<std::uint64_t> employees;
  std::optional<std::uint64_t> revenue_kusd;
  std::string industry;  // lowercase, may be empty
  std::map<std::string, double> micro_industries;  // score in [0,1]
  std::set<std::string> technographics;            // lowercase
  std::optional<std::uint64_t> alexa_rank;         // >= 1
  std::optional<std::uint64_t> social_followers;
  std::vector<Contact> contacts;

  bool operator==(const CompanyRecord&) const = default;
};

// Read side of the firmographic data; a remote API client would implement it.
class CompanyAttributeSource {
 public:
  virtual ~CompanyAttributeSource() = default;
  // nullptr when the domain is unknown.
  virtual const CompanyRecord* lookup(std::string_view domain) const = 0;
};

class CompanyStore : public CompanyAttributeSource {
 public:
  CompanyStore() = default;
  explicit CompanyStore(std::vector<CompanyRecord> records);

  // JSONL, one record per line. Contact titles are classified with the given
  // normalizer and taxonomy.
  static CompanyStore load(const std::filesystem::path& path,
                           const TitleNormalizer& normalizer,
                           const TitleTaxonomy& taxonomy);

  const CompanyRecord* lookup(std::string_view domain) const override;
  const std::map<std::string, CompanyRecord, std::less<>>& records() const {
    return records_;
  }

 private:
  std::map<std::string, CompanyRecord, std::less<>> records_;
};

std::string normalize_company_name(std::string_view raw,
                                   const CompanyNameNormalizer& normalizer);

std::optional<WebsiteMatch> resolve_website(
    std::string_view normalized_name, std::optional<std::string_view> location,
    const AliasTable& table);

const CompanyRecord* lookup_attributes(std::string_view domain,
                                       const CompanyAttributeSource& store);

}  // namespace skillgrep

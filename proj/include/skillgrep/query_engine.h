// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Conjunctive multi-attribute search, attribute-score ranking, company
// grouping, contact lookup and the click-feedback log.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "skillgrep/company_resolver.h"
#include "skillgrep/indexer.h"

namespace skillgrep {

struct Range {
  std::optional<std::uint64_t> min;
  std::optional<std::uint64_t> max;

  bool contains(std::uint64_t v) const {
    return (!min || v >= *min) && (!max || v <= *max);
  }
  bool operator==(const Range&) const = default;
};

// Parses "min:max", "min:" or ":max". Throws Error(kInvalidQuery).
Range parse_range(std::string_view spec);

inline constexpr std::size_t kDefaultResultLimit = 40;

// Every populated field must hold (AND). Within skills, technologies,
// micro_industries, degree_keywords and free_keywords every member must match;
// within industries, departments and management_levels one member suffices.
struct Query {
  std::set<std::string> skills;
  std::set<std::string> technologies;
  std::set<std::string> industries;
  std::set<std::string> micro_industries;
  std::optional<Range> revenue_kusd;
  std::optional<Range> employees;
  DepartmentSet departments;
  std::set<ManagementLevel> management_levels;
  std::set<std::string> degree_keywords;
  std::set<std::string> free_keywords;

  std::size_t offset = 0;
  std::size_t limit = kDefaultResultLimit;

  bool empty() const;
  bool needs_company_record() const;
  bool operator==(const Query&) const = default;
};

// Throws Error(kInvalidQuery) for an empty query, min > max, or limit 0.
void validate_query(const Query& q);

struct RankingConfig {
  double lemma_saturation = 20.0;   // nlf reaches 1 at this many lemmas
  double employee_cap = 1e6;        // ef reaches 1 at this many employees
};

struct RankingFactors {
  double feedback = 1.0;
  double af = 1.0;
  double ef = 1.0;
  double nlf = 1.0;
  double cks = 1.0;
  std::vector<std::string> defaulted;  // factors that fell back to 1.0

  double product() const { return feedback * af * ef * nlf * cks; }
  bool operator==(const RankingFactors&) const = default;
};

double feedback_factor(std::uint64_t clicks);
double alexa_factor(std::uint64_t alexa_rank);
double employee_factor(std::uint64_t employees, double cap = 1e6);
double lemma_factor(std::size_t distinct_lemmas, double saturation = 20.0);

// `company` may be null (no record); missing attributes give a neutral 1.0.
// cks is the square root of the mean keyword score over the query's
// micro-industries, or 1.0 when the query names none.
RankingFactors attribute_factors(const CompanyRecord* company,
                                 const IndexedPosting& posting, const Query& q,
                                 std::uint64_t clicks,
                                 const RankingConfig& config = {});

// attr x mean of the posting's weights for `lemmas`; attr when `lemmas` is
// empty.
double rank_score(const std::vector<std::string>& lemmas,
                  const IndexedPosting& posting, double attr);

struct MatchedSkill {
  std::string lemma;
  double weight = 0.0;
  double final_score = 0.0;

  bool operator==(const MatchedSkill&) const = default;
};

struct SearchResult {
  std::string posting_id;
  std::string title;
  std::string company_name;
  std::string domain;  // empty when unresolved
  std::string company_key;
  double rank_score = 0.0;
  double attribute_score = 0.0;
  double skill_weight = 1.0;  // mean weight of the query skills
  std::vector<MatchedSkill> matched_skills;  // by final score descending
  RankingFactors factors;

  bool operator==(const SearchResult&) const = default;
};

struct CompanySummary {
  std::string name;
  std::string industry;
  std::optional<std::uint64_t> employees;
  std::optional<std::uint64_t> revenue_kusd;

  bool operator==(const CompanySummary&) const = default;
};

struct CompanyGroup {
  std::string key;  // domain, or the normalized company name when unresolved
  std::string domain;
  double best_score = 0.0;
  std::vector<SearchResult> results;
  std::optional<CompanySummary> company;

  bool operator==(const CompanyGroup&) const = default;
};

struct SearchResponse {
  std::vector<CompanyGroup> groups;   // page of groups
  std::vector<SearchResult> results;  // page of results
  std::size_t total_results = 0;
  std::size_t total_groups = 0;
  std::vector<std::string> warnings;

  bool operator==(const SearchResponse&) const = default;
};

// Grouping key: the resolved domain, else the normalized company name.
std::string company_key(const IndexedPosting& posting);

// True when the whitespace tokens of `phrase`, normalized like a
// description, occur contiguously in `description_text`.
bool contains_phrase(std::string_view description_text, std::string_view phrase);

// Read-only view of click counts.
using ClickCounts = std::map<std::string, std::uint64_t, std::less<>>;

// Whether `posting` satisfies every populated filter of `q`. `lemmas` are the
// resolved query skills.
bool matches_query(const Query& q, const std::vector<std::string>& lemmas,
                   const IndexedPosting& posting, const CompanyRecord* company);

// Full ranked list (no paging). Unknown query skills are reported in
// `warnings` and make the query unsatisfiable.
std::vector<SearchResult> rank_matches(const Query& q, const PostingIndex& index,
                                       const CompanyAttributeSource& companies,
                                       const ClickCounts& clicks,
                                       const RankingConfig& config,
                                       std::vector<std::string>* warnings);

// Stable grouping of ranked results; groups ordered by best score descending,
// then key. Members keep rank order.
std::vector<CompanyGroup> group_by_company(const std::vector<SearchResult>& results,
                                           const CompanyAttributeSource& companies);

// Validates, ranks, groups, then applies offset/limit to both lists.
SearchResponse execute_query(const Query& q, const PostingIndex& index,
                             const CompanyAttributeSource& companies,
                             const ClickCounts& clicks = {},
                             const RankingConfig& config = {});

using ContactFilter = std::function<bool(const Contact&)>;

// Manager level or above, or anyone in HR.
bool is_recruiter_or_senior(const Contact& contact);

std::map<std::string, std::vector<Contact>> find_contacts(
    const std::vector<std::string>& domains, const CompanyAttributeSource& store,
    const ContactFilter& filter = is_recruiter_or_senior);

// Folds a JSONL click log into per-posting counts. Malformed lines throw
// Error(kFormatError).
ClickCounts fold_feedback_log(std::string_view content);

// Append-only click log plus the last folded snapshot of it.
class FeedbackStore {
 public:
  // An empty path keeps events in memory only.
  explicit FeedbackStore(std::filesystem::path log_path = {});

  // Appends one event line; `ts` is an ISO-8601 timestamp.
  void record(std::string_view posting_id, std::string_view ts);

  // Re-reads the log (or the in-memory events) and swaps in new counts.
  void fold();

  std::shared_ptr<const ClickCounts> snapshot() const;
  std::size_t pending_events() const;

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::string memory_log_;
  std::size_t pending_ = 0;
  std::shared_ptr<const ClickCounts> counts_;
};

}  // namespace skillgrep

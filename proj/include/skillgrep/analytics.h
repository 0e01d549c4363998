// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Aggregate job-market analytics over the index and company store.

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skillgrep/company_resolver.h"
#include "skillgrep/indexer.h"

namespace skillgrep {

inline constexpr std::size_t kDefaultTopK = 40;

struct RankedList {
  std::vector<std::pair<std::string, double>> items;  // score desc, then label
  std::size_t k = kDefaultTopK;

  bool operator==(const RankedList&) const = default;
};

// Sorts by score descending, label ascending, and keeps the first k.
RankedList make_ranked_list(std::vector<std::pair<std::string, double>> items,
                            std::size_t k);

// Sum of final scores per lemma over postings (optionally only those whose
// company carries `industry`). Throws Error(kUnknownIndustry) when no company
// in the store has that industry.
RankedList top_skills(const PostingIndex& index, const CompanyStore& store,
                      std::size_t k, std::optional<std::string_view> industry = {});

// Number of distinct companies referenced by the index that use each
// technology.
RankedList top_technologies(const PostingIndex& index,
                            const CompanyAttributeSource& store, std::size_t k);

// Companies using every technology in `techs`, by af x ef.
RankedList companies_by_technology(const CompanyStore& store,
                                   const std::set<std::string>& techs,
                                   std::size_t k);

// Companies by number of postings whose bag has `skill` and whose description
// contains `degree_keyword`. Throws Error(kUnknownSkill).
RankedList top_recruiters(const PostingIndex& index, std::string_view skill,
                          std::string_view degree_keyword, std::size_t k);

}  // namespace skillgrep

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/analytics.h"

#include <algorithm>
#include <map>

#include "skillgrep/error.h"
#include "skillgrep/query_engine.h"
#include "skillgrep/text.h"

namespace skillgrep {

RankedList make_ranked_list(std::vector<std::pair<std::string, double>> items,
                            std::size_t k) {
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (items.size() > k) items.resize(k);
  return RankedList{std::move(items), k};
}

RankedList top_skills(const PostingIndex& index, const CompanyStore& store,
                      std::size_t k, std::optional<std::string_view> industry) {
  std::string wanted;
  if (industry) {
    wanted = text::collapse_spaces(text::to_lower(*industry));
    bool known = std::any_of(store.records().begin(), store.records().end(),
                             [&](const auto& kv) { return kv.second.industry == wanted; });
    if (!known) {
      throw Error(ErrorCode::kUnknownIndustry,
                  "no company has industry '" + std::string(*industry) + "'");
    }
  }
  std::map<std::string, double> sums;
  for (const auto& p : index.postings) {
    if (industry) {
      const CompanyRecord* c = p.domain.empty() ? nullptr : store.lookup(p.domain);
      if (c == nullptr || c->industry != wanted) continue;
    }
    for (const auto& [lemma, score] : p.final_scores) sums[lemma] += score;
  }
  return make_ranked_list({sums.begin(), sums.end()}, k);
}

RankedList top_technologies(const PostingIndex& index,
                            const CompanyAttributeSource& store, std::size_t k) {
  std::set<std::string> domains;
  for (const auto& p : index.postings) {
    if (!p.domain.empty()) domains.insert(p.domain);
  }
  std::map<std::string, double> counts;
  for (const auto& d : domains) {
    const CompanyRecord* c = store.lookup(d);
    if (c == nullptr) continue;
    for (const auto& t : c->technographics) counts[t] += 1.0;
  }
  return make_ranked_list({counts.begin(), counts.end()}, k);
}

RankedList companies_by_technology(const CompanyStore& store,
                                   const std::set<std::string>& techs,
                                   std::size_t k) {
  std::vector<std::pair<std::string, double>> items;
  for (const auto& [domain, c] : store.records()) {
    bool all = std::all_of(techs.begin(), techs.end(), [&](const std::string& t) {
      return c.technographics.contains(text::collapse_spaces(text::to_lower(t)));
    });
    if (!all) continue;
    double af = c.alexa_rank ? alexa_factor(*c.alexa_rank) : 1.0;
    double ef = c.employees ? employee_factor(*c.employees) : 1.0;
    items.emplace_back(domain, af * ef);
  }
  return make_ranked_list(std::move(items), k);
}

RankedList top_recruiters(const PostingIndex& index, std::string_view skill,
                          std::string_view degree_keyword, std::size_t k) {
  std::optional<std::string> lemma;
  try {
    lemma = index.dictionary.resolve(skill);
  } catch (const Error&) {
  }
  if (!lemma) {
    throw Error(ErrorCode::kUnknownSkill, "unknown skill '" + std::string(skill) + "'");
  }
  std::map<std::string, double> counts;
  for (const auto& p : index.postings) {
    if (!p.bag.contains(*lemma)) continue;
    if (!contains_phrase(p.description_text, degree_keyword)) continue;
    counts[company_key(p)] += 1.0;
  }
  return make_ranked_list({counts.begin(), counts.end()}, k);
}

}  // namespace skillgrep

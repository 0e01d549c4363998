// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/query_engine.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "skillgrep/error.h"
#include "skillgrep/skill_normalizer.h"
#include "skillgrep/text.h"

namespace skillgrep {
namespace {

std::string canonical(std::string_view s) {
  return text::collapse_spaces(text::to_lower(s));
}

std::optional<std::uint64_t> parse_bound(std::string_view s, std::string_view spec) {
  s = text::trim(s);
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidQuery, "bad range '" + std::string(spec) + "'");
  }
  return v;
}

void check_range(const std::optional<Range>& r, std::string_view name) {
  if (r && r->min && r->max && *r->min > *r->max) {
    throw Error(ErrorCode::kInvalidQuery,
                std::string(name) + " range has min > max");
  }
}

}  // namespace

Range parse_range(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidQuery,
                "range '" + std::string(spec) + "' must look like min:max");
  }
  Range r{parse_bound(spec.substr(0, colon), spec),
          parse_bound(spec.substr(colon + 1), spec)};
  if (!r.min && !r.max) {
    throw Error(ErrorCode::kInvalidQuery, "range '" + std::string(spec) + "' has no bounds");
  }
  if (r.min && r.max && *r.min > *r.max) {
    throw Error(ErrorCode::kInvalidQuery, "range '" + std::string(spec) + "' has min > max");
  }
  return r;
}

bool Query::empty() const {
  return skills.empty() && technologies.empty() && industries.empty() &&
         micro_industries.empty() && !revenue_kusd && !employees &&
         departments.empty() && management_levels.empty() &&
         degree_keywords.empty() && free_keywords.empty();
}

bool Query::needs_company_record() const {
  return !technologies.empty() || !industries.empty() ||
         !micro_industries.empty() || revenue_kusd || employees;
}

void validate_query(const Query& q) {
  if (q.empty()) throw Error(ErrorCode::kInvalidQuery, "query has no filters");
  check_range(q.revenue_kusd, "revenue_kusd");
  check_range(q.employees, "employees");
  if (q.limit == 0) throw Error(ErrorCode::kInvalidQuery, "limit must be >= 1");
}

double feedback_factor(std::uint64_t clicks) {
  return std::log2(2.0 + static_cast<double>(clicks));
}

double alexa_factor(std::uint64_t alexa_rank) {
  return 1.0 / (1.0 + std::log10(static_cast<double>(std::max<std::uint64_t>(alexa_rank, 1))));
}

double employee_factor(std::uint64_t employees, double cap) {
  double e = static_cast<double>(std::max<std::uint64_t>(employees, 1));
  return std::min(1.0, std::log10(1.0 + e) / std::log10(1.0 + cap));
}

double lemma_factor(std::size_t distinct_lemmas, double saturation) {
  return std::min(1.0, static_cast<double>(distinct_lemmas) / saturation);
}

RankingFactors attribute_factors(const CompanyRecord* company,
                                 const IndexedPosting& posting, const Query& q,
                                 std::uint64_t clicks, const RankingConfig& config) {
  RankingFactors f;
  f.feedback = feedback_factor(clicks);
  if (clicks == 0) f.defaulted.push_back("feedback");
  if (company != nullptr && company->alexa_rank) {
    f.af = alexa_factor(*company->alexa_rank);
  } else {
    f.defaulted.push_back("af");
  }
  if (company != nullptr && company->employees) {
    f.ef = employee_factor(*company->employees, config.employee_cap);
  } else {
    f.defaulted.push_back("ef");
  }
  f.nlf = lemma_factor(posting.bag.size(), config.lemma_saturation);
  if (q.micro_industries.empty()) {
    f.cks = 1.0;
  } else if (company == nullptr) {
    f.defaulted.push_back("cks");
  } else {
    double sum = 0.0;
    for (const auto& name : q.micro_industries) {
      auto it = company->micro_industries.find(canonical(name));
      if (it != company->micro_industries.end()) sum += it->second;
    }
    f.cks = std::sqrt(sum / static_cast<double>(q.micro_industries.size()));
  }
  return f;
}

double rank_score(const std::vector<std::string>& lemmas,
                  const IndexedPosting& posting, double attr) {
  if (lemmas.empty()) return attr;
  double sum = 0.0;
  for (const auto& l : lemmas) {
    if (posting.weights.empty()) {
      sum += 1.0;
    } else if (auto it = posting.weights.find(l); it != posting.weights.end()) {
      sum += it->second;
    }
  }
  return attr * (sum / static_cast<double>(lemmas.size()));
}

std::string company_key(const IndexedPosting& posting) {
  return posting.domain.empty() ? posting.company_normalized : posting.domain;
}

bool contains_phrase(std::string_view description_text, std::string_view phrase) {
  auto needle = normalize_description(phrase).tokens;
  if (needle.empty()) return false;
  auto hay = text::split_whitespace(description_text);
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

bool matches_query(const Query& q, const std::vector<std::string>& lemmas,
                   const IndexedPosting& posting, const CompanyRecord* company) {
  for (const auto& l : lemmas) {
    if (!posting.bag.contains(l)) return false;
  }
  if (q.needs_company_record() && company == nullptr) return false;
  for (const auto& t : q.technologies) {
    if (!company->technographics.contains(canonical(t))) return false;
  }
  if (!q.industries.empty()) {
    bool any = std::any_of(q.industries.begin(), q.industries.end(),
                           [&](const std::string& i) { return canonical(i) == company->industry; });
    if (!any) return false;
  }
  for (const auto& m : q.micro_industries) {
    if (!company->micro_industries.contains(canonical(m))) return false;
  }
  if (q.revenue_kusd &&
      (!company->revenue_kusd || !q.revenue_kusd->contains(*company->revenue_kusd))) {
    return false;
  }
  if (q.employees &&
      (!company->employees || !q.employees->contains(*company->employees))) {
    return false;
  }
  if (!q.departments.empty()) {
    bool any = std::any_of(q.departments.begin(), q.departments.end(),
                           [&](Department d) { return posting.departments.contains(d); });
    if (!any) return false;
  }
  if (!q.management_levels.empty() && !q.management_levels.contains(posting.level)) {
    return false;
  }
  for (const auto& d : q.degree_keywords) {
    if (!contains_phrase(posting.description_text, d)) return false;
  }
  for (const auto& k : q.free_keywords) {
    if (!contains_phrase(posting.description_text, k) &&
        !contains_phrase(posting.normalized_title, k)) {
      return false;
    }
  }
  return true;
}

std::vector<SearchResult> rank_matches(const Query& q, const PostingIndex& index,
                                       const CompanyAttributeSource& companies,
                                       const ClickCounts& clicks,
                                       const RankingConfig& config,
                                       std::vector<std::string>* warnings) {
  std::set<std::string> resolved;
  bool satisfiable = true;
  for (const auto& s : q.skills) {
    std::optional<std::string> lemma;
    try {
      lemma = index.dictionary.resolve(s);
    } catch (const Error&) {
    }
    if (lemma) {
      resolved.insert(*lemma);
    } else {
      satisfiable = false;
      if (warnings != nullptr) warnings->push_back("unknown skill '" + s + "'");
    }
  }
  if (!satisfiable) return {};
  std::vector<std::string> lemmas(resolved.begin(), resolved.end());

  std::vector<SearchResult> out;
  for (const auto& p : index.postings) {
    const CompanyRecord* company = p.domain.empty() ? nullptr : companies.lookup(p.domain);
    if (!matches_query(q, lemmas, p, company)) continue;
    std::uint64_t n_clicks = 0;
    if (auto it = clicks.find(p.id); it != clicks.end()) n_clicks = it->second;

    SearchResult r;
    r.posting_id = p.id;
    r.title = p.title_raw;
    r.company_name = p.company_name_raw;
    r.domain = p.domain;
    r.company_key = company_key(p);
    r.factors = attribute_factors(company, p, q, n_clicks, config);
    r.attribute_score = r.factors.product();
    r.rank_score = rank_score(lemmas, p, r.attribute_score);
    r.skill_weight = rank_score(lemmas, p, 1.0);
    for (const auto& l : lemmas) {
      MatchedSkill m{l, 1.0, 0.0};
      if (auto w = p.weights.find(l); w != p.weights.end()) m.weight = w->second;
      if (auto f = p.final_scores.find(l); f != p.final_scores.end()) m.final_score = f->second;
      r.matched_skills.push_back(std::move(m));
    }
    std::stable_sort(r.matched_skills.begin(), r.matched_skills.end(),
                     [](const MatchedSkill& a, const MatchedSkill& b) {
                       return a.final_score > b.final_score;
                     });
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const SearchResult& a, const SearchResult& b) {
    if (a.rank_score != b.rank_score) return a.rank_score > b.rank_score;
    return a.posting_id < b.posting_id;
  });
  return out;
}

std::vector<CompanyGroup> group_by_company(const std::vector<SearchResult>& results,
                                           const CompanyAttributeSource& companies) {
  std::vector<CompanyGroup> groups;
  std::map<std::string, std::size_t> slot;
  for (const auto& r : results) {
    auto [it, inserted] = slot.try_emplace(r.company_key, groups.size());
    if (inserted) {
      CompanyGroup g;
      g.key = r.company_key;
      g.domain = r.domain;
      g.best_score = r.rank_score;
      if (!r.domain.empty()) {
        if (const CompanyRecord* c = companies.lookup(r.domain)) {
          g.company = CompanySummary{c->name, c->industry, c->employees, c->revenue_kusd};
        }
      }
      groups.push_back(std::move(g));
    }
    CompanyGroup& g = groups[it->second];
    g.best_score = std::max(g.best_score, r.rank_score);
    g.results.push_back(r);
  }
  std::stable_sort(groups.begin(), groups.end(), [](const CompanyGroup& a, const CompanyGroup& b) {
    if (a.best_score != b.best_score) return a.best_score > b.best_score;
    return a.key < b.key;
  });
  return groups;
}

SearchResponse execute_query(const Query& q, const PostingIndex& index,
                             const CompanyAttributeSource& companies,
                             const ClickCounts& clicks, const RankingConfig& config) {
  validate_query(q);
  SearchResponse resp;
  auto ranked = rank_matches(q, index, companies, clicks, config, &resp.warnings);
  auto groups = group_by_company(ranked, companies);
  resp.total_results = ranked.size();
  resp.total_groups = groups.size();

  auto page = [&](auto& v) {
    using V = std::decay_t<decltype(v)>;
    if (q.offset >= v.size()) return V{};
    auto first = v.begin() + static_cast<std::ptrdiff_t>(q.offset);
    auto last = v.begin() + static_cast<std::ptrdiff_t>(std::min(v.size(), q.offset + q.limit));
    return V(std::make_move_iterator(first), std::make_move_iterator(last));
  };
  resp.groups = page(groups);
  resp.results = page(ranked);
  return resp;
}

bool is_recruiter_or_senior(const Contact& contact) {
  return contact.level >= ManagementLevel::kManager ||
         contact.departments.contains(Department::kHr);
}

std::map<std::string, std::vector<Contact>> find_contacts(
    const std::vector<std::string>& domains, const CompanyAttributeSource& store,
    const ContactFilter& filter) {
  std::map<std::string, std::vector<Contact>> out;
  for (const auto& d : domains) {
    auto& list = out[d];
    const CompanyRecord* c = store.lookup(d);
    if (c == nullptr) continue;
    for (const auto& contact : c->contacts) {
      if (filter(contact)) list.push_back(contact);
    }
  }
  return out;
}

ClickCounts fold_feedback_log(std::string_view content) {
  ClickCounts counts;
  std::size_t line_no = 0;
  for (const auto& line : text::split(content, '\n')) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto where = "feedback log line " + std::to_string(line_no);
    nlohmann::json ev;
    try {
      ev = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw Error(ErrorCode::kFormatError, where + ": malformed JSON");
    }
    if (!ev.is_object() || !ev.contains("posting_id") || !ev["posting_id"].is_string()) {
      throw Error(ErrorCode::kFormatError, where + ": missing posting_id");
    }
    ++counts[ev["posting_id"].get<std::string>()];
  }
  return counts;
}

FeedbackStore::FeedbackStore(std::filesystem::path log_path)
    : path_(std::move(log_path)), counts_(std::make_shared<const ClickCounts>()) {
  fold();
}

void FeedbackStore::record(std::string_view posting_id, std::string_view ts) {
  nlohmann::json ev = {{"posting_id", posting_id}, {"ts", ts}};
  std::string line = ev.dump() + "\n";
  std::lock_guard lock(mu_);
  if (path_.empty()) {
    memory_log_ += line;
  } else {
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    out << line;
    out.flush();
    if (!out) throw Error(ErrorCode::kFileUnreadable, "cannot append to " + path_.string());
  }
  ++pending_;
}

void FeedbackStore::fold() {
  std::lock_guard lock(mu_);
  std::string content;
  if (path_.empty()) {
    content = memory_log_;
  } else if (std::filesystem::exists(path_)) {
    content = text::read_file(path_);
  }
  counts_ = std::make_shared<const ClickCounts>(fold_feedback_log(content));
  pending_ = 0;
}

std::shared_ptr<const ClickCounts> FeedbackStore::snapshot() const {
  std::lock_guard lock(mu_);
  return counts_;
}

std::size_t FeedbackStore::pending_events() const {
  std::lock_guard lock(mu_);
  return pending_;
}

}  // namespace skillgrep

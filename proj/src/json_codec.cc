// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/json_codec.h"

#include "skillgrep/error.h"
#include "skillgrep/text.h"

namespace skillgrep {
namespace {

using nlohmann::json;

[[noreturn]] void bad_company(const std::string& msg) {
  throw Error(ErrorCode::kFormatError, msg);
}

[[noreturn]] void bad_query(const std::string& msg) {
  throw Error(ErrorCode::kInvalidQuery, msg);
}

bool present(const json& j, const char* key) {
  return j.contains(key) && !j.at(key).is_null();
}

std::optional<std::uint64_t> optional_count(const json& j, const char* key) {
  if (!present(j, key)) return std::nullopt;
  const json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    bad_company(std::string(key) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string optional_string(const json& j, const char* key) {
  if (!present(j, key)) return "";
  if (!j.at(key).is_string()) bad_company(std::string(key) + " must be a string");
  return j.at(key).get<std::string>();
}

std::string canonical(std::string_view s) {
  return text::collapse_spaces(text::to_lower(s));
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::set<std::string> string_set(const json& j, const std::string& key) {
  if (!j.is_array()) bad_query(key + " must be an array of strings");
  std::set<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) bad_query(key + " must be an array of strings");
    auto s = text::collapse_spaces(v.get<std::string>());
    if (s.empty()) bad_query(key + " contains an empty string");
    out.insert(std::move(s));
  }
  return out;
}

std::optional<std::uint64_t> range_bound(const json& j, const std::string& key) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    bad_query(key + " bounds must be non-negative integers");
  }
  return j.get<std::uint64_t>();
}

Range range_from_json(const json& j, const std::string& key) {
  if (!j.is_object()) bad_query(key + " must be an object with min/max");
  Range r;
  for (const auto& [k, v] : j.items()) {
    if (k == "min") {
      r.min = range_bound(v, key);
    } else if (k == "max") {
      r.max = range_bound(v, key);
    } else {
      bad_query(key + " has unknown field '" + k + "'");
    }
  }
  return r;
}

json range_to_json(const Range& r) {
  return {{"min", optional_json(r.min)}, {"max", optional_json(r.max)}};
}

std::size_t count_field(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    bad_query(key + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

CompanyRecord company_from_json(const json& j) {
  if (!j.is_object()) bad_company("company record must be an object");
  CompanyRecord c;
  c.domain = canonical_domain(optional_string(j, "domain"));
  if (c.domain.empty()) bad_company("company record needs a domain");
  c.name = optional_string(j, "name");
  c.employees = optional_count(j, "employees");
  c.revenue_kusd = optional_count(j, "revenue_kusd");
  c.industry = canonical(optional_string(j, "industry"));
  if (present(j, "micro_industries")) {
    const json& m = j.at("micro_industries");
    if (!m.is_object()) bad_company("micro_industries must be an object");
    for (const auto& [name, score] : m.items()) {
      if (!score.is_number()) bad_company("micro-industry score must be a number");
      double s = score.get<double>();
      if (!(s >= 0.0 && s <= 1.0)) bad_company("micro-industry score must be in [0,1]");
      c.micro_industries[canonical(name)] = s;
    }
  }
  if (present(j, "technographics")) {
    const json& t = j.at("technographics");
    if (!t.is_array()) bad_company("technographics must be an array");
    for (const auto& v : t) {
      if (!v.is_string()) bad_company("technographics must hold strings");
      c.technographics.insert(canonical(v.get<std::string>()));
    }
  }
  c.alexa_rank = optional_count(j, "alexa_rank");
  if (c.alexa_rank && *c.alexa_rank == 0) bad_company("alexa_rank must be >= 1");
  c.social_followers = optional_count(j, "social_followers");
  if (present(j, "contacts")) {
    const json& list = j.at("contacts");
    if (!list.is_array()) bad_company("contacts must be an array");
    for (const auto& cj : list) {
      if (!cj.is_object()) bad_company("contact must be an object");
      Contact contact;
      contact.name = optional_string(cj, "name");
      contact.title_raw = optional_string(cj, "title");
      if (contact.title_raw.empty()) contact.title_raw = optional_string(cj, "title_raw");
      c.contacts.push_back(std::move(contact));
    }
  }
  return c;
}

json company_to_json(const CompanyRecord& c) {
  json micro = json::object();
  for (const auto& [k, v] : c.micro_industries) micro[k] = v;
  json contacts = json::array();
  for (const auto& contact : c.contacts) {
    contacts.push_back({{"name", contact.name}, {"title", contact.title_raw}});
  }
  return {{"domain", c.domain},
          {"name", c.name},
          {"employees", optional_json(c.employees)},
          {"revenue_kusd", optional_json(c.revenue_kusd)},
          {"industry", c.industry},
          {"micro_industries", micro},
          {"technographics", c.technographics},
          {"alexa_rank", optional_json(c.alexa_rank)},
          {"social_followers", optional_json(c.social_followers)},
          {"contacts", contacts}};
}

json contact_to_json(const Contact& c) {
  json depts = json::array();
  for (Department d : c.departments) depts.push_back(department_name(d));
  return {{"name", c.name},
          {"title", c.title_raw},
          {"level", level_name(c.level)},
          {"departments", depts}};
}

json contacts_to_json(const std::vector<Contact>& contacts) {
  json out = json::array();
  for (const auto& c : contacts) out.push_back(contact_to_json(c));
  return out;
}

Query query_from_json(const json& j) {
  if (!j.is_object()) bad_query("query must be a JSON object");
  Query q;
  for (const auto& [key, v] : j.items()) {
    if (key == "skills") {
      q.skills = string_set(v, key);
    } else if (key == "technologies") {
      q.technologies = string_set(v, key);
    } else if (key == "industries") {
      q.industries = string_set(v, key);
    } else if (key == "micro_industries") {
      q.micro_industries = string_set(v, key);
    } else if (key == "degree_keywords") {
      q.degree_keywords = string_set(v, key);
    } else if (key == "free_keywords") {
      q.free_keywords = string_set(v, key);
    } else if (key == "revenue_kusd") {
      if (!v.is_null()) q.revenue_kusd = range_from_json(v, key);
    } else if (key == "employees") {
      if (!v.is_null()) q.employees = range_from_json(v, key);
    } else if (key == "departments") {
      for (const auto& name : string_set(v, key)) {
        auto d = parse_department(name);
        if (!d) bad_query("unknown department '" + name + "'");
        q.departments.insert(*d);
      }
    } else if (key == "management_levels") {
      for (const auto& name : string_set(v, key)) {
        auto l = parse_level(name);
        if (!l) bad_query("unknown management level '" + name + "'");
        q.management_levels.insert(*l);
      }
    } else if (key == "offset") {
      q.offset = count_field(v, key);
    } else if (key == "limit") {
      q.limit = count_field(v, key);
    } else {
      bad_query("unknown query field '" + key + "'");
    }
  }
  return q;
}

json query_to_json(const Query& q) {
  json j = json::object();
  auto put = [&](const char* key, const std::set<std::string>& s) {
    if (!s.empty()) j[key] = s;
  };
  put("skills", q.skills);
  put("technologies", q.technologies);
  put("industries", q.industries);
  put("micro_industries", q.micro_industries);
  if (q.revenue_kusd) j["revenue_kusd"] = range_to_json(*q.revenue_kusd);
  if (q.employees) j["employees"] = range_to_json(*q.employees);
  if (!q.departments.empty()) {
    json d = json::array();
    for (Department dep : q.departments) d.push_back(department_name(dep));
    j["departments"] = d;
  }
  if (!q.management_levels.empty()) {
    json l = json::array();
    for (ManagementLevel lvl : q.management_levels) l.push_back(level_name(lvl));
    j["management_levels"] = l;
  }
  put("degree_keywords", q.degree_keywords);
  put("free_keywords", q.free_keywords);
  j["offset"] = q.offset;
  j["limit"] = q.limit;
  return j;
}

json factors_to_json(const RankingFactors& f) {
  return {{"feedback", f.feedback}, {"af", f.af},   {"ef", f.ef},
          {"nlf", f.nlf},           {"cks", f.cks}, {"defaulted", f.defaulted}};
}

json result_to_json(const SearchResult& r) {
  json skills = json::array();
  for (const auto& m : r.matched_skills) {
    skills.push_back({{"lemma", m.lemma}, {"weight", m.weight}, {"final_score", m.final_score}});
  }
  return {{"posting_id", r.posting_id},
          {"title", r.title},
          {"company_name", r.company_name},
          {"domain", r.domain},
          {"company_key", r.company_key},
          {"rank_score", r.rank_score},
          {"attribute_score", r.attribute_score},
          {"skill_weight", r.skill_weight},
          {"matched_skills", skills},
          {"factors", factors_to_json(r.factors)}};
}

json group_to_json(const CompanyGroup& g) {
  json results = json::array();
  for (const auto& r : g.results) results.push_back(result_to_json(r));
  json company = nullptr;
  if (g.company) {
    company = {{"name", g.company->name},
               {"industry", g.company->industry},
               {"employees", optional_json(g.company->employees)},
               {"revenue_kusd", optional_json(g.company->revenue_kusd)}};
  }
  return {{"key", g.key},
          {"domain", g.domain},
          {"best_score", g.best_score},
          {"company", company},
          {"results", results}};
}

json response_to_json(const SearchResponse& r) {
  json groups = json::array();
  for (const auto& g : r.groups) groups.push_back(group_to_json(g));
  json results = json::array();
  for (const auto& res : r.results) results.push_back(result_to_json(res));
  return {{"groups", groups},
          {"results", results},
          {"total_groups", r.total_groups},
          {"total_results", r.total_results},
          {"warnings", r.warnings}};
}

json ranked_list_to_json(const RankedList& list) {
  json out = json::array();
  for (const auto& [label, score] : list.items) {
    out.push_back({{"label", label}, {"score", score}});
  }
  return out;
}

std::string ranked_list_to_csv(const RankedList& list) {
  std::string out = "label,score\n";
  for (const auto& [label, score] : list.items) {
    bool quote = label.find_first_of(",\"\n") != std::string::npos;
    if (quote) {
      out += '"';
      for (char c : label) {
        if (c == '"') out += '"';
        out += c;
      }
      out += '"';
    } else {
      out += label;
    }
    out += ',' + text::format_double(score) + '\n';
  }
  return out;
}

json error_to_json(std::string_view code, std::string_view message) {
  return {{"code", code}, {"message", message}};
}

}  // namespace skillgrep

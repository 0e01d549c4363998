// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/service.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <condition_variable>
#include <ctime>

#include "httplib.h"
#include "json.hpp"
#include "skillgrep/analytics.h"
#include "skillgrep/error.h"
#include "skillgrep/index_io.h"
#include "skillgrep/json_codec.h"
#include "skillgrep/text.h"

namespace skillgrep {
namespace {

using nlohmann::json;

HttpResponse json_response(int status, const json& body) {
  HttpResponse r;
  r.status = status;
  r.body = body.dump();
  return r;
}

HttpResponse error_response(int status, std::string_view code, std::string_view message) {
  return json_response(status, error_to_json(code, message));
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidQuery:
    case ErrorCode::kUnknownSkill:
    case ErrorCode::kUnknownIndustry:
    case ErrorCode::kEmptySkill:
      return 422;
    case ErrorCode::kUnknownPosting:
      return 404;
    case ErrorCode::kFormatError:
      return 400;
    default:
      return 500;
  }
}

std::string param(const HttpRequest& req, const std::string& key) {
  auto it = req.params.find(key);
  return it == req.params.end() ? "" : it->second;
}

std::size_t k_param(const HttpRequest& req) {
  auto s = param(req, "k");
  if (s.empty()) return kDefaultTopK;
  std::size_t k = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (ec != std::errc() || p != s.data() + s.size() || k == 0) {
    throw Error(ErrorCode::kInvalidQuery, "k must be a positive integer");
  }
  return k;
}

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::kFormatError, "request body is not valid JSON");
  }
}

std::string utc_now_iso8601() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

SearchService::SearchService(PostingIndex index, CompanyStore companies, AliasTable aliases,
                             Resources resources, std::filesystem::path feedback_log,
                             std::size_t result_limit_default,
                             std::vector<std::string> cors_allowed_origins)
    : index_(std::move(index)),
      companies_(std::move(companies)),
      aliases_(std::move(aliases)),
      resources_(std::move(resources)),
      feedback_(std::move(feedback_log)),
      result_limit_default_(result_limit_default),
      cors_allowed_origins_(std::move(cors_allowed_origins)) {}

std::unique_ptr<SearchService> SearchService::from_config(const ServiceConfig& config) {
  validate_config(config);
  Resources resources = Resources::load(config.data_dir);
  PostingIndex index = load_index(config.index_path);
  CompanyStore companies = load_company_store(config.attribute_store_path, resources);
  AliasTable aliases = AliasTable::load(config.alias_table_path, resources.company_normalizer);
  return std::make_unique<SearchService>(std::move(index), std::move(companies),
                                         std::move(aliases), std::move(resources),
                                         config.feedback_log_path,
                                         config.result_limit_default,
                                         config.cors_allowed_origins);
}

HttpResponse SearchService::handle(const HttpRequest& req) {
  HttpResponse resp;
  try {
    const std::string& path = req.path;
    if (req.method == "OPTIONS") {
      resp.status = 204;
    } else if (path == "/healthz" && req.method == "GET") {
      resp = healthz();
    } else if (path == "/search" && req.method == "POST") {
      resp = search(req);
    } else if (path == "/feedback" && req.method == "POST") {
      resp = record_feedback(req);
    } else if (path == "/skills" && req.method == "GET") {
      resp = skills(req);
    } else if (path == "/analytics/top-skills" && req.method == "GET") {
      resp = top_skills(req);
    } else if (path == "/analytics/top-technologies" && req.method == "GET") {
      resp = top_technologies(req);
    } else if (path == "/analytics/companies-by-technology" && req.method == "GET") {
      resp = companies_by_technology(req);
    } else if (path == "/analytics/top-recruiters" && req.method == "GET") {
      resp = top_recruiters(req);
    } else if (text::starts_with(path, "/companies/") && path.ends_with("/contacts") &&
               req.method == "GET") {
      std::string_view domain(path);
      domain.remove_prefix(std::string_view("/companies/").size());
      domain.remove_suffix(std::string_view("/contacts").size());
      resp = contacts(domain, req);
    } else {
      resp = error_response(404, "NotFound", "no route for " + req.method + " " + path);
    }
  } catch (const Error& e) {
    resp = error_response(status_for(e.code()), error_code_name(e.code()), e.what());
  } catch (const std::exception& e) {
    resp = error_response(500, "Internal", e.what());
  }
  add_cors(req, resp);
  return resp;
}

void SearchService::add_cors(const HttpRequest& req, HttpResponse& resp) const {
  if (cors_allowed_origins_.empty()) return;
  bool any = std::find(cors_allowed_origins_.begin(), cors_allowed_origins_.end(), "*") !=
             cors_allowed_origins_.end();
  if (any) {
    resp.headers["Access-Control-Allow-Origin"] = "*";
  } else if (!req.origin.empty() &&
             std::find(cors_allowed_origins_.begin(), cors_allowed_origins_.end(),
                       req.origin) != cors_allowed_origins_.end()) {
    resp.headers["Access-Control-Allow-Origin"] = req.origin;
    resp.headers["Vary"] = "Origin";
  } else {
    return;
  }
  resp.headers["Access-Control-Allow-Methods"] = "GET, POST, OPTIONS";
  resp.headers["Access-Control-Allow-Headers"] = "Content-Type";
}

HttpResponse SearchService::healthz() const {
  return json_response(200, {{"status", "ok"},
                             {"n_docs", index_.stats.n_docs},
                             {"n_lemmas", index_.dictionary.lemma_set().size()},
                             {"format_version", kIndexFormatVersion},
                             {"build_timestamp", index_.build_timestamp}});
}

HttpResponse SearchService::search(const HttpRequest& req) const {
  json body = parse_body(req.body);
  Query q = query_from_json(body);
  if (!body.contains("limit")) q.limit = result_limit_default_;
  auto clicks = feedback_.snapshot();
  return json_response(200, response_to_json(execute_query(q, index_, companies_, *clicks)));
}

HttpResponse SearchService::top_skills(const HttpRequest& req) const {
  auto industry = param(req, "industry");
  std::optional<std::string_view> filter;
  if (!industry.empty()) filter = industry;
  return json_response(200, ranked_list_to_json(
                                skillgrep::top_skills(index_, companies_, k_param(req), filter)));
}

HttpResponse SearchService::top_technologies(const HttpRequest& req) const {
  return json_response(
      200, ranked_list_to_json(skillgrep::top_technologies(index_, companies_, k_param(req))));
}

HttpResponse SearchService::companies_by_technology(const HttpRequest& req) const {
  std::set<std::string> techs;
  for (const auto& t : text::split(param(req, "tech"), ',')) {
    auto s = text::trim(t);
    if (!s.empty()) techs.emplace(s);
  }
  if (techs.empty()) throw Error(ErrorCode::kInvalidQuery, "tech must name at least one technology");
  return json_response(200, ranked_list_to_json(skillgrep::companies_by_technology(
                                companies_, techs, k_param(req))));
}

HttpResponse SearchService::top_recruiters(const HttpRequest& req) const {
  auto skill = param(req, "skill");
  auto degree = param(req, "degree");
  if (skill.empty() || degree.empty()) {
    throw Error(ErrorCode::kInvalidQuery, "skill and degree are required");
  }
  return json_response(200, ranked_list_to_json(
                                skillgrep::top_recruiters(index_, skill, degree, k_param(req))));
}

HttpResponse SearchService::contacts(std::string_view raw, const HttpRequest& req) const {
  std::string domain = canonical_domain(raw);
  if (companies_.lookup(domain) == nullptr) {
    // Accept a company name in place of a domain.
    try {
      if (auto match = aliases_.resolve(resources_.company_normalizer.normalize(raw))) {
        domain = match->domain;
      }
    } catch (const Error&) {
    }
  }
  if (companies_.lookup(domain) == nullptr) {
    return error_response(404, "UnknownCompany", "no company record for '" + std::string(raw) + "'");
  }
  ContactFilter filter = is_recruiter_or_senior;
  if (param(req, "all") == "1" || param(req, "all") == "true") {
    filter = [](const Contact&) { return true; };
  }
  auto found = find_contacts({domain}, companies_, filter);
  return json_response(200, {{"domain", domain}, {"contacts", contacts_to_json(found[domain])}});
}

HttpResponse SearchService::record_feedback(const HttpRequest& req) {
  json body = parse_body(req.body);
  if (!body.is_object() || !body.contains("posting_id") || !body["posting_id"].is_string()) {
    throw Error(ErrorCode::kInvalidQuery, "feedback needs a string posting_id");
  }
  auto id = body["posting_id"].get<std::string>();
  if (index_.find(id) == nullptr) {
    throw Error(ErrorCode::kUnknownPosting, "unknown posting '" + id + "'");
  }
  std::string ts = body.contains("ts") && body["ts"].is_string() ? body["ts"].get<std::string>()
                                                                 : utc_now_iso8601();
  feedback_.record(id, ts);
  return json_response(202, {{"status", "accepted"}, {"posting_id", id}});
}

HttpResponse SearchService::skills(const HttpRequest& req) const {
  std::string prefix = text::to_lower(text::trim(param(req, "prefix")));
  std::size_t limit = 10;
  if (auto s = param(req, "limit"); !s.empty()) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), limit);
    if (ec != std::errc() || p != s.data() + s.size() || limit == 0) {
      throw Error(ErrorCode::kInvalidQuery, "limit must be a positive integer");
    }
  }
  std::vector<std::pair<std::string, std::uint64_t>> hits;
  const auto& lemmas = index_.dictionary.lemma_set();
  if (!prefix.empty()) {
    for (auto it = lemmas.lower_bound(prefix); it != lemmas.end() && it->starts_with(prefix);
         ++it) {
      auto df = index_.stats.df.find(*it);
      hits.emplace_back(*it, df == index_.stats.df.end() ? 0 : df->second);
    }
  }
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (hits.size() > limit) hits.resize(limit);
  json out = json::array();
  for (const auto& [lemma, df] : hits) out.push_back(lemma);
  return json_response(200, out);
}

struct HttpServer::Impl {
  SearchService& service;
  std::uint32_t fold_interval;
  httplib::Server server;
  std::thread listener;
  std::jthread folder;
  std::mutex mu;
  std::condition_variable_any cv;

  Impl(SearchService& s, std::uint32_t interval) : service(s), fold_interval(interval) {}
};

HttpServer::HttpServer(SearchService& service, std::uint32_t fold_interval_seconds)
    : impl_(std::make_unique<Impl>(service, fold_interval_seconds)) {
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.params.emplace(k, v);
    r.body = req.body;
    r.origin = req.get_header_value("Origin");
    HttpResponse out = impl_->service.handle(r);
    res.status = out.status;
    for (const auto& [k, v] : out.headers) res.set_header(k, v);
    if (out.status != 204) res.set_content(out.body, "application/json");
  };
  impl_->server.Get(".*", dispatch);
  impl_->server.Post(".*", dispatch);
  impl_->server.Options(".*", dispatch);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::kConfigError,
                "cannot listen on " + host + ":" + std::to_string(port));
  }
  impl_->listener = std::thread([this] { impl_->server.listen_after_bind(); });
  if (impl_->fold_interval > 0) {
    impl_->folder = std::jthread([this](std::stop_token stop) {
      std::unique_lock lock(impl_->mu);
      while (!stop.stop_requested()) {
        impl_->cv.wait_for(lock, stop, std::chrono::seconds(impl_->fold_interval),
                           [] { return false; });
        if (stop.stop_requested()) break;
        try {
          impl_->service.feedback().fold();
        } catch (const Error&) {
          // A bad log line keeps the previous counts.
        }
      }
    });
  }
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::wait() {
  if (impl_->listener.joinable()) impl_->listener.join();
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->listener.joinable()) impl_->listener.join();
  if (impl_->folder.joinable()) {
    impl_->folder.request_stop();
    impl_->folder.join();
  }
}

}  // namespace skillgrep

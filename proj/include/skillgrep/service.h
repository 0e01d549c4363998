// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// HTTP/JSON front end. SearchService routes requests without touching
// sockets; HttpServer binds it to a port.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "skillgrep/company_resolver.h"
#include "skillgrep/config.h"
#include "skillgrep/indexer.h"
#include "skillgrep/pipeline.h"
#include "skillgrep/query_engine.h"

namespace skillgrep {

struct HttpRequest {
  std::string method;  // "GET", "POST", ...
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
  std::string origin;  // Origin header, may be empty
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

class SearchService {
 public:
  SearchService(PostingIndex index, CompanyStore companies, AliasTable aliases,
                Resources resources, std::filesystem::path feedback_log = {},
                std::size_t result_limit_default = kDefaultResultLimit,
                std::vector<std::string> cors_allowed_origins = {});

  // Loads and version-checks everything named in `config`.
  static std::unique_ptr<SearchService> from_config(const ServiceConfig& config);

  HttpResponse handle(const HttpRequest& request);

  const PostingIndex& index() const { return index_; }
  FeedbackStore& feedback() { return feedback_; }

 private:
  HttpResponse healthz() const;
  HttpResponse search(const HttpRequest& request) const;
  HttpResponse top_skills(const HttpRequest& request) const;
  HttpResponse top_technologies(const HttpRequest& request) const;
  HttpResponse companies_by_technology(const HttpRequest& request) const;
  HttpResponse top_recruiters(const HttpRequest& request) const;
  HttpResponse contacts(std::string_view domain, const HttpRequest& request) const;
  HttpResponse record_feedback(const HttpRequest& request);
  HttpResponse skills(const HttpRequest& request) const;
  void add_cors(const HttpRequest& request, HttpResponse& response) const;

  PostingIndex index_;
  CompanyStore companies_;
  AliasTable aliases_;
  Resources resources_;
  FeedbackStore feedback_;
  std::size_t result_limit_default_;
  std::vector<std::string> cors_allowed_origins_;
};

// Runs a SearchService on a TCP port, plus the periodic feedback fold.
class HttpServer {
 public:
  explicit HttpServer(SearchService& service, std::uint32_t fold_interval_seconds = 60);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds (port 0 picks a free one) and serves on a background thread.
  // Returns the bound port. Throws Error(kConfigError) if binding fails.
  int start(const std::string& host, int port);
  // Blocks until stop() is called from another thread or a signal handler.
  void wait();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace skillgrep

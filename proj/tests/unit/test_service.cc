// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "doctest.h"
#include "fixture.h"
#include "httplib.h"
#include "json.hpp"
#include "queries.h"
#include "skillgrep/json_codec.h"
#include "skillgrep/service.h"

using namespace skillgrep;
using nlohmann::json;
using skillgrep::testing::fixture;
using skillgrep::testing::fixture_service;

namespace {

HttpResponse get(SearchService& s, const std::string& path,
                 std::map<std::string, std::string> params = {}) {
  return s.handle(HttpRequest{"GET", path, std::move(params), "", ""});
}

HttpResponse post(SearchService& s, const std::string& path, const json& body) {
  return s.handle(HttpRequest{"POST", path, {}, body.dump(), ""});
}

}  // namespace

TEST_CASE("healthz") {
  auto svc = fixture_service();
  auto r = get(*svc, "/healthz");
  CHECK(r.status == 200);
  auto j = json::parse(r.body);
  CHECK(j.at("status") == "ok");
  CHECK(j.at("n_docs") == fixture().index.stats.n_docs);
  CHECK(j.at("format_version") == 1);
}

TEST_CASE("search route matches the engine") {
  const auto& f = fixture();
  auto svc = fixture_service();
  Query q = skillgrep::testing::query_one();
  auto r = post(*svc, "/search", query_to_json(q));
  REQUIRE(r.status == 200);
  CHECK(json::parse(r.body) == response_to_json(execute_query(q, f.index, f.store)));

  CHECK(post(*svc, "/search", json::object()).status == 422);
  CHECK(post(*svc, "/search", json{{"skils", {"java"}}}).status == 422);
  auto bad = svc->handle(HttpRequest{"POST", "/search", {}, "{nope", ""});
  CHECK(bad.status == 400);
  CHECK(json::parse(bad.body).at("code") == "FormatError");
  auto unknown = json::parse(post(*svc, "/search", json{{"skills", {"zzyzx wrangling"}}}).body);
  CHECK(unknown.at("results").empty());
  CHECK(unknown.at("warnings").size() == 1);
}

TEST_CASE("analytics routes") {
  const auto& f = fixture();
  auto svc = fixture_service();
  auto top = get(*svc, "/analytics/top-skills", {{"k", "5"}});
  REQUIRE(top.status == 200);
  CHECK(json::parse(top.body) == ranked_list_to_json(top_skills(f.index, f.store, 5)));
  CHECK(get(*svc, "/analytics/top-skills", {{"industry", "underwater basket"}}).status == 422);
  CHECK(get(*svc, "/analytics/top-skills", {{"k", "0"}}).status == 422);

  auto tech = get(*svc, "/analytics/top-technologies");
  CHECK(json::parse(tech.body) == ranked_list_to_json(top_technologies(f.index, f.store, 40)));

  auto both = get(*svc, "/analytics/companies-by-technology", {{"tech", "tableau, mongodb"}});
  CHECK(json::parse(both.body) ==
        ranked_list_to_json(companies_by_technology(f.store, {"tableau", "mongodb"}, 40)));
  CHECK(get(*svc, "/analytics/companies-by-technology").status == 422);

  auto rec = get(*svc, "/analytics/top-recruiters", {{"skill", "java"}, {"degree", "master"}});
  CHECK(json::parse(rec.body) == ranked_list_to_json(top_recruiters(f.index, "java", "master", 40)));
  CHECK(get(*svc, "/analytics/top-recruiters", {{"skill", "zzyzx"}, {"degree", "master"}}).status ==
        422);
}

TEST_CASE("contacts route") {
  auto svc = fixture_service();
  auto r = get(*svc, "/companies/brightloop.io/contacts");
  REQUIRE(r.status == 200);
  auto j = json::parse(r.body);
  CHECK(j.at("domain") == "brightloop.io");
  CHECK(j.at("contacts").size() == 2);
  CHECK(json::parse(get(*svc, "/companies/brightloop.io/contacts", {{"all", "1"}}).body)
            .at("contacts")
            .size() == 3);
  CHECK(json::parse(get(*svc, "/companies/Amazon Web Services/contacts").body).at("domain") ==
        "amazon.com");
  CHECK(get(*svc, "/companies/nobody.example/contacts").status == 404);
}

TEST_CASE("skills prefix route") {
  auto svc = fixture_service();
  auto j = json::parse(get(*svc, "/skills", {{"prefix", "Ja"}}).body);
  REQUIRE_FALSE(j.empty());
  for (const auto& s : j) CHECK(s.get<std::string>().starts_with("ja"));
  CHECK(json::parse(get(*svc, "/skills", {{"prefix", "j"}, {"limit", "2"}}).body).size() <= 2);
  CHECK(json::parse(get(*svc, "/skills").body).empty());
}

TEST_CASE("feedback route records clicks and the fold applies them") {
  skillgrep::testing::TempDir dir;
  auto svc = fixture_service(dir / "clicks.jsonl");
  Query q;
  q.skills = {"python"};
  auto before = json::parse(post(*svc, "/search", query_to_json(q)).body);
  std::string id = before.at("results").back().at("posting_id");

  auto r = post(*svc, "/feedback", json{{"posting_id", id}, {"ts", "2026-01-01T00:00:00Z"}});
  CHECK(r.status == 202);
  CHECK(post(*svc, "/feedback", json{{"posting_id", "nope"}}).status == 404);
  CHECK(post(*svc, "/feedback", json{{"id", 3}}).status == 422);
  CHECK(svc->feedback().pending_events() == 1);

  auto unchanged = json::parse(post(*svc, "/search", query_to_json(q)).body);
  CHECK(unchanged == before);
  svc->feedback().fold();
  auto after = json::parse(post(*svc, "/search", query_to_json(q)).body);
  for (const auto& res : after.at("results")) {
    if (res.at("posting_id") == id) CHECK(res.at("factors").at("feedback") == doctest::Approx(std::log2(3.0)));
  }
}

TEST_CASE("unknown routes and cors") {
  auto svc = fixture_service({}, {"http://ui.test"});
  CHECK(get(*svc, "/nope").status == 404);
  auto r = svc->handle(HttpRequest{"GET", "/healthz", {}, "", "http://ui.test"});
  CHECK(r.headers.at("Access-Control-Allow-Origin") == "http://ui.test");
  auto other = svc->handle(HttpRequest{"GET", "/healthz", {}, "", "http://evil.test"});
  CHECK_FALSE(other.headers.contains("Access-Control-Allow-Origin"));
  CHECK(svc->handle(HttpRequest{"OPTIONS", "/search", {}, "", "http://ui.test"}).status == 204);
}

TEST_CASE("live server answers over HTTP") {
  auto svc = fixture_service();
  HttpServer server(*svc, 1);
  int port = server.start("127.0.0.1", 0);
  REQUIRE(port > 0);
  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/healthz");
  REQUIRE(health);
  CHECK(health->status == 200);

  Query q = skillgrep::testing::query_one();
  auto res = client.Post("/search", query_to_json(q).dump(), "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body) == json::parse(post(*svc, "/search", query_to_json(q)).body));

  auto top = client.Get("/analytics/top-recruiters?skill=java&degree=master&k=3");
  REQUIRE(top);
  CHECK(json::parse(top->body).size() <= 3);
  auto contacts = client.Get("/companies/brightloop.io/contacts");
  REQUIRE(contacts);
  CHECK(contacts->status == 200);
  server.stop();
}

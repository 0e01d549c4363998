// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include <cmath>
#include <fstream>
#include <random>

#include "doctest.h"
#include "fixture.h"
#include "oracles.h"
#include "queries.h"
#include "skillgrep/error.h"
#include "skillgrep/query_engine.h"

using namespace skillgrep;
using skillgrep::testing::fixture;
using skillgrep::testing::query_one;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kDomainError;
}

std::vector<std::string> ids(const std::vector<SearchResult>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(r.posting_id);
  return out;
}

std::vector<SearchResult> ranked(const Query& q, const ClickCounts& clicks = {}) {
  const auto& f = fixture();
  std::vector<std::string> warnings;
  return rank_matches(q, f.index, f.store, clicks, RankingConfig{}, &warnings);
}

}  // namespace

TEST_CASE("range parsing and query validation") {
  CHECK(parse_range("50:200") == Range{50, 200});
  CHECK(parse_range("1000:") == Range{1000, std::nullopt});
  CHECK(parse_range(":5") == Range{std::nullopt, 5});
  CHECK(code_of([] { parse_range("a:b"); }) == ErrorCode::kInvalidQuery);
  CHECK(code_of([] { parse_range(":"); }) == ErrorCode::kInvalidQuery);
  CHECK(Range{50, 200}.contains(50));
  CHECK(Range{50, 200}.contains(200));
  CHECK_FALSE(Range{50, 200}.contains(201));

  CHECK(code_of([] { validate_query(Query{}); }) == ErrorCode::kInvalidQuery);
  Query q;
  q.employees = Range{200, 50};
  CHECK(code_of([&] { validate_query(q); }) == ErrorCode::kInvalidQuery);
  q.employees = Range{50, 200};
  q.limit = 0;
  CHECK(code_of([&] { validate_query(q); }) == ErrorCode::kInvalidQuery);
  q.limit = 1;
  CHECK_NOTHROW(validate_query(q));
}

TEST_CASE("ranking factor formulas") {
  CHECK(feedback_factor(0) == 1.0);
  CHECK(feedback_factor(2) == 2.0);
  CHECK(alexa_factor(10000) == doctest::Approx(0.2));
  CHECK(alexa_factor(1) == 1.0);
  CHECK(employee_factor(120) == doctest::Approx(std::log10(121.0) / std::log10(1e6 + 1.0)));
  CHECK(employee_factor(5'000'000) == 1.0);
  CHECK(lemma_factor(10) == 0.5);
  CHECK(lemma_factor(40) == 1.0);

  CHECK(rank_score({}, IndexedPosting{}, 0.5) == 0.5);
  IndexedPosting p;
  p.weights = {{"a", 2.0}, {"b", 1.0}};
  CHECK(rank_score({"a", "b"}, p, 0.5) == 0.75);
}

TEST_CASE("attribute factors for a fixture company") {
  const auto& f = fixture();
  const CompanyRecord* c = f.store.lookup("brightloop.io");
  REQUIRE(c != nullptr);
  IndexedPosting p;
  for (int i = 0; i < 10; ++i) p.bag["l" + std::to_string(i)] = SkillCount{1, {}};
  Query q;
  q.micro_industries = {"data analytics"};
  auto fac = attribute_factors(c, p, q, 0);
  CHECK(fac.feedback == 1.0);
  CHECK(fac.af == doctest::Approx(0.2));
  CHECK(fac.ef == doctest::Approx(employee_factor(120)));
  CHECK(fac.nlf == 0.5);
  CHECK(fac.cks == doctest::Approx(0.9));
  CHECK(fac.defaulted == std::vector<std::string>{"feedback"});

  q.micro_industries = {"data analytics", "genomics"};
  CHECK(attribute_factors(c, p, q, 0).cks == doctest::Approx(std::sqrt(0.81 / 2.0)));

  auto none = attribute_factors(nullptr, p, q, 3);
  CHECK(none.af == 1.0);
  CHECK(none.ef == 1.0);
  CHECK(none.cks == 1.0);
  CHECK(none.feedback == doctest::Approx(std::log2(5.0)));
  CHECK(none.defaulted == std::vector<std::string>{"af", "ef", "cks"});
}

TEST_CASE("contains_phrase uses description normalization") {
  CHECK(contains_phrase("we need a bachelor degree in cs", "Bachelor Degree"));
  CHECK_FALSE(contains_phrase("we need a bachelor degree in cs", "degree bachelor"));
  CHECK(contains_phrase("uses email daily", "E-mail"));
  CHECK_FALSE(contains_phrase("anything", "  "));
}

TEST_CASE("Query-1 analog returns exactly the satisfying postings") {
  const auto& f = fixture();
  Query q = query_one();
  auto resp = execute_query(q, f.index, f.store);
  auto ref = oracle::reference_search(q, f.index, f.store);
  REQUIRE(resp.results.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(resp.results[i].posting_id == ref[i].first);
    CHECK(std::abs(resp.results[i].rank_score - ref[i].second) <= 1e-9);
  }
  CHECK(resp.total_results == 8);
  std::vector<std::string> keys;
  for (const auto& g : resp.groups) {
    keys.push_back(g.key);
    CHECK(g.results.size() == 2);
    REQUIRE(g.company.has_value());
  }
  CHECK(keys == std::vector<std::string>{"nimbusharbor.com", "brightloop.io",
                                         "ferrousdata.com", "quillstack.com"});
  auto groups = oracle::reference_groups(q, f.index, f.store);
  REQUIRE(groups.size() == resp.groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    CHECK(groups[i].first == resp.groups[i].key);
    CHECK(groups[i].second == ids(resp.groups[i].results));
  }
  for (const auto& p : f.index.postings) {
    if (p.company_name_raw == "Phantom Widgets Inc" || p.domain == "zephyrrobotics.com") {
      CHECK(oracle::satisfies(q, p, f.store, f.dictionary) == false);
    }
  }
}

TEST_CASE("property: 200 random conjunctive queries are sound and complete") {
  const auto& f = fixture();
  std::mt19937 rng(200);
  int non_empty = 0;
  for (int i = 0; i < 200; ++i) {
    Query q = skillgrep::testing::random_query(rng, f);
    auto got = ranked(q);
    std::set<std::string> returned;
    for (const auto& r : got) {
      returned.insert(r.posting_id);
      CHECK(oracle::satisfies(q, *f.index.find(r.posting_id), f.store, f.dictionary));
    }
    for (const auto& p : f.index.postings) {
      if (oracle::satisfies(q, p, f.store, f.dictionary)) CHECK(returned.contains(p.id));
    }
    auto ref = oracle::reference_search(q, f.index, f.store);
    REQUIRE(ref.size() == got.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
      CHECK(got[k].posting_id == ref[k].first);
      CHECK(std::abs(got[k].rank_score - ref[k].second) <= 1e-9);
    }
    if (!got.empty()) ++non_empty;
  }
  CHECK(non_empty >= 100);
}

TEST_CASE("unknown skill yields a warning and no results") {
  const auto& f = fixture();
  Query q;
  q.skills = {"python", "zzyzx wrangling"};
  auto resp = execute_query(q, f.index, f.store);
  CHECK(resp.results.empty());
  CHECK(resp.groups.empty());
  REQUIRE(resp.warnings.size() == 1);
  CHECK(resp.warnings[0].find("zzyzx wrangling") != std::string::npos);
}

TEST_CASE("company facets exclude postings without a record or attribute") {
  Query q;
  q.revenue_kusd = Range{0, std::nullopt};
  for (const auto& r : ranked(q)) {
    CHECK_FALSE(r.domain.empty());
    CHECK(r.domain != "marlinbay.com");  // no revenue on record
    CHECK(r.domain != "zephyrrobotics.com");
  }
  Query one_of;
  one_of.industries = {"staffing services", "legal services"};
  std::set<std::string> domains;
  for (const auto& r : ranked(one_of)) domains.insert(r.domain);
  CHECK(domains.contains("staffwise.com"));
  for (const auto& d : domains) {
    CHECK((d == "staffwise.com" || d == "harborviewstaffing.com" || d == "ironcladlegal.com"));
  }
}

TEST_CASE("paging applies to both groups and results") {
  const auto& f = fixture();
  Query q;
  q.skills = {"python"};
  auto all = execute_query(q, f.index, f.store);
  REQUIRE(all.total_results > 3);
  q.offset = 1;
  q.limit = 2;
  auto page = execute_query(q, f.index, f.store);
  CHECK(page.total_results == all.total_results);
  CHECK(page.total_groups == all.total_groups);
  REQUIRE(page.results.size() == 2);
  CHECK(page.results[0] == all.results[1]);
  CHECK(page.results[1] == all.results[2]);
  CHECK(page.groups.size() == std::min<std::size_t>(2, all.groups.size() - 1));
  q.offset = 10'000;
  CHECK(execute_query(q, f.index, f.store).results.empty());
}

TEST_CASE("identical queries give identical responses") {
  const auto& f = fixture();
  std::mt19937 rng(4);
  for (int i = 0; i < 30; ++i) {
    Query q = skillgrep::testing::random_query(rng, f);
    CHECK(execute_query(q, f.index, f.store) == execute_query(q, f.index, f.store));
  }
}

TEST_CASE("property: raising any factor or the skill weight raises the rank score") {
  const auto& f = fixture();
  std::mt19937 rng(6);
  int checked = 0;
  for (const auto& p : f.index.postings) {
    const CompanyRecord* c = p.domain.empty() ? nullptr : f.store.lookup(p.domain);
    if (c == nullptr || !c->alexa_rank || !c->employees || c->micro_industries.empty()) continue;
    if (p.bag.empty()) continue;
    std::vector<std::string> lemmas{p.bag.begin()->first};
    if (p.weights.at(lemmas[0]) <= 0.0) continue;
    Query q;
    q.micro_industries = {c->micro_industries.begin()->first};
    if (c->micro_industries.begin()->second >= 1.0) continue;
    std::uint64_t clicks = rng() % 5;
    double base = rank_score(lemmas, p, attribute_factors(c, p, q, clicks).product());
    REQUIRE(base > 0.0);

    CHECK(rank_score(lemmas, p, attribute_factors(c, p, q, clicks + 1).product()) > base);

    CompanyRecord better = *c;
    if (*better.alexa_rank > 1) {
      better.alexa_rank = *c->alexa_rank / 2;
      CHECK(rank_score(lemmas, p, attribute_factors(&better, p, q, clicks).product()) > base);
    }
    better = *c;
    better.employees = *c->employees + 1;
    if (employee_factor(*c->employees) < 1.0) CHECK(rank_score(lemmas, p, attribute_factors(&better, p, q, clicks).product()) > base);
    better = *c;
    better.micro_industries.begin()->second = std::min(1.0, c->micro_industries.begin()->second + 0.05);
    CHECK(rank_score(lemmas, p, attribute_factors(&better, p, q, clicks).product()) > base);

    if (p.bag.size() < 20) {
      IndexedPosting bigger = p;
      bigger.bag["zz extra lemma"] = SkillCount{1, {}};
      CHECK(rank_score(lemmas, bigger, attribute_factors(c, bigger, q, clicks).product()) > base);
    }
    IndexedPosting heavier = p;
    heavier.weights[lemmas[0]] *= 1.5;
    CHECK(rank_score(lemmas, heavier, attribute_factors(c, heavier, q, clicks).product()) > base);
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("clicks lift a posting") {
  Query q;
  q.skills = {"python"};
  auto before = ranked(q);
  REQUIRE(before.size() >= 2);
  std::size_t at = 0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (before[i].rank_score > 0.0) at = i;
  }
  REQUIRE(at > 0);
  const std::string id = before[at].posting_id;
  auto after = ranked(q, ClickCounts{{id, 6}});
  std::size_t new_at = 0;
  for (std::size_t i = 0; i < after.size(); ++i) {
    if (after[i].posting_id == id) new_at = i;
  }
  CHECK(new_at < at);
  CHECK(after[new_at].rank_score == doctest::Approx(before[at].rank_score * 3.0));
  CHECK(after[new_at].factors.feedback == 3.0);
}

TEST_CASE("contacts are filtered to recruiters and managers") {
  const auto& store = fixture().store;
  auto got = find_contacts({"brightloop.io", "tallgrass.io", "nobody.example"}, store);
  REQUIRE(got.size() == 3);
  std::vector<std::string> titles;
  for (const auto& c : got.at("brightloop.io")) titles.push_back(c.title_raw);
  CHECK(titles == std::vector<std::string>{"HR Coordinator", "CTO"});
  CHECK(got.at("tallgrass.io").empty());
  CHECK(got.at("nobody.example").empty());
  auto everyone = find_contacts({"brightloop.io"}, store, [](const Contact&) { return true; });
  CHECK(everyone.at("brightloop.io").size() == 3);
}

TEST_CASE("feedback log folding") {
  auto counts = fold_feedback_log(
      "{\"posting_id\":\"p001\",\"ts\":\"2026-01-01T00:00:00Z\"}\n\n"
      "{\"posting_id\":\"p002\"}\n{\"posting_id\":\"p001\"}\n");
  CHECK(counts == ClickCounts{{"p001", 2}, {"p002", 1}});
  CHECK(code_of([] { fold_feedback_log("{bad\n"); }) == ErrorCode::kFormatError);
  CHECK(code_of([] { fold_feedback_log("{\"id\":1}\n"); }) == ErrorCode::kFormatError);

  FeedbackStore memory;
  memory.record("p003", "2026-01-01T00:00:00Z");
  memory.record("p003", "2026-01-01T00:00:01Z");
  CHECK(memory.pending_events() == 2);
  CHECK(memory.snapshot()->empty());
  memory.fold();
  CHECK(*memory.snapshot() == ClickCounts{{"p003", 2}});
  CHECK(memory.pending_events() == 0);

  skillgrep::testing::TempDir dir;
  {
    FeedbackStore disk(dir / "clicks.jsonl");
    disk.record("p004", "2026-01-01T00:00:00Z");
    disk.fold();
    CHECK(*disk.snapshot() == ClickCounts{{"p004", 1}});
  }
  FeedbackStore reopened(dir / "clicks.jsonl");
  CHECK(*reopened.snapshot() == ClickCounts{{"p004", 1}});
}

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include <cmath>
#include <random>

#include "doctest.h"
#include "fixture.h"
#include "oracles.h"
#include "skillgrep/error.h"
#include "skillgrep/weight_engine.h"

using namespace skillgrep;
using skillgrep::testing::fixture;

namespace {

IndexedPosting doc(std::string id, TitleNgramSet ngrams,
                   std::map<std::string, std::uint64_t> tf) {
  IndexedPosting p;
  p.id = std::move(id);
  p.title_ngrams = std::move(ngrams);
  for (const auto& [lemma, n] : tf) {
    p.bag[lemma] = SkillCount{n, {{lemma, n}}};
    p.doc_len += n;
    p.scaled_tfidf[lemma] = 1.0;
  }
  return p;
}

// Random index of `docs` postings over a small ngram and lemma alphabet.
PostingIndex random_index(std::mt19937& rng, int docs) {
  const std::vector<std::string> ngrams{"nurse", "engineer", "software engineer", "cook",
                                        "manager"};
  const std::vector<std::string> lemmas{"java", "cpr", "sql", "food safety", "email",
                                        "scheduling"};
  PostingIndex index;
  for (int i = 0; i < docs; ++i) {
    TitleNgramSet g;
    for (const auto& n : ngrams) if (rng() % 3 == 0) g.insert(n);
    std::map<std::string, std::uint64_t> tf;
    for (const auto& l : lemmas) if (rng() % 2 == 0) tf[l] = 1 + rng() % 6;
    if (tf.empty()) tf[lemmas[rng() % lemmas.size()]] = 1;
    index.postings.push_back(doc("d" + std::to_string(i), g, tf));
  }
  return index;
}

}  // namespace

TEST_CASE("count matrix equals a brute-force recount") {
  std::mt19937 rng(2);
  for (int round = 0; round < 20; ++round) {
    auto index = random_index(rng, 30);
    auto m = build_count_matrix(index);
    std::uint64_t total = 0;
    for (const auto& p : index.postings) {
      for (const auto& [l, c] : p.bag) total += c.total_count;
    }
    CHECK(m.global_total == total);
    for (const auto& [g, row] : m.counts) {
      for (const auto& [l, n] : row) {
        std::uint64_t expect = 0;
        for (const auto& p : index.postings) {
          if (p.title_ngrams.contains(g) && p.bag.contains(l)) expect += p.bag.at(l).total_count;
        }
        CHECK(n == expect);
      }
    }
  }
}

TEST_CASE("skill_weight worked examples") {
  // "alpha" appears only in the nurse docs, and those docs contain only alpha.
  PostingIndex index;
  index.postings.push_back(doc("a", {"nurse"}, {{"alpha", 2}}));
  index.postings.push_back(doc("b", {"nurse"}, {{"alpha", 1}}));
  index.postings.push_back(doc("c", {"cook"}, {{"beta", 3}, {"gamma", 3}}));
  auto m = build_count_matrix(index);
  CHECK(skill_weight("alpha", "nurse", m) == doctest::Approx(9.0 / 3.0));
  CHECK(skill_weight("alpha", "cook", m) == 0.0);
  CHECK(skill_weight("beta", "cook", m) == doctest::Approx((3.0 / 6.0) / (3.0 / 9.0)));
  CHECK(skill_weight("alpha", "nurse", m) ==
        doctest::Approx(oracle::reference_skill_weight(index, "nurse", "alpha")));

  // Equal conditional and global relative frequency gives 1.
  PostingIndex flat;
  flat.postings.push_back(doc("a", {"x"}, {{"p", 1}, {"q", 1}}));
  flat.postings.push_back(doc("b", {"y"}, {{"p", 1}, {"q", 1}}));
  CHECK(skill_weight("p", "x", build_count_matrix(flat)) == 1.0);
}

TEST_CASE("average weights and fallback") {
  PostingIndex index;
  index.postings.push_back(doc("a", {"nurse", "cook"}, {{"alpha", 1}}));
  index.postings.push_back(doc("b", {"nurse"}, {{"beta", 1}}));
  auto m = build_count_matrix(index);
  auto w = average_posting_weights(index.postings[0], m);
  double expect = (skill_weight("alpha", "nurse", m) + skill_weight("alpha", "cook", m)) / 2.0;
  CHECK(w.at("alpha") == doctest::Approx(expect));

  auto bare = doc("c", {}, {{"alpha", 1}});
  try {
    average_posting_weights(bare, m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoTitleNgrams);
  }
  index.postings.push_back(bare);
  attach_weights(index, m);
  CHECK(index.postings[2].weights == std::map<std::string, double>{{"alpha", 1.0}});
  CHECK(index.has_weights);
}

TEST_CASE("final scores are weight times scaled score") {
  IndexedPosting p;
  p.scaled_tfidf = {{"a", 0.4}, {"b", 1.0}, {"c", 0.0}};
  auto f = final_scores(p, {{"a", 1.5}, {"b", 0.0}, {"c", 2.0}});
  CHECK(f.at("a") == doctest::Approx(0.6));
  CHECK(f.at("b") == 0.0);
  CHECK(f.at("c") == 0.0);
}

TEST_CASE("property: per-ngram conditional probabilities sum to one") {
  std::mt19937 rng(9);
  for (int round = 0; round < 100; ++round) {
    auto m = build_count_matrix(random_index(rng, 25));
    for (const auto& [g, row] : m.counts) {
      double sum = 0.0;
      for (const auto& [l, n] : row) sum += double(n) / double(m.ngram_totals.at(g));
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("property: common skills are damped on 500 random matrices") {
  std::mt19937 rng(500);
  int compared = 0;
  for (int round = 0; round < 500; ++round) {
    CountMatrix m;
    std::uint64_t joint = 1 + rng() % 20;
    std::uint64_t ga = joint + 1 + rng() % 100;
    std::uint64_t gb = joint + rng() % (ga - joint);
    m.counts["g"]["a"] = joint;
    m.counts["g"]["b"] = joint;
    std::uint64_t other = rng() % 50;
    if (other > 0) m.counts["g"]["z"] = other;
    m.ngram_totals["g"] = 2 * joint + other;
    m.global_counts["a"] = ga;
    m.global_counts["b"] = gb;
    m.global_counts["z"] = other + rng() % 50 + 1;
    m.global_total = ga + gb + m.global_counts["z"];
    if (ga > gb) {
      CHECK(skill_weight("a", "g", m) < skill_weight("b", "g", m));
      ++compared;
    }
  }
  CHECK(compared == 500);
}

TEST_CASE("fixture weights equal a brute-force recomputation") {
  const auto& index = fixture().index;
  REQUIRE(index.has_weights);
  for (const auto& p : index.postings) {
    auto ref = oracle::reference_weights(index, p);
    REQUIRE(p.weights.size() == ref.size());
    for (const auto& [lemma, w] : ref) {
      CHECK(std::abs(p.weights.at(lemma) - w) <= 1e-9);
      CHECK(p.weights.at(lemma) >= 0.0);
      double fs = p.final_scores.at(lemma);
      CHECK(std::abs(fs - w * p.scaled_tfidf.at(lemma)) <= 1e-12);
      CHECK((fs == 0.0) == (w == 0.0 || p.scaled_tfidf.at(lemma) == 0.0));
    }
  }
}

TEST_CASE("count matrix tsv") {
  PostingIndex index;
  index.postings.push_back(doc("a", {"nurse"}, {{"cpr", 2}}));
  CHECK(count_matrix_tsv(build_count_matrix(index)) == "ngram\tlemma\tcount\nnurse\tcpr\t2\n");
}

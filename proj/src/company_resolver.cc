// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/company_resolver.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "skillgrep/error.h"
#include "skillgrep/json_codec.h"
#include "skillgrep/text.h"

namespace skillgrep {
namespace {

bool is_name_char(char c) {
  return text::is_alnum(c) || static_cast<unsigned char>(c) >= 0x80;
}

std::vector<std::string> strip_affixes(std::vector<std::string> tokens,
                                       const WordSet& affixes) {
  auto first = tokens.begin();
  auto last = tokens.end();
  while (first != last && affixes.contains(*first)) ++first;
  while (last != first && affixes.contains(*(last - 1))) --last;
  if (first == last) return tokens;
  return {first, last};
}

std::vector<std::string> drop_stopwords(std::vector<std::string> tokens,
                                        const WordSet& stopwords) {
  std::vector<std::string> kept;
  for (const auto& t : tokens) {
    if (!stopwords.contains(t)) kept.push_back(t);
  }
  if (kept.empty()) return tokens;
  return kept;
}

std::set<std::string> token_set(std::string_view s) {
  auto tokens = text::split_whitespace(s);
  return {tokens.begin(), tokens.end()};
}

}  // namespace

CompanyNameNormalizer CompanyNameNormalizer::load(
    const std::filesystem::path& affixes, const std::filesystem::path& stopwords) {
  return CompanyNameNormalizer(load_word_set(affixes), load_word_set(stopwords));
}

std::string CompanyNameNormalizer::normalize(std::string_view raw) const {
  std::string s = text::to_lower(raw);
  // Right single quotation mark -> ASCII apostrophe.
  for (std::size_t pos; (pos = s.find("\xE2\x80\x99")) != std::string::npos;) {
    s.replace(pos, 3, "'");
  }
  std::string cleaned;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\'' && i + 1 < s.size() && s[i + 1] == 's' &&
        (i + 2 == s.size() || !is_name_char(s[i + 2]))) {
      continue;  // "macy's" -> "macys"
    }
    cleaned += is_name_char(s[i]) ? s[i] : ' ';
  }
  auto tokens = text::split_whitespace(cleaned);
  if (tokens.empty()) {
    throw Error(ErrorCode::kEmptyName,
                "company name has no alphanumeric content: '" +
                    std::string(raw) + "'");
  }
  while (true) {
    auto next = drop_stopwords(strip_affixes(tokens, affixes_), stopwords_);
    if (next == tokens) break;
    tokens = std::move(next);
  }
  return text::join(tokens, " ");
}

std::string canonical_domain(std::string_view url) {
  std::string s = text::to_lower(text::trim(url));
  for (std::string_view scheme : {"https://", "http://"}) {
    if (text::starts_with(s, scheme)) s.erase(0, scheme.size());
  }
  if (auto slash = s.find_first_of("/?#"); slash != std::string::npos) {
    s.erase(slash);
  }
  if (auto colon = s.find(':'); colon != std::string::npos) s.erase(colon);
  if (text::starts_with(s, "www.")) s.erase(0, 4);
  while (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

double token_jaccard(std::string_view a, std::string_view b) {
  auto sa = token_set(a);
  auto sb = token_set(b);
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& t : sa) common += sb.contains(t) ? 1 : 0;
  return static_cast<double>(common) /
         static_cast<double>(sa.size() + sb.size() - common);
}

AliasTable::AliasTable(std::vector<Row> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    exact_[rows_[i].alias].push_back(i);
    for (const auto& tok : token_set(rows_[i].alias)) by_token_[tok].push_back(i);
  }
}

AliasTable AliasTable::load(const std::filesystem::path& path,
                            const CompanyNameNormalizer& normalizer) {
  auto rows = text::parse_csv(text::read_file(path));
  std::vector<Row> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.empty() || text::trim(row[0]).starts_with('#')) continue;
    if (out.empty() && text::trim(row[0]) == "alias") continue;
    auto where = path.string() + ": row " + std::to_string(r + 1);
    if (row.size() < 2 || row.size() > 3) {
      throw Error(ErrorCode::kFormatError, where + ": expected alias,domain[,location]");
    }
    std::string alias;
    try {
      alias = normalizer.normalize(row[0]);
    } catch (const Error&) {
      throw Error(ErrorCode::kFormatError, where + ": alias has no usable tokens");
    }
    auto domain = canonical_domain(row[1]);
    if (domain.empty()) throw Error(ErrorCode::kFormatError, where + ": empty domain");
    std::string location =
        row.size() == 3 ? text::collapse_spaces(text::to_lower(row[2])) : "";
    out.push_back(Row{std::move(alias), std::move(domain), std::move(location)});
  }
  return AliasTable(std::move(out));
}

std::optional<WebsiteMatch> AliasTable::resolve(
    std::string_view normalized_name,
    std::optional<std::string_view> location) const {
  std::string where =
      location ? text::collapse_spaces(text::to_lower(*location)) : "";
  auto location_hit = [&](const Row& row) {
    return !where.empty() && !row.location.empty() && row.location == where;
  };
  // Orders equally similar candidates.
  auto better = [&](const Row& a, const Row& b) {
    bool la = location_hit(a);
    bool lb = location_hit(b);
    if (la != lb) return la;
    if (a.domain != b.domain) return a.domain < b.domain;
    return a.alias < b.alias;
  };

  if (auto it = exact_.find(normalized_name); it != exact_.end()) {
    const Row* best = nullptr;
    for (std::size_t i : it->second) {
      if (best == nullptr || better(rows_[i], *best)) best = &rows_[i];
    }
    return WebsiteMatch{best->domain, 1.0};
  }

  std::set<std::size_t> candidates;
  for (const auto& tok : token_set(normalized_name)) {
    if (auto it = by_token_.find(tok); it != by_token_.end()) {
      candidates.insert(it->second.begin(), it->second.end());
    }
  }
  const Row* best = nullptr;
  double best_sim = 0.0;
  for (std::size_t i : candidates) {
    double sim = token_jaccard(normalized_name, rows_[i].alias);
    if (best == nullptr || sim > best_sim ||
        (sim == best_sim && better(rows_[i], *best))) {
      best = &rows_[i];
      best_sim = sim;
    }
  }
  if (best == nullptr || best_sim < kFuzzyFloor) return std::nullopt;
  // Token sets can coincide without the strings being equal ("web amazon");
  // only exact hits report full confidence.
  double confidence = std::min(best_sim, std::nextafter(1.0, 0.0));
  return WebsiteMatch{best->domain, confidence};
}

CompanyStore::CompanyStore(std::vector<CompanyRecord> records) {
  for (auto& r : records) {
    auto domain = r.domain;
    records_.insert_or_assign(std::move(domain), std::move(r));
  }
}

CompanyStore CompanyStore::load(const std::filesystem::path& path,
                                const TitleNormalizer& normalizer,
                                const TitleTaxonomy& taxonomy) {
  std::string content = text::read_file(path);
  std::vector<CompanyRecord> records;
  std::size_t line_no = 0;
  for (const auto& line : text::split(content, '\n')) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto where = path.string() + ":" + std::to_string(line_no);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kFormatError, where + ": malformed JSON: " + e.what());
    }
    CompanyRecord record;
    try {
      record = company_from_json(obj);
    } catch (const Error& e) {
      throw Error(ErrorCode::kFormatError, where + ": " + e.what());
    }
    for (auto& contact : record.contacts) {
      TitleClass cls;
      try {
        cls = parse_title(normalizer.normalize(contact.title_raw), taxonomy);
      } catch (const Error&) {
        cls.departments = {Department::kOther};
      }
      contact.level = cls.level;
      contact.departments = std::move(cls.departments);
    }
    records.push_back(std::move(record));
  }
  return CompanyStore(std::move(records));
}

const CompanyRecord* CompanyStore::lookup(std::string_view domain) const {
  auto it = records_.find(domain);
  if (it == records_.end()) it = records_.find(canonical_domain(domain));
  return it == records_.end() ? nullptr : &it->second;
}

std::string normalize_company_name(std::string_view raw,
                                   const CompanyNameNormalizer& normalizer) {
  return normalizer.normalize(raw);
}

std::optional<WebsiteMatch> resolve_website(
    std::string_view normalized_name, std::optional<std::string_view> location,
    const AliasTable& table) {
  return table.resolve(normalized_name, location);
}

const CompanyRecord* lookup_attributes(std::string_view domain,
                                       const CompanyAttributeSource& store) {
  return store.lookup(domain);
}

}  // namespace skillgrep

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/corpus.h"

#include <charconv>
#include <map>

#include "json.hpp"
#include "skillgrep/error.h"
#include "skillgrep/text.h"

namespace skillgrep {
namespace {

using nlohmann::json;

bool is_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  int month = (s[5] - '0') * 10 + (s[6] - '0');
  int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

// Shared validation for both record formats. Returns nullopt for records
// that violate the posting invariants.
std::optional<JobPosting> make_posting(
    const std::optional<std::string>& id,
    const std::optional<std::string>& title,
    const std::optional<std::string>& company,
    const std::optional<std::string>& description,
    std::optional<std::string> location,
    std::optional<std::string> date_posted) {
  if (!id || !title || !company || !description) return std::nullopt;
  if (text::trim(*id).empty() || text::trim(*title).empty() ||
      text::trim(*company).empty()) {
    return std::nullopt;
  }
  if (date_posted && !date_posted->empty() && !is_iso_date(*date_posted)) {
    return std::nullopt;
  }
  if (date_posted && date_posted->empty()) date_posted.reset();
  if (location && location->empty()) location.reset();
  return JobPosting{std::string(text::trim(*id)), *title, *company,
                    *description, std::move(location), std::move(date_posted)};
}

std::optional<std::string> string_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

std::pair<std::vector<JobPosting>, ManifestEntry> read_jsonl(
    const std::filesystem::path& path) {
  std::string content = text::read_file(path);
  ManifestEntry entry{path.string()};
  std::vector<JobPosting> out;
  std::size_t line_no = 0;
  for (auto& line : text::split(content, '\n')) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kFormatError,
                  path.string() + ":" + std::to_string(line_no) +
                      ": malformed JSON: " + e.what());
    }
    ++entry.total;
    std::optional<JobPosting> posting;
    if (obj.is_object()) {
      posting = make_posting(
          string_field(obj, "id"), string_field(obj, "title"),
          string_field(obj, "company"), string_field(obj, "description"),
          string_field(obj, "location"), string_field(obj, "date_posted"));
    }
    if (posting) {
      out.push_back(std::move(*posting));
      ++entry.valid;
    } else {
      ++entry.skipped;
    }
  }
  return {std::move(out), std::move(entry)};
}

std::pair<std::vector<JobPosting>, ManifestEntry> read_csv(
    const std::filesystem::path& path) {
  auto rows = text::parse_csv(text::read_file(path));
  ManifestEntry entry{path.string()};
  std::vector<JobPosting> out;
  if (rows.empty()) return {std::move(out), std::move(entry)};

  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < rows[0].size(); ++i) {
    column[std::string(text::trim(rows[0][i]))] = i;
  }
  for (const char* required : {"id", "title", "company", "description"}) {
    if (!column.contains(required)) {
      throw Error(ErrorCode::kFormatError,
                  path.string() + ": CSV header lacks column '" + required +
                      "'");
    }
  }
  auto cell = [&](const std::vector<std::string>& row,
                  const char* name) -> std::optional<std::string> {
    auto it = column.find(name);
    if (it == column.end() || it->second >= row.size()) return std::nullopt;
    return row[it->second];
  };
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    ++entry.total;
    std::optional<JobPosting> posting;
    if (row.size() == rows[0].size()) {
      posting = make_posting(cell(row, "id"), cell(row, "title"),
                             cell(row, "company"), cell(row, "description"),
                             cell(row, "location"), cell(row, "date_posted"));
    }
    if (posting) {
      out.push_back(std::move(*posting));
      ++entry.valid;
    } else {
      ++entry.skipped;
    }
  }
  return {std::move(out), std::move(entry)};
}

}  // namespace

RecordFormat format_for_path(const std::filesystem::path& path) {
  return text::to_lower(path.extension().string()) == ".csv"
             ? RecordFormat::kCsv
             : RecordFormat::kJsonl;
}

void Corpus::append(std::vector<JobPosting> postings, ManifestEntry entry) {
  std::unordered_set<std::string> incoming;
  for (const auto& p : postings) {
    if (ids_.contains(p.id) || !incoming.insert(p.id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate posting id '" + p.id + "' in " + entry.path);
    }
  }
  ids_.merge(incoming);
  for (auto& p : postings) postings_.push_back(std::move(p));
  manifest_.push_back(std::move(entry));
}

std::pair<std::vector<JobPosting>, ManifestEntry> FileFetcher::fetch(
    const std::string& location) {
  std::filesystem::path path(location);
  RecordFormat format = format_.value_or(format_for_path(path));
  return format == RecordFormat::kCsv ? read_csv(path) : read_jsonl(path);
}

void ingest_into(Corpus& corpus, const std::filesystem::path& path,
                 RecordFormat format) {
  FileFetcher fetcher(format);
  auto [postings, entry] = fetcher.fetch(path.string());
  corpus.append(std::move(postings), std::move(entry));
}

Corpus ingest_postings(const std::filesystem::path& path, RecordFormat format) {
  Corpus corpus;
  ingest_into(corpus, path, format);
  return corpus;
}

Corpus ingest_postings(const std::vector<std::filesystem::path>& paths) {
  Corpus corpus;
  for (const auto& p : paths) ingest_into(corpus, p, format_for_path(p));
  return corpus;
}

std::vector<RawSkillEntry> ingest_skill_lexicon(
    const std::filesystem::path& path) {
  auto rows = text::parse_csv(text::read_file(path));
  std::vector<RawSkillEntry> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto where = path.string() + ": row " + std::to_string(r + 1);
    if (row.size() == 1 && text::trim(row[0]).empty()) continue;
    if (!row.empty() && text::trim(row[0]).starts_with('#')) continue;
    if (row.size() != 2) {
      throw Error(ErrorCode::kFormatError, where + ": expected surface,count");
    }
    auto surface = text::trim(row[0]);
    auto count_text = text::trim(row[1]);
    if (out.empty() && surface == "surface" && count_text == "count") continue;
    if (surface.empty()) {
      throw Error(ErrorCode::kFormatError, where + ": empty skill surface");
    }
    std::uint64_t count = 0;
    auto res = std::from_chars(count_text.data(),
                               count_text.data() + count_text.size(), count);
    if (count_text.empty() || res.ec != std::errc() ||
        res.ptr != count_text.data() + count_text.size()) {
      throw Error(ErrorCode::kFormatError,
                  where + ": count must be a non-negative integer, got '" +
                      std::string(count_text) + "'");
    }
    auto words = text::split_whitespace(surface);
    out.push_back(RawSkillEntry{std::string(surface), count,
                                static_cast<std::uint32_t>(words.size())});
  }
  return out;
}

std::string corpus_to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& p : corpus.postings()) {
    json obj = {{"id", p.id},
                {"title", p.title_raw},
                {"company", p.company_name_raw},
                {"description", p.description_raw}};
    if (p.location) obj["location"] = *p.location;
    if (p.date_posted) obj["date_posted"] = *p.date_posted;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

}  // namespace skillgrep

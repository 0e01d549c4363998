// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/text.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "skillgrep/error.h"

namespace skillgrep {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileUnreadable: return "FileUnreadable";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kEmptySkill: return "EmptySkill";
    case ErrorCode::kEmptyTitle: return "EmptyTitle";
    case ErrorCode::kEmptyName: return "EmptyName";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kNoTitleNgrams: return "NoTitleNgrams";
    case ErrorCode::kUnknownSkill: return "UnknownSkill";
    case ErrorCode::kUnknownIndustry: return "UnknownIndustry";
    case ErrorCode::kInvalidQuery: return "InvalidQuery";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kUnknownPosting: return "UnknownPosting";
  }
  return "Unknown";
}

bool is_data_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomainError:
    case ErrorCode::kNoTitleNgrams:
      return false;
    default:
      return true;
  }
}

namespace text {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char delimiter) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == delimiter) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string join(std::span<const std::string> parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string join_range(std::span<const std::string> tokens, std::size_t begin,
                       std::size_t end) {
  return join(tokens.subspan(begin, end - begin), " ");
}

std::string collapse_spaces(std::string_view s) {
  auto tokens = split_whitespace(s);
  return join(tokens, " ");
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileUnreadable,
                "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::kFileUnreadable, "read failed: " + path.string());
  }
  return std::move(buf).str();
}

std::vector<std::string> read_data_lines(const std::filesystem::path& path) {
  std::string content = read_file(path);
  std::vector<std::string> out;
  for (auto& line : split(content, '\n')) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.push_back(std::move(line));
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view content) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_has_content = false;
  for (std::size_t i = 0; i < content.size(); ++i) {
    char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_has_content = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_has_content || !field.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        row.clear();
        field.clear();
        row_has_content = false;
        break;
      default:
        field += c;
        row_has_content = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::kFormatError, "unterminated quoted CSV field");
  }
  if (row_has_content || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace text
}  // namespace skillgrep

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Small string and delimited-file helpers shared by every module.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skillgrep::text {

// ASCII-only case folding; bytes >= 0x80 pass through so UTF-8 stays intact.
std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

inline bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::vector<std::string> split_whitespace(std::string_view s);
std::vector<std::string> split(std::string_view s, char delimiter);
std::string join(std::span<const std::string> parts, std::string_view sep);

// Joins tokens [begin, end) with single spaces.
std::string join_range(std::span<const std::string> tokens, std::size_t begin,
                       std::size_t end);

std::string collapse_spaces(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);

// Reads a whole file; throws Error(kFileUnreadable).
std::string read_file(const std::filesystem::path& path);

// Non-empty, non-comment ('#'-prefixed) lines, with trailing '\r' removed.
std::vector<std::string> read_data_lines(const std::filesystem::path& path);

// RFC 4180 style CSV: quoted fields may contain commas, quotes ("") and
// newlines. Throws Error(kFormatError) on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view content);

// Shortest representation that round-trips through strtod.
std::string format_double(double value);

}  // namespace skillgrep::text

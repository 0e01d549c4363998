// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include <fstream>

#include "doctest.h"
#include "fixture.h"
#include "skillgrep/error.h"
#include "skillgrep/text.h"

namespace text = skillgrep::text;
using skillgrep::ErrorCode;

TEST_CASE("lowercase, trim and whitespace splitting") {
  CHECK(text::to_lower("MiXeD 123") == "mixed 123");
  CHECK(text::trim("  \t padded \n") == "padded");
  CHECK(text::trim("   ").empty());
  CHECK(text::split_whitespace("  a  b\tc\n") == std::vector<std::string>{"a", "b", "c"});
  CHECK(text::split_whitespace("").empty());
  CHECK(text::collapse_spaces("  a   b  ") == "a b");
}

TEST_CASE("split keeps empty fields") {
  CHECK(text::split("a,,b,", ',') == std::vector<std::string>{"a", "", "b", ""});
  CHECK(text::split("", ',') == std::vector<std::string>{""});
}

TEST_CASE("join and join_range") {
  std::vector<std::string> v{"x", "y", "z"};
  CHECK(text::join(v, "-") == "x-y-z");
  CHECK(text::join_range(v, 1, 3) == "y z");
  CHECK(text::join_range(v, 2, 2).empty());
}

TEST_CASE("csv parsing handles quotes and embedded separators") {
  auto rows = text::parse_csv("a,b\n\"x, y\",\"say \"\"hi\"\"\"\r\nlast,\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"a", "b"});
  CHECK(rows[1] == std::vector<std::string>{"x, y", "say \"hi\""});
  CHECK(rows[2] == std::vector<std::string>{"last", ""});
}

TEST_CASE("data lines skip comments and blanks") {
  skillgrep::testing::TempDir dir;
  auto path = dir / "lines.txt";
  std::ofstream(path) << "# header\n\nfirst\r\n  # indented comment\nsecond\n";
  CHECK(text::read_data_lines(path) == std::vector<std::string>{"first", "second"});
}

TEST_CASE("reading a missing file is FileUnreadable") {
  try {
    text::read_file("/nonexistent/definitely/missing.txt");
    FAIL("expected an error");
  } catch (const skillgrep::Error& e) {
    CHECK(e.code() == ErrorCode::kFileUnreadable);
  }
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, 0.1, 5.169925001442312, 1e-12, 123456789.125}) {
    CHECK(std::stod(text::format_double(v)) == v);
  }
  CHECK(text::format_double(1.0) == "1");
}

TEST_CASE("error code names and data-error classes") {
  CHECK(skillgrep::error_code_name(ErrorCode::kInvalidQuery) == "InvalidQuery");
  CHECK(skillgrep::error_code_name(ErrorCode::kVersionMismatch) == "VersionMismatch");
  CHECK(skillgrep::is_data_error(ErrorCode::kFormatError));
  CHECK(skillgrep::is_data_error(ErrorCode::kVersionMismatch));
  CHECK_FALSE(skillgrep::is_data_error(ErrorCode::kDomainError));
  CHECK_FALSE(skillgrep::is_data_error(ErrorCode::kNoTitleNgrams));
}

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include <fstream>

#include "doctest.h"
#include "fixture.h"
#include "skillgrep/config.h"
#include "skillgrep/error.h"

using namespace skillgrep;
using skillgrep::testing::TempDir;

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

}  // namespace

TEST_CASE("config parsing") {
  auto c = parse_config(
      "# service\n"
      "[service]\n"
      "index_path = \"/tmp/index.bin\"\n"
      "listen_address = 0.0.0.0:9000\n"
      "result_limit_default = 25\n"
      "cors_allowed_origins = http://a.test, http://b.test\n"
      "fold_interval_seconds = 5\n");
  CHECK(c.index_path == "/tmp/index.bin");
  CHECK(c.listen_address == "0.0.0.0:9000");
  CHECK(c.result_limit_default == 25);
  CHECK(c.cors_allowed_origins == std::vector<std::string>{"http://a.test", "http://b.test"});
  CHECK(c.fold_interval_seconds == 5);
  CHECK(c.feedback_log_path.empty());

  CHECK(code_of([] { parse_config("colour = blue\n"); }) == ErrorCode::kConfigError);
  CHECK(code_of([] { parse_config("result_limit_default = lots\n"); }) == ErrorCode::kConfigError);
  CHECK(code_of([] { parse_config("just words\n"); }) == ErrorCode::kConfigError);
}

TEST_CASE("listen address splitting") {
  CHECK(split_listen_address("127.0.0.1:8080") == std::pair<std::string, int>{"127.0.0.1", 8080});
  CHECK(code_of([] { split_listen_address("localhost"); }) == ErrorCode::kConfigError);
  CHECK(code_of([] { split_listen_address("h:99999"); }) == ErrorCode::kConfigError);
  CHECK(code_of([] { split_listen_address(":80"); }) == ErrorCode::kConfigError);
}

TEST_CASE("config validation and file loading") {
  TempDir dir;
  std::ofstream(dir / "index.bin") << "x";
  std::ofstream(dir / "companies.jsonl") << "";
  std::ofstream(dir / "aliases.csv") << "";
  std::ofstream(dir / "svc.conf") << "index_path = " << (dir / "index.bin").string() << "\n"
                                  << "attribute_store_path = " << (dir / "companies.jsonl").string()
                                  << "\n"
                                  << "alias_table_path = " << (dir / "aliases.csv").string() << "\n"
                                  << "data_dir = " << dir.path().string() << "\n";
  auto c = load_config(dir / "svc.conf");
  CHECK_NOTHROW(validate_config(c));

  auto missing = c;
  missing.index_path = dir / "nope.bin";
  CHECK(code_of([&] { validate_config(missing); }) == ErrorCode::kConfigError);
  auto zero = c;
  zero.result_limit_default = 0;
  CHECK(code_of([&] { validate_config(zero); }) == ErrorCode::kConfigError);
  CHECK(code_of([&] { load_config(dir / "absent.conf"); }) == ErrorCode::kConfigError);
}

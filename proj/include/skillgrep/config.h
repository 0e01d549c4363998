// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace skillgrep {

struct ServiceConfig {
  std::filesystem::path index_path;
  std::filesystem::path attribute_store_path;
  std::filesystem::path alias_table_path;
  std::filesystem::path data_dir;
  std::filesystem::path feedback_log_path;  // empty: in-memory only
  std::string listen_address = "127.0.0.1:8080";
  std::size_t result_limit_default = 40;
  std::vector<std::string> cors_allowed_origins;
  std::uint32_t fold_interval_seconds = 60;
};

// Applies one key=value pair. Throws Error(kConfigError) for an unknown key or
// an unparsable value.
void apply_config_value(ServiceConfig& config, std::string_view key,
                        std::string_view value);

// key = value lines; '#' comments; values may be double-quoted.
ServiceConfig parse_config(std::string_view content, ServiceConfig base = {});
ServiceConfig load_config(const std::filesystem::path& path, ServiceConfig base = {});

// Checks that the configured files exist and the limit is positive.
void validate_config(const ServiceConfig& config);

// "host:port" -> (host, port). Throws Error(kConfigError).
std::pair<std::string, int> split_listen_address(std::string_view address);

}  // namespace skillgrep

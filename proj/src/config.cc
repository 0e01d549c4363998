// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/config.h"

#include <charconv>

#include "skillgrep/error.h"
#include "skillgrep/text.h"

namespace skillgrep {
namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T v{};
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size()) {
    throw Error(ErrorCode::kConfigError,
                "config key '" + std::string(key) + "' needs an integer, got '" +
                    std::string(value) + "'");
  }
  return v;
}

}  // namespace

void apply_config_value(ServiceConfig& config, std::string_view key,
                        std::string_view value) {
  if (key == "index_path") {
    config.index_path = std::string(value);
  } else if (key == "attribute_store_path") {
    config.attribute_store_path = std::string(value);
  } else if (key == "alias_table_path") {
    config.alias_table_path = std::string(value);
  } else if (key == "data_dir") {
    config.data_dir = std::string(value);
  } else if (key == "feedback_log_path") {
    config.feedback_log_path = std::string(value);
  } else if (key == "listen_address") {
    config.listen_address = std::string(value);
  } else if (key == "result_limit_default") {
    config.result_limit_default = parse_number<std::size_t>(key, value);
  } else if (key == "fold_interval_seconds") {
    config.fold_interval_seconds = parse_number<std::uint32_t>(key, value);
  } else if (key == "cors_allowed_origins") {
    config.cors_allowed_origins.clear();
    for (const auto& origin : text::split(value, ',')) {
      auto o = text::trim(origin);
      if (!o.empty()) config.cors_allowed_origins.emplace_back(o);
    }
  } else {
    throw Error(ErrorCode::kConfigError, "unknown config key '" + std::string(key) + "'");
  }
}

ServiceConfig parse_config(std::string_view content, ServiceConfig base) {
  std::size_t line_no = 0;
  for (const auto& raw : text::split(content, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfigError,
                  "config line " + std::to_string(line_no) + ": expected key = value");
    }
    auto key = text::trim(line.substr(0, eq));
    auto value = text::trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    apply_config_value(base, key, value);
  }
  return base;
}

ServiceConfig load_config(const std::filesystem::path& path, ServiceConfig base) {
  try {
    return parse_config(text::read_file(path), std::move(base));
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, path.string() + ": " + e.what());
  }
}

void validate_config(const ServiceConfig& config) {
  auto require = [](const std::filesystem::path& p, const char* key) {
    if (p.empty()) {
      throw Error(ErrorCode::kConfigError, std::string(key) + " is not set");
    }
    if (!std::filesystem::exists(p)) {
      throw Error(ErrorCode::kConfigError,
                  std::string(key) + " does not exist: " + p.string());
    }
  };
  require(config.index_path, "index_path");
  require(config.attribute_store_path, "attribute_store_path");
  require(config.alias_table_path, "alias_table_path");
  require(config.data_dir, "data_dir");
  if (config.result_limit_default < 1) {
    throw Error(ErrorCode::kConfigError, "result_limit_default must be >= 1");
  }
  split_listen_address(config.listen_address);
}

std::pair<std::string, int> split_listen_address(std::string_view address) {
  auto colon = address.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw Error(ErrorCode::kConfigError,
                "listen_address must be host:port, got '" + std::string(address) + "'");
  }
  int port = 0;
  auto digits = address.substr(colon + 1);
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
  if (ec != std::errc() || p != digits.data() + digits.size() || port < 0 || port > 65535) {
    throw Error(ErrorCode::kConfigError, "bad port in '" + std::string(address) + "'");
  }
  return {std::string(address.substr(0, colon)), port};
}

}  // namespace skillgrep

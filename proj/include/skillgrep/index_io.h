// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Versioned binary index file. Layout is described in docs/index_format.md.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "skillgrep/indexer.h"

namespace skillgrep {

inline constexpr std::string_view kIndexMagic{"SKGINDEX", 8};
inline constexpr std::uint32_t kIndexFormatVersion = 1;

std::string serialize_index(const PostingIndex& index);

// Throws Error(kVersionMismatch) for another format_version and
// Error(kFormatError) for a bad magic, checksum or truncated payload.
PostingIndex deserialize_index(std::string_view bytes);

void save_index(const PostingIndex& index, const std::filesystem::path& path);
PostingIndex load_index(const std::filesystem::path& path);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace skillgrep

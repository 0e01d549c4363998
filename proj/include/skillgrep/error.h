// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skillgrep {

enum class ErrorCode {
  kFileUnreadable,
  kFormatError,
  kDuplicateId,
  kEmptySkill,
  kEmptyTitle,
  kEmptyName,
  kDomainError,
  kEmptyCorpus,
  kNoTitleNgrams,
  kUnknownSkill,
  kUnknownIndustry,
  kInvalidQuery,
  kVersionMismatch,
  kConfigError,
  kUnknownPosting,
};

std::string_view error_code_name(ErrorCode code);

// True for codes caused by bad input data or configuration rather than by a
// broken internal invariant.
bool is_data_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace skillgrep

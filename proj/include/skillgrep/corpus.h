// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Posting and skill-lexicon data model plus file ingestion.

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace skillgrep {

struct JobPosting {
  std::string id;
  std::string title_raw;
  std::string company_name_raw;
  std::string description_raw;
  std::optional<std::string> location;
  std::optional<std::string> date_posted;  // YYYY-MM-DD

  bool operator==(const JobPosting&) const = default;
};

struct RawSkillEntry {
  std::string surface;
  std::uint64_t cooccurrence_count = 0;
  std::uint32_t word_count = 0;

  bool operator==(const RawSkillEntry&) const = default;
};

struct ManifestEntry {
  std::string path;
  std::size_t total = 0;
  std::size_t valid = 0;
  std::size_t skipped = 0;

  bool operator==(const ManifestEntry&) const = default;
};

enum class RecordFormat { kJsonl, kCsv };

// Picks the format from the file extension (.csv, otherwise JSONL).
RecordFormat format_for_path(const std::filesystem::path& path);

class Corpus {
 public:
  const std::vector<JobPosting>& postings() const { return postings_; }
  const std::vector<ManifestEntry>& manifest() const { return manifest_; }

  // Appends one ingested file. Throws Error(kDuplicateId) if any id is
  // already present; the corpus is left unchanged in that case.
  void append(std::vector<JobPosting> postings, ManifestEntry entry);

 private:
  std::vector<JobPosting> postings_;
  std::vector<ManifestEntry> manifest_;
  std::unordered_set<std::string> ids_;
};

// Source of raw posting records. Only the file-backed implementation exists;
// a crawler would implement the same interface.
class Fetcher {
 public:
  virtual ~Fetcher() = default;
  // Returns the valid records from `location` and the per-source tally.
  virtual std::pair<std::vector<JobPosting>, ManifestEntry> fetch(
      const std::string& location) = 0;
};

class FileFetcher : public Fetcher {
 public:
  explicit FileFetcher(std::optional<RecordFormat> format = std::nullopt)
      : format_(format) {}

  std::pair<std::vector<JobPosting>, ManifestEntry> fetch(
      const std::string& location) override;

 private:
  std::optional<RecordFormat> format_;
};

Corpus ingest_postings(const std::filesystem::path& path, RecordFormat format);

// Ingests several files into one corpus, in order.
Corpus ingest_postings(const std::vector<std::filesystem::path>& paths);

void ingest_into(Corpus& corpus, const std::filesystem::path& path,
                 RecordFormat format);

std::vector<RawSkillEntry> ingest_skill_lexicon(
    const std::filesystem::path& path);

// Writes the corpus as JSONL in the ingest schema.
std::string corpus_to_jsonl(const Corpus& corpus);

}  // namespace skillgrep

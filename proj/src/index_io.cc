// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/index_io.h"

#include <fstream>

#include "skillgrep/binary_io.h"
#include "skillgrep/error.h"
#include "skillgrep/text.h"

namespace skillgrep {
namespace {

void write_optional(binary::Writer& w, const std::optional<std::string>& s) {
  w.u8(s ? 1 : 0);
  if (s) w.str(*s);
}

std::optional<std::string> read_optional(binary::Reader& r) {
  std::uint8_t flag = r.u8();
  if (flag > 1) throw Error(ErrorCode::kFormatError, "bad optional flag in index");
  if (flag == 0) return std::nullopt;
  return r.str();
}

void write_real_map(binary::Writer& w, const std::map<std::string, double>& m) {
  w.u32(static_cast<std::uint32_t>(m.size()));
  for (const auto& [k, v] : m) {
    w.str(k);
    w.f64(v);
  }
}

std::map<std::string, double> read_real_map(binary::Reader& r) {
  std::map<std::string, double> m;
  for (std::uint32_t n = r.u32(); n > 0; --n) {
    auto k = r.str();
    m[std::move(k)] = r.f64();
  }
  return m;
}

void write_posting(binary::Writer& w, const IndexedPosting& p) {
  w.str(p.id);
  w.str(p.title_raw);
  w.str(p.company_name_raw);
  write_optional(w, p.location);
  write_optional(w, p.date_posted);
  w.str(p.normalized_title);
  w.str(p.company_normalized);
  w.str(p.domain);
  w.f64(p.domain_confidence);
  w.u32(static_cast<std::uint32_t>(p.title_ngrams.size()));
  for (const auto& g : p.title_ngrams) w.str(g);
  w.u8(static_cast<std::uint8_t>(p.level));
  w.u32(static_cast<std::uint32_t>(p.departments.size()));
  for (Department d : p.departments) w.u8(static_cast<std::uint8_t>(d));
  w.str(p.description_text);
  w.u64(p.doc_len);
  w.u32(static_cast<std::uint32_t>(p.bag.size()));
  for (const auto& [lemma, c] : p.bag) {
    w.str(lemma);
    w.u64(c.total_count);
    w.u32(static_cast<std::uint32_t>(c.form_counts.size()));
    for (const auto& [form, n] : c.form_counts) {
      w.str(form);
      w.u64(n);
    }
  }
  write_real_map(w, p.ltu);
  write_real_map(w, p.scaled_tfidf);
}

IndexedPosting read_posting(binary::Reader& r) {
  IndexedPosting p;
  p.id = r.str();
  p.title_raw = r.str();
  p.company_name_raw = r.str();
  p.location = read_optional(r);
  p.date_posted = read_optional(r);
  p.normalized_title = r.str();
  p.company_normalized = r.str();
  p.domain = r.str();
  p.domain_confidence = r.f64();
  for (std::uint32_t n = r.u32(); n > 0; --n) p.title_ngrams.insert(r.str());
  std::uint8_t level = r.u8();
  if (level > static_cast<std::uint8_t>(ManagementLevel::kCLevel)) {
    throw Error(ErrorCode::kFormatError, "bad management level in index");
  }
  p.level = static_cast<ManagementLevel>(level);
  for (std::uint32_t n = r.u32(); n > 0; --n) {
    std::uint8_t d = r.u8();
    if (d > static_cast<std::uint8_t>(Department::kOther)) {
      throw Error(ErrorCode::kFormatError, "bad department in index");
    }
    p.departments.insert(static_cast<Department>(d));
  }
  p.description_text = r.str();
  p.doc_len = r.u64();
  for (std::uint32_t n = r.u32(); n > 0; --n) {
    auto lemma = r.str();
    SkillCount c;
    c.total_count = r.u64();
    for (std::uint32_t f = r.u32(); f > 0; --f) {
      auto form = r.str();
      c.form_counts[std::move(form)] = r.u64();
    }
    p.bag[std::move(lemma)] = std::move(c);
  }
  p.ltu = read_real_map(r);
  p.scaled_tfidf = read_real_map(r);
  return p;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string serialize_index(const PostingIndex& index) {
  binary::Writer w;
  w.raw(kIndexMagic);
  w.u32(kIndexFormatVersion);
  w.u64(index.stats.n_docs);
  w.f64(index.stats.avg_doc_len);
  w.u32(index.stats.min_df);
  w.u64(index.build_timestamp);
  w.u8(index.has_weights ? 1 : 0);

  const auto& forms = index.dictionary.forms_to_lemma();
  w.u64(forms.size());
  for (const auto& [k, v] : forms) {
    w.str(k);
    w.str(v);
  }
  const auto& lemmas = index.dictionary.lemma_set();
  w.u64(lemmas.size());
  for (const auto& l : lemmas) w.str(l);

  w.u64(index.stats.df.size());
  for (const auto& [lemma, df] : index.stats.df) {
    w.str(lemma);
    w.u64(df);
  }

  w.u64(index.postings.size());
  for (const auto& p : index.postings) write_posting(w, p);

  if (index.has_weights) {
    for (const auto& p : index.postings) {
      write_real_map(w, p.weights);
      write_real_map(w, p.final_scores);
    }
  }
  w.u64(fnv1a64(w.data()));
  return w.take();
}

PostingIndex deserialize_index(std::string_view bytes) {
  binary::Reader r(bytes);
  if (r.raw(kIndexMagic.size()) != kIndexMagic) {
    throw Error(ErrorCode::kFormatError, "not a skillgrep index file");
  }
  std::uint32_t version = r.u32();
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "index format version " + std::to_string(version) +
                    " is not supported (expected " +
                    std::to_string(kIndexFormatVersion) + ")");
  }
  if (bytes.size() < 8) throw Error(ErrorCode::kFormatError, "truncated index file");
  std::string_view payload = bytes.substr(0, bytes.size() - 8);
  binary::Reader trailer(bytes.substr(bytes.size() - 8));
  if (trailer.u64() != fnv1a64(payload)) {
    throw Error(ErrorCode::kFormatError, "index checksum mismatch");
  }

  PostingIndex index;
  index.stats.n_docs = r.u64();
  index.stats.avg_doc_len = r.f64();
  index.stats.min_df = r.u32();
  index.build_timestamp = r.u64();
  std::uint8_t has_weights = r.u8();
  if (has_weights > 1) throw Error(ErrorCode::kFormatError, "bad weights flag in index");
  index.has_weights = has_weights == 1;

  std::map<std::string, std::string> forms;
  for (std::uint64_t n = r.u64(); n > 0; --n) {
    auto k = r.str();
    forms[std::move(k)] = r.str();
  }
  std::set<std::string> lemmas;
  for (std::uint64_t n = r.u64(); n > 0; --n) lemmas.insert(r.str());
  index.dictionary = LemmaDictionary(std::move(forms), std::move(lemmas));

  for (std::uint64_t n = r.u64(); n > 0; --n) {
    auto lemma = r.str();
    index.stats.df[std::move(lemma)] = r.u64();
  }

  std::uint64_t n_postings = r.u64();
  if (n_postings != index.stats.n_docs) {
    throw Error(ErrorCode::kFormatError, "index posting count disagrees with header");
  }
  for (std::uint64_t i = 0; i < n_postings; ++i) index.postings.push_back(read_posting(r));

  if (index.has_weights) {
    for (auto& p : index.postings) {
      p.weights = read_real_map(r);
      p.final_scores = read_real_map(r);
    }
  }
  r.u64();  // checksum, verified above
  if (!r.at_end()) throw Error(ErrorCode::kFormatError, "trailing bytes in index file");
  return index;
}

void save_index(const PostingIndex& index, const std::filesystem::path& path) {
  std::string bytes = serialize_index(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kFileUnreadable, "cannot write " + path.string());
}

PostingIndex load_index(const std::filesystem::path& path) {
  std::string bytes = text::read_file(path);
  try {
    return deserialize_index(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace skillgrep

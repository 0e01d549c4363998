// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/skill_normalizer.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_map>

#include "skillgrep/binary_io.h"
#include "skillgrep/error.h"
#include "skillgrep/text.h"

namespace skillgrep {
namespace {

constexpr std::string_view kDictMagic{"SKGDICT\0", 8};
constexpr std::uint32_t kDictVersion = 1;
constexpr std::size_t kMaxLemmaNgram = 3;

// Splits on '&' / '+' that sit between two alphanumerics.
std::vector<std::string> split_conjunctions(std::string_view token) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < token.size(); ++i) {
    char c = token[i];
    bool joiner = (c == '&' || c == '+') && i > 0 && i + 1 < token.size() &&
                  text::is_alnum(token[i - 1]) && text::is_alnum(token[i + 1]);
    if (joiner) {
      out.push_back(std::move(cur));
      out.emplace_back("and");
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

void split_dashes(std::string piece, std::vector<std::string>& out) {
  // "e-mail" class: single leading letter, dash, then a word.
  if (piece.size() > 2 && text::is_alpha(piece[0]) && piece[1] == '-' &&
      text::is_alnum(piece[2])) {
    piece.erase(1, 1);
  }
  std::string cur;
  for (std::size_t i = 0; i < piece.size(); ++i) {
    char c = piece[i];
    bool intra = c == '-' && i > 0 && i + 1 < piece.size() &&
                 text::is_alnum(piece[i - 1]) && text::is_alnum(piece[i + 1]);
    if (intra) {
      out.push_back(std::move(cur));
      out.emplace_back("-");
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
}

bool is_leading_punct(char c) {
  return c == '(' || c == '[' || c == '{' || c == '"' || c == '\'' ||
         c == '<' || c == '*';
}

bool is_trailing_punct(char c) {
  return c == ')' || c == ']' || c == '}' || c == '"' || c == '\'' ||
         c == '>' || c == ',' || c == ';' || c == ':' || c == '!' ||
         c == '?' || c == '.' || c == '*';
}

std::string strip_edges(std::string_view tok) {
  while (!tok.empty() && is_leading_punct(tok.front())) tok.remove_prefix(1);
  while (!tok.empty() && is_trailing_punct(tok.back())) tok.remove_suffix(1);
  if (tok.size() > 2 && tok.ends_with("'s")) tok.remove_suffix(2);
  while (!tok.empty() && is_trailing_punct(tok.back())) tok.remove_suffix(1);
  return std::string(tok);
}

}  // namespace

std::vector<std::string> normalize_token(std::string_view token) {
  if (token == "r&d") return {std::string(token)};
  if (token == "&" || token == "+") return {"and"};
  std::vector<std::string> out;
  for (auto& piece : split_conjunctions(token)) {
    if (piece.empty()) continue;
    split_dashes(std::move(piece), out);
  }
  std::erase_if(out, [](const std::string& s) { return s.empty(); });
  if (out.empty()) out.emplace_back(token);
  return out;
}

SkillForms normalize_skill(std::string_view surface) {
  auto trimmed = text::trim(surface);
  if (trimmed.empty()) {
    throw Error(ErrorCode::kEmptySkill, "skill surface is empty");
  }
  SkillForms forms;
  forms.original = text::to_lower(trimmed);
  std::vector<std::string> tokens;
  for (const auto& tok : text::split_whitespace(forms.original)) {
    for (auto& t : normalize_token(tok)) tokens.push_back(std::move(t));
  }
  forms.normalized = text::join(tokens, " ");
  return forms;
}

std::string NormalizedText::joined() const { return text::join(tokens, " "); }

NormalizedText normalize_description(std::string_view description) {
  NormalizedText out;
  for (const auto& tok : text::split_whitespace(text::to_lower(description))) {
    std::string raw = strip_edges(tok);
    if (raw.empty()) continue;
    std::size_t raw_index = out.raw.size();
    for (auto& t : normalize_token(raw)) {
      out.tokens.push_back(std::move(t));
      out.origin.push_back(raw_index);
    }
    out.raw.push_back(std::move(raw));
  }
  return out;
}

LemmaLexicon::LemmaLexicon(std::map<std::string, std::string> entries)
    : entries_(std::move(entries)) {
  for (const auto& [k, v] : entries_) index_.emplace(k, v);
}

LemmaLexicon LemmaLexicon::load(const std::filesystem::path& path) {
  std::map<std::string, std::string> entries;
  for (const auto& line : text::read_data_lines(path)) {
    auto cols = text::split(line, '\t');
    if (cols.size() != 2) {
      throw Error(ErrorCode::kFormatError,
                  path.string() + ": expected surface<TAB>lemma: " + line);
    }
    auto key = text::collapse_spaces(text::to_lower(cols[0]));
    auto value = text::collapse_spaces(text::to_lower(cols[1]));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::kFormatError, path.string() + ": empty column");
    }
    entries[key] = value;
  }
  return LemmaLexicon(std::move(entries));
}

std::optional<std::string> LemmaLexicon::lookup(std::string_view ngram) const {
  auto it = index_.find(ngram);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string lemmatize_skill(const SkillForms& forms,
                            const LemmaLexicon& lexicon) {
  auto words = text::split_whitespace(forms.normalized);
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < words.size()) {
    bool replaced = false;
    for (std::size_t n = std::min(kMaxLemmaNgram, words.size() - i); n >= 1;
         --n) {
      if (auto lemma = lexicon.lookup(text::join_range(words, i, i + n))) {
        out.push_back(*lemma);
        i += n;
        replaced = true;
        break;
      }
    }
    if (!replaced) out.push_back(words[i++]);
  }
  return text::join(out, " ");
}

SkillThresholds SkillThresholds::defaults() {
  SkillThresholds t;
  for (std::uint64_t n = 1; n <= 8; ++n) {
    t.per_word_count_.push_back(std::max<std::uint64_t>(2, (8 + n - 1) / n));
  }
  return t;
}

SkillThresholds SkillThresholds::uniform(std::uint64_t minimum) {
  SkillThresholds t;
  t.per_word_count_.push_back(minimum);
  return t;
}

SkillThresholds SkillThresholds::parse(std::string_view spec) {
  std::map<std::uint32_t, std::uint64_t> given;
  for (const auto& part : text::split(spec, ',')) {
    auto kv = text::split(text::trim(part), ':');
    std::uint32_t n = 0;
    std::uint64_t v = 0;
    bool ok = kv.size() == 2;
    if (ok) {
      auto a = text::trim(kv[0]);
      auto b = text::trim(kv[1]);
      auto ra = std::from_chars(a.data(), a.data() + a.size(), n);
      auto rb = std::from_chars(b.data(), b.data() + b.size(), v);
      ok = ra.ec == std::errc() && ra.ptr == a.data() + a.size() &&
           rb.ec == std::errc() && rb.ptr == b.data() + b.size() && n >= 1 &&
           !a.empty() && !b.empty();
    }
    if (!ok) {
      throw Error(ErrorCode::kFormatError,
                  "bad threshold '" + std::string(part) +
                      "', expected words:minimum");
    }
    given[n] = v;
  }
  if (given.empty()) throw Error(ErrorCode::kFormatError, "empty thresholds");
  SkillThresholds t;
  std::uint64_t last = given.begin()->second;
  for (std::uint32_t n = 1; n <= given.rbegin()->first; ++n) {
    if (auto it = given.find(n); it != given.end()) last = it->second;
    t.per_word_count_.push_back(last);
  }
  return t;
}

std::uint64_t SkillThresholds::minimum(std::uint32_t word_count) const {
  if (word_count == 0) word_count = 1;
  std::size_t idx = std::min<std::size_t>(word_count, per_word_count_.size());
  return per_word_count_[idx - 1];
}

std::vector<RawSkillEntry> filter_skills(std::span<const RawSkillEntry> entries,
                                         const SkillThresholds& thresholds) {
  std::vector<RawSkillEntry> out;
  for (const auto& e : entries) {
    if (e.cooccurrence_count >= thresholds.minimum(e.word_count)) {
      out.push_back(e);
    }
  }
  return out;
}

SkillStoplist::SkillStoplist(std::set<std::string> terms) {
  for (const auto& t : terms) terms_.insert(t);
}

SkillStoplist SkillStoplist::load(const std::filesystem::path& path) {
  SkillStoplist out;
  for (const auto& line : text::read_data_lines(path)) {
    out.terms_.insert(text::collapse_spaces(text::to_lower(line)));
  }
  return out;
}

bool SkillStoplist::contains(std::string_view lemma) const {
  return terms_.contains(lemma);
}

std::vector<std::string> most_frequent_lemmas(
    std::span<const RawSkillEntry> entries, const LemmaLexicon& lexicon,
    std::size_t n) {
  std::map<std::string, std::uint64_t> totals;
  for (const auto& e : entries) {
    if (text::trim(e.surface).empty()) continue;
    totals[lemmatize_skill(normalize_skill(e.surface), lexicon)] +=
        e.cooccurrence_count;
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranked(totals.begin(),
                                                            totals.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < n; ++i) {
    out.push_back(ranked[i].first);
  }
  return out;
}

LemmaDictionary::LemmaDictionary(std::map<std::string, std::string> forms_to_lemma,
                                 std::set<std::string> lemma_set) {
  for (auto& [k, v] : forms_to_lemma) forms_to_lemma_.emplace(k, v);
  for (const auto& l : lemma_set) lemma_set_.insert(l);
}

std::optional<std::string> LemmaDictionary::lemma_for(std::string_view form) const {
  auto it = forms_to_lemma_.find(form);
  if (it == forms_to_lemma_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> LemmaDictionary::resolve(std::string_view skill) const {
  if (text::trim(skill).empty()) return std::nullopt;
  auto forms = normalize_skill(skill);
  if (auto l = lemma_for(text::collapse_spaces(forms.original))) return l;
  return lemma_for(forms.normalized);
}

LemmaDictionary build_lemma_dictionary(std::span<const RawSkillEntry> entries,
                                       const LemmaLexicon& lexicon,
                                       const SkillStoplist& stoplist) {
  struct Claim {
    std::uint64_t count;
    std::string lemma;
  };
  std::map<std::string, Claim> claims;
  std::set<std::string> lemmas;
  auto claim = [&](const std::string& key, std::uint64_t count,
                   const std::string& lemma) {
    auto [it, inserted] = claims.try_emplace(key, Claim{count, lemma});
    if (inserted) return;
    Claim& cur = it->second;
    if (count > cur.count || (count == cur.count && lemma < cur.lemma)) {
      cur = Claim{count, lemma};
    }
  };
  for (const auto& e : entries) {
    if (text::trim(e.surface).empty()) continue;
    SkillForms forms = normalize_skill(e.surface);
    std::string lemma = lemmatize_skill(forms, lexicon);
    if (stoplist.contains(lemma)) continue;
    lemmas.insert(lemma);
    claim(text::collapse_spaces(forms.original), e.cooccurrence_count, lemma);
    claim(forms.normalized, e.cooccurrence_count, lemma);
  }

  std::map<std::string, std::string> forms_to_lemma;
  for (const auto& [key, c] : claims) {
    if (stoplist.contains(key)) continue;
    forms_to_lemma[key] = c.lemma;
  }
  // Lemmas always map to themselves, overriding any competing claim.
  for (const auto& lemma : lemmas) forms_to_lemma[lemma] = lemma;
  return LemmaDictionary(std::move(forms_to_lemma), std::move(lemmas));
}

void save_dictionary(const LemmaDictionary& dict,
                     const std::filesystem::path& path) {
  binary::Writer w;
  w.raw(kDictMagic);
  w.u32(kDictVersion);
  w.u64(dict.lemma_set().size());
  for (const auto& l : dict.lemma_set()) w.str(l);
  w.u64(dict.forms_to_lemma().size());
  for (const auto& [k, v] : dict.forms_to_lemma()) {
    w.str(k);
    w.str(v);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(w.data().data(), static_cast<std::streamsize>(w.data().size()));
  if (!out) {
    throw Error(ErrorCode::kFileUnreadable, "cannot write " + path.string());
  }
}

LemmaDictionary load_dictionary(const std::filesystem::path& path) {
  std::string content = text::read_file(path);
  binary::Reader r(content);
  if (content.size() < kDictMagic.size() || r.raw(kDictMagic.size()) != kDictMagic) {
    throw Error(ErrorCode::kFormatError,
                path.string() + " is not a skill dictionary file");
  }
  std::uint32_t version = r.u32();
  if (version != kDictVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                path.string() + ": dictionary format version " +
                    std::to_string(version) + ", expected " +
                    std::to_string(kDictVersion));
  }
  std::set<std::string> lemmas;
  for (std::uint64_t n = r.u64(); n > 0; --n) lemmas.insert(r.str());
  std::map<std::string, std::string> forms;
  for (std::uint64_t n = r.u64(); n > 0; --n) {
    auto k = r.str();
    forms[k] = r.str();
  }
  if (!r.at_end()) {
    throw Error(ErrorCode::kFormatError, path.string() + ": trailing bytes");
  }
  return LemmaDictionary(std::move(forms), std::move(lemmas));
}

}  // namespace skillgrep

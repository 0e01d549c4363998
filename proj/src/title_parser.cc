// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#include "skillgrep/title_parser.h"

#include <algorithm>
#include <array>

#include "skillgrep/error.h"
#include "skillgrep/text.h"

namespace skillgrep {
namespace {

constexpr std::array<std::string_view, 5> kLevelNames = {
    "Non-Manager", "Manager", "Director", "VP-Level", "C-Level"};

constexpr std::array<std::string_view, 12> kDepartmentNames = {
    "Administrative", "Computing & IT", "Engineering", "Educator",
    "Finance",        "HR",             "Marketing",   "Sales",
    "Operations",     "Legal",          "Medical",     "Other"};

bool is_roman_numeral(std::string_view t) {
  static constexpr std::array<std::string_view, 10> kRoman = {
      "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x"};
  return std::find(kRoman.begin(), kRoman.end(), t) != kRoman.end();
}

bool is_number(std::string_view t) {
  return !t.empty() &&
         std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Words allowed in a "- senior i" style tail.
bool is_level_tail_word(std::string_view t) {
  return is_roman_numeral(t) || is_number(t) || t == "senior" || t == "sr" ||
         t == "junior" || t == "jr" || t == "entry" || t == "level" ||
         t == "mid";
}

bool is_title_separator(char c) {
  switch (c) {
    case ',': case '/': case '(': case ')': case '[': case ']': case '{':
    case '}': case '|': case ':': case ';': case '!': case '?': case '"':
    case '*': case '\t': case '\n': case '\r':
      return true;
    default:
      return false;
  }
}

// "c.e.o" / "c.e.o." -> "ceo"; other tokens lose trailing periods.
std::string clean_dots(std::string tok) {
  bool dotted_acronym = tok.size() >= 3;
  for (std::size_t i = 0; i < tok.size() && dotted_acronym; ++i) {
    dotted_acronym = (i % 2 == 0) ? text::is_alnum(tok[i]) : tok[i] == '.';
  }
  if (dotted_acronym) {
    std::erase(tok, '.');
    return tok;
  }
  while (!tok.empty() && tok.back() == '.') tok.pop_back();
  return tok;
}

std::vector<std::string> character_cleanup(std::string_view raw) {
  std::string s = text::to_lower(raw);
  std::string spaced;
  spaced.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    // UTF-8 en/em dash.
    if (s.compare(i, 3, "\xE2\x80\x93") == 0 ||
        s.compare(i, 3, "\xE2\x80\x94") == 0) {
      spaced += " - ";
      i += 2;
      continue;
    }
    char c = s[i];
    if (c == '\'') continue;
    spaced += is_title_separator(c) ? ' ' : c;
  }
  std::vector<std::string> out;
  for (auto& tok : text::split_whitespace(spaced)) {
    std::string t = clean_dots(std::move(tok));
    if (t.empty()) continue;
    if (t == "&") t = "and";
    out.push_back(std::move(t));
  }
  return out;
}

void strip_level_information(std::vector<std::string>& tokens) {
  // "level <n>" anywhere.
  for (std::size_t i = 0; i + 1 < tokens.size() && tokens.size() > 2;) {
    if (tokens[i] == "level" &&
        (is_number(tokens[i + 1]) || is_roman_numeral(tokens[i + 1]))) {
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + 2));
    } else {
      ++i;
    }
  }
  bool changed = true;
  while (changed && tokens.size() > 1) {
    changed = false;
    if (tokens.back() == "-" || is_roman_numeral(tokens.back())) {
      tokens.pop_back();
      changed = true;
      continue;
    }
    auto dash = std::find(tokens.rbegin(), tokens.rend(), "-");
    if (dash != tokens.rend()) {
      auto first_tail = dash.base();
      bool all_tail = first_tail != tokens.end() &&
                      std::all_of(first_tail, tokens.end(),
                                  [](const std::string& t) {
                                    return is_level_tail_word(t);
                                  });
      auto dash_pos = first_tail - 1;
      if (all_tail && dash_pos != tokens.begin()) {
        tokens.erase(dash_pos, tokens.end());
        changed = true;
      }
    }
  }
  if (tokens.size() > 1) std::erase(tokens, "-");
}

}  // namespace

std::string_view level_name(ManagementLevel level) {
  return kLevelNames[static_cast<std::size_t>(level)];
}

std::optional<ManagementLevel> parse_level(std::string_view name) {
  auto lower = text::to_lower(text::trim(name));
  for (std::size_t i = 0; i < kLevelNames.size(); ++i) {
    if (lower == text::to_lower(kLevelNames[i])) {
      return static_cast<ManagementLevel>(i);
    }
  }
  if (lower == "c level" || lower == "clevel") return ManagementLevel::kCLevel;
  if (lower == "vp" || lower == "vp level") return ManagementLevel::kVpLevel;
  if (lower == "non manager" || lower == "nonmanager") {
    return ManagementLevel::kNonManager;
  }
  return std::nullopt;
}

std::string_view department_name(Department department) {
  return kDepartmentNames[static_cast<std::size_t>(department)];
}

std::optional<Department> parse_department(std::string_view name) {
  auto lower = text::to_lower(text::trim(name));
  for (std::size_t i = 0; i < kDepartmentNames.size(); ++i) {
    if (lower == text::to_lower(kDepartmentNames[i])) {
      return static_cast<Department>(i);
    }
  }
  if (lower == "it" || lower == "computing" || lower == "computing and it" ||
      lower == "computing-it") {
    return Department::kComputingIt;
  }
  if (lower == "human resources") return Department::kHr;
  return std::nullopt;
}

WordSet load_word_set(const std::filesystem::path& path) {
  WordSet out;
  for (const auto& line : text::read_data_lines(path)) {
    out.insert(text::collapse_spaces(text::to_lower(line)));
  }
  return out;
}

TitleNormalizer::TitleNormalizer(std::map<std::string, std::string> substitutions,
                                 std::set<std::string> acronyms) {
  for (auto& [k, v] : substitutions) {
    auto key = text::collapse_spaces(text::to_lower(k));
    max_substitution_words_ =
        std::max(max_substitution_words_, text::split_whitespace(key).size());
    substitutions_.emplace(std::move(key), text::collapse_spaces(text::to_lower(v)));
  }
  for (const auto& a : acronyms) acronyms_.insert(text::to_lower(a));
}

TitleNormalizer TitleNormalizer::load(const std::filesystem::path& substitutions,
                                      const std::filesystem::path& acronyms) {
  std::map<std::string, std::string> subs;
  for (const auto& line : text::read_data_lines(substitutions)) {
    auto cols = text::split(line, '\t');
    if (cols.size() != 2 || text::trim(cols[0]).empty()) {
      throw Error(ErrorCode::kFormatError,
                  substitutions.string() + ": expected ngram<TAB>replacement: " +
                      line);
    }
    subs[cols[0]] = cols[1];
  }
  std::set<std::string> acr;
  for (const auto& line : text::read_data_lines(acronyms)) {
    acr.insert(std::string(text::trim(text::split(line, '\t')[0])));
  }
  return TitleNormalizer(std::move(subs), std::move(acr));
}

NormalizedTitle TitleNormalizer::normalize(std::string_view raw) const {
  auto tokens = character_cleanup(raw);
  if (tokens.empty()) {
    throw Error(ErrorCode::kEmptyTitle,
                "title is empty after cleanup: '" + std::string(raw) + "'");
  }
  strip_level_information(tokens);

  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool replaced = false;
    std::size_t longest = std::min(max_substitution_words_, tokens.size() - i);
    for (std::size_t n = longest; n >= 1; --n) {
      auto it = substitutions_.find(text::join_range(tokens, i, i + n));
      if (it != substitutions_.end()) {
        for (auto& w : text::split_whitespace(it->second)) out.push_back(std::move(w));
        i += n;
        replaced = true;
        break;
      }
    }
    if (!replaced) out.push_back(tokens[i++]);
  }

  NormalizedTitle title;
  title.text = text::join(out, " ");
  for (const auto& tok : out) {
    if (!acronyms_.contains(tok)) continue;
    std::string dotted;
    for (char c : tok) {
      dotted += c;
      dotted += '.';
    }
    title.acronym_variants.insert(std::move(dotted));
  }
  return title;
}

TitleTaxonomy::TitleTaxonomy(std::map<std::string, Row> rows) {
  for (auto& [k, v] : rows) {
    auto key = text::collapse_spaces(text::to_lower(k));
    max_words_ = std::max(max_words_, text::split_whitespace(key).size());
    rows_.emplace(std::move(key), std::move(v));
  }
}

TitleTaxonomy TitleTaxonomy::load(const std::filesystem::path& path) {
  auto rows = text::parse_csv(text::read_file(path));
  std::map<std::string, Row> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.empty() || text::trim(row[0]).starts_with('#')) continue;
    if (out.empty() && text::trim(row[0]) == "ngram") continue;
    auto where = path.string() + ": row " + std::to_string(r + 1);
    if (row.size() != 3) throw Error(ErrorCode::kFormatError, where + ": expected 3 columns");
    auto ngram = text::collapse_spaces(text::to_lower(row[0]));
    if (ngram.empty()) throw Error(ErrorCode::kFormatError, where + ": empty ngram");
    Row& dest = out[ngram];
    if (!text::trim(row[1]).empty()) {
      auto level = parse_level(row[1]);
      if (!level) throw Error(ErrorCode::kFormatError, where + ": unknown level " + row[1]);
      dest.level = dest.level ? std::max(*dest.level, *level) : *level;
    }
    for (const auto& d : text::split(row[2], ';')) {
      if (text::trim(d).empty()) continue;
      auto dept = parse_department(d);
      if (!dept) throw Error(ErrorCode::kFormatError, where + ": unknown department " + d);
      dest.departments.insert(*dept);
    }
  }
  return TitleTaxonomy(std::move(out));
}

const TitleTaxonomy::Row* TitleTaxonomy::find(std::string_view ngram) const {
  auto it = rows_.find(ngram);
  return it == rows_.end() ? nullptr : &it->second;
}

TitleClass parse_title(const NormalizedTitle& title,
                       const TitleTaxonomy& taxonomy) {
  TitleClass out;
  auto tokens = text::split_whitespace(title.text);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (std::size_t n = 1; n <= taxonomy.max_words() && i + n <= tokens.size(); ++n) {
      const auto* row = taxonomy.find(text::join_range(tokens, i, i + n));
      if (row == nullptr) continue;
      if (row->level) out.level = std::max(out.level, *row->level);
      out.departments.insert(row->departments.begin(), row->departments.end());
    }
  }
  if (out.departments.empty()) out.departments.insert(Department::kOther);
  return out;
}

std::vector<std::string> title_words(std::string_view normalized_text) {
  std::vector<std::string> out;
  for (const auto& tok : text::split_whitespace(normalized_text)) {
    std::string_view t = tok;
    while (!t.empty() && !text::is_alnum(t.front()) && t.front() != '.') {
      t.remove_prefix(1);
    }
    while (!t.empty() && !text::is_alnum(t.back()) && t.back() != '#' &&
           t.back() != '+') {
      t.remove_suffix(1);
    }
    if (t.empty() || std::none_of(t.begin(), t.end(), text::is_alnum)) continue;
    out.emplace_back(t);
  }
  return out;
}

TitleVocabulary build_title_vocab(std::span<const NormalizedTitle> titles,
                                  std::uint64_t min_freq,
                                  const WordSet& stopwords) {
  if (min_freq == 0) {
    throw Error(ErrorCode::kDomainError, "title vocabulary min_freq must be >= 1");
  }
  TitleVocabulary counts;
  for (const auto& title : titles) {
    auto words = title_words(title.text);
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (stopwords.contains(words[i])) continue;
      ++counts.unigrams[words[i]];
      if (i + 1 < words.size() && !stopwords.contains(words[i + 1])) {
        ++counts.bigrams[words[i] + " " + words[i + 1]];
      }
    }
  }
  std::erase_if(counts.unigrams, [&](const auto& kv) { return kv.second < min_freq; });
  std::erase_if(counts.bigrams, [&](const auto& kv) { return kv.second < min_freq; });
  return counts;
}

TitleNgramSet generate_title_ngrams(const NormalizedTitle& title,
                                    const TitleVocabulary& vocab,
                                    const WordSet& stopwords) {
  TitleNgramSet out;
  auto words = title_words(title.text);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!stopwords.contains(words[i]) && vocab.has_unigram(words[i])) {
      out.insert(words[i]);
    }
    if (i + 1 < words.size()) {
      auto bigram = words[i] + " " + words[i + 1];
      if (vocab.has_bigram(bigram)) out.insert(std::move(bigram));
    }
  }
  return out;
}

}  // namespace skillgrep

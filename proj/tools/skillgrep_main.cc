// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// skillgrep command-line tool: ingest, build-dict, build-index, query,
// analyze, contacts, serve.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "skillgrep/analytics.h"
#include "skillgrep/config.h"
#include "skillgrep/corpus.h"
#include "skillgrep/error.h"
#include "skillgrep/index_io.h"
#include "skillgrep/json_codec.h"
#include "skillgrep/pipeline.h"
#include "skillgrep/query_engine.h"
#include "skillgrep/service.h"
#include "skillgrep/text.h"
#include "skillgrep/weight_engine.h"

#ifndef SKILLGREP_DATA_DIR
#define SKILLGREP_DATA_DIR "data"
#endif

namespace sg = skillgrep;
namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

// Paths shared by most subcommands; SKILLGREP_CONFIG supplies defaults.
struct Common {
  std::string data_dir;
  std::string index;
  std::string companies;
  std::string aliases;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw sg::Error(sg::ErrorCode::kFileUnreadable, "cannot write " + path.string());
}

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw CLI::RequiredError(std::string(flag) + " (or the matching config key)");
  }
  return value;
}

sg::ManagementLevel level_or_throw(const std::string& s) {
  auto l = sg::parse_level(s);
  if (!l) throw CLI::ValidationError("--level", "unknown management level '" + s + "'");
  return *l;
}

sg::Department department_or_throw(const std::string& s) {
  auto d = sg::parse_department(s);
  if (!d) throw CLI::ValidationError("--dept", "unknown department '" + s + "'");
  return *d;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct QueryFlags {
  std::vector<std::string> skills, tech, industry, micro, dept, level, degree, keyword;
  std::string revenue, employees;
  std::optional<std::uint64_t> revenue_min, revenue_max;
  std::string group_by = "company";
  std::size_t k = sg::kDefaultResultLimit;
  std::size_t offset = 0;
  std::string query_json;
  std::string feedback_log;
};

sg::Query build_query(const QueryFlags& f) {
  sg::Query q;
  if (!f.query_json.empty()) {
    q = sg::query_from_json(nlohmann::json::parse(sg::text::read_file(f.query_json)));
  }
  auto add = [](std::set<std::string>& dst, const std::vector<std::string>& src) {
    for (const auto& s : src) {
      auto t = sg::text::collapse_spaces(s);
      if (!t.empty()) dst.insert(std::move(t));
    }
  };
  add(q.skills, f.skills);
  add(q.technologies, f.tech);
  add(q.industries, f.industry);
  add(q.micro_industries, f.micro);
  add(q.degree_keywords, f.degree);
  add(q.free_keywords, f.keyword);
  for (const auto& d : f.dept) q.departments.insert(department_or_throw(d));
  for (const auto& l : f.level) q.management_levels.insert(level_or_throw(l));
  if (!f.revenue.empty()) q.revenue_kusd = sg::parse_range(f.revenue);
  if (f.revenue_min || f.revenue_max) {
    if (!q.revenue_kusd) q.revenue_kusd = sg::Range{};
    if (f.revenue_min) q.revenue_kusd->min = f.revenue_min;
    if (f.revenue_max) q.revenue_kusd->max = f.revenue_max;
  }
  if (!f.employees.empty()) q.employees = sg::parse_range(f.employees);
  if (f.query_json.empty() || f.k != sg::kDefaultResultLimit) q.limit = f.k;
  if (f.query_json.empty() || f.offset != 0) q.offset = f.offset;
  return q;
}

std::string response_csv(const sg::SearchResponse& r, bool grouped) {
  std::string out;
  if (grouped) {
    out = "company,domain,best_score,postings\n";
    for (const auto& g : r.groups) {
      out += csv_field(g.key) + ',' + csv_field(g.domain) + ',' +
             sg::text::format_double(g.best_score) + ',' + std::to_string(g.results.size()) +
             '\n';
    }
  } else {
    out = "posting_id,company,domain,rank_score\n";
    for (const auto& res : r.results) {
      out += csv_field(res.posting_id) + ',' + csv_field(res.company_key) + ',' +
             csv_field(res.domain) + ',' + sg::text::format_double(res.rank_score) + '\n';
    }
  }
  return out;
}

void emit_list(const sg::RankedList& list, const std::string& format) {
  if (format == "json") {
    std::cout << sg::ranked_list_to_json(list).dump(2) << '\n';
  } else {
    std::cout << sg::ranked_list_to_csv(list);
  }
}

sg::CompanyStore load_companies(const Common& c, const sg::Resources& res) {
  return sg::load_company_store(require(c.companies, "--companies"), res);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skillgrep: skill extraction, ranking and job-market analytics"};
  app.require_subcommand(1);

  Common common;
  common.data_dir = SKILLGREP_DATA_DIR;
  sg::ServiceConfig service_config;
  if (const char* cfg = std::getenv("SKILLGREP_CONFIG"); cfg != nullptr && *cfg != '\0') {
    try {
      service_config = sg::load_config(cfg);
    } catch (const sg::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitData;
    }
    if (!service_config.data_dir.empty()) common.data_dir = service_config.data_dir.string();
    common.index = service_config.index_path.string();
    common.companies = service_config.attribute_store_path.string();
    common.aliases = service_config.alias_table_path.string();
  }

  auto add_data_dir = [&](CLI::App* sub) {
    sub->add_option("--data-dir", common.data_dir, "Directory with the shipped data files")
        ->capture_default_str();
  };
  std::string query_format = "json";
  std::string analyze_format = "csv";
  auto add_format = [&](CLI::App* sub, std::string& target) {
    sub->add_option("--format", target, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Read posting files and report the manifest");
  std::vector<std::string> ingest_inputs;
  std::string ingest_out;
  std::string ingest_format;
  ingest->add_option("--input", ingest_inputs, "Posting files (.jsonl or .csv)")
      ->required()
      ->check(CLI::ExistingFile);
  ingest->add_option("--input-format", ingest_format, "Force the record format")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  ingest->add_option("--out", ingest_out, "Write the merged corpus as JSONL");

  // build-dict
  auto* build_dict = app.add_subcommand("build-dict", "Build the lemma dictionary");
  std::string lexicon_path, lemma_lexicon_path, stoplist_path, dict_out, thresholds_spec;
  std::size_t auto_stoplist = 0;
  build_dict->add_option("--lexicon", lexicon_path, "Skill lexicon CSV (surface,count)");
  build_dict->add_option("--lemma-lexicon", lemma_lexicon_path, "Lemma lexicon TSV");
  build_dict->add_option("--stoplist", stoplist_path, "Skill stoplist file");
  build_dict->add_option("--thresholds", thresholds_spec,
                         "Minimum counts per word count, e.g. 1:8,2:4");
  build_dict->add_option("--auto-stoplist", auto_stoplist,
                         "Also drop the N most frequent lemmas");
  build_dict->add_option("--out", dict_out, "Output dictionary file")->required();
  add_data_dir(build_dict);

  // build-index
  auto* build_index = app.add_subcommand("build-index", "Build the posting index");
  std::vector<std::string> corpus_paths;
  std::string dict_path, index_out, matrix_out;
  std::uint32_t min_df = 2;
  std::uint64_t title_min_freq = 3;
  std::optional<std::uint64_t> timestamp;
  build_index->add_option("--corpus", corpus_paths, "Posting files")
      ->required()
      ->check(CLI::ExistingFile);
  build_index->add_option("--dict", dict_path, "Lemma dictionary file")->required();
  build_index->add_option("--aliases", common.aliases, "Alias table CSV");
  build_index->add_option("--out", index_out, "Output index file")->required();
  build_index->add_option("--min-df", min_df, "Minimum document frequency")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  build_index->add_option("--title-min-freq", title_min_freq,
                          "Minimum frequency of a title ngram")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  build_index->add_option("--timestamp", timestamp,
                          "Build timestamp stored in the index (default SOURCE_DATE_EPOCH or 0)");
  build_index->add_option("--emit-matrix", matrix_out, "Write the count matrix as TSV");
  add_data_dir(build_index);

  // query
  auto* query = app.add_subcommand("query", "Run a conjunctive search");
  QueryFlags qf;
  query->add_option("--index", common.index, "Index file");
  query->add_option("--companies", common.companies, "Company attribute store (JSONL)");
  query->add_option("--skills", qf.skills, "Required skills")->delimiter(',');
  query->add_option("--tech", qf.tech, "Required technologies")->delimiter(',');
  query->add_option("--industry", qf.industry, "Accepted industries")->delimiter(',');
  query->add_option("--micro-industry", qf.micro, "Required micro-industries")->delimiter(',');
  query->add_option("--dept", qf.dept, "Accepted departments")->delimiter(',');
  query->add_option("--level", qf.level, "Accepted management levels")->delimiter(',');
  query->add_option("--degree", qf.degree, "Required degree keywords")->delimiter(',');
  query->add_option("--keyword", qf.keyword, "Required free-text keywords")->delimiter(',');
  query->add_option("--revenue", qf.revenue, "Revenue range in kUSD, min:max");
  query->add_option("--revenue-min", qf.revenue_min, "Minimum revenue in kUSD");
  query->add_option("--revenue-max", qf.revenue_max, "Maximum revenue in kUSD");
  query->add_option("--employees", qf.employees, "Employee range, min:max");
  query->add_option("--group-by", qf.group_by, "Grouping for CSV output")
      ->check(CLI::IsMember({"company", "none"}))
      ->capture_default_str();
  query->add_option("--k", qf.k, "Page size")->check(CLI::PositiveNumber)->capture_default_str();
  query->add_option("--offset", qf.offset, "Page offset");
  query->add_option("--query-json", qf.query_json, "Read the query from a JSON file")
      ->check(CLI::ExistingFile);
  query->add_option("--feedback-log", qf.feedback_log, "Click log to fold into the ranking");
  add_data_dir(query);
  add_format(query, query_format);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Market analytics");
  std::string analysis, a_industry, a_skill, a_degree;
  std::vector<std::string> a_tech;
  std::size_t a_k = sg::kDefaultTopK;
  analyze->add_option("analysis", analysis, "Which analysis")
      ->required()
      ->check(CLI::IsMember(
          {"top-skills", "top-technologies", "companies-by-technology", "top-recruiters"}));
  analyze->add_option("--index", common.index, "Index file");
  analyze->add_option("--companies", common.companies, "Company attribute store (JSONL)");
  analyze->add_option("--industry", a_industry, "Industry filter for top-skills");
  analyze->add_option("--tech", a_tech, "Technologies for companies-by-technology")
      ->delimiter(',');
  analyze->add_option("--skill", a_skill, "Skill for top-recruiters");
  analyze->add_option("--degree", a_degree, "Degree keyword for top-recruiters");
  analyze->add_option("--k", a_k, "Number of items")->check(CLI::PositiveNumber)->capture_default_str();
  add_data_dir(analyze);
  add_format(analyze, analyze_format);

  // contacts
  auto* contacts = app.add_subcommand("contacts", "Recruiter and senior contacts per company");
  std::vector<std::string> c_domains;
  bool c_all = false;
  contacts->add_option("--domains", c_domains, "Company domains")->required()->delimiter(',');
  contacts->add_option("--companies", common.companies, "Company attribute store (JSONL)");
  contacts->add_flag("--all", c_all, "Return every contact");
  add_data_dir(contacts);

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  std::string s_listen, s_feedback, s_config;
  serve->add_option("--config", s_config, "key=value config file")->check(CLI::ExistingFile);
  serve->add_option("--index", common.index, "Index file");
  serve->add_option("--companies", common.companies, "Company attribute store (JSONL)");
  serve->add_option("--aliases", common.aliases, "Alias table CSV");
  serve->add_option("--listen", s_listen, "host:port");
  serve->add_option("--feedback-log", s_feedback, "Click log path");
  add_data_dir(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    fs::path data_dir = common.data_dir;

    if (*ingest) {
      sg::Corpus corpus;
      for (const auto& p : ingest_inputs) {
        auto format = ingest_format.empty() ? sg::format_for_path(p)
                      : ingest_format == "csv" ? sg::RecordFormat::kCsv
                                               : sg::RecordFormat::kJsonl;
        sg::ingest_into(corpus, p, format);
      }
      if (!ingest_out.empty()) write_file(ingest_out, sg::corpus_to_jsonl(corpus));
      nlohmann::json manifest = nlohmann::json::array();
      for (const auto& m : corpus.manifest()) {
        manifest.push_back(
            {{"path", m.path}, {"total", m.total}, {"valid", m.valid}, {"skipped", m.skipped}});
      }
      std::cout << nlohmann::json{{"postings", corpus.postings().size()}, {"files", manifest}}.dump(2)
                << '\n';
      return 0;
    }

    if (*build_dict) {
      fs::path lex = lexicon_path.empty() ? data_dir / sg::data_files::kSkillLexicon
                                          : fs::path(lexicon_path);
      fs::path lemmas = lemma_lexicon_path.empty() ? data_dir / sg::data_files::kLemmaLexicon
                                                   : fs::path(lemma_lexicon_path);
      fs::path stop = stoplist_path.empty() ? data_dir / sg::data_files::kSkillStoplist
                                            : fs::path(stoplist_path);
      auto lemma_lexicon = sg::LemmaLexicon::load(lemmas);
      auto stoplist = sg::SkillStoplist::load(stop);
      auto thresholds = thresholds_spec.empty() ? sg::SkillThresholds::defaults()
                                                : sg::SkillThresholds::parse(thresholds_spec);
      if (auto_stoplist > 0) {
        auto entries = sg::ingest_skill_lexicon(lex);
        for (const auto& l : sg::most_frequent_lemmas(entries, lemma_lexicon, auto_stoplist)) {
          stoplist.add(l);
        }
      }
      auto dict = sg::build_dictionary(lex, lemma_lexicon, stoplist, thresholds);
      sg::save_dictionary(dict, dict_out);
      std::cout << nlohmann::json{{"forms", dict.forms_to_lemma().size()},
                                  {"lemmas", dict.lemma_set().size()},
                                  {"out", dict_out}}
                       .dump(2)
                << '\n';
      return 0;
    }

    if (*build_index) {
      auto resources = sg::Resources::load(data_dir);
      fs::path alias_path = common.aliases.empty() ? data_dir / sg::data_files::kAliases
                                                   : fs::path(common.aliases);
      auto aliases = sg::AliasTable::load(alias_path, resources.company_normalizer);
      auto dict = sg::load_dictionary(dict_path);
      std::vector<fs::path> paths(corpus_paths.begin(), corpus_paths.end());
      auto corpus = sg::ingest_postings(paths);
      sg::BuildOptions options;
      options.min_df = min_df;
      options.title_min_freq = title_min_freq;
      options.build_timestamp = timestamp ? *timestamp : sg::default_build_timestamp();
      auto index = sg::build_search_index(corpus, dict, resources, aliases, options);
      sg::save_index(index, index_out);
      if (!matrix_out.empty()) {
        write_file(matrix_out, sg::count_matrix_tsv(sg::build_count_matrix(index)));
      }
      std::cout << nlohmann::json{{"n_docs", index.stats.n_docs},
                                  {"avg_doc_len", index.stats.avg_doc_len},
                                  {"lemmas_indexed", index.stats.df.size()},
                                  {"postings_read", corpus.postings().size()},
                                  {"out", index_out}}
                       .dump(2)
                << '\n';
      return 0;
    }

    if (*query) {
      auto q = build_query(qf);
      auto resources = sg::Resources::load(data_dir);
      auto index = sg::load_index(require(common.index, "--index"));
      auto companies = load_companies(common, resources);
      sg::FeedbackStore feedback(qf.feedback_log);
      auto response = sg::execute_query(q, index, companies, *feedback.snapshot());
      for (const auto& w : response.warnings) std::cerr << "warning: " << w << '\n';
      if (query_format == "json") {
        std::cout << sg::response_to_json(response).dump(2) << '\n';
      } else {
        std::cout << response_csv(response, qf.group_by == "company");
      }
      return 0;
    }

    if (*analyze) {
      auto resources = sg::Resources::load(data_dir);
      auto index = sg::load_index(require(common.index, "--index"));
      if (analysis == "top-recruiters") {
        if (a_skill.empty() || a_degree.empty()) {
          throw CLI::ValidationError("top-recruiters", "needs --skill and --degree");
        }
        emit_list(sg::top_recruiters(index, a_skill, a_degree, a_k), analyze_format);
        return 0;
      }
      auto companies = load_companies(common, resources);
      if (analysis == "top-skills") {
        std::optional<std::string_view> industry;
        if (!a_industry.empty()) industry = a_industry;
        emit_list(sg::top_skills(index, companies, a_k, industry), analyze_format);
      } else if (analysis == "top-technologies") {
        emit_list(sg::top_technologies(index, companies, a_k), analyze_format);
      } else {
        if (a_tech.empty()) {
          throw CLI::ValidationError("companies-by-technology", "needs --tech");
        }
        std::set<std::string> techs(a_tech.begin(), a_tech.end());
        emit_list(sg::companies_by_technology(companies, techs, a_k), analyze_format);
      }
      return 0;
    }

    if (*contacts) {
      auto resources = sg::Resources::load(data_dir);
      auto companies = load_companies(common, resources);
      sg::ContactFilter filter = sg::is_recruiter_or_senior;
      if (c_all) filter = [](const sg::Contact&) { return true; };
      std::vector<std::string> domains;
      for (const auto& d : c_domains) domains.push_back(sg::canonical_domain(d));
      nlohmann::json out = nlohmann::json::object();
      for (const auto& [domain, list] : sg::find_contacts(domains, companies, filter)) {
        out[domain] = sg::contacts_to_json(list);
      }
      std::cout << out.dump(2) << '\n';
      return 0;
    }

    if (*serve) {
      sg::ServiceConfig config = service_config;
      if (!s_config.empty()) config = sg::load_config(s_config, config);
      if (!common.index.empty()) config.index_path = common.index;
      if (!common.companies.empty()) config.attribute_store_path = common.companies;
      if (!common.aliases.empty()) config.alias_table_path = common.aliases;
      if (config.alias_table_path.empty()) config.alias_table_path = data_dir / sg::data_files::kAliases;
      if (serve->count("--data-dir") > 0 || config.data_dir.empty()) config.data_dir = data_dir;
      if (!s_listen.empty()) config.listen_address = s_listen;
      if (!s_feedback.empty()) config.feedback_log_path = s_feedback;

      auto service = sg::SearchService::from_config(config);
      auto [host, port] = sg::split_listen_address(config.listen_address);
      sg::HttpServer server(*service, config.fold_interval_seconds);
      int bound = server.start(host, port);
      std::cerr << "listening on " << host << ':' << bound << '\n';
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
      server.stop();
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sg::Error& e) {
    std::cerr << "error [" << sg::error_code_name(e.code()) << "]: " << e.what() << '\n';
    return sg::is_data_error(e.code()) ? kExitData : kExitInternal;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

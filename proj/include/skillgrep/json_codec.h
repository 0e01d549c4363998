// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// JSON encodings shared by the CLI and the HTTP service.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "skillgrep/analytics.h"
#include "skillgrep/company_resolver.h"
#include "skillgrep/query_engine.h"

namespace skillgrep {

// Field names as in CompanyRecord. Contacts carry name and title; their
// level and departments are derived on load. Throws Error(kFormatError).
CompanyRecord company_from_json(const nlohmann::json& j);
nlohmann::json company_to_json(const CompanyRecord& c);

nlohmann::json contact_to_json(const Contact& c);
nlohmann::json contacts_to_json(const std::vector<Contact>& contacts);

// Unknown keys and badly typed values throw Error(kInvalidQuery).
Query query_from_json(const nlohmann::json& j);
nlohmann::json query_to_json(const Query& q);

nlohmann::json factors_to_json(const RankingFactors& f);
nlohmann::json result_to_json(const SearchResult& r);
nlohmann::json group_to_json(const CompanyGroup& g);
nlohmann::json response_to_json(const SearchResponse& r);

nlohmann::json ranked_list_to_json(const RankedList& list);
// "label,score" with a header row.
std::string ranked_list_to_csv(const RankedList& list);

nlohmann::json error_to_json(std::string_view code, std::string_view message);

}  // namespace skillgrep

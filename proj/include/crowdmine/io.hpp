#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "crowdmine/itemset_taxonomy.hpp"
#include "crowdmine/miners.hpp"
#include "crowdmine/oracle.hpp"
#include "crowdmine/poset_core.hpp"
#include "crowdmine/rational.hpp"

namespace crowdmine {

using Json = nlohmann::json;

// Taxonomy document: {"items": [{"id": 0, "label": "..."}], "edges": [[parent, child], ...]}.
Json taxonomy_to_json(const Taxonomy& tax);
Taxonomy taxonomy_from_json(const Json& doc);

// Transaction database document:
// {"taxonomy": "<file>", "theta": "p/q", "transactions": [[ids...], ...]}.
struct DatabaseFile {
    std::string taxonomy_path;
    Rational theta{1, 2};
    TransactionDatabase db;
};
Json database_to_json(const DatabaseFile& file);
DatabaseFile database_from_json(const Json& doc);

// Materialized poset in the taxonomy document shape, with the itemset as
// the node payload: {"items": [{"id": 0, "itemset": [ids...]}], "edges": ...}.
Json itemset_poset_to_json(const ItemsetPosetView& view);
Json itemset_taxonomy_to_json(const ItemsetTaxonomy& it); // adds edge kinds
Json generic_poset_to_json(const GenericPoset& poset);    // labels as payloads

Json mining_result_to_json(const MiningResult& result);
MiningResult mining_result_from_json(const Json& doc);

Json antichain_list_to_json(const std::vector<Antichain>& list);
std::vector<Antichain> antichain_list_from_json(const Json& doc);

// File helpers; throw Error with the path on failure.
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& doc);
void save_text_file(const std::string& path, const std::string& text);

} // namespace crowdmine

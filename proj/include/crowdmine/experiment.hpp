#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crowdmine/miners.hpp"
#include "crowdmine/oracle.hpp"
#include "crowdmine/rational.hpp"

namespace crowdmine {

// Where a taxonomy comes from: a file or one of the generators.
struct TaxonomySpec {
    enum class Kind { File, Chain, Flat, Random };
    Kind kind = Kind::Chain;
    std::string file;
    int n = 0;
    double edge_prob = 0.0;
    std::uint64_t seed = 0;

    std::string name() const;
    Taxonomy build() const;
};

// Where the ground-truth predicate comes from: explicit maximal frequent
// itemsets, a random draw, or a transaction database file.
struct PredicateSpec {
    enum class Kind { Mfis, Random, Database };
    Kind kind = Kind::Random;
    std::vector<Antichain> mfis;
    std::uint64_t seed = 0;
    std::string database_file;

    std::string name() const;
};

struct ExperimentConfig {
    std::vector<TaxonomySpec> taxonomies;
    std::vector<PredicateSpec> predicates;
    std::vector<std::string> miners;
    Rational theta{1, 2};
    std::uint64_t node_cap = kDefaultAntichainCap;
    std::uint64_t antichain_cap = kDefaultAntichainCap;
    std::uint64_t query_budget = 0; // 0 = unlimited (greedy only)
    std::string output_path;
    std::string output_format = "json"; // "json" | "csv"
    int jobs = 1;

    void validate() const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);

struct ExperimentRecord {
    std::string taxonomy;
    int items = 0;
    int itemset_nodes = 0;
    int width = 0;
    std::optional<std::uint64_t> solutions; // |S|, when materializable
    std::string predicate;
    std::size_t mfi_count = 0;
    std::size_t mii_count = 0;
    std::string miner;
    std::size_t crowd_queries = 0;
    double wall_ms = 0.0;
    double bound_value = 0.0;
    bool bound_applicable = false;
    bool bound_satisfied = true;
    std::optional<double> dual_reported_bound; // informational, dual strategy only
    bool borders_match = false;
    bool completed = false;
    bool ok = false;
    std::string error;
};

// The names run_experiment and the CLI accept.
const std::vector<std::string>& known_miners();

// Dispatches one miner by name against a materialized taxonomy. The budget
// only constrains the greedy miner (0 = unlimited).
MiningResult run_miner(const std::string& name, const ItemsetTaxonomy& it,
                       InstrumentedOracle& oracle, std::uint64_t antichain_cap,
                       std::uint64_t query_budget);

// Provable worst-case query bound for a miner on an instance; returns
// nullopt for miners whose bound needs |S| when it is not materializable.
std::optional<double> miner_query_bound(const std::string& name, int item_count,
                                        std::size_t mfi_count, std::size_t mii_count,
                                        const GenericPoset& itemset_poset,
                                        std::optional<std::uint64_t> solutions);

// Runs every (taxonomy, predicate, miner) triple: builds the instrumented
// oracle, mines, re-verifies the borders against the ground truth, and
// checks the query count against the miner's bound. Records keep config
// order even when jobs > 1.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

nlohmann::json experiment_records_to_json(const std::vector<ExperimentRecord>& records);
std::string experiment_records_to_csv(const std::vector<ExperimentRecord>& records);

} // namespace crowdmine

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "crowdmine/experiment.hpp"
#include "crowdmine/generators.hpp"
#include "crowdmine/io.hpp"
#include "crowdmine/itemset_taxonomy.hpp"
#include "crowdmine/miners.hpp"
#include "crowdmine/oracle.hpp"

namespace {

using namespace crowdmine;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

struct GenerateArgs {
    std::string kind;
    int n = 0;
    double edge_prob = 0.3;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_generate(const GenerateArgs& args) {
    Taxonomy tax;
    if (args.kind == "chain")
        tax = gen_chain(args.n);
    else if (args.kind == "flat")
        tax = gen_flat(args.n);
    else if (args.kind == "random")
        tax = gen_random_dag(args.n, args.edge_prob, args.seed);
    else
        throw ConfigInvalid("unknown generator \"" + args.kind + "\"");
    Json doc = taxonomy_to_json(tax);
    if (args.out.empty())
        std::cout << doc.dump(2) << "\n";
    else
        save_json_file(args.out, doc);
    return kExitOk;
}

struct MaterializeArgs {
    std::string taxonomy;
    int k = -1;
    bool solution = false;
    std::uint64_t node_cap = kDefaultAntichainCap;
    std::string out;
};

int cmd_materialize(const MaterializeArgs& args) {
    Taxonomy tax = taxonomy_from_json(load_json_file(args.taxonomy));
    Json stats{{"items", tax.item_count()}, {"taxonomy_width", tax.poset().width()}};
    Json out_doc;

    if (args.k >= 0) {
        KItemsetTaxonomy kt = construct_k_itemset_taxonomy(tax, args.k);
        stats["k"] = args.k;
        stats["k_itemset_nodes"] = kt.node_count();
        out_doc = itemset_poset_to_json(view_of(kt));
    } else {
        ItemsetTaxonomy it = construct_itemset_taxonomy(tax, args.node_cap);
        stats["itemset_nodes"] = it.node_count();
        stats["itemset_width"] = it.poset().width();
        out_doc = itemset_taxonomy_to_json(it);
        if (args.solution) {
            GenericPoset s = solution_taxonomy(tax, args.node_cap);
            stats["solution_nodes"] = s.size();
            out_doc = generic_poset_to_json(s);
        }
    }
    std::cout << stats.dump(2) << "\n";
    if (!args.out.empty())
        save_json_file(args.out, out_doc);
    return kExitOk;
}

struct MineArgs {
    std::string taxonomy;
    std::string mfis_json;
    std::string database;
    std::string theta;
    std::string miner = "alg1-any";
    int k = -1;
    std::uint64_t budget = 0;
    std::uint64_t node_cap = kDefaultAntichainCap;
    std::uint64_t antichain_cap = kDefaultAntichainCap;
    std::string out;
};

std::string canonical_miner_name(const std::string& name) {
    if (name == "alg1")
        return "alg1-any";
    return name;
}

// Ground-truth borders of an oracle within an arbitrary itemset poset.
std::pair<std::vector<Antichain>, std::vector<Antichain>>
borders_under(const ItemsetPosetView& view, const FrequencyOracle& oracle) {
    const GenericPoset& poset = *view.poset;
    Bitset truth(poset.size());
    for (int v = 0; v < poset.size(); ++v)
        if (oracle((*view.itemsets)[v]))
            truth.set(v);
    std::vector<Antichain> mfis, miis;
    for (int v = 0; v < poset.size(); ++v) {
        if (truth.test(v)) {
            Bitset below = poset.descendants(v) & truth;
            below.reset(v);
            if (below.none())
                mfis.push_back((*view.itemsets)[v]);
        } else {
            Bitset above = poset.ancestors(v) - truth;
            above.reset(v);
            if (above.none())
                miis.push_back((*view.itemsets)[v]);
        }
    }
    std::sort(mfis.begin(), mfis.end());
    std::sort(miis.begin(), miis.end());
    return {std::move(mfis), std::move(miis)};
}

MiningResult run_on_view(const std::string& miner, const ItemsetPosetView& view,
                         InstrumentedOracle& oracle, std::uint64_t antichain_cap,
                         std::uint64_t budget) {
    if (miner == "exhaustive")
        return mine_exhaustive(view, oracle);
    if (miner == "halving")
        return mine_halving(view, oracle, antichain_cap);
    if (miner == "chain-partition")
        return mine_chain_partition(view, oracle);
    if (miner == "greedy")
        return mine_greedy_anytime(
            view, oracle, budget == 0 ? std::numeric_limits<std::uint64_t>::max() : budget);
    throw ConfigInvalid("miner \"" + miner + "\" cannot run on a size-restricted taxonomy");
}

int cmd_mine(const MineArgs& args) {
    const std::string miner = canonical_miner_name(args.miner);
    const auto& known = known_miners();
    if (std::find(known.begin(), known.end(), miner) == known.end())
        throw ConfigInvalid("unknown miner \"" + args.miner + "\"");
    if (args.mfis_json.empty() == args.database.empty())
        throw ConfigInvalid("exactly one of --mfis and --database must be given");

    Taxonomy tax = taxonomy_from_json(load_json_file(args.taxonomy));
    ItemsetTaxonomy it = construct_itemset_taxonomy(tax, args.node_cap);

    FrequencyOracle ground_oracle;
    if (!args.mfis_json.empty()) {
        std::vector<Antichain> mfis = antichain_list_from_json(Json::parse(args.mfis_json));
        ground_oracle = make_predicate_oracle(it, std::move(mfis));
    } else {
        DatabaseFile file = database_from_json(load_json_file(args.database));
        Rational theta = args.theta.empty() ? file.theta : Rational::parse(args.theta);
        ground_oracle = make_db_oracle(std::move(file.db), tax, OracleConfig{theta});
    }

    InstrumentedOracle oracle(ground_oracle, tax);
    MiningResult result;
    std::pair<std::vector<Antichain>, std::vector<Antichain>> expected;
    if (args.k >= 0) {
        KItemsetTaxonomy kt = construct_k_itemset_taxonomy(tax, args.k);
        result = run_on_view(miner, view_of(kt), oracle, args.antichain_cap, args.budget);
        expected = borders_under(view_of(kt), ground_oracle);
    } else {
        result = run_miner(miner, it, oracle, args.antichain_cap, args.budget);
        expected = borders_under(view_of(it), ground_oracle);
    }

    bool verified =
        result.completed && result.mfis == expected.first && result.miis == expected.second;
    Json doc = mining_result_to_json(result);
    doc["verified"] = verified;
    if (args.out.empty())
        std::cout << doc.dump(2) << "\n";
    else
        save_json_file(args.out, doc);
    return verified ? kExitOk : kExitVerificationFailed;
}

struct BenchArgs {
    std::string config;
    std::string out;
    std::string format;
};

int cmd_bench(const BenchArgs& args) {
    ExperimentConfig cfg = experiment_config_from_json(load_json_file(args.config));
    if (!args.out.empty())
        cfg.output_path = args.out;
    if (!args.format.empty())
        cfg.output_format = args.format;
    cfg.validate();

    std::vector<ExperimentRecord> records = run_experiment(cfg);
    std::string rendered = cfg.output_format == "csv"
                               ? experiment_records_to_csv(records)
                               : experiment_records_to_json(records).dump(2) + "\n";
    if (cfg.output_path.empty())
        std::cout << rendered;
    else
        save_text_file(cfg.output_path, rendered);

    std::size_t failed = 0;
    for (const ExperimentRecord& r : records)
        if (!r.ok)
            ++failed;
    std::cerr << records.size() << " runs, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitVerificationFailed;
}

struct InteractiveArgs {
    std::string taxonomy;
    std::string miner = "alg1-minimal";
    std::uint64_t node_cap = kDefaultAntichainCap;
    std::uint64_t antichain_cap = kDefaultAntichainCap;
    std::string transcript;
    std::string out;
};

int cmd_interactive(const InteractiveArgs& args) {
    const std::string miner = canonical_miner_name(args.miner);
    Taxonomy tax = taxonomy_from_json(load_json_file(args.taxonomy));
    ItemsetTaxonomy it = construct_itemset_taxonomy(tax, args.node_cap);

    InteractiveSession session(std::cin, std::cout, tax);
    InstrumentedOracle oracle(interactive_oracle(session), tax);
    MiningResult result = run_miner(miner, it, oracle, args.antichain_cap, 0);

    if (!args.transcript.empty()) {
        Json log = Json::array();
        for (const InteractiveRecord& rec : session.log())
            log.push_back(Json{{"itemset", rec.itemset},
                               {"question", rec.rendering},
                               {"answer", rec.answer},
                               {"timestamp", rec.timestamp}});
        save_json_file(args.transcript, log);
    }

    Json doc = mining_result_to_json(result);
    if (args.out.empty())
        std::cout << "\n" << doc.dump(2) << "\n";
    else
        save_json_file(args.out, doc);
    return result.completed ? kExitOk : kExitVerificationFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Taxonomy-guided frequent itemset mining against boolean frequency oracles"};
    app.require_subcommand(1);

    std::uint64_t default_cap = kDefaultAntichainCap;
    try {
        default_cap = antichain_cap_from_env();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "Emit a taxonomy file from a generator");
    generate->add_option("--kind", gen.kind, "chain | flat | random")->required();
    generate->add_option("--n", gen.n, "number of items")->required();
    generate->add_option("--edge-prob", gen.edge_prob, "random generator edge probability");
    generate->add_option("--seed", gen.seed, "random generator seed");
    generate->add_option("--out", gen.out, "output file (stdout when omitted)");

    MaterializeArgs mat;
    CLI::App* materialize =
        app.add_subcommand("materialize", "Materialize itemset/solution taxonomies with stats");
    materialize->add_option("--taxonomy", mat.taxonomy, "taxonomy file")->required();
    materialize->add_option("--k", mat.k, "restrict itemsets to at most k items");
    materialize->add_flag("--solution", mat.solution, "also materialize the solution taxonomy");
    materialize->add_option("--node-cap", mat.node_cap, "materialization node cap");
    materialize->add_option("--out", mat.out, "write the materialized poset document here");

    MineArgs mine;
    mine.node_cap = default_cap;
    mine.antichain_cap = default_cap;
    CLI::App* mine_cmd = app.add_subcommand("mine", "Mine one taxonomy against one oracle");
    mine_cmd->add_option("--taxonomy", mine.taxonomy, "taxonomy file")->required();
    mine_cmd->add_option("--mfis", mine.mfis_json,
                         "ground-truth maximal frequent itemsets as JSON, e.g. [[3],[4]]");
    mine_cmd->add_option("--database", mine.database, "transaction database file");
    mine_cmd->add_option("--theta", mine.theta, "support threshold p/q (overrides the database header)");
    mine_cmd->add_option("--miner", mine.miner, "miner name (see bench config docs)");
    mine_cmd->add_option("--k", mine.k, "mine the k-itemset taxonomy instead");
    mine_cmd->add_option("--budget", mine.budget, "greedy query budget (0 = unlimited)");
    mine_cmd->add_option("--node-cap", mine.node_cap, "materialization node cap");
    mine_cmd->add_option("--antichain-cap", mine.antichain_cap, "antichain enumeration cap");
    mine_cmd->add_option("--out", mine.out, "result file (stdout when omitted)");

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Run an experiment config");
    bench_cmd->add_option("--config", bench.config, "experiment config file")->required();
    bench_cmd->add_option("--out", bench.out, "records output path");
    bench_cmd->add_option("--format", bench.format, "json | csv");

    InteractiveArgs inter;
    inter.node_cap = default_cap;
    inter.antichain_cap = default_cap;
    CLI::App* inter_cmd =
        app.add_subcommand("interactive", "Mine with a human answering on the terminal");
    inter_cmd->add_option("--taxonomy", inter.taxonomy, "taxonomy file")->required();
    inter_cmd->add_option("--miner", inter.miner, "miner name (default alg1-minimal)");
    inter_cmd->add_option("--node-cap", inter.node_cap, "materialization node cap");
    inter_cmd->add_option("--antichain-cap", inter.antichain_cap, "antichain enumeration cap");
    inter_cmd->add_option("--transcript", inter.transcript, "persist the session transcript here");
    inter_cmd->add_option("--out", inter.out, "result file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) // --help
            return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed())
            return cmd_generate(gen);
        if (materialize->parsed())
            return cmd_materialize(mat);
        if (mine_cmd->parsed())
            return cmd_mine(mine);
        if (bench_cmd->parsed())
            return cmd_bench(bench);
        if (inter_cmd->parsed())
            return cmd_interactive(inter);
    } catch (const NonMonotoneOracle& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

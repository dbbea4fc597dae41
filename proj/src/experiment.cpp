#include "crowdmine/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "crowdmine/generators.hpp"
#include "crowdmine/io.hpp"
#include "crowdmine/itemset_taxonomy.hpp"

namespace crowdmine {

std::string TaxonomySpec::name() const {
    switch (kind) {
    case Kind::File:
        return file;
    case Kind::Chain:
        return "chain(" + std::to_string(n) + ")";
    case Kind::Flat:
        return "flat(" + std::to_string(n) + ")";
    case Kind::Random:
        return "random(n=" + std::to_string(n) + ",p=" + std::to_string(edge_prob) +
               ",seed=" + std::to_string(seed) + ")";
    }
    return "?";
}

Taxonomy TaxonomySpec::build() const {
    switch (kind) {
    case Kind::File:
        return taxonomy_from_json(load_json_file(file));
    case Kind::Chain:
        return gen_chain(n);
    case Kind::Flat:
        return gen_flat(n);
    case Kind::Random:
        return gen_random_dag(n, edge_prob, seed);
    }
    throw ConfigInvalid("unknown taxonomy kind");
}

std::string PredicateSpec::name() const {
    switch (kind) {
    case Kind::Mfis: {
        std::string out = "mfis[";
        for (std::size_t i = 0; i < mfis.size(); ++i) {
            if (i)
                out += ",";
            out += mfis[i].str();
        }
        return out + "]";
    }
    case Kind::Random:
        return "random(seed=" + std::to_string(seed) + ")";
    case Kind::Database:
        return "db(" + database_file + ")";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (taxonomies.empty())
        throw ConfigInvalid("config needs at least one taxonomy");
    if (predicates.empty())
        throw ConfigInvalid("config needs at least one predicate");
    if (miners.empty())
        throw ConfigInvalid("config needs at least one miner");
    if (theta <= Rational(0, 1) || theta >= Rational(1, 1))
        throw ConfigInvalid("theta must lie strictly between 0 and 1");
    if (node_cap == 0 || antichain_cap == 0)
        throw ConfigInvalid("caps must be positive");
    if (output_format != "json" && output_format != "csv")
        throw ConfigInvalid("output format must be json or csv");
    if (jobs < 1)
        throw ConfigInvalid("jobs must be at least 1");
    const auto& known = known_miners();
    for (const std::string& m : miners)
        if (std::find(known.begin(), known.end(), m) == known.end())
            throw ConfigInvalid("unknown miner \"" + m + "\"");
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
    ExperimentConfig cfg;
    if (!doc.is_object())
        throw ConfigInvalid("config must be a JSON object");

    for (const Json& t : doc.value("taxonomies", Json::array())) {
        TaxonomySpec spec;
        if (t.contains("file")) {
            spec.kind = TaxonomySpec::Kind::File;
            spec.file = t.at("file").get<std::string>();
        } else {
            std::string gen = t.value("generator", "");
            if (gen == "chain")
                spec.kind = TaxonomySpec::Kind::Chain;
            else if (gen == "flat")
                spec.kind = TaxonomySpec::Kind::Flat;
            else if (gen == "random")
                spec.kind = TaxonomySpec::Kind::Random;
            else
                throw ConfigInvalid("taxonomy entry needs \"file\" or a known \"generator\"");
            spec.n = t.value("n", 0);
            spec.edge_prob = t.value("edge_prob", 0.0);
            spec.seed = t.value("seed", std::uint64_t(0));
        }
        cfg.taxonomies.push_back(std::move(spec));
    }

    for (const Json& p : doc.value("predicates", Json::array())) {
        if (p.contains("mfis")) {
            PredicateSpec spec;
            spec.kind = PredicateSpec::Kind::Mfis;
            spec.mfis = antichain_list_from_json(p.at("mfis"));
            cfg.predicates.push_back(std::move(spec));
        } else if (p.contains("random_seeds")) {
            for (const Json& s : p.at("random_seeds")) {
                PredicateSpec spec;
                spec.kind = PredicateSpec::Kind::Random;
                spec.seed = s.get<std::uint64_t>();
                cfg.predicates.push_back(std::move(spec));
            }
        } else if (p.contains("random_seed")) {
            PredicateSpec spec;
            spec.kind = PredicateSpec::Kind::Random;
            spec.seed = p.at("random_seed").get<std::uint64_t>();
            cfg.predicates.push_back(std::move(spec));
        } else if (p.contains("database")) {
            PredicateSpec spec;
            spec.kind = PredicateSpec::Kind::Database;
            spec.database_file = p.at("database").get<std::string>();
            cfg.predicates.push_back(std::move(spec));
        } else {
            throw ConfigInvalid("predicate entry needs \"mfis\", \"random_seed(s)\" or \"database\"");
        }
    }

    if (doc.contains("miners") && doc.at("miners").is_string() &&
        doc.at("miners").get<std::string>() == "all") {
        cfg.miners = known_miners();
    } else {
        for (const Json& m : doc.value("miners", Json::array()))
            cfg.miners.push_back(m.get<std::string>());
    }

    cfg.theta = Rational::parse(doc.value("theta", "1/2"));
    if (doc.contains("caps")) {
        const Json& caps = doc.at("caps");
        cfg.node_cap = caps.value("nodes", cfg.node_cap);
        cfg.antichain_cap = caps.value("antichains", cfg.antichain_cap);
        cfg.query_budget = caps.value("query_budget", cfg.query_budget);
    }
    if (doc.contains("output")) {
        cfg.output_path = doc.at("output").value("path", "");
        cfg.output_format = doc.at("output").value("format", "json");
    }
    cfg.jobs = doc.value("jobs", 1);
    cfg.validate();
    return cfg;
}

const std::vector<std::string>& known_miners() {
    static const std::vector<std::string> names = {
        "alg1-any",   "alg1-minimal", "alg1-maximal",    "alg1-dual",
        "exhaustive", "halving",      "chain-partition", "greedy"};
    return names;
}

MiningResult run_miner(const std::string& name, const ItemsetTaxonomy& it,
                       InstrumentedOracle& oracle, std::uint64_t antichain_cap,
                       std::uint64_t query_budget) {
    if (name == "alg1-any")
        return mine_alg1(it, oracle, Alg1Strategy::Any);
    if (name == "alg1-minimal")
        return mine_alg1(it, oracle, Alg1Strategy::Minimal);
    if (name == "alg1-maximal")
        return mine_alg1(it, oracle, Alg1Strategy::Maximal);
    if (name == "alg1-dual")
        return mine_alg1(it, oracle, Alg1Strategy::Dual);
    if (name == "exhaustive")
        return mine_exhaustive(view_of(it), oracle);
    if (name == "halving")
        return mine_halving(view_of(it), oracle, antichain_cap);
    if (name == "chain-partition")
        return mine_chain_partition(view_of(it), oracle);
    if (name == "greedy")
        return mine_greedy_anytime(view_of(it), oracle,
                                   query_budget == 0 ? std::numeric_limits<std::uint64_t>::max()
                                                     : query_budget);
    throw ConfigInvalid("unknown miner \"" + name + "\"");
}

std::optional<double> miner_query_bound(const std::string& name, int item_count,
                                        std::size_t mfi_count, std::size_t mii_count,
                                        const GenericPoset& itemset_poset,
                                        std::optional<std::uint64_t> solutions) {
    const double items = item_count;
    const double mf = static_cast<double>(mfi_count);
    const double mi = static_cast<double>(mii_count);
    if (name == "alg1-any" || name == "alg1-dual")
        return (items + 1.0) * (mf + mi);
    if (name == "alg1-minimal")
        return mi + (items + 1.0) * mf;
    if (name == "alg1-maximal")
        return mf + (items + 1.0) * mi;
    if (name == "exhaustive" || name == "greedy")
        return static_cast<double>(itemset_poset.size());
    if (name == "halving") {
        if (!solutions)
            return std::nullopt;
        return std::ceil(std::log(static_cast<double>(*solutions)) / std::log(1.0 / 0.83));
    }
    if (name == "chain-partition") {
        std::vector<std::vector<int>> chains = chain_partition(itemset_poset);
        std::size_t longest = 0;
        for (const auto& c : chains)
            longest = std::max(longest, c.size());
        return static_cast<double>(chains.size()) *
               std::ceil(std::log2(static_cast<double>(longest) + 1.0));
    }
    return std::nullopt;
}

namespace {

std::vector<Antichain> minimal_false_nodes(const ItemsetTaxonomy& it, const Bitset& truth) {
    std::vector<Antichain> miis;
    for (int v = 0; v < it.node_count(); ++v) {
        if (truth.test(v))
            continue;
        Bitset above = it.poset().ancestors(v) - truth;
        above.reset(v);
        if (above.none())
            miis.push_back(it.itemset(v));
    }
    std::sort(miis.begin(), miis.end());
    return miis;
}

struct PreparedPredicate {
    std::vector<Antichain> mfis;
    std::vector<Antichain> miis;
    FrequencyOracle oracle;
};

PreparedPredicate prepare_predicate(const PredicateSpec& spec, const ItemsetTaxonomy& it) {
    PreparedPredicate out;
    switch (spec.kind) {
    case PredicateSpec::Kind::Mfis:
        out.mfis = spec.mfis;
        out.oracle = make_predicate_oracle(it, out.mfis);
        break;
    case PredicateSpec::Kind::Random:
        out.mfis = gen_random_predicate(it, spec.seed);
        out.oracle = make_predicate_oracle(it, out.mfis);
        break;
    case PredicateSpec::Kind::Database: {
        DatabaseFile file = database_from_json(load_json_file(spec.database_file));
        OracleConfig cfg{file.theta};
        out.oracle = make_db_oracle(file.db, it.base(), cfg);
        Bitset truth(it.node_count());
        for (int v = 0; v < it.node_count(); ++v)
            if (out.oracle(it.itemset(v)))
                truth.set(v);
        out.mfis = mfis_from_predicate(it, truth);
        break;
    }
    }
    out.miis = minimal_false_nodes(it, predicate_from_mfis(it, out.mfis));
    return out;
}

} // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    struct Task {
        std::size_t tax_index;
        std::size_t pred_index;
        std::string miner;
    };
    std::vector<Task> tasks;
    for (std::size_t t = 0; t < cfg.taxonomies.size(); ++t)
        for (std::size_t p = 0; p < cfg.predicates.size(); ++p)
            for (const std::string& m : cfg.miners)
                tasks.push_back(Task{t, p, m});

    // Taxonomy materializations are shared across tasks.
    struct PreparedTaxonomy {
        std::string name;
        ItemsetTaxonomy it;
        int width = 0;
        std::optional<std::uint64_t> solutions;
        std::string error;
    };
    std::vector<PreparedTaxonomy> prepared(cfg.taxonomies.size());
    for (std::size_t t = 0; t < cfg.taxonomies.size(); ++t) {
        prepared[t].name = cfg.taxonomies[t].name();
        try {
            Taxonomy tax = cfg.taxonomies[t].build();
            prepared[t].it = construct_itemset_taxonomy(tax, cfg.node_cap);
            prepared[t].width = prepared[t].it.poset().width();
            try {
                prepared[t].solutions = count_antichains(prepared[t].it.poset(), cfg.antichain_cap);
            } catch (const CapExceeded&) {
                prepared[t].solutions = std::nullopt;
            }
        } catch (const std::exception& e) {
            prepared[t].error = e.what();
        }
    }

    std::vector<ExperimentRecord> records(tasks.size());
    auto run_task = [&](std::size_t index) {
        const Task& task = tasks[index];
        const PreparedTaxonomy& ptax = prepared[task.tax_index];
        ExperimentRecord rec;
        rec.taxonomy = ptax.name;
        rec.predicate = cfg.predicates[task.pred_index].name();
        rec.miner = task.miner;
        if (!ptax.error.empty()) {
            rec.error = ptax.error;
            records[index] = std::move(rec);
            return;
        }
        const ItemsetTaxonomy& it = ptax.it;
        rec.items = it.base().item_count();
        rec.itemset_nodes = it.node_count();
        rec.width = ptax.width;
        rec.solutions = ptax.solutions;
        try {
            PreparedPredicate pred = prepare_predicate(cfg.predicates[task.pred_index], it);
            rec.mfi_count = pred.mfis.size();
            rec.mii_count = pred.miis.size();

            InstrumentedOracle oracle(pred.oracle, it.base());
            auto start = std::chrono::steady_clock::now();
            MiningResult result =
                run_miner(task.miner, it, oracle, cfg.antichain_cap, cfg.query_budget);
            auto stop = std::chrono::steady_clock::now();
            rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
            rec.crowd_queries = result.crowd_queries;
            rec.completed = result.completed;
            rec.borders_match =
                result.completed && result.mfis == pred.mfis && result.miis == pred.miis;

            std::optional<double> bound = miner_query_bound(
                task.miner, rec.items, rec.mfi_count, rec.mii_count, it.poset(), rec.solutions);
            rec.bound_applicable = bound.has_value();
            if (bound)
                rec.bound_satisfied = static_cast<double>(rec.crowd_queries) <= *bound;
            rec.bound_value = bound.value_or(0.0);
            if (task.miner == "alg1-dual")
                rec.dual_reported_bound = static_cast<double>(rec.mfi_count + rec.mii_count) +
                                          (rec.items + 1.0) *
                                              static_cast<double>(std::min(rec.mfi_count,
                                                                           rec.mii_count)) +
                                          rec.items;
            rec.ok = rec.borders_match && (!rec.bound_applicable || rec.bound_satisfied);
        } catch (const std::exception& e) {
            rec.error = e.what();
            rec.ok = false;
        }
        records[index] = std::move(rec);
    };

    if (cfg.jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            run_task(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> workers;
        int n_workers = std::min<int>(cfg.jobs, static_cast<int>(tasks.size()));
        for (int w = 0; w < n_workers; ++w)
            workers.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
                    run_task(i);
            }));
        for (auto& f : workers)
            f.get();
    }
    return records;
}

nlohmann::json experiment_records_to_json(const std::vector<ExperimentRecord>& records) {
    Json out = Json::array();
    for (const ExperimentRecord& r : records) {
        Json entry{{"taxonomy", r.taxonomy},
                   {"items", r.items},
                   {"itemset_nodes", r.itemset_nodes},
                   {"width", r.width},
                   {"predicate", r.predicate},
                   {"mfis", r.mfi_count},
                   {"miis", r.mii_count},
                   {"miner", r.miner},
                   {"crowd_queries", r.crowd_queries},
                   {"wall_ms", r.wall_ms},
                   {"bound_value", r.bound_value},
                   {"bound_applicable", r.bound_applicable},
                   {"bound_satisfied", r.bound_satisfied},
                   {"borders_match", r.borders_match},
                   {"completed", r.completed},
                   {"ok", r.ok}};
        entry["solutions"] = r.solutions ? Json(*r.solutions) : Json(nullptr);
        if (r.dual_reported_bound)
            entry["dual_reported_bound"] = *r.dual_reported_bound;
        if (!r.error.empty())
            entry["error"] = r.error;
        out.push_back(std::move(entry));
    }
    return out;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string experiment_records_to_csv(const std::vector<ExperimentRecord>& records) {
    std::ostringstream out;
    out << "taxonomy,items,itemset_nodes,width,solutions,predicate,mfis,miis,miner,"
           "crowd_queries,wall_ms,bound_value,bound_applicable,bound_satisfied,"
           "borders_match,completed,ok,error\n";
    for (const ExperimentRecord& r : records) {
        out << csv_escape(r.taxonomy) << ',' << r.items << ',' << r.itemset_nodes << ','
            << r.width << ',';
        if (r.solutions)
            out << *r.solutions;
        out << ',' << csv_escape(r.predicate) << ',' << r.mfi_count << ',' << r.mii_count << ','
            << r.miner << ',' << r.crowd_queries << ',' << r.wall_ms << ',' << r.bound_value
            << ',' << (r.bound_applicable ? 1 : 0) << ',' << (r.bound_satisfied ? 1 : 0) << ','
            << (r.borders_match ? 1 : 0) << ',' << (r.completed ? 1 : 0) << ',' << (r.ok ? 1 : 0)
            << ',' << csv_escape(r.error) << '\n';
    }
    return out.str();
}

} // namespace crowdmine

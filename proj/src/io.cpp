#include "crowdmine/io.hpp"

#include <algorithm>
#include <fstream>

namespace crowdmine {

Json taxonomy_to_json(const Taxonomy& tax) {
    Json items = Json::array();
    for (int id : tax.item_ids()) {
        Json entry{{"id", id}};
        const std::string& label = tax.label(id);
        if (label != "item" + std::to_string(id))
            entry["label"] = label;
        items.push_back(std::move(entry));
    }
    Json edges = Json::array();
    for (const auto& [p, c] : tax.cover_edges())
        edges.push_back(Json::array({p, c}));
    return Json{{"items", std::move(items)}, {"edges", std::move(edges)}};
}

Taxonomy taxonomy_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("items") || !doc.contains("edges"))
        throw Error("taxonomy document needs \"items\" and \"edges\"");
    std::vector<int> ids;
    std::vector<std::string> labels;
    for (const Json& entry : doc.at("items")) {
        ids.push_back(entry.at("id").get<int>());
        labels.push_back(entry.value("label", std::string()));
    }
    std::vector<std::pair<int, int>> edges;
    for (const Json& edge : doc.at("edges"))
        edges.emplace_back(edge.at(0).get<int>(), edge.at(1).get<int>());
    return build_taxonomy(ids, edges, labels);
}

Json database_to_json(const DatabaseFile& file) {
    Json transactions = Json::array();
    for (const auto& t : file.db.transactions)
        transactions.push_back(t);
    return Json{{"taxonomy", file.taxonomy_path},
                {"theta", file.theta.str()},
                {"transactions", std::move(transactions)}};
}

DatabaseFile database_from_json(const Json& doc) {
    DatabaseFile file;
    file.taxonomy_path = doc.at("taxonomy").get<std::string>();
    file.theta = Rational::parse(doc.at("theta").get<std::string>());
    for (const Json& t : doc.at("transactions"))
        file.db.transactions.push_back(t.get<std::vector<int>>());
    return file;
}

Json itemset_poset_to_json(const ItemsetPosetView& view) {
    Json items = Json::array();
    for (int v = 0; v < view.poset->size(); ++v)
        items.push_back(Json{{"id", v}, {"itemset", (*view.itemsets)[v].items}});
    Json edges = Json::array();
    for (const auto& [a, b] : view.poset->cover_edges())
        edges.push_back(Json::array({a, b}));
    return Json{{"items", std::move(items)}, {"edges", std::move(edges)}};
}

Json itemset_taxonomy_to_json(const ItemsetTaxonomy& it) {
    Json doc = itemset_poset_to_json(view_of(it));
    Json kinds = Json::array();
    for (const auto& [a, b, kind] : it.core().cover_edges())
        kinds.push_back(Json::array({a, b, edge_kind_name(kind)}));
    doc["edge_kinds"] = std::move(kinds);
    return doc;
}

Json generic_poset_to_json(const GenericPoset& poset) {
    Json items = Json::array();
    for (int v = 0; v < poset.size(); ++v) {
        Json entry{{"id", v}};
        if (!poset.label(v).empty())
            entry["label"] = poset.label(v);
        items.push_back(std::move(entry));
    }
    Json edges = Json::array();
    for (const auto& [a, b] : poset.cover_edges())
        edges.push_back(Json::array({a, b}));
    return Json{{"items", std::move(items)}, {"edges", std::move(edges)}};
}

Json antichain_list_to_json(const std::vector<Antichain>& list) {
    Json out = Json::array();
    for (const Antichain& a : list)
        out.push_back(a.items);
    return out;
}

std::vector<Antichain> antichain_list_from_json(const Json& doc) {
    if (!doc.is_array())
        throw Error("expected a JSON array of itemsets");
    std::vector<Antichain> out;
    for (const Json& entry : doc) {
        std::vector<int> items = entry.get<std::vector<int>>();
        std::sort(items.begin(), items.end());
        out.emplace_back(std::move(items));
    }
    return out;
}

Json mining_result_to_json(const MiningResult& result) {
    Json transcript = Json::array();
    for (const TranscriptEntry& entry : result.transcript)
        transcript.push_back(Json{{"itemset", entry.itemset.items}, {"answer", entry.answer}});
    return Json{{"strategy", result.strategy},
                {"mfis", antichain_list_to_json(result.mfis)},
                {"miis", antichain_list_to_json(result.miis)},
                {"crowd_queries", result.crowd_queries},
                {"completed", result.completed},
                {"nodes_total", result.nodes_total},
                {"classified_frequent", result.classified_frequent},
                {"classified_infrequent", result.classified_infrequent},
                {"transcript", std::move(transcript)}};
}

MiningResult mining_result_from_json(const Json& doc) {
    MiningResult result;
    result.strategy = doc.at("strategy").get<std::string>();
    result.mfis = antichain_list_from_json(doc.at("mfis"));
    result.miis = antichain_list_from_json(doc.at("miis"));
    result.crowd_queries = doc.at("crowd_queries").get<std::size_t>();
    result.completed = doc.at("completed").get<bool>();
    result.nodes_total = doc.at("nodes_total").get<std::size_t>();
    result.classified_frequent = doc.at("classified_frequent").get<std::size_t>();
    result.classified_infrequent = doc.at("classified_infrequent").get<std::size_t>();
    for (const Json& entry : doc.at("transcript")) {
        TranscriptEntry t;
        t.itemset = Antichain(entry.at("itemset").get<std::vector<int>>());
        t.answer = entry.at("answer").get<bool>();
        result.transcript.push_back(std::move(t));
    }
    return result;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& doc) {
    save_text_file(path, doc.dump(2) + "\n");
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    out << text;
    if (!out)
        throw Error("failed while writing " + path);
}

} // namespace crowdmine

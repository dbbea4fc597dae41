#include "crowdmine/itemset_taxonomy.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace crowdmine {

const char* edge_kind_name(EdgeKind kind) {
    return kind == EdgeKind::Addition ? "addition" : "specialization";
}

namespace {

std::string render_elements(const std::vector<int>& elements, const GenericPoset& base) {
    std::string out = "{";
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i)
            out += ",";
        const std::string& lbl = base.label(elements[i]);
        out += lbl.empty() ? std::to_string(elements[i]) : lbl;
    }
    return out + "}";
}

} // namespace

AntichainPoset AntichainPoset::build(const GenericPoset& base, std::uint64_t node_cap) {
    const int n = base.size();

    AntichainPoset out;
    out.nodes_.push_back(AntichainNode{{}, Bitset(n)});
    out.index_.emplace(std::vector<int>{}, 0);

    // Breadth-first closure from the empty antichain: a child is obtained by
    // inserting one element whose parents are already inside the ideal.
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        // nodes_ may reallocate while children are appended; copy the payload.
        AntichainNode current = out.nodes_[id];
        for (int i = 0; i < n; ++i) {
            if (current.ideal.test(i))
                continue;
            bool eligible = true;
            for (int p : base.parents(i))
                if (!current.ideal.test(p)) {
                    eligible = false;
                    break;
                }
            if (!eligible)
                continue;

            std::vector<int> child_elements;
            child_elements.reserve(current.elements.size() + 1);
            bool removed_parent = false;
            for (int e : current.elements) {
                if (base.leq(e, i) && e != i) {
                    removed_parent = true; // e is necessarily a parent of i
                    continue;
                }
                child_elements.push_back(e);
            }
            child_elements.insert(
                std::lower_bound(child_elements.begin(), child_elements.end(), i), i);

            int child_id;
            auto found = out.index_.find(child_elements);
            if (found != out.index_.end()) {
                child_id = found->second;
            } else {
                if (static_cast<std::uint64_t>(out.nodes_.size()) >= node_cap)
                    throw CapExceeded("antichain poset exceeds node cap " + std::to_string(node_cap));
                child_id = static_cast<int>(out.nodes_.size());
                Bitset child_ideal = current.ideal;
                child_ideal.set(i);
                out.nodes_.push_back(AntichainNode{child_elements, std::move(child_ideal)});
                out.index_.emplace(std::move(child_elements), child_id);
                queue.push_back(child_id);
            }
            out.edges_.emplace_back(id, child_id,
                                    removed_parent ? EdgeKind::Specialization : EdgeKind::Addition);
        }
    }

    // Order view: ancestors propagate along cover edges; discovery order is
    // topological because each edge grows the ideal by exactly one element.
    const int count = out.node_count();
    std::vector<Bitset> anc(count, Bitset(count));
    std::vector<std::string> labels(count);
    for (int v = 0; v < count; ++v) {
        anc[v].set(v);
        labels[v] = render_elements(out.nodes_[v].elements, base);
    }
    for (const auto& [a, b, kind] : out.edges_)
        anc[b] |= anc[a];
    out.poset_ = GenericPoset::from_ancestor_sets(std::move(anc), std::move(labels));
    return out;
}

int AntichainPoset::find(const std::vector<int>& elements) const {
    auto it = index_.find(elements);
    return it == index_.end() ? -1 : it->second;
}

EdgeKind AntichainPoset::edge_kind(int a, int b) const {
    for (const auto& [from, to, kind] : edges_)
        if (from == a && to == b)
            return kind;
    throw NotACoverEdge("(" + std::to_string(a) + ", " + std::to_string(b) + ") is not a cover edge");
}

// ---------------------------------------------------------------------------
// ItemsetTaxonomy

ItemsetTaxonomy construct_itemset_taxonomy(const Taxonomy& tax, std::uint64_t node_cap) {
    ItemsetTaxonomy it;
    it.base_ = std::make_shared<const Taxonomy>(tax);
    it.core_ = AntichainPoset::build(tax.poset(), node_cap);
    it.itemsets_.reserve(it.core_.node_count());
    for (const AntichainNode& node : it.core_.nodes()) {
        std::vector<int> ids;
        ids.reserve(node.elements.size());
        for (int e : node.elements)
            ids.push_back(tax.id_of(e));
        it.itemsets_.emplace_back(std::move(ids));
    }
    return it;
}

OrderIdeal ItemsetTaxonomy::ideal(int node) const {
    return OrderIdeal(base_->to_id_list(core_.node(node).ideal));
}

int ItemsetTaxonomy::node_of(const Antichain& a) const {
    std::vector<int> elements;
    elements.reserve(a.items.size());
    for (int id : a.items)
        elements.push_back(base_->index_of(id));
    std::sort(elements.begin(), elements.end());
    int id = core_.find(elements);
    if (id < 0)
        throw NotAnAntichain(a.str() + " is not a canonical itemset of this taxonomy");
    return id;
}

EdgeKind classify_covering_edge(const ItemsetTaxonomy& it, int a, int b) {
    return it.core().edge_kind(a, b);
}

// ---------------------------------------------------------------------------
// KItemsetTaxonomy

KItemsetTaxonomy construct_k_itemset_taxonomy(const Taxonomy& tax, int k) {
    if (k < 0)
        throw Error("k must be non-negative");

    KItemsetTaxonomy kt;
    kt.base_ = std::make_shared<const Taxonomy>(tax);
    kt.k_ = k;

    // Antichains of size <= k, in lexicographic element order ({} first).
    std::vector<std::vector<int>> members;
    if (k == 0) {
        members.push_back({});
    } else {
        members = [&] {
            std::vector<std::vector<int>> all;
            const GenericPoset& poset = tax.poset();
            std::vector<int> current;
            std::function<void(int)> rec = [&](int start) {
                all.push_back(current);
                if (static_cast<int>(current.size()) == k)
                    return;
                for (int i = start; i < poset.size(); ++i) {
                    bool ok = true;
                    for (int e : current)
                        if (poset.leq(e, i) || poset.leq(i, e)) {
                            ok = false;
                            break;
                        }
                    if (!ok)
                        continue;
                    current.push_back(i);
                    rec(i + 1);
                    current.pop_back();
                }
            };
            rec(0);
            return all;
        }();
    }

    std::vector<Bitset> ideals;
    ideals.reserve(members.size());
    for (const auto& elements : members) {
        Bitset ideal(tax.item_count());
        for (int e : elements)
            ideal |= tax.poset().ancestors(e);
        ideals.push_back(std::move(ideal));
    }

    const int count = static_cast<int>(members.size());
    std::vector<Bitset> anc(count, Bitset(count));
    std::vector<std::string> labels(count);
    for (int b = 0; b < count; ++b) {
        labels[b] = render_elements(members[b], tax.poset());
        for (int a = 0; a < count; ++a)
            if (ideals[a].is_subset_of(ideals[b]))
                anc[b].set(a);
    }
    kt.poset_ = GenericPoset::from_ancestor_sets(std::move(anc), std::move(labels));

    kt.itemsets_.reserve(count);
    for (int v = 0; v < count; ++v) {
        std::vector<int> ids;
        ids.reserve(members[v].size());
        for (int e : members[v])
            ids.push_back(tax.id_of(e));
        kt.itemsets_.emplace_back(std::move(ids));
        kt.index_.emplace(std::move(members[v]), v);
    }
    return kt;
}

int KItemsetTaxonomy::node_of(const Antichain& a) const {
    std::vector<int> elements;
    elements.reserve(a.items.size());
    for (int id : a.items)
        elements.push_back(base_->index_of(id));
    std::sort(elements.begin(), elements.end());
    auto it = index_.find(elements);
    if (it == index_.end())
        throw NotAnAntichain(a.str() + " is not a k-itemset of this taxonomy");
    return it->second;
}

// ---------------------------------------------------------------------------
// Solution taxonomy and the predicate bijection

GenericPoset solution_taxonomy(const Taxonomy& tax, std::uint64_t node_cap) {
    ItemsetTaxonomy it = construct_itemset_taxonomy(tax, node_cap);
    AntichainPoset solutions = AntichainPoset::build(it.poset(), node_cap);
    return solutions.poset();
}

Bitset predicate_from_mfis(const ItemsetTaxonomy& it, const std::vector<Antichain>& mfis) {
    std::vector<int> nodes;
    nodes.reserve(mfis.size());
    for (const Antichain& m : mfis)
        nodes.push_back(it.node_of(m));
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j)
            if (i != j && it.poset().leq(nodes[i], nodes[j]))
                throw NotAnAntichain("itemsets " + mfis[i].str() + " and " + mfis[j].str() +
                                     " are comparable");

    Bitset truth(it.node_count());
    for (int v : nodes)
        truth |= it.poset().ancestors(v);
    return truth;
}

std::vector<Antichain> mfis_from_predicate(const ItemsetTaxonomy& it, const Bitset& truth) {
    if (static_cast<int>(truth.size()) != it.node_count())
        throw Error("predicate size mismatch");
    if (it.node_count() <= kMonotonicityCheckLimit) {
        for (const auto& [a, b, kind] : it.core().cover_edges())
            if (truth.test(b) && !truth.test(a))
                throw NotMonotone("predicate true on " + it.itemset(b).str() + " but false on " +
                                  it.itemset(a).str());
    }

    std::vector<Antichain> mfis;
    for (Bitset::size_type v = truth.find_first(); v != Bitset::npos; v = truth.find_next(v)) {
        Bitset below = it.poset().descendants(v) & truth;
        below.reset(v);
        if (below.none())
            mfis.push_back(it.itemset(static_cast<int>(v)));
    }
    std::sort(mfis.begin(), mfis.end());
    return mfis;
}

} // namespace crowdmine

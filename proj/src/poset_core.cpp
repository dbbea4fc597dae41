#include "crowdmine/poset_core.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <queue>

namespace crowdmine {

std::string Antichain::str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(items[i]);
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// GenericPoset

GenericPoset GenericPoset::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                      std::vector<std::string> labels) {
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw Error("edge endpoint out of range");
        if (a == b)
            throw CycleDetected("self-loop on element " + std::to_string(a));
        succ[a].push_back(b);
        ++indeg[b];
    }

    // Kahn's algorithm: topological order doubles as the cycle check.
    std::vector<int> topo;
    topo.reserve(n);
    std::deque<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0)
            ready.push_back(v);
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        topo.push_back(v);
        for (int w : succ[v])
            if (--indeg[w] == 0)
                ready.push_back(w);
    }
    if (static_cast<int>(topo.size()) != n)
        throw CycleDetected("input edges contain a directed cycle");

    GenericPoset p;
    p.ancestors_.assign(n, Bitset(n));
    for (int v = 0; v < n; ++v)
        p.ancestors_[v].set(v);
    for (int v : topo)
        for (int w : succ[v])
            p.ancestors_[w] |= p.ancestors_[v];
    p.labels_ = std::move(labels);
    p.finalize();
    return p;
}

GenericPoset GenericPoset::from_ancestor_sets(std::vector<Bitset> ancestors,
                                              std::vector<std::string> labels) {
    GenericPoset p;
    p.ancestors_ = std::move(ancestors);
    p.labels_ = std::move(labels);
    const int n = p.size();
    for (int v = 0; v < n; ++v) {
        if (static_cast<int>(p.ancestors_[v].size()) != n)
            throw Error("ancestor bitset width mismatch");
        if (!p.ancestors_[v].test(v))
            throw Error("ancestor sets must be reflexive");
    }
    for (int b = 0; b < n; ++b) {
        const Bitset& anc = p.ancestors_[b];
        for (Bitset::size_type a = anc.find_first(); a != Bitset::npos; a = anc.find_next(a))
            if (static_cast<int>(a) != b && p.ancestors_[a].test(b))
                throw CycleDetected("order relation is not antisymmetric");
    }
    p.finalize();
    return p;
}

// Derives descendants, canonical cover edges, adjacency and a topo order
// from the ancestor sets.
void GenericPoset::finalize() {
    const int n = size();
    if (labels_.empty())
        labels_.assign(n, std::string());
    if (static_cast<int>(labels_.size()) != n)
        throw Error("label count mismatch");

    descendants_.assign(n, Bitset(n));
    for (int v = 0; v < n; ++v) {
        Bitset::size_type a = ancestors_[v].find_first();
        for (; a != Bitset::npos; a = ancestors_[v].find_next(a))
            descendants_[a].set(v);
    }

    // (a, b) is a cover edge iff a < b with nothing strictly between:
    // strict descendants of a and strict ancestors of b are disjoint.
    cover_edges_.clear();
    parents_.assign(n, {});
    children_.assign(n, {});
    std::vector<int> indeg(n, 0);
    for (int b = 0; b < n; ++b) {
        Bitset::size_type a = ancestors_[b].find_first();
        for (; a != Bitset::npos; a = ancestors_[b].find_next(a)) {
            if (static_cast<int>(a) == b)
                continue;
            Bitset between = descendants_[a] & ancestors_[b];
            if (between.count() == 2) { // only a and b themselves
                cover_edges_.emplace_back(static_cast<int>(a), b);
                parents_[b].push_back(static_cast<int>(a));
                children_[a].push_back(b);
                ++indeg[b];
            }
        }
    }
    std::sort(cover_edges_.begin(), cover_edges_.end());

    topo_order_.clear();
    topo_order_.reserve(n);
    std::deque<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0)
            ready.push_back(v);
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        topo_order_.push_back(v);
        for (int w : children_[v])
            if (--indeg[w] == 0)
                ready.push_back(w);
    }
}

GenericPoset GenericPoset::restrict_to(const Bitset& members, std::vector<int>* index_map) const {
    std::vector<int> keep;
    for (Bitset::size_type v = members.find_first(); v != Bitset::npos; v = members.find_next(v))
        keep.push_back(static_cast<int>(v));
    const int m = static_cast<int>(keep.size());

    std::vector<Bitset> anc(m, Bitset(m));
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) {
        labels[i] = labels_[keep[i]];
        for (int j = 0; j < m; ++j)
            if (ancestors_[keep[i]].test(keep[j]))
                anc[i].set(j);
    }
    if (index_map)
        *index_map = keep;
    return from_ancestor_sets(std::move(anc), std::move(labels));
}

int GenericPoset::width() const {
    if (!width_)
        width_ = static_cast<int>(chain_partition(*this).size());
    return *width_;
}

GenericPoset transitive_reduction(const GenericPoset& poset) {
    GenericPoset copy = poset;
    copy.finalize();
    return copy;
}

// ---------------------------------------------------------------------------
// Taxonomy

Taxonomy build_taxonomy(const std::vector<int>& items, const std::vector<std::pair<int, int>>& edges,
                        const std::vector<std::string>& labels) {
    Taxonomy tax;
    tax.ids_ = items;
    std::vector<std::size_t> order(items.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return items[a] < items[b]; });

    std::vector<int> sorted_ids;
    std::vector<std::string> sorted_labels;
    std::vector<std::string> poset_labels;
    sorted_ids.reserve(items.size());
    for (std::size_t pos : order) {
        sorted_ids.push_back(items[pos]);
        sorted_labels.push_back(pos < labels.size() && !labels[pos].empty()
                                    ? labels[pos]
                                    : "item" + std::to_string(items[pos]));
        poset_labels.push_back(std::to_string(items[pos]));
    }
    for (std::size_t i = 0; i + 1 < sorted_ids.size(); ++i)
        if (sorted_ids[i] == sorted_ids[i + 1])
            throw Error("duplicate item id " + std::to_string(sorted_ids[i]));

    tax.ids_ = std::move(sorted_ids);
    tax.labels_ = std::move(sorted_labels);
    for (std::size_t i = 0; i < tax.ids_.size(); ++i)
        tax.index_[tax.ids_[i]] = static_cast<int>(i);

    std::vector<std::pair<int, int>> dense_edges;
    dense_edges.reserve(edges.size());
    for (const auto& [p, c] : edges) {
        auto pi = tax.index_.find(p);
        auto ci = tax.index_.find(c);
        if (pi == tax.index_.end())
            throw UnknownItem("edge references unknown item " + std::to_string(p));
        if (ci == tax.index_.end())
            throw UnknownItem("edge references unknown item " + std::to_string(c));
        dense_edges.emplace_back(pi->second, ci->second);
    }
    tax.poset_ = GenericPoset::from_edges(tax.item_count(), dense_edges, std::move(poset_labels));
    return tax;
}

int Taxonomy::index_of(int id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw UnknownItem("unknown item id " + std::to_string(id));
    return it->second;
}

std::vector<std::pair<int, int>> Taxonomy::cover_edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(poset_.cover_edges().size());
    for (const auto& [a, b] : poset_.cover_edges())
        out.emplace_back(ids_[a], ids_[b]);
    return out;
}

Bitset Taxonomy::to_index_set(const std::vector<int>& ids) const {
    Bitset set(item_count());
    for (int id : ids)
        set.set(index_of(id));
    return set;
}

std::vector<int> Taxonomy::to_id_list(const Bitset& indices) const {
    std::vector<int> out;
    for (Bitset::size_type v = indices.find_first(); v != Bitset::npos; v = indices.find_next(v))
        out.push_back(ids_[v]);
    return out;
}

// ---------------------------------------------------------------------------
// Item-level operations

std::pair<std::vector<int>, std::vector<int>> reachability(const Taxonomy& tax, int item) {
    int v = tax.index_of(item);
    return {tax.to_id_list(tax.poset().ancestors(v)), tax.to_id_list(tax.poset().descendants(v))};
}

Antichain normalize_antichain(const Taxonomy& tax, const std::vector<int>& raw) {
    Bitset members = tax.to_index_set(raw);
    Bitset maximal = members;
    for (Bitset::size_type v = members.find_first(); v != Bitset::npos; v = members.find_next(v)) {
        Bitset above = tax.poset().descendants(v) & members;
        above.reset(v);
        if (above.any())
            maximal.reset(v);
    }
    return Antichain(tax.to_id_list(maximal));
}

OrderIdeal ideal_of(const Taxonomy& tax, const Antichain& a) {
    Bitset closure(tax.item_count());
    for (int id : a.items)
        closure |= tax.poset().ancestors(tax.index_of(id));
    return OrderIdeal(tax.to_id_list(closure));
}

Antichain antichain_of(const Taxonomy& tax, const OrderIdeal& o) {
    return normalize_antichain(tax, o.items);
}

bool itemset_leq(const Taxonomy& tax, const Antichain& a, const Antichain& b) {
    for (int i : a.items) {
        bool implied = false;
        for (int j : b.items)
            if (tax.item_leq(i, j)) {
                implied = true;
                break;
            }
        if (!implied)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Antichain enumeration

namespace {

// Shared recursion: visits antichains in lexicographic order of their sorted
// index sequence. The visitor gets the current antichain; returning false
// stops the walk.
class AntichainWalker {
public:
    AntichainWalker(const GenericPoset& poset, Bitset start)
        : poset_(&poset), start_(std::move(start)) {
        const int n = poset.size();
        incomparable_.reserve(n);
        for (int v = 0; v < n; ++v) {
            Bitset inc = ~(poset.ancestors(v) | poset.descendants(v));
            incomparable_.push_back(std::move(inc));
        }
    }

    template <typename Visit>
    void run(Visit&& visit) {
        current_.clear();
        if (!visit(current_))
            return;
        descend(start_, visit);
    }

private:
    template <typename Visit>
    bool descend(const Bitset& allowed, Visit&& visit) {
        Bitset::size_type first =
            current_.empty() ? allowed.find_first() : allowed.find_next(current_.back());
        for (Bitset::size_type v = first; v != Bitset::npos; v = allowed.find_next(v)) {
            current_.push_back(static_cast<int>(v));
            if (!visit(current_))
                return false;
            Bitset next = allowed & incomparable_[v];
            if (!descend(next, visit))
                return false;
            current_.pop_back();
        }
        return true;
    }

    const GenericPoset* poset_;
    Bitset start_;
    std::vector<Bitset> incomparable_;
    std::vector<int> current_;
};

} // namespace

std::vector<std::vector<int>> enumerate_antichains(const GenericPoset& poset, std::uint64_t cap) {
    std::vector<std::vector<int>> out;
    Bitset all(poset.size());
    all.set();
    AntichainWalker walker(poset, std::move(all));
    bool overflow = false;
    walker.run([&](const std::vector<int>& a) {
        if (static_cast<std::uint64_t>(out.size()) >= cap) {
            overflow = true;
            return false;
        }
        out.push_back(a);
        return true;
    });
    if (overflow)
        throw CapExceeded("more than " + std::to_string(cap) + " antichains");
    return out;
}

std::uint64_t count_antichains_within(const GenericPoset& poset, const Bitset& members,
                                      std::uint64_t cap) {
    std::uint64_t count = 0;
    AntichainWalker walker(poset, members);
    bool overflow = false;
    walker.run([&](const std::vector<int>&) {
        if (count >= cap) {
            overflow = true;
            return false;
        }
        ++count;
        return true;
    });
    if (overflow)
        throw CapExceeded("more than " + std::to_string(cap) + " antichains");
    return count;
}

std::uint64_t count_antichains(const GenericPoset& poset, std::uint64_t cap) {
    Bitset all(poset.size());
    all.set();
    return count_antichains_within(poset, all, cap);
}

// ---------------------------------------------------------------------------
// Chain partition (Dilworth via maximum bipartite matching)

namespace {

// Hopcroft-Karp over the bipartite graph with one left and one right copy
// per element and an edge (u, v) for every strict comparability u < v.
class HopcroftKarp {
public:
    static constexpr int kFree = -1;

    explicit HopcroftKarp(const GenericPoset& poset) : n_(poset.size()) {
        adj_.resize(n_);
        for (int v = 0; v < n_; ++v) {
            const Bitset& anc = poset.ancestors(v);
            for (Bitset::size_type u = anc.find_first(); u != Bitset::npos; u = anc.find_next(u))
                if (static_cast<int>(u) != v)
                    adj_[u].push_back(v);
        }
        match_left_.assign(n_, kFree);
        match_right_.assign(n_, kFree);
    }

    void solve() {
        while (bfs()) {
            for (int u = 0; u < n_; ++u)
                if (match_left_[u] == kFree)
                    dfs(u);
        }
    }

    const std::vector<int>& match_left() const { return match_left_; }
    const std::vector<int>& match_right() const { return match_right_; }

private:
    static constexpr int kInf = std::numeric_limits<int>::max();

    bool bfs() {
        std::queue<int> q;
        dist_.assign(n_, kInf);
        for (int u = 0; u < n_; ++u)
            if (match_left_[u] == kFree) {
                dist_[u] = 0;
                q.push(u);
            }
        bool found = false;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj_[u]) {
                int w = match_right_[v];
                if (w == kFree) {
                    found = true;
                } else if (dist_[w] == kInf) {
                    dist_[w] = dist_[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }

    bool dfs(int u) {
        for (int v : adj_[u]) {
            int w = match_right_[v];
            if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
                match_left_[u] = v;
                match_right_[v] = u;
                return true;
            }
        }
        dist_[u] = kInf;
        return false;
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_left_;
    std::vector<int> match_right_;
    std::vector<int> dist_;
};

} // namespace

std::vector<std::vector<int>> chain_partition(const GenericPoset& poset) {
    HopcroftKarp hk(poset);
    hk.solve();

    // A matched edge (u, v) links u to its chain successor v. Chain heads are
    // the elements with no matched predecessor.
    std::vector<std::vector<int>> chains;
    for (int v = 0; v < poset.size(); ++v) {
        if (hk.match_right()[v] != HopcroftKarp::kFree)
            continue;
        std::vector<int> chain;
        for (int u = v; u != HopcroftKarp::kFree; u = hk.match_left()[u])
            chain.push_back(u);
        chains.push_back(std::move(chain));
    }
    return chains;
}

} // namespace crowdmine

#pragma once

// Test-only brute-force oracles. Everything here recomputes results from
// first principles (subset enumeration, pairwise definition checks) and must
// stay independent of the library's own algorithms.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "crowdmine/itemset_taxonomy.hpp"
#include "crowdmine/poset_core.hpp"

namespace crowdmine::testing {

// All antichains of a poset by checking every subset; n must be <= 20.
inline std::vector<std::vector<int>> brute_antichains(const GenericPoset& poset) {
    const int n = poset.size();
    std::vector<std::vector<int>> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> subset;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v))
                subset.push_back(v);
        bool antichain = true;
        for (std::size_t i = 0; i < subset.size() && antichain; ++i)
            for (std::size_t j = i + 1; j < subset.size(); ++j)
                if (poset.leq(subset[i], subset[j]) || poset.leq(subset[j], subset[i])) {
                    antichain = false;
                    break;
                }
        if (antichain)
            out.push_back(std::move(subset));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// The itemset order over explicit antichains (external ids), straight from
// the definition: every item of a implied by some item of b.
inline bool brute_itemset_leq(const Taxonomy& tax, const std::vector<int>& a,
                              const std::vector<int>& b) {
    for (int i : a) {
        bool implied = false;
        for (int j : b)
            if (tax.item_leq(i, j)) {
                implied = true;
                break;
            }
        if (!implied)
            return false;
    }
    return true;
}

// Itemset-taxonomy nodes and cover pairs computed by brute force: enumerate
// antichains by subsets, order them pairwise, keep covers (no strictly
// intermediate third node). Assumes at most 64 nodes.
struct BruteItemsetTaxonomy {
    std::vector<std::vector<int>> nodes; // item ids, sorted; index = node
    std::vector<std::pair<int, int>> covers;
    std::vector<std::uint64_t> strictly_above; // per node, as bitmask
};

inline BruteItemsetTaxonomy brute_itemset_taxonomy(const Taxonomy& tax) {
    BruteItemsetTaxonomy out;
    for (const std::vector<int>& elements : brute_antichains(tax.poset())) {
        std::vector<int> ids;
        for (int e : elements)
            ids.push_back(tax.id_of(e));
        std::sort(ids.begin(), ids.end());
        out.nodes.push_back(std::move(ids));
    }
    std::sort(out.nodes.begin(), out.nodes.end());

    const int n = static_cast<int>(out.nodes.size());
    out.strictly_above.assign(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && brute_itemset_leq(tax, out.nodes[a], out.nodes[b]))
                out.strictly_above[a] |= std::uint64_t(1) << b;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!(out.strictly_above[a] & (std::uint64_t(1) << b)))
                continue;
            // between(a, b): strictly above a and strictly below b
            std::uint64_t between = 0;
            for (int c = 0; c < n; ++c)
                if ((out.strictly_above[a] >> c & 1) && (out.strictly_above[c] >> b & 1))
                    between |= std::uint64_t(1) << c;
            if (between == 0)
                out.covers.emplace_back(a, b);
        }
    return out;
}

// Every DAG taxonomy on n items 0..n-1, as subsets of the forward pairs
// (i, j) with i < j. Fixing the orientation loses no poset up to
// isomorphism because every finite poset admits a topological labeling.
inline std::vector<Taxonomy> all_taxonomies(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);
    std::vector<int> items(n);
    for (int i = 0; i < n; ++i)
        items[i] = i;

    std::vector<Taxonomy> out;
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t p = 0; p < pairs.size(); ++p)
            if (mask & (1u << p))
                edges.push_back(pairs[p]);
        out.push_back(build_taxonomy(items, edges));
    }
    return out;
}

inline std::vector<Taxonomy> all_taxonomies_up_to(int max_n) {
    std::vector<Taxonomy> out;
    for (int n = 0; n <= max_n; ++n) {
        std::vector<Taxonomy> batch = all_taxonomies(n);
        out.insert(out.end(), std::make_move_iterator(batch.begin()),
                   std::make_move_iterator(batch.end()));
    }
    return out;
}

// Borders of a truth assignment over a poset, from the definitions.
inline std::pair<std::vector<int>, std::vector<int>>
brute_borders(const GenericPoset& poset, const std::vector<bool>& truth) {
    std::vector<int> mfis, miis;
    for (int v = 0; v < poset.size(); ++v) {
        if (truth[v]) {
            bool maximal = true;
            for (int w = 0; w < poset.size(); ++w)
                if (w != v && poset.leq(v, w) && truth[w]) {
                    maximal = false;
                    break;
                }
            if (maximal)
                mfis.push_back(v);
        } else {
            bool minimal = true;
            for (int w = 0; w < poset.size(); ++w)
                if (w != v && poset.leq(w, v) && !truth[w]) {
                    minimal = false;
                    break;
                }
            if (minimal)
                miis.push_back(v);
        }
    }
    return {std::move(mfis), std::move(miis)};
}

// Random poset on up to max_n elements via random forward edges.
inline GenericPoset random_poset(std::mt19937_64& rng, int max_n, double edge_prob = 0.35) {
    int n = static_cast<int>(rng() % (max_n + 1));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < edge_prob)
                edges.emplace_back(i, j);
    return GenericPoset::from_edges(n, edges);
}

inline std::vector<Antichain> to_antichains(const std::vector<std::vector<int>>& raw) {
    std::vector<Antichain> out;
    out.reserve(raw.size());
    for (const auto& items : raw)
        out.emplace_back(items);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace crowdmine::testing

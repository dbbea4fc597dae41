#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crowdmine/errors.hpp"

namespace crowdmine {

using Bitset = boost::dynamic_bitset<>;

// Default guardrail for antichain enumeration/counting (see CROWDMINE_ANTICHAIN_CAP).
inline constexpr std::uint64_t kDefaultAntichainCap = std::uint64_t(1) << 20;

// An itemset in canonical form: pairwise incomparable item ids, sorted
// ascending, duplicate-free. The ids are the taxonomy's external ids.
struct Antichain {
    std::vector<int> items;

    Antichain() = default;
    explicit Antichain(std::vector<int> ids) : items(std::move(ids)) {}

    bool empty() const { return items.empty(); }
    std::size_t size() const { return items.size(); }
    std::string str() const;

    friend bool operator==(const Antichain& a, const Antichain& b) { return a.items == b.items; }
    friend bool operator<(const Antichain& a, const Antichain& b) { return a.items < b.items; }
};

// A set of item ids closed under taking ancestors; sorted ascending.
struct OrderIdeal {
    std::vector<int> items;

    OrderIdeal() = default;
    explicit OrderIdeal(std::vector<int> ids) : items(std::move(ids)) {}

    bool empty() const { return items.empty(); }
    std::size_t size() const { return items.size(); }

    friend bool operator==(const OrderIdeal& a, const OrderIdeal& b) { return a.items == b.items; }
};

// Explicit finite poset over elements 0..size()-1. The order is kept as
// per-element ancestor/descendant bitsets (reflexive) plus the transitively
// reduced cover-edge list; both directions are precomputed since mining
// walks them constantly. Immutable after construction.
class GenericPoset {
public:
    GenericPoset() = default;

    // Builds from generating edges (parent, child). Edges may contain
    // redundant (transitively implied) pairs; the stored cover edges are the
    // canonical transitive reduction. Throws CycleDetected on a cycle.
    static GenericPoset from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                   std::vector<std::string> labels = {});

    // Builds from a full order relation given as reflexive ancestor bitsets.
    static GenericPoset from_ancestor_sets(std::vector<Bitset> ancestors,
                                           std::vector<std::string> labels = {});

    int size() const { return static_cast<int>(ancestors_.size()); }
    bool leq(int a, int b) const { return ancestors_[b].test(a); }

    // Reflexive ancestor / descendant sets.
    const Bitset& ancestors(int v) const { return ancestors_[v]; }
    const Bitset& descendants(int v) const { return descendants_[v]; }

    const std::vector<std::pair<int, int>>& cover_edges() const { return cover_edges_; }
    const std::vector<int>& parents(int v) const { return parents_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }

    // A total order of elements compatible with the poset order.
    const std::vector<int>& topo_order() const { return topo_order_; }

    const std::string& label(int v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Restriction of the order to a subset of elements (labels preserved,
    // elements renumbered in increasing id order; mapping returned).
    GenericPoset restrict_to(const Bitset& members, std::vector<int>* index_map = nullptr) const;

    // Size of the largest antichain, computed via minimal chain partition
    // and cached.
    int width() const;

private:
    friend GenericPoset transitive_reduction(const GenericPoset& poset);
    friend std::vector<std::vector<int>> chain_partition(const GenericPoset& poset);

    void finalize();

    std::vector<Bitset> ancestors_;
    std::vector<Bitset> descendants_;
    std::vector<std::pair<int, int>> cover_edges_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
    std::vector<int> topo_order_;
    std::vector<std::string> labels_;
    mutable std::optional<int> width_;
};

// The item taxonomy: a poset over externally-identified items. Item ids are
// arbitrary distinct non-negative integers; internally they map to dense
// indices in ascending id order so that bitset positions, antichain sorting
// and enumeration order all coincide.
class Taxonomy {
public:
    Taxonomy() = default;

    int item_count() const { return static_cast<int>(ids_.size()); }
    const std::vector<int>& item_ids() const { return ids_; }
    const std::string& label(int id) const { return labels_[index_of(id)]; }
    bool has_item(int id) const { return index_.count(id) != 0; }

    int index_of(int id) const;
    int id_of(int index) const { return ids_[index]; }

    const GenericPoset& poset() const { return poset_; }

    // Cover edges in external ids.
    std::vector<std::pair<int, int>> cover_edges() const;

    // item_leq(a, b): item b is a more specific concept than (or equal to) a.
    bool item_leq(int a, int b) const { return poset_.leq(index_of(a), index_of(b)); }

    Bitset to_index_set(const std::vector<int>& ids) const;
    std::vector<int> to_id_list(const Bitset& indices) const;

private:
    friend Taxonomy build_taxonomy(const std::vector<int>& items,
                                   const std::vector<std::pair<int, int>>& edges,
                                   const std::vector<std::string>& labels);

    std::vector<int> ids_;     // ascending
    std::vector<std::string> labels_;
    std::unordered_map<int, int> index_;
    GenericPoset poset_;       // over dense indices
};

// Validates and builds a taxonomy from items and generating DAG edges
// (parent, child). Redundant edges are dropped by transitive reduction.
Taxonomy build_taxonomy(const std::vector<int>& items,
                        const std::vector<std::pair<int, int>>& edges,
                        const std::vector<std::string>& labels = {});

// Rebuilds the cover edges from the (unchanged) order relation.
GenericPoset transitive_reduction(const GenericPoset& poset);

// Ancestors and descendants of an item, both including the item itself.
std::pair<std::vector<int>, std::vector<int>> reachability(const Taxonomy& tax, int item);

// Maximal elements of an arbitrary item set: the canonical antichain with
// the same order ideal.
Antichain normalize_antichain(const Taxonomy& tax, const std::vector<int>& raw);

OrderIdeal ideal_of(const Taxonomy& tax, const Antichain& a);
Antichain antichain_of(const Taxonomy& tax, const OrderIdeal& o);

// Itemset order: every item of a is implied by some item of b; equivalently
// ideal containment.
bool itemset_leq(const Taxonomy& tax, const Antichain& a, const Antichain& b);

// All pairwise-incomparable element subsets (including {}), as sorted index
// vectors in lexicographic order. Throws CapExceeded past cap.
std::vector<std::vector<int>> enumerate_antichains(const GenericPoset& poset,
                                                   std::uint64_t cap = kDefaultAntichainCap);

// Count without materializing; optionally restricted to a subset of elements.
std::uint64_t count_antichains(const GenericPoset& poset,
                               std::uint64_t cap = kDefaultAntichainCap);
std::uint64_t count_antichains_within(const GenericPoset& poset, const Bitset& members,
                                      std::uint64_t cap = kDefaultAntichainCap);

// Partition into the minimum number of chains (= width), each chain listed
// bottom-up, via maximum bipartite matching on the comparability pairs.
std::vector<std::vector<int>> chain_partition(const GenericPoset& poset);

} // namespace crowdmine

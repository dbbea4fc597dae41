#pragma once

#include <cstdint>
#include <memory>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "crowdmine/poset_core.hpp"

namespace crowdmine {

// How a cover edge (A, B) of an antichain poset transforms A into B:
// Addition appends one fresh item, Specialization replaces at least one
// member by a child of it.
enum class EdgeKind { Addition, Specialization };

const char* edge_kind_name(EdgeKind kind);

struct IntVectorHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// One node of an antichain poset: the antichain itself (sorted base-element
// indices) and its order ideal as a bitset over the base poset.
struct AntichainNode {
    std::vector<int> elements;
    Bitset ideal;
};

// The poset of all antichains of a base poset, ordered by containment of
// their order ideals. Built breadth-first from the empty antichain, so node
// ids are level-ordered (node 0 is the root {}) and form a topological
// order. Each cover edge carries its kind.
class AntichainPoset {
public:
    AntichainPoset() = default;

    // Materializes the full antichain poset of base. Throws CapExceeded when
    // more than node_cap nodes would be created.
    static AntichainPoset build(const GenericPoset& base, std::uint64_t node_cap);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const AntichainNode& node(int id) const { return nodes_[id]; }
    const std::vector<AntichainNode>& nodes() const { return nodes_; }

    // Node id of a sorted element-index antichain, or -1.
    int find(const std::vector<int>& elements) const;

    const std::vector<std::tuple<int, int, EdgeKind>>& cover_edges() const { return edges_; }
    EdgeKind edge_kind(int a, int b) const;

    // The order among nodes as a poset (labels are antichain renderings).
    const GenericPoset& poset() const { return poset_; }

private:
    std::vector<AntichainNode> nodes_;
    std::unordered_map<std::vector<int>, int, IntVectorHash> index_;
    std::vector<std::tuple<int, int, EdgeKind>> edges_;
    GenericPoset poset_;
};

// The itemset taxonomy of an item taxonomy: every node is an itemset in
// canonical antichain form, ordered by semantic implication.
class ItemsetTaxonomy {
public:
    ItemsetTaxonomy() = default;

    const Taxonomy& base() const { return *base_; }
    std::shared_ptr<const Taxonomy> base_ptr() const { return base_; }

    int node_count() const { return core_.node_count(); }
    const AntichainPoset& core() const { return core_; }
    const GenericPoset& poset() const { return core_.poset(); }

    // Itemsets in external item ids, indexed by node id.
    const std::vector<Antichain>& itemsets() const { return itemsets_; }
    const Antichain& itemset(int node) const { return itemsets_[node]; }
    OrderIdeal ideal(int node) const;
    const Bitset& ideal_bits(int node) const { return core_.node(node).ideal; }

    // Node id for an itemset given in external ids; throws UnknownItem for
    // foreign ids and NotAnAntichain for non-canonical sets.
    int node_of(const Antichain& a) const;

private:
    friend ItemsetTaxonomy construct_itemset_taxonomy(const Taxonomy& tax, std::uint64_t node_cap);

    std::shared_ptr<const Taxonomy> base_;
    AntichainPoset core_;
    std::vector<Antichain> itemsets_;
};

// Materializes the itemset taxonomy by breadth-first closure from the empty
// itemset. Throws CapExceeded past node_cap.
ItemsetTaxonomy construct_itemset_taxonomy(const Taxonomy& tax,
                                           std::uint64_t node_cap = kDefaultAntichainCap);

// Kind of the cover edge (a, b); throws NotACoverEdge if (a, b) is no cover.
EdgeKind classify_covering_edge(const ItemsetTaxonomy& it, int a, int b);

// The restriction of the itemset taxonomy to itemsets of at most k items.
// Unlike the full construction this enumerates subsets directly, so it stays
// polynomial for fixed k even when the full taxonomy would not fit.
class KItemsetTaxonomy {
public:
    KItemsetTaxonomy() = default;

    const Taxonomy& base() const { return *base_; }
    int k() const { return k_; }
    int node_count() const { return static_cast<int>(itemsets_.size()); }
    const GenericPoset& poset() const { return poset_; }
    const std::vector<Antichain>& itemsets() const { return itemsets_; }
    const Antichain& itemset(int node) const { return itemsets_[node]; }
    int node_of(const Antichain& a) const;

private:
    friend KItemsetTaxonomy construct_k_itemset_taxonomy(const Taxonomy& tax, int k);

    std::shared_ptr<const Taxonomy> base_;
    int k_ = 0;
    std::vector<Antichain> itemsets_;
    std::unordered_map<std::vector<int>, int, IntVectorHash> index_;
    GenericPoset poset_;
};

KItemsetTaxonomy construct_k_itemset_taxonomy(const Taxonomy& tax, int k);

// The space of all possible mining outcomes: the antichain poset of the
// itemset taxonomy itself. Node labels render the antichain of itemsets.
GenericPoset solution_taxonomy(const Taxonomy& tax, std::uint64_t node_cap = kDefaultAntichainCap);

// Antichains of the itemset taxonomy correspond one-to-one to decreasing
// monotone predicates: an itemset is true iff it is implied by some member.
// Predicates are represented by their true-set over node ids.
Bitset predicate_from_mfis(const ItemsetTaxonomy& it, const std::vector<Antichain>& mfis);
std::vector<Antichain> mfis_from_predicate(const ItemsetTaxonomy& it, const Bitset& truth);

// Maximum predicate size for which mfis_from_predicate verifies
// monotonicity exhaustively before trusting its input.
inline constexpr int kMonotonicityCheckLimit = 4096;

} // namespace crowdmine

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "crowdmine/itemset_taxonomy.hpp"
#include "crowdmine/oracle.hpp"
#include "crowdmine/poset_core.hpp"

namespace crowdmine {

enum class Mark : unsigned char { Unclassified, Frequent, Infrequent };

// Tri-state marking over a poset's nodes. Frequent marks close upward toward
// ancestors and infrequent marks downward toward descendants; a node can
// never hold both, which is exactly the monotonicity guarantee an oracle
// must honor.
class ClassificationState {
public:
    explicit ClassificationState(const GenericPoset& poset)
        : poset_(&poset), frequent_(poset.size()), infrequent_(poset.size()) {}

    const GenericPoset& poset() const { return *poset_; }

    Mark mark(int node) const {
        if (frequent_.test(node))
            return Mark::Frequent;
        if (infrequent_.test(node))
            return Mark::Infrequent;
        return Mark::Unclassified;
    }

    std::size_t frequent_count() const { return frequent_.count(); }
    std::size_t infrequent_count() const { return infrequent_.count(); }
    std::size_t classified_count() const { return frequent_count() + infrequent_count(); }
    std::size_t unclassified_count() const { return frequent_.size() - classified_count(); }
    bool complete() const { return unclassified_count() == 0; }

    const Bitset& frequent_set() const { return frequent_; }
    const Bitset& infrequent_set() const { return infrequent_; }
    Bitset unclassified_set() const { return ~(frequent_ | infrequent_); }

    // Marks the node and all its ancestors frequent. Throws
    // NonMonotoneOracle when that contradicts an infrequent mark.
    void mark_frequent(int node);

    // Marks the node and all its descendants infrequent.
    void mark_infrequent(int node);

private:
    const GenericPoset* poset_;
    Bitset frequent_;
    Bitset infrequent_;
};

// Borders of a fully classified state, as node ids: frequent nodes without
// frequent strict descendants, and infrequent nodes without infrequent
// strict ancestors. Throws IncompleteState while anything is unclassified.
std::pair<std::vector<int>, std::vector<int>> derive_borders(const ClassificationState& state);

// A poset whose nodes carry itemsets: the mining surface shared by the full
// and the size-restricted itemset taxonomies.
struct ItemsetPosetView {
    const GenericPoset* poset = nullptr;
    const std::vector<Antichain>* itemsets = nullptr;
};

inline ItemsetPosetView view_of(const ItemsetTaxonomy& it) {
    return ItemsetPosetView{&it.poset(), &it.itemsets()};
}
inline ItemsetPosetView view_of(const KItemsetTaxonomy& kt) {
    return ItemsetPosetView{&kt.poset(), &kt.itemsets()};
}

struct MiningResult {
    std::vector<Antichain> mfis;
    std::vector<Antichain> miis;
    std::size_t crowd_queries = 0;
    std::vector<TranscriptEntry> transcript;
    bool completed = false;
    std::string strategy;
    std::size_t nodes_total = 0;
    std::size_t classified_frequent = 0;
    std::size_t classified_infrequent = 0;
};

// Node of the unclassified subposet whose query eliminates the most
// candidate solutions in the worst case: maximizes min(s, t) where s counts
// the unclassified-subposet antichains containing the node or one of its
// descendants and t the remaining ones. Ties go to the smallest node id.
// Throws CapExceeded if the antichain counting cap is hit.
int best_split_element(const GenericPoset& poset, const ClassificationState& state,
                       std::uint64_t antichain_cap = kDefaultAntichainCap);

// Node maximizing the worst-case number of itemsets its answer classifies:
// min(unclassified ancestors, unclassified descendants), both including the
// node itself. Ties go to the smallest node id.
int greedy_best_split_itemset(const GenericPoset& poset, const ClassificationState& state);

enum class Alg1Strategy { Any, Minimal, Maximal, Dual };

const char* strategy_name(Alg1Strategy strategy);

// The border-walking miner: picks an unclassified itemset, asks it, then
// walks toward a maximal frequent (or minimal infrequent) itemset by single
// item additions (removals) on the order-ideal representation. Each round
// discovers exactly one new border member. Requires the full itemset
// taxonomy since the walk moves by one item at a time.
MiningResult mine_alg1(const ItemsetTaxonomy& it, InstrumentedOracle& oracle,
                       Alg1Strategy strategy);

// Queries every node once; the baseline every other miner is checked against.
MiningResult mine_exhaustive(const ItemsetPosetView& view, InstrumentedOracle& oracle);

// Repeatedly queries the best-split element until everything is classified.
MiningResult mine_halving(const ItemsetPosetView& view, InstrumentedOracle& oracle,
                          std::uint64_t antichain_cap = kDefaultAntichainCap);

// Splits the poset into width-many chains and binary-searches the
// frequent/infrequent cut on each, reusing marks propagated across chains.
MiningResult mine_chain_partition(const ItemsetPosetView& view, InstrumentedOracle& oracle);

// Anytime miner: spends at most budget queries on greedy best-split
// itemsets; the result reports whether classification finished.
MiningResult mine_greedy_anytime(const ItemsetPosetView& view, InstrumentedOracle& oracle,
                                 std::uint64_t budget);

} // namespace crowdmine

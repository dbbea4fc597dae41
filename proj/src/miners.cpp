#include "crowdmine/miners.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace crowdmine {

void ClassificationState::mark_frequent(int node) {
    const Bitset& closure = poset_->ancestors(node);
    if ((closure & infrequent_).any())
        throw NonMonotoneOracle("frequent mark on node " + std::to_string(node) +
                                " contradicts an infrequent ancestor");
    frequent_ |= closure;
}

void ClassificationState::mark_infrequent(int node) {
    const Bitset& closure = poset_->descendants(node);
    if ((closure & frequent_).any())
        throw NonMonotoneOracle("infrequent mark on node " + std::to_string(node) +
                                " contradicts a frequent descendant");
    infrequent_ |= closure;
}

std::pair<std::vector<int>, std::vector<int>> derive_borders(const ClassificationState& state) {
    if (!state.complete())
        throw IncompleteState(std::to_string(state.unclassified_count()) +
                              " nodes are still unclassified");
    const GenericPoset& poset = state.poset();
    std::vector<int> mfis, miis;
    for (int v = 0; v < poset.size(); ++v) {
        if (state.mark(v) == Mark::Frequent) {
            Bitset below = poset.descendants(v) & state.frequent_set();
            below.reset(v);
            if (below.none())
                mfis.push_back(v);
        } else {
            Bitset above = poset.ancestors(v) & state.infrequent_set();
            above.reset(v);
            if (above.none())
                miis.push_back(v);
        }
    }
    return {std::move(mfis), std::move(miis)};
}

// ---------------------------------------------------------------------------
// Split selection

int best_split_element(const GenericPoset& poset, const ClassificationState& state,
                       std::uint64_t antichain_cap) {
    Bitset unclassified = state.unclassified_set();
    if (unclassified.none())
        throw Error("best_split_element requires an unclassified node");

    const std::uint64_t total = count_antichains_within(poset, unclassified, antichain_cap);
    int best = -1;
    std::uint64_t best_score = 0;
    for (Bitset::size_type v = unclassified.find_first(); v != Bitset::npos;
         v = unclassified.find_next(v)) {
        Bitset surviving = unclassified & ~poset.descendants(v);
        std::uint64_t t = count_antichains_within(poset, surviving, antichain_cap);
        std::uint64_t s = total - t; // solutions using v or a descendant
        std::uint64_t score = std::min(s, t);
        if (best < 0 || score > best_score) {
            best = static_cast<int>(v);
            best_score = score;
        }
    }
    return best;
}

int greedy_best_split_itemset(const GenericPoset& poset, const ClassificationState& state) {
    Bitset unclassified = state.unclassified_set();
    if (unclassified.none())
        throw Error("greedy_best_split_itemset requires an unclassified node");

    int best = -1;
    std::size_t best_score = 0;
    for (Bitset::size_type v = unclassified.find_first(); v != Bitset::npos;
         v = unclassified.find_next(v)) {
        std::size_t up = (poset.ancestors(v) & unclassified).count();
        std::size_t down = (poset.descendants(v) & unclassified).count();
        std::size_t score = std::min(up, down);
        if (best < 0 || score > best_score) {
            best = static_cast<int>(v);
            best_score = score;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Shared miner plumbing

namespace {

// Consults the propagated marks before spending a crowd query; every real
// answer is folded back into the state immediately, so marks stay exactly
// the monotone closure of the answers received.
bool ask(const ItemsetPosetView& view, ClassificationState& state, InstrumentedOracle& oracle,
         int node) {
    switch (state.mark(node)) {
    case Mark::Frequent:
        return true;
    case Mark::Infrequent:
        return false;
    case Mark::Unclassified:
        break;
    }
    bool answer = oracle.query((*view.itemsets)[node]);
    if (answer)
        state.mark_frequent(node);
    else
        state.mark_infrequent(node);
    return answer;
}

MiningResult finish(const ItemsetPosetView& view, const ClassificationState& state,
                    const InstrumentedOracle& oracle, const char* strategy, bool completed) {
    MiningResult result;
    result.strategy = strategy;
    result.completed = completed;
    result.crowd_queries = oracle.query_count();
    result.transcript = oracle.transcript();
    result.nodes_total = static_cast<std::size_t>(view.poset->size());
    result.classified_frequent = state.frequent_count();
    result.classified_infrequent = state.infrequent_count();
    if (completed) {
        auto [mfi_nodes, mii_nodes] = derive_borders(state);
        for (int v : mfi_nodes)
            result.mfis.push_back((*view.itemsets)[v]);
        for (int v : mii_nodes)
            result.miis.push_back((*view.itemsets)[v]);
        std::sort(result.mfis.begin(), result.mfis.end());
        std::sort(result.miis.begin(), result.miis.end());
    }
    return result;
}

int lowest_unclassified(const ClassificationState& state) {
    Bitset u = state.unclassified_set();
    Bitset::size_type v = u.find_first();
    return v == Bitset::npos ? -1 : static_cast<int>(v);
}

// Node ids are topologically ordered in every poset built here, so the
// lowest unclassified id is a minimal unclassified element and the highest
// a maximal one.
int highest_unclassified(const ClassificationState& state) {
    Bitset u = state.unclassified_set();
    int best = -1;
    for (Bitset::size_type v = u.find_first(); v != Bitset::npos; v = u.find_next(v))
        best = static_cast<int>(v);
    return best;
}

} // namespace

// ---------------------------------------------------------------------------
// Border-walk miner

const char* strategy_name(Alg1Strategy strategy) {
    switch (strategy) {
    case Alg1Strategy::Any:
        return "alg1-any";
    case Alg1Strategy::Minimal:
        return "alg1-minimal";
    case Alg1Strategy::Maximal:
        return "alg1-maximal";
    case Alg1Strategy::Dual:
        return "alg1-dual";
    }
    return "alg1";
}

namespace {

// Maximal elements of an item-index ideal, as a node id of the itemset
// taxonomy. Every antichain of the base is a node, so lookup cannot fail.
int node_for_ideal(const ItemsetTaxonomy& it, const Bitset& ideal) {
    const GenericPoset& items = it.base().poset();
    std::vector<int> maximal;
    for (Bitset::size_type e = ideal.find_first(); e != Bitset::npos; e = ideal.find_next(e)) {
        Bitset above = items.descendants(e) & ideal;
        above.reset(e);
        if (above.none())
            maximal.push_back(static_cast<int>(e));
    }
    int node = it.core().find(maximal);
    assert(node >= 0);
    return node;
}

} // namespace

MiningResult mine_alg1(const ItemsetTaxonomy& it, InstrumentedOracle& oracle,
                       Alg1Strategy strategy) {
    const ItemsetPosetView view = view_of(it);
    const GenericPoset& items = it.base().poset();
    ClassificationState state(it.poset());
    bool completed = true;
    bool minimal_turn = strategy != Alg1Strategy::Maximal;

    try {
        while (!state.complete()) {
            int a = minimal_turn ? lowest_unclassified(state) : highest_unclassified(state);
            if (ask(view, state, oracle, a)) {
                // Walk toward a maximal frequent itemset: grow the ideal by
                // one item's ancestor closure at a time.
                for (int i = 0; i < items.size(); ++i) {
                    if (it.ideal_bits(a).test(i))
                        continue;
                    int b = node_for_ideal(it, it.ideal_bits(a) | items.ancestors(i));
                    if (ask(view, state, oracle, b))
                        a = b;
                }
            } else {
                // Walk toward a minimal infrequent itemset: drop one item's
                // descendant closure at a time.
                for (int i = 0; i < items.size(); ++i) {
                    if (!it.ideal_bits(a).test(i))
                        continue;
                    int b = node_for_ideal(it, it.ideal_bits(a) - items.descendants(i));
                    if (!ask(view, state, oracle, b))
                        a = b;
                }
            }
            if (strategy == Alg1Strategy::Dual)
                minimal_turn = !minimal_turn;
        }
    } catch (const SessionClosed&) {
        completed = false;
    }
    return finish(view, state, oracle, strategy_name(strategy), completed);
}

// ---------------------------------------------------------------------------
// Baseline and split-driven miners

MiningResult mine_exhaustive(const ItemsetPosetView& view, InstrumentedOracle& oracle) {
    ClassificationState state(*view.poset);
    bool completed = true;
    try {
        for (int v = 0; v < view.poset->size(); ++v) {
            bool answer = oracle.query((*view.itemsets)[v]);
            if (answer) {
                if (state.mark(v) != Mark::Frequent)
                    state.mark_frequent(v);
            } else {
                if (state.mark(v) != Mark::Infrequent)
                    state.mark_infrequent(v);
            }
        }
    } catch (const SessionClosed&) {
        completed = false;
    }
    completed = completed && state.complete();
    return finish(view, state, oracle, "exhaustive", completed);
}

MiningResult mine_halving(const ItemsetPosetView& view, InstrumentedOracle& oracle,
                          std::uint64_t antichain_cap) {
    ClassificationState state(*view.poset);
    bool completed = true;
    try {
        while (!state.complete()) {
            int a = best_split_element(*view.poset, state, antichain_cap);
            ask(view, state, oracle, a);
        }
    } catch (const SessionClosed&) {
        completed = false;
    }
    return finish(view, state, oracle, "halving", completed);
}

MiningResult mine_chain_partition(const ItemsetPosetView& view, InstrumentedOracle& oracle) {
    ClassificationState state(*view.poset);
    std::vector<std::vector<int>> chains = chain_partition(*view.poset);
    bool completed = true;
    try {
        for (const std::vector<int>& chain : chains) {
            // Every chain splits into a frequent prefix and an infrequent
            // suffix; marks propagated from other chains shrink the search
            // interval before and between queries.
            int lo = -1;
            int hi = static_cast<int>(chain.size());
            auto tighten = [&] {
                while (lo + 1 < hi && state.mark(chain[lo + 1]) == Mark::Frequent)
                    ++lo;
                while (hi - 1 > lo && state.mark(chain[hi - 1]) == Mark::Infrequent)
                    --hi;
            };
            tighten();
            while (lo + 1 < hi) {
                int mid = lo + (hi - lo) / 2;
                ask(view, state, oracle, chain[mid]);
                tighten();
            }
        }
    } catch (const SessionClosed&) {
        completed = false;
    }
    completed = completed && state.complete();
    return finish(view, state, oracle, "chain-partition", completed);
}

MiningResult mine_greedy_anytime(const ItemsetPosetView& view, InstrumentedOracle& oracle,
                                 std::uint64_t budget) {
    ClassificationState state(*view.poset);
    std::uint64_t used = 0;
    try {
        while (!state.complete() && used < budget) {
            int a = greedy_best_split_itemset(*view.poset, state);
            ask(view, state, oracle, a);
            ++used;
        }
    } catch (const SessionClosed&) {
        // fall through with a partial state
    }
    return finish(view, state, oracle, "greedy", state.complete());
}

} // namespace crowdmine

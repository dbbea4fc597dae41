#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "crowdmine/generators.hpp"
#include "crowdmine/itemset_taxonomy.hpp"
#include "helpers.hpp"

using namespace crowdmine;
namespace tst = crowdmine::testing;

namespace {

Taxonomy psi1() {
    return build_taxonomy({1, 2, 3, 4}, {{1, 3}, {1, 4}, {2, 4}});
}

std::vector<std::vector<int>> sorted_node_itemsets(const ItemsetTaxonomy& it) {
    std::vector<std::vector<int>> out;
    for (int v = 0; v < it.node_count(); ++v)
        out.push_back(it.itemset(v).items);
    std::sort(out.begin(), out.end());
    return out;
}

// Order-isomorphism via the canonical itemset labeling of the nodes.
bool order_isomorphic(const GenericPoset& a, const std::vector<Antichain>& a_sets,
                      const GenericPoset& b, const std::vector<Antichain>& b_sets) {
    if (a.size() != b.size())
        return false;
    std::map<std::vector<int>, int> b_index;
    for (int v = 0; v < b.size(); ++v)
        b_index[b_sets[v].items] = v;
    std::vector<int> map_ab(a.size());
    for (int v = 0; v < a.size(); ++v) {
        auto found = b_index.find(a_sets[v].items);
        if (found == b_index.end())
            return false;
        map_ab[v] = found->second;
    }
    for (int x = 0; x < a.size(); ++x)
        for (int y = 0; y < a.size(); ++y)
            if (a.leq(x, y) != b.leq(map_ab[x], map_ab[y]))
                return false;
    return true;
}

} // namespace

TEST_CASE("itemset taxonomy materialization") {
    SUBCASE("chain and flat shapes") {
        for (int n = 0; n <= 10; ++n) {
            CHECK(construct_itemset_taxonomy(gen_chain(n)).node_count() == n + 1);
            CHECK(construct_itemset_taxonomy(gen_flat(n)).node_count() == (1 << n));
        }
    }

    SUBCASE("running example has one node per antichain") {
        ItemsetTaxonomy it = construct_itemset_taxonomy(psi1());
        CHECK(it.node_count() == 8);
        CHECK(it.itemset(0).items.empty()); // breadth-first root
        std::vector<std::vector<int>> expected = {{},  {1},    {2},    {3},
                                                  {4}, {1, 2}, {2, 3}, {3, 4}};
        std::sort(expected.begin(), expected.end());
        CHECK(sorted_node_itemsets(it) == expected);
    }

    SUBCASE("node cap") {
        CHECK_THROWS_AS(construct_itemset_taxonomy(gen_flat(8), 100), CapExceeded);
    }

    SUBCASE("nodes, ideals and covers match brute force on every small taxonomy") {
        for (const Taxonomy& tax : tst::all_taxonomies_up_to(6)) {
            ItemsetTaxonomy it = construct_itemset_taxonomy(tax);
            tst::BruteItemsetTaxonomy brute = tst::brute_itemset_taxonomy(tax);
            REQUIRE(static_cast<std::size_t>(it.node_count()) == brute.nodes.size());
            CHECK(sorted_node_itemsets(it) == brute.nodes);

            // map constructed node ids to brute indices
            std::map<std::vector<int>, int> brute_index;
            for (std::size_t i = 0; i < brute.nodes.size(); ++i)
                brute_index[brute.nodes[i]] = static_cast<int>(i);
            std::vector<int> to_brute(it.node_count());
            for (int v = 0; v < it.node_count(); ++v) {
                to_brute[v] = brute_index.at(it.itemset(v).items);
                CHECK(ideal_of(tax, it.itemset(v)).items == it.ideal(v).items);
            }
            std::set<std::pair<int, int>> constructed, expected(brute.covers.begin(),
                                                                brute.covers.end());
            for (const auto& [a, b, kind] : it.core().cover_edges())
                constructed.emplace(to_brute[a], to_brute[b]);
            CHECK(constructed == expected);
        }
    }
}

TEST_CASE("cover edge kinds") {
    SUBCASE("flat taxonomy has only addition edges") {
        ItemsetTaxonomy it = construct_itemset_taxonomy(gen_flat(4));
        for (const auto& [a, b, kind] : it.core().cover_edges())
            CHECK(kind == EdgeKind::Addition);
    }

    SUBCASE("chain taxonomy specializes after the first step") {
        ItemsetTaxonomy it = construct_itemset_taxonomy(gen_chain(4));
        for (const auto& [a, b, kind] : it.core().cover_edges()) {
            if (it.itemset(a).empty())
                CHECK(kind == EdgeKind::Addition);
            else
                CHECK(kind == EdgeKind::Specialization);
        }
    }

    SUBCASE("every cover edge has exactly one kind and a single-item ideal step") {
        for (const Taxonomy& tax : tst::all_taxonomies_up_to(5)) {
            ItemsetTaxonomy it = construct_itemset_taxonomy(tax);
            std::set<std::pair<int, int>> seen;
            for (const auto& [a, b, kind] : it.core().cover_edges()) {
                CHECK(seen.emplace(a, b).second);
                CHECK(it.ideal_bits(b).count() == it.ideal_bits(a).count() + 1);
                Bitset added = it.ideal_bits(b) - it.ideal_bits(a);
                REQUIRE(added.count() == 1);
                int witness = static_cast<int>(added.find_first());
                std::vector<int> ea = it.core().node(a).elements;
                std::vector<int> eb = it.core().node(b).elements;
                std::vector<int> expected_add = ea;
                expected_add.insert(
                    std::lower_bound(expected_add.begin(), expected_add.end(), witness), witness);
                if (kind == EdgeKind::Addition)
                    CHECK(eb == expected_add);
                else
                    CHECK(eb != expected_add);
            }
        }
    }

    SUBCASE("classify_covering_edge rejects non-covers") {
        ItemsetTaxonomy it = construct_itemset_taxonomy(psi1());
        int root = it.node_of(Antichain{});
        int top = it.node_of(Antichain({3, 4}));
        CHECK_THROWS_AS(classify_covering_edge(it, root, top), NotACoverEdge);
    }

    SUBCASE("comparison gadget edges from the appendix example") {
        // P is the four-element poset with antichains {},{1},{2},{3},{2,3},{4}.
        GenericPoset diamond = GenericPoset::from_edges(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
        Taxonomy fixture = gen_lemma_b3_fixture(diamond, 6);
        KItemsetTaxonomy kt = construct_k_itemset_taxonomy(fixture, 1);

        // Antichains-of-singletons for two incomparable flat elements of
        // gamma(12) and their common child e-1.
        AntichainPoset solutions = AntichainPoset::build(kt.poset(), 1 << 16);
        int flat_a = kt.node_of(Antichain({4}));
        int flat_b = kt.node_of(Antichain({5}));
        int e_minus1 = -1;
        for (int item = 0; item < fixture.item_count(); ++item)
            if (fixture.label(item) == "e-1")
                e_minus1 = kt.node_of(Antichain({item}));
        REQUIRE(e_minus1 >= 0);

        int single_a = solutions.find({flat_a});
        int pair_ab = solutions.find(flat_a < flat_b ? std::vector<int>{flat_a, flat_b}
                                                     : std::vector<int>{flat_b, flat_a});
        int single_e = solutions.find({e_minus1});
        REQUIRE(single_a >= 0);
        REQUIRE(pair_ab >= 0);
        REQUIRE(single_e >= 0);
        CHECK(solutions.edge_kind(single_a, pair_ab) == EdgeKind::Addition);
        CHECK(solutions.edge_kind(pair_ab, single_e) == EdgeKind::Specialization);
    }
}

TEST_CASE("k-itemset taxonomy") {
    SUBCASE("k=0 collapses to the empty itemset") {
        KItemsetTaxonomy kt = construct_k_itemset_taxonomy(psi1(), 0);
        CHECK(kt.node_count() == 1);
        CHECK(kt.itemset(0).items.empty());
    }

    SUBCASE("k=1 is the taxonomy plus a root") {
        Taxonomy tax = psi1();
        KItemsetTaxonomy kt = construct_k_itemset_taxonomy(tax, 1);
        CHECK(kt.node_count() == tax.item_count() + 1);
        int root = kt.node_of(Antichain{});
        for (int v = 0; v < kt.node_count(); ++v)
            CHECK(kt.poset().leq(root, v));
        for (int id : tax.item_ids())
            for (int other : tax.item_ids()) {
                int a = kt.node_of(Antichain({id}));
                int b = kt.node_of(Antichain({other}));
                CHECK(kt.poset().leq(a, b) == tax.item_leq(id, other));
            }
    }

    SUBCASE("width-sized k recovers the full taxonomy") {
        Taxonomy tax = psi1();
        CHECK(tax.poset().width() == 2);
        KItemsetTaxonomy kt = construct_k_itemset_taxonomy(tax, 2);
        ItemsetTaxonomy it = construct_itemset_taxonomy(tax);
        CHECK(kt.node_count() == 8);
        CHECK(order_isomorphic(kt.poset(), kt.itemsets(), it.poset(), it.itemsets()));
    }

    SUBCASE("flat four items with k=2") {
        CHECK(construct_k_itemset_taxonomy(gen_flat(4), 2).node_count() == 1 + 4 + 6);
    }

    SUBCASE("k at or above the width is order-isomorphic to the full construction") {
        for (const Taxonomy& tax : tst::all_taxonomies_up_to(4)) {
            ItemsetTaxonomy it = construct_itemset_taxonomy(tax);
            int width = tax.poset().width();
            for (int k = width; k <= tax.item_count(); ++k) {
                KItemsetTaxonomy kt = construct_k_itemset_taxonomy(tax, k);
                CHECK(order_isomorphic(kt.poset(), kt.itemsets(), it.poset(), it.itemsets()));
            }
        }
    }
}

TEST_CASE("solution taxonomy") {
    SUBCASE("chains gain one node per level twice") {
        for (int n = 0; n <= 8; ++n)
            CHECK(solution_taxonomy(gen_chain(n)).size() == n + 2);
    }

    SUBCASE("empty taxonomy") {
        CHECK(solution_taxonomy(build_taxonomy({}, {})).size() == 2);
    }

    SUBCASE("running example") {
        GenericPoset s = solution_taxonomy(psi1());
        CHECK(s.size() == 14);
        std::set<std::string> labels;
        for (int v = 0; v < s.size(); ++v)
            labels.insert(s.label(v));
        CHECK(labels.count("{}"));
        CHECK(labels.count("{{1},{2}}"));
        CHECK(labels.count("{{3,4}}"));
    }

    SUBCASE("flat taxonomies count monotone predicates") {
        CHECK(solution_taxonomy(gen_flat(2)).size() == 6);
        CHECK(solution_taxonomy(gen_flat(3)).size() == 20);
    }

    SUBCASE("solution count is bounded by the chain-partition query budget") {
        for (const Taxonomy& tax : tst::all_taxonomies_up_to(4)) {
            ItemsetTaxonomy it = construct_itemset_taxonomy(tax);
            std::uint64_t solutions = count_antichains(it.poset());
            double budget = 0;
            for (const auto& chain : chain_partition(it.poset()))
                budget += std::ceil(std::log2(static_cast<double>(chain.size()) + 1.0));
            CHECK(static_cast<double>(solutions) <= std::pow(2.0, budget));
        }
    }
}

TEST_CASE("antichains of itemsets correspond to monotone predicates") {
    Taxonomy tax = psi1();
    ItemsetTaxonomy it = construct_itemset_taxonomy(tax);

    SUBCASE("running example truth set") {
        Bitset truth = predicate_from_mfis(it, {Antichain({3}), Antichain({4})});
        std::set<std::vector<int>> expected = {{}, {1}, {2}, {3}, {4}, {1, 2}};
        for (int v = 0; v < it.node_count(); ++v)
            CHECK(truth.test(v) == (expected.count(it.itemset(v).items) != 0));
    }

    SUBCASE("empty and full predicates") {
        Bitset none = predicate_from_mfis(it, {});
        CHECK(none.none());
        Bitset all = predicate_from_mfis(it, {Antichain({3, 4})});
        CHECK(all.count() == static_cast<std::size_t>(it.node_count()));
    }

    SUBCASE("rejects comparable members and broken predicates") {
        CHECK_THROWS_AS(predicate_from_mfis(it, {Antichain({3}), Antichain({1})}),
                        NotAnAntichain);
        CHECK_THROWS_AS(predicate_from_mfis(it, {Antichain({1, 3})}), NotAnAntichain);
        Bitset broken(it.node_count());
        broken.set(static_cast<std::size_t>(it.node_of(Antichain({3}))));
        // true on {3} but false on its ancestor {} violates monotonicity
        CHECK_THROWS_AS(mfis_from_predicate(it, broken), NotMonotone);
    }

    SUBCASE("mutually inverse on every small taxonomy") {
        for (const Taxonomy& sweep_tax : tst::all_taxonomies_up_to(3)) {
            ItemsetTaxonomy sweep_it = construct_itemset_taxonomy(sweep_tax);
            if (sweep_it.node_count() > 12)
                continue;
            // every antichain of the itemset poset round-trips
            for (const std::vector<int>& nodes : tst::brute_antichains(sweep_it.poset())) {
                std::vector<Antichain> mfis;
                for (int v : nodes)
                    mfis.push_back(sweep_it.itemset(v));
                std::sort(mfis.begin(), mfis.end());
                Bitset truth = predicate_from_mfis(sweep_it, mfis);
                CHECK(mfis_from_predicate(sweep_it, truth) == mfis);
            }
            // every monotone predicate round-trips the other way
            const int n = sweep_it.node_count();
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                Bitset truth(n);
                for (int v = 0; v < n; ++v)
                    if (mask & (1u << v))
                        truth.set(v);
                bool monotone = true;
                for (int a = 0; a < n && monotone; ++a)
                    for (int b = 0; b < n; ++b)
                        if (sweep_it.poset().leq(a, b) && truth.test(b) && !truth.test(a)) {
                            monotone = false;
                            break;
                        }
                if (!monotone)
                    continue;
                std::vector<Antichain> mfis = mfis_from_predicate(sweep_it, truth);
                CHECK(predicate_from_mfis(sweep_it, mfis) == truth);
            }
        }
    }
}

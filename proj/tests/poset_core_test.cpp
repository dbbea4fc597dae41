#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "crowdmine/generators.hpp"
#include "crowdmine/poset_core.hpp"
#include "helpers.hpp"

using namespace crowdmine;
namespace tst = crowdmine::testing;

namespace {

// Running-example taxonomy: four items, 3 and 4 specialize 1, 4 also
// specializes 2.
Taxonomy psi1() {
    return build_taxonomy({1, 2, 3, 4}, {{1, 3}, {1, 4}, {2, 4}});
}

} // namespace

TEST_CASE("build_taxonomy validates and reduces input") {
    Taxonomy tax = psi1();
    CHECK(tax.item_count() == 4);
    CHECK(tax.cover_edges() == std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 4}});
    CHECK(tax.item_leq(1, 4));
    CHECK(tax.item_leq(2, 4));
    CHECK_FALSE(tax.item_leq(2, 3));
    CHECK_FALSE(tax.item_leq(3, 4));

    SUBCASE("singleton") {
        Taxonomy single = build_taxonomy({1}, {});
        auto [anc, desc] = reachability(single, 1);
        CHECK(anc == std::vector<int>{1});
        CHECK(desc == std::vector<int>{1});
    }

    SUBCASE("redundant edge dropped by transitive reduction") {
        Taxonomy tax3 = build_taxonomy({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
        CHECK(tax3.cover_edges() == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});
    }

    SUBCASE("errors") {
        CHECK_THROWS_AS(build_taxonomy({1, 2}, {{1, 2}, {2, 1}}), CycleDetected);
        CHECK_THROWS_AS(build_taxonomy({1, 2}, {{1, 9}}), UnknownItem);
        CHECK_THROWS_AS(build_taxonomy({1, 1}, {}), Error);
    }

    SUBCASE("non-contiguous ids") {
        Taxonomy sparse = build_taxonomy({10, 5, 20}, {{5, 10}, {10, 20}});
        CHECK(sparse.item_leq(5, 20));
        CHECK(sparse.cover_edges() == std::vector<std::pair<int, int>>{{5, 10}, {10, 20}});
    }
}

TEST_CASE("transitive reduction recovers cover pairs") {
    SUBCASE("chain with all comparabilities") {
        GenericPoset p = GenericPoset::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
        CHECK(p.cover_edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    }
    SUBCASE("flat poset") {
        GenericPoset p = GenericPoset::from_edges(3, {});
        CHECK(p.cover_edges().empty());
    }
    SUBCASE("diamond with redundant top edge") {
        GenericPoset p = GenericPoset::from_edges(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {0, 3}});
        CHECK(p.cover_edges() ==
              std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    }
    SUBCASE("random posets match the brute-force cover definition") {
        std::mt19937_64 rng(7);
        for (int round = 0; round < 200; ++round) {
            GenericPoset p = tst::random_poset(rng, 8);
            std::vector<std::pair<int, int>> expected;
            for (int a = 0; a < p.size(); ++a)
                for (int b = 0; b < p.size(); ++b) {
                    if (a == b || !p.leq(a, b))
                        continue;
                    bool has_between = false;
                    for (int c = 0; c < p.size(); ++c)
                        if (c != a && c != b && p.leq(a, c) && p.leq(c, b)) {
                            has_between = true;
                            break;
                        }
                    if (!has_between)
                        expected.emplace_back(a, b);
                }
            GenericPoset reduced = transitive_reduction(p);
            CHECK(reduced.cover_edges() == expected);
            CHECK(p.cover_edges() == expected); // from_edges already reduces
        }
    }
}

TEST_CASE("reachability") {
    Taxonomy tax = psi1();
    auto [anc4, desc4] = reachability(tax, 4);
    CHECK(anc4 == std::vector<int>{1, 2, 4});
    CHECK(desc4 == std::vector<int>{4});
    auto [anc1, desc1] = reachability(tax, 1);
    CHECK(anc1 == std::vector<int>{1});
    CHECK(desc1 == std::vector<int>{1, 3, 4});
    CHECK_THROWS_AS(reachability(tax, 7), UnknownItem);
}

TEST_CASE("normalize_antichain keeps the maximal elements") {
    Taxonomy tax = psi1();
    CHECK(normalize_antichain(tax, {1, 3}).items == std::vector<int>{3});
    CHECK(normalize_antichain(tax, {2, 3}).items == std::vector<int>{2, 3});
    CHECK(normalize_antichain(tax, {}).items.empty());
    CHECK(normalize_antichain(tax, {1, 2, 3, 4}).items == std::vector<int>{3, 4});
}

TEST_CASE("ideal/antichain conversions") {
    Taxonomy tax = psi1();
    CHECK(ideal_of(tax, Antichain({4})).items == std::vector<int>{1, 2, 4});
    CHECK(antichain_of(tax, OrderIdeal({1, 2, 4})).items == std::vector<int>{4});
    CHECK(ideal_of(tax, Antichain{}).items.empty());
    CHECK(antichain_of(tax, OrderIdeal{}).items.empty());

    SUBCASE("mutually inverse on every antichain of every small taxonomy") {
        for (const Taxonomy& tax : tst::all_taxonomies_up_to(6)) {
            for (const std::vector<int>& elements : tst::brute_antichains(tax.poset())) {
                std::vector<int> ids;
                for (int e : elements)
                    ids.push_back(tax.id_of(e));
                Antichain a(ids);
                CHECK(antichain_of(tax, ideal_of(tax, a)) == a);
            }
        }
    }
}

TEST_CASE("itemset_leq agrees with ideal containment") {
    Taxonomy tax = psi1();
    CHECK(itemset_leq(tax, Antichain({1}), Antichain({4})));
    CHECK_FALSE(itemset_leq(tax, Antichain({2, 3}), Antichain({3})));
    CHECK(itemset_leq(tax, Antichain{}, Antichain({3, 4})));
    CHECK(itemset_leq(tax, Antichain{}, Antichain{}));

    for (const Taxonomy& sweep_tax : tst::all_taxonomies_up_to(5)) {
        std::vector<Antichain> antichains;
        for (const std::vector<int>& elements : tst::brute_antichains(sweep_tax.poset())) {
            std::vector<int> ids;
            for (int e : elements)
                ids.push_back(sweep_tax.id_of(e));
            antichains.emplace_back(ids);
        }
        for (const Antichain& a : antichains)
            for (const Antichain& b : antichains) {
                std::vector<int> ia = ideal_of(sweep_tax, a).items;
                std::vector<int> ib = ideal_of(sweep_tax, b).items;
                bool contained = std::includes(ib.begin(), ib.end(), ia.begin(), ia.end());
                CHECK(itemset_leq(sweep_tax, a, b) == contained);
            }
    }
}

TEST_CASE("antichain enumeration") {
    Taxonomy tax = psi1();
    std::vector<std::vector<int>> found = enumerate_antichains(tax.poset());
    // indices 0..3 stand for items 1..4
    std::vector<std::vector<int>> expected = {{}, {0}, {0, 1}, {1}, {1, 2}, {2}, {2, 3}, {3}};
    CHECK(found == expected);

    SUBCASE("flat and chain counts") {
        CHECK(enumerate_antichains(gen_flat(3).poset()).size() == 8);
        CHECK(enumerate_antichains(gen_chain(3).poset()).size() == 4);
    }

    SUBCASE("lexicographic order and brute-force agreement on random posets") {
        std::mt19937_64 rng(11);
        for (int round = 0; round < 100; ++round) {
            GenericPoset p = tst::random_poset(rng, 10);
            std::vector<std::vector<int>> ours = enumerate_antichains(p);
            std::vector<std::vector<int>> brute = tst::brute_antichains(p);
            CHECK(std::is_sorted(ours.begin(), ours.end()));
            std::sort(ours.begin(), ours.end());
            CHECK(ours == brute);
            CHECK(count_antichains(p) == brute.size());
        }
    }

    SUBCASE("cap") {
        CHECK_THROWS_AS(enumerate_antichains(gen_flat(8).poset(), 100), CapExceeded);
        CHECK_THROWS_AS(count_antichains(gen_flat(8).poset(), 100), CapExceeded);
        CHECK(count_antichains(gen_flat(8).poset(), 256) == 256);
    }

    SUBCASE("count unchanged by transitive reduction") {
        std::mt19937_64 rng(13);
        for (int round = 0; round < 50; ++round) {
            GenericPoset p = tst::random_poset(rng, 9);
            CHECK(count_antichains(p) == count_antichains(transitive_reduction(p)));
        }
    }
}

TEST_CASE("chain partition and width") {
    SUBCASE("chain poset") {
        std::vector<std::vector<int>> chains = chain_partition(gen_chain(6).poset());
        REQUIRE(chains.size() == 1);
        CHECK(chains[0].size() == 6);
        CHECK(gen_chain(6).poset().width() == 1);
    }
    SUBCASE("flat poset") {
        std::vector<std::vector<int>> chains = chain_partition(gen_flat(5).poset());
        CHECK(chains.size() == 5);
        CHECK(gen_flat(5).poset().width() == 5);
    }
    SUBCASE("width of the running example's itemset poset") {
        // enumerate the antichain poset through its antichains
        Taxonomy tax = psi1();
        GenericPoset ip = [&] {
            auto antichains = enumerate_antichains(tax.poset());
            const int n = static_cast<int>(antichains.size());
            std::vector<Bitset> anc(n, Bitset(n));
            for (int b = 0; b < n; ++b)
                for (int a = 0; a < n; ++a) {
                    Bitset ia(tax.item_count()), ib(tax.item_count());
                    for (int e : antichains[a])
                        ia |= tax.poset().ancestors(e);
                    for (int e : antichains[b])
                        ib |= tax.poset().ancestors(e);
                    if (ia.is_subset_of(ib))
                        anc[b].set(a);
                }
            return GenericPoset::from_ancestor_sets(std::move(anc));
        }();
        std::size_t max_antichain = 0;
        for (const auto& a : tst::brute_antichains(ip))
            max_antichain = std::max(max_antichain, a.size());
        CHECK(static_cast<std::size_t>(ip.width()) == max_antichain);
    }
    SUBCASE("partition properties on random posets") {
        std::mt19937_64 rng(17);
        for (int round = 0; round < 120; ++round) {
            GenericPoset p = tst::random_poset(rng, 15);
            std::vector<std::vector<int>> chains = chain_partition(p);
            std::set<int> seen;
            for (const auto& chain : chains) {
                for (std::size_t i = 0; i < chain.size(); ++i) {
                    CHECK(seen.insert(chain[i]).second);
                    if (i + 1 < chain.size())
                        CHECK(p.leq(chain[i], chain[i + 1]));
                }
            }
            CHECK(seen.size() == static_cast<std::size_t>(p.size()));
            std::size_t max_antichain = 0;
            for (const auto& a : tst::brute_antichains(p))
                max_antichain = std::max(max_antichain, a.size());
            if (p.size() > 0)
                CHECK(chains.size() == max_antichain);
            else
                CHECK(chains.empty());
        }
    }
}

TEST_CASE("series composition adds antichain counts") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 100; ++round) {
        GenericPoset p = tst::random_poset(rng, 6);
        GenericPoset q = tst::random_poset(rng, 6);
        CHECK(count_antichains(concat(p, q)) == count_antichains(p) + count_antichains(q));
    }
}

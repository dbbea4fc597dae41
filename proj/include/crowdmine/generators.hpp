#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crowdmine/itemset_taxonomy.hpp"
#include "crowdmine/poset_core.hpp"

namespace crowdmine {

// Items 0..n-1 totally ordered by i below i+1.
Taxonomy gen_chain(int n);

// Items 0..n-1, pairwise incomparable.
Taxonomy gen_flat(int n);

// Samples each forward pair (i, j) with i < j as an edge with probability
// edge_prob under a fixed total order, so the result is a DAG by
// construction; redundant edges disappear in the transitive reduction.
// Identical seeds give identical taxonomies.
Taxonomy gen_random_dag(int n, double edge_prob, std::uint64_t seed);

// Series composition: a fresh middle element sits above everything in p and
// below everything in q. The middle element gets the given label.
GenericPoset concat(const GenericPoset& p, const GenericPoset& q,
                    const std::string& middle_label = "");

// A poset with exactly n antichains on O(log^2 n) elements: the series
// composition of flat posets given by the binary decomposition of n.
GenericPoset gen_gamma(std::uint64_t n);

// Wraps a bare poset as a taxonomy with items 0..size-1 and the poset's
// labels as item labels.
Taxonomy taxonomy_from_poset(const GenericPoset& poset);

// The comparison gadget: gamma(2n), three separator elements, then two
// stacked copies of p, each level joined by a fresh middle element. The five
// middle elements carry labels "e-1", "e0", "e1", "e2", "e3" so tests can
// address them without re-deriving the construction.
Taxonomy gen_lemma_b3_fixture(const GenericPoset& p, std::uint64_t n);

// Uniformly random antichain of the itemset taxonomy: rejection sampling
// over node subsets on small instances, otherwise the maximal elements of a
// random linear-extension prefix. Deterministic per seed.
std::vector<Antichain> gen_random_predicate(const ItemsetTaxonomy& it, std::uint64_t seed);

// Enumeration cap from CROWDMINE_ANTICHAIN_CAP, falling back to the default.
std::uint64_t antichain_cap_from_env();

} // namespace crowdmine

#include "crowdmine/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>

namespace crowdmine {

namespace {

std::vector<int> iota_items(int n) {
    std::vector<int> items(n);
    std::iota(items.begin(), items.end(), 0);
    return items;
}

// Uniform double in [0, 1) from the generator's raw 64-bit output; keeps
// sampling identical across standard library implementations.
double canonical01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Taxonomy gen_chain(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i)
        edges.emplace_back(i, i + 1);
    return build_taxonomy(iota_items(n), edges);
}

Taxonomy gen_flat(int n) {
    return build_taxonomy(iota_items(n), {});
}

Taxonomy gen_random_dag(int n, double edge_prob, std::uint64_t seed) {
    if (edge_prob < 0.0 || edge_prob > 1.0)
        throw Error("edge probability must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (canonical01(rng) < edge_prob)
                edges.emplace_back(i, j);
    return build_taxonomy(iota_items(n), edges);
}

GenericPoset concat(const GenericPoset& p, const GenericPoset& q,
                    const std::string& middle_label) {
    const int np = p.size();
    const int nq = q.size();
    const int middle = np;
    const int total = np + 1 + nq;

    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels;
    labels.reserve(total);
    for (int v = 0; v < np; ++v)
        labels.push_back(p.label(v));
    labels.push_back(middle_label);
    for (int v = 0; v < nq; ++v)
        labels.push_back(q.label(v));

    for (const auto& [a, b] : p.cover_edges())
        edges.emplace_back(a, b);
    for (const auto& [a, b] : q.cover_edges())
        edges.emplace_back(a + np + 1, b + np + 1);
    for (int v = 0; v < np; ++v)
        if (p.children(v).empty())
            edges.emplace_back(v, middle);
    for (int v = 0; v < nq; ++v)
        if (q.parents(v).empty())
            edges.emplace_back(middle, v + np + 1);
    return GenericPoset::from_edges(total, edges, std::move(labels));
}

GenericPoset gen_gamma(std::uint64_t n) {
    if (n == 0)
        throw Error("gamma posets are defined for n >= 1");
    GenericPoset result;
    bool first = true;
    for (int bit = 0; bit < 64; ++bit) {
        if (!(n & (std::uint64_t(1) << bit)))
            continue;
        GenericPoset flat = GenericPoset::from_edges(bit, {});
        if (first) {
            result = std::move(flat);
            first = false;
        } else {
            result = concat(result, flat);
        }
    }
    return result;
}

Taxonomy taxonomy_from_poset(const GenericPoset& poset) {
    std::vector<std::pair<int, int>> edges(poset.cover_edges());
    return build_taxonomy(iota_items(poset.size()), edges, poset.labels());
}

Taxonomy gen_lemma_b3_fixture(const GenericPoset& p, std::uint64_t n) {
    if (n == 0)
        throw Error("the comparison gadget needs n >= 1");
    GenericPoset empty;
    GenericPoset fixture = gen_gamma(2 * n);
    fixture = concat(fixture, empty, "e-1");
    fixture = concat(fixture, empty, "e0");
    fixture = concat(fixture, empty, "e1");
    fixture = concat(fixture, p, "e2");
    fixture = concat(fixture, p, "e3");
    return taxonomy_from_poset(fixture);
}

std::vector<Antichain> gen_random_predicate(const ItemsetTaxonomy& it, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const GenericPoset& poset = it.poset();
    const int n = poset.size();

    std::vector<int> picked;
    if (n <= 20) {
        // Rejection sampling keeps the distribution uniform over antichains.
        while (true) {
            picked.clear();
            for (int v = 0; v < n; ++v)
                if (rng() & 1)
                    picked.push_back(v);
            bool antichain = true;
            for (std::size_t i = 0; i < picked.size() && antichain; ++i)
                for (std::size_t j = i + 1; j < picked.size(); ++j)
                    if (poset.leq(picked[i], picked[j]) || poset.leq(picked[j], picked[i])) {
                        antichain = false;
                        break;
                    }
            if (antichain)
                break;
        }
    } else {
        // Maximal elements of a random linear-extension prefix.
        std::vector<int> indeg(n, 0);
        for (const auto& [a, b] : poset.cover_edges())
            ++indeg[b];
        std::vector<int> ready;
        for (int v = 0; v < n; ++v)
            if (indeg[v] == 0)
                ready.push_back(v);
        std::vector<int> extension;
        extension.reserve(n);
        while (!ready.empty()) {
            std::size_t at = static_cast<std::size_t>(rng() % ready.size());
            int v = ready[at];
            ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(at));
            extension.push_back(v);
            for (int w : poset.children(v))
                if (--indeg[w] == 0)
                    ready.push_back(w);
        }
        std::size_t prefix = static_cast<std::size_t>(rng() % (n + 1));
        Bitset ideal(n);
        for (std::size_t i = 0; i < prefix; ++i)
            ideal.set(extension[i]);
        for (Bitset::size_type v = ideal.find_first(); v != Bitset::npos; v = ideal.find_next(v)) {
            Bitset above = poset.descendants(v) & ideal;
            above.reset(v);
            if (above.none())
                picked.push_back(static_cast<int>(v));
        }
    }

    std::vector<Antichain> mfis;
    mfis.reserve(picked.size());
    for (int v : picked)
        mfis.push_back(it.itemset(v));
    std::sort(mfis.begin(), mfis.end());
    return mfis;
}

std::uint64_t antichain_cap_from_env() {
    const char* raw = std::getenv("CROWDMINE_ANTICHAIN_CAP");
    if (!raw || !*raw)
        return kDefaultAntichainCap;
    char* end = nullptr;
    unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || value == 0)
        throw ConfigInvalid("CROWDMINE_ANTICHAIN_CAP must be a positive integer");
    return static_cast<std::uint64_t>(value);
}

} // namespace crowdmine

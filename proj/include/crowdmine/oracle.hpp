#pragma once

#include <functional>
#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

#include "crowdmine/itemset_taxonomy.hpp"
#include "crowdmine/poset_core.hpp"
#include "crowdmine/rational.hpp"

namespace crowdmine {

// A bag of transactions. Members are raw item-id sets over a taxonomy; they
// need not be antichains since support compares them semantically.
struct TransactionDatabase {
    std::vector<std::vector<int>> transactions;

    std::size_t size() const { return transactions.size(); }
    bool empty() const { return transactions.empty(); }
};

struct OracleConfig {
    Rational threshold{1, 2};

    void validate() const {
        if (threshold <= Rational(0, 1) || threshold >= Rational(1, 1))
            throw ConfigInvalid("threshold must lie strictly between 0 and 1, got " +
                                threshold.str());
    }
};

// A crowd query target: answers whether an itemset is frequent.
using FrequencyOracle = std::function<bool(const Antichain&)>;

// Fraction of transactions that semantically imply the itemset; 0 on an
// empty database.
Rational support(const TransactionDatabase& db, const Taxonomy& tax, const Antichain& a);

// Oracle that answers true iff the itemset's support strictly exceeds the
// threshold. Deterministic and decreasing monotone.
FrequencyOracle make_db_oracle(TransactionDatabase db, const Taxonomy& tax,
                               const OracleConfig& cfg);

// Oracle defined directly by its maximal frequent itemsets: true iff the
// query is implied by some member. Throws NotAnAntichain if mfis has
// comparable members.
FrequencyOracle make_predicate_oracle(const ItemsetTaxonomy& it, std::vector<Antichain> mfis);

// Constructs a concrete database whose frequency oracle coincides with the
// predicate oracle of mfis at the given threshold: n full transactions, one
// transaction per maximal itemset, and at least one empty filler, with the
// smallest transaction count that separates n/d < threshold < (n+1)/d.
TransactionDatabase realize_database(const ItemsetTaxonomy& it, const std::vector<Antichain>& mfis,
                                     const OracleConfig& cfg);

struct TranscriptEntry {
    Antichain itemset;
    bool answer = false;
};

// Caching, counting wrapper around any frequency oracle. Queries are
// canonicalized before the cache lookup, so semantically equal itemsets are
// never forwarded twice; query_count is the crowd-complexity measurement.
// Access is serialized, so one instance may back concurrent miners.
class InstrumentedOracle {
public:
    InstrumentedOracle(FrequencyOracle inner, const Taxonomy& tax)
        : inner_(std::move(inner)), tax_(tax) {}

    bool query(const Antichain& a) { return query(a.items); }
    bool query(const std::vector<int>& raw_items);

    std::size_t query_count() const;
    std::vector<TranscriptEntry> transcript() const;

    // Whether a canonical itemset has been asked already.
    bool cached(const Antichain& a) const;

private:
    FrequencyOracle inner_;
    Taxonomy tax_;
    mutable std::mutex mutex_;
    std::unordered_map<std::vector<int>, bool, IntVectorHash> cache_;
    std::vector<TranscriptEntry> transcript_;
};

InstrumentedOracle instrument(FrequencyOracle oracle, const Taxonomy& tax);

struct InteractiveRecord {
    std::vector<int> itemset;
    std::string rendering;
    bool answer = false;
    std::string timestamp;
};

// Line-oriented yes/no question channel backed by a pair of streams. Every
// answered question is kept in the session log.
class InteractiveSession {
public:
    InteractiveSession(std::istream& in, std::ostream& out, const Taxonomy& tax)
        : in_(&in), out_(&out), tax_(tax) {}

    // Renders the itemset as a question, blocks for y/yes/n/no (case
    // insensitive), re-prompting on anything else. Throws SessionClosed when
    // the input channel ends.
    bool ask(const Antichain& a);

    std::string render(const Antichain& a) const;
    const std::vector<InteractiveRecord>& log() const { return log_; }

private:
    std::istream* in_;
    std::ostream* out_;
    Taxonomy tax_;
    std::vector<InteractiveRecord> log_;
};

// Adapts a session to the oracle interface.
FrequencyOracle interactive_oracle(InteractiveSession& session);

} // namespace crowdmine

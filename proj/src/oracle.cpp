#include "crowdmine/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <istream>
#include <ostream>

namespace crowdmine {

Rational support(const TransactionDatabase& db, const Taxonomy& tax, const Antichain& a) {
    if (db.empty())
        return Rational(0, 1);
    Bitset wanted = tax.to_index_set(a.items);
    std::int64_t hits = 0;
    for (const auto& t : db.transactions) {
        Bitset covered(tax.item_count());
        for (int id : t)
            covered |= tax.poset().ancestors(tax.index_of(id));
        if (wanted.is_subset_of(covered))
            ++hits;
    }
    return Rational(hits, static_cast<std::int64_t>(db.size()));
}

FrequencyOracle make_db_oracle(TransactionDatabase db, const Taxonomy& tax,
                               const OracleConfig& cfg) {
    cfg.validate();
    return [db = std::move(db), tax, threshold = cfg.threshold](const Antichain& a) {
        return support(db, tax, a) > threshold;
    };
}

FrequencyOracle make_predicate_oracle(const ItemsetTaxonomy& it, std::vector<Antichain> mfis) {
    predicate_from_mfis(it, mfis); // validates membership and incomparability
    Taxonomy tax = it.base();
    return [tax = std::move(tax), mfis = std::move(mfis)](const Antichain& a) {
        for (const Antichain& m : mfis)
            if (itemset_leq(tax, a, m))
                return true;
        return false;
    };
}

TransactionDatabase realize_database(const ItemsetTaxonomy& it, const std::vector<Antichain>& mfis,
                                     const OracleConfig& cfg) {
    cfg.validate();
    TransactionDatabase db;
    if (mfis.empty())
        return db;
    predicate_from_mfis(it, mfis);

    const Rational& theta = cfg.threshold;
    const std::int64_t m = static_cast<std::int64_t>(mfis.size());
    for (std::int64_t d = 2;; ++d) {
        // Need an integer n with n/d < theta < (n+1)/d and room for the
        // itemset transactions plus one empty filler.
        __int128 scaled = static_cast<__int128>(theta.num()) * d;
        if (scaled % theta.den() == 0)
            continue;
        std::int64_t n = static_cast<std::int64_t>(scaled / theta.den());
        if (n + m >= d)
            continue;

        const std::vector<int>& all_items = it.base().item_ids();
        for (std::int64_t i = 0; i < n; ++i)
            db.transactions.push_back(all_items);
        for (const Antichain& a : mfis)
            db.transactions.push_back(a.items);
        for (std::int64_t i = n + m; i < d; ++i)
            db.transactions.push_back({});
        return db;
    }
}

bool InstrumentedOracle::query(const std::vector<int>& raw_items) {
    Antichain canonical = normalize_antichain(tax_, raw_items);
    std::lock_guard<std::mutex> lock(mutex_);
    auto hit = cache_.find(canonical.items);
    if (hit != cache_.end())
        return hit->second;
    bool answer = inner_(canonical);
    cache_.emplace(canonical.items, answer);
    transcript_.push_back(TranscriptEntry{canonical, answer});
    return answer;
}

std::size_t InstrumentedOracle::query_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return transcript_.size();
}

std::vector<TranscriptEntry> InstrumentedOracle::transcript() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return transcript_;
}

bool InstrumentedOracle::cached(const Antichain& a) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.count(a.items) != 0;
}

InstrumentedOracle instrument(FrequencyOracle oracle, const Taxonomy& tax) {
    return InstrumentedOracle(std::move(oracle), tax);
}

// ---------------------------------------------------------------------------
// Interactive session

namespace {

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string lowercase(std::string s) {
    for (char& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::string InteractiveSession::render(const Antichain& a) const {
    if (a.empty())
        return "Do people have any frequent itemsets at all?";
    std::string joined;
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        if (i)
            joined += ", ";
        joined += tax_.label(a.items[i]);
    }
    if (a.size() == 1)
        return "Does \"" + joined + "\" occur frequently?";
    return "Do these often occur together: " + joined + "?";
}

bool InteractiveSession::ask(const Antichain& a) {
    const std::string question = render(a);
    while (true) {
        (*out_) << question << " [y/n] " << std::flush;
        std::string line;
        if (!std::getline(*in_, line))
            throw SessionClosed("answer channel closed");
        std::string token = lowercase(trim(line));
        if (token == "y" || token == "yes" || token == "n" || token == "no") {
            bool answer = token[0] == 'y';
            log_.push_back(InteractiveRecord{a.items, question, answer, utc_timestamp()});
            return answer;
        }
        (*out_) << "Please answer yes or no.\n";
    }
}

FrequencyOracle interactive_oracle(InteractiveSession& session) {
    return [&session](const Antichain& a) { return session.ask(a); };
}

} // namespace crowdmine

#pragma once

#include <stdexcept>
#include <string>

namespace crowdmine {

// Error hierarchy shared by all modules. Everything derives from Error so
// callers (and the CLI) can distinguish library failures from std ones.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input edges do not form a DAG.
struct CycleDetected : Error {
    using Error::Error;
};

// An operation referenced an item id that is not part of the taxonomy.
struct UnknownItem : Error {
    using Error::Error;
};

// An enumeration or materialization grew past the configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

// classify_covering_edge was asked about a pair that is not a cover edge.
struct NotACoverEdge : Error {
    using Error::Error;
};

// A set of itemsets contained two comparable members.
struct NotAnAntichain : Error {
    using Error::Error;
};

// An externally supplied predicate violated (decreasing) monotonicity.
struct NotMonotone : Error {
    using Error::Error;
};

// An oracle answered inconsistently with monotonicity during mining.
struct NonMonotoneOracle : Error {
    using Error::Error;
};

// derive_borders was called while unclassified nodes remain.
struct IncompleteState : Error {
    using Error::Error;
};

// The interactive answer channel ended mid-session.
struct SessionClosed : Error {
    using Error::Error;
};

// An experiment configuration failed validation.
struct ConfigInvalid : Error {
    using Error::Error;
};

} // namespace crowdmine

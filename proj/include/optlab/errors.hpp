#pragma once

#include <stdexcept>
#include <string>

namespace optlab {

// The library throws; exit-code mapping lives in the CLI front end.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad descriptor fields, bad parameters, unparseable tokens.
struct ValidationError : Error {
    using Error::Error;
};

// Index outside the enumeration range.
struct BoundsError : Error {
    using Error::Error;
};

// Objective evaluated on a space kind it does not score.
struct ApplicabilityError : Error {
    using Error::Error;
};

// Space too large for a full rank table.
struct CapacityError : Error {
    using Error::Error;
};

// Query not supported by the table mode (e.g. rank_of on an extremes table).
struct QueryError : Error {
    using Error::Error;
};

struct EmptyInputError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace optlab

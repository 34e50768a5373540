#pragma once
#include <stdexcept>
#include <string>

namespace sbc {

// Malformed cube: entry on a masked-out cell, negative entry, shape mismatch.
struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File/schema violations, with a locus in the message.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested object does not exist or no construction strategy applies
// (idempotent square of order 2, PBD(v,{4,5,6}) for excluded v, ...).
struct unavailable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A stated precondition failed: unverified piece, invalid plan, base not
// accepted, degenerate deletion.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sbc

#pragma once

#include <stdexcept>
#include <string>

namespace tropq {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_argument_error : error {
    using error::error;
};

struct resource_limit_error : error {
    using error::error;
};

struct parse_error : error {
    parse_error(const std::string& msg, int line = -1)
        : error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_number(line) {}
    int line_number;
};

// A census triangulation admitting no strictly convex lift.
struct non_regular_error : error {
    using error::error;
};

struct inconsistent_lift_error : error {
    using error::error;
};

struct mismatch_error : error {
    using error::error;
};

// The input is valid but outside the scope the procedure is specified for.
struct out_of_scope_error : error {
    using error::error;
};

// The query does not apply to this input (e.g. a witness that only exists
// for certain combinatorial types).
struct not_applicable_error : error {
    using error::error;
};

// A machine-checked claim of the underlying mathematics failed; this is the
// most interesting possible outcome of a census run and maps to exit code 2.
struct theorem_violation_error : error {
    using error::error;
};

struct internal_error : error {
    using error::error;
};

}  // namespace tropq

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "kobdd/program.hpp"

namespace kobdd {

/// Raised by `deserialize`. `where` is a JSON pointer into the document for
/// semantic errors, or "byte N" for syntax errors.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, std::string const& message)
        : std::runtime_error(where + ": " + message), where_(std::move(where))
    {}

    std::string const& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Program file format (UTF-8 JSON):
///
///   { "semantics": "deterministic" | "nondeterministic" | "probabilistic" | "quantum",
///     "n": int, "k": int, "order": [int...],
///     "levels": [ { "var": int, "width_in": int, "width_out": int, "t0": T, "t1": T } ...],
///     "initial": int, "accept": [int...], "epsilon": "decimal" (probabilistic/quantum only) }
///
/// T is an array of 1-based targets (deterministic), an array of [from, to]
/// pairs (nondeterministic), an array of rows of decimal strings
/// (probabilistic, width_out x width_in), or an array of rows of
/// {"re": "decimal", "im": "decimal"} objects (quantum).
std::string serialize(Program const& p);

Program deserialize(std::string_view text);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_decimal(double v);
/// Throws std::invalid_argument unless the whole string is a decimal number.
double parse_decimal(std::string_view s);

} // namespace kobdd

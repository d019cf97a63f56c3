#pragma once

#include <stdexcept>
#include <string>

namespace qz {

// Every contract violation in the library throws qz::Error with one of these
// codes; callers (CLI, scan workers) dispatch on the code, tests assert it.
enum class Errc {
    invalid_argument,
    not_rd,              // (n, r) is not a Richaud-Degert pair
    not_squarefree,
    degenerate_radicand, // d <= 1
    mixed_radicands,     // arithmetic between elements of different fields
    non_integral_entry,  // a change-of-basis trace failed to be an integer
    unsupported_pattern, // no Dedekind-sum closed form applies
    zero_c,
    hypothesis_violation,
    uncovered_case,      // no closed form for this (congruence, kind) cell
    budget_exceeded,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace qz

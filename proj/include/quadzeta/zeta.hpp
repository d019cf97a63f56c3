#pragma once

#include <optional>
#include <span>
#include <string>

#include "quadzeta/quadfield.hpp"
#include "quadzeta/rational.hpp"

namespace qz {

// The five criterion families. Each one equates the divisor sum
// 60*zeta_k(-1) with a closed-form polynomial in (n, r[, p]) and
// characterizes a target class number (3, or 2 for T43).
enum class Family { T33, T34, T35, T42, T43 };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);
int family_target_h(Family f); // 2 for T43, 3 otherwise

struct CriterionFamily {
    Family tag = Family::T33;
    long long n = 0;
    long long r = 0;
    std::optional<long long> p;
};

// Validates the family's hypotheses; returns the radicand d = n^2 + r.
// Throws Errc::hypothesis_violation naming the failed condition.
long long criterion_radicand(const CriterionFamily& c);
long long criterion_discriminant(const CriterionFamily& c); // d, or 4d for T34

// 60 * zeta_k(-1) as a divisor sum over t^2 < D, t^2 = D mod 4; validates
// that D is a fundamental real quadratic discriminant.
Int zagier_sum(const Int& D);
Int zagier_sum(const Int& D, std::span<const std::uint64_t> sigma_table);
Rational zagier_zeta(const Int& D);

// Closed-form partial zeta values. Covered (congruence, kind) cells only;
// anything else throws Errc::uncovered_case.
Rational principal_zeta_closed(const RdField& f);
Rational nonprincipal_zeta_over2(const RdField& f); // d = 1 mod 8
Rational split_prime_zeta(const RdField& f, long long p); // d = 5 mod 8, r in {1,4}

// The right-hand side of the family's divisor-sum equality.
Rational criterion_rhs(const CriterionFamily& c);

struct CriterionResult {
    Int lhs;      // zagier_sum at the field discriminant
    Rational rhs; // criterion_rhs
    bool equal;   // exact equality (false whenever rhs is not an integer)
};

CriterionResult criterion_holds(const CriterionFamily& c);
CriterionResult criterion_holds(const CriterionFamily& c,
                                std::span<const std::uint64_t> sigma_table);

} // namespace qz

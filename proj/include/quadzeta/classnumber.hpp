#pragma once

#include <compare>
#include <vector>

#include "quadzeta/rational.hpp"

namespace qz {

// Primitive indefinite binary quadratic form A x^2 + B xy + C y^2 with
// discriminant B^2 - 4AC > 0, not a perfect square.
struct QuadraticForm {
    long long a = 0;
    long long b = 0;
    long long c = 0;

    friend auto operator<=>(const QuadraticForm&, const QuadraticForm&) = default;
};

long long form_discriminant(const QuadraticForm& f);

// Reduced: 0 < B < sqrt(D) and sqrt(D) - B < 2|A| < sqrt(D) + B.
bool is_reduced(const QuadraticForm& f);

// The unique reduced right neighbor (C, B', *) with B' = -B mod 2|C| in the
// window (sqrt(D) - 2|C|, sqrt(D)). The lead coefficient alternates sign
// each step, so every cycle has even length; iterating returns to the start.
QuadraticForm rho_step(const QuadraticForm& f);

// A reduced form properly equivalent to f, by finitely many rho-type steps.
QuadraticForm reduce(const QuadraticForm& f);

// One cycle of reduced forms, stored in rho order starting from the
// lexicographically least form; canonical_key() identifies the cycle.
struct ReductionCycle {
    std::vector<QuadraticForm> forms;
    const QuadraticForm& canonical_key() const { return forms.front(); }
};

// All cycles of reduced primitive forms of fundamental discriminant D,
// sorted by canonical key. size() = narrow class number h+.
std::vector<ReductionCycle> reduction_cycles(long long D);

long long narrow_class_number(long long D);

// Wide class number h(d) = h+ if N(eps) = -1, else h+/2 (unit norm from the
// continued-fraction oracle).
long long class_number(long long d);

} // namespace qz

#pragma once

#include "quadzeta/quadfield.hpp"
#include "quadzeta/rational.hpp"

namespace qz {

// Change-of-basis matrix M with eps * (r1, r2)^T = M * (r1, r2)^T.
// Invariants: det(M) = N(eps) in {+1, -1}, and b*c != 0.
struct TransformMatrix {
    Int a, b, c, d;

    Int det() const { return a * d - b * c; }
};

// A generalized Dedekind sum S^index(h, k), index in {2, 3}, k >= 1.
struct DedekindSumQuery {
    int index = 3;
    Int h;
    Int k;
};

// Entries by the four trace formulas a = Tr(r1 r2' eps / delta), etc.
// Verifies integrality of each trace, det(M) = N(eps), bc != 0, and the
// defining identity eps * r_i = (M r)_i exactly in field arithmetic.
TransformMatrix kim_matrix(const IdealData& a, const QuadElement& eps);

// Closed forms for S^2 and S^3. Patterns (h reduced into [0, k)):
//   h = +-1 (mod k), any k >= 1;
//   k = 2m, m even, h = m +- 1 (mod k);
//   k = 4m, m = 0 mod 4, h = +-(m +- 1) (mod k).
// S^3 is odd in h, S^2 even; anything else: Errc::unsupported_pattern.
// (The 4m forms fail an exact raw-sum cross-check for m = 2 mod 4, which
// no supported application produces, so those are rejected.)
Rational dedekind_sum_closed(const DedekindSumQuery& q);

// Direct evaluation of the index-3 sum: sum_{mu=1}^{k-1} (mu/k) B3({h mu/k})
// with B3(x) = x^3 - (3/2)x^2 + x/2. Exact; requires gcd(h, k) = 1.
// Cross-check only; no raw index-2 sum exists here (its normalization is
// not reproducible from the closed forms, which are normative).
Rational apostol_s3_raw(const Int& h, const Int& k);

// Lang's formula for zeta_k(-1, A) given an integral ideal in A^{-1} with
// basis {r1, r2} and its transform matrix. Dedekind sums are resolved by
// the closed forms, with the raw sum as an index-3 fallback.
Rational lang_partial_zeta(const IdealData& a, const TransformMatrix& M, int eps_norm);

} // namespace qz

#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "quadzeta/numtheory.hpp"
#include "quadzeta/rational.hpp"

namespace qz {

// Element x + y*sqrt(d) of Q(sqrt(d)), d squarefree >= 2. Elements of
// different radicands never mix (Errc::mixed_radicands).
struct QuadElement {
    long long d = 0;
    Rational x;
    Rational y;

    std::string str() const;
};

QuadElement quad(long long d, Rational x, Rational y);

QuadElement conj(const QuadElement& e);
Rational trace(const QuadElement& e);
Rational norm(const QuadElement& e);

QuadElement operator+(const QuadElement& a, const QuadElement& b);
QuadElement operator-(const QuadElement& a, const QuadElement& b);
QuadElement operator*(const QuadElement& a, const QuadElement& b);
QuadElement operator*(const Rational& s, const QuadElement& e);
QuadElement operator/(const QuadElement& a, const QuadElement& b); // b invertible
bool operator==(const QuadElement& a, const QuadElement& b);
inline bool operator!=(const QuadElement& a, const QuadElement& b) { return !(a == b); }

// Richaud-Degert kind: |r| = 1, |r| = 4, or wide (anything else).
enum class RdKind { unit_one, unit_four, wide };

// A classified R-D field: d = n^2 + r squarefree, r | 4n, -n < r <= n
// (plus the classical exceptional pairs (1,4) and (3,4)).
struct RdField {
    long long n = 0;
    long long r = 0;
    long long d = 0;
    long long discriminant = 0; // d if d = 1 mod 4, else 4d
    RdKind kind = RdKind::unit_one;
    int d_mod8 = 0;
    QuadElement eps;  // fundamental unit, from the closed forms
    int norm_eps = 0; // +1 or -1
};

const char* rd_kind_name(RdKind k);

// Validates the R-D conditions and populates everything, including the
// fundamental unit. Errors: not_rd, not_squarefree, degenerate_radicand.
RdField classify_rd(long long n, long long r);

// Degert's closed forms (with the classical d = 5 exception).
std::pair<QuadElement, int> fundamental_unit_closed(const RdField& f);

// Independent oracle: continued fraction of sqrt(d) (d = 2,3 mod 4) or
// (1+sqrt(d))/2 (d = 1 mod 4), exact integer convergents.
std::pair<QuadElement, int> fundamental_unit_cf(long long d);

// Norm of the fundamental unit only (period parity; no big convergents).
int fundamental_unit_cf_norm(long long d);

// Integral ideal with ordered basis {r1, r2}; delta = r1*r2' - r1'*r2 is a
// nonzero rational multiple of sqrt(d).
struct IdealData {
    RdField field;
    QuadElement r1;
    QuadElement r2;
    Int norm;
    QuadElement delta;
};

// The prime over 2 for d = 1 mod 8: basis {(1 +- sqrt(d))/2, 2}, norm 2.
IdealData ideal_over_2(const RdField& f, int sign);

// The conjugate pair over an odd prime p | n for d = 5 mod 8, r in {1,4}:
// basis {(p+2 +- sqrt(d))/2, p} for r = 4, {(1 +- sqrt(d))/2, p} for r = 1.
std::pair<IdealData, IdealData> ideal_over_p(const RdField& f, long long p);

} // namespace qz

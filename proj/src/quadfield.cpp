#include "quadzeta/quadfield.hpp"

#include <cstdlib>
#include <sstream>

namespace qz {

namespace {

void require_same_field(const QuadElement& a, const QuadElement& b) {
    if (a.d != b.d)
        fail(Errc::mixed_radicands, "QuadElement: mixing radicands " + std::to_string(a.d) +
                                        " and " + std::to_string(b.d));
}

long long checked_d(long long n, long long r) {
    if (n < 1) fail(Errc::not_rd, "classify_rd: n must be >= 1");
    if (r == 0) fail(Errc::not_rd, "classify_rd: r must be nonzero");
    return n * n + r;
}

} // namespace

QuadElement quad(long long d, Rational x, Rational y) {
    if (d < 2) fail(Errc::degenerate_radicand, "QuadElement: radicand must be >= 2");
    return QuadElement{d, std::move(x), std::move(y)};
}

std::string QuadElement::str() const {
    std::ostringstream os;
    os << x.str();
    if (!y.is_zero()) {
        os << (y.sign() < 0 ? " - " : " + ");
        Rational ay = y.sign() < 0 ? -y : y;
        if (ay != Rational(1)) os << ay.str() << "*";
        os << "sqrt(" << d << ")";
    }
    return os.str();
}

QuadElement conj(const QuadElement& e) { return QuadElement{e.d, e.x, -e.y}; }

Rational trace(const QuadElement& e) { return e.x + e.x; }

Rational norm(const QuadElement& e) { return e.x * e.x - Rational(make_int(e.d)) * e.y * e.y; }

QuadElement operator+(const QuadElement& a, const QuadElement& b) {
    require_same_field(a, b);
    return QuadElement{a.d, a.x + b.x, a.y + b.y};
}

QuadElement operator-(const QuadElement& a, const QuadElement& b) {
    require_same_field(a, b);
    return QuadElement{a.d, a.x - b.x, a.y - b.y};
}

QuadElement operator*(const QuadElement& a, const QuadElement& b) {
    require_same_field(a, b);
    Rational dd{make_int(a.d)};
    return QuadElement{a.d, a.x * b.x + dd * a.y * b.y, a.x * b.y + a.y * b.x};
}

QuadElement operator*(const Rational& s, const QuadElement& e) {
    return QuadElement{e.d, s * e.x, s * e.y};
}

QuadElement operator/(const QuadElement& a, const QuadElement& b) {
    require_same_field(a, b);
    Rational nb = norm(b);
    if (nb.is_zero()) fail(Errc::invalid_argument, "QuadElement: division by non-invertible element");
    QuadElement num = a * conj(b);
    return QuadElement{a.d, num.x / nb, num.y / nb};
}

bool operator==(const QuadElement& a, const QuadElement& b) {
    return a.d == b.d && a.x == b.x && a.y == b.y;
}

const char* rd_kind_name(RdKind k) {
    switch (k) {
        case RdKind::unit_one: return "|r|=1";
        case RdKind::unit_four: return "|r|=4";
        case RdKind::wide: return "wide";
    }
    return "?";
}

RdField classify_rd(long long n, long long r) {
    long long d = checked_d(n, r);
    if (d <= 1) fail(Errc::degenerate_radicand, "classify_rd: d = n^2 + r must be >= 2");
    if ((4 * n) % r != 0)
        fail(Errc::not_rd, "classify_rd: r does not divide 4n (n=" + std::to_string(n) +
                               ", r=" + std::to_string(r) + ")");
    // Degert window, plus the two classical exceptions d = 5 and d = 13
    // where r = 4 exceeds n but the closed-form unit is still fundamental.
    bool in_window = (-n < r && r <= n);
    bool classical_exception = (r == 4 && (n == 1 || n == 3));
    if (!in_window && !classical_exception)
        fail(Errc::not_rd, "classify_rd: r out of range (-n, n] (n=" + std::to_string(n) +
                               ", r=" + std::to_string(r) + ")");
    if (!is_squarefree(make_int(d)))
        fail(Errc::not_squarefree, "classify_rd: d = " + std::to_string(d) + " is not squarefree");

    RdField f;
    f.n = n;
    f.r = r;
    f.d = d;
    f.d_mod8 = static_cast<int>(d % 8);
    f.discriminant = (d % 4 == 1) ? d : 4 * d;
    long long ar = std::llabs(r);
    f.kind = ar == 1 ? RdKind::unit_one : (ar == 4 ? RdKind::unit_four : RdKind::wide);
    auto [eps, ne] = fundamental_unit_closed(f);
    f.eps = eps;
    f.norm_eps = ne;
    return f;
}

std::pair<QuadElement, int> fundamental_unit_closed(const RdField& f) {
    long long n = f.n, r = f.r, d = f.d;
    // d = 5 is the one radicand where a Degert pair ((2,1)) sits inside the
    // window yet the branch value 2+sqrt(5) is only the cube of the unit.
    if (d == 5) return {quad(5, Rational(Int(1), Int(2)), Rational(Int(1), Int(2))), -1};
    int sgn_r = r > 0 ? 1 : -1;
    long long ar = std::llabs(r);
    if (ar == 1) return {quad(d, Rational(make_int(n)), Rational(Int(1))), -sgn_r};
    if (ar == 4) return {quad(d, Rational(make_int(n), Int(2)), Rational(1, 2)), -sgn_r};
    return {quad(d, Rational(make_int(2 * n * n + r), make_int(ar)), Rational(make_int(2 * n), make_int(ar))), 1};
}

namespace {

// One continued-fraction step on the surd (P + sqrt(d))/Q.
struct SurdState {
    long long p, q;
};

// Starting surd whose expansion is purely periodic: a0 + sqrt(d) for
// d = 2,3 mod 4, (P0 + sqrt(d))/2 with P0 the largest odd < sqrt(d) for
// d = 1 mod 4. Both satisfy beta > 1 > -conj(beta) > 0.
SurdState cf_start(long long d, long long s0) {
    if (d % 4 == 1) {
        long long p0 = (s0 % 2 == 1) ? s0 : s0 - 1;
        return {p0, 2};
    }
    return {s0, 1};
}

long long cf_digit(const SurdState& s, long long s0) { return (s.p + s0) / s.q; }

SurdState cf_next(const SurdState& s, long long d, long long a) {
    long long p1 = a * s.q - s.p;
    long long q1 = (d - p1 * p1) / s.q;
    return {p1, q1};
}

void check_cf_domain(long long d) {
    if (d < 2) fail(Errc::degenerate_radicand, "fundamental_unit_cf: d must be >= 2");
    if (!is_squarefree(make_int(d)))
        fail(Errc::not_squarefree, "fundamental_unit_cf: d must be squarefree");
}

} // namespace

std::pair<QuadElement, int> fundamental_unit_cf(long long d) {
    check_cf_domain(d);
    long long s0 = static_cast<long long>(isqrt_u64(static_cast<std::uint64_t>(d)));
    SurdState start = cf_start(d, s0);
    SurdState cur = start;
    // Convergent denominators of the purely periodic expansion; after one
    // full period of length L, eps = q_{L-1} * beta0 + q_{L-2}.
    Int qm2 = 1, qm1 = 0;
    long long steps = 0;
    do {
        long long a = cf_digit(cur, s0);
        Int qk = make_int(a) * qm1 + qm2;
        qm2 = qm1;
        qm1 = qk;
        cur = cf_next(cur, d, a);
        ++steps;
    } while (!(cur.p == start.p && cur.q == start.q));

    Rational q0{make_int(start.q)};
    Rational x = Rational(qm1) * (Rational(make_int(start.p)) / q0) + Rational(qm2);
    Rational y = Rational(qm1) / q0;
    QuadElement eps = quad(d, x, y);
    int parity_norm = (steps % 2 == 0) ? 1 : -1;
    Rational ne = norm(eps);
    if (ne != Rational(Int(parity_norm)))
        fail(Errc::internal, "fundamental_unit_cf: norm/period parity mismatch at d=" +
                                 std::to_string(d));
    if (!(eps.x > Rational(Int(0)) && eps.y > Rational(Int(0))))
        fail(Errc::internal, "fundamental_unit_cf: unit not > 1 at d=" + std::to_string(d));
    return {eps, parity_norm};
}

int fundamental_unit_cf_norm(long long d) {
    check_cf_domain(d);
    long long s0 = static_cast<long long>(isqrt_u64(static_cast<std::uint64_t>(d)));
    SurdState start = cf_start(d, s0);
    SurdState cur = start;
    long long steps = 0;
    do {
        cur = cf_next(cur, d, cf_digit(cur, s0));
        ++steps;
    } while (!(cur.p == start.p && cur.q == start.q));
    return (steps % 2 == 0) ? 1 : -1;
}

IdealData ideal_over_2(const RdField& f, int sign) {
    if (sign != 1 && sign != -1)
        fail(Errc::invalid_argument, "ideal_over_2: sign must be +1 or -1");
    if (f.d_mod8 != 1)
        fail(Errc::hypothesis_violation,
             "ideal_over_2: 2 splits only for d = 1 mod 8 (d=" + std::to_string(f.d) + " = " +
                 std::to_string(f.d_mod8) + " mod 8)");
    IdealData a;
    a.field = f;
    a.r1 = quad(f.d, Rational(Int(1), Int(2)), Rational(Int(sign), Int(2)));
    a.r2 = quad(f.d, Rational(Int(2)), Rational(Int(0)));
    a.norm = 2;
    a.delta = a.r1 * conj(a.r2) - conj(a.r1) * a.r2; // = sign * 2 sqrt(d)
    return a;
}

std::pair<IdealData, IdealData> ideal_over_p(const RdField& f, long long p) {
    if (f.d_mod8 != 5)
        fail(Errc::hypothesis_violation,
             "ideal_over_p: requires d = 5 mod 8 (d=" + std::to_string(f.d) + ")");
    if (f.r != 1 && f.r != 4)
        fail(Errc::hypothesis_violation, "ideal_over_p: requires r = 1 or r = 4");
    if (p == 2) fail(Errc::hypothesis_violation, "ideal_over_p: p must be odd");
    if (p < 3 || !is_prime(make_int(p)))
        fail(Errc::hypothesis_violation, "ideal_over_p: p = " + std::to_string(p) + " is not an odd prime");
    if (f.n % p != 0)
        fail(Errc::hypothesis_violation, "ideal_over_p: p = " + std::to_string(p) +
                                             " does not divide n = " + std::to_string(f.n));
    // Generators (p, (p+2 +- sqrt(d))/2) for r = 4 and (p, (1 +- sqrt(d))/2)
    // for r = 1, converted to ordered bases {g, p} mirroring the over-2 case.
    long long t = (f.r == 4) ? p + 2 : 1;
    auto make = [&](int sign) {
        IdealData a;
        a.field = f;
        a.r1 = quad(f.d, Rational(make_int(t), Int(2)), Rational(Int(sign), Int(2)));
        a.r2 = quad(f.d, Rational(make_int(p)), Rational(Int(0)));
        a.norm = make_int(p);
        a.delta = a.r1 * conj(a.r2) - conj(a.r1) * a.r2; // = sign * p sqrt(d)
        return a;
    };
    return {make(1), make(-1)};
}

} // namespace qz

#include "quadzeta/dedekind.hpp"

namespace qz {

namespace {

Int as_integer(const Rational& r, const char* what) {
    if (!r.is_integer())
        fail(Errc::non_integral_entry,
             std::string("kim_matrix: ") + what + " = " + r.str() + " is not an integer");
    return r.num();
}

Rational ds1_s3(const Int& m, int sign) {
    Int m2 = m * m, m3 = m2 * m, m4 = m2 * m2;
    return Rational(Int(sign) * (-m4 + 5 * m2 - 4), 120 * m3);
}

Rational ds1_s2(const Int& m) {
    Int m2 = m * m, m3 = m2 * m, m4 = m2 * m2;
    return Rational(m4 + 10 * m2 - 6, 180 * m3);
}

// k = 2m: S^3(m+1, 2m) = -(m^4 - 50m^2 + 4)/(960 m^3), S^3(m-1, 2m) the
// negative; S^2(m +- 1, 2m) = (m^4 + 100m^2 - 6)/(1440 m^3).
Rational ds2_2m(int index, const Int& m, bool plus_one) {
    Int m2 = m * m, m3 = m2 * m, m4 = m2 * m2;
    if (index == 3) {
        Rational v(m4 - 50 * m2 + 4, 960 * m3);
        return plus_one ? -v : v;
    }
    return Rational(m4 + 100 * m2 - 6, 1440 * m3);
}

// k = 4m patterns; sign accounts for S^3 being odd in h.
Rational ds2_4m(int index, const Int& m, bool plus_one, int sign) {
    Int m2 = m * m, m3 = m2 * m, m4 = m2 * m2;
    if (index == 3) {
        Rational v = plus_one ? Rational(-m4 - 180 * m3 + 410 * m2 - 4, 7680 * m3)
                              : Rational(m4 - 180 * m3 - 410 * m2 + 4, 7680 * m3);
        return sign > 0 ? v : -v;
    }
    return Rational(m4 + 820 * m2 - 6, 11520 * m3);
}

// Periodic Bernoulli value B3({t/k}) as an exact rational, 0 <= t < k.
Rational bernoulli3_frac(const Int& t, const Int& k) {
    // B3(x) = x^3 - (3/2) x^2 + x/2 = x (x - 1/2)(x - 1); vanishes at 0.
    Rational x(t, k);
    return x * (x - Rational(1, 2)) * (x - Rational(1));
}

} // namespace

TransformMatrix kim_matrix(const IdealData& a, const QuadElement& eps) {
    if (a.delta.x != Rational(0) || a.delta.y.is_zero())
        fail(Errc::internal, "kim_matrix: delta is not a nonzero multiple of sqrt(d)");
    const QuadElement &r1 = a.r1, &r2 = a.r2;
    QuadElement epsc = conj(eps);
    TransformMatrix m;
    m.a = as_integer(trace(r1 * conj(r2) * eps / a.delta), "a");
    m.b = as_integer(trace(r1 * conj(r1) * epsc / a.delta), "b");
    m.c = as_integer(trace(r2 * conj(r2) * eps / a.delta), "c");
    m.d = as_integer(trace(r1 * conj(r2) * epsc / a.delta), "d");

    Rational ne = norm(eps);
    if (Rational(m.det()) != ne)
        fail(Errc::internal, "kim_matrix: det(M) != N(eps)");
    if (m.b == 0 || m.c == 0) fail(Errc::internal, "kim_matrix: bc = 0");
    // eps * (r1, r2) = M (r1, r2), exactly.
    if (eps * r1 != Rational(m.a) * r1 + Rational(m.b) * r2 ||
        eps * r2 != Rational(m.c) * r1 + Rational(m.d) * r2)
        fail(Errc::internal, "kim_matrix: basis transform identity failed");
    return m;
}

Rational dedekind_sum_closed(const DedekindSumQuery& q) {
    if (q.index != 2 && q.index != 3)
        fail(Errc::invalid_argument, "dedekind_sum_closed: index must be 2 or 3");
    if (q.k < 1) fail(Errc::invalid_argument, "dedekind_sum_closed: k must be >= 1");
    const Int& k = q.k;
    Int h = mod_floor(q.h, k);

    // h = +-1 (mod k). For k <= 2 the two residues coincide and the odd sum
    // vanishes, so the sign choice is immaterial there.
    if (h == mod_floor(Int(1), k)) return q.index == 3 ? ds1_s3(k, +1) : ds1_s2(k);
    if (h == mod_floor(Int(-1), k)) return q.index == 3 ? ds1_s3(k, -1) : ds1_s2(k);

    if (k % 4 == 0) {
        Int m = k / 2; // even by construction
        if (h == m + 1) return ds2_2m(q.index, m, true);
        if (h == m - 1) return ds2_2m(q.index, m, false);
        // note {m-1, m+1} is already closed under h -> k - h for k = 2m
    }
    if (k % 16 == 0) {
        Int m = k / 4; // the 4m closed forms need m = 0 mod 4 (see header)
        if (h == m + 1) return ds2_4m(q.index, m, true, +1);
        if (h == m - 1) return ds2_4m(q.index, m, false, +1);
        if (h == 3 * m - 1) return ds2_4m(q.index, m, true, -1);  // -(m+1) mod 4m
        if (h == 3 * m + 1) return ds2_4m(q.index, m, false, -1); // -(m-1) mod 4m
    }
    fail(Errc::unsupported_pattern, "dedekind_sum_closed: no closed form for S^" +
                                        std::to_string(q.index) + "(" + h.get_str() + ", " +
                                        k.get_str() + ")");
}

Rational apostol_s3_raw(const Int& h, const Int& k) {
    if (k < 1) fail(Errc::invalid_argument, "apostol_s3_raw: k must be >= 1");
    Int g;
    mpz_gcd(g.get_mpz_t(), h.get_mpz_t(), k.get_mpz_t());
    if (k > 1 && g != 1)
        fail(Errc::invalid_argument, "apostol_s3_raw: gcd(h, k) must be 1");
    Rational s(0);
    for (Int mu = 1; mu < k; ++mu) {
        Int t = mod_floor(h * mu, k);
        s += Rational(mu, k) * bernoulli3_frac(t, k);
    }
    return s;
}

Rational lang_partial_zeta(const IdealData& a, const TransformMatrix& M, int eps_norm) {
    if (eps_norm != 1 && eps_norm != -1)
        fail(Errc::invalid_argument, "lang_partial_zeta: eps_norm must be +-1");
    if (M.c == 0) fail(Errc::zero_c, "lang_partial_zeta: c = 0 contradicts the transform matrix");
    if (a.delta.x != Rational(0) || a.delta.y.is_zero())
        fail(Errc::internal, "lang_partial_zeta: delta is not a nonzero multiple of sqrt(d)");

    Int k = abs(M.c);
    auto s3 = [&](const Int& h) {
        try {
            return dedekind_sum_closed({3, h, k});
        } catch (const Error& e) {
            if (e.code() != Errc::unsupported_pattern) throw;
            return apostol_s3_raw(mod_floor(h, k), k);
        }
    };
    auto s2 = [&](const Int& h) { return dedekind_sum_closed({2, h, k}); };

    int sgn_c = M.c > 0 ? 1 : -1;
    int sgn_delta = a.delta.y.sign();
    Int trace_m = M.a + M.d;
    Rational c3s{M.c * M.c * M.c * sgn_c}; // |c|^3

    Rational bracket = Rational(trace_m * trace_m * trace_m) -
                       Rational(6 * trace_m * eps_norm) -
                       Rational(240) * c3s * s3(M.a) +
                       Rational(180) * Rational(M.a) * c3s * s2(M.a) -
                       Rational(240) * c3s * s3(M.d) +
                       Rational(180) * Rational(M.d) * c3s * s2(M.d);

    Rational prefactor =
        Rational(Int(sgn_delta)) * norm(a.r2) /
        (Rational(360) * Rational(a.norm) * Rational(M.c * M.c * M.c));
    return prefactor * bracket;
}

} // namespace qz

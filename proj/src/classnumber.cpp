#include "quadzeta/classnumber.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>

#include "quadzeta/numtheory.hpp"
#include "quadzeta/quadfield.hpp"

namespace qz {

namespace {

long long ll_isqrt(long long n) { return static_cast<long long>(isqrt_u64(static_cast<std::uint64_t>(n))); }

long long mod_pos(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

void check_indefinite(const QuadraticForm& f, long long& D, long long& s0) {
    D = form_discriminant(f);
    if (D <= 0) fail(Errc::invalid_argument, "form discriminant must be positive");
    s0 = ll_isqrt(D);
    if (s0 * s0 == D) fail(Errc::invalid_argument, "form discriminant must not be a square");
    long long g = std::gcd(std::gcd(std::llabs(f.a), std::llabs(f.b)), std::llabs(f.c));
    if (g != 1) fail(Errc::invalid_argument, "form must be primitive");
}

void check_fundamental(long long D) {
    if (D <= 0 || (D % 4 != 0 && mod_pos(D, 4) != 1))
        fail(Errc::invalid_argument, "not a discriminant: " + std::to_string(D));
    long long s0 = ll_isqrt(D);
    if (s0 * s0 == D) fail(Errc::invalid_argument, "discriminant is a perfect square");
    if (D % 4 == 0) {
        long long d = D / 4;
        if (mod_pos(d, 4) != 2 && mod_pos(d, 4) != 3)
            fail(Errc::invalid_argument,
                 "non-fundamental discriminant " + std::to_string(D) + " (D/4 = 1 mod 4)");
        if (!is_squarefree(make_int(d)))
            fail(Errc::not_squarefree, "non-fundamental discriminant " + std::to_string(D));
    } else if (!is_squarefree(make_int(D))) {
        fail(Errc::not_squarefree, "non-fundamental discriminant " + std::to_string(D));
    }
}

} // namespace

long long form_discriminant(const QuadraticForm& f) { return f.b * f.b - 4 * f.a * f.c; }

bool is_reduced(const QuadraticForm& f) {
    long long D = form_discriminant(f);
    if (D <= 0) return false;
    long long s0 = ll_isqrt(D);
    if (s0 * s0 == D) return false;
    long long aa = 2 * std::llabs(f.a);
    // integer form of 0 < B < sqrt(D), sqrt(D) - B < 2|A| < sqrt(D) + B
    return f.b >= 1 && f.b <= s0 && aa > s0 - f.b && aa <= s0 + f.b;
}

QuadraticForm rho_step(const QuadraticForm& f) {
    if (!is_reduced(f)) fail(Errc::invalid_argument, "rho_step: form is not reduced");
    long long D = form_discriminant(f);
    long long s0 = ll_isqrt(D);
    long long twoc = 2 * std::llabs(f.c);
    long long base = s0 - twoc + 1; // least integer > sqrt(D) - 2|C|
    long long b1 = base + mod_pos(-f.b - base, twoc);
    long long c1 = (b1 * b1 - D) / (4 * f.c);
    QuadraticForm g{f.c, b1, c1};
    if (!is_reduced(g)) fail(Errc::internal, "rho_step: neighbor is not reduced");
    return g;
}

QuadraticForm reduce(const QuadraticForm& f) {
    long long D, s0;
    check_indefinite(f, D, s0);
    QuadraticForm g = f;
    for (int guard = 0; guard < 100000; ++guard) {
        if (is_reduced(g)) return g;
        // normalization step: replace (A,B,C) by (C, B', *) with B' = -B
        // mod 2|C| in the window that shrinks |C| toward the reduced strip
        long long twoc = 2 * std::llabs(g.c);
        long long b1;
        if (std::llabs(g.c) > s0) {
            b1 = -std::llabs(g.c) + 1 + mod_pos(-g.b + std::llabs(g.c) - 1, twoc);
        } else {
            b1 = s0 - twoc + 1 + mod_pos(-g.b - (s0 - twoc + 1), twoc);
        }
        long long c1 = (b1 * b1 - D) / (4 * g.c);
        g = QuadraticForm{g.c, b1, c1};
    }
    fail(Errc::internal, "reduce: did not terminate");
}

std::vector<ReductionCycle> reduction_cycles(long long D) {
    check_fundamental(D);
    long long s0 = ll_isqrt(D);

    // Enumerate every reduced form: 1 <= B <= s0, 4A | B^2 - D, both signs
    // of the lead coefficient.
    std::map<QuadraticForm, bool> seen; // form -> visited
    for (long long a = 1; a <= s0; ++a) {
        long long blo = std::max({1ll, s0 - 2 * a + 1, 2 * a - s0});
        for (long long b = blo; b <= s0; ++b) {
            if ((D - b * b) % (4 * a) != 0) continue;
            long long c = -((D - b * b) / (4 * a));
            if (std::gcd(std::gcd(a, b), std::llabs(c)) != 1)
                fail(Errc::internal, "imprimitive reduced form at fundamental discriminant");
            seen.emplace(QuadraticForm{a, b, c}, false);
            seen.emplace(QuadraticForm{-a, b, -c}, false);
        }
    }

    std::vector<ReductionCycle> cycles;
    for (auto& [start, visited] : seen) {
        if (visited) continue;
        ReductionCycle cyc;
        QuadraticForm g = start;
        do {
            auto it = seen.find(g);
            if (it == seen.end())
                fail(Errc::internal, "cycle left the enumerated reduced set");
            it->second = true;
            cyc.forms.push_back(g);
            g = rho_step(g);
        } while (!(g == start));
        // rotate so the lexicographically least form leads
        auto least = std::min_element(cyc.forms.begin(), cyc.forms.end());
        std::rotate(cyc.forms.begin(), least, cyc.forms.end());
        cycles.push_back(std::move(cyc));
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const ReductionCycle& x, const ReductionCycle& y) {
                  return x.canonical_key() < y.canonical_key();
              });
    return cycles;
}

long long narrow_class_number(long long D) {
    return static_cast<long long>(reduction_cycles(D).size());
}

long long class_number(long long d) {
    if (d < 2) fail(Errc::invalid_argument, "class_number: d must be >= 2");
    if (!is_squarefree(make_int(d)))
        fail(Errc::not_squarefree, "class_number: d must be squarefree");
    long long D = mod_pos(d, 4) == 1 ? d : 4 * d;
    long long hplus = narrow_class_number(D);
    int norm_eps = fundamental_unit_cf_norm(d);
    if (norm_eps == -1) return hplus;
    if (hplus % 2 != 0)
        fail(Errc::internal, "class_number: h+ odd with N(eps) = +1 at d=" + std::to_string(d));
    return hplus / 2;
}

} // namespace qz

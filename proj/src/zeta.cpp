#include "quadzeta/zeta.hpp"

#include <array>
#include <cstdlib>

namespace qz {

namespace {

void check_discriminant(const Int& D) {
    if (D <= 0) fail(Errc::invalid_argument, "zagier_sum: discriminant must be positive");
    Int m4 = mod_floor(D, 4);
    if (m4 != 0 && m4 != 1)
        fail(Errc::invalid_argument, "zagier_sum: discriminant must be 0 or 1 mod 4");
    if (is_perfect_square(D))
        fail(Errc::invalid_argument, "zagier_sum: discriminant must not be a perfect square");
    if (m4 == 0) {
        Int d = D / 4;
        Int dm4 = mod_floor(d, 4);
        if (dm4 != 2 && dm4 != 3)
            fail(Errc::invalid_argument,
                 "zagier_sum: D/4 must be 2 or 3 mod 4 for an even fundamental discriminant");
        if (!is_squarefree(d))
            fail(Errc::not_squarefree, "zagier_sum: radicand D/4 must be squarefree");
    } else if (!is_squarefree(D)) {
        fail(Errc::not_squarefree, "zagier_sum: odd discriminant must be squarefree");
    }
}

template <typename SigmaFn>
Int zagier_sum_impl(const Int& D, SigmaFn&& sig) {
    check_discriminant(D);
    // t runs over both signs with t^2 = D mod 4; enumerate t >= 0 and double
    // the positive terms. t = 0 occurs only for D = 0 mod 4.
    bool d_odd = mpz_odd_p(D.get_mpz_t()) != 0;
    Int sum = 0;
    if (!d_odd) sum += sig(D / 4);
    for (Int t = d_odd ? 1 : 2; t * t < D; t += 2) sum += 2 * sig((D - t * t) / 4);
    return sum;
}

Rational polyval_div(const Int& numerator, const Int& denominator) {
    return Rational(numerator, denominator);
}

} // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::T33: return "T33";
        case Family::T34: return "T34";
        case Family::T35: return "T35";
        case Family::T42: return "T42";
        case Family::T43: return "T43";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
    if (name == "T33") return Family::T33;
    if (name == "T34") return Family::T34;
    if (name == "T35") return Family::T35;
    if (name == "T42") return Family::T42;
    if (name == "T43") return Family::T43;
    return std::nullopt;
}

int family_target_h(Family f) { return f == Family::T43 ? 2 : 3; }

long long criterion_radicand(const CriterionFamily& c) {
    long long n = c.n, r = c.r;
    if (n < 1) fail(Errc::hypothesis_violation, "criterion: n must be >= 1");
    long long d = n * n + r;
    auto need = [&](bool ok, const std::string& what) {
        if (!ok) fail(Errc::hypothesis_violation, "criterion " + std::string(family_name(c.tag)) +
                                                      ": " + what);
    };
    switch (c.tag) {
        case Family::T33:
            need(r == 1, "requires r = 1");
            need(d % 8 == 1, "requires d = n^2+1 = 1 mod 8");
            need(!c.p.has_value(), "takes no prime parameter");
            break;
        case Family::T34:
            need(r == 1, "requires r = 1");
            need(d % 4 == 2, "requires d = n^2+1 = 2 mod 4");
            need(c.p.has_value(), "requires an odd prime p | n");
            break;
        case Family::T35:
            need(r != 0 && std::llabs(r) != 1 && std::llabs(r) != 4, "requires |r| not in {1,4}");
            need(-n < r && r <= n && (4 * n) % r == 0, "requires an R-D pair");
            need(d % 8 == 1, "requires d = 1 mod 8");
            need(!c.p.has_value(), "takes no prime parameter");
            break;
        case Family::T42:
        case Family::T43:
            need(r == 1 || r == 4, "requires r in {1,4}");
            need(((d % 8) + 8) % 8 == 5, "requires d = 5 mod 8");
            need(c.p.has_value(), "requires an odd prime p | n");
            break;
    }
    if (c.p) {
        long long p = *c.p;
        need(p >= 3 && p % 2 == 1 && is_prime(make_int(p)), "p must be an odd prime");
        need(n % p == 0, "p must divide n");
        if (c.tag == Family::T42 || c.tag == Family::T43) {
            if (r == 4) need(n != p, "requires n != p when r = 4");
            if (r == 1) need(n != 2 * p, "requires n != 2p when r = 1");
        }
    }
    if (d < 2) fail(Errc::hypothesis_violation, "criterion: d = n^2 + r must be >= 2");
    if (!is_squarefree(make_int(d)))
        fail(Errc::hypothesis_violation,
             "criterion: d = " + std::to_string(d) + " must be squarefree");
    return d;
}

long long criterion_discriminant(const CriterionFamily& c) {
    long long d = criterion_radicand(c);
    return d % 4 == 1 ? d : 4 * d;
}

Int zagier_sum(const Int& D) {
    return zagier_sum_impl(D, [](const Int& m) { return sigma(m); });
}

Int zagier_sum(const Int& D, std::span<const std::uint64_t> sigma_table) {
    return zagier_sum_impl(D, [&](const Int& m) -> Int {
        if (m.fits_ulong_p()) {
            unsigned long v = m.get_ui();
            if (v < sigma_table.size()) return Int(sigma_table[v]);
        }
        return sigma(m);
    });
}

Rational zagier_zeta(const Int& D) { return Rational(zagier_sum(D), Int(60)); }

Rational principal_zeta_closed(const RdField& f) {
    Int n = make_int(f.n), r = make_int(f.r);
    if (f.d_mod8 == 1) {
        if (f.kind == RdKind::unit_one) return polyval_div(n * n * n + 14 * n, Int(360));
        if (f.kind == RdKind::wide)
            return polyval_div(2 * n * n * n * (r * r + 1) + n * (3 * r * r * r + 50 * r * r + 3 * r),
                               720 * r * r);
        fail(Errc::uncovered_case, "principal_zeta_closed: |r| = 4 cannot occur with d = 1 mod 8");
    }
    if (f.d_mod8 == 5) {
        if (f.r == 4) return polyval_div(n * n * n + 11 * n, Int(360));
        if (f.r == 1) return polyval_div(n * n * n + 14 * n, Int(360));
        fail(Errc::uncovered_case,
             "principal_zeta_closed: no closed form for d = 5 mod 8 with r not in {1,4}");
    }
    fail(Errc::uncovered_case, "principal_zeta_closed: no closed form for d = " +
                                   std::to_string(f.d_mod8) + " mod 8");
}

Rational nonprincipal_zeta_over2(const RdField& f) {
    if (f.d_mod8 != 1)
        fail(Errc::hypothesis_violation,
             "nonprincipal_zeta_over2: requires d = 1 mod 8 (d=" + std::to_string(f.d) + ")");
    Int n = make_int(f.n), r = make_int(f.r);
    if (f.kind == RdKind::unit_one) return polyval_div(n * n * n + 104 * n, Int(1440));
    if (f.kind == RdKind::wide)
        return polyval_div(2 * n * n * n * (r * r + 1) + n * (3 * r * r * r + 410 * r * r + 3 * r),
                           2880 * r * r);
    fail(Errc::uncovered_case, "nonprincipal_zeta_over2: |r| = 4 cannot occur with d = 1 mod 8");
}

Rational split_prime_zeta(const RdField& f, long long p) {
    if (f.d_mod8 != 5)
        fail(Errc::hypothesis_violation,
             "split_prime_zeta: requires d = 5 mod 8 (d=" + std::to_string(f.d) + ")");
    if (f.r != 1 && f.r != 4)
        fail(Errc::hypothesis_violation, "split_prime_zeta: requires r in {1,4}");
    if (p < 3 || p % 2 == 0 || !is_prime(make_int(p)) || f.n % p != 0)
        fail(Errc::hypothesis_violation,
             "split_prime_zeta: p must be an odd prime dividing n");
    Int n = make_int(f.n), q = make_int(p);
    Int q2 = q * q, q4 = q2 * q2;
    if (f.r == 4) return polyval_div(n * n * n + n * (q4 + 10 * q2), 360 * q2);
    return polyval_div(n * n * n + n * (4 * q4 + 10 * q2), 360 * q2);
}

Rational criterion_rhs(const CriterionFamily& c) {
    criterion_radicand(c); // hypothesis validation
    Int n = make_int(c.n), r = make_int(c.r);
    switch (c.tag) {
        case Family::T33:
            return polyval_div(n * n * n + 44 * n, Int(4));
        case Family::T34: {
            Int p = make_int(*c.p), p2 = p * p, p4 = p2 * p2;
            return Rational(2 * n * n * n + 13 * n, 3) +
                   Rational(8 * n * n * n + 2 * n * (p4 + 10 * p2), 3 * p2);
        }
        case Family::T35:
            return polyval_div(2 * n * n * n * (r * r + 1) + n * (3 * r * r * r + 170 * r * r + 3 * r),
                               8 * r * r);
        case Family::T42: {
            Int p = make_int(*c.p), p2 = p * p, p4 = p2 * p2;
            if (c.r == 4)
                return Rational(n * n * n + 11 * n, 6) +
                       Rational(n * n * n + n * (p4 + 10 * p2), 3 * p2);
            return Rational(n * n * n + 14 * n, 6) +
                   Rational(n * n * n + n * (4 * p4 + 10 * p2), 3 * p2);
        }
        case Family::T43: {
            Int p = make_int(*c.p), p2 = p * p, p4 = p2 * p2;
            if (c.r == 4)
                return Rational(n * n * n + 11 * n, 6) +
                       Rational(n * n * n + n * (p4 + 10 * p2), 6 * p2);
            return Rational(n * n * n + 14 * n, 6) +
                   Rational(n * n * n + n * (4 * p4 + 10 * p2), 6 * p2);
        }
    }
    fail(Errc::internal, "criterion_rhs: unreachable");
}

namespace {

template <typename ZagierFn>
CriterionResult criterion_holds_impl(const CriterionFamily& c, ZagierFn&& zag) {
    CriterionResult res;
    res.rhs = criterion_rhs(c);
    res.lhs = zag(make_int(criterion_discriminant(c)));
    res.equal = res.rhs.is_integer() && res.rhs.num() == res.lhs;
    return res;
}

} // namespace

CriterionResult criterion_holds(const CriterionFamily& c) {
    return criterion_holds_impl(c, [](const Int& D) { return zagier_sum(D); });
}

CriterionResult criterion_holds(const CriterionFamily& c,
                                std::span<const std::uint64_t> sigma_table) {
    return criterion_holds_impl(c, [&](const Int& D) { return zagier_sum(D, sigma_table); });
}

} // namespace qz

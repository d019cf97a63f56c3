#include <doctest.h>

#include <map>
#include <set>

#include "quadzeta/classnumber.hpp"
#include "quadzeta/dedekind.hpp"
#include "quadzeta/zeta.hpp"

using namespace qz;

namespace {

Rational rat(long long num, long long den = 1) { return Rational(make_int(num), make_int(den)); }

// Independent oracle: the divisor sum by literal enumeration over signed t.
Int naive_zagier(long long D) {
    Int s = 0;
    long long s0 = static_cast<long long>(isqrt_u64(static_cast<std::uint64_t>(D)));
    for (long long t = -s0; t <= s0; ++t) {
        if (t * t >= D) continue;
        if (((t * t - D) % 4 + 4) % 4 != 0) continue;
        s += sigma(make_int((D - t * t) / 4));
    }
    return s;
}

// Deduplicated R-D fields with d = 1 mod 8, d <= max_d (first pair wins).
std::map<long long, RdField> rd_fields_mod8_1(long long max_d) {
    std::map<long long, RdField> out;
    for (long long n = 1; n * n - n <= max_d; ++n) {
        for (long long r = -(n - 1); r <= n; ++r) {
            if (r == 0 || (4 * n) % r != 0) continue;
            long long d = n * n + r;
            if (d < 2 || d > max_d || d % 8 != 1) continue;
            if (!is_squarefree(make_int(d))) continue;
            out.emplace(d, classify_rd(n, r));
        }
    }
    return out;
}

} // namespace

TEST_SUITE("zeta") {

TEST_CASE("zagier_sum: point values and the signed-t oracle") {
    CHECK(zagier_sum(Int(5)) == 2);    // t = +-1
    CHECK(zagier_sum(Int(17)) == 20);  // 2*(7+3)
    CHECK(zagier_sum(Int(40)) == 70);  // 18 + 2*(13+12+1)
    CHECK(zagier_sum(Int(8)) == 5);
    CHECK(zagier_sum(Int(257)) == 1200);
    CHECK(zagier_sum(Int(321)) == 1980);
    CHECK(zagier_sum(Int(473)) == 3060);
    for (long long D : {5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 40, 321, 473, 997})
        CHECK(zagier_sum(make_int(D)) == naive_zagier(D));
    CHECK_THROWS_AS(zagier_sum(Int(7)), Error);     // 7 = 3 mod 4
    CHECK_THROWS_AS(zagier_sum(Int(16)), Error);    // perfect square
    CHECK_THROWS_AS(zagier_sum(Int(45)), Error);    // 45 = 9*5 not squarefree
    CHECK_THROWS_AS(zagier_sum(Int(20)), Error);    // D/4 = 5 = 1 mod 4: non-fundamental
    CHECK_THROWS_AS(zagier_sum(Int(-4)), Error);
}

TEST_CASE("zagier_sum with a sigma table matches the pointwise path") {
    auto table = sigma_sieve(300);
    for (long long D : {5, 8, 17, 40, 321, 473, 2917}) // table too short for 2917: falls back
        CHECK(zagier_sum(make_int(D), table) == zagier_sum(make_int(D)));
}

TEST_CASE("zagier_zeta") {
    CHECK(zagier_zeta(Int(5)) == rat(1, 30));
    CHECK(zagier_zeta(Int(17)) == rat(1, 3));
    CHECK(zagier_zeta(Int(321)) == rat(33));
    CHECK(rat(60) * zagier_zeta(Int(473)) == Rational(zagier_sum(Int(473))));
}

TEST_CASE("principal partial zeta closed forms") {
    CHECK(principal_zeta_closed(classify_rd(4, 1)) == rat(1, 3));   // (64+56)/360
    CHECK(principal_zeta_closed(classify_rd(18, -3)) == rat(19));   // wide
    CHECK(principal_zeta_closed(classify_rd(9, 4)) == rat(23, 10)); // (729+99)/360
    CHECK(principal_zeta_closed(classify_rd(14, 1)) == rat(49, 6)); // d=197=5 mod 8: (2744+196)/360
    try {
        principal_zeta_closed(classify_rd(5, 1)); // d = 26 = 2 mod 4: no closed form
        FAIL("uncovered case accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::uncovered_case);
    }
    CHECK_THROWS_AS(principal_zeta_closed(classify_rd(5, -4)), Error); // d = 21 = 5 mod 8 wide-r cell
}

TEST_CASE("nonprincipal over-2 closed forms") {
    CHECK(nonprincipal_zeta_over2(classify_rd(4, 1)) == rat(1, 3)); // (64+416)/1440
    CHECK(nonprincipal_zeta_over2(classify_rd(16, 1)) == rat(4));   // (4096+1664)/1440
    CHECK(nonprincipal_zeta_over2(classify_rd(18, -3)) == rat(7));
    CHECK_THROWS_AS(nonprincipal_zeta_over2(classify_rd(9, 4)), Error); // d = 85 = 5 mod 8
}

TEST_CASE("split-prime partial zeta closed forms") {
    CHECK(split_prime_zeta(classify_rd(9, 4), 3) == rat(7, 10));   // (729+1539)/3240
    CHECK(split_prime_zeta(classify_rd(15, 4), 3) == rat(11, 6));  // (3375+2565)/3240
    CHECK(split_prime_zeta(classify_rd(15, 4), 5) == rat(11, 6));  // (3375+13125)/9000
    CHECK_THROWS_AS(split_prime_zeta(classify_rd(4, 1), 3), Error);
    CHECK_THROWS_AS(split_prime_zeta(classify_rd(9, 4), 2), Error);
}

TEST_CASE("criterion right-hand sides") {
    CHECK(criterion_rhs({Family::T33, 16, 1, {}}) == rat(1200));
    CHECK(criterion_rhs({Family::T35, 18, -3, {}}) == rat(1980));
    CHECK(criterion_rhs({Family::T35, 22, -11, {}}) == rat(3060));
    CHECK(criterion_rhs({Family::T43, 9, 4, 3}) == rat(180)); // 138 + 42
    CHECK(criterion_rhs({Family::T34, 3, 1, 3}) == rat(77));  // 31 + 46
    CHECK(criterion_rhs({Family::T42, 54, 1, 3}) == rat(33030)); // 26370 + 6660

    try {
        criterion_rhs({Family::T33, 15, 1, {}}); // d = 226 = 2 mod 4
        FAIL("hypothesis not enforced");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::hypothesis_violation);
    }
    CHECK_THROWS_AS(criterion_rhs({Family::T42, 9, 4, 9}), Error);  // p not prime
    CHECK_THROWS_AS(criterion_rhs({Family::T42, 3, 4, 3}), Error);  // n = p excluded
    CHECK_THROWS_AS(criterion_rhs({Family::T43, 6, 1, 3}), Error);  // n = 2p excluded
    CHECK_THROWS_AS(criterion_rhs({Family::T42, 15, 4, 7}), Error); // p does not divide n
    CHECK_THROWS_AS(criterion_rhs({Family::T35, 18, -3, 3}), Error); // stray p
}

TEST_CASE("criterion_holds") {
    auto r257 = criterion_holds({Family::T33, 16, 1, {}});
    CHECK(r257.lhs == 1200);
    CHECK(r257.rhs == rat(1200));
    CHECK(r257.equal);

    auto r10 = criterion_holds({Family::T34, 3, 1, 3});
    CHECK(r10.lhs == 70);
    CHECK(r10.rhs == rat(77));
    CHECK_FALSE(r10.equal);

    auto r33 = criterion_holds({Family::T35, 6, -3, {}});
    CHECK(r33.lhs == 60);
    CHECK(r33.rhs == rat(180)); // (4320+8640)/72
    CHECK_FALSE(r33.equal);
}

TEST_CASE("closed partial zetas are strictly positive on their domains") {
    for (long long n = 1; n <= 100; ++n) {
        for (long long r = -(n - 1); r <= n; ++r) {
            if (r == 0 || (4 * n) % r != 0) continue;
            long long d = n * n + r;
            if (d < 2 || !is_squarefree(make_int(d))) continue;
            RdField f = classify_rd(n, r);
            if (f.d_mod8 == 1) {
                if (f.kind != RdKind::unit_four) CHECK(principal_zeta_closed(f) > rat(0));
                CHECK(nonprincipal_zeta_over2(f) > rat(0));
            }
            if (f.d_mod8 == 5 && (r == 1 || r == 4)) {
                CHECK(principal_zeta_closed(f) > rat(0));
                for (const auto& p : odd_prime_divisors(make_int(n)))
                    CHECK(split_prime_zeta(f, p.get_si()) > rat(0));
            }
        }
    }
}

TEST_CASE("two-method agreement: Lang = over-2 closed form, d = 1 mod 8, d <= 1e4") {
    auto fields = rd_fields_mod8_1(10'000);
    CHECK(fields.size() > 30);
    for (const auto& [d, f] : fields) {
        IdealData a = ideal_over_2(f, +1);
        Rational lang = lang_partial_zeta(a, kim_matrix(a, f.eps), f.norm_eps);
        CHECK(lang == nonprincipal_zeta_over2(f));
    }
}

TEST_CASE("class-sum identities against the form-cycle oracle") {
    // d = 1 mod 8: h = 1 -> zeta = principal; h = 3 -> principal + 2*over2
    std::set<long long> h1, h3;
    for (const auto& [d, f] : rd_fields_mod8_1(100'000)) {
        long long h = class_number(d);
        if (h == 1) {
            CHECK(zagier_zeta(make_int(d)) == principal_zeta_closed(f));
            h1.insert(d);
        } else if (h == 3) {
            CHECK(zagier_zeta(make_int(d)) ==
                  principal_zeta_closed(f) + rat(2) * nonprincipal_zeta_over2(f));
            h3.insert(d);
        }
    }
    CHECK(h1.count(17) == 1);
    CHECK(h1.count(33) == 1);
    CHECK(h3.count(257) == 1);
    CHECK(h3.count(321) == 1);
    CHECK(h3.count(473) == 1);

    // d = 5 mod 8, r in {1,4}, h = 2: zeta = principal + split-prime
    int checked2 = 0;
    for (long long n = 1; n <= 316; ++n) {
        for (long long r : {1ll, 4ll}) {
            long long d = n * n + r;
            if (d > 100'000 || d % 8 != 5 || !is_squarefree(make_int(d))) continue;
            auto ps = odd_prime_divisors(make_int(n));
            if (ps.empty()) continue;
            long long p = ps.front().get_si();
            if ((r == 4 && n == p) || (r == 1 && n == 2 * p)) continue;
            RdField f = classify_rd(n, r);
            if (class_number(d) != 2) continue;
            CHECK(zagier_zeta(make_int(d)) ==
                  principal_zeta_closed(f) + split_prime_zeta(f, p));
            ++checked2;
        }
    }
    CHECK(checked2 >= 2); // 85 and 629 at least

    // d = 5 mod 8, h = 3: zeta = principal + 2 * split-prime at the table radicands
    const std::vector<std::tuple<long long, long long, long long>> h3_rows = {
        {15, 4, 3}, {15, 4, 5}, {27, 4, 3}, {35, 4, 5}, {35, 4, 7}, {54, 1, 3}};
    for (auto [n, r, p] : h3_rows) {
        long long d = n * n + r;
        REQUIRE(class_number(d) == 3);
        RdField f = classify_rd(n, r);
        CHECK(zagier_zeta(make_int(d % 4 == 1 ? d : 4 * d)) ==
              principal_zeta_closed(f) + rat(2) * split_prime_zeta(f, p));
    }
}

TEST_CASE("principal = over-2 exactly at d = 17 and d = 33 (d <= 1e5)") {
    std::set<long long> coincidences;
    for (const auto& [d, f] : rd_fields_mod8_1(100'000)) {
        if (principal_zeta_closed(f) == nonprincipal_zeta_over2(f)) coincidences.insert(d);
    }
    CHECK(coincidences == std::set<long long>{17, 33});
}

} // TEST_SUITE

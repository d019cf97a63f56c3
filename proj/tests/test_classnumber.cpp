#include <doctest.h>

#include <map>
#include <set>

#include "quadzeta/classnumber.hpp"
#include "quadzeta/numtheory.hpp"
#include "quadzeta/quadfield.hpp"
#include "quadzeta/zeta.hpp"

using namespace qz;

namespace {

bool fundamental(long long D) {
    if (D <= 1) return false;
    long long s = static_cast<long long>(isqrt_u64(static_cast<std::uint64_t>(D)));
    if (s * s == D) return false;
    if (D % 4 == 1) return is_squarefree(make_int(D));
    if (D % 4 != 0) return false;
    long long d = D / 4;
    return (d % 4 == 2 || d % 4 == 3) && is_squarefree(make_int(d));
}

} // namespace

TEST_SUITE("classnumber") {

TEST_CASE("reduced predicate and reduce()") {
    QuadraticForm f{1, 1, -1}; // D = 5
    CHECK(is_reduced(f));
    CHECK(reduce(f) == f);

    QuadraticForm g{1, 5, 2}; // D = 17
    CHECK_FALSE(is_reduced(g));
    QuadraticForm gr = reduce(g);
    CHECK(is_reduced(gr));
    CHECK(form_discriminant(gr) == 17);

    QuadraticForm h{-1, 1, 1}; // D = 5
    CHECK(is_reduced(h));
    // principal cycle membership: (1,1,-1) -> (-1,1,1) -> (1,1,-1)
    CHECK(rho_step(QuadraticForm{1, 1, -1}) == h);
    CHECK(rho_step(h) == QuadraticForm{1, 1, -1});

    CHECK_THROWS_AS(reduce(QuadraticForm{1, 0, 1}), Error);  // D = -4
    CHECK_THROWS_AS(reduce(QuadraticForm{1, 3, 0}), Error);  // D = 9 square
    CHECK_THROWS_AS(reduce(QuadraticForm{2, 2, -2}), Error); // imprimitive
    CHECK_THROWS_AS(rho_step(g), Error);                     // not reduced
}

TEST_CASE("rho cycles return to start with even period") {
    // signed-lead convention: the D = 5 principal cycle has length 2
    auto cycles5 = reduction_cycles(5);
    REQUIRE(cycles5.size() == 1);
    CHECK(cycles5[0].forms.size() == 2);

    for (long long D : {5ll, 8ll, 13ll, 17ll, 40ll, 85ll, 321ll, 473ll}) {
        for (const auto& cyc : reduction_cycles(D)) {
            CHECK(cyc.forms.size() % 2 == 0);
            QuadraticForm g = cyc.canonical_key();
            for (std::size_t i = 0; i < cyc.forms.size(); ++i) g = rho_step(g);
            CHECK(g == cyc.canonical_key());
            // canonical key is the least form of its cycle
            for (const auto& f : cyc.forms) CHECK(!(f < cyc.canonical_key()));
        }
    }
}

TEST_CASE("cycles partition the reduced forms (exhaustive, D <= 1e4)") {
    for (long long D = 5; D <= 10'000; ++D) {
        if (!fundamental(D)) continue;
        auto cycles = reduction_cycles(D);
        std::set<QuadraticForm> in_cycles;
        for (const auto& cyc : cycles)
            for (const auto& f : cyc.forms) {
                CHECK(is_reduced(f));
                CHECK(form_discriminant(f) == D);
                CHECK(in_cycles.insert(f).second); // no form in two cycles
            }
        // independent enumeration of all reduced forms of discriminant D
        std::size_t total = 0;
        long long s0 = static_cast<long long>(isqrt_u64(static_cast<std::uint64_t>(D)));
        for (long long a = -s0; a <= s0; ++a) {
            if (a == 0) continue;
            for (long long b = 1; b <= s0; ++b) {
                if ((b * b - D) % (4 * a) != 0) continue;
                QuadraticForm f{a, b, (b * b - D) / (4 * a)};
                if (is_reduced(f)) {
                    ++total;
                    CHECK(in_cycles.count(f) == 1);
                }
            }
        }
        CHECK(total == in_cycles.size());
    }
}

TEST_CASE("narrow class numbers") {
    CHECK(narrow_class_number(5) == 1);
    CHECK(narrow_class_number(321) == 6); // h = 3, N(eps) = +1
    CHECK(narrow_class_number(85) == 2);  // h = 2, N(eps) = -1
    CHECK(narrow_class_number(8) == 1);
    CHECK(narrow_class_number(40) == 2);

    CHECK_THROWS_AS(narrow_class_number(20), Error); // non-fundamental (d = 5)
    CHECK_THROWS_AS(narrow_class_number(45), Error); // 45 = 9*5
    CHECK_THROWS_AS(narrow_class_number(16), Error); // square
    CHECK_THROWS_AS(narrow_class_number(-3), Error);
}

TEST_CASE("class numbers: fixture values") {
    const std::map<long long, long long> fixtures = {
        {229, 3}, {629, 2}, {257, 3}, {321, 3}, {473, 3},
        {2917, 3}, {733, 3}, {1229, 3}, {85, 2},
        {2, 1}, {5, 1}, {10, 2}, {17, 1}, {33, 1}, {53, 1},
        // classical values: h = 1 along m^2+1 for m in {1,2,4,6,10,14,26},
        // h(79) = 3 (smallest real quadratic h = 3), h(82) = 4, h(401) = 5
        {37, 1}, {101, 1}, {197, 1}, {677, 1},
        {79, 3}, {82, 4}, {145, 4}, {401, 5},
    };
    for (auto [d, h] : fixtures) CHECK(class_number(d) == h);
    // 577 = 24^2+1 is not class number 1: the exact divisor sum gives
    // zeta_k(-1) = 250/3 while the principal class alone contributes 118/3
    CHECK(zagier_zeta(Int(577)) == Rational(Int(250), Int(3)));
    CHECK(class_number(577) == 7);
    CHECK_THROWS_AS(class_number(12), Error);
    CHECK_THROWS_AS(class_number(1), Error);
}

TEST_CASE("h+/h agrees with the unit norm (d <= 2000)") {
    for (long long d = 2; d <= 2000; ++d) {
        if (!is_squarefree(make_int(d))) continue;
        long long D = d % 4 == 1 ? d : 4 * d;
        long long hp = narrow_class_number(D);
        long long h = class_number(d);
        int ne = fundamental_unit_cf_norm(d);
        CHECK((ne == -1 ? hp : hp / 2) == h);
        CHECK(hp % h == 0);
        CHECK((hp / h == 1) == (ne == -1));
    }
}

} // TEST_SUITE

#include "quadzeta/numtheory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace qz {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n, u64 a) {
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Brent's cycle variant of Pollard rho; n must be odd composite, not a prime
// power obstacle for this use (callers recurse on both halves).
u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 q = 1;
        int lam = 1;
        while (d == 1) {
            x = y;
            for (int i = 0; i < lam; ++i) y = (mulmod(y, y, n) + c) % n;
            int k = 0;
            while (k < lam && d == 1) {
                u64 ys = y;
                int lim = std::min(128, lam - k);
                for (int i = 0; i < lim; ++i) {
                    y = (mulmod(y, y, n) + c) % n;
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
                if (d == n) {
                    // backtrack one step at a time
                    d = 1;
                    y = ys;
                    do {
                        y = (mulmod(y, y, n) + c) % n;
                        d = std::gcd(x > y ? x - y : y - x, n);
                    } while (d == 1);
                    break;
                }
                k += lim;
            }
            lam *= 2;
        }
        if (d != n) return d;
    }
}

void factor_u64(u64 n, std::vector<std::pair<Int, unsigned>>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.emplace_back(Int(static_cast<unsigned long>(n)), 1u);
        return;
    }
    u64 d = pollard_brent(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

void merge_factors(std::vector<std::pair<Int, unsigned>>& fs) {
    std::sort(fs.begin(), fs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Int, unsigned>> merged;
    for (auto& f : fs) {
        if (!merged.empty() && merged.back().first == f.first)
            merged.back().second += f.second;
        else
            merged.push_back(f);
    }
    fs = std::move(merged);
}

} // namespace

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && u128(r) * r > n) --r;
    while (u128(r + 1) * (r + 1) <= n) ++r;
    return r;
}

Int isqrt(const Int& n) {
    if (n < 0) fail(Errc::invalid_argument, "isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // This base set is deterministic for all n < 3.3e24, so for all u64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

bool is_prime(const Int& n) {
    if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // between ULONG_MAX and 2^64 on LP64 this branch never triggers, but
        // keep the structure portable
        u64 v = 0;
        mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, n.get_mpz_t());
        return is_prime_u64(v);
    }
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1u << 16;
        std::vector<bool> comp(limit, false);
        std::vector<std::uint32_t> ps;
        for (std::uint32_t i = 2; i < limit; ++i) {
            if (comp[i]) continue;
            ps.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j < limit; j += i) comp[j] = true;
        }
        return ps;
    }();
    return primes;
}

Factorization factorize(const Int& m) {
    if (m <= 0) fail(Errc::invalid_argument, "factorize: argument must be >= 1");
    Factorization f;
    f.value = m;
    if (m == 1) return f;

    if (m.fits_ulong_p()) {
        u64 n = m.get_ui();
        for (u64 p : small_primes()) {
            if (p * p > n) break;
            if (n % p == 0) {
                unsigned e = 0;
                while (n % p == 0) { n /= p; ++e; }
                f.factors.emplace_back(Int(static_cast<unsigned long>(p)), e);
            }
        }
        if (n > 1) {
            std::vector<std::pair<Int, unsigned>> rest;
            factor_u64(n, rest);
            merge_factors(rest);
            f.factors.insert(f.factors.end(), rest.begin(), rest.end());
        }
        merge_factors(f.factors);
        return f;
    }

    // Arbitrary-precision fallback: trial division, then rho on mpz.
    Int n = m;
    for (u64 p : small_primes()) {
        if (Int(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p) > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            f.factors.emplace_back(Int(static_cast<unsigned long>(p)), e);
        }
    }
    // Recurse on remaining cofactors with rho in mpz.
    std::vector<Int> stack;
    if (n > 1) stack.push_back(n);
    std::vector<std::pair<Int, unsigned>> rest;
    while (!stack.empty()) {
        Int c = stack.back();
        stack.pop_back();
        if (c.fits_ulong_p()) {
            factor_u64(c.get_ui(), rest);
            continue;
        }
        if (is_prime(c)) {
            rest.emplace_back(c, 1u);
            continue;
        }
        Int sr = isqrt(c);
        if (sr * sr == c) { // perfect square cofactor trips naive rho
            stack.push_back(sr);
            stack.push_back(sr);
            continue;
        }
        Int d = 0;
        for (unsigned long cc = 1; d == 0 || d == c; ++cc) {
            Int x = 2, y = 2;
            d = 1;
            while (d == 1) {
                x = mod_floor(x * x + cc, c);
                y = mod_floor(y * y + cc, c);
                y = mod_floor(y * y + cc, c);
                Int diff = x > y ? x - y : y - x;
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), c.get_mpz_t());
            }
        }
        stack.push_back(d);
        stack.push_back(c / d);
    }
    merge_factors(rest);
    f.factors.insert(f.factors.end(), rest.begin(), rest.end());
    merge_factors(f.factors);
    return f;
}

Int sigma(const Int& m) {
    if (m <= 0) fail(Errc::invalid_argument, "sigma: argument must be >= 1");
    Int s = 1;
    for (const auto& [p, e] : factorize(m).factors)
        s *= (pow_int(p, e + 1) - 1) / (p - 1);
    return s;
}

bool is_squarefree(const Int& m) {
    if (m <= 0) fail(Errc::invalid_argument, "is_squarefree: argument must be >= 1");
    if (m == 1) return true;
    // cheap screens before the full factorization
    if (mpz_divisible_ui_p(m.get_mpz_t(), 4)) return false;
    for (const auto& [p, e] : factorize(m).factors)
        if (e > 1) return false;
    return true;
}

std::vector<Int> odd_prime_divisors(const Int& n) {
    if (n <= 0) fail(Errc::invalid_argument, "odd_prime_divisors: argument must be >= 1");
    std::vector<Int> out;
    for (const auto& [p, e] : factorize(n).factors)
        if (p != 2) out.push_back(p);
    return out;
}

std::vector<std::uint64_t> sigma_sieve(std::uint64_t limit, std::uint64_t budget_entries) {
    if (limit < 1) fail(Errc::invalid_argument, "sigma_sieve: limit must be >= 1");
    if (limit + 1 > budget_entries)
        fail(Errc::budget_exceeded,
             "sigma_sieve: limit " + std::to_string(limit) + " exceeds the budget of " +
                 std::to_string(budget_entries) + " entries (" +
                 std::to_string(budget_entries * sizeof(std::uint64_t) / (1024 * 1024)) +
                 " MB); raise the budget to sieve this range");
    std::vector<std::uint64_t> table(limit + 1, 0);
    for (std::uint64_t i = 1; i <= limit; ++i)
        for (std::uint64_t j = i; j <= limit; j += i) table[j] += i;
    return table;
}

} // namespace qz

#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "quadzeta/errors.hpp"

namespace qz {

// Arbitrary-precision integer.
using Int = mpz_class;

// mpz_class has no long long constructor; this build targets LP64.
inline Int make_int(long long v) {
    static_assert(sizeof(long) == sizeof(long long));
    return Int(static_cast<long>(v));
}

inline Int pow_int(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

// Remainder in [0, m) for m > 0, independent of the sign of a.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Exact rational number. Always canonical: den > 0, gcd(num, den) = 1,
// zero is 0/1. All arithmetic is exact; there is no floating point
// anywhere in the mathematical core.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(const Int& n) : v_(n) {}           // NOLINT: implicit by design
    Rational(const Int& num, const Int& den) {
        if (den == 0) fail(Errc::invalid_argument, "Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_zero() const { return v_ == 0; }
    int sign() const { return sgn(v_); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_, FromMpq{}); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_, FromMpq{}); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_, FromMpq{}); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.v_ == 0) fail(Errc::invalid_argument, "Rational: division by zero");
        return Rational(mpq_class(a.v_ / b.v_), FromMpq{});
    }
    Rational operator-() const { return Rational(mpq_class(-v_), FromMpq{}); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    struct FromMpq {};
    Rational(mpq_class v, FromMpq) : v_(std::move(v)) {}
    mpq_class v_; // mpq keeps the canonical form under arithmetic
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace qz

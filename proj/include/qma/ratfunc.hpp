#pragma once

#include "qma/laurent.hpp"

#include <stdexcept>

namespace qma {

// Raised when a value regular at q=1 is required but the input has a pole there.
class SpecializationError : public std::runtime_error {
public:
    explicit SpecializationError(const std::string& m) : std::runtime_error(m) {}
};

// Rational function in q over the rationals, stored canonically:
// numerator a Laurent polynomial, denominator a monic polynomial with nonzero
// constant term, gcd(shifted numerator, denominator) = 1. Zero is 0/1.
// Equality of canonical forms is componentwise.
class RatFunc {
public:
    RatFunc() : num_(), den_(QLaurent::one()) {}
    RatFunc(const Rational& c) : num_(QLaurent::from_rational(c)), den_(QLaurent::one()) {}
    RatFunc(long n) : RatFunc(Rational(n)) {}
    RatFunc(int n) : RatFunc(Rational(long(n))) {}

    static RatFunc of(const QLaurent& num, const QLaurent& den);
    static RatFunc from_laurent(const QLaurent& p) { return of(p, QLaurent::one()); }
    static RatFunc q_power(long k) { return from_laurent(QLaurent::q_power(k)); }
    static RatFunc one() { return RatFunc(Rational(1)); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }
    bool is_rational() const { return den_.is_one() && num_.is_rational(); }
    Rational as_rational() const;  // pre: is_rational

    const QLaurent& num() const { return num_; }
    const QLaurent& den() const { return den_; }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc inv() const;

    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
    bool operator<(const RatFunc& o) const;  // total order for map keys

    // Exact value at q = 1; throws SpecializationError on a pole.
    Rational specialize_q1() const;
    bool regular_at_q1() const;

    std::string str() const;

private:
    QLaurent num_, den_;
};

}  // namespace qma

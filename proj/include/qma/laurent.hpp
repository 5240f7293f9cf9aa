#pragma once

#include "qma/rational.hpp"

#include <utility>
#include <vector>

namespace qma {

// Laurent polynomial in q with rational coefficients.
// Terms sorted by ascending exponent, no zero coefficients stored.
class QLaurent {
public:
    QLaurent() = default;

    static QLaurent zero() { return QLaurent(); }
    static QLaurent one() { return term(Rational(1), 0); }
    static QLaurent q_power(long k) { return term(Rational(1), k); }
    static QLaurent term(const Rational& c, long k);
    static QLaurent from_rational(const Rational& c) { return term(c, 0); }

    bool is_zero() const { return t_.empty(); }
    bool is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second.is_one(); }
    bool is_rational() const { return t_.empty() || (t_.size() == 1 && t_[0].first == 0); }

    long min_exp() const;  // pre: nonzero
    long max_exp() const;  // pre: nonzero
    Rational coeff(long k) const;
    Rational leading_coeff() const;  // coefficient of max_exp; pre: nonzero
    size_t term_count() const { return t_.size(); }
    const std::vector<std::pair<long, Rational>>& terms() const { return t_; }

    QLaurent operator+(const QLaurent& o) const;
    QLaurent operator-(const QLaurent& o) const;
    QLaurent operator*(const QLaurent& o) const;
    QLaurent operator-() const;
    QLaurent scaled(const Rational& c) const;
    QLaurent shifted(long k) const;  // multiply by q^k

    bool operator==(const QLaurent& o) const { return t_ == o.t_; }
    bool operator!=(const QLaurent& o) const { return !(*this == o); }
    bool operator<(const QLaurent& o) const;  // arbitrary total order for map keys

    // Value at q = 1 (sum of coefficients).
    Rational eval_one() const;

    std::string str() const;

    // Polynomial division a = b*quot + rem for polynomials (min_exp >= 0, b nonzero).
    static void poly_divmod(const QLaurent& a, const QLaurent& b, QLaurent& quot, QLaurent& rem);
    // Monic gcd of two polynomials (min_exp >= 0), gcd(0,b) = monic b.
    static QLaurent poly_gcd(QLaurent a, QLaurent b);

    void add_term(long k, const Rational& c);  // in-place accumulate

private:
    std::vector<std::pair<long, Rational>> t_;
};

}  // namespace qma

#include "qma/ratfunc.hpp"

namespace qma {

RatFunc RatFunc::of(const QLaurent& num, const QLaurent& den) {
    if (den.is_zero()) throw std::domain_error("ratfunc: division by zero");
    RatFunc r;
    if (num.is_zero()) return r;  // 0/1
    long sn = num.min_exp(), sd = den.min_exp();
    QLaurent a = num.shifted(-sn);
    QLaurent b = den.shifted(-sd);
    QLaurent g = QLaurent::poly_gcd(a, b);
    if (!g.is_one()) {
        QLaurent q, rem;
        QLaurent::poly_divmod(a, g, q, rem);
        a = q;
        QLaurent::poly_divmod(b, g, q, rem);
        b = q;
    }
    Rational lc = b.leading_coeff();
    if (!lc.is_one()) {
        a = a.scaled(lc.inv());
        b = b.scaled(lc.inv());
    }
    r.num_ = a.shifted(sn - sd);
    r.den_ = b;
    return r;
}

Rational RatFunc::as_rational() const {
    if (!is_rational()) throw std::domain_error("ratfunc: not a constant: " + str());
    return num_.is_zero() ? Rational(0) : num_.coeff(0);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return of(num_ + o.num_, den_);
    return of(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc();
    return of(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::domain_error("ratfunc: division by zero");
    if (is_zero()) return RatFunc();
    return of(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw std::domain_error("ratfunc: inverse of zero");
    return of(den_, num_);
}

bool RatFunc::operator<(const RatFunc& o) const {
    if (num_ != o.num_) return num_ < o.num_;
    return den_ < o.den_;
}

bool RatFunc::regular_at_q1() const { return !den_.eval_one().is_zero(); }

Rational RatFunc::specialize_q1() const {
    Rational d = den_.eval_one();
    if (d.is_zero()) throw SpecializationError("pole at q=1: " + str());
    return num_.eval_one() / d;
}

std::string RatFunc::str() const {
    if (is_zero()) return "0";
    long s = std::min(num_.min_exp(), 0L);
    if (s == 0 && den_.is_one()) return num_.str();
    QLaurent n = num_.shifted(-s);
    QLaurent d = den_.shifted(-s);
    return "(" + n.str() + ")/(" + d.str() + ")";
}

}  // namespace qma

#include "qma/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace qma {

QLaurent QLaurent::term(const Rational& c, long k) {
    QLaurent p;
    if (!c.is_zero()) p.t_.push_back({k, c});
    return p;
}

long QLaurent::min_exp() const {
    if (t_.empty()) throw std::domain_error("laurent: min_exp of zero");
    return t_.front().first;
}

long QLaurent::max_exp() const {
    if (t_.empty()) throw std::domain_error("laurent: max_exp of zero");
    return t_.back().first;
}

Rational QLaurent::coeff(long k) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), k,
                               [](const auto& a, long b) { return a.first < b; });
    if (it != t_.end() && it->first == k) return it->second;
    return Rational(0);
}

Rational QLaurent::leading_coeff() const {
    if (t_.empty()) throw std::domain_error("laurent: leading_coeff of zero");
    return t_.back().second;
}

void QLaurent::add_term(long k, const Rational& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(t_.begin(), t_.end(), k,
                               [](const auto& a, long b) { return a.first < b; });
    if (it != t_.end() && it->first == k) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    } else {
        t_.insert(it, {k, c});
    }
}

QLaurent QLaurent::operator+(const QLaurent& o) const {
    QLaurent r;
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
            r.t_.push_back(t_[i++]);
        } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
            r.t_.push_back(o.t_[j++]);
        } else {
            Rational c = t_[i].second + o.t_[j].second;
            if (!c.is_zero()) r.t_.push_back({t_[i].first, c});
            ++i; ++j;
        }
    }
    return r;
}

QLaurent QLaurent::operator-(const QLaurent& o) const { return *this + (-o); }

QLaurent QLaurent::operator-() const {
    QLaurent r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

QLaurent QLaurent::scaled(const Rational& c) const {
    if (c.is_zero()) return QLaurent();
    QLaurent r = *this;
    for (auto& [k, v] : r.t_) v *= c;
    return r;
}

QLaurent QLaurent::shifted(long k) const {
    QLaurent r = *this;
    for (auto& [e, c] : r.t_) e += k;
    return r;
}

QLaurent QLaurent::operator*(const QLaurent& o) const {
    QLaurent r;
    if (t_.empty() || o.t_.empty()) return r;
    if (o.t_.size() == 1) return shifted(o.t_[0].first).scaled(o.t_[0].second);
    if (t_.size() == 1) return o.shifted(t_[0].first).scaled(t_[0].second);
    for (const auto& [ka, ca] : t_)
        for (const auto& [kb, cb] : o.t_) r.add_term(ka + kb, ca * cb);
    return r;
}

bool QLaurent::operator<(const QLaurent& o) const {
    size_t n = std::min(t_.size(), o.t_.size());
    for (size_t i = 0; i < n; ++i) {
        if (t_[i].first != o.t_[i].first) return t_[i].first < o.t_[i].first;
        if (t_[i].second != o.t_[i].second) return t_[i].second < o.t_[i].second;
    }
    return t_.size() < o.t_.size();
}

Rational QLaurent::eval_one() const {
    Rational s(0);
    for (const auto& [k, c] : t_) s += c;
    return s;
}

void QLaurent::poly_divmod(const QLaurent& a, const QLaurent& b, QLaurent& quot, QLaurent& rem) {
    if (b.is_zero()) throw std::domain_error("laurent: division by zero polynomial");
    if ((!a.is_zero() && a.min_exp() < 0) || b.min_exp() < 0)
        throw std::domain_error("laurent: divmod needs polynomials");
    quot = QLaurent();
    rem = a;
    long db = b.max_exp();
    Rational lb = b.leading_coeff();
    while (!rem.is_zero() && rem.max_exp() >= db) {
        long k = rem.max_exp() - db;
        Rational c = rem.leading_coeff() / lb;
        quot.add_term(k, c);
        rem = rem - b.shifted(k).scaled(c);
    }
}

QLaurent QLaurent::poly_gcd(QLaurent a, QLaurent b) {
    while (!b.is_zero()) {
        QLaurent q, r;
        poly_divmod(a, b, q, r);
        a = b;
        b = r;
        if (!b.is_zero()) b = b.scaled(b.leading_coeff().inv());  // keep coefficients tame
    }
    if (a.is_zero()) return a;
    return a.scaled(a.leading_coeff().inv());
}

std::string QLaurent::str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [k, c] = *it;
        bool neg = c.is_negative();
        Rational a = neg ? -c : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        std::string mono;
        if (k == 0) {
            mono = a.str();
        } else {
            std::string qp = (k == 1) ? "q" : "q^" + std::to_string(k);
            mono = a.is_one() ? qp : a.str() + "*" + qp;
        }
        out += mono;
    }
    return out;
}

}  // namespace qma

#include "qma/qnum.hpp"

#include <stdexcept>

namespace qma {

RatFunc q_integer(long m, long d) {
    if (d <= 0) throw std::invalid_argument("q_integer: d must be positive");
    QLaurent num = QLaurent::q_power(d * m) - QLaurent::q_power(-d * m);
    QLaurent den = QLaurent::q_power(d) - QLaurent::q_power(-d);
    return RatFunc::of(num, den);
}

RatFunc q_factorial(long n, long d) {
    if (n < 0) throw std::invalid_argument("q_factorial: n must be nonnegative");
    RatFunc r = RatFunc::one();
    for (long m = 1; m <= n; ++m) r *= q_integer(m, d);
    return r;
}

RatFunc q_binomial(long n, long k, long d) {
    if (k < 0 || k > n) return RatFunc();
    RatFunc r = q_factorial(n, d) / (q_factorial(k, d) * q_factorial(n - k, d));
    if (!r.is_laurent())
        throw std::logic_error("q_binomial: expected Laurent polynomial, got " + r.str());
    return r;
}

}  // namespace qma

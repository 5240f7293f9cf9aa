#pragma once

#include "qma/ratfunc.hpp"

namespace qma {

// Symmetric q-integer [m]_{q^d} = (q^{dm} - q^{-dm}) / (q^d - q^{-d}).
RatFunc q_integer(long m, long d = 1);

// [n]_{q^d}! = [1][2]...[n]; n >= 0.
RatFunc q_factorial(long n, long d = 1);

// Symmetric q-binomial; always a Laurent polynomial in canonical form.
RatFunc q_binomial(long n, long k, long d = 1);

}  // namespace qma

#include "qma/rational.hpp"

namespace qma {

Rational Rational::parse(const std::string& s) {
    auto bad = [&] { return std::invalid_argument("rational: cannot parse '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt n(s.substr(0, slash));
        BigInt d(s.substr(slash + 1));
        if (d == 0) throw std::domain_error("rational: zero denominator");
        return Rational(n, d);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

std::string Rational::str() const {
    std::string out = num().str();
    if (!is_integer()) out += "/" + den().str();
    return out;
}

}  // namespace qma

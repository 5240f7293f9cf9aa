#pragma once

#include "qma/rational.hpp"

#include <set>
#include <string>
#include <vector>

namespace qma {

// Symmetrizable Cartan matrix of finite type with minimal symmetrizers.
struct CartanData {
    int r = 0;
    std::vector<std::vector<int>> C;  // c[i][j], 0-based
    std::vector<int> d;               // positive symmetrizers, d[i]*c[i][j] symmetric
};

// Throws std::invalid_argument if any structural invariant fails:
// diagonal 2, off-diagonal <= 0, zero-symmetry, symmetrizability,
// positive definiteness of (d_i c_ij) via leading principal minors.
void validate_cartan(const CartanData& cd);

// Standard Cartan data for A1, A2, A3, B2, G2. Rank-2 non-simply-laced
// orientation is fixed as c12 = -2 (B2) / -3 (G2), c21 = -1, d = (1, d_max).
CartanData preset_cartan(const std::string& label);

// Element of the rational span of the simple roots, coordinates in the
// alpha-basis. Root-lattice elements have integer coordinates; fundamental
// weights are admitted but every q-exponent they feed must be integral,
// which pairing_int enforces.
class Weight {
public:
    Weight() = default;
    explicit Weight(int r) : c_(r) {}
    explicit Weight(std::vector<Rational> c) : c_(std::move(c)) {}
    static Weight alpha(int r, int i);  // i-th simple root, 0-based

    int size() const { return static_cast<int>(c_.size()); }
    const Rational& operator[](int i) const { return c_[i]; }
    Rational& operator[](int i) { return c_[i]; }
    bool is_zero() const;
    bool is_integral() const;

    Weight operator+(const Weight& o) const;
    Weight operator-(const Weight& o) const;
    Weight operator-() const;
    Weight scaled(const Rational& s) const;

    bool operator==(const Weight& o) const { return c_ == o.c_; }
    bool operator!=(const Weight& o) const { return c_ != o.c_; }
    bool operator<(const Weight& o) const { return c_ < o.c_; }

    std::string str() const;

private:
    std::vector<Rational> c_;
};

// Bilinear form (lambda, mu) = sum lambda_i mu_j d_i c_ij.
Rational pairing(const CartanData& cd, const Weight& a, const Weight& b);

// Same value, demanded integral; throws std::domain_error otherwise.
long pairing_int(const CartanData& cd, const Weight& a, const Weight& b);

// omega_i: the weight with pairing(alpha_j, omega_i) = delta_ij d_j,
// rational in the alpha-basis.
Weight fundamental_weight(const CartanData& cd, int i);

using Word = std::vector<int>;  // 0-based simple-reflection indices

// Root-tracking reducedness test: scanning left to right, each letter must
// send a currently positive simple-root image positive.
bool is_reduced(const CartanData& cd, const Word& w);

// All reduced words of the longest Weyl-group element: one word built
// greedily, then closure under braid moves by breadth-first search.
std::set<Word> reduced_words_longest(const CartanData& cd);

// Positive roots in the convex order beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k})
// of the lexicographically smallest reduced word of the longest element.
std::vector<Weight> positive_roots_convex(const CartanData& cd);

}  // namespace qma

#include "qma/cartan.hpp"

#include <fmt/core.h>

#include <deque>
#include <stdexcept>

namespace qma {

void validate_cartan(const CartanData& cd) {
    int r = cd.r;
    if (r <= 0 || static_cast<int>(cd.C.size()) != r || static_cast<int>(cd.d.size()) != r)
        throw std::invalid_argument("cartan: inconsistent dimensions");
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(cd.C[i].size()) != r)
            throw std::invalid_argument("cartan: ragged matrix");
        if (cd.C[i][i] != 2) throw std::invalid_argument("cartan: diagonal entry must be 2");
        if (cd.d[i] <= 0) throw std::invalid_argument("cartan: symmetrizers must be positive");
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            if (cd.C[i][j] > 0) throw std::invalid_argument("cartan: positive off-diagonal entry");
            if ((cd.C[i][j] == 0) != (cd.C[j][i] == 0))
                throw std::invalid_argument("cartan: zero pattern not symmetric");
            if (cd.d[i] * cd.C[i][j] != cd.d[j] * cd.C[j][i])
                throw std::invalid_argument("cartan: not symmetrizable by given d");
        }
    }
    // Finite type: (d_i c_ij) positive definite, leading principal minors > 0.
    for (int k = 1; k <= r; ++k) {
        std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m[i][j] = Rational(cd.d[i] * cd.C[i][j]);
        // fraction-free-ish Gaussian determinant with exact rationals
        Rational det(1);
        for (int col = 0; col < k; ++col) {
            int piv = -1;
            for (int row = col; row < k; ++row)
                if (!m[row][col].is_zero()) { piv = row; break; }
            if (piv < 0) { det = Rational(0); break; }
            if (piv != col) { std::swap(m[piv], m[col]); det = -det; }
            det *= m[col][col];
            Rational inv = m[col][col].inv();
            for (int row = col + 1; row < k; ++row) {
                Rational f = m[row][col] * inv;
                if (f.is_zero()) continue;
                for (int j2 = col; j2 < k; ++j2) m[row][j2] -= f * m[col][j2];
            }
        }
        if (!(Rational(0) < det))
            throw std::invalid_argument(
                fmt::format("cartan: leading principal minor {} not positive", k));
    }
}

CartanData preset_cartan(const std::string& label) {
    CartanData cd;
    if (label == "A1") {
        cd.r = 1; cd.C = {{2}}; cd.d = {1};
    } else if (label == "A2") {
        cd.r = 2; cd.C = {{2, -1}, {-1, 2}}; cd.d = {1, 1};
    } else if (label == "A3") {
        cd.r = 3; cd.C = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}; cd.d = {1, 1, 1};
    } else if (label == "B2") {
        cd.r = 2; cd.C = {{2, -2}, {-1, 2}}; cd.d = {1, 2};
    } else if (label == "G2") {
        cd.r = 2; cd.C = {{2, -3}, {-1, 2}}; cd.d = {1, 3};
    } else {
        throw std::invalid_argument("unknown Cartan preset: " + label);
    }
    validate_cartan(cd);
    return cd;
}

Weight Weight::alpha(int r, int i) {
    Weight w(r);
    w.c_[i] = Rational(1);
    return w;
}

bool Weight::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool Weight::is_integral() const {
    for (const auto& x : c_)
        if (!x.is_integer()) return false;
    return true;
}

Weight Weight::operator+(const Weight& o) const {
    Weight w = *this;
    for (int i = 0; i < size(); ++i) w.c_[i] += o.c_[i];
    return w;
}

Weight Weight::operator-(const Weight& o) const {
    Weight w = *this;
    for (int i = 0; i < size(); ++i) w.c_[i] -= o.c_[i];
    return w;
}

Weight Weight::operator-() const {
    Weight w = *this;
    for (auto& x : w.c_) x = -x;
    return w;
}

Weight Weight::scaled(const Rational& s) const {
    Weight w = *this;
    for (auto& x : w.c_) x *= s;
    return w;
}

std::string Weight::str() const {
    std::string s = "(";
    for (int i = 0; i < size(); ++i) {
        if (i) s += ",";
        s += c_[i].str();
    }
    return s + ")";
}

Rational pairing(const CartanData& cd, const Weight& a, const Weight& b) {
    if (a.size() != cd.r || b.size() != cd.r)
        throw std::invalid_argument("pairing: weight rank mismatch");
    Rational acc;
    for (int i = 0; i < cd.r; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < cd.r; ++j) {
            if (cd.C[i][j] == 0 || b[j].is_zero()) continue;
            acc += a[i] * b[j] * Rational(cd.d[i] * cd.C[i][j]);
        }
    }
    return acc;
}

long pairing_int(const CartanData& cd, const Weight& a, const Weight& b) {
    Rational v = pairing(cd, a, b);
    if (!v.is_integer())
        throw std::domain_error(
            fmt::format("pairing {} not integral for {} , {}", v.str(), a.str(), b.str()));
    return static_cast<long>(v.num());
}

Weight fundamental_weight(const CartanData& cd, int i) {
    if (i < 0 || i >= cd.r) throw std::out_of_range("fundamental_weight: index");
    // solve sum_k (d_j c_jk) w_k = delta_ij d_j
    int r = cd.r;
    std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r + 1));
    for (int j = 0; j < r; ++j) {
        for (int k = 0; k < r; ++k) m[j][k] = Rational(cd.d[j] * cd.C[j][k]);
        m[j][r] = (j == i) ? Rational(cd.d[j]) : Rational(0);
    }
    for (int col = 0; col < r; ++col) {
        int piv = col;
        while (m[piv][col].is_zero()) ++piv;  // positive definite: pivot exists
        std::swap(m[piv], m[col]);
        Rational inv = m[col][col].inv();
        for (int k = col; k <= r; ++k) m[col][k] *= inv;
        for (int row = 0; row < r; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            Rational f = m[row][col];
            for (int k = col; k <= r; ++k) m[row][k] -= f * m[col][k];
        }
    }
    Weight w(r);
    for (int j = 0; j < r; ++j) w[j] = m[j][r];
    return w;
}

namespace {

// Weyl-group element stored as integer images of the simple roots.
using RootImages = std::vector<std::vector<long>>;

RootImages identity_images(int r) {
    RootImages w(r, std::vector<long>(r, 0));
    for (int i = 0; i < r; ++i) w[i][i] = 1;
    return w;
}

bool image_positive(const std::vector<long>& v) {
    bool nonzero = false;
    for (long x : v) {
        if (x < 0) return false;
        if (x > 0) nonzero = true;
    }
    return nonzero;
}

// w := w . s_i, i.e. new images w(s_i(alpha_k)) = w(alpha_k) - c_ik w(alpha_i).
void apply_right_reflection(const CartanData& cd, RootImages& w, int i) {
    std::vector<long> wi = w[i];
    for (int k = 0; k < cd.r; ++k)
        for (int t = 0; t < cd.r; ++t) w[k][t] -= cd.C[i][k] * wi[t];
}

}  // namespace

bool is_reduced(const CartanData& cd, const Word& word) {
    RootImages w = identity_images(cd.r);
    for (int i : word) {
        if (i < 0 || i >= cd.r) throw std::out_of_range("word index out of range");
        if (!image_positive(w[i])) return false;
        apply_right_reflection(cd, w, i);
    }
    return true;
}

std::set<Word> reduced_words_longest(const CartanData& cd) {
    // Greedy word for the longest element: extend while some simple root
    // still has a positive image.
    RootImages w = identity_images(cd.r);
    Word first;
    const int safety = 4 * cd.r * cd.r + 16;
    for (int steps = 0; steps <= safety; ++steps) {
        int pick = -1;
        for (int i = 0; i < cd.r; ++i)
            if (image_positive(w[i])) { pick = i; break; }
        if (pick < 0) break;
        first.push_back(pick);
        apply_right_reflection(cd, w, pick);
        if (steps == safety)
            throw std::runtime_error("longest-element search did not terminate (not finite type?)");
    }

    // Braid orders m_ij from c_ij c_ji.
    auto braid_order = [&](int i, int j) {
        switch (cd.C[i][j] * cd.C[j][i]) {
            case 0: return 2;
            case 1: return 3;
            case 2: return 4;
            case 3: return 6;
            default: throw std::runtime_error("no finite braid order for this pair");
        }
    };

    std::set<Word> seen{first};
    std::deque<Word> queue{first};
    // braid-move closure

    while (!queue.empty()) {
        Word cur = queue.front();
        queue.pop_front();
        int n = static_cast<int>(cur.size());
        for (int p = 0; p < n; ++p) {
            for (int j = 0; j < cd.r; ++j) {
                int i = cur[p];
                if (j == i) continue;
                int m = braid_order(i, j);
                if (p + m > n) continue;
                bool alt = true;
                for (int t = 0; t < m; ++t)
                    if (cur[p + t] != ((t % 2 == 0) ? i : j)) { alt = false; break; }
                if (!alt) continue;
                Word nw = cur;
                for (int t = 0; t < m; ++t) nw[p + t] = (t % 2 == 0) ? j : i;
                if (seen.insert(nw).second) queue.push_back(nw);
            }
        }
    }
    return seen;
}

std::vector<Weight> positive_roots_convex(const CartanData& cd) {
    Word word = *reduced_words_longest(cd).begin();
    std::vector<Weight> roots;
    RootImages w = identity_images(cd.r);
    for (int ik : word) {
        Weight beta(cd.r);
        for (int t = 0; t < cd.r; ++t) beta[t] = Rational(w[ik][t]);
        roots.push_back(beta);
        apply_right_reflection(cd, w, ik);
    }
    return roots;
}

}  // namespace qma

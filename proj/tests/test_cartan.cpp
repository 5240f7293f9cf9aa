#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qma/cartan.hpp"

#include <algorithm>
#include <map>
#include <vector>

using namespace qma;

namespace {

// Oracle: the full Weyl group as integer matrices acting on the root lattice
// (images of simple roots), built breadth-first so the BFS depth of each
// element is its Coxeter length. Independent of the root-tracking code path.
using Mat = std::vector<std::vector<long>>;

Mat oracle_identity(int r) {
    Mat m(r, std::vector<long>(r, 0));
    for (int i = 0; i < r; ++i) m[i][i] = 1;
    return m;
}

// right-multiply by s_i: column-space action on alpha-basis images
Mat oracle_mul_s(const CartanData& cd, const Mat& w, int i) {
    Mat out = w;
    for (int k = 0; k < cd.r; ++k)
        for (int t = 0; t < cd.r; ++t) out[k][t] -= cd.C[i][k] * w[i][t];
    return out;
}

std::map<Mat, int> oracle_group_lengths(const CartanData& cd) {
    std::map<Mat, int> dist;
    std::vector<Mat> frontier{oracle_identity(cd.r)};
    dist[frontier[0]] = 0;
    int depth = 0;
    while (!frontier.empty()) {
        ++depth;
        std::vector<Mat> next;
        for (const Mat& w : frontier) {
            for (int i = 0; i < cd.r; ++i) {
                Mat v = oracle_mul_s(cd, w, i);
                if (dist.emplace(v, depth).second) next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    return dist;
}

Mat oracle_product(const CartanData& cd, const Word& w) {
    Mat m = oracle_identity(cd.r);
    for (int i : w) m = oracle_mul_s(cd, m, i);
    return m;
}

std::vector<Word> all_words(int rank, int len) {
    std::vector<Word> out{{}};
    for (int step = 0; step < len; ++step) {
        std::vector<Word> next;
        for (const Word& w : out)
            for (int i = 0; i < rank; ++i) {
                Word v = w;
                v.push_back(i);
                next.push_back(v);
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("preset validation") {
    for (const char* label : {"A1", "A2", "A3", "B2", "G2"}) {
        CartanData cd = preset_cartan(label);
        CHECK_NOTHROW(validate_cartan(cd));
    }
    CHECK_THROWS_AS(preset_cartan("E8"), std::invalid_argument);

    CartanData bad;
    bad.r = 2; bad.d = {1, 1};

    bad.C = {{3, -1}, {-1, 2}};  // diagonal
    CHECK_THROWS_AS(validate_cartan(bad), std::invalid_argument);
    bad.C = {{2, -1}, {0, 2}};  // zero pattern
    CHECK_THROWS_AS(validate_cartan(bad), std::invalid_argument);
    bad.C = {{2, -2}, {-1, 2}};  // needs d = (1,2)
    CHECK_THROWS_AS(validate_cartan(bad), std::invalid_argument);
    bad.C = {{2, -2}, {-2, 2}};  // affine: determinant 0
    CHECK_THROWS_AS(validate_cartan(bad), std::invalid_argument);
    bad.C = {{2, 1}, {1, 2}};  // positive off-diagonal
    CHECK_THROWS_AS(validate_cartan(bad), std::invalid_argument);
}

TEST_CASE("pairing") {
    CartanData a2 = preset_cartan("A2");
    Weight a1 = Weight::alpha(2, 0), al2 = Weight::alpha(2, 1);
    CHECK(pairing(a2, a1, a1) == Rational(2));
    CHECK(pairing(a2, a1, al2) == Rational(-1));
    CHECK(pairing(a2, a1, Weight(2)) == Rational(0));

    CartanData b2 = preset_cartan("B2");
    CHECK(pairing(b2, Weight::alpha(2, 1), Weight::alpha(2, 1)) == Rational(4));
    CHECK(pairing(b2, Weight::alpha(2, 0), Weight::alpha(2, 1)) == Rational(-2));

    SUBCASE("symmetry on random integer weights") {
        for (long x = -2; x <= 2; ++x)
            for (long y = -2; y <= 2; ++y) {
                Weight u(std::vector<Rational>{Rational(x), Rational(y)});
                Weight v(std::vector<Rational>{Rational(y - 1), Rational(x + 2)});
                CHECK(pairing(b2, u, v) == pairing(b2, v, u));
            }
    }

    SUBCASE("fundamental weights: integral against roots, fractional norms rejected") {
        Weight om1(std::vector<Rational>{Rational(2, 3), Rational(1, 3)});
        CHECK(pairing_int(a2, om1, a1) == 1);
        CHECK(pairing_int(a2, om1, al2) == 0);
        CHECK(pairing(a2, om1, om1) == Rational(2, 3));
        CHECK_THROWS_AS(pairing_int(a2, om1, om1), std::domain_error);
    }
}

TEST_CASE("reducedness matches brute-force Weyl group") {
    for (const char* label : {"A2", "B2", "G2"}) {
        CartanData cd = preset_cartan(label);
        auto dist = oracle_group_lengths(cd);
        for (int len = 0; len <= 5; ++len) {
            for (const Word& w : all_words(cd.r, len)) {
                bool oracle = dist.at(oracle_product(cd, w)) == len;
                CHECK(is_reduced(cd, w) == oracle);
            }
        }
    }
}

TEST_CASE("frozen reducedness cases") {
    CartanData a1 = preset_cartan("A1"), a2 = preset_cartan("A2");
    CHECK(is_reduced(a2, {0, 1, 0}));
    CHECK(!is_reduced(a1, {0, 0}));
    CHECK(!is_reduced(a2, {0, 1, 0, 1}));
    CHECK(is_reduced(a2, {}));
    CHECK_THROWS_AS(is_reduced(a2, {5}), std::out_of_range);
}

TEST_CASE("reduced words of the longest element") {
    // Oracle: exhaustive search at the maximal length found by group BFS.
    auto oracle_longest = [](const CartanData& cd) {
        auto dist = oracle_group_lengths(cd);
        int maxlen = 0;
        for (auto& [m, l] : dist) maxlen = std::max(maxlen, l);
        std::set<Word> out;
        Mat w0;
        for (auto& [m, l] : dist)
            if (l == maxlen) w0 = m;
        for (const Word& w : all_words(cd.r, maxlen))
            if (oracle_product(cd, w) == w0) out.insert(w);
        return out;
    };

    CHECK(reduced_words_longest(preset_cartan("A1")) == std::set<Word>{{0}});
    CHECK(reduced_words_longest(preset_cartan("A2")) == std::set<Word>{{0, 1, 0}, {1, 0, 1}});

    auto b2 = reduced_words_longest(preset_cartan("B2"));
    CHECK(b2.size() == 2);
    for (const Word& w : b2) CHECK(w.size() == 4);
    CHECK(b2 == oracle_longest(preset_cartan("B2")));

    auto g2 = reduced_words_longest(preset_cartan("G2"));
    CHECK(g2.size() == 2);
    for (const Word& w : g2) CHECK(w.size() == 6);
    CHECK(g2 == oracle_longest(preset_cartan("G2")));

    auto a3 = reduced_words_longest(preset_cartan("A3"));
    CHECK(a3 == oracle_longest(preset_cartan("A3")));
    CHECK(a3.size() == 16);
    for (const Word& w : a3) {
        CHECK(w.size() == 6);
        CHECK(is_reduced(preset_cartan("A3"), w));
    }
}

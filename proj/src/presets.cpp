#include "qma/presets.hpp"

#include "pbw_detail.hpp"
#include "qma/elim.hpp"
#include "qma/oracle.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <stdexcept>

namespace qma {

namespace {

RatFunc Q(long k) { return RatFunc::q_power(k); }

RatFunc q_minus_qinv(long d) {
    return RatFunc::from_laurent(QLaurent::q_power(d) - QLaurent::q_power(-d));
}

}  // namespace

Presentation preset_qmatrix(int m, int n) {
    if (m < 1 || n < 1 || m > 4 || n > 4)
        throw std::invalid_argument("preset_qmatrix: supported sizes are 1..4 x 1..4");
    Presentation p;
    p.name = fmt::format("qmat{}{}", m, n);
    p.cartan = m >= 2 ? preset_cartan(fmt::format("A{}", m - 1)) : preset_cartan("A1");

    // row weights mu_1 = omega_1, mu_{i+1} = mu_i - alpha_i (zero when the
    // row action is trivial)
    std::vector<Weight> mu(m, Weight(p.cartan.r));
    if (m >= 2) {
        mu[0] = fundamental_weight(p.cartan, 0);
        for (int i = 1; i < m; ++i) mu[i] = mu[i - 1] - Weight::alpha(p.cartan.r, i - 1);
    }

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            p.gens.push_back({fmt::format("x{}{}", i + 1, j + 1), mu[i], false,
                              static_cast<int>(p.gens.size()), 1});

    auto idx = [&](int i, int j) { return i * n + j; };
    RatFunc qq = q_minus_qinv(1);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j < n; ++j) {
                    if (idx(i, j) >= idx(k, l)) continue;
                    RewriteRule r;
                    r.left = idx(k, l);
                    r.right = idx(i, j);
                    Monomial flip{{idx(i, j), 1}, {idx(k, l), 1}};
                    if (i == k || j == l) {
                        r.rhs = NcPoly::monomial(flip, Q(1));
                    } else if (l < j) {
                        r.rhs = NcPoly::monomial(flip, RatFunc(1));
                    } else {
                        r.rhs = NcPoly::monomial(flip, RatFunc(1));
                        r.rhs.add_term({{idx(i, l), 1}, {idx(k, j), 1}}, qq);
                    }
                    p.rules.push_back(std::move(r));
                }
    p.confluence_certified_degree = 6;
    p.finalize();
    return p;
}

namespace {

// ---- mechanical PBW straightening in the free algebra modulo Serre ----

using detail::FreePoly;
using detail::FreeWord;
using detail::PbwData;

void fp_add(FreePoly& a, const FreeWord& w, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = a.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) a.erase(it);
    }
}

FreePoly fp_mul(const FreePoly& a, const FreePoly& b) {
    FreePoly r;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            FreeWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            fp_add(r, w, ca * cb);
        }
    return r;
}

FreePoly fp_combine(const FreePoly& a, const RatFunc& ca, const FreePoly& b, const RatFunc& cb) {
    FreePoly r;
    for (const auto& [w, c] : a) fp_add(r, w, c * ca);
    for (const auto& [w, c] : b) fp_add(r, w, c * cb);
    return r;
}

// all ideal instances u * rel * v of word length exactly n over a
// two-letter free algebra, inserted into the eliminator
void load_serre_ideal(const FreeAlgebraSpec& fa, int n, Eliminator<FreeWord>& elim) {
    std::vector<std::vector<FreeWord>> words(n + 1);
    {
        FreeWord cur;
        auto rec = [&](auto&& self, int len) -> void {
            words[len].push_back(cur);
            if (len == n) return;
            for (int g = 0; g < fa.ngens; ++g) {
                cur.push_back(g);
                self(self, len + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
    }
    for (const FreeRelation& rel : fa.relations) {
        int rl = static_cast<int>(rel.terms[0].word.size());
        if (rl > n) continue;
        for (int a = 0; a + rl <= n; ++a)
            for (const FreeWord& u : words[a])
                for (const FreeWord& v : words[n - a - rl]) {
                    std::map<FreeWord, RatFunc> row;
                    for (const FreeTerm& t : rel.terms) {
                        FreeWord w = u;
                        w.insert(w.end(), t.word.begin(), t.word.end());
                        w.insert(w.end(), v.begin(), v.end());
                        fp_add(row, w, t.coeff);
                    }
                    if (!row.empty()) elim.insert(std::move(row));
                }
    }
}

std::string root_name(const Weight& beta) {
    std::string s = "x";
    for (int i = 0; i < beta.size(); ++i) {
        long a = static_cast<long>(beta[i].num());
        for (long k = 0; k < a; ++k) s += static_cast<char>('1' + i);
    }
    return s;
}

}  // namespace

namespace detail {

PbwData build_pbw_generators(const CartanData& cd) {
    PbwData d;
    d.roots = positive_roots_convex(cd);
    std::map<Weight, int> pos;
    for (int k = 0; k < static_cast<int>(d.roots.size()); ++k) pos[d.roots[k]] = k;
    d.defs.resize(d.roots.size());
    d.names.resize(d.roots.size());
    d.heights.resize(d.roots.size());

    // simple roots first so recursion always finds its ingredients
    std::vector<int> order(d.roots.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        Rational ha, hb;
        for (int i = 0; i < cd.r; ++i) ha += d.roots[a][i], hb += d.roots[b][i];
        return ha < hb;
    });

    for (int k : order) {
        const Weight& beta = d.roots[k];
        d.names[k] = root_name(beta);
        Rational h;
        for (int i = 0; i < cd.r; ++i) h += beta[i];
        d.heights[k] = static_cast<int>(static_cast<long>(h.num()));

        bool simple = d.heights[k] == 1;
        if (simple) {
            int i = 0;
            while (beta[i].is_zero()) ++i;
            d.defs[k] = FreePoly{{FreeWord{i}, RatFunc(1)}};
            continue;
        }
        // bracket with x1 when beta - alpha1 is a root, else with x2
        Weight rem1 = beta - Weight::alpha(cd.r, 0);
        auto it = pos.find(rem1);
        if (it != pos.end()) {
            const FreePoly& inner = d.defs[it->second];
            FreePoly x1{{FreeWord{0}, RatFunc(1)}};
            long tw = pairing_int(cd, Weight::alpha(cd.r, 0), rem1);
            FreePoly num = fp_combine(fp_mul(x1, inner), RatFunc(1), fp_mul(inner, x1), -Q(tw));
            RatFunc den = q_minus_qinv(cd.d[0]);
            d.defs[k] = FreePoly();
            for (const auto& [w, c] : num) d.defs[k].emplace(w, c / den);
        } else {
            Weight rem2 = beta - Weight::alpha(cd.r, 1);
            auto jt = pos.find(rem2);
            if (jt == pos.end()) throw std::logic_error("pbw: no bracket decomposition");
            const FreePoly& inner = d.defs[jt->second];
            FreePoly x2{{FreeWord{1}, RatFunc(1)}};
            long tw = pairing_int(cd, rem2, Weight::alpha(cd.r, 1));
            FreePoly num = fp_combine(fp_mul(inner, x2), RatFunc(1), fp_mul(x2, inner), -Q(tw));
            RatFunc den = q_minus_qinv(cd.d[1]);
            d.defs[k] = FreePoly();
            for (const auto& [w, c] : num) d.defs[k].emplace(w, c / den);
        }
    }
    return d;
}

}  // namespace detail

namespace {

// exponent vectors e with sum e_k * heights_k = deg and
// sum e_k * roots_k = target weight, listed in normal (convex) order
std::vector<Monomial> pbw_monomials(const PbwData& d, int deg, const Weight& target) {
    std::vector<Monomial> out;
    int n = static_cast<int>(d.roots.size());
    Monomial cur;
    auto rec = [&](auto&& self, int k, int rem, Weight acc) -> void {
        if (k == n) {
            if (rem == 0 && acc == target) out.push_back(cur);
            return;
        }
        self(self, k + 1, rem, acc);
        for (long e = 1; e * d.heights[k] <= rem; ++e) {
            cur.push_back({k, e});
            self(self, k + 1, rem - static_cast<int>(e) * d.heights[k],
                 acc + d.roots[k].scaled(Rational(e)));
            cur.pop_back();
        }
    };
    rec(rec, 0, deg, Weight(d.roots[0].size()));
    return out;
}

FreePoly pbw_monomial_image(const PbwData& d, const Monomial& m) {
    FreePoly r{{FreeWord{}, RatFunc(1)}};
    for (const auto& [g, e] : m)
        for (long k = 0; k < e; ++k) r = fp_mul(r, d.defs[g]);
    return r;
}

// solve target = sum_m c_m basis_m with every vector already reduced mod
// the Serre ideal; throws unless the solution exists and is unique
std::vector<RatFunc> solve_in_span(const std::vector<FreePoly>& basis, const FreePoly& target) {
    // dense Gaussian elimination on the stacked columns
    std::map<FreeWord, int> rows;
    auto touch = [&](const FreePoly& v) {
        for (const auto& [w, c] : v) rows.emplace(w, 0);
    };
    for (const auto& b : basis) touch(b);
    touch(target);
    int nr = 0;
    for (auto& [w, id] : rows) id = nr++;

    int nc = static_cast<int>(basis.size());
    std::vector<std::vector<RatFunc>> a(nr, std::vector<RatFunc>(nc + 1));
    for (int j = 0; j < nc; ++j)
        for (const auto& [w, c] : basis[j]) a[rows.at(w)][j] = c;
    for (const auto& [w, c] : target) a[rows.at(w)][nc] = c;

    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int piv = -1;
        for (int r2 = row; r2 < nr; ++r2)
            if (!a[r2][col].is_zero()) { piv = r2; break; }
        if (piv < 0) continue;
        std::swap(a[piv], a[row]);
        RatFunc inv = a[row][col].inv();
        for (int k = col; k <= nc; ++k) a[row][k] *= inv;
        for (int r2 = 0; r2 < nr; ++r2) {
            if (r2 == row || a[r2][col].is_zero()) continue;
            RatFunc f = a[r2][col];
            for (int k = col; k <= nc; ++k) a[r2][k] -= f * a[row][k];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (static_cast<int>(pivot_col.size()) != nc)
        throw std::logic_error(fmt::format(
            "pbw: straightening candidates are dependent ({} candidates, rank {}, {} words)",
            nc, pivot_col.size(), nr));
    for (int r2 = row; r2 < nr; ++r2)
        if (!a[r2][nc].is_zero())
            throw std::logic_error("pbw: straightening has no solution in normal monomials");
    std::vector<RatFunc> c(nc);
    for (int r2 = 0; r2 < row; ++r2) c[pivot_col[r2]] = a[r2][nc];
    return c;
}

}  // namespace

Presentation preset_cqU(const CartanData& cd) {
    validate_cartan(cd);
    if (cd.r > 2) throw std::invalid_argument("preset_cqU: rank must be 1 or 2");

    Presentation p;
    p.cartan = cd;
    p.name = "cqU";
    if (cd.r == 1) {
        p.gens.push_back({"x1", -Weight::alpha(1, 0), false, 0, 1});
        p.confluence_certified_degree = 6;
        p.finalize();
        return p;
    }

    PbwData d = detail::build_pbw_generators(cd);
    int n = static_cast<int>(d.roots.size());
    for (int k = 0; k < n; ++k)
        p.gens.push_back({d.names[k], -d.roots[k], false, k, d.heights[k]});

    FreeAlgebraSpec serre = serre_free_spec(cd);
    std::map<int, Eliminator<FreeWord>> ideal_by_degree;
    auto reduced = [&](const FreePoly& v, int deg) {
        auto it = ideal_by_degree.find(deg);
        if (it == ideal_by_degree.end()) {
            it = ideal_by_degree.emplace(deg, Eliminator<FreeWord>()).first;
            load_serre_ideal(serre, deg, it->second);
        }
        return it->second.reduce(v);
    };

    for (int b = 1; b < n; ++b) {
        for (int a = 0; a < b; ++a) {
            int deg = d.heights[a] + d.heights[b];
            Weight target_wt = d.roots[a] + d.roots[b];
            std::vector<Monomial> cand = pbw_monomials(d, deg, target_wt);
            std::vector<FreePoly> basis;
            basis.reserve(cand.size());
            for (const Monomial& m : cand) basis.push_back(reduced(pbw_monomial_image(d, m), deg));
            FreePoly target = reduced(fp_mul(d.defs[b], d.defs[a]), deg);
            std::vector<RatFunc> coef;
            try {
                coef = solve_in_span(basis, target);
            } catch (const std::logic_error& e) {
                throw std::logic_error(fmt::format("{} [pair {} * {}, degree {}]", e.what(),
                                                   d.names[b], d.names[a], deg));
            }
            RewriteRule r;
            r.left = b;
            r.right = a;
            for (std::size_t k = 0; k < cand.size(); ++k) r.rhs.add_term(cand[k], coef[k]);
            p.rules.push_back(std::move(r));
        }
    }
    p.confluence_certified_degree = 6;
    p.finalize();
    return p;
}

Presentation preset_localized_qmat32() {
    Presentation p;
    p.name = "localized-qmat32";
    p.cartan = preset_cartan("A2");

    Weight om1 = fundamental_weight(p.cartan, 0);
    Weight om2 = fundamental_weight(p.cartan, 1);
    Weight mu1 = om1;
    Weight mu2 = mu1 - Weight::alpha(2, 0);
    Weight mu3 = mu2 - Weight::alpha(2, 1);

    enum { Y = 0, X11, Z, X22, X12, X21, X31, X32 };
    p.gens = {
        {"y", -om1, true, Y, 1},     {"x11", mu1, false, X11, 1},
        {"z", -om2, true, Z, 1},     {"x22", mu2, false, X22, 1},
        {"x12", mu1, false, X12, 1}, {"x21", mu2, false, X21, 1},
        {"x31", mu3, false, X31, 1}, {"x32", mu3, false, X32, 1},
    };

    RatFunc qq = q_minus_qinv(1);
    auto mono = [](std::initializer_list<std::pair<int, long>> l) { return Monomial(l); };
    auto rule = [&](int left, int right, NcPoly rhs) {
        p.rules.push_back({left, right, std::move(rhs)});
    };
    auto one_term = [&](Monomial m, RatFunc c) { return NcPoly::monomial(std::move(m), c); };

    // commutations and straightenings: qmat(3,2) relations rewritten for
    // the y < x11 < z < x22 < x12 < x21 < x31 < x32 order, with the y- and
    // z-rules obtained by two-sided cancellation against x11 and Delta2
    rule(X11, Y, NcPoly::unit(RatFunc(1)));
    rule(Z, Y, one_term(mono({{Y, 1}, {Z, 1}}), RatFunc(1)));
    rule(Z, X11, one_term(mono({{X11, 1}, {Z, 1}}), RatFunc(1)));

    {
        NcPoly rhs = one_term(mono({{Y, 1}, {X22, 1}}), RatFunc(1));
        rhs.add_term(mono({{Y, 2}, {X12, 1}, {X21, 1}}), -(qq * Q(-2)));
        rule(X22, Y, std::move(rhs));
    }
    {
        NcPoly rhs = one_term(mono({{X11, 1}, {X22, 1}}), RatFunc(1));
        rhs.add_term(mono({{X12, 1}, {X21, 1}}), qq);
        rule(X22, X11, std::move(rhs));
    }
    {
        NcPoly rhs = one_term(mono({{Y, 1}}), RatFunc(1));
        rhs.add_term(mono({{Y, 1}, {Z, 1}, {X12, 1}, {X21, 1}}), Q(-1));
        rule(X22, Z, rhs);
        rule(Z, X22, std::move(rhs));  // Delta2 is central here, both orders agree
    }

    rule(X12, Y, one_term(mono({{Y, 1}, {X12, 1}}), Q(-1)));
    rule(X12, X11, one_term(mono({{X11, 1}, {X12, 1}}), Q(1)));
    rule(X12, Z, one_term(mono({{Z, 1}, {X12, 1}}), RatFunc(1)));
    rule(X12, X22, one_term(mono({{X22, 1}, {X12, 1}}), Q(-1)));

    rule(X21, Y, one_term(mono({{Y, 1}, {X21, 1}}), Q(-1)));
    rule(X21, X11, one_term(mono({{X11, 1}, {X21, 1}}), Q(1)));
    rule(X21, Z, one_term(mono({{Z, 1}, {X21, 1}}), RatFunc(1)));
    rule(X21, X22, one_term(mono({{X22, 1}, {X21, 1}}), Q(-1)));
    rule(X21, X12, one_term(mono({{X12, 1}, {X21, 1}}), RatFunc(1)));

    rule(X31, Y, one_term(mono({{Y, 1}, {X31, 1}}), Q(-1)));
    rule(X31, X11, one_term(mono({{X11, 1}, {X31, 1}}), Q(1)));
    rule(X31, Z, one_term(mono({{Z, 1}, {X31, 1}}), Q(-1)));
    rule(X31, X22, one_term(mono({{X22, 1}, {X31, 1}}), RatFunc(1)));
    rule(X31, X12, one_term(mono({{X12, 1}, {X31, 1}}), RatFunc(1)));
    rule(X31, X21, one_term(mono({{X21, 1}, {X31, 1}}), Q(1)));

    {
        NcPoly rhs = one_term(mono({{Y, 1}, {X32, 1}}), RatFunc(1));
        rhs.add_term(mono({{Y, 2}, {X12, 1}, {X31, 1}}), -(qq * Q(-2)));
        rule(X32, Y, std::move(rhs));
    }
    {
        NcPoly rhs = one_term(mono({{X11, 1}, {X32, 1}}), RatFunc(1));
        rhs.add_term(mono({{X12, 1}, {X31, 1}}), qq);
        rule(X32, X11, std::move(rhs));
    }
    rule(X32, Z, one_term(mono({{Z, 1}, {X32, 1}}), Q(-1)));
    rule(X32, X22, one_term(mono({{X22, 1}, {X32, 1}}), Q(1)));
    rule(X32, X12, one_term(mono({{X12, 1}, {X32, 1}}), Q(1)));
    {
        NcPoly rhs = one_term(mono({{X21, 1}, {X32, 1}}), RatFunc(1));
        rhs.add_term(mono({{X22, 1}, {X31, 1}}), qq);
        rule(X32, X21, std::move(rhs));
    }
    rule(X32, X31, one_term(mono({{X31, 1}, {X32, 1}}), Q(1)));

    rule(Y, X11, NcPoly::unit(RatFunc(1)));  // in-order cancellation

    // y^-1 = x11, z^-1 = Delta2 = x11 x22 - q^-1 x12 x21
    p.inverse_images[Y] = one_term(mono({{X11, 1}}), RatFunc(1));
    {
        NcPoly d2 = one_term(mono({{X11, 1}, {X22, 1}}), RatFunc(1));
        d2.add_term(mono({{X12, 1}, {X21, 1}}), -Q(-1));
        p.inverse_images[Z] = std::move(d2);
    }

    p.confluence_certified_degree = 4;
    p.finalize();
    return p;
}

Presentation preset_uqgstar(const CartanData& cd) {
    validate_cartan(cd);
    if (cd.r > 2) throw std::invalid_argument("preset_uqgstar: rank must be 1 or 2");
    Presentation floor = preset_cqU(cd);
    int nf = floor.size();

    Presentation p;
    p.cartan = cd;
    p.name = "uqgstar";

    for (int i = 0; i < cd.r; ++i)
        p.gens.push_back({fmt::format("K{}", i + 1), Weight(cd.r), true, i, 1});
    for (int fam = 1; fam <= 2; ++fam)
        for (int k = 0; k < nf; ++k) {
            const GenDecl& g = floor.gen(k);
            p.gens.push_back({"F" + g.name.substr(1) + fmt::format("_{}", fam), g.weight, false,
                              static_cast<int>(p.gens.size()), g.formal_degree});
        }

    auto fam_gen = [&](int fam, int k) { return cd.r + (fam - 1) * nf + k; };

    // torus generators commute
    for (int j = 1; j < cd.r; ++j)
        for (int i = 0; i < j; ++i)
            p.rules.push_back({j, i, NcPoly::monomial({{i, 1}, {j, 1}}, RatFunc(1))});

    // F K = q^{(alpha_i, beta)} K F for a family generator of weight -beta
    for (int fam = 1; fam <= 2; ++fam)
        for (int k = 0; k < nf; ++k)
            for (int i = 0; i < cd.r; ++i) {
                long tw = pairing_int(cd, Weight::alpha(cd.r, i), -floor.gen(k).weight);
                p.rules.push_back({fam_gen(fam, k), i,
                                   NcPoly::monomial({{i, 1}, {fam_gen(fam, k), 1}}, Q(tw))});
            }

    // the two families commute elementwise
    for (int k2 = 0; k2 < nf; ++k2)
        for (int k1 = 0; k1 < nf; ++k1)
            p.rules.push_back({fam_gen(2, k2), fam_gen(1, k1),
                               NcPoly::monomial({{fam_gen(1, k1), 1}, {fam_gen(2, k2), 1}},
                                                RatFunc(1))});

    // internal Serre-derived straightening, copied from the floor presentation
    for (int fam = 1; fam <= 2; ++fam)
        for (const RewriteRule& r : floor.rules) {
            RewriteRule nr;
            nr.left = fam_gen(fam, r.left);
            nr.right = fam_gen(fam, r.right);
            for (const auto& [m, c] : r.rhs.terms()) {
                Monomial nm;
                for (const auto& [g, e] : m) nm.push_back({fam_gen(fam, g), e});
                nr.rhs.add_term(nm, c);
            }
            p.rules.push_back(std::move(nr));
        }

    p.confluence_certified_degree = 4;
    p.finalize();
    return p;
}

}  // namespace qma

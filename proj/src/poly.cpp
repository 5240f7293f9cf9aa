#include "qma/poly.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace qma {

Monomial compress_word(const std::vector<Unit>& w) {
    Monomial m;
    for (const Unit& u : w) {
        if (!m.empty() && m.back().first == u.gen) {
            m.back().second += u.sign;
            if (m.back().second == 0) m.pop_back();
        } else {
            m.push_back({u.gen, u.sign});
        }
    }
    return m;
}

std::vector<Unit> expand_monomial(const Monomial& m) {
    std::vector<Unit> w;
    for (const auto& [g, e] : m) {
        int s = e > 0 ? 1 : -1;
        for (long k = 0; k < (e > 0 ? e : -e); ++k) w.push_back({g, s});
    }
    return w;
}

NcPoly NcPoly::unit(const RatFunc& c) {
    NcPoly p;
    p.add_term({}, c);
    return p;
}

NcPoly NcPoly::monomial(const Monomial& m, const RatFunc& c) {
    NcPoly p;
    p.add_term(m, c);
    return p;
}

RatFunc NcPoly::coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? RatFunc() : it->second;
}

void NcPoly::add_term(const Monomial& m, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
    NcPoly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
}

NcPoly NcPoly::operator-(const NcPoly& o) const {
    NcPoly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, -c);
    return r;
}

NcPoly NcPoly::operator-() const {
    NcPoly r;
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
}

NcPoly NcPoly::scaled(const RatFunc& c) const {
    NcPoly r;
    if (c.is_zero()) return r;
    for (const auto& [m, k] : t_) r.t_.emplace(m, k * c);
    return r;
}

namespace {

// deglex word order used by the static termination check: total formal
// degree first, then lexicographic on generator-index sequences.
std::vector<int> gen_sequence(const Monomial& m) {
    std::vector<int> s;
    for (const auto& [g, e] : m)
        for (long k = 0; k < (e > 0 ? e : -e); ++k) s.push_back(g);
    return s;
}

bool is_pure_commutation(const RewriteRule& rule, RatFunc* coeff_out) {
    if (rule.rhs.term_count() != 1) return false;
    const auto& [m, c] = *rule.rhs.terms().begin();
    Monomial want;
    int lo = std::min(rule.left, rule.right), hi = std::max(rule.left, rule.right);
    want = {{lo, 1}, {hi, 1}};
    if (m != want) return false;
    if (coeff_out) *coeff_out = c;
    return true;
}

}  // namespace

void Presentation::finalize() {
    if (finalized_) return;
    validate_cartan(cartan);

    name_index_.clear();
    rule_index_.clear();
    for (int i = 0; i < size(); ++i) {
        GenDecl& g = gens[i];
        if (g.name.empty()) throw std::invalid_argument("presentation: unnamed generator");
        if (!name_index_.emplace(g.name, i).second)
            throw std::invalid_argument("presentation: duplicate generator " + g.name);
        if (g.order_index != i)
            throw std::invalid_argument("presentation: order_index must match position");
        if (g.formal_degree < 1)
            throw std::invalid_argument("presentation: formal degree must be positive");
        if (g.weight.size() != cartan.r)
            throw std::invalid_argument("presentation: weight rank mismatch for " + g.name);
    }

    for (const auto& [g, img] : inverse_images) {
        if (g < 0 || g >= size()) throw std::invalid_argument("inverse image: unknown generator");
        if (!gens[g].invertible)
            throw std::invalid_argument("inverse image for non-invertible " + gens[g].name);
    }

    auto check_monomial = [&](const Monomial& m, const std::string& where) {
        int prev = -1;
        for (const auto& [g, e] : m) {
            if (g < 0 || g >= size()) throw std::invalid_argument(where + ": unknown generator");
            if (g <= prev) throw std::invalid_argument(where + ": monomial not normal-ordered");
            if (e == 0) throw std::invalid_argument(where + ": zero exponent");
            if (e < 0 && !gens[g].invertible)
                throw std::invalid_argument(where + ": negative power of " + gens[g].name);
            prev = g;
        }
    };

    for (const RewriteRule& rule : rules) {
        if (rule.left < 0 || rule.left >= size() || rule.right < 0 || rule.right >= size())
            throw std::invalid_argument("rule: unknown generator");
        if (rule.left == rule.right)
            throw std::invalid_argument("rule: same generator on both lhs positions");
        std::array<int, 4> key{rule.left, 1, rule.right, 1};
        if (!rule_index_.emplace(key, rule.rhs).second)
            throw std::invalid_argument(fmt::format("rule: duplicate for pair {} {}",
                                                    gens[rule.left].name, gens[rule.right].name));

        // weight homogeneity
        Weight lw = gens[rule.left].weight + gens[rule.right].weight;
        for (const auto& [m, c] : rule.rhs.terms()) {
            check_monomial(m, "rule rhs");
            if (weight(m) != lw)
                throw std::invalid_argument(
                    fmt::format("rule {} {}: rhs term {} breaks weight homogeneity",
                                gens[rule.left].name, gens[rule.right].name, mono_str(m)));
        }

        if (rule.left < rule.right) {
            // in-order cancellation rule: guard against the identity rewrite
            if (rule.rhs.terms().count(Monomial{{rule.left, 1}, {rule.right, 1}}))
                throw std::invalid_argument("in-order rule rewrites to itself");
        } else {
            // static termination check when no generator is invertible:
            // deglex must decrease on every rule. Presentations with
            // invertible generators cannot be ordered this way (inverse
            // substitutions raise formal degree) and are certified
            // dynamically instead (budget + confluence + dimension oracles).
            bool any_invertible = false;
            for (const GenDecl& g : gens) any_invertible |= g.invertible;
            if (!any_invertible) {
                long ldeg = gens[rule.left].formal_degree + gens[rule.right].formal_degree;
                std::vector<int> lseq{rule.left, rule.right};
                for (const auto& [m, c] : rule.rhs.terms()) {
                    long deg = formal_degree(m);
                    std::vector<int> seq = gen_sequence(m);
                    bool smaller = deg < ldeg || (deg == ldeg && std::lexicographical_compare(
                                                                     seq.begin(), seq.end(),
                                                                     lseq.begin(), lseq.end()));
                    if (!smaller)
                        throw std::invalid_argument(fmt::format(
                            "rule {} {}: rhs term {} not smaller in the word order",
                            gens[rule.left].name, gens[rule.right].name, mono_str(m)));
                }
            }
        }
    }

    // Auto-derived sign variants of pure q-commutations involving invertible
    // generators: L R = c R L implies the three inverse-decorated versions.
    for (const RewriteRule& rule : rules) {
        if (rule.left < rule.right) continue;
        RatFunc c;
        if (!is_pure_commutation(rule, &c)) continue;
        int l = rule.left, r = rule.right;
        auto put = [&](int sl, int sr, const RatFunc& k, long el, long er) {
            Monomial m{{r, er}, {l, el}};
            rule_index_.emplace(std::array<int, 4>{l, sl, r, sr}, NcPoly::monomial(m, k));
        };
        bool l_ok = gens[l].invertible && !inverse_images.count(l);
        bool r_ok = gens[r].invertible && !inverse_images.count(r);
        if (r_ok) put(1, -1, c.inv(), 1, -1);
        if (l_ok) put(-1, 1, c.inv(), -1, 1);
        if (l_ok && r_ok) put(-1, -1, c, -1, -1);
    }

    for (const auto& [g, img] : inverse_images)
        for (const auto& [m, c] : img.terms()) check_monomial(m, "inverse image");

    finalized_ = true;
}

int Presentation::gen_index(const std::string& n) const {
    auto it = name_index_.find(n);
    return it == name_index_.end() ? -1 : it->second;
}

long Presentation::formal_degree(const Monomial& m) const {
    long d = 0;
    for (const auto& [g, e] : m) d += (e > 0 ? e : -e) * gens[g].formal_degree;
    return d;
}

long Presentation::formal_degree(const NcPoly& p) const {
    long d = 0;
    for (const auto& [m, c] : p.terms()) d = std::max(d, formal_degree(m));
    return d;
}

Weight Presentation::weight(const Monomial& m) const {
    Weight w(cartan.r);
    for (const auto& [g, e] : m) w = w + gens[g].weight.scaled(Rational(e));
    return w;
}

std::optional<Weight> Presentation::homogeneous_weight(const NcPoly& p) const {
    std::optional<Weight> w;
    for (const auto& [m, c] : p.terms()) {
        Weight mw = weight(m);
        if (!w)
            w = mw;
        else if (*w != mw)
            return std::nullopt;
    }
    return w;
}

const NcPoly* Presentation::find_rule(int gl, int sl, int gr, int sr) const {
    auto it = rule_index_.find({gl, sl, gr, sr});
    return it == rule_index_.end() ? nullptr : &it->second;
}

std::string Presentation::mono_str(const Monomial& m) const {
    if (m.empty()) return "1";
    std::string s;
    for (const auto& [g, e] : m) {
        if (!s.empty()) s += "*";
        s += gens[g].name;
        if (e != 1) s += fmt::format("^{}", e);
    }
    return s;
}

std::string Presentation::poly_str(const NcPoly& p) const {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : p.terms()) {
        if (!s.empty()) s += " + ";
        std::string cs = c.str();
        if (m.empty()) {
            s += cs;
            continue;
        }
        if (c.is_one()) {
            s += mono_str(m);
            continue;
        }
        bool atom = c.is_laurent() && c.num().term_count() == 1;
        if (!atom && cs.front() != '(') cs = "(" + cs + ")";
        s += cs + "*" + mono_str(m);
    }
    return s;
}

namespace {

struct Redex {
    enum Kind { None, InverseImage, Cancel, Rule } kind = None;
    int pos = 0;
    const NcPoly* rhs = nullptr;  // for Rule
};

Redex find_redex(const Presentation& p, const std::vector<Unit>& w, bool rightmost) {
    const int n = static_cast<int>(w.size());
    // inverse-image substitutions first, anywhere in the word
    for (int i = 0; i < n; ++i) {
        if (w[i].sign < 0) {
            auto it = p.inverse_images.find(w[i].gen);
            if (it != p.inverse_images.end()) return {Redex::InverseImage, i, nullptr};
        }
    }
    auto pair_at = [&](int i) -> Redex {
        const Unit &a = w[i], &b = w[i + 1];
        if (a.gen == b.gen) {
            if (a.sign != b.sign) return {Redex::Cancel, i, nullptr};
            return {};
        }
        if (const NcPoly* r = p.find_rule(a.gen, a.sign, b.gen, b.sign))
            return {Redex::Rule, i, r};
        return {};
    };
    if (!rightmost) {
        for (int i = 0; i + 1 < n; ++i)
            if (Redex r = pair_at(i); r.kind != Redex::None) return r;
    } else {
        for (int i = n - 2; i >= 0; --i)
            if (Redex r = pair_at(i); r.kind != Redex::None) return r;
    }
    return {};
}

NcPoly normal_form_impl(const Presentation& p, std::vector<RawTerm> input, long budget,
                        bool rightmost) {
    if (!p.finalized()) throw std::logic_error("presentation not finalized");
    NcPoly out;
    long steps = 0;
    while (!input.empty()) {
        RawTerm t = std::move(input.back());
        input.pop_back();
        if (t.coeff.is_zero()) continue;
        if (++steps > budget)
            throw RewriteBudgetError(
                fmt::format("rewriting exceeded {} steps in {}", budget, p.name));

        Redex rd = find_redex(p, t.word, rightmost);
        if (rd.kind == Redex::None) {
            // no redex left: any out-of-order adjacency is a missing rule
            for (std::size_t i = 0; i + 1 < t.word.size(); ++i)
                if (t.word[i].gen > t.word[i + 1].gen)
                    throw MissingRuleError(fmt::format(
                        "no rule straightens {}{} {}{}", p.gen(t.word[i].gen).name,
                        t.word[i].sign < 0 ? "^-1" : "", p.gen(t.word[i + 1].gen).name,
                        t.word[i + 1].sign < 0 ? "^-1" : ""));
            out.add_term(compress_word(t.word), t.coeff);
            continue;
        }

        if (rd.kind == Redex::Cancel) {
            t.word.erase(t.word.begin() + rd.pos, t.word.begin() + rd.pos + 2);
            input.push_back(std::move(t));
            continue;
        }

        if (rd.kind == Redex::InverseImage) {
            const NcPoly& img = p.inverse_images.at(t.word[rd.pos].gen);
            for (const auto& [m, c] : img.terms()) {
                RawTerm nt;
                nt.coeff = t.coeff * c;
                nt.word.assign(t.word.begin(), t.word.begin() + rd.pos);
                std::vector<Unit> mid = expand_monomial(m);
                nt.word.insert(nt.word.end(), mid.begin(), mid.end());
                nt.word.insert(nt.word.end(), t.word.begin() + rd.pos + 1, t.word.end());
                input.push_back(std::move(nt));
            }
            continue;
        }

        for (const auto& [m, c] : rd.rhs->terms()) {
            RawTerm nt;
            nt.coeff = t.coeff * c;
            nt.word.assign(t.word.begin(), t.word.begin() + rd.pos);
            std::vector<Unit> mid = expand_monomial(m);
            nt.word.insert(nt.word.end(), mid.begin(), mid.end());
            nt.word.insert(nt.word.end(), t.word.begin() + rd.pos + 2, t.word.end());
            input.push_back(std::move(nt));
        }
    }
    return out;
}

}  // namespace

NcPoly normal_form(const Presentation& p, std::vector<RawTerm> input, long budget) {
    return normal_form_impl(p, std::move(input), budget, false);
}

NcPoly normal_form(const Presentation& p, const RatFunc& coeff, const std::vector<Unit>& word,
                   long budget) {
    return normal_form_impl(p, {RawTerm{coeff, word}}, budget, false);
}

NcPoly nc_mul(const Presentation& p, const NcPoly& a, const NcPoly& b, long budget) {
    std::vector<RawTerm> raw;
    for (const auto& [ma, ca] : a.terms()) {
        std::vector<Unit> wa = expand_monomial(ma);
        for (const auto& [mb, cb] : b.terms()) {
            RawTerm t;
            t.coeff = ca * cb;
            t.word = wa;
            std::vector<Unit> wb = expand_monomial(mb);
            t.word.insert(t.word.end(), wb.begin(), wb.end());
            raw.push_back(std::move(t));
        }
    }
    return normal_form(p, std::move(raw), budget);
}

NcPoly gen_poly(const Presentation& p, int gen, long exp) {
    if (gen < 0 || gen >= p.size()) throw std::invalid_argument("gen_poly: unknown generator");
    if (exp == 0) return NcPoly::unit(RatFunc(1));
    if (exp < 0 && !p.gen(gen).invertible)
        throw std::invalid_argument("gen_poly: negative power of non-invertible generator");
    if (exp < 0 && p.inverse_images.count(gen)) {
        std::vector<Unit> w(-exp, Unit{gen, -1});
        return normal_form(p, RatFunc(1), w);
    }
    return NcPoly::monomial({{gen, exp}});
}

NcPoly gen_poly(const Presentation& p, const std::string& name, long exp) {
    int g = p.gen_index(name);
    if (g < 0) throw std::invalid_argument("gen_poly: unknown generator " + name);
    return gen_poly(p, g, exp);
}

std::vector<Monomial> graded_basis(const Presentation& p, int deg) {
    if (!p.finalized()) throw std::logic_error("presentation not finalized");
    if (deg < 0) throw std::invalid_argument("graded_basis: negative degree");
    std::vector<Monomial> out;
    Monomial cur;

    auto normal_join = [&](int g, long e) {
        if (cur.empty()) return true;
        auto [pg, pe] = cur.back();
        return p.find_rule(pg, pe > 0 ? 1 : -1, g, e > 0 ? 1 : -1) == nullptr;
    };

    // generators in order; exponent 0 = absent; degree budget bounds everything
    auto rec = [&](auto&& self, int g, long rem) -> void {
        if (g == p.size()) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        self(self, g + 1, rem);  // skip generator
        long fd = p.gen(g).formal_degree;
        for (long e = 1; e * fd <= rem; ++e) {
            if (normal_join(g, e)) {
                cur.push_back({g, e});
                self(self, g + 1, rem - e * fd);
                cur.pop_back();
            }
            if (p.gen(g).invertible && !p.inverse_images.count(g) && normal_join(g, -e)) {
                cur.push_back({g, -e});
                self(self, g + 1, rem - e * fd);
                cur.pop_back();
            }
        }
    };
    rec(rec, 0, deg);
    std::sort(out.begin(), out.end());
    return out;
}

ConfluenceReport check_local_confluence(const Presentation& p, int max_deg, long budget) {
    ConfluenceReport rep;
    rep.certified_degree = max_deg;

    std::vector<Unit> alphabet;
    for (int g = 0; g < p.size(); ++g) {
        alphabet.push_back({g, 1});
        if (p.gen(g).invertible && !p.inverse_images.count(g)) alphabet.push_back({g, -1});
    }

    auto word_str = [&](const std::vector<Unit>& w) {
        std::string s;
        for (const Unit& u : w) {
            if (!s.empty()) s += "*";
            s += p.gen(u.gen).name;
            if (u.sign < 0) s += "^-1";
        }
        return s;
    };

    auto expand_at = [&](const std::vector<Unit>& w, int i) -> std::optional<std::vector<RawTerm>> {
        const Unit &a = w[i], &b = w[i + 1];
        std::vector<RawTerm> res;
        auto splice = [&](const NcPoly& rhs) {
            for (const auto& [m, c] : rhs.terms()) {
                RawTerm t;
                t.coeff = c;
                t.word.assign(w.begin(), w.begin() + i);
                std::vector<Unit> mid = expand_monomial(m);
                t.word.insert(t.word.end(), mid.begin(), mid.end());
                t.word.insert(t.word.end(), w.begin() + i + 2, w.end());
                res.push_back(std::move(t));
            }
        };
        if (a.gen == b.gen && a.sign != b.sign) {
            RawTerm t;
            t.coeff = RatFunc(1);
            t.word.assign(w.begin(), w.begin() + i);
            t.word.insert(t.word.end(), w.begin() + i + 2, w.end());
            res.push_back(std::move(t));
            return res;
        }
        if (const NcPoly* r = p.find_rule(a.gen, a.sign, b.gen, b.sign)) {
            splice(*r);
            return res;
        }
        return std::nullopt;
    };

    // Critical three-letter words: both adjacent pairs are redexes. Resolving
    // left-first and right-first must agree.
    for (const Unit& u1 : alphabet)
        for (const Unit& u2 : alphabet)
            for (const Unit& u3 : alphabet) {
                std::vector<Unit> w{u1, u2, u3};
                auto left = expand_at(w, 0);
                auto right = expand_at(w, 1);
                if (!left || !right) continue;
                ++rep.overlaps_checked;
                NcPoly a = normal_form_impl(p, *left, budget, false);
                NcPoly b = normal_form_impl(p, *right, budget, false);
                if (a != b) {
                    rep.pass = false;
                    if (rep.counterexample.empty()) rep.counterexample = word_str(w);
                }
            }

    // Exhaustive functional check: leftmost and rightmost strategies agree on
    // every word of formal degree <= max_deg.
    std::vector<Unit> cur;
    long cur_deg = 0;
    auto rec = [&](auto&& self) -> void {
        if (!rep.pass) return;
        if (!cur.empty()) {
            ++rep.words_checked;
            NcPoly a = normal_form_impl(p, {RawTerm{RatFunc(1), cur}}, budget, false);
            NcPoly b = normal_form_impl(p, {RawTerm{RatFunc(1), cur}}, budget, true);
            if (a != b) {
                rep.pass = false;
                if (rep.counterexample.empty()) rep.counterexample = word_str(cur);
                return;
            }
        }
        for (const Unit& u : alphabet) {
            long fd = p.gen(u.gen).formal_degree;
            if (cur_deg + fd > max_deg) continue;
            cur.push_back(u);
            cur_deg += fd;
            self(self);
            cur_deg -= fd;
            cur.pop_back();
        }
    };
    rec(rec);
    if (!rep.pass) rep.certified_degree = 0;
    return rep;
}

}  // namespace qma

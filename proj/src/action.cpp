#include "qma/action.hpp"

#include "pbw_detail.hpp"
#include "qma/presets.hpp"
#include "qma/qnum.hpp"

#include <fmt/core.h>

#include <stdexcept>

namespace qma {

std::string to_string(HopfTag t) {
    switch (t) {
        case HopfTag::UqG: return "quantum-group";
        case HopfTag::UqBPlus: return "quantum-borel-plus";
        case HopfTag::UqBMinus: return "quantum-borel-minus";
        case HopfTag::UqGStar: return "quantum-dual-group";
        case HopfTag::ClassicalG: return "classical-group";
        case HopfTag::ClassicalBMinus: return "classical-borel-minus";
    }
    throw std::logic_error("unknown hopf tag");
}

int HopfSpec::gen_index(const std::string& name) const {
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (gens[k].name == name) return static_cast<int>(k);
    return -1;
}

HopfSpec preset_hopf(HopfTag tag, const CartanData& cd) {
    validate_cartan(cd);
    HopfSpec h;
    h.tag = tag;
    h.cartan = cd;
    Weight zero(cd.r);
    auto cartan_pair = [&](int i) {
        h.gens.push_back({fmt::format("K{}", i + 1), ExtensionLaw::Grouplike, i, 1, zero});
        h.gens.push_back({fmt::format("K{}inv", i + 1), ExtensionLaw::Grouplike, i, -1, zero});
    };
    for (int i = 0; i < cd.r; ++i) {
        Weight ai = Weight::alpha(cd.r, i);
        switch (tag) {
            case HopfTag::UqG:
                cartan_pair(i);
                h.gens.push_back({fmt::format("E{}", i + 1), ExtensionLaw::SkewKRight, i, 1, ai});
                h.gens.push_back(
                    {fmt::format("F{}", i + 1), ExtensionLaw::SkewKinvLeft, i, 1, -ai});
                break;
            case HopfTag::UqBPlus:
                cartan_pair(i);
                h.gens.push_back({fmt::format("E{}", i + 1), ExtensionLaw::SkewKRight, i, 1, ai});
                break;
            case HopfTag::UqBMinus:
                cartan_pair(i);
                h.gens.push_back(
                    {fmt::format("F{}", i + 1), ExtensionLaw::SkewKinvLeft, i, 1, -ai});
                break;
            case HopfTag::UqGStar:
                cartan_pair(i);
                h.gens.push_back(
                    {fmt::format("F{}_1", i + 1), ExtensionLaw::SkewKinvLeft, i, 1, -ai});
                h.gens.push_back(
                    {fmt::format("F{}_2", i + 1), ExtensionLaw::SkewKinvRight, i, 1, -ai});
                break;
            case HopfTag::ClassicalG:
                h.gens.push_back({fmt::format("h{}", i + 1), ExtensionLaw::CartanDiagonal, i, 1,
                                  zero});
                h.gens.push_back({fmt::format("e{}", i + 1), ExtensionLaw::Derivation, i, 1, ai});
                h.gens.push_back({fmt::format("f{}", i + 1), ExtensionLaw::Derivation, i, 1, -ai});
                break;
            case HopfTag::ClassicalBMinus:
                h.gens.push_back({fmt::format("h{}", i + 1), ExtensionLaw::CartanDiagonal, i, 1,
                                  zero});
                h.gens.push_back({fmt::format("f{}", i + 1), ExtensionLaw::Derivation, i, 1, -ai});
                break;
        }
    }
    return h;
}

namespace {

bool is_diagonal(ExtensionLaw law) {
    return law == ExtensionLaw::Grouplike || law == ExtensionLaw::CartanDiagonal;
}

RatFunc Q(long k) { return RatFunc::q_power(k); }

const NcPoly& stored_image(const ActionTable& t, int g, int gen) {
    auto it = t.images.find({g, gen});
    if (it == t.images.end())
        throw std::out_of_range(fmt::format("action: no image of {} under {}",
                                            t.algebra.gen(gen).name, t.hopf.gens[g].name));
    return it->second;
}

// image of a single unit; negative units (inverses of invertible
// generators) get the image forced by D(s s^{-1}) = D(1) = 0
NcPoly unit_image(const ActionTable& t, int g, const Unit& u) {
    const NcPoly& base = stored_image(t, g, u.gen);
    if (u.sign > 0 || base.is_zero()) return base;
    const HopfGen& hg = t.hopf.gens[g];
    const CartanData& cd = t.hopf.cartan;
    long pr = pairing_int(cd, Weight::alpha(cd.r, hg.i), t.algebra.gen(u.gen).weight);
    RatFunc scale;
    switch (hg.law) {
        case ExtensionLaw::Derivation: scale = RatFunc(-1); break;
        case ExtensionLaw::SkewKRight: scale = -Q(-pr); break;
        case ExtensionLaw::SkewKinvLeft:
        case ExtensionLaw::SkewKinvRight: scale = -Q(pr); break;
        default: throw std::logic_error("diagonal law has no unit image");
    }
    NcPoly sinv = NcPoly::monomial({{u.gen, -1}}, RatFunc(1));
    return nc_mul(t.algebra, nc_mul(t.algebra, sinv, base, t.budget), sinv, t.budget)
        .scaled(scale);
}

RatFunc diagonal_scalar(const ActionTable& t, const HopfGen& hg, const Weight& w) {
    const CartanData& cd = t.hopf.cartan;
    long pr = pairing_int(cd, Weight::alpha(cd.r, hg.i), w);
    if (hg.law == ExtensionLaw::Grouplike) return Q(hg.power * pr);
    return RatFunc(Rational(BigInt(pr), BigInt(cd.d[hg.i])));
}

// position-sum expansion of one raw word under a (skew) derivation law,
// appended to out as raw terms awaiting one shared normal_form pass
void act_word(const ActionTable& t, int g, const RatFunc& coeff, const std::vector<Unit>& w,
              std::vector<RawTerm>& out) {
    const HopfGen& hg = t.hopf.gens[g];
    const Presentation& p = t.algebra;
    const CartanData& cd = t.hopf.cartan;
    auto unit_weight = [&](const Unit& u) {
        return p.gen(u.gen).weight.scaled(Rational(u.sign));
    };
    if (is_diagonal(hg.law)) {
        Weight tot(cd.r);
        for (const Unit& u : w) tot = tot + unit_weight(u);
        RatFunc s = diagonal_scalar(t, hg, tot);
        if (!s.is_zero()) out.push_back({coeff * s, w});
        return;
    }
    Weight alpha = Weight::alpha(cd.r, hg.i);
    int n = static_cast<int>(w.size());
    std::vector<Weight> suffix(n + 1, Weight(cd.r));  // suffix[k] = weight of w[k..]
    for (int k = n - 1; k >= 0; --k) suffix[k] = suffix[k + 1] + unit_weight(w[k]);
    Weight prefix(cd.r);
    for (int k = 0; k < n; ++k) {
        NcPoly img = unit_image(t, g, w[k]);
        if (!img.is_zero()) {
            RatFunc tw(1);
            switch (hg.law) {
                case ExtensionLaw::SkewKRight:
                    tw = Q(pairing_int(cd, alpha, suffix[k + 1]));
                    break;
                case ExtensionLaw::SkewKinvLeft:
                    tw = Q(-pairing_int(cd, alpha, prefix));
                    break;
                case ExtensionLaw::SkewKinvRight:
                    tw = Q(-pairing_int(cd, alpha, suffix[k + 1]));
                    break;
                default: break;  // plain derivation
            }
            for (const auto& [m, c] : img.terms()) {
                RawTerm rt;
                rt.coeff = coeff * tw * c;
                rt.word.assign(w.begin(), w.begin() + k);
                std::vector<Unit> mid = expand_monomial(m);
                rt.word.insert(rt.word.end(), mid.begin(), mid.end());
                rt.word.insert(rt.word.end(), w.begin() + k + 1, w.end());
                out.push_back(std::move(rt));
            }
        }
        prefix = prefix + unit_weight(w[k]);
    }
}

NcPoly act_impl(const ActionTable& t, int g, const NcPoly& a) {
    const HopfGen& hg = t.hopf.gens[g];
    if (is_diagonal(hg.law)) {
        NcPoly out;
        for (const auto& [m, c] : a.terms())
            out.add_term(m, c * diagonal_scalar(t, hg, t.algebra.weight(m)));
        return out;
    }
    std::vector<RawTerm> raw;
    for (const auto& [m, c] : a.terms()) act_word(t, g, c, expand_monomial(m), raw);
    return normal_form(t.algebra, std::move(raw), t.budget);
}

std::string word_str(const Presentation& p, const std::vector<Unit>& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const Unit& u : w) {
        if (!s.empty()) s += "*";
        s += p.gen(u.gen).name;
        if (u.sign < 0) s += "^-1";
    }
    return s;
}

}  // namespace

NcPoly act(const ActionTable& t, int g, const NcPoly& a) {
    if (!t.certified) throw std::logic_error("action table not certified");
    if (g < 0 || g >= static_cast<int>(t.hopf.gens.size()))
        throw std::out_of_range("hopf generator index");
    return act_impl(t, g, a);
}

NcPoly act(const ActionTable& t, const std::string& hopf_gen, const NcPoly& a) {
    int g = t.hopf.gen_index(hopf_gen);
    if (g < 0) throw std::invalid_argument("unknown hopf generator: " + hopf_gen);
    return act(t, g, a);
}

NcPoly act_divided(const ActionTable& t, int g, long n, const NcPoly& a) {
    if (n < 0) throw std::invalid_argument("negative divided power");
    if (!t.certified) throw std::logic_error("action table not certified");
    const HopfGen& hg = t.hopf.gens.at(g);
    if (is_diagonal(hg.law))
        throw std::invalid_argument("divided powers need a derivation-type generator");
    NcPoly out = a;
    for (long k = 0; k < n && !out.is_zero(); ++k) out = act_impl(t, g, out);
    if (out.is_zero()) return out;
    RatFunc fact;
    if (hg.law == ExtensionLaw::Derivation) {
        Rational f(1);
        for (long k = 2; k <= n; ++k) f *= Rational(k);
        fact = RatFunc(f);
    } else {
        fact = q_factorial(n, t.hopf.cartan.d[hg.i]);
    }
    return out.scaled(fact.inv());
}

NcPoly act_divided_E(const ActionTable& t, int i, long n, const NcPoly& a) {
    for (std::size_t g = 0; g < t.hopf.gens.size(); ++g)
        if (t.hopf.gens[g].law == ExtensionLaw::SkewKRight && t.hopf.gens[g].i == i)
            return act_divided(t, static_cast<int>(g), n, a);
    throw std::invalid_argument(fmt::format("no raising generator for root {}", i + 1));
}

VerificationReport check_action_well_defined(ActionTable& t, int max_deg) {
    const Presentation& p = t.algebra;
    VerificationReport rep;
    rep.set_config("algebra", p.name);
    rep.set_config("hopf", to_string(t.hopf.tag));
    rep.set_config("max_deg", std::to_string(max_deg));
    t.certified = false;

    const std::string anchor_action = "module-algebra action on the quantized coordinate ring";
    const std::string anchor_loc = "extension of the action to the localized algebra";

    // stored images must shift weights exactly by the generator's weight
    {
        bool ok = true;
        for (const auto& [key, img] : t.images) {
            if (img.is_zero()) continue;
            Weight want = p.gen(key.second).weight + t.hopf.gens[key.first].shift;
            auto got = p.homogeneous_weight(img);
            if (!got || !(*got == want)) {
                rep.add_fail("images-weight-consistency", anchor_action, max_deg,
                             fmt::format("{} on {}", t.hopf.gens[key.first].name,
                                         p.gen(key.second).name),
                             want.str(), got ? got->str() : "inhomogeneous");
                ok = false;
                break;
            }
        }
        if (ok) rep.add_pass("images-weight-consistency", anchor_action, max_deg);
    }

    // acting on both sides of every rewrite rule agrees in the quotient
    {
        bool ok = true;
        for (std::size_t g = 0; ok && g < t.hopf.gens.size(); ++g) {
            for (const RewriteRule& r : p.rules) {
                std::vector<Unit> lhs{{r.left, 1}, {r.right, 1}};
                std::vector<RawTerm> raw;
                act_word(t, static_cast<int>(g), RatFunc(1), lhs, raw);
                NcPoly via_lhs = normal_form(p, std::move(raw), t.budget);
                NcPoly via_rhs = act_impl(t, static_cast<int>(g), r.rhs);
                if (via_lhs != via_rhs) {
                    rep.add_fail("action-descends-through-rules", anchor_action, max_deg,
                                 fmt::format("{} on {}", t.hopf.gens[g].name, word_str(p, lhs)),
                                 p.poly_str(via_rhs), p.poly_str(via_lhs));
                    ok = false;
                    break;
                }
            }
        }
        if (ok) rep.add_pass("action-descends-through-rules", anchor_action, max_deg);
    }

    // inverse generators act consistently with their defining identities
    {
        bool ok = true;
        bool any = false;
        for (int s = 0; ok && s < p.size(); ++s) {
            if (!p.gen(s).invertible) continue;
            any = true;
            auto it = p.inverse_images.find(s);
            if (it != p.inverse_images.end()) {
                // s = P^{-1}: both s*P and P*s must act like 1
                for (std::size_t g = 0; ok && g < t.hopf.gens.size(); ++g) {
                    NcPoly expected = act_impl(t, static_cast<int>(g), NcPoly::unit(RatFunc(1)));
                    for (int side = 0; ok && side < 2; ++side) {
                        std::vector<RawTerm> raw;
                        for (const auto& [m, c] : it->second.terms()) {
                            std::vector<Unit> w;
                            if (side == 0) w.push_back({s, 1});
                            std::vector<Unit> mid = expand_monomial(m);
                            w.insert(w.end(), mid.begin(), mid.end());
                            if (side == 1) w.push_back({s, 1});
                            act_word(t, static_cast<int>(g), c, w, raw);
                        }
                        NcPoly got = normal_form(p, std::move(raw), t.budget);
                        if (got != expected) {
                            rep.add_fail(
                                "inverse-generators-consistent", anchor_loc, max_deg,
                                fmt::format("{} on the inverse identity of {}",
                                            t.hopf.gens[g].name, p.gen(s).name),
                                p.poly_str(expected), p.poly_str(got));
                            ok = false;
                        }
                    }
                }
            } else {
                std::vector<std::vector<Unit>> words;
                words.push_back({{s, 1}, {s, -1}});
                words.push_back({{s, -1}, {s, 1}});
                for (std::size_t g = 0; ok && g < t.hopf.gens.size(); ++g) {
                    NcPoly expected = act_impl(t, static_cast<int>(g), NcPoly::unit(RatFunc(1)));
                    for (const auto& w : words) {
                        std::vector<RawTerm> raw;
                        act_word(t, static_cast<int>(g), RatFunc(1), w, raw);
                        NcPoly got = normal_form(p, std::move(raw), t.budget);
                        if (got != expected) {
                            rep.add_fail("inverse-generators-consistent", anchor_loc, max_deg,
                                         fmt::format("{} on {}", t.hopf.gens[g].name,
                                                     word_str(p, w)),
                                         p.poly_str(expected), p.poly_str(got));
                            ok = false;
                            break;
                        }
                    }
                }
            }
        }
        if (!any)
            rep.add_skip("inverse-generators-consistent", anchor_loc);
        else if (ok)
            rep.add_pass("inverse-generators-consistent", anchor_loc, max_deg);
    }

    // rule checks under left monomial contexts: acting on the raw word
    // m*lhs agrees with acting on the normalized m*rhs
    {
        bool ok = true;
        for (int d = 1; ok && d + 2 <= max_deg; ++d) {
            for (const Monomial& m : graded_basis(p, d)) {
                std::vector<Unit> ctx = expand_monomial(m);
                NcPoly mpoly = NcPoly::monomial(m, RatFunc(1));
                for (std::size_t g = 0; ok && g < t.hopf.gens.size(); ++g) {
                    for (const RewriteRule& r : p.rules) {
                        std::vector<Unit> w = ctx;
                        w.push_back({r.left, 1});
                        w.push_back({r.right, 1});
                        std::vector<RawTerm> raw;
                        act_word(t, static_cast<int>(g), RatFunc(1), w, raw);
                        NcPoly via_lhs = normal_form(p, std::move(raw), t.budget);
                        NcPoly via_rhs = act_impl(
                            t, static_cast<int>(g), nc_mul(p, mpoly, r.rhs, t.budget));
                        if (via_lhs != via_rhs) {
                            rep.add_fail("rules-under-monomial-contexts", anchor_action, max_deg,
                                         fmt::format("{} on {}", t.hopf.gens[g].name,
                                                     word_str(p, w)),
                                         p.poly_str(via_rhs), p.poly_str(via_lhs));
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok) break;
            }
        }
        if (ok) rep.add_pass("rules-under-monomial-contexts", anchor_action, max_deg);
    }

    t.certified = rep.pass();
    return rep;
}

namespace {

Rational binomial(long n, long k) {
    Rational out(1);
    for (long j = 1; j <= k; ++j) out = out * Rational(n - k + j) / Rational(j);
    return out;
}

// (K_i - K_i^{-1})/(q_i - q_i^{-1}) applied termwise through weights
NcPoly cartan_commutator_rhs(const ActionTable& t, int i, const NcPoly& v) {
    const CartanData& cd = t.hopf.cartan;
    RatFunc den = Q(cd.d[i]) - Q(-cd.d[i]);
    NcPoly out;
    for (const auto& [m, c] : v.terms()) {
        long pr = pairing_int(cd, Weight::alpha(cd.r, i), t.algebra.weight(m));
        RatFunc num = Q(pr) - Q(-pr);
        if (!num.is_zero()) out.add_term(m, c * (num / den));
    }
    return out;
}

struct SuiteCtx {
    const ActionTable& t;
    VerificationReport& rep;
    int max_deg;
    std::vector<NcPoly> elems;
    std::vector<std::string> labels;

    int gi(const std::string& name) const {
        int g = t.hopf.gen_index(name);
        if (g < 0) throw std::logic_error("hopf generator missing from spec: " + name);
        return g;
    }
    NcPoly ap(const std::string& name, const NcPoly& v) const {
        return act_impl(t, gi(name), v);
    }
};

// runs body(v_index) across the basis; body returns (lhs, rhs, instance label)
template <typename Body>
void relation_family(SuiteCtx& c, const std::string& name, const std::string& anchor,
                     Body&& body) {
    for (std::size_t k = 0; k < c.elems.size(); ++k) {
        auto instances = body(c.elems[k]);
        for (auto& [lhs, rhs, label] : instances) {
            if (lhs != rhs) {
                c.rep.add_fail(name, anchor, c.max_deg,
                               fmt::format("{} applied to {}", label, c.labels[k]),
                               c.t.algebra.poly_str(rhs), c.t.algebra.poly_str(lhs));
                return;
            }
        }
    }
    c.rep.add_pass(name, anchor, c.max_deg);
}

using Instances = std::vector<std::tuple<NcPoly, NcPoly, std::string>>;

}  // namespace

VerificationReport check_hopf_relations(const ActionTable& t, int max_deg) {
    if (!t.certified) throw std::logic_error("action table not certified");
    const CartanData& cd = t.hopf.cartan;
    const HopfTag tag = t.hopf.tag;
    VerificationReport rep;
    rep.set_config("algebra", t.algebra.name);
    rep.set_config("hopf", to_string(tag));
    rep.set_config("max_deg", std::to_string(max_deg));

    SuiteCtx c{t, rep, max_deg, {}, {}};
    for (int d = 0; d <= max_deg; ++d)
        for (const Monomial& m : graded_basis(t.algebra, d)) {
            c.elems.push_back(NcPoly::monomial(m, RatFunc(1)));
            c.labels.push_back(t.algebra.mono_str(m));
        }

    const bool quantum = tag == HopfTag::UqG || tag == HopfTag::UqBPlus ||
                         tag == HopfTag::UqBMinus || tag == HopfTag::UqGStar;
    const bool classical = !quantum;
    const bool has_e = tag == HopfTag::UqG || tag == HopfTag::UqBPlus ||
                       tag == HopfTag::ClassicalG;
    const bool has_f = tag == HopfTag::UqG || tag == HopfTag::UqBMinus ||
                       tag == HopfTag::ClassicalG || tag == HopfTag::ClassicalBMinus;

    auto kname = [&](int i) { return fmt::format("K{}", i + 1); };
    auto kinv = [&](int i) { return fmt::format("K{}inv", i + 1); };
    auto ename = [&](int i) { return fmt::format("E{}", i + 1); };
    auto fname = [&](int i) { return fmt::format("F{}", i + 1); };
    auto hname = [&](int i) { return fmt::format("h{}", i + 1); };
    auto ce = [&](int i) { return fmt::format("e{}", i + 1); };
    auto cf = [&](int i) { return fmt::format("f{}", i + 1); };

    const std::string anchor_rel = "defining relations of the quantized enveloping algebra";
    const std::string anchor_dual = "defining relations of the dual quantized enveloping algebra";
    const std::string anchor_cl = "defining relations of the classical enveloping algebra";
    const std::string anchor_nil = "local nilpotence of the raising operators";

    // ---- Cartan part ----
    if (quantum) {
        relation_family(c, "cartan-inverse", anchor_rel, [&](const NcPoly& v) {
            Instances out;
            for (int i = 0; i < cd.r; ++i)
                out.push_back({c.ap(kname(i), c.ap(kinv(i), v)), v,
                               fmt::format("{}*{}", kname(i), kinv(i))});
            return out;
        });
        relation_family(c, "cartan-commutation", anchor_rel, [&](const NcPoly& v) {
            Instances out;
            for (int i = 0; i < cd.r; ++i)
                for (int j = i + 1; j < cd.r; ++j)
                    out.push_back({c.ap(kname(i), c.ap(kname(j), v)),
                                   c.ap(kname(j), c.ap(kname(i), v)),
                                   fmt::format("[{},{}]", kname(i), kname(j))});
            return out;
        });
    } else {
        relation_family(c, "cartan-commutation", anchor_cl, [&](const NcPoly& v) {
            Instances out;
            for (int i = 0; i < cd.r; ++i)
                for (int j = i + 1; j < cd.r; ++j)
                    out.push_back({c.ap(hname(i), c.ap(hname(j), v)),
                                   c.ap(hname(j), c.ap(hname(i), v)),
                                   fmt::format("[{},{}]", hname(i), hname(j))});
            return out;
        });
    }

    // ---- conjugation / bracket with the Cartan part ----
    auto conj_family = [&](const std::string& check, const std::string& anchor,
                           const std::string& op, int sign) {
        relation_family(c, check, anchor, [&, op, sign](const NcPoly& v) {
            Instances out;
            for (int i = 0; i < cd.r; ++i)
                for (int j = 0; j < cd.r; ++j) {
                    NcPoly lhs = c.ap(kname(i), c.ap(op + std::to_string(j + 1),
                                                     c.ap(kinv(i), v)));
                    NcPoly rhs = c.ap(op + std::to_string(j + 1), v)
                                     .scaled(Q(sign * cd.d[i] * cd.C[i][j]));
                    out.push_back({std::move(lhs), std::move(rhs),
                                   fmt::format("{}-conjugation of {}{}", kname(i), op, j + 1)});
                }
            return out;
        });
    };
    if (quantum && has_e) conj_family("cartan-raising-conjugation", anchor_rel, "E", 1);
    if (quantum && has_f) conj_family("cartan-lowering-conjugation", anchor_rel, "F", -1);
    if (tag == HopfTag::UqGStar) {
        for (int fam = 1; fam <= 2; ++fam) {
            relation_family(c, fmt::format("cartan-lowering-conjugation-family-{}", fam),
                            anchor_dual, [&, fam](const NcPoly& v) {
                                Instances out;
                                for (int i = 0; i < cd.r; ++i)
                                    for (int j = 0; j < cd.r; ++j) {
                                        std::string op = fmt::format("F{}_{}", j + 1, fam);
                                        NcPoly lhs = c.ap(kname(i), c.ap(op, c.ap(kinv(i), v)));
                                        NcPoly rhs =
                                            c.ap(op, v).scaled(Q(-cd.d[i] * cd.C[i][j]));
                                        out.push_back({std::move(lhs), std::move(rhs),
                                                       fmt::format("{}-conjugation of {}",
                                                                   kname(i), op)});
                                    }
                                return out;
                            });
        }
    }
    if (classical) {
        auto bracket_family = [&](const std::string& check, const std::string& op, int sign,
                                  bool present) {
            if (!present) return;
            relation_family(c, check, anchor_cl, [&, op, sign](const NcPoly& v) {
                Instances out;
                for (int i = 0; i < cd.r; ++i)
                    for (int j = 0; j < cd.r; ++j) {
                        std::string opj = op + std::to_string(j + 1);
                        NcPoly lhs = c.ap(hname(i), c.ap(opj, v)) - c.ap(opj, c.ap(hname(i), v));
                        NcPoly rhs = c.ap(opj, v).scaled(
                            RatFunc(Rational(sign * cd.C[i][j])));
                        out.push_back({std::move(lhs), std::move(rhs),
                                       fmt::format("[{},{}]", hname(i), opj)});
                    }
                return out;
            });
        };
        bracket_family("cartan-raising-bracket", "e", 1, has_e);
        bracket_family("cartan-lowering-bracket", "f", -1, has_f);
    }

    // ---- triangular commutator ----
    if (tag == HopfTag::UqG) {
        relation_family(c, "triangular-commutator", anchor_rel, [&](const NcPoly& v) {
            Instances out;
            for (int i = 0; i < cd.r; ++i)
                for (int j = 0; j < cd.r; ++j) {
                    NcPoly lhs = c.ap(ename(i), c.ap(fname(j), v)) -
                                 c.ap(fname(j), c.ap(ename(i), v));
                    NcPoly rhs = i == j ? cartan_commutator_rhs(t, i, v) : NcPoly();
                    out.push_back({std::move(lhs), std::move(rhs),
                                   fmt::format("[{},{}]", ename(i), fname(j))});
                }
            return out;
        });
    }
    if (tag == HopfTag::ClassicalG) {
        relation_family(c, "triangular-commutator", anchor_cl, [&](const NcPoly& v) {
            Instances out;
            for (int i = 0; i < cd.r; ++i)
                for (int j = 0; j < cd.r; ++j) {
                    NcPoly lhs = c.ap(ce(i), c.ap(cf(j), v)) - c.ap(cf(j), c.ap(ce(i), v));
                    NcPoly rhs = i == j ? c.ap(hname(i), v) : NcPoly();
                    out.push_back({std::move(lhs), std::move(rhs),
                                   fmt::format("[{},{}]", ce(i), cf(j))});
                }
            return out;
        });
    }
    if (tag == HopfTag::UqGStar) {
        relation_family(c, "lowering-families-commute", anchor_dual, [&](const NcPoly& v) {
            Instances out;
            for (int i = 0; i < cd.r; ++i)
                for (int j = 0; j < cd.r; ++j) {
                    std::string a = fmt::format("F{}_1", i + 1);
                    std::string b = fmt::format("F{}_2", j + 1);
                    out.push_back({c.ap(a, c.ap(b, v)), c.ap(b, c.ap(a, v)),
                                   fmt::format("[{},{}]", a, b)});
                }
            return out;
        });
    }

    // ---- Serre relations (divided powers in the quantum case) ----
    auto serre_family = [&](const std::string& check, const std::string& anchor,
                            auto&& opname) {
        relation_family(c, check, anchor, [&](const NcPoly& v) {
            Instances out;
            for (int i = 0; i < cd.r; ++i)
                for (int j = 0; j < cd.r; ++j) {
                    if (i == j) continue;
                    long n = 1 - cd.C[i][j];
                    NcPoly sum;
                    for (long k = 0; k <= n; ++k) {
                        NcPoly w;
                        int gi_ = c.gi(opname(i));
                        if (quantum) {
                            w = act_divided(t, gi_, n - k, v);
                            w = act_impl(t, c.gi(opname(j)), w);
                            w = act_divided(t, gi_, k, w);
                            if (k % 2) w = -w;
                        } else {
                            w = v;
                            for (long s = 0; s < n - k; ++s) w = act_impl(t, gi_, w);
                            w = act_impl(t, c.gi(opname(j)), w);
                            for (long s = 0; s < k; ++s) w = act_impl(t, gi_, w);
                            Rational b = binomial(n, k);
                            if (k % 2) b = -b;
                            w = w.scaled(RatFunc(b));
                        }
                        sum = sum + w;
                    }
                    out.push_back({std::move(sum), NcPoly(),
                                   fmt::format("serre({},{})", opname(i), opname(j))});
                }
            return out;
        });
    };
    if (cd.r >= 2) {
        if (has_e)
            serre_family("raising-serre", quantum ? anchor_rel : anchor_cl,
                         [&](int i) { return quantum ? ename(i) : ce(i); });
        if (has_f)
            serre_family("lowering-serre", quantum ? anchor_rel : anchor_cl,
                         [&](int i) { return quantum ? fname(i) : cf(i); });
        if (tag == HopfTag::UqGStar)
            for (int fam = 1; fam <= 2; ++fam)
                serre_family(fmt::format("lowering-serre-family-{}", fam), anchor_dual,
                             [&, fam](int i) { return fmt::format("F{}_{}", i + 1, fam); });
    }

    // ---- local nilpotence of raising operators ----
    if (has_e) {
        relation_family(c, "raising-nilpotence", anchor_nil, [&](const NcPoly& v) {
            Instances out;
            long cap = t.algebra.formal_degree(v) + 1;
            for (int i = 0; i < cd.r; ++i) {
                std::string op = quantum ? ename(i) : ce(i);
                NcPoly w = v;
                for (long s = 0; s < cap && !w.is_zero(); ++s) w = c.ap(op, w);
                out.push_back({std::move(w), NcPoly(), fmt::format("{}^{}", op, cap)});
            }
            return out;
        });
    }

    return rep;
}

ActionTable preset_action_cqU(const CartanData& cd) {
    validate_cartan(cd);
    if (cd.r > 2) throw std::invalid_argument("preset_action_cqU: rank at most 2");
    ActionTable t;
    t.hopf = preset_hopf(HopfTag::UqG, cd);
    t.algebra = preset_cqU(cd);
    const Presentation& p = t.algebra;
    detail::PbwData pd = detail::build_pbw_generators(cd);

    std::vector<int> letter(cd.r, -1);  // simple-root index -> algebra generator
    for (int k = 0; k < static_cast<int>(pd.roots.size()); ++k)
        if (pd.heights[k] == 1) {
            int i = 0;
            while (pd.roots[k][i].is_zero()) ++i;
            letter[i] = p.gen_index(pd.names[k]);
        }

    // raising images on the simple generators: delta
    for (int i = 0; i < cd.r; ++i) {
        int Ei = t.hopf.gen_index(fmt::format("E{}", i + 1));
        for (int j = 0; j < cd.r; ++j)
            t.images[{Ei, letter[j]}] = i == j ? NcPoly::unit(RatFunc(1)) : NcPoly();
    }
    // raising images on composite generators through their defining brackets
    for (int k = 0; k < static_cast<int>(pd.roots.size()); ++k) {
        if (pd.heights[k] == 1) continue;
        int a = p.gen_index(pd.names[k]);
        for (int i = 0; i < cd.r; ++i) {
            int Ei = t.hopf.gen_index(fmt::format("E{}", i + 1));
            std::vector<RawTerm> raw;
            for (const auto& [w, coeff] : pd.defs[k]) {
                std::vector<Unit> units;
                units.reserve(w.size());
                for (int l : w) units.push_back({letter[l], 1});
                act_word(t, Ei, coeff, units, raw);
            }
            t.images[{Ei, a}] = normal_form(p, std::move(raw), t.budget);
        }
    }
    // lowering images by the q-commutator formula on every generator
    for (int i = 0; i < cd.r; ++i) {
        int Fi = t.hopf.gen_index(fmt::format("F{}", i + 1));
        RatFunc den = Q(cd.d[i]) - Q(-cd.d[i]);
        NcPoly xi = NcPoly::monomial({{letter[i], 1}}, RatFunc(1));
        for (int a = 0; a < p.size(); ++a) {
            NcPoly xa = NcPoly::monomial({{a, 1}}, RatFunc(1));
            RatFunc kinv_scale =
                Q(-pairing_int(cd, Weight::alpha(cd.r, i), p.gen(a).weight));
            NcPoly num =
                nc_mul(p, xi, xa, t.budget) - nc_mul(p, xa, xi, t.budget).scaled(kinv_scale);
            t.images[{Fi, a}] = num.scaled(den.inv());
        }
    }

    VerificationReport rep = check_action_well_defined(t, 2);
    if (!t.certified)
        throw std::logic_error("preset_action_cqU failed certification:\n" + rep.summary());
    return t;
}

ActionTable preset_action_qmatrix(int m, int n) {
    if (m < 2) throw std::invalid_argument("preset_action_qmatrix: need at least two rows");
    ActionTable t;
    t.algebra = preset_qmatrix(m, n);
    t.hopf = preset_hopf(HopfTag::UqG, t.algebra.cartan);
    const Presentation& p = t.algebra;
    auto idx = [&](int row, int col) {
        return p.gen_index(fmt::format("x{}{}", row + 1, col + 1));
    };
    for (int i = 0; i + 1 < m; ++i) {
        int Ei = t.hopf.gen_index(fmt::format("E{}", i + 1));
        int Fi = t.hopf.gen_index(fmt::format("F{}", i + 1));
        for (int r = 0; r < m; ++r)
            for (int col = 0; col < n; ++col) {
                NcPoly e, f;
                if (r == i + 1) e = NcPoly::monomial({{idx(i, col), 1}}, RatFunc(1));
                if (r == i) f = NcPoly::monomial({{idx(i + 1, col), 1}}, RatFunc(1));
                t.images[{Ei, idx(r, col)}] = std::move(e);
                t.images[{Fi, idx(r, col)}] = std::move(f);
            }
    }
    VerificationReport rep = check_action_well_defined(t, 2);
    if (!t.certified)
        throw std::logic_error("preset_action_qmatrix failed certification:\n" + rep.summary());
    return t;
}

ActionTable extend_action_to_localization(const ActionTable& t, const Presentation& localized) {
    if (!t.certified) throw std::logic_error("base action not certified");
    ActionTable out;
    out.hopf = t.hopf;
    out.algebra = localized;
    out.budget = t.budget;
    const Presentation& p = out.algebra;
    const CartanData& cd = out.hopf.cartan;

    std::vector<int> remap(t.algebra.size(), -1);
    for (int a = 0; a < t.algebra.size(); ++a) {
        remap[a] = p.gen_index(t.algebra.gen(a).name);
        if (remap[a] >= 0 && !(p.gen(remap[a]).weight == t.algebra.gen(a).weight))
            throw std::invalid_argument(
                fmt::format("localization changes the weight of {}", t.algebra.gen(a).name));
    }

    std::vector<bool> covered(p.size(), false);
    for (std::size_t g = 0; g < out.hopf.gens.size(); ++g) {
        if (is_diagonal(out.hopf.gens[g].law)) continue;
        for (int a = 0; a < t.algebra.size(); ++a) {
            if (remap[a] < 0) continue;
            covered[remap[a]] = true;
            const NcPoly& img = stored_image(t, static_cast<int>(g), a);
            std::vector<RawTerm> raw;
            for (const auto& [m, c] : img.terms()) {
                RawTerm rt;
                rt.coeff = c;
                for (const Unit& u : expand_monomial(m)) {
                    int ng = remap[u.gen];
                    if (ng < 0)
                        throw std::invalid_argument(
                            "image touches a generator missing from the localization");
                    rt.word.push_back({ng, u.sign});
                }
                raw.push_back(std::move(rt));
            }
            out.images[{static_cast<int>(g), remap[a]}] =
                normal_form(p, std::move(raw), out.budget);
        }
    }

    // new generators must invert something expressible in the transported
    // part; their images follow from D(s s^{-1}) = D(1) = 0
    for (int a = 0; a < p.size(); ++a) {
        if (covered[a]) continue;
        auto it = p.inverse_images.find(a);
        if (it == p.inverse_images.end())
            throw std::invalid_argument(
                fmt::format("localized generator {} has no inverse definition", p.gen(a).name));
        const NcPoly& P = it->second;
        auto pw = p.homogeneous_weight(P);
        if (!pw || !(*pw == -p.gen(a).weight))
            throw std::invalid_argument(
                fmt::format("inverse definition of {} is not weight-opposite", p.gen(a).name));
        NcPoly am = NcPoly::monomial({{a, 1}}, RatFunc(1));
        for (std::size_t g = 0; g < out.hopf.gens.size(); ++g) {
            const HopfGen& hg = out.hopf.gens[g];
            if (is_diagonal(hg.law)) continue;
            std::vector<RawTerm> raw;
            for (const auto& [m, c] : P.terms())
                act_word(out, static_cast<int>(g), c, expand_monomial(m), raw);
            NcPoly dp = normal_form(p, std::move(raw), out.budget);
            NcPoly img;
            if (!dp.is_zero()) {
                long pr = pairing_int(cd, Weight::alpha(cd.r, hg.i), *pw);
                RatFunc scale;
                switch (hg.law) {
                    case ExtensionLaw::Derivation: scale = RatFunc(-1); break;
                    case ExtensionLaw::SkewKRight: scale = -Q(-pr); break;
                    default: scale = -Q(pr); break;  // both lowering laws
                }
                img = nc_mul(p, nc_mul(p, am, dp, out.budget), am, out.budget).scaled(scale);
            }
            out.images[{static_cast<int>(g), a}] = std::move(img);
        }
    }

    VerificationReport rep = check_action_well_defined(out, 3);
    if (!out.certified)
        throw std::logic_error("extend_action_to_localization failed certification:\n" +
                               rep.summary());
    return out;
}

}  // namespace qma

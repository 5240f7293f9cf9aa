#pragma once

#include "qma/cartan.hpp"
#include "qma/ratfunc.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qma {

// Generator of a presented algebra. order_index equals the generator's
// position in the presentation's generator list; formal_degree is the
// enumeration degree (composite root vectors weigh more than 1).
struct GenDecl {
    std::string name;
    Weight weight;
    bool invertible = false;
    int order_index = 0;
    int formal_degree = 1;
};

// One symbol of a raw word: a generator to the power +1 or -1.
struct Unit {
    int gen = 0;
    int sign = 1;
    bool operator==(const Unit& o) const { return gen == o.gen && sign == o.sign; }
    bool operator<(const Unit& o) const {
        return gen != o.gen ? gen < o.gen : sign < o.sign;
    }
};

// Normal-ordered monomial: (generator, exponent) pairs with strictly
// increasing generator index and nonzero exponents (negative only for
// invertible generators).
using Monomial = std::vector<std::pair<int, long>>;

Monomial compress_word(const std::vector<Unit>& w);
std::vector<Unit> expand_monomial(const Monomial& m);

// Finitely supported RatFunc-linear combination of normal monomials.
class NcPoly {
public:
    using Terms = std::map<Monomial, RatFunc>;

    NcPoly() = default;
    static NcPoly unit(const RatFunc& c);
    static NcPoly monomial(const Monomial& m, const RatFunc& c = RatFunc(1));

    bool is_zero() const { return t_.empty(); }
    std::size_t term_count() const { return t_.size(); }
    const Terms& terms() const { return t_; }
    RatFunc coeff(const Monomial& m) const;

    void add_term(const Monomial& m, const RatFunc& c);

    NcPoly operator+(const NcPoly& o) const;
    NcPoly operator-(const NcPoly& o) const;
    NcPoly operator-() const;
    NcPoly scaled(const RatFunc& c) const;

    bool operator==(const NcPoly& o) const { return t_ == o.t_; }
    bool operator!=(const NcPoly& o) const { return t_ != o.t_; }
    bool operator<(const NcPoly& o) const { return t_ < o.t_; }

private:
    Terms t_;
};

// Two-letter rewrite rule: the word g_left g_right (unit exponents) is
// replaced by rhs. Out-of-order pairs are straightening rules; in-order
// pairs are cancellation rules (inverse pairs meeting in normal position).
struct RewriteRule {
    int left = 0;
    int right = 0;
    NcPoly rhs;
};

struct MissingRuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RewriteBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Presented algebra: generators, rewrite rules, optional substitutions for
// inverse letters of generators whose inverses are expressible in the
// others (localizations). finalize() validates and builds lookup tables.
class Presentation {
public:
    std::string name = "custom";
    CartanData cartan;
    std::vector<GenDecl> gens;
    std::vector<RewriteRule> rules;
    std::map<int, NcPoly> inverse_images;  // gen -> polynomial equal to gen^-1
    int confluence_certified_degree = 0;

    void finalize();
    bool finalized() const { return finalized_; }

    int gen_index(const std::string& name) const;  // -1 if unknown
    const GenDecl& gen(int i) const { return gens.at(i); }
    int size() const { return static_cast<int>(gens.size()); }

    long formal_degree(const Monomial& m) const;
    long formal_degree(const NcPoly& p) const;  // max over terms, 0 for zero
    Weight weight(const Monomial& m) const;
    // weight of a homogeneous polynomial; nullopt for zero or mixed weights
    std::optional<Weight> homogeneous_weight(const NcPoly& p) const;

    // rhs for the adjacent pair g_l^{sl} g_r^{sr}, nullptr when no rule applies
    const NcPoly* find_rule(int gl, int sl, int gr, int sr) const;

    std::string mono_str(const Monomial& m) const;
    std::string poly_str(const NcPoly& p) const;

private:
    std::map<std::array<int, 4>, NcPoly> rule_index_;
    std::map<std::string, int> name_index_;
    bool finalized_ = false;
};

// One addend of a raw (not yet normalized) expression.
struct RawTerm {
    RatFunc coeff;
    std::vector<Unit> word;
};

inline constexpr long kDefaultRewriteBudget = 4'000'000;

// Rewrites every raw term to normal form and collects the result.
// Leftmost-redex strategy; strategy choice is immaterial once the
// presentation passes check_local_confluence. Throws MissingRuleError for
// an out-of-order pair with no rule, RewriteBudgetError past the budget.
NcPoly normal_form(const Presentation& p, std::vector<RawTerm> input,
                   long budget = kDefaultRewriteBudget);
NcPoly normal_form(const Presentation& p, const RatFunc& coeff, const std::vector<Unit>& word,
                   long budget = kDefaultRewriteBudget);

NcPoly nc_mul(const Presentation& p, const NcPoly& a, const NcPoly& b,
              long budget = kDefaultRewriteBudget);
NcPoly gen_poly(const Presentation& p, int gen, long exp = 1);
NcPoly gen_poly(const Presentation& p, const std::string& name, long exp = 1);

// All normal monomials of the given formal degree, in deterministic
// (generator-order lexicographic) order. Inverse exponents are bounded by
// the degree, so enumeration is finite even with invertible generators.
std::vector<Monomial> graded_basis(const Presentation& p, int deg);

struct ConfluenceReport {
    bool pass = true;
    int certified_degree = 0;
    long overlaps_checked = 0;
    long words_checked = 0;
    std::string counterexample;  // empty on pass
};

// Certifies local confluence: every three-letter critical word resolves to
// the same normal form under both redex choices, and every word of formal
// degree <= max_deg normalizes identically under leftmost and rightmost
// strategies.
ConfluenceReport check_local_confluence(const Presentation& p, int max_deg,
                                        long budget = kDefaultRewriteBudget);

}  // namespace qma

#pragma once

// Module-algebra actions: a Hopf-algebra generator acts on a presented
// algebra through a stored image per algebra generator plus an extension
// law describing how the operator distributes over products. Diagonal
// (grouplike and Cartan) operators are computed from weights alone, never
// stored. Certification routines machine-check that the action descends
// through the rewrite rules and that the operators satisfy the defining
// relations of the acting Hopf algebra on a degree-bounded basis.

#include "qma/cartan.hpp"
#include "qma/poly.hpp"
#include "qma/report.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qma {

// how an operator D distributes over a product xx'
enum class ExtensionLaw {
    Grouplike,       // D(xx') = D(x)D(x'), diagonal: D(m) = q^{power*(alpha_i, wt m)} m
    CartanDiagonal,  // derivation with D(m) = (alpha_i, wt m)/d_i * m (classical h_i)
    Derivation,      // D(xx') = D(x)x' + xD(x')
    SkewKRight,      // D(xx') = D(x)K_i(x') + xD(x')        (raising operators)
    SkewKinvLeft,    // D(xx') = D(x)x' + K_i^{-1}(x)D(x')   (lowering, first kind)
    SkewKinvRight,   // D(xx') = D(x)K_i^{-1}(x') + xD(x')   (lowering, second kind)
};

enum class HopfTag { UqG, UqBPlus, UqBMinus, UqGStar, ClassicalG, ClassicalBMinus };

std::string to_string(HopfTag t);

struct HopfGen {
    std::string name;
    ExtensionLaw law = ExtensionLaw::Derivation;
    int i = 0;      // simple-root index the operator is attached to
    int power = 1;  // grouplike exponent sign
    Weight shift;   // weight added to homogeneous elements (zero for diagonals)
};

struct HopfSpec {
    HopfTag tag = HopfTag::UqG;
    CartanData cartan;
    std::vector<HopfGen> gens;

    int gen_index(const std::string& name) const;  // -1 if unknown
};

// generator lists per tag: UqG {K,Kinv,E,F} per root; UqBPlus {K,Kinv,E};
// UqBMinus {K,Kinv,F}; UqGStar {K,Kinv,F_1,F_2}; ClassicalG {h,e,f};
// ClassicalBMinus {h,f}
HopfSpec preset_hopf(HopfTag tag, const CartanData& cd);

struct ActionTable {
    HopfSpec hopf;
    Presentation algebra;
    // (hopf generator, algebra generator) -> image; diagonal laws store none
    std::map<std::pair<int, int>, NcPoly> images;
    bool certified = false;
    long budget = kDefaultRewriteBudget;
};

// Apply one Hopf generator to an element (normal-form output). Requires a
// certified table; throws std::logic_error otherwise.
NcPoly act(const ActionTable& t, int g, const NcPoly& a);
NcPoly act(const ActionTable& t, const std::string& hopf_gen, const NcPoly& a);

// n-th divided power of generator g: D^n(a) / (n)_{q_i}! for q-skew laws,
// D^n(a)/n! for plain derivations. Rejects diagonal laws.
NcPoly act_divided(const ActionTable& t, int g, long n, const NcPoly& a);
// convenience: divided power of the raising generator attached to root i
NcPoly act_divided_E(const ActionTable& t, int i, long n, const NcPoly& a);

// Certifies that the action is well defined on the quotient: stored image
// weights are consistent, applying any generator to both sides of every
// rewrite rule agrees, inverse generators act consistently with their
// defining identities, and rule checks hold under left monomial contexts up
// to max_deg. Sets t.certified on success.
VerificationReport check_action_well_defined(ActionTable& t, int max_deg);

// Verifies the defining relations of the acting Hopf algebra as operator
// identities on every graded basis monomial of degree <= max_deg. The suite
// depends on the tag (Cartan commutations, conjugation twists, triangular
// commutator, Serre relations with divided powers, raising nilpotence).
// Requires a certified table.
VerificationReport check_hopf_relations(const ActionTable& t, int max_deg);

// The standard action on the quantized coordinate algebra of the unipotent
// group (rank <= 2): raising generators send the j-th simple generator to
// delta_ij, lowering generators act by the q-commutator formula, composite
// generators inherit images through their defining bracket expressions.
ActionTable preset_action_cqU(const CartanData& cd);

// The row action on the m x n quantum matrix algebra: E_i moves row i+1 to
// row i entrywise, F_i moves row i to row i+1, K_i acts by the row weights.
ActionTable preset_action_qmatrix(int m, int n);

// Extends a certified action to a localization of its algebra: images of
// generators present in both algebras are transported by name, images of
// inverse generators are derived from D(s s^{-1}) = D(1), and the result is
// re-certified.
ActionTable extend_action_to_localization(const ActionTable& t, const Presentation& localized);

}  // namespace qma

#pragma once

#include "qma/poly.hpp"

#include <vector>

namespace qma {

// Free-algebra data for the dimension oracle. Generators are indices
// 0..ngens-1 with formal degrees; multidegree is an optional fine grading
// used to block the linear algebra (empty vectors disable blocking).
// Relations are linear combinations of words.
struct FreeTerm {
    RatFunc coeff;
    std::vector<int> word;
};
struct FreeRelation {
    std::vector<FreeTerm> terms;
};
struct FreeAlgebraSpec {
    int ngens = 0;
    std::vector<int> degree;
    std::vector<std::vector<long>> multidegree;
    std::vector<FreeRelation> relations;
};

// Graded dimensions of the free algebra modulo the two-sided ideal spanned
// by the relations, for degrees 0..max_deg, by spanning-set linear algebra
// degree by degree. Relations must be degree- and multidegree-homogeneous.
std::vector<long> free_quotient_dims(const FreeAlgebraSpec& fa, int max_deg);

// Filtered variant for localizations, where relations need not be
// degree-homogeneous (multidegree homogeneity is still required). Entry D
// is an upper bound for the dimension of the span of words of degree <= D
// in the quotient, computed from relation instances of degree
// <= max_deg + slack; it is exact once the slack saturates.
std::vector<long> free_quotient_filtered_dims(const FreeAlgebraSpec& fa, int max_deg, int slack);

// Engine-side counterpart for the filtered comparison: the dimension of
// span{normal_form(w) : w word of formal degree <= D} inside the
// normal-monomial space of p, for D = 0..max_deg.
std::vector<long> filtered_span_dims(const Presentation& p, int max_deg);

// Relations of a presentation read as free-algebra equations
// lhs - rhs = 0, over the presentation's generators; together with the
// supplied multidegrees this feeds the oracle directly. extra holds
// relations with no rule counterpart (e.g. inverse laws of a localization).
FreeAlgebraSpec free_spec_from_rules(const Presentation& p,
                                     std::vector<std::vector<long>> multidegree,
                                     std::vector<FreeRelation> extra = {});

// Quantum Serre relations on rank many letters:
// sum_k (-1)^k qbinom(1-c_ij, k, d_i) x_i^{1-c_ij-k} x_j x_i^k for i != j,
// with root-lattice multidegrees.
FreeAlgebraSpec serre_free_spec(const CartanData& cd);

// Decides membership of a multidegree-homogeneous candidate in the
// two-sided ideal generated by fa.relations, using relation instances
// u * rel * v of total degree <= big restricted to the candidate's
// multidegree block. A true result is a proof of membership; false only
// means no certificate exists within the degree bound.
bool ideal_membership(const FreeAlgebraSpec& fa, const FreeRelation& candidate, int big);

}  // namespace qma

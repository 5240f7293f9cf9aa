#pragma once

// Adapted-basis machinery over a certified action table: nilpotence degrees
// of the raising operators, divided top powers along a word, the resulting
// integer profile of an element, highest-weight spaces, bases labeled by
// attained profiles, the peeling decomposition, and the verifier for the
// tensor factorization through the multiplication map.

#include "qma/action.hpp"
#include "qma/poly.hpp"
#include "qma/report.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qma {

// A word in the simple reflections, letters 0-based in [0, rank).
using Word = std::vector<int>;

// Profile of an element along a word: entry k is the nilpotence degree seen
// after applying the divided top powers of the first k letters.
using NuVector = std::vector<long>;

// Throws std::invalid_argument on out-of-range letters, immediate letter
// repeats, or (in rank <= 2, where the check is exact) words longer than any
// reduced word can be.
void validate_word(const CartanData& cd, const Word& w);

// The alternating longest reduced words; rank one gives the single
// one-letter word, rank two gives both alternating words. Throws for
// higher rank.
std::vector<Word> longest_words(const CartanData& cd);

// Largest l with E_i^l(a) != 0. Throws std::invalid_argument if a = 0 and
// std::logic_error if the nilpotence cap (formal degree + 1) is exceeded.
long ell(const ActionTable& t, int i, const NcPoly& a);

// Divided top power: E_i^(l)(a) for l = ell(t, i, a). Requires a != 0.
NcPoly e_top(const ActionTable& t, int i, const NcPoly& a);

// Top powers chained along the word, first letter applied first.
NcPoly e_top_word(const ActionTable& t, const Word& w, const NcPoly& a);

// The profile (a_1, ..., a_m): a_k is the nilpotence degree at step k of the
// top-power chain. Requires a != 0 and a valid word.
NuVector nu(const ActionTable& t, const Word& w, const NcPoly& a);

// Exact basis of the space of degree-deg elements killed by every raising
// operator, computed as a stacked kernel over the rational-function field,
// one weight block at a time. Deterministic.
std::vector<NcPoly> hw_basis(const ActionTable& t, int deg);

struct AdaptedBasis {
    Word word;
    std::map<NuVector, NcPoly> entries;  // profile -> element with top power 1
};

// One normalized element per profile attained by the graded monomials of
// degree <= deg. Requires the top-power chain to land in scalars (throws
// std::logic_error otherwise, or when two independent elements collide on a
// profile).
AdaptedBasis build_adapted_basis(const ActionTable& t, const Word& w, int deg);

// Certifies that the top-power chain lands in the invariant subalgebra for
// every graded monomial of degree <= deg and for `samples` seeded
// pseudo-random sparse combinations.
VerificationReport check_adapted(const ActionTable& t, const Word& w, int deg,
                                 int samples, unsigned seed = 0);

// Peeling recursion: repeatedly split off the top-power image times the
// basis element of the current profile. Returns (invariant factor, profile)
// pairs; reassembling sum_k factor_k * basis[profile_k] gives back a.
// Throws std::out_of_range if a profile is missing from the basis and
// std::logic_error if the profile fails to decrease lexicographically.
std::vector<std::pair<NcPoly, NuVector>> decompose(const ActionTable& t,
                                                   const NcPoly& a,
                                                   const AdaptedBasis& basis);

struct FactorizationRow {
    int degree = 0;
    long dim_algebra = 0;   // graded monomials of this degree
    long dim_domain = 0;    // (invariant, factor-monomial) pairs of this total degree
    long rank = 0;          // independent products contributed at this degree
};

struct FactorizationWitness {
    std::vector<FactorizationRow> rows;
};

struct FactorizationOutcome {
    FactorizationWitness witness;
    VerificationReport report;
};

// Verifies that multiplication identifies (invariants) x (embedded factor)
// with the algebra up to degree deg. `a0` is the factor algebra with its own
// certified action; `images` gives the embedding of its generators. Checks:
// the images satisfy the factor's defining relations, the embedding
// intertwines the two actions, multiplication is injective on the enumerated
// domain, and every graded monomial decomposes with exact reassembly. For
// degree-graded algebras the per-degree counts must match exactly; for
// filtered ones surjectivity is certified constructively by the
// decomposition coverage.
FactorizationOutcome verify_factorization(const ActionTable& t,
                                          const ActionTable& a0,
                                          const std::vector<NcPoly>& images,
                                          const Word& w, int deg);

}  // namespace qma

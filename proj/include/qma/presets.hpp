#pragma once

#include "qma/poly.hpp"

namespace qma {

// Quantum coordinate ring of m x n matrices: generators x{i}{j} in
// row-major order with the four q-commutation families; rank m-1 Cartan
// data on rows (trivial for m = 1).
Presentation preset_qmatrix(int m, int n);

// Quantum plane-like algebra on negative root vectors for rank <= 2:
// rank 1 is free on x1; rank 2 carries one PBW generator per positive
// root in convex order, with straightening rules solved mechanically in
// the free algebra modulo the quantum Serre ideal.
Presentation preset_cqU(const CartanData& cd);

// The 3 x 2 quantum matrix algebra with x11 and the upper-left 2 x 2
// quantum minor inverted: generators y = x11^{-1} and z = Delta2^{-1}
// with derived straightening rules and cancellation rules.
Presentation preset_localized_qmat32();

// K^{+-1}, two commuting Serre families F_{i,1}, F_{i,2} with
// K F K^{-1}-twists; used for generator-level coaction checks.
Presentation preset_uqgstar(const CartanData& cd);

}  // namespace qma

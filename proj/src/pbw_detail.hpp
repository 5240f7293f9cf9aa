#pragma once

// Internal sharing header: the iterated q-bracket construction of the
// positive-root generators, expressed over the two simple letters. Used by
// the preset builders and by modules that must re-derive data for composite
// generators (action images, embedding images) from the same bracket
// combinations that define them.

#include "qma/cartan.hpp"
#include "qma/ratfunc.hpp"

#include <map>
#include <string>
#include <vector>

namespace qma::detail {

// element of the free algebra on the simple letters 0..r-1
using FreeWord = std::vector<int>;
using FreePoly = std::map<FreeWord, RatFunc>;

struct PbwData {
    std::vector<Weight> roots;      // convex order
    std::vector<std::string> names; // xi / x112-style
    std::vector<int> heights;       // formal degrees
    std::vector<FreePoly> defs;     // images in the free algebra
};

PbwData build_pbw_generators(const CartanData& cd);

}  // namespace qma::detail

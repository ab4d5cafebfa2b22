#pragma once

#include <string>

#include "tori/permgroup.hpp"

namespace tori {

// Conventional structure description of a small finite group: "1", "C6",
// "C4 x C2", "S4", "D8", "Q8", "SL(2,3)", "C2 x D8", "(C5 x C5) : S3", ...
//
// Abelian groups print their invariant factors largest first.  Direct factors
// of mixed products are sorted by ascending order.  A semidirect name "N : K"
// uses the largest abelian normal subgroup N admitting a complement (cyclic
// complements preferred).  Descriptions are not complete isomorphism
// invariants in general, but they match the usual names for every group the
// survey routines report at the orders this library targets.
std::string structureName(const PermGroup& G);

}  // namespace tori

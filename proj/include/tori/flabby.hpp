#pragma once

#include <utility>
#include <vector>

#include "tori/cohomology.hpp"
#include "tori/glattice.hpp"

namespace tori {

// Tuning knobs for the resolution construction.  The defaults give the
// canonical cover; the alternatives exist so tests can confirm that the
// cohomology of the flabby part does not depend on any of these choices.
struct FlabbyOptions {
  // Walk the subgroup classes largest-first instead of smallest-first.
  bool reverseClassOrder = false;
  // When nonzero, remix every fixed-point basis by a seeded unimodular
  // transform (row shuffle plus shears) before building the cover.
  unsigned perturbSeed = 0;
  // Greedily drop cover summands that are not needed to keep the quotient
  // map surjective on every fixed sublattice.  Shrinks ranks, never changes
  // the similarity class of the flabby part.
  bool reduceRank = false;
};

// Exact sequence 0 -> M -> P -> F -> 0 with P a permutation lattice and F
// flabby.  Maps are row-vector matrices: m |-> m * embedding lands in P and
// p |-> p * projection lands in F.
struct FlabbyResolution {
  GLattice source;      // M
  GLattice middle;      // P, the direct sum of the coset lattices below
  GLattice flabbyPart;  // F
  IntMat embedding;     // rank(M) x rank(P); primitive (all Smith entries 1)
  IntMat projection;    // rank(P) x rank(F); surjective
  // Permutation structure of P: one entry per contributing subgroup class,
  // with its multiplicity, in construction order.
  std::vector<std::pair<PermGroup, Index>> permutationPart;
};

// Build a flabby resolution of M.  Construction: with N = dual(M), each
// subgroup class representative K contributes one copy of z[G/K] per basis
// vector x of the fixed sublattice N^K; the bundled map pi sends the coset
// K g of the copy for x to x * rho_N(g).  pi is onto and stays onto on the
// K-fixed points for every subgroup K, so ker(pi) is coflabby and
// F = dual(ker pi) is flabby; dualizing gives the returned sequence.
// Throws std::logic_error if the built cover fails its surjectivity check.
FlabbyResolution flabbyResolution(const GLattice& M, const FlabbyOptions& options = {});

// Invariant factors of H^1(K, F) for F the flabby part of a resolution of
// M.  Well-defined independently of the construction choices because any
// two flabby parts differ by permutation summands, which are invisible to
// H^1.  K defaults to the whole acting group.
std::vector<long long> flabbyClassH1(const GLattice& M);
std::vector<long long> flabbyClassH1(const GLattice& M, const PermGroup& K);

}  // namespace tori

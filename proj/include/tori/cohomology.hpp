#pragma once

#include <string>
#include <vector>

#include "tori/common.hpp"
#include "tori/glattice.hpp"
#include "tori/intmat.hpp"
#include "tori/permgroup.hpp"

namespace tori {

// A finite cohomology group given by its invariant factors (each > 1, in
// divisibility order).  Routes that produce explicit cocycles also return one
// representative per invariant factor, as rows over the coordinate space
// described by `ambientBasis` (`ambientRank` columns); torsion-only routes
// leave `classRepresentatives` with zero rows.  Equality of results means
// equality of `invariants`; representatives are a convenience, not canonical.
struct CohomologyGroup {
  std::vector<long long> invariants;
  Index ambientRank = 0;
  std::string ambientBasis;
  IntMat classRepresentatives;

  bool trivial() const { return invariants.empty(); }
};

// H^1(K, M) for a subgroup K of M's acting group.  Cocycles are parametrized
// by their values on K's generators, propagated along a breadth-first spanning
// tree of the Cayley graph; the remaining edges impose the cocycle relations.
// The result does not depend on the generating set.
CohomologyGroup h1(const PermGroup& K, const GLattice& M);

// H^2(K, M) through the normalized bar complex (tuples without identity
// entries).  Requires (|K|-1)^2 * rank <= budgets.barUnknownLimit.
CohomologyGroup h2(const PermGroup& K, const GLattice& M, const Budgets& budgets = {});

// Tate cohomology: Hhat^-1(K, M) = ker(N_K) / I_K M  and
// Hhat^0(K, M) = M^K / N_K M, where N_K = sum of the actions over K.
CohomologyGroup tateHminus1(const PermGroup& K, const GLattice& M);
CohomologyGroup tateH0(const PermGroup& K, const GLattice& M);

// Flabby: Hhat^-1(K, M) = 0 for every subgroup K.  Coflabby: H^1(K, M) = 0
// for every subgroup K.  Conjugate subgroups give isomorphic cohomology (an
// inner automorphism carries one computation onto the other), so both
// predicates quantify over conjugacy class representatives only.
bool isFlabby(const GLattice& M, const Budgets& budgets = {});
bool isCoflabby(const GLattice& M, const Budgets& budgets = {});

// H^n(G, Z) with trivial action, n in {1, 2, 3}, via the normalized bar
// complex.  Degree 3 requires |G| <= budgets.h3OrderLimit.
CohomologyGroup hnTrivialZ(const PermGroup& G, int n, const Budgets& budgets = {});

// Kernel of H^2(G, M) -> direct sum of H^2(<g>, M) over all nontrivial cyclic
// subgroups <g> of G: the classes that die under every cyclic restriction.
CohomologyGroup sha2omega(const GLattice& M, const Budgets& budgets = {});

// Kernel of the joint restriction H^n(G, Z) -> direct sum of H^n(S, Z) over
// the supplied subgroups, trivial coefficients, n in {1, 2, 3}.
CohomologyGroup resKernelHnZ(const PermGroup& G, const std::vector<PermGroup>& subgroups, int n,
                             const Budgets& budgets = {});

// Cochain-level matrices of the normalized bar complex, exposed so property
// checks can verify identities such as res . d = d . res directly.  Cochains
// are row vectors, tuple-major; the coboundary D_n maps C^n to C^{n+1}, and
// the restriction matrix carries C^n of G onto C^n of the subgroup S.
IntMat barCoboundaryMatrix(const GLattice& M, int n);
IntMat barRestrictionMatrix(const PermGroup& G, const PermGroup& S, Index rank, int n);

}  // namespace tori

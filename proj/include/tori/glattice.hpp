#pragma once

#include <map>

#include "tori/intmat.hpp"
#include "tori/permgroup.hpp"

namespace tori {

// G-lattice: the free module Z^rank with a right action of a finite group by
// unimodular matrices.  Module elements are row vectors, acted on by
// v |-> v * rho(g), and rho(a) * rho(b) = rho(ab) under the left-to-right
// permutation product.  Rank 0 is a legal value.
//
// Element matrices are derived lazily from the generator assignment along
// BFS words and cached.  Once the cache covers the whole group (and the
// work stays inside a fixed budget), every Cayley edge is checked so that a
// generator assignment that does not extend to a homomorphism is rejected
// with std::logic_error instead of propagating silently.
class GLattice {
 public:
  GLattice() = default;

  // One action matrix per group generator, each rank x rank and unimodular
  // (row span = Z^rank); violations raise std::invalid_argument.
  GLattice(PermGroup group, Index rank, std::vector<IntMat> generatorAction);

  const PermGroup& group() const { return group_; }
  Index rank() const { return rank_; }
  const std::vector<IntMat>& generatorAction() const { return genAction_; }

  // Action matrix of an arbitrary group element (cached).
  const IntMat& actionOf(const Perm& g) const;

 private:
  const IntMat& actionByIndex(long long idx) const;
  void verifyIfComplete() const;

  PermGroup group_;
  Index rank_ = 0;
  std::vector<IntMat> genAction_;
  mutable std::map<long long, IntMat> cache_;
  mutable bool verified_ = false;
};

// Z^rank with every generator acting as the identity.
GLattice trivialLattice(const PermGroup& G, Index rank);

// Permutation lattice z[G/H]: basis indexed by the right cosets H g in
// transversal order, generators act by permuting cosets.
GLattice permutationLattice(const PermGroup& G, const PermGroup& H);

// The Chevalley module J of a transitive group of degree n >= 2: the action
// induced on Z^n / Z*(1,...,1) in the basis e1..e_{n-1}, where the class of
// e_n is -(e1 + ... + e_{n-1}).  Throws std::invalid_argument when G is not
// transitive or n < 2.
GLattice norm1Lattice(const PermGroup& G);

// Dual lattice M° = Hom(M, Z): rho°(g) = transpose(rho(g^{-1})).
GLattice dual(const GLattice& M);

// Block-diagonal sum; both arguments must carry the same group with the
// same generator sequence.
GLattice directSum(const GLattice& M1, const GLattice& M2);

// The same module viewed as a K-lattice for a subgroup K.
GLattice restrictTo(const GLattice& M, const PermGroup& K);

// Canonical (HNF, saturated) row basis of {v : v * rho(k) = v for all k in K}.
IntMat fixedSublattice(const GLattice& M, const PermGroup& K);

}  // namespace tori

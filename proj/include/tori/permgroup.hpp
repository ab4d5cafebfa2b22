#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "tori/intmat.hpp"
#include "tori/perm.hpp"

namespace tori {

// Finite permutation group on {1..degree}.  The full element set is
// materialized lazily (bounded by Budgets::elementLimit) and kept sorted,
// so element indices, representatives and all derived choices are
// deterministic.
class PermGroup {
 public:
  PermGroup() = default;  // trivial group of degree 0

  PermGroup(int degree, std::vector<Perm> generators, Budgets budgets = {});

  // Wrap an already-enumerated subgroup; elements must be closed under
  // composition (checked only by size bookkeeping, callers are internal).
  static PermGroup fromElements(int degree, std::vector<Perm> generators,
                                std::vector<Perm> sortedElements);

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  Perm identity() const { return Perm::identity(degree_); }

  const std::vector<Perm>& elements() const;  // sorted ascending
  long long order() const { return static_cast<long long>(elements().size()); }
  bool contains(const Perm& p) const;
  // Index into elements(), or -1 when absent.
  long long elementIndex(const Perm& p) const;
  bool isAbelian() const;
  bool isPerfect() const;  // equals its own derived subgroup
  bool isTransitive() const;

  // BFS factorization data over the sorted element list: for each element
  // index, (parent element index, generator index); identity has (-1, -1).
  const std::vector<std::pair<long long, int>>& bfsParents() const;
  // Generator word with g == gens[w0] * gens[w1] * ... (left-to-right).
  std::vector<int> wordFor(const Perm& g) const;

 private:
  int degree_ = 0;
  std::vector<Perm> gens_;
  Budgets budgets_;
  mutable std::shared_ptr<std::vector<Perm>> elements_;
  mutable std::shared_ptr<std::vector<std::pair<long long, int>>> parents_;
  void materialize() const;
};

// Group homomorphism given by images of the source generators.  On
// construction the full element map is built by following generator words;
// well-definedness is verified on every (element, generator) pair, and
// violations raise std::invalid_argument.
class GroupHom {
 public:
  GroupHom(PermGroup source, PermGroup target, std::vector<Perm> generatorImages);

  const PermGroup& source() const { return source_; }
  const PermGroup& target() const { return target_; }
  const std::vector<Perm>& generatorImages() const { return genImages_; }
  Perm imageOf(const Perm& g) const;

 private:
  PermGroup source_, target_;
  std::vector<Perm> genImages_;
  std::vector<Perm> elementImages_;  // by source element index
};

// Structure data for a finite abelian quotient A = ⊕ Z/d_i attached to a
// group: invariant factors, chosen generator lifts, and the projection of
// arbitrary group elements to coordinates.
class FinAbStructure {
 public:
  const std::vector<long long>& invariants() const { return invariants_; }
  const std::vector<Perm>& snfGenerators() const { return snfGens_; }
  // Coordinates of g's class, one entry per invariant factor, in [0, d_i).
  std::vector<long long> projectionOf(const Perm& g) const;
  long long groupOrder() const;  // product of the invariants

  friend FinAbStructure abelianization(const PermGroup& G);

 private:
  PermGroup group_;
  std::vector<long long> invariants_;
  std::vector<Perm> snfGens_;
  std::vector<long long> cosetOf_;        // group element index -> coset id
  std::vector<IntMat> cosetExponents_;    // coset id -> exponent row vector
  QuotientStructure quotient_;
};

// --- constructions -------------------------------------------------------

PermGroup groupFromGenerators(int degree, const std::vector<Perm>& gens, Budgets budgets = {});

// Subgroup of G generated by the given elements (kept verbatim as the
// generator list of the result).
PermGroup generatedSubgroup(const PermGroup& G, const std::vector<Perm>& elts);

// Stabilizer of a 1-based point.
PermGroup stabilizer(const PermGroup& G, int point);

// Right cosets H g, represented by their BFS-discovery representatives with
// the coset H itself first (represented by the identity).
std::vector<Perm> rightTransversal(const PermGroup& G, const PermGroup& H);

// Action of G on the cosets of H: the induced permutation group together
// with the projection homomorphism.  Point 1 is the coset H.  Throws
// std::invalid_argument when H is not a subgroup of G.
std::pair<PermGroup, GroupHom> cosetAction(const PermGroup& G, const PermGroup& H);

// Representatives of the double cosets H g K, each the smallest element of
// its double coset, listed in increasing order.
std::vector<Perm> doubleCosets(const PermGroup& G, const PermGroup& H, const PermGroup& K);

PermGroup derivedSubgroup(const PermGroup& G);
PermGroup center(const PermGroup& G);
PermGroup sylow(const PermGroup& G, long long p);

// Commutator a^{-1} b^{-1} a b.
Perm commutatorOf(const Perm& a, const Perm& b);

// Conjugate subgroup g^{-1} S g inside the ambient symmetric group.
PermGroup conjugateSubgroup(const PermGroup& S, const Perm& g);

// All subgroups (no conjugacy reduction).  Sorted by (order, element set).
// Refuses groups whose order exceeds the budget (default 400) with a
// BudgetError naming the limit.
std::vector<PermGroup> allSubgroups(const PermGroup& G, std::optional<long long> orderBudget = {});

// One representative per conjugacy class of subgroups, each the smallest
// member of its class, sorted by (order, element set).
std::vector<PermGroup> subgroupClassReps(const PermGroup& G,
                                         std::optional<long long> orderBudget = {});

// Every Sylow subgroup cyclic.  The trivial group counts as metacyclic.
bool isMetacyclic(const PermGroup& G);

FinAbStructure abelianization(const PermGroup& G);

PermGroup homImage(const GroupHom& h, const PermGroup& S);
PermGroup homPreimage(const GroupHom& h, const PermGroup& T);
PermGroup homKernel(const GroupHom& h);

// Orbits of G on {1..degree} as sorted 0-based point lists, ordered by
// smallest point.
std::vector<std::vector<int>> orbits(const PermGroup& G);

// Deterministic small generating set for the subgroup formed by `elements`
// of some ambient group; greedy over the sorted element list.
std::vector<Perm> minimizedGenerators(const std::vector<Perm>& sortedElements);

}  // namespace tori

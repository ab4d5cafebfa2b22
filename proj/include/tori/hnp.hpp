#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tori/glattice.hpp"
#include "tori/intmat.hpp"
#include "tori/permgroup.hpp"

namespace tori {

// A subgroup of a finite abelian ambient group  ⊕_i Z/d_i  (the d_i are the
// ambient invariant factors, in divisibility order).  `coords` rows generate
// the subgroup: they are the canonical Hermite basis of the subgroup's full
// preimage lattice with the pure relation rows d_i·e_i removed and every
// entry reduced into [0, d_i).  This form is a complete invariant — two
// subgroups of the same ambient group are equal iff their coords agree.
struct ObstructionPart {
  std::vector<long long> invariants;  // invariant factors of the subgroup
  std::vector<long long> ambient;     // invariant factors of the ambient group
  IntMat coords;                      // canonical generator rows (may be 0 x n)

  bool trivial() const { return invariants.empty(); }
};

bool operator==(const ObstructionPart& a, const ObstructionPart& b);
inline bool operator!=(const ObstructionPart& a, const ObstructionPart& b) {
  return !(a == b);
}

// Canonical part generated by the given rows inside ⊕ Z/ambient_i.
ObstructionPart obstructionPartFromRows(const std::vector<long long>& ambient,
                                        const IntMat& rows);

// First-obstruction data of a pair H ≤ G: the map psi1 : H^ab -> G^ab induced
// by inclusion, written in Smith-basis coordinates, and its kernel
// Ker psi1 = image of H ∩ [G,G] in H^ab.
struct FirstObstructionN {
  ObstructionPart ker;              // Ker psi1 ≤ H^ab
  IntMat psi1;                      // row i: image of the i-th H^ab generator in G^ab
  std::vector<long long> codomain;  // invariant factors of G^ab
};

FirstObstructionN firstObstructionN(const PermGroup& G, const PermGroup& H);
FirstObstructionN firstObstructionN(const PermGroup& G);  // H = Stab_1(G)

// Subgroup Phi^G(H)·[H,H]/[H,H] ≤ H^ab generated by the classes of the
// commutators [h, x] where x runs over right-coset representatives of H in G
// and h over generators of H ∩ xHx^{-1}.  Always contained in Ker psi1.
ObstructionPart firstObstructionDnr(const PermGroup& G, const PermGroup& H);
ObstructionPart firstObstructionDnr(const PermGroup& G);

// Local obstruction part at a decomposition subgroup Gv ≤ G:  phi1(Ker psi2)
// where, over double-coset representatives x_i of H\G/Gv and
// H_{w_i} = H ∩ x_i Gv x_i^{-1},
//   psi2 : ⊕_i H_{w_i}^ab -> Gv^ab,   h ↦ x_i^{-1} h x_i,
// and phi1 : ⊕_i H_{w_i}^ab -> H^ab is induced by the inclusions.
// Monotone in Gv (up to conjugacy) and equal to Ker psi1 at Gv = G.
ObstructionPart firstObstructionDr(const PermGroup& G, const PermGroup& Gv,
                                   const PermGroup& H);
ObstructionPart firstObstructionDr(const PermGroup& G, const PermGroup& Gv);

// Local obstruction parts for every subgroup Gv ≤ G, partitioned into the
// subgroups whose local part already fills Ker psi1 (trueSet) and the rest,
// with the minimal true subgroups under containment.  Index vectors refer to
// positions in perSubgroup, which follows the allSubgroups enumeration.
struct HnpSurvey {
  std::vector<std::pair<PermGroup, ObstructionPart>> perSubgroup;
  std::vector<std::size_t> trueSet;
  std::vector<std::size_t> falseSet;
  std::vector<std::size_t> minimalTrueSubgroups;
  ObstructionPart kerPsi1;
};

HnpSurvey hnpSurvey(const PermGroup& G, const PermGroup& H,
                    std::optional<long long> orderBudget = {});
HnpSurvey hnpSurvey(const PermGroup& G);

// Classification lookup for norm-one tori of transitive labels nTm, degrees
// up to 15.  Degree 1 and prime degrees always satisfy the norm principle;
// degree 12 and degrees above 15 are out of scope (Unknown); the remaining
// degrees carry the known obstructed labels with their nonzero H^1(k, Pic)
// invariants.  Throws ParseError for malformed labels, and for label numbers
// out of range in degrees <= 15 where the group counts are known.
enum class Table1Status { HoldsAlways, Obstructed, Unknown };

struct Table1Entry {
  std::string label;
  Table1Status status = Table1Status::Unknown;
  std::vector<long long> nonzeroInvariants;  // nonempty iff Obstructed
};

Table1Entry table1Lookup(const std::string& label);

// Norm-one lattice of the coset space G/H:  Z[G/H]/Z·(sum of cosets) with the
// G-action written in the basis of the first [G:H]-1 coset classes.  For
// transitive G and H = Stab_1(G) this is the standard norm-one lattice up to
// relabeling of the basis.
GLattice chevalleyLattice(const PermGroup& G, const PermGroup& H);

// Bundled invariants of the norm-one torus attached to (G, H); everything is
// derived from the operations above.
struct HnpReport {
  std::vector<long long> h1J;             // H^1(G, J)
  std::vector<long long> flabbyClassH1J;  // H^1(G, [J]^fl)
  FirstObstructionN obstruction;
  ObstructionPart dnr;
  long long tamagawaNumerator = 1;        // |H^1(G, J)|
};

HnpReport hnpReport(const PermGroup& G, const PermGroup& H);
HnpReport hnpReport(const PermGroup& G);

}  // namespace tori

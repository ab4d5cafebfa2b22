#pragma once

#include "tori/detail/eigen_boost_compat.hpp"  // must precede cpp_int

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <vector>

#include "tori/common.hpp"

namespace tori {

// All lattice data is exact.  The public scalar is an arbitrary-precision
// integer; internally computations run on overflow-checked int64 first and are
// retried at full precision only when a coefficient explosion is detected.
using Int = boost::multiprecision::cpp_int;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

// Convention used throughout: lattices are given by generator ROWS, and maps
// act on row vectors from the right (x -> x * A).

// Smith normal form  U * A * V = S  with U, V unimodular and the diagonal of
// S satisfying d1 | d2 | ... | dr (nonnegative, zeros trailing).
struct SnfDecomposition {
  IntMat S, U, V;
  IntMat Vinv;  // inverse of V, tracked during elimination (needed for
                // quotient generators; cheap to carry along)
};

// Row Hermite normal form.  H holds the nonzero canonical rows (pivots
// positive, entries above each pivot reduced into [0, pivot), pivot columns
// strictly increasing, zero rows dropped).  U is a full unimodular witness:
// (U * A).topRows(H.rows()) == H and the remaining rows of U * A vanish.
struct HnfResult {
  IntMat H, U;
};

SnfDecomposition snf(const IntMat& A);
HnfResult hnf(const IntMat& rows);

// Nonzero Smith diagonal in divisibility order, computed without the
// transform witnesses; the cheap route to invariant factors of wide matrices.
std::vector<long long> elementaryDivisors(const IntMat& A);

// Canonical HNF basis only (no witness); faster and used wherever a lattice
// needs a deterministic normal form.
IntMat hnfBasis(const IntMat& rows);

// Basis (canonical) of { x : x * A = 0 }.  Row kernels of integer matrices
// are saturated by construction.
IntMat integerKernel(const IntMat& A);

// Canonical basis of the intersection of the row lattices of L1 and L2.
// Throws std::invalid_argument when ambient dimensions differ.
IntMat latticeIntersection(const IntMat& L1, const IntMat& L2);

// Structure of Z^n / rowLattice(relations) together with the change of
// coordinates needed to locate classes.  x and y represent the same class
// iff (x - y) * V has entries divisible by diag.
struct QuotientStructure {
  std::vector<long long> invariants;  // SNF factors > 1, in divisibility order
  long long freeRank = 0;
  std::vector<long long> diag;        // full SNF diagonal, length = ambient rank
  std::vector<Index> torsionCols;     // columns of the normal form with d > 1
  std::vector<Index> freeCols;        // columns with d == 0
  IntMat toNormal;                    // V:   class of x  <->  x * V  mod diag
  IntMat fromNormal;                  // V^{-1}; its rows lift normal-form basis
};

QuotientStructure quotientStructure(Index ambientRank, const IntMat& relations);

struct QuotientInvariants {
  std::vector<long long> factors;  // invariant factors > 1
  long long freeRank = 0;
};

QuotientInvariants quotientInvariants(Index ambientRank, const IntMat& relations);

// Coordinates of the class of row vector v (1 x n) in the torsion part of the
// quotient: one entry per invariant factor, reduced into [0, d).  Requires the
// quotient to be finite (freeRank == 0) — otherwise the free coordinates of v
// would be silently dropped; throws std::invalid_argument in that case.
std::vector<long long> coordsInQuotient(const QuotientStructure& Q, const IntMat& v);

// Row vector in Z^n projecting to the i-th torsion generator of the quotient.
IntMat quotientGeneratorLift(const QuotientStructure& Q, Index i);

// Solve x * B = target over the integers, where the rows of B are independent
// (a lattice basis).  targets is t x n; the result is t x B.rows().  Throws
// std::invalid_argument when some target row is not in the row lattice of B.
IntMat solveInBasis(const IntMat& B, const IntMat& targets);

// True when the row vector v lies in the row lattice spanned by basis B
// (B need not be in normal form).
bool inRowLattice(const IntMat& B, const IntMat& v);

// Exact product A * B with a machine-integer fast path (128-bit dot-product
// accumulation); falls back to big-integer arithmetic on large entries.
IntMat fastMul(const IntMat& A, const IntMat& B);

}  // namespace tori

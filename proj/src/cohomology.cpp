#include "tori/cohomology.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tori/detail/rowhnf.hpp"

namespace tori {

namespace {

using detail::BigInt;
using detail::kGuardLimit;
using detail::Mat;
using detail::OverflowPromote;
using detail::RowHnfAccumulator;
using detail::RowVec;

template <class T>
Mat<T> toScalar(const IntMat& A) {
  if constexpr (std::is_same_v<T, long long>) {
    auto I = detail::toI64(A);
    if (!I) throw OverflowPromote{};
    return *I;
  } else {
    return A;
  }
}

template <class T>
IntMat toBigMat(Mat<T> A) {
  if constexpr (std::is_same_v<T, long long>)
    return detail::toBig(A);
  else
    return A;
}

long long matMax(const Mat<long long>& A) {
  long long m = 0;
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) {
      long long v = A(i, j) < 0 ? -A(i, j) : A(i, j);
      if (v > m) m = v;
    }
  return m;
}

// Pre-flight magnitude checks for the int64 fast path; a hit retries the
// whole computation over arbitrary precision.
template <class T>
void guardMul(const Mat<T>& X, const Mat<T>& A) {
  if constexpr (std::is_same_v<T, long long>) {
    __int128 bound = (__int128)matMax(X) * matMax(A) * A.rows() + 1;
    if (bound >= kGuardLimit) throw OverflowPromote{};
  }
}

template <class T>
void guardAdd(const Mat<T>& X, const Mat<T>& Y) {
  if constexpr (std::is_same_v<T, long long>) {
    __int128 bound = (__int128)matMax(X) + matMax(Y) + 1;
    if (bound >= kGuardLimit) throw OverflowPromote{};
  }
}

std::vector<long long> dropOnes(std::vector<long long> divisors) {
  divisors.erase(std::remove(divisors.begin(), divisors.end(), 1), divisors.end());
  return divisors;
}

// --- H^1 by spanning-tree propagation ------------------------------------
//
// A cocycle f on K is determined by its values on the generators: walking a
// breadth-first spanning tree of the Cayley graph exhibits f(g) as an integer
// linear form Phi_g in the generator values, and every non-tree edge
// (x, x * s_j) imposes the relation f(x) rho(s_j) + f(s_j) = f(x s_j).  The
// relation rows accumulate into a Hermite basis; cocycles are its kernel.
template <class T>
CohomologyGroup h1Impl(const GLattice& L) {
  const PermGroup& K = L.group();
  const Index r = L.rank();
  const std::vector<Perm>& gens = K.generators();
  const int k = static_cast<int>(gens.size());
  const Index kr = static_cast<Index>(k) * r;

  CohomologyGroup out;
  out.ambientRank = kr;
  out.ambientBasis = "values f(s_j) on the " + std::to_string(k) + " generators, " +
                     std::to_string(r) + " coordinates each";
  out.classRepresentatives = IntMat(0, kr);
  if (r == 0 || k == 0 || K.order() == 1) return out;

  std::vector<Mat<T>> A(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) A[static_cast<std::size_t>(j)] = toScalar<T>(L.actionOf(gens[static_cast<std::size_t>(j)]));

  const std::vector<Perm>& els = K.elements();
  const auto& par = K.bfsParents();
  const long long n = K.order();

  // Depths of the spanning tree, then elements bucketed by depth.
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  for (long long i = 0; i < n; ++i) {
    long long cur = i;
    std::vector<long long> chain;
    while (depth[static_cast<std::size_t>(cur)] < 0 && par[static_cast<std::size_t>(cur)].first >= 0) {
      chain.push_back(cur);
      cur = par[static_cast<std::size_t>(cur)].first;
    }
    int d = par[static_cast<std::size_t>(cur)].first < 0 ? 0 : depth[static_cast<std::size_t>(cur)];
    depth[static_cast<std::size_t>(cur)] = d;
    while (!chain.empty()) {
      depth[static_cast<std::size_t>(chain.back())] = ++d;
      chain.pop_back();
    }
  }
  int maxDepth = 0;
  for (long long i = 0; i < n; ++i) maxDepth = std::max(maxDepth, depth[static_cast<std::size_t>(i)]);
  std::vector<std::vector<long long>> byDepth(static_cast<std::size_t>(maxDepth) + 1);
  for (long long i = 0; i < n; ++i) byDepth[static_cast<std::size_t>(depth[static_cast<std::size_t>(i)])].push_back(i);

  // All Cayley edges x -> x * s_j up front.  Edges follow generators only
  // (never inverses), so a target may be much shallower than its source;
  // each Phi therefore lives until the last iteration that reads it.
  std::vector<long long> tgt(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  std::vector<int> lastUse(static_cast<std::size_t>(n), 0);
  for (long long x = 0; x < n; ++x)
    for (int j = 0; j < k; ++j) {
      long long t = K.elementIndex(els[static_cast<std::size_t>(x)] * gens[static_cast<std::size_t>(j)]);
      tgt[static_cast<std::size_t>(x) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] = t;
      int when = depth[static_cast<std::size_t>(x)] + 1;  // edges from layer d fire at iteration d+1
      lastUse[static_cast<std::size_t>(x)] = std::max(lastUse[static_cast<std::size_t>(x)], when);
      lastUse[static_cast<std::size_t>(t)] = std::max(lastUse[static_cast<std::size_t>(t)], when);
    }

  std::vector<Mat<T>> phi(static_cast<std::size_t>(n));
  RowHnfAccumulator<T> acc(kr);

  auto addConstraint = [&](Mat<T>& C) {
    for (Index c = 0; c < C.cols(); ++c) {
      bool nz = false;
      for (Index i = 0; i < kr && !nz; ++i) nz = C(i, c) != 0;
      if (!nz) continue;
      RowVec<T> row = C.col(c).transpose();
      acc.insert(std::move(row));
    }
  };

  auto emitFrom = [&](const std::vector<long long>& srcs) {
    for (long long x : srcs)
      for (int j = 0; j < k; ++j) {
        long long t = tgt[static_cast<std::size_t>(x) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
        if (par[static_cast<std::size_t>(t)].first == x && par[static_cast<std::size_t>(t)].second == j)
          continue;  // tree edge: defines Phi_t instead of constraining
        const Mat<T>& Aj = A[static_cast<std::size_t>(j)];
        guardMul(phi[static_cast<std::size_t>(x)], Aj);
        Mat<T> C = phi[static_cast<std::size_t>(x)] * Aj;
        for (Index a = 0; a < r; ++a) C(static_cast<Index>(j) * r + a, a) += 1;
        guardAdd(C, phi[static_cast<std::size_t>(t)]);
        C -= phi[static_cast<std::size_t>(t)];
        addConstraint(C);
      }
  };

  // Iteration d: materialize layer d from its parents, emit the relation
  // edges leaving layer d-1, then drop every Phi past its last reader.
  for (int d = 0; d <= maxDepth + 1; ++d) {
    if (d <= maxDepth)
      for (long long idx : byDepth[static_cast<std::size_t>(d)]) {
        if (d == 0) {
          phi[static_cast<std::size_t>(idx)] = Mat<T>::Zero(kr, r);
        } else {
          auto [p, j] = par[static_cast<std::size_t>(idx)];
          const Mat<T>& Aj = A[static_cast<std::size_t>(j)];
          guardMul(phi[static_cast<std::size_t>(p)], Aj);
          Mat<T> X = phi[static_cast<std::size_t>(p)] * Aj;
          for (Index a = 0; a < r; ++a) X(static_cast<Index>(j) * r + a, a) += 1;
          phi[static_cast<std::size_t>(idx)] = std::move(X);
        }
      }
    if (d >= 1) {
      emitFrom(byDepth[static_cast<std::size_t>(d) - 1]);
      for (long long idx : byDepth[static_cast<std::size_t>(d) - 1])
        if (lastUse[static_cast<std::size_t>(idx)] <= d) phi[static_cast<std::size_t>(idx)].resize(0, 0);
      // Shallow targets of wrap-around edges are released by their own layer
      // pass above only if read later; sweep targets of this layer's edges.
      for (long long x : byDepth[static_cast<std::size_t>(d) - 1])
        for (int j = 0; j < k; ++j) {
          long long t = tgt[static_cast<std::size_t>(x) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
          if (lastUse[static_cast<std::size_t>(t)] <= d) phi[static_cast<std::size_t>(t)].resize(0, 0);
        }
    }
  }

  IntMat W = toBigMat(acc.basis());
  IntMat Z = integerKernel(IntMat(W.transpose()));

  IntMat B(r, kr);
  for (int j = 0; j < k; ++j)
    B.block(0, static_cast<Index>(j) * r, r, r) =
        L.actionOf(gens[static_cast<std::size_t>(j)]) - IntMat::Identity(r, r);
  IntMat Y = solveInBasis(Z, B);
  QuotientStructure qs = quotientStructure(Z.rows(), Y);
  if (qs.freeRank != 0) throw std::logic_error("h1: cocycle quotient unexpectedly infinite");

  out.invariants = qs.invariants;
  IntMat reps(static_cast<Index>(out.invariants.size()), kr);
  for (Index i = 0; i < reps.rows(); ++i) reps.row(i) = quotientGeneratorLift(qs, i) * Z;
  out.classRepresentatives = std::move(reps);
  return out;
}

// --- Normalized bar complex ----------------------------------------------
//
// C^n = maps from n-tuples of non-identity elements to the lattice; a cochain
// is the row vector of its values, tuple-major.  The left action is
// alpha(g, v) = v * rho(g^{-1}).

struct BarData {
  std::vector<long long> nonid;  // element indices, ascending, identity omitted
  std::vector<long long> pos;    // element index -> position in nonid, or -1
  long long idIdx = 0;
  long long m = 0;
};

BarData makeBarData(const PermGroup& K) {
  BarData b;
  b.idIdx = K.elementIndex(K.identity());
  const long long n = K.order();
  b.pos.assign(static_cast<std::size_t>(n), -1);
  for (long long i = 0; i < n; ++i)
    if (i != b.idIdx) {
      b.pos[static_cast<std::size_t>(i)] = static_cast<long long>(b.nonid.size());
      b.nonid.push_back(i);
    }
  b.m = n - 1;
  return b;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Shared term walk for one target tuple of D_{n-1}: reports the source tuple
// index and either a matrix block (leading term) or a signed identity block.
// dig holds the target digits; emitBlock(src, lambda) / emitDiag(src, sign).
template <class FBlock, class FDiag>
void barTerms(const BarData& bd, const PermGroup& K, const std::vector<long long>& dig, int n,
              FBlock&& emitBlock, FDiag&& emitDiag) {
  const std::vector<Perm>& els = K.elements();
  // Leading term: g_1 acts on f(g_2..g_n).
  long long s0 = 0;
  for (int j = 1; j < n; ++j) s0 = s0 * bd.m + dig[static_cast<std::size_t>(j)];
  emitBlock(s0, dig[0]);
  // Middle terms: merge adjacent entries; degenerate products drop out.
  for (int i = 1; i < n; ++i) {
    Perm w = els[static_cast<std::size_t>(bd.nonid[static_cast<std::size_t>(dig[static_cast<std::size_t>(i - 1)])])] *
             els[static_cast<std::size_t>(bd.nonid[static_cast<std::size_t>(dig[static_cast<std::size_t>(i)])])];
    long long widx = K.elementIndex(w);
    if (widx == bd.idIdx) continue;
    long long s = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      s = s * bd.m + (j == i - 1 ? bd.pos[static_cast<std::size_t>(widx)] : dig[static_cast<std::size_t>(j)]);
    }
    emitDiag(s, i % 2 ? -1 : 1);
  }
  // Trailing term: forget the last entry.
  long long s = 0;
  for (int j = 0; j + 1 < n; ++j) s = s * bd.m + dig[static_cast<std::size_t>(j)];
  emitDiag(s, n % 2 ? -1 : 1);
}

// Dense D_{n-1} : C^{n-1} -> C^n.  Only used where the target dimension is
// budget-capped; torsion-only routes stream columns instead (below).
IntMat barCoboundaryDense(const GLattice& L, int n) {
  const PermGroup& K = L.group();
  BarData bd = makeBarData(K);
  const Index r = L.rank();
  const Index rows = static_cast<Index>(ipow(bd.m, n - 1)) * r;
  const Index cols = static_cast<Index>(ipow(bd.m, n)) * r;
  IntMat D = IntMat::Zero(rows, cols);
  if (bd.m == 0 || r == 0) return D;
  std::vector<IntMat> lam(static_cast<std::size_t>(bd.m));
  for (long long p = 0; p < bd.m; ++p)
    lam[static_cast<std::size_t>(p)] =
        L.actionOf(K.elements()[static_cast<std::size_t>(bd.nonid[static_cast<std::size_t>(p)])].inverse());
  std::vector<long long> dig(static_cast<std::size_t>(n));
  for (long long tu = 0; tu < ipow(bd.m, n); ++tu) {
    long long t = tu;
    for (int j = n - 1; j >= 0; --j) {
      dig[static_cast<std::size_t>(j)] = t % bd.m;
      t /= bd.m;
    }
    barTerms(
        bd, K, dig, n,
        [&](long long src, long long p) {
          D.block(static_cast<Index>(src) * r, static_cast<Index>(tu) * r, r, r) +=
              lam[static_cast<std::size_t>(p)];
        },
        [&](long long src, int sign) {
          for (Index a = 0; a < r; ++a)
            D(static_cast<Index>(src) * r + a, static_cast<Index>(tu) * r + a) += sign;
        });
  }
  return D;
}

// Invariant factors (> 1) of coker(D_{n-1}), i.e. of H^n(K, L): the columns
// of D_{n-1} are streamed into a Hermite accumulator over the (small) source
// dimension, so the full coboundary matrix never exists in memory.
template <class T>
std::vector<long long> barTorsionImpl(const GLattice& L, int n) {
  const PermGroup& K = L.group();
  BarData bd = makeBarData(K);
  const Index r = L.rank();
  const Index rows = static_cast<Index>(ipow(bd.m, n - 1)) * r;
  if (bd.m == 0 || r == 0) return {};
  std::vector<Mat<T>> lam(static_cast<std::size_t>(bd.m));
  for (long long p = 0; p < bd.m; ++p)
    lam[static_cast<std::size_t>(p)] = toScalar<T>(
        L.actionOf(K.elements()[static_cast<std::size_t>(bd.nonid[static_cast<std::size_t>(p)])].inverse()));
  RowHnfAccumulator<T> acc(rows);
  std::vector<long long> dig(static_cast<std::size_t>(n));
  for (long long tu = 0; tu < ipow(bd.m, n); ++tu) {
    long long t = tu;
    for (int j = n - 1; j >= 0; --j) {
      dig[static_cast<std::size_t>(j)] = t % bd.m;
      t /= bd.m;
    }
    for (Index a = 0; a < r; ++a) {
      RowVec<T> row = RowVec<T>::Zero(rows);
      barTerms(
          bd, K, dig, n,
          [&](long long src, long long p) {
            row.segment(static_cast<Index>(src) * r, r) +=
                lam[static_cast<std::size_t>(p)].col(a).transpose();
          },
          [&](long long src, int sign) { row(static_cast<Index>(src) * r + a) += sign; });
      bool nz = false;
      for (Index i = 0; i < rows && !nz; ++i) nz = row(i) != 0;
      if (nz) acc.insert(std::move(row));
    }
  }
  return dropOnes(elementaryDivisors(toBigMat(acc.basis())));
}

std::vector<long long> barTorsion(const GLattice& L, int n) {
  try {
    return barTorsionImpl<long long>(L, n);
  } catch (const OverflowPromote&) {
  }
  return barTorsionImpl<BigInt>(L, n);
}

// --- Kernels of restriction maps -----------------------------------------

// Full structure of H^n(K, L) as the torsion of C^n / im D_{n-1}: torsion
// classes are automatically cocycle classes (|class| * x lands in the image,
// so D_n x is annihilated by a nonzero integer in a free module).
struct TorsionStructure {
  Index ambient = 0;
  QuotientStructure Q;
  std::vector<long long> invariants;
  IntMat lifts;  // one cocycle representative per invariant, rows
};

TorsionStructure hnStructure(const GLattice& L, int n, const Budgets& budgets, const char* caller) {
  const PermGroup& K = L.group();
  BarData bd = makeBarData(K);
  TorsionStructure ts;
  ts.ambient = static_cast<Index>(ipow(bd.m, n)) * L.rank();
  ts.lifts = IntMat(0, ts.ambient);
  if (ts.ambient == 0) return ts;
  if (ts.ambient > budgets.cochainAmbientLimit)
    throw BudgetError(std::string(caller) + ": cochain coordinate dimension " +
                      std::to_string(ts.ambient) + " exceeds cochainAmbientLimit = " +
                      std::to_string(budgets.cochainAmbientLimit));
  IntMat D = barCoboundaryDense(L, n);
  ts.Q = quotientStructure(ts.ambient, D);
  ts.invariants = ts.Q.invariants;
  ts.lifts = IntMat(static_cast<Index>(ts.invariants.size()), ts.ambient);
  for (Index i = 0; i < ts.lifts.rows(); ++i) ts.lifts.row(i) = quotientGeneratorLift(ts.Q, i);
  return ts;
}

// Coordinates of a finite class in a quotient that also has free directions;
// the free coordinates are checked to vanish.
std::vector<long long> torsionCoords(const QuotientStructure& Q, const IntMat& v) {
  IntMat w = v * Q.toNormal;
  for (Index c : Q.freeCols)
    if (w(0, c) != 0)
      throw std::logic_error("torsionCoords: class has an infinite-order component");
  std::vector<long long> out;
  out.reserve(Q.torsionCols.size());
  for (Index c : Q.torsionCols) {
    Int d = Q.diag[static_cast<std::size_t>(c)];
    Int x = w(0, c) % d;
    if (x < 0) x += d;
    out.push_back(static_cast<long long>(x));
  }
  return out;
}

// Coordinate-selection matrix of the cochain restriction C^n(G) -> C^n(S):
// a G-cochain restricted to S reads off its values on tuples from S.
IntMat restrictionMatrix(const PermGroup& G, const PermGroup& S, Index r, int n) {
  BarData bg = makeBarData(G), bs = makeBarData(S);
  const Index ambG = static_cast<Index>(ipow(bg.m, n)) * r;
  const Index ambS = static_cast<Index>(ipow(bs.m, n)) * r;
  IntMat R = IntMat::Zero(ambG, ambS);
  std::vector<long long> toG(static_cast<std::size_t>(bs.m));
  for (long long p = 0; p < bs.m; ++p) {
    long long gi = G.elementIndex(S.elements()[static_cast<std::size_t>(bs.nonid[static_cast<std::size_t>(p)])]);
    toG[static_cast<std::size_t>(p)] = bg.pos[static_cast<std::size_t>(gi)];
  }
  std::vector<long long> dig(static_cast<std::size_t>(n));
  for (long long sTu = 0; sTu < ipow(bs.m, n); ++sTu) {
    long long t = sTu;
    for (int j = n - 1; j >= 0; --j) {
      dig[static_cast<std::size_t>(j)] = t % bs.m;
      t /= bs.m;
    }
    long long gTu = 0;
    for (int j = 0; j < n; ++j) gTu = gTu * bg.m + toG[static_cast<std::size_t>(dig[static_cast<std::size_t>(j)])];
    for (Index a = 0; a < r; ++a)
      R(static_cast<Index>(gTu) * r + a, static_cast<Index>(sTu) * r + a) = 1;
  }
  return R;
}

// Intersection of restriction kernels inside H^n(G, -): the kernel subgroup
// is carried as an integer lattice between diag(invariants) and Z^k in the
// coordinates of the torsion generators.
struct RestrictionKernel {
  const TorsionStructure& src;
  IntMat lat;

  explicit RestrictionKernel(const TorsionStructure& s)
      : src(s), lat(IntMat::Identity(static_cast<Index>(s.invariants.size()),
                                     static_cast<Index>(s.invariants.size()))) {}

  void constrain(const TorsionStructure& tgt, const IntMat& R) {
    const Index kG = static_cast<Index>(src.invariants.size());
    const Index kS = static_cast<Index>(tgt.invariants.size());
    if (kG == 0 || kS == 0) return;
    IntMat A(kG, kS);
    for (Index i = 0; i < kG; ++i) {
      IntMat v = src.lifts.row(i) * R;
      auto coords = torsionCoords(tgt.Q, v);
      for (Index j = 0; j < kS; ++j) A(i, j) = coords[static_cast<std::size_t>(j)];
    }
    // x kills the restriction iff x * A = 0 modulo the target invariants.
    IntMat M = IntMat::Zero(kG + kS, kS);
    M.topRows(kG) = A;
    for (Index j = 0; j < kS; ++j) M(kG + j, j) = tgt.invariants[static_cast<std::size_t>(j)];
    IntMat Kr = integerKernel(M);
    IntMat cand = IntMat::Zero(Kr.rows() + kG, kG);
    cand.topRows(Kr.rows()) = Kr.leftCols(kG);
    for (Index i = 0; i < kG; ++i) cand(Kr.rows() + i, i) = src.invariants[static_cast<std::size_t>(i)];
    lat = latticeIntersection(lat, hnfBasis(cand));
  }

  CohomologyGroup finish(std::string basisDesc) const {
    CohomologyGroup out;
    out.ambientRank = src.ambient;
    out.ambientBasis = std::move(basisDesc);
    out.classRepresentatives = IntMat(0, src.ambient);
    const Index kG = static_cast<Index>(src.invariants.size());
    if (kG == 0) return out;
    IntMat B = hnfBasis(lat);
    IntMat diagG = IntMat::Zero(kG, kG);
    for (Index i = 0; i < kG; ++i) diagG(i, i) = src.invariants[static_cast<std::size_t>(i)];
    IntMat X = solveInBasis(B, diagG);
    QuotientStructure qq = quotientStructure(B.rows(), X);
    out.invariants = qq.invariants;
    IntMat reps(static_cast<Index>(out.invariants.size()), src.ambient);
    for (Index i = 0; i < reps.rows(); ++i)
      reps.row(i) = (quotientGeneratorLift(qq, i) * B) * src.lifts;
    out.classRepresentatives = std::move(reps);
    return out;
  }
};

void requireSubgroupOf(const PermGroup& G, const PermGroup& S, const char* caller) {
  bool ok = S.degree() == G.degree();
  for (const Perm& s : S.generators())
    if (ok && !G.contains(s)) ok = false;
  if (!ok) throw std::invalid_argument(std::string(caller) + ": listed group is not a subgroup");
}

}  // namespace

// --- Public operations ----------------------------------------------------

CohomologyGroup h1(const PermGroup& K, const GLattice& M) {
  GLattice L = restrictTo(M, K);
  try {
    return h1Impl<long long>(L);
  } catch (const OverflowPromote&) {
  }
  return h1Impl<BigInt>(L);
}

CohomologyGroup h2(const PermGroup& K, const GLattice& M, const Budgets& budgets) {
  GLattice L = restrictTo(M, K);
  const long long m = K.order() - 1;
  const long long unknowns = m * m * L.rank();
  if (unknowns > budgets.barUnknownLimit)
    throw BudgetError("h2: (|K|-1)^2 * rank = " + std::to_string(unknowns) +
                      " exceeds barUnknownLimit = " + std::to_string(budgets.barUnknownLimit));
  CohomologyGroup out;
  out.ambientRank = static_cast<Index>(unknowns);
  out.ambientBasis = "normalized 2-cochain values, tuple-major, " + std::to_string(m) +
                     "^2 tuples x rank " + std::to_string(L.rank());
  out.classRepresentatives = IntMat(0, out.ambientRank);
  if (m <= 0 || L.rank() == 0) return out;
  out.invariants = barTorsion(L, 2);
  return out;
}

CohomologyGroup tateHminus1(const PermGroup& K, const GLattice& M) {
  GLattice L = restrictTo(M, K);
  const Index r = L.rank();
  CohomologyGroup out;
  out.ambientRank = r;
  out.ambientBasis = "ambient lattice coordinates";
  out.classRepresentatives = IntMat(0, r);
  if (r == 0) return out;
  IntMat N = IntMat::Zero(r, r);
  for (const Perm& g : K.elements()) N += L.actionOf(g);
  IntMat V = integerKernel(N);
  const auto& gens = K.generators();
  IntMat stack(static_cast<Index>(gens.size()) * r, r);
  for (std::size_t j = 0; j < gens.size(); ++j)
    stack.middleRows(static_cast<Index>(j) * r, r) = L.actionOf(gens[j]) - IntMat::Identity(r, r);
  // I_K M is spanned by the generator rows alone:
  // m(rho(kh)-1) = (m rho(k))(rho(h)-1) + m(rho(k)-1).
  IntMat Y = solveInBasis(V, hnfBasis(stack));
  QuotientStructure qs = quotientStructure(V.rows(), Y);
  if (qs.freeRank != 0) throw std::logic_error("tateHminus1: quotient unexpectedly infinite");
  out.invariants = qs.invariants;
  IntMat reps(static_cast<Index>(out.invariants.size()), r);
  for (Index i = 0; i < reps.rows(); ++i) reps.row(i) = quotientGeneratorLift(qs, i) * V;
  out.classRepresentatives = std::move(reps);
  return out;
}

CohomologyGroup tateH0(const PermGroup& K, const GLattice& M) {
  GLattice L = restrictTo(M, K);
  const Index r = L.rank();
  CohomologyGroup out;
  out.ambientRank = r;
  out.ambientBasis = "ambient lattice coordinates";
  out.classRepresentatives = IntMat(0, r);
  if (r == 0) return out;
  IntMat F = fixedSublattice(L, K);
  IntMat N = IntMat::Zero(r, r);
  for (const Perm& g : K.elements()) N += L.actionOf(g);
  IntMat Y = solveInBasis(F, hnfBasis(N));
  QuotientStructure qs = quotientStructure(F.rows(), Y);
  if (qs.freeRank != 0) throw std::logic_error("tateH0: quotient unexpectedly infinite");
  out.invariants = qs.invariants;
  IntMat reps(static_cast<Index>(out.invariants.size()), r);
  for (Index i = 0; i < reps.rows(); ++i) reps.row(i) = quotientGeneratorLift(qs, i) * F;
  out.classRepresentatives = std::move(reps);
  return out;
}

bool isFlabby(const GLattice& M, const Budgets& budgets) {
  for (const PermGroup& K : subgroupClassReps(M.group(), budgets.subgroupOrderLimit))
    if (!tateHminus1(K, M).trivial()) return false;
  return true;
}

bool isCoflabby(const GLattice& M, const Budgets& budgets) {
  for (const PermGroup& K : subgroupClassReps(M.group(), budgets.subgroupOrderLimit))
    if (!h1(K, M).trivial()) return false;
  return true;
}

CohomologyGroup hnTrivialZ(const PermGroup& G, int n, const Budgets& budgets) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("hnTrivialZ: degree must be 1, 2, or 3 (got " + std::to_string(n) +
                                ")");
  const long long m = G.order() - 1;
  if (n == 3 && G.order() > budgets.h3OrderLimit)
    throw BudgetError("hnTrivialZ: |G| = " + std::to_string(G.order()) +
                      " exceeds h3OrderLimit = " + std::to_string(budgets.h3OrderLimit));
  if (ipow(m, n + 1) > budgets.barUnknownLimit)
    throw BudgetError("hnTrivialZ: (|G|-1)^" + std::to_string(n + 1) + " = " +
                      std::to_string(ipow(m, n + 1)) +
                      " exceeds barUnknownLimit = " + std::to_string(budgets.barUnknownLimit));
  CohomologyGroup out;
  out.ambientRank = static_cast<Index>(ipow(m, n));
  out.ambientBasis = "normalized " + std::to_string(n) + "-cochain values, tuple-major";
  out.classRepresentatives = IntMat(0, out.ambientRank);
  if (m <= 0) return out;
  out.invariants = barTorsion(trivialLattice(G, 1), n);
  return out;
}

CohomologyGroup sha2omega(const GLattice& M, const Budgets& budgets) {
  const PermGroup& G = M.group();
  const long long m = G.order() - 1;
  const long long unknowns = m * m * M.rank();
  if (unknowns > budgets.barUnknownLimit)
    throw BudgetError("sha2omega: (|G|-1)^2 * rank = " + std::to_string(unknowns) +
                      " exceeds barUnknownLimit = " + std::to_string(budgets.barUnknownLimit));
  TorsionStructure tsG = hnStructure(M, 2, budgets, "sha2omega");
  RestrictionKernel ker(tsG);
  if (!tsG.invariants.empty()) {
    std::set<std::vector<Perm>> seen;
    for (const Perm& g : G.elements()) {
      if (g.isIdentity()) continue;
      PermGroup C = generatedSubgroup(G, {g});
      if (!seen.insert(C.elements()).second) continue;
      GLattice LC = restrictTo(M, C);
      TorsionStructure tsC = hnStructure(LC, 2, budgets, "sha2omega");
      if (tsC.invariants.empty()) continue;
      ker.constrain(tsC, restrictionMatrix(G, C, M.rank(), 2));
    }
  }
  return ker.finish("normalized 2-cochain values, tuple-major, (|G|-1)^2 tuples x rank " +
                    std::to_string(M.rank()));
}

CohomologyGroup resKernelHnZ(const PermGroup& G, const std::vector<PermGroup>& subgroups, int n,
                             const Budgets& budgets) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("resKernelHnZ: degree must be 1, 2, or 3 (got " +
                                std::to_string(n) + ")");
  auto checkBudget = [&](const PermGroup& K, const char* what) {
    if (n == 3 && K.order() > budgets.h3OrderLimit)
      throw BudgetError("resKernelHnZ: |" + std::string(what) + "| = " + std::to_string(K.order()) +
                        " exceeds h3OrderLimit = " + std::to_string(budgets.h3OrderLimit));
    if (ipow(K.order() - 1, n + 1) > budgets.barUnknownLimit)
      throw BudgetError("resKernelHnZ: (|" + std::string(what) + "|-1)^" + std::to_string(n + 1) +
                        " exceeds barUnknownLimit = " + std::to_string(budgets.barUnknownLimit));
  };
  checkBudget(G, "G");
  for (const PermGroup& S : subgroups) {
    requireSubgroupOf(G, S, "resKernelHnZ");
    checkBudget(S, "S");
  }
  TorsionStructure tsG = hnStructure(trivialLattice(G, 1), n, budgets, "resKernelHnZ");
  RestrictionKernel ker(tsG);
  if (!tsG.invariants.empty())
    for (const PermGroup& S : subgroups) {
      TorsionStructure tsS = hnStructure(trivialLattice(S, 1), n, budgets, "resKernelHnZ");
      if (tsS.invariants.empty()) continue;
      ker.constrain(tsS, restrictionMatrix(G, S, 1, n));
    }
  return ker.finish("normalized " + std::to_string(n) + "-cochain values, tuple-major");
}

// Exposed for property checks: the dense coboundary and restriction matrices
// of the normalized bar complex (cochains act as row vectors).
IntMat barCoboundaryMatrix(const GLattice& M, int n) { return barCoboundaryDense(M, n + 1); }

IntMat barRestrictionMatrix(const PermGroup& G, const PermGroup& S, Index rank, int n) {
  requireSubgroupOf(G, S, "barRestrictionMatrix");
  return restrictionMatrix(G, S, rank, n);
}

}  // namespace tori

#include "tori/intmat.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "tori/detail/rowhnf.hpp"

namespace tori {

namespace {

using detail::floorDiv;
using detail::kGuardLimit;
using detail::Mat;
using detail::OverflowPromote;
using detail::rowAddMul;
using detail::RowVec;
using detail::truncDiv;

template <class T>
T absVal(const T& x) {
  return x < 0 ? static_cast<T>(-x) : x;
}

// W.row(r) -= q * W.row(t), magnitude-guarded for int64.
template <class T>
void rowOp(Mat<T>& W, Eigen::Index r, Eigen::Index t, const T& q) {
  if (q == 0) return;
  if constexpr (std::is_same_v<T, long long>) {
    long long aq = q < 0 ? -q : q;
    long long ma = 0, mb = 0;
    for (Eigen::Index j = 0; j < W.cols(); ++j) {
      long long a = W(r, j) < 0 ? -W(r, j) : W(r, j);
      long long b = W(t, j) < 0 ? -W(t, j) : W(t, j);
      if (a > ma) ma = a;
      if (b > mb) mb = b;
    }
    if ((__int128)ma + (__int128)aq * mb >= kGuardLimit) throw OverflowPromote{};
    W.row(r) -= q * W.row(t);
  } else {
    for (Eigen::Index j = 0; j < W.cols(); ++j) W(r, j) -= q * W(t, j);
  }
}

// W.col(c) -= q * W.col(t), same guard.
template <class T>
void colOp(Mat<T>& W, Eigen::Index c, Eigen::Index t, const T& q) {
  if (q == 0) return;
  if constexpr (std::is_same_v<T, long long>) {
    long long aq = q < 0 ? -q : q;
    long long ma = 0, mb = 0;
    for (Eigen::Index i = 0; i < W.rows(); ++i) {
      long long a = W(i, c) < 0 ? -W(i, c) : W(i, c);
      long long b = W(i, t) < 0 ? -W(i, t) : W(i, t);
      if (a > ma) ma = a;
      if (b > mb) mb = b;
    }
    if ((__int128)ma + (__int128)aq * mb >= kGuardLimit) throw OverflowPromote{};
    W.col(c) -= q * W.col(t);
  } else {
    for (Eigen::Index i = 0; i < W.rows(); ++i) W(i, c) -= q * W(i, t);
  }
}

template <class T>
struct SnfCore {
  Mat<T> S, U, V, Vinv;
};

template <class T>
SnfCore<T>& finish(SnfCore<T>& out, Mat<T>& W, Eigen::Index) {
  out.S = std::move(W);
  return out;
}

template <class T>
bool rowIsZero(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    if (v(0, j) != 0) return false;
  return true;
}

// Smith normal form by symmetric elimination.  Pivot choice: entry of minimal
// absolute value in the active submatrix, ties broken by smallest (row, col).
// After each pivot is isolated, any remaining entry it fails to divide is
// absorbed by adding its row to the pivot row, which restores the global
// divisibility chain.
template <class T>
SnfCore<T> snfCore(Mat<T> W, bool wantWitness) {
  const Eigen::Index m = W.rows(), n = W.cols();
  SnfCore<T> out;
  if (wantWitness) {
    out.U = Mat<T>::Identity(m, m);
    out.V = Mat<T>::Identity(n, n);
    out.Vinv = Mat<T>::Identity(n, n);
  }
  Mat<T>& U = out.U;
  Mat<T>& V = out.V;
  Mat<T>& Vinv = out.Vinv;

  const Eigen::Index steps = std::min(m, n);
  for (Eigen::Index t = 0; t < steps; ++t) {
    for (;;) {
      // Locate the pivot.
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = t; i < m; ++i)
        for (Eigen::Index j = t; j < n; ++j) {
          if (W(i, j) == 0) continue;
          if (pi < 0 || absVal(W(i, j)) < absVal(W(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) return finish(out, W, t);  // active submatrix is zero
      if (pi != t) {
        W.row(t).swap(W.row(pi));
        if (wantWitness) U.row(t).swap(U.row(pi));
      }
      if (pj != t) {
        W.col(t).swap(W.col(pj));
        if (wantWitness) {
          V.col(t).swap(V.col(pj));
          Vinv.row(t).swap(Vinv.row(pj));
        }
      }
      // Clear the pivot column and row.
      bool clean = true;
      for (Eigen::Index r = t + 1; r < m; ++r) {
        if (W(r, t) == 0) continue;
        T q = truncDiv<T>(W(r, t), W(t, t));
        rowOp(W, r, t, q);
        if (wantWitness) rowOp(U, r, t, q);
        if (W(r, t) != 0) clean = false;
      }
      for (Eigen::Index c = t + 1; c < n; ++c) {
        if (W(t, c) == 0) continue;
        T q = truncDiv<T>(W(t, c), W(t, t));
        colOp(W, c, t, q);
        if (wantWitness) {
          colOp(V, c, t, q);
          // Vinv tracks the inverse: right-multiplying W by E means
          // left-multiplying Vinv by E^{-1}, i.e. row t += q * row c.
          rowOp(Vinv, t, c, static_cast<T>(-q));
        }
        if (W(t, c) != 0) clean = false;
      }
      if (!clean) continue;  // remainders appeared; re-pivot within this step
      // Divisibility absorb: pull in any entry the pivot does not divide.
      Eigen::Index bi = -1;
      for (Eigen::Index r = t + 1; r < m && bi < 0; ++r)
        for (Eigen::Index c = t + 1; c < n; ++c)
          if (W(r, c) % W(t, t) != 0) {
            bi = r;
            break;
          }
      if (bi >= 0) {
        rowOp(W, t, bi, static_cast<T>(-1));
        if (wantWitness) rowOp(U, t, bi, static_cast<T>(-1));
        continue;
      }
      if (W(t, t) < 0) {
        W.row(t) = -W.row(t);
        if (wantWitness) U.row(t) = -U.row(t);
      }
      break;
    }
  }
  return finish(out, W, steps);
}

template <class T>
struct HnfCore {
  Mat<T> W;          // full transformed matrix; top `rank` rows are the basis
  Mat<T> U;          // witness, only filled when requested
  Eigen::Index rank = 0;
};

template <class T>
HnfCore<T> hnfCore(Mat<T> W, bool wantWitness) {
  const Eigen::Index m = W.rows(), n = W.cols();
  HnfCore<T> out;
  if (wantWitness) out.U = Mat<T>::Identity(m, m);
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index i = r; i < m; ++i) {
        if (W(i, c) == 0) continue;
        if (best < 0 || absVal(W(i, c)) < absVal(W(best, c))) best = i;
      }
      if (best < 0) break;
      if (best != r) {
        W.row(r).swap(W.row(best));
        if (wantWitness) out.U.row(r).swap(out.U.row(best));
      }
      bool done = true;
      for (Eigen::Index z = r + 1; z < m; ++z) {
        if (W(z, c) == 0) continue;
        T q = truncDiv<T>(W(z, c), W(r, c));
        rowOp(W, z, r, q);
        if (wantWitness) rowOp(out.U, z, r, q);
        if (W(z, c) != 0) done = false;
      }
      if (done) break;
    }
    if (W(r, c) == 0) continue;
    if (W(r, c) < 0) {
      W.row(r) = -W.row(r);
      if (wantWitness) out.U.row(r) = -out.U.row(r);
    }
    for (Eigen::Index z = 0; z < r; ++z) {
      T q = floorDiv<T>(W(z, c), W(r, c));
      rowOp(W, z, r, q);
      if (wantWitness) rowOp(out.U, z, r, q);
    }
    ++r;
  }
  out.rank = r;
  out.W = std::move(W);
  return out;
}

}  // namespace

SnfDecomposition snf(const IntMat& A) {
  if (auto I = detail::toI64(A)) {
    try {
      auto core = snfCore<long long>(*I, true);
      return {detail::toBig(core.S), detail::toBig(core.U), detail::toBig(core.V),
              detail::toBig(core.Vinv)};
    } catch (const OverflowPromote&) {
    }
  }
  auto core = snfCore<Int>(A, true);
  return {std::move(core.S), std::move(core.U), std::move(core.V), std::move(core.Vinv)};
}

std::vector<long long> elementaryDivisors(const IntMat& A) {
  // Witness-free Smith form: only the diagonal is needed, so the transform
  // matrices (cols^2 apiece, the dominant cost on wide inputs) are skipped.
  auto readDiag = [](const auto& S) {
    std::vector<long long> out;
    const Index r = std::min(S.rows(), S.cols());
    for (Index i = 0; i < r; ++i) {
      if (S(i, i) == 0) break;
      if (S(i, i) > std::numeric_limits<long long>::max())
        throw std::overflow_error("elementaryDivisors: divisor exceeds int64");
      out.push_back(static_cast<long long>(S(i, i)));
    }
    return out;
  };
  if (auto I = detail::toI64(A)) {
    try {
      return readDiag(snfCore<long long>(*I, false).S);
    } catch (const OverflowPromote&) {
    }
  }
  return readDiag(snfCore<Int>(A, false).S);
}

HnfResult hnf(const IntMat& rows) {
  if (auto I = detail::toI64(rows)) {
    try {
      auto core = hnfCore<long long>(*I, true);
      return {detail::toBig(core.W.topRows(core.rank)), detail::toBig(core.U)};
    } catch (const OverflowPromote&) {
    }
  }
  auto core = hnfCore<Int>(rows, true);
  return {core.W.topRows(core.rank), std::move(core.U)};
}

IntMat hnfBasis(const IntMat& rows) {
  // Tall sparse stacks (lattice closures, constraint sets) reduce faster row
  // by row through the accumulator; the result is the same canonical basis.
  if (rows.rows() > 4 * rows.cols() && rows.cols() > 0) {
    if (auto I = detail::toI64(rows)) {
      try {
        detail::RowHnfAccumulator<long long> acc(rows.cols());
        for (Index i = 0; i < I->rows(); ++i) acc.insert(I->row(i));
        return detail::toBig(acc.basis());
      } catch (const OverflowPromote&) {
      }
    }
    detail::RowHnfAccumulator<Int> acc(rows.cols());
    for (Index i = 0; i < rows.rows(); ++i) acc.insert(rows.row(i));
    return acc.basis();
  }
  if (auto I = detail::toI64(rows)) {
    try {
      auto core = hnfCore<long long>(*I, false);
      return detail::toBig(core.W.topRows(core.rank));
    } catch (const OverflowPromote&) {
    }
  }
  auto core = hnfCore<Int>(rows, false);
  return core.W.topRows(core.rank);
}

IntMat integerKernel(const IntMat& A) {
  auto res = hnf(A);
  const Index m = A.rows();
  const Index r = res.H.rows();
  return hnfBasis(res.U.bottomRows(m - r));
}

IntMat latticeIntersection(const IntMat& L1, const IntMat& L2) {
  if (L1.cols() != L2.cols())
    throw std::invalid_argument("latticeIntersection: ambient dimensions differ (" +
                                std::to_string(L1.cols()) + " vs " + std::to_string(L2.cols()) +
                                ")");
  const Index n = L1.cols();
  IntMat stacked(L1.rows() + L2.rows(), n);
  stacked.topRows(L1.rows()) = L1;
  stacked.bottomRows(L2.rows()) = -L2;
  // Kernel rows (u | v) satisfy u * L1 = v * L2; those products run over the
  // intersection as the kernel does.
  IntMat K = integerKernel(stacked);
  IntMat gens(K.rows(), n);
  for (Index i = 0; i < K.rows(); ++i) gens.row(i) = K.row(i).leftCols(L1.rows()) * L1;
  return hnfBasis(gens);
}

QuotientStructure quotientStructure(Index ambientRank, const IntMat& relations) {
  if (relations.cols() != ambientRank)
    throw std::invalid_argument("quotientStructure: relations have " +
                                std::to_string(relations.cols()) + " columns, ambient rank is " +
                                std::to_string(ambientRank));
  SnfDecomposition d = snf(relations);
  QuotientStructure Q;
  Q.diag.assign(static_cast<std::size_t>(ambientRank), 0);
  const Index r = std::min(relations.rows(), ambientRank);
  for (Index i = 0; i < r; ++i) {
    const Int& x = d.S(i, i);
    if (x > std::numeric_limits<long long>::max())
      throw std::overflow_error("quotientStructure: invariant factor exceeds int64");
    Q.diag[static_cast<std::size_t>(i)] = static_cast<long long>(x);
  }
  for (Index i = 0; i < ambientRank; ++i) {
    long long di = Q.diag[static_cast<std::size_t>(i)];
    if (di == 0)
      Q.freeCols.push_back(i);
    else if (di > 1)
      Q.torsionCols.push_back(i);
  }
  Q.freeRank = static_cast<long long>(Q.freeCols.size());
  for (Index c : Q.torsionCols) Q.invariants.push_back(Q.diag[static_cast<std::size_t>(c)]);
  Q.toNormal = std::move(d.V);
  Q.fromNormal = std::move(d.Vinv);
  return Q;
}

QuotientInvariants quotientInvariants(Index ambientRank, const IntMat& relations) {
  QuotientStructure Q = quotientStructure(ambientRank, relations);
  return {Q.invariants, Q.freeRank};
}

std::vector<long long> coordsInQuotient(const QuotientStructure& Q, const IntMat& v) {
  if (Q.freeRank != 0)
    throw std::invalid_argument("coordsInQuotient: quotient has free rank " +
                                std::to_string(Q.freeRank) + "; coordinates require finiteness");
  if (v.rows() != 1 || v.cols() != Q.toNormal.rows())
    throw std::invalid_argument("coordsInQuotient: vector has wrong shape");
  IntMat w = v * Q.toNormal;
  std::vector<long long> out;
  out.reserve(Q.torsionCols.size());
  for (std::size_t k = 0; k < Q.torsionCols.size(); ++k) {
    const Index c = Q.torsionCols[k];
    Int d = Q.diag[static_cast<std::size_t>(c)];
    Int x = w(0, c) % d;
    if (x < 0) x += d;
    out.push_back(static_cast<long long>(x));
  }
  return out;
}

IntMat quotientGeneratorLift(const QuotientStructure& Q, Index i) {
  if (i < 0 || i >= static_cast<Index>(Q.torsionCols.size()))
    throw std::invalid_argument("quotientGeneratorLift: index out of range");
  return Q.fromNormal.row(Q.torsionCols[static_cast<std::size_t>(i)]);
}

IntMat solveInBasis(const IntMat& B, const IntMat& targets) {
  if (targets.cols() != B.cols())
    throw std::invalid_argument("solveInBasis: ambient dimensions differ");
  HnfResult h = hnf(B);
  const Index k = h.H.rows();
  if (k != B.rows())
    throw std::invalid_argument("solveInBasis: rows of B are not independent");
  // Pivot columns of the echelon basis.
  std::vector<Index> piv(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    Index p = 0;
    while (p < h.H.cols() && h.H(i, p) == 0) ++p;
    piv[static_cast<std::size_t>(i)] = p;
  }
  IntMat Y(targets.rows(), k);
  for (Index t = 0; t < targets.rows(); ++t) {
    IntMat rem = targets.row(t);
    for (Index i = 0; i < k; ++i) {
      const Index p = piv[static_cast<std::size_t>(i)];
      Int q = rem(0, p) / h.H(i, p);
      if (rem(0, p) % h.H(i, p) != 0)
        throw std::invalid_argument("solveInBasis: target row " + std::to_string(t) +
                                    " is not in the row lattice");
      Y(t, i) = q;
      if (q != 0)
        for (Index j = 0; j < rem.cols(); ++j) rem(0, j) -= q * h.H(i, j);
    }
    if (!rowIsZero(rem))
      throw std::invalid_argument("solveInBasis: target row " + std::to_string(t) +
                                  " is not in the row lattice");
  }
  // x * B = (y * U) * B with y * H = target.
  return fastMul(Y, IntMat(h.U.topRows(k)));
}

bool inRowLattice(const IntMat& B, const IntMat& v) {
  IntMat H = hnfBasis(B);
  IntMat rem = v;
  for (Index i = 0; i < H.rows(); ++i) {
    Index p = 0;
    while (p < H.cols() && H(i, p) == 0) ++p;
    if (rem(0, p) % H(i, p) != 0) return false;
    Int q = rem(0, p) / H(i, p);
    if (q != 0)
      for (Index j = 0; j < rem.cols(); ++j) rem(0, j) -= q * H(i, j);
  }
  return rowIsZero(rem);
}

IntMat fastMul(const IntMat& A, const IntMat& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("fastMul: inner dimensions differ");
  const Index n = A.rows(), k = A.cols(), m = B.cols();
  // With entries under 2^48 and an inner dimension under 2^13, every dot
  // product stays inside a 128-bit accumulator.
  constexpr long long kCap = 1LL << 48;
  auto narrow = [&](const IntMat& X, detail::Mat<long long>& out) {
    out.resize(X.rows(), X.cols());
    for (Index i = 0; i < X.rows(); ++i)
      for (Index j = 0; j < X.cols(); ++j) {
        const Int& x = X(i, j);
        if (x >= kCap || x <= -kCap) return false;
        out(i, j) = static_cast<long long>(x);
      }
    return true;
  };
  detail::Mat<long long> a, b;
  if (k < (Index{1} << 13) && narrow(A, a) && narrow(B, b)) {
    IntMat R(n, m);
    std::vector<__int128> acc(static_cast<std::size_t>(std::max<Index>(m, 1)));
    for (Index i = 0; i < n; ++i) {
      std::fill(acc.begin(), acc.end(), __int128{0});
      for (Index t = 0; t < k; ++t) {
        const long long av = a(i, t);
        if (av == 0) continue;
        for (Index j = 0; j < m; ++j) acc[static_cast<std::size_t>(j)] += __int128{av} * b(t, j);
      }
      for (Index j = 0; j < m; ++j) {
        __int128 v = acc[static_cast<std::size_t>(j)];
        if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
          R(i, j) = static_cast<long long>(v);
        } else {
          bool neg = v < 0;
          unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                                    : static_cast<unsigned __int128>(v);
          Int big = static_cast<unsigned long long>(u >> 64);
          big <<= 64;
          big += static_cast<unsigned long long>(u);
          R(i, j) = neg ? Int(-big) : big;
        }
      }
    }
    return R;
  }
  return A * B;
}

}  // namespace tori

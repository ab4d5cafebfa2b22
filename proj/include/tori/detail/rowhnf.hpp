#pragma once

// Internal elimination helpers shared by the lattice module and the cochain
// solvers.  Everything here is exact; the int64 instantiation guards every
// row operation with a magnitude bound and throws OverflowPromote when the
// bound would be exceeded, at which point callers rerun with big integers.

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tori::detail {

struct OverflowPromote {};

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using RowVec = Eigen::Matrix<T, 1, Eigen::Dynamic>;

using BigInt = boost::multiprecision::cpp_int;

// Magnitudes are kept strictly below this; leaves headroom so that a single
// unguarded comparison or negation can never wrap.
constexpr long long kGuardLimit = (1LL << 62);

inline long long maxAbs(const RowVec<long long>& v) {
  long long m = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    long long a = v[i] < 0 ? -v[i] : v[i];
    if (a > m) m = a;
  }
  return m;
}

// a += q * b, guarded for the int64 instantiation.
inline void rowAddMul(RowVec<long long>& a, const RowVec<long long>& b, long long q) {
  if (q == 0 || b.size() == 0) return;
  long long aq = q < 0 ? -q : q;
  __int128 bound = (__int128)maxAbs(a) + (__int128)aq * maxAbs(b);
  if (bound >= kGuardLimit) throw OverflowPromote{};
  a += q * b;
}

inline void rowAddMul(RowVec<BigInt>& a, const RowVec<BigInt>& b, const BigInt& q) {
  if (q == 0) return;
  for (Eigen::Index i = 0; i < a.size(); ++i) a[i] += q * b[i];
}

template <class T>
T truncDiv(const T& a, const T& b) {
  return static_cast<T>(a / b);  // both int64 and cpp_int truncate toward zero
}

template <class T>
T floorDiv(const T& a, const T& b) {
  T q = static_cast<T>(a / b);
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::optional<Mat<long long>> toI64(const Mat<BigInt>& A) {
  Mat<long long> R(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const BigInt& x = A(i, j);
      if (x >= kGuardLimit || x <= -kGuardLimit) return std::nullopt;
      R(i, j) = static_cast<long long>(x);
    }
  return R;
}

inline Mat<BigInt> toBig(const Mat<long long>& A) {
  Mat<BigInt> R(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) R(i, j) = A(i, j);
  return R;
}

// Maintains a row-echelon basis (positive, strictly increasing pivots) of a
// growing sublattice of Z^cols.  Rows are inserted one at a time; basis()
// canonicalizes (entries above each pivot reduced into [0, pivot)) and
// returns the unique Hermite basis.  version() increases whenever an insert
// may have changed the lattice, which closure loops use as a fixpoint test;
// it can overcount but never undercounts.
template <class T>
class RowHnfAccumulator {
 public:
  explicit RowHnfAccumulator(Eigen::Index cols) : cols_(cols) {}

  Eigen::Index cols() const { return cols_; }
  Eigen::Index rank() const { return static_cast<Eigen::Index>(rows_.size()); }
  unsigned long long version() const { return version_; }

  void insert(RowVec<T> v) {
    if (v.size() != cols_) std::abort();  // internal misuse, not user input
    std::size_t pos = 0;
    while (true) {
      Eigen::Index p = firstNonzero(v);
      if (p < 0) return;
      while (pos < rows_.size() && pivots_[pos] < p) ++pos;
      if (pos == rows_.size() || pivots_[pos] > p) {
        if (v[p] < 0) v = -v;
        rows_.insert(rows_.begin() + pos, std::move(v));
        pivots_.insert(pivots_.begin() + pos, p);
        settle(pos);
        ++version_;
        return;
      }
      // Same pivot column: fold v into the existing row by a gcd loop.
      bool touched = false;
      RowVec<T> before = rows_[pos];
      while (v[p] != 0) {
        T q = truncDiv<T>(rows_[pos][p], v[p]);
        rowAddMul(rows_[pos], v, static_cast<T>(-q));
        touched = true;
        std::swap(rows_[pos], v);
      }
      if (rows_[pos][p] < 0) rows_[pos] = -rows_[pos];
      if (touched) {
        if (rows_[pos] != before) settle(pos);
        ++version_;  // conservative: the lattice may have changed
      }
      ++pos;
    }
  }

  // Unique Hermite basis of the accumulated lattice.  Idempotent; the
  // accumulator remains valid for further inserts.
  Mat<T> basis() {
    reduceAbove();
    Mat<T> H(static_cast<Eigen::Index>(rows_.size()), cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) H.row(static_cast<Eigen::Index>(i)) = rows_[i];
    return H;
  }

 private:
  static Eigen::Index firstNonzero(const RowVec<T>& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v[i] != 0) return i;
    return -1;
  }

  void reduceAbove() {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        T q = floorDiv<T>(rows_[j][pivots_[i]], rows_[i][pivots_[i]]);
        if (q != 0) rowAddMul(rows_[j], rows_[i], static_cast<T>(-q));
      }
  }

  // Local canonicalization after the row at pos changed: clamp its entries
  // at the later pivot columns and the earlier rows' entries in its own
  // pivot column.  Keeps every stored entry bounded by the pivot values, so
  // repeated inserts cannot blow the magnitudes up.
  void settle(std::size_t pos) {
    for (std::size_t i = pos + 1; i < rows_.size(); ++i) {
      T q = floorDiv<T>(rows_[pos][pivots_[i]], rows_[i][pivots_[i]]);
      if (q != 0) rowAddMul(rows_[pos], rows_[i], static_cast<T>(-q));
    }
    for (std::size_t j = 0; j < pos; ++j) {
      T q = floorDiv<T>(rows_[j][pivots_[pos]], rows_[pos][pivots_[pos]]);
      if (q != 0) rowAddMul(rows_[j], rows_[pos], static_cast<T>(-q));
    }
  }

  Eigen::Index cols_;
  std::vector<RowVec<T>> rows_;
  std::vector<Eigen::Index> pivots_;
  unsigned long long version_ = 0;
};

}  // namespace tori::detail

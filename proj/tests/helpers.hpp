#pragma once

#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "tori/intmat.hpp"

namespace torit {

// Build an IntMat from nested braces; mat({{1,2},{3,4}}).
inline tori::IntMat mat(std::initializer_list<std::initializer_list<long long>> rows) {
  const auto r = static_cast<tori::Index>(rows.size());
  const auto c = r == 0 ? 0 : static_cast<tori::Index>(rows.begin()->size());
  tori::IntMat M(r, c);
  tori::Index i = 0;
  for (const auto& row : rows) {
    tori::Index j = 0;
    for (long long x : row) M(i, j++) = x;
    ++i;
  }
  return M;
}

inline tori::IntMat emptyRows(tori::Index cols) { return tori::IntMat(0, cols); }

// Shape-checked equality; Eigen's operator== is undefined across shapes.
inline bool eqMat(const tori::IntMat& a, const tori::IntMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (tori::Index i = 0; i < a.rows(); ++i)
    for (tori::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline std::string show(const tori::IntMat& M) {
  std::ostringstream os;
  os << "[";
  for (tori::Index i = 0; i < M.rows(); ++i) {
    os << (i ? "; " : "");
    for (tori::Index j = 0; j < M.cols(); ++j) os << (j ? "," : "") << M(i, j);
  }
  os << "]";
  return os.str();
}

inline std::string show(const std::vector<long long>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

}  // namespace torit

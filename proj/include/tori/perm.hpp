#pragma once

#include <string>
#include <vector>

#include "tori/common.hpp"

namespace tori {

// Permutation of {1, ..., degree}.  Images are stored 0-based; all textual
// I/O is 1-based cycle notation.  Composition reads left to right:
// (a * b) moves a point first by a, then by b.
class Perm {
 public:
  Perm() = default;
  static Perm identity(int degree);

  // images[i] is the 0-based image of point i.
  explicit Perm(std::vector<int> images);

  int degree() const { return static_cast<int>(img_.size()); }
  int apply(int i) const { return img_[static_cast<std::size_t>(i)]; }
  bool isIdentity() const;
  Perm inverse() const;
  long long order() const;
  const std::vector<int>& images() const { return img_; }

  friend Perm operator*(const Perm& a, const Perm& b);

  // Lexicographic order on image arrays; used everywhere a deterministic
  // representative has to be chosen.
  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Perm& a, const Perm& b) { return a.img_ != b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }
  friend bool operator<=(const Perm& a, const Perm& b) { return a.img_ <= b.img_; }
  friend bool operator>(const Perm& a, const Perm& b) { return a.img_ > b.img_; }
  friend bool operator>=(const Perm& a, const Perm& b) { return a.img_ >= b.img_; }

 private:
  std::vector<int> img_;
};

// Parse 1-based cycle notation, e.g. "(1,8)(2,3)(4,5)(6,7)"; "()" is the
// identity.  Whitespace between tokens is ignored.  Throws ParseError on
// malformed input, points outside [1, degree], or a repeated point within a
// cycle.  Non-disjoint cycles compose left to right.
Perm parsePerm(const std::string& text, int degree);

// Disjoint-cycle form, cycles sorted by smallest moved point, each cycle
// starting at its smallest point; identity prints as "()".
std::string printPerm(const Perm& p);

}  // namespace tori

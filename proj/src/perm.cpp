#include "tori/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tori {

Perm Perm::identity(int degree) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int x : img_) {
    if (x < 0 || x >= degree() || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("Perm: image array is not a permutation");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

bool Perm::isIdentity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 0; i < degree(); ++i) inv[static_cast<std::size_t>(img_[static_cast<std::size_t>(i)])] = i;
  return Perm(std::move(inv));
}

long long Perm::order() const {
  // lcm of cycle lengths
  std::vector<char> seen(img_.size(), 0);
  long long ord = 1;
  for (int i = 0; i < degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    long long len = 0;
    int j = i;
    while (!seen[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = 1;
      j = apply(j);
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("Perm: cannot compose permutations of different degree");
  std::vector<int> img(a.img_.size());
  for (int i = 0; i < a.degree(); ++i) img[static_cast<std::size_t>(i)] = b.apply(a.apply(i));
  return Perm(std::move(img));
}

Perm parsePerm(const std::string& text, int degree) {
  if (degree < 0) throw std::invalid_argument("parsePerm: negative degree");
  Perm result = Perm::identity(degree);
  std::size_t pos = 0;
  auto skipSpace = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skipSpace();
  if (pos == text.size()) throw ParseError("parsePerm: empty input");
  bool sawCycle = false;
  while (pos < text.size()) {
    skipSpace();
    if (pos == text.size()) break;
    if (text[pos] != '(')
      throw ParseError("parsePerm: expected '(' at position " + std::to_string(pos) + " in \"" +
                       text + "\"");
    ++pos;
    std::vector<int> cycle;
    skipSpace();
    while (pos < text.size() && text[pos] != ')') {
      if (!cycle.empty()) {
        if (text[pos] != ',')
          throw ParseError("parsePerm: expected ',' at position " + std::to_string(pos) +
                           " in \"" + text + "\"");
        ++pos;
        skipSpace();
      }
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start)
        throw ParseError("parsePerm: expected a point at position " + std::to_string(pos) +
                         " in \"" + text + "\"");
      int p = std::stoi(text.substr(start, pos - start));
      if (p < 1 || p > degree)
        throw ParseError("parsePerm: point " + std::to_string(p) + " outside [1, " +
                         std::to_string(degree) + "] in \"" + text + "\"");
      if (std::find(cycle.begin(), cycle.end(), p - 1) != cycle.end())
        throw ParseError("parsePerm: repeated point " + std::to_string(p) + " in one cycle of \"" +
                         text + "\"");
      cycle.push_back(p - 1);
      skipSpace();
    }
    if (pos == text.size()) throw ParseError("parsePerm: unterminated cycle in \"" + text + "\"");
    ++pos;  // consume ')'
    sawCycle = true;
    if (cycle.size() >= 2) {
      std::vector<int> img(static_cast<std::size_t>(degree));
      std::iota(img.begin(), img.end(), 0);
      for (std::size_t k = 0; k < cycle.size(); ++k)
        img[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
      result = result * Perm(std::move(img));
    }
    skipSpace();
  }
  if (!sawCycle) throw ParseError("parsePerm: no cycles in \"" + text + "\"");
  return result;
}

std::string printPerm(const Perm& p) {
  std::ostringstream os;
  std::vector<char> seen(static_cast<std::size_t>(p.degree()), 0);
  bool any = false;
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)] || p.apply(i) == i) continue;
    any = true;
    os << '(';
    int j = i;
    bool first = true;
    while (!seen[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = 1;
      os << (first ? "" : ",") << (j + 1);
      first = false;
      j = p.apply(j);
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

}  // namespace tori

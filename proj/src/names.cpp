#include "tori/names.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tori {
namespace {

std::string cyclicFactorsDescending(std::vector<long long> invariants) {
  std::sort(invariants.begin(), invariants.end(), std::greater<long long>());
  std::string out;
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    if (i) out += " x ";
    out += "C" + std::to_string(invariants[i]);
  }
  return out;
}

int involutionCount(const PermGroup& G) {
  int count = 0;
  for (const Perm& g : G.elements())
    if (g.order() == 2) ++count;
  return count;
}

bool isDihedralOfOrder(const PermGroup& G) {
  const long long n = G.order();
  if (n < 6 || n % 2 != 0) return false;
  const long long m = n / 2;
  for (const Perm& c : G.elements()) {
    if (c.order() != m) continue;
    std::vector<Perm> powers;
    powers.reserve(static_cast<std::size_t>(m));
    Perm p = G.identity();
    for (long long k = 0; k < m; ++k) {
      powers.push_back(p);
      p = p * c;
    }
    std::sort(powers.begin(), powers.end());
    const Perm cinv = c.inverse();
    for (const Perm& t : G.elements()) {
      if (t.order() != 2) continue;
      if (std::binary_search(powers.begin(), powers.end(), t)) continue;
      if (t.inverse() * c * t == cinv) return true;
    }
  }
  return false;
}

bool isGeneralizedQuaternion(const PermGroup& G) {
  const long long n = G.order();
  if (n < 8 || (n & (n - 1)) != 0) return false;
  if (involutionCount(G) != 1) return false;
  for (const Perm& c : G.elements())
    if (c.order() == n / 2) return true;
  return false;
}

const std::map<long long, std::string>& perfectNames() {
  static const std::map<long long, std::string> table = {
      {60, "A5"},      {120, "SL(2,5)"},  {168, "PSL(3,2)"},
      {336, "SL(2,7)"}, {360, "A6"},      {504, "PSL(2,8)"},
      {660, "PSL(2,11)"}, {1092, "PSL(2,13)"}, {2520, "A7"},
      {20160, "A8"}};
  return table;
}

bool trivialIntersection(const PermGroup& A, const PermGroup& B) {
  const auto& a = A.elements();
  const auto& b = B.elements();
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common == 1;  // the identity is always shared
}

bool isNormalIn(const PermGroup& G, const PermGroup& S) {
  for (const Perm& g : G.generators()) {
    const Perm ginv = g.inverse();
    for (const Perm& s : S.generators())
      if (!S.contains(ginv * s * g)) return false;
  }
  return true;
}

struct Factor {
  long long order;
  std::string name;
};

// Factor list of a direct-product decomposition (abelian groups contribute
// one cyclic atom per invariant); nullopt-like empty handling not needed: a
// group that does not split contributes itself as a single atom.
std::vector<Factor> directFactors(const PermGroup& G);

std::string productName(std::vector<Factor> factors) {
  std::stable_sort(factors.begin(), factors.end(),
                   [](const Factor& a, const Factor& b) {
                     if (a.order != b.order) return a.order < b.order;
                     return a.name < b.name;
                   });
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += " x ";
    out += factors[i].name;
  }
  return out;
}

std::vector<PermGroup> properNormalSubgroups(const PermGroup& G) {
  std::vector<PermGroup> out;
  for (PermGroup& S : allSubgroups(G, G.order())) {
    if (S.order() == 1 || S.order() == G.order()) continue;
    if (isNormalIn(G, S)) out.push_back(std::move(S));
  }
  return out;
}

// First direct split G = N x M (both factors normal, trivial intersection),
// scanning small N first for determinism.
std::optional<std::pair<PermGroup, PermGroup>> splitDirect(
    const PermGroup& G, const std::vector<PermGroup>& normals) {
  for (const PermGroup& N : normals) {
    for (const PermGroup& M : normals) {
      if (N.order() * M.order() != G.order()) continue;
      if (trivialIntersection(N, M))
        return std::make_optional(std::make_pair(N, M));
    }
  }
  return std::nullopt;
}

std::vector<Factor> directFactors(const PermGroup& G) {
  if (G.isAbelian()) {
    std::vector<Factor> out;
    for (long long d : abelianization(G).invariants())
      out.push_back({d, "C" + std::to_string(d)});
    return out;
  }
  const std::vector<PermGroup> normals = properNormalSubgroups(G);
  if (auto split = splitDirect(G, normals)) {
    std::vector<Factor> out = directFactors(split->first);
    std::vector<Factor> right = directFactors(split->second);
    out.insert(out.end(), right.begin(), right.end());
    return out;
  }
  return {{G.order(), structureName(G)}};
}

std::string wrapped(const std::string& name) {
  if (name.find(' ') != std::string::npos) return "(" + name + ")";
  return name;
}

// "N : K" with N the largest abelian normal subgroup admitting a complement
// (elementary factors preferred on ties), falling back to nonabelian N; the
// complement prefers cyclic candidates.
std::optional<std::string> semidirectName(const PermGroup& G,
                                          const std::vector<PermGroup>& normals) {
  std::vector<const PermGroup*> candidates;
  candidates.reserve(normals.size());
  for (const PermGroup& N : normals) candidates.push_back(&N);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const PermGroup* a, const PermGroup* b) {
                     const bool abA = a->isAbelian(), abB = b->isAbelian();
                     if (abA != abB) return abA;  // abelian first
                     if (a->order() != b->order()) return a->order() > b->order();
                     if (abA) {
                       const std::size_t fa = abelianization(*a).invariants().size();
                       const std::size_t fb = abelianization(*b).invariants().size();
                       if (fa != fb) return fa > fb;  // more factors first
                     }
                     return false;
                   });
  const std::vector<PermGroup> subs = allSubgroups(G, G.order());
  for (const PermGroup* N : candidates) {
    const long long want = G.order() / N->order();
    const PermGroup* complement = nullptr;
    for (const PermGroup& K : subs) {
      if (K.order() != want || !trivialIntersection(*N, K)) continue;
      if (complement == nullptr) complement = &K;
      if (K.isAbelian() && abelianization(K).invariants().size() == 1) {
        complement = &K;  // cyclic complement preferred
        break;
      }
    }
    if (complement != nullptr)
      return wrapped(structureName(*N)) + " : " + wrapped(structureName(*complement));
  }
  return std::nullopt;
}

}  // namespace

std::string structureName(const PermGroup& G) {
  const long long n = G.order();
  if (n == 1) return "1";
  if (G.isAbelian()) return cyclicFactorsDescending(abelianization(G).invariants());
  if (G.isPerfect()) {
    auto it = perfectNames().find(n);
    if (it != perfectNames().end()) return it->second;
    return "?" + std::to_string(n);
  }
  if (n == 6) return "S3";
  if (n == 12 && abelianization(G).invariants() == std::vector<long long>{3})
    return "A4";
  if (isDihedralOfOrder(G)) return "D" + std::to_string(n);
  if (isGeneralizedQuaternion(G)) return "Q" + std::to_string(n);
  if (n == 24 && center(G).order() == 1) return "S4";
  if (n == 120 && center(G).order() == 1) return "S5";
  if (n == 720 && center(G).order() == 1) return "S6";
  if (n == 5040 && center(G).order() == 1) return "S7";
  if (n == 40320 && center(G).order() == 1) return "S8";
  if (n == 24 && derivedSubgroup(G).order() == 8) return "SL(2,3)";
  if (n == 48 && derivedSubgroup(G).order() == 24 && involutionCount(G) > 1)
    return "GL(2,3)";
  const std::vector<PermGroup> normals = properNormalSubgroups(G);
  if (auto split = splitDirect(G, normals)) {
    std::vector<Factor> factors = directFactors(split->first);
    std::vector<Factor> right = directFactors(split->second);
    factors.insert(factors.end(), right.begin(), right.end());
    return productName(std::move(factors));
  }
  if (auto name = semidirectName(G, normals)) return *name;
  return "?" + std::to_string(n);
}

}  // namespace tori

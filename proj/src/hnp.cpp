#include "tori/hnp.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tori/cohomology.hpp"
#include "tori/common.hpp"
#include "tori/flabby.hpp"

namespace tori {
namespace {

IntMat rowsFromVectors(const std::vector<std::vector<long long>>& rows,
                       Index cols) {
  IntMat out(static_cast<Index>(rows.size()), cols);
  for (Index i = 0; i < out.rows(); ++i)
    for (Index j = 0; j < cols; ++j)
      out(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

IntMat diagonalOf(const std::vector<long long>& d) {
  const Index n = static_cast<Index>(d.size());
  IntMat out = IntMat::Zero(n, n);
  for (Index i = 0; i < n; ++i) out(i, i) = d[static_cast<std::size_t>(i)];
  return out;
}

PermGroup groupFromElementList(int degree, std::vector<Perm> elems) {
  std::sort(elems.begin(), elems.end());
  std::vector<Perm> gens = minimizedGenerators(elems);
  return PermGroup::fromElements(degree, std::move(gens), std::move(elems));
}

}  // namespace

bool operator==(const ObstructionPart& a, const ObstructionPart& b) {
  if (a.invariants != b.invariants || a.ambient != b.ambient) return false;
  if (a.coords.rows() != b.coords.rows() || a.coords.cols() != b.coords.cols())
    return false;
  for (Index i = 0; i < a.coords.rows(); ++i)
    for (Index j = 0; j < a.coords.cols(); ++j)
      if (a.coords(i, j) != b.coords(i, j)) return false;
  return true;
}

ObstructionPart obstructionPartFromRows(const std::vector<long long>& ambient,
                                        const IntMat& rows) {
  const Index n = static_cast<Index>(ambient.size());
  ObstructionPart out;
  out.ambient = ambient;
  out.coords = IntMat(0, n);
  if (n == 0) return out;

  IntMat stack(rows.rows() + n, n);
  if (rows.rows() > 0) stack.topRows(rows.rows()) = rows;
  stack.bottomRows(n) = diagonalOf(ambient);
  const IntMat pre = hnfBasis(stack);  // n x n, full rank by construction
  if (pre.rows() != n)
    throw std::logic_error("obstructionPartFromRows: preimage lattice rank");

  // Subgroup structure = pre-lattice / relation lattice.
  const IntMat rel = solveInBasis(pre, diagonalOf(ambient));
  const QuotientInvariants qi = quotientInvariants(n, rel);
  if (qi.freeRank != 0)
    throw std::logic_error("obstructionPartFromRows: finite quotient expected");
  out.invariants = qi.factors;

  // Canonical coords: entrywise reduction mod the ambient invariants; rows
  // reducing to zero are exactly the pure relation rows and are dropped.
  std::vector<Index> keep;
  IntMat reduced = pre;
  for (Index i = 0; i < n; ++i) {
    bool zero = true;
    for (Index j = 0; j < n; ++j) {
      const Int d = ambient[static_cast<std::size_t>(j)];
      Int m = pre(i, j) % d;
      if (m < 0) m += d;
      reduced(i, j) = m;
      if (m != 0) zero = false;
    }
    if (!zero) keep.push_back(i);
  }
  out.coords = IntMat(static_cast<Index>(keep.size()), n);
  for (Index i = 0; i < out.coords.rows(); ++i)
    out.coords.row(i) = reduced.row(keep[static_cast<std::size_t>(i)]);
  return out;
}

FirstObstructionN firstObstructionN(const PermGroup& G, const PermGroup& H) {
  const FinAbStructure abG = abelianization(G);
  const FinAbStructure abH = abelianization(H);
  const std::vector<long long>& hinv = abH.invariants();
  const Index k = static_cast<Index>(hinv.size());

  FirstObstructionN out;
  out.codomain = abG.invariants();
  out.psi1 = IntMat(k, static_cast<Index>(out.codomain.size()));
  const std::vector<Perm> hgens = abH.snfGenerators();
  for (Index i = 0; i < k; ++i) {
    const std::vector<long long> img =
        abG.projectionOf(hgens[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < out.psi1.cols(); ++j)
      out.psi1(i, j) = img[static_cast<std::size_t>(j)];
  }

  const PermGroup commutators = derivedSubgroup(G);
  std::vector<std::vector<long long>> rows;
  for (const Perm& h : H.elements())
    if (commutators.contains(h)) rows.push_back(abH.projectionOf(h));
  out.ker = obstructionPartFromRows(hinv, rowsFromVectors(rows, k));
  return out;
}

FirstObstructionN firstObstructionN(const PermGroup& G) {
  return firstObstructionN(G, stabilizer(G, 1));
}

ObstructionPart firstObstructionDnr(const PermGroup& G, const PermGroup& H) {
  const FinAbStructure abH = abelianization(H);
  const std::vector<long long>& hinv = abH.invariants();
  const Index k = static_cast<Index>(hinv.size());
  std::vector<std::vector<long long>> rows;
  if (k > 0) {
    for (const Perm& x : rightTransversal(G, H)) {
      const Perm xinv = x.inverse();
      // H ∩ xHx^{-1}: elements h of H with x^{-1} h x in H.
      std::vector<Perm> inter;
      for (const Perm& h : H.elements())
        if (H.contains(xinv * h * x)) inter.push_back(h);
      std::sort(inter.begin(), inter.end());
      for (const Perm& h : minimizedGenerators(inter))
        rows.push_back(abH.projectionOf(commutatorOf(h, x)));
    }
  }
  return obstructionPartFromRows(hinv, rowsFromVectors(rows, k));
}

ObstructionPart firstObstructionDnr(const PermGroup& G) {
  return firstObstructionDnr(G, stabilizer(G, 1));
}

ObstructionPart firstObstructionDr(const PermGroup& G, const PermGroup& Gv,
                                   const PermGroup& H) {
  const FinAbStructure abH = abelianization(H);
  const std::vector<long long>& hinv = abH.invariants();
  const Index nH = static_cast<Index>(hinv.size());
  if (nH == 0) return obstructionPartFromRows(hinv, IntMat(0, 0));

  const FinAbStructure abGv = abelianization(Gv);
  const std::vector<long long>& einv = abGv.invariants();
  const Index m = static_cast<Index>(einv.size());

  // One block per double coset: the Smith generators of H_w^ab contribute a
  // psi2 row (image in Gv^ab) and a phi1 row (image in H^ab) each.
  std::vector<long long> blockInv;
  std::vector<std::vector<long long>> prows, qrows;
  for (const Perm& x : doubleCosets(G, H, Gv)) {
    const Perm xinv = x.inverse();
    std::vector<Perm> inter;  // H ∩ x Gv x^{-1}
    for (const Perm& h : H.elements())
      if (Gv.contains(xinv * h * x)) inter.push_back(h);
    const PermGroup Hw = groupFromElementList(G.degree(), std::move(inter));
    const FinAbStructure abHw = abelianization(Hw);
    const std::vector<Perm> wgens = abHw.snfGenerators();
    const std::vector<long long>& winv = abHw.invariants();
    for (std::size_t j = 0; j < winv.size(); ++j) {
      blockInv.push_back(winv[j]);
      prows.push_back(abGv.projectionOf(xinv * wgens[j] * x));
      qrows.push_back(abH.projectionOf(wgens[j]));
    }
  }

  const Index K = static_cast<Index>(blockInv.size());
  if (K == 0) return obstructionPartFromRows(hinv, IntMat(0, nH));
  const IntMat Q = rowsFromVectors(qrows, nH);

  // Generators of Ker psi2 as a sublattice of the block coordinates: vectors
  // v with v·P ≡ 0 mod the Gv^ab invariants.  The block relation rows are
  // appended so the lattice always contains the full relation lattice.
  IntMat L;
  if (m == 0) {
    L = diagonalOf(std::vector<long long>(blockInv.size(), 1));
  } else {
    const IntMat P = rowsFromVectors(prows, m);
    IntMat B(K + m, m);
    B.topRows(K) = P;
    B.bottomRows(m) = diagonalOf(einv);
    const IntMat Z = integerKernel(B);
    L = IntMat(Z.rows() + K, K);
    if (Z.rows() > 0) L.topRows(Z.rows()) = Z.leftCols(K);
    L.bottomRows(K) = diagonalOf(blockInv);
  }
  return obstructionPartFromRows(hinv, fastMul(L, Q));
}

ObstructionPart firstObstructionDr(const PermGroup& G, const PermGroup& Gv) {
  return firstObstructionDr(G, Gv, stabilizer(G, 1));
}

HnpSurvey hnpSurvey(const PermGroup& G, const PermGroup& H,
                    std::optional<long long> orderBudget) {
  HnpSurvey out;
  out.kerPsi1 = firstObstructionN(G, H).ker;
  std::vector<PermGroup> subs = allSubgroups(G, orderBudget);

  std::map<std::vector<long long>, std::size_t> indexOf;
  auto keyOf = [&G](const std::vector<Perm>& elems) {
    std::vector<long long> key;
    key.reserve(elems.size());
    for (const Perm& s : elems) key.push_back(G.elementIndex(s));
    std::sort(key.begin(), key.end());
    return key;
  };
  for (std::size_t i = 0; i < subs.size(); ++i)
    indexOf[keyOf(subs[i].elements())] = i;

  // The local part is a conjugation invariant, so each conjugacy class of
  // subgroups is computed once and shared along its orbit.
  std::vector<char> done(subs.size(), 0);
  std::vector<ObstructionPart> parts(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (done[i]) continue;
    const ObstructionPart dr = firstObstructionDr(G, subs[i], H);
    std::vector<std::size_t> orbit{i};
    done[i] = 1;
    parts[i] = dr;
    for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
      const PermGroup& S = subs[orbit[qi]];
      for (const Perm& g : G.generators()) {
        const Perm ginv = g.inverse();
        std::vector<Perm> conj;
        conj.reserve(S.elements().size());
        for (const Perm& s : S.elements()) conj.push_back(ginv * s * g);
        const auto it = indexOf.find(keyOf(conj));
        if (it != indexOf.end() && !done[it->second]) {
          done[it->second] = 1;
          parts[it->second] = dr;
          orbit.push_back(it->second);
        }
      }
    }
  }

  out.perSubgroup.reserve(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const bool full = parts[i] == out.kerPsi1;
    (full ? out.trueSet : out.falseSet).push_back(i);
    out.perSubgroup.emplace_back(std::move(subs[i]), std::move(parts[i]));
  }

  for (std::size_t i : out.trueSet) {
    const PermGroup& big = out.perSubgroup[i].first;
    bool minimal = true;
    for (std::size_t j : out.trueSet) {
      if (j == i) continue;
      const PermGroup& small = out.perSubgroup[j].first;
      if (small.order() >= big.order()) continue;
      bool contained = true;
      for (const Perm& g : small.generators())
        if (!big.contains(g)) {
          contained = false;
          break;
        }
      if (contained) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.minimalTrueSubgroups.push_back(i);
  }
  return out;
}

HnpSurvey hnpSurvey(const PermGroup& G) {
  return hnpSurvey(G, stabilizer(G, 1));
}

namespace {

bool isPrimeDegree(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

const std::map<int, int>& transitiveCounts() {
  static const std::map<int, int> counts = {
      {1, 1},  {2, 1},  {3, 2},  {4, 5},   {5, 5},   {6, 16},  {7, 7},
      {8, 50}, {9, 34}, {10, 45}, {11, 8}, {12, 301}, {13, 9}, {14, 63},
      {15, 104}};
  return counts;
}

const std::map<int, std::vector<int>>& obstructedLabels() {
  static const std::map<int, std::vector<int>> table = {
      {4, {2, 4}},
      {6, {4, 12}},
      {8, {2, 3, 4, 9, 11, 13, 14, 15, 19, 21, 22, 31, 32, 37, 38}},
      {9, {2, 5, 7, 9, 11, 14, 23}},
      {10, {7, 26, 32}},
      {14, {30}},
      {15, {9, 14}}};
  return table;
}

long long parseNumber(std::string_view text, const std::string& label) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1)
    throw ParseError("bad transitive group label '" + label +
                     "': expected <degree>T<number>, e.g. 8T31");
  return value;
}

}  // namespace

Table1Entry table1Lookup(const std::string& label) {
  const std::size_t tpos = label.find('T');
  if (tpos == std::string::npos || tpos == 0 || tpos + 1 >= label.size())
    throw ParseError("bad transitive group label '" + label +
                     "': expected <degree>T<number>, e.g. 8T31");
  const long long n = parseNumber(std::string_view(label).substr(0, tpos), label);
  const long long m =
      parseNumber(std::string_view(label).substr(tpos + 1), label);

  Table1Entry out;
  out.label = label;
  const auto countIt = transitiveCounts().find(static_cast<int>(n));
  if (countIt != transitiveCounts().end() && m > countIt->second)
    throw ParseError("no transitive group '" + label + "': degree " +
                     std::to_string(n) + " has only " +
                     std::to_string(countIt->second) + " classes");

  if (n == 1 || isPrimeDegree(n)) {
    out.status = Table1Status::HoldsAlways;
    return out;
  }
  if (n == 12 || n > 15) {
    out.status = Table1Status::Unknown;
    return out;
  }
  const auto it = obstructedLabels().find(static_cast<int>(n));
  const bool obstructed =
      it != obstructedLabels().end() &&
      std::find(it->second.begin(), it->second.end(), static_cast<int>(m)) !=
          it->second.end();
  if (!obstructed) {
    out.status = Table1Status::HoldsAlways;
    return out;
  }
  out.status = Table1Status::Obstructed;
  if (n == 8 && m == 3) {
    out.nonzeroInvariants = {2, 2, 2};
  } else if (n == 9) {
    out.nonzeroInvariants = {3};
  } else if (n == 15) {
    out.nonzeroInvariants = {5};
  } else {
    out.nonzeroInvariants = {2};
  }
  return out;
}

GLattice chevalleyLattice(const PermGroup& G, const PermGroup& H) {
  const auto action = cosetAction(G, H);
  const PermGroup& Q = action.first;
  const Index r = Q.degree();
  std::vector<IntMat> mats;
  mats.reserve(Q.generators().size());
  for (const Perm& sigma : Q.generators()) {
    IntMat A = IntMat::Zero(r - 1, r - 1);
    for (Index i = 0; i + 1 < r; ++i) {
      const Index img = sigma.apply(static_cast<int>(i));
      if (img + 1 < r)
        A(i, img) = 1;
      else
        A.row(i).setConstant(Int(-1));
    }
    mats.push_back(std::move(A));
  }
  return GLattice(G, r - 1, std::move(mats));
}

HnpReport hnpReport(const PermGroup& G, const PermGroup& H) {
  HnpReport out;
  const GLattice J = chevalleyLattice(G, H);
  out.h1J = h1(G, J).invariants;
  out.flabbyClassH1J = flabbyClassH1(J);
  out.obstruction = firstObstructionN(G, H);
  out.dnr = firstObstructionDnr(G, H);
  out.tamagawaNumerator = 1;
  for (long long d : out.h1J) out.tamagawaNumerator *= d;
  return out;
}

HnpReport hnpReport(const PermGroup& G) {
  return hnpReport(G, stabilizer(G, 1));
}

}  // namespace tori

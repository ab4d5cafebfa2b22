#include "tori/glattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tori {

namespace {

// Full-cache verification budget, measured in scalar multiplications
// (|G| * #gens * rank^3): beyond this the homomorphism property is left to
// the callers' own consistency checks.
constexpr long long kVerifyOpsCap = 200000000;

bool isUnimodular(const IntMat& A) {
  if (A.rows() != A.cols()) return false;
  IntMat H = hnfBasis(A);
  if (H.rows() != A.rows()) return false;
  for (Index i = 0; i < H.rows(); ++i)
    for (Index j = 0; j < H.cols(); ++j)
      if (H(i, j) != Int(i == j ? 1 : 0)) return false;
  return true;
}

bool sameGroupAndGenerators(const PermGroup& a, const PermGroup& b) {
  return a.degree() == b.degree() && a.generators() == b.generators() &&
         a.elements() == b.elements();
}

void requireSubgroup(const PermGroup& G, const PermGroup& K, const char* who) {
  if (K.degree() != G.degree())
    throw std::invalid_argument(std::string(who) + ": degree mismatch");
  for (const Perm& k : K.generators())
    if (!G.contains(k))
      throw std::invalid_argument(std::string(who) + ": not a subgroup of the lattice group");
}

}  // namespace

GLattice::GLattice(PermGroup group, Index rank, std::vector<IntMat> generatorAction)
    : group_(std::move(group)), rank_(rank), genAction_(std::move(generatorAction)) {
  if (rank_ < 0) throw std::invalid_argument("GLattice: negative rank");
  if (genAction_.size() != group_.generators().size())
    throw std::invalid_argument("GLattice: one action matrix per group generator required");
  for (const IntMat& A : genAction_) {
    if (A.rows() != rank_ || A.cols() != rank_)
      throw std::invalid_argument("GLattice: action matrix is not rank x rank");
    if (!isUnimodular(A))
      throw std::invalid_argument("GLattice: action matrix is not unimodular");
  }
}

const IntMat& GLattice::actionOf(const Perm& g) const {
  long long idx = group_.elementIndex(g);
  if (idx < 0) throw std::invalid_argument("GLattice: element not in the acting group");
  const IntMat& m = actionByIndex(idx);
  verifyIfComplete();
  return m;
}

const IntMat& GLattice::actionByIndex(long long idx) const {
  auto it = cache_.find(idx);
  if (it != cache_.end()) return it->second;
  auto [p, gi] = group_.bfsParents()[static_cast<std::size_t>(idx)];
  IntMat m;
  if (p < 0) {
    m = IntMat::Identity(rank_, rank_);
  } else {
    m = fastMul(actionByIndex(p), genAction_[static_cast<std::size_t>(gi)]);
  }
  return cache_.emplace(idx, std::move(m)).first->second;
}

void GLattice::verifyIfComplete() const {
  if (verified_ || static_cast<long long>(cache_.size()) != group_.order()) return;
  long long ops = group_.order() * static_cast<long long>(genAction_.size());
  for (int i = 0; i < 3; ++i) ops *= std::max<long long>(rank_, 1);
  if (ops > kVerifyOpsCap) return;
  verified_ = true;  // set first; the checks below recurse through actionOf
  const auto& els = group_.elements();
  for (std::size_t e = 0; e < els.size(); ++e)
    for (std::size_t gi = 0; gi < genAction_.size(); ++gi) {
      long long t = group_.elementIndex(els[e] * group_.generators()[gi]);
      IntMat lhs = fastMul(actionByIndex(static_cast<long long>(e)), genAction_[gi]);
      if (lhs != actionByIndex(t))
        throw std::logic_error(
            "GLattice: generator matrices do not extend to a homomorphism (edge " +
            printPerm(els[e]) + " * " + printPerm(group_.generators()[gi]) + ")");
    }
}

GLattice trivialLattice(const PermGroup& G, Index rank) {
  std::vector<IntMat> act(G.generators().size(), IntMat::Identity(rank, rank));
  return GLattice(G, rank, std::move(act));
}

GLattice permutationLattice(const PermGroup& G, const PermGroup& H) {
  requireSubgroup(G, H, "permutationLattice");
  std::vector<Perm> reps = rightTransversal(G, H);
  const Index k = static_cast<Index>(reps.size());
  std::vector<Perm> repInv;
  repInv.reserve(reps.size());
  for (const Perm& r : reps) repInv.push_back(r.inverse());
  auto cosetOf = [&](const Perm& x) -> Index {
    for (Index j = 0; j < k; ++j)
      if (H.contains(x * repInv[static_cast<std::size_t>(j)])) return j;
    throw std::logic_error("permutationLattice: element escaped the coset table");
  };
  std::vector<IntMat> act;
  act.reserve(G.generators().size());
  for (const Perm& g : G.generators()) {
    IntMat P = IntMat::Zero(k, k);
    for (Index i = 0; i < k; ++i) P(i, cosetOf(reps[static_cast<std::size_t>(i)] * g)) = 1;
    act.push_back(std::move(P));
  }
  return GLattice(G, k, std::move(act));
}

GLattice norm1Lattice(const PermGroup& G) {
  const int n = G.degree();
  if (n < 2 || !G.isTransitive())
    throw std::invalid_argument("norm1Lattice: a transitive group of degree >= 2 is required");
  const Index r = n - 1;
  std::vector<IntMat> act;
  act.reserve(G.generators().size());
  for (const Perm& s : G.generators()) {
    IntMat A = IntMat::Zero(r, r);
    for (Index i = 0; i < r; ++i) {
      int img = s.apply(static_cast<int>(i));
      if (img < n - 1) {
        A(i, img) = 1;
      } else {
        // The class of e_n is minus the sum of the basis vectors.
        for (Index j = 0; j < r; ++j) A(i, j) = -1;
      }
    }
    act.push_back(std::move(A));
  }
  return GLattice(G, r, std::move(act));
}

GLattice dual(const GLattice& M) {
  std::vector<IntMat> act;
  act.reserve(M.generatorAction().size());
  for (const Perm& s : M.group().generators())
    act.push_back(M.actionOf(s.inverse()).transpose());
  return GLattice(M.group(), M.rank(), std::move(act));
}

GLattice directSum(const GLattice& M1, const GLattice& M2) {
  if (!sameGroupAndGenerators(M1.group(), M2.group()))
    throw std::invalid_argument("directSum: summands live over different groups");
  const Index r1 = M1.rank(), r2 = M2.rank();
  std::vector<IntMat> act;
  act.reserve(M1.generatorAction().size());
  for (std::size_t i = 0; i < M1.generatorAction().size(); ++i) {
    IntMat B = IntMat::Zero(r1 + r2, r1 + r2);
    B.topLeftCorner(r1, r1) = M1.generatorAction()[i];
    B.bottomRightCorner(r2, r2) = M2.generatorAction()[i];
    act.push_back(std::move(B));
  }
  return GLattice(M1.group(), r1 + r2, std::move(act));
}

GLattice restrictTo(const GLattice& M, const PermGroup& K) {
  requireSubgroup(M.group(), K, "restrictTo");
  std::vector<IntMat> act;
  act.reserve(K.generators().size());
  for (const Perm& k : K.generators()) act.push_back(M.actionOf(k));
  return GLattice(K, M.rank(), std::move(act));
}

IntMat fixedSublattice(const GLattice& M, const PermGroup& K) {
  requireSubgroup(M.group(), K, "fixedSublattice");
  const Index r = M.rank();
  const Index g = static_cast<Index>(K.generators().size());
  IntMat stacked(r, r * g);
  for (Index i = 0; i < g; ++i) {
    const IntMat& A = M.actionOf(K.generators()[static_cast<std::size_t>(i)]);
    stacked.middleCols(i * r, r) = A - IntMat::Identity(r, r);
  }
  return integerKernel(stacked);
}

}  // namespace tori

#include "tori/flabby.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

#include "tori/intmat.hpp"

namespace tori {

namespace {

// One contributing subgroup class: the coset lattice z[G/K] together with
// the images of its basis vectors under the cover map, one k x r slab per
// fixed-basis vector (row c of mapRows[j] is x_j * rho_N(t_c)).
struct Block {
  PermGroup K;
  IntMat fixedBasis;
  std::vector<Perm> transversal;
  GLattice cosetLattice;
  std::vector<IntMat> mapRows;
};

// A single z[G/K] summand of the cover: block index plus the fixed-basis
// vector it maps to.
struct Copy {
  std::size_t block;
  Index row;
};

// Remix a lattice basis without changing its row span: shuffle the rows,
// then shear each row by a small multiple of its predecessor.
IntMat perturbBasis(const IntMat& B, unsigned seed) {
  if (B.rows() < 2) return B;
  std::mt19937 rng(seed);
  std::vector<Index> order(static_cast<std::size_t>(B.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  IntMat S(B.rows(), B.cols());
  for (Index i = 0; i < S.rows(); ++i) S.row(i) = B.row(order[static_cast<std::size_t>(i)]);
  for (Index i = 1; i < S.rows(); ++i) {
    Int c = static_cast<long long>(rng() % 5) - 2;
    for (Index j = 0; j < S.cols(); ++j) S(i, j) += c * S(i - 1, j);
  }
  return S;
}

// Orbits of the subgroup C on the coset indices of z[G/K].
std::vector<std::vector<Index>> cosetOrbits(const Block& b, const PermGroup& C) {
  const Index k = static_cast<Index>(b.transversal.size());
  std::vector<Perm> tinv;
  tinv.reserve(b.transversal.size());
  for (const Perm& t : b.transversal) tinv.push_back(t.inverse());
  auto cosetOf = [&](const Perm& x) -> Index {
    for (Index j = 0; j < k; ++j)
      if (b.K.contains(x * tinv[static_cast<std::size_t>(j)])) return j;
    throw std::logic_error("flabbyResolution: element escaped the coset table");
  };
  std::vector<std::vector<Index>> images;
  for (const Perm& s : C.generators()) {
    std::vector<Index> img(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i)
      img[static_cast<std::size_t>(i)] = cosetOf(b.transversal[static_cast<std::size_t>(i)] * s);
    images.push_back(std::move(img));
  }
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  std::vector<std::vector<Index>> orbits;
  for (Index start = 0; start < k; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<Index> orbit{start};
    seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const auto& img : images) {
        Index nxt = img[static_cast<std::size_t>(orbit[head])];
        if (!seen[static_cast<std::size_t>(nxt)]) {
          seen[static_cast<std::size_t>(nxt)] = 1;
          orbit.push_back(nxt);
        }
      }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

// Greedily drop cover summands while the map stays surjective on the fixed
// sublattice of every subgroup class.  That condition is exactly what makes
// the kernel coflabby, so the pruned cover is still a valid resolution.
void reduceCopies(std::vector<Copy>& copies, const std::vector<Block>& blocks, const GLattice& N,
                  const std::vector<PermGroup>& classes) {
  const std::size_t nC = classes.size();
  const std::size_t nB = blocks.size();
  std::vector<IntMat> targets(nC);
  std::vector<std::vector<std::vector<std::vector<Index>>>> orb(nC);
  for (std::size_t ci = 0; ci < nC; ++ci) {
    targets[ci] = fixedSublattice(N, classes[ci]);
    orb[ci].resize(nB);
    if (targets[ci].rows() == 0) continue;
    for (std::size_t bi = 0; bi < nB; ++bi) orb[ci][bi] = cosetOrbits(blocks[bi], classes[ci]);
  }

  auto surjective = [&](const std::vector<char>& alive) -> bool {
    for (std::size_t ci = 0; ci < nC; ++ci) {
      const IntMat& T = targets[ci];
      if (T.rows() == 0) continue;
      std::vector<IntMat> rows;
      for (std::size_t i = 0; i < copies.size(); ++i) {
        if (!alive[i]) continue;
        const Block& b = blocks[copies[i].block];
        const IntMat& slab = b.mapRows[static_cast<std::size_t>(copies[i].row)];
        for (const auto& orbit : orb[ci][copies[i].block]) {
          IntMat sum = IntMat::Zero(1, T.cols());
          for (Index c : orbit) sum += slab.row(c);
          rows.push_back(std::move(sum));
        }
      }
      IntMat stack(static_cast<Index>(rows.size()), T.cols());
      for (std::size_t i = 0; i < rows.size(); ++i)
        stack.row(static_cast<Index>(i)) = rows[i];
      IntMat basis = hnfBasis(stack);
      for (Index i = 0; i < T.rows(); ++i)
        if (!inRowLattice(basis, IntMat(T.row(i)))) return false;
    }
    return true;
  };

  std::vector<std::size_t> order(copies.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    return blocks[copies[a].block].transversal.size() > blocks[copies[c].block].transversal.size();
  });
  std::vector<char> alive(copies.size(), 1);
  for (std::size_t idx : order) {
    alive[idx] = 0;
    if (!surjective(alive)) alive[idx] = 1;
  }
  std::vector<Copy> kept;
  for (std::size_t i = 0; i < copies.size(); ++i)
    if (alive[i]) kept.push_back(copies[i]);
  copies = std::move(kept);
}

}  // namespace

FlabbyResolution flabbyResolution(const GLattice& M, const FlabbyOptions& options) {
  const PermGroup& G = M.group();
  const Index r = M.rank();
  GLattice N = dual(M);

  std::vector<PermGroup> classes = subgroupClassReps(G);
  std::vector<PermGroup> walk = classes;
  if (options.reverseClassOrder) std::reverse(walk.begin(), walk.end());

  std::vector<Block> blocks;
  for (const PermGroup& K : walk) {
    IntMat FB = fixedSublattice(N, K);
    if (FB.rows() == 0) continue;
    if (options.perturbSeed != 0)
      FB = perturbBasis(FB, options.perturbSeed + static_cast<unsigned>(blocks.size()));
    Block b;
    b.K = K;
    b.fixedBasis = std::move(FB);
    b.transversal = rightTransversal(G, K);
    b.cosetLattice = permutationLattice(G, K);
    for (Index j = 0; j < b.fixedBasis.rows(); ++j) {
      IntMat slab(static_cast<Index>(b.transversal.size()), r);
      for (Index c = 0; c < slab.rows(); ++c)
        slab.row(c) =
            b.fixedBasis.row(j) * N.actionOf(b.transversal[static_cast<std::size_t>(c)]);
      b.mapRows.push_back(std::move(slab));
    }
    blocks.push_back(std::move(b));
  }

  std::vector<Copy> copies;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi)
    for (Index j = 0; j < blocks[bi].fixedBasis.rows(); ++j) copies.push_back({bi, j});

  if (options.reduceRank) reduceCopies(copies, blocks, N, classes);

  std::vector<Index> offset(copies.size());
  Index total = 0;
  for (std::size_t i = 0; i < copies.size(); ++i) {
    offset[i] = total;
    total += static_cast<Index>(blocks[copies[i].block].transversal.size());
  }

  IntMat Pi = IntMat::Zero(total, r);
  for (std::size_t i = 0; i < copies.size(); ++i) {
    const Block& b = blocks[copies[i].block];
    Pi.middleRows(offset[i], static_cast<Index>(b.transversal.size())) =
        b.mapRows[static_cast<std::size_t>(copies[i].row)];
  }

  std::vector<long long> divs = elementaryDivisors(Pi);
  bool onto = static_cast<Index>(divs.size()) == r &&
              std::all_of(divs.begin(), divs.end(), [](long long d) { return d == 1; });
  if (!onto) throw std::logic_error("flabbyResolution: cover failed its surjectivity check");

  const std::size_t ng = G.generators().size();
  std::vector<IntMat> midAct;
  midAct.reserve(ng);
  for (std::size_t gi = 0; gi < ng; ++gi) {
    IntMat A = IntMat::Zero(total, total);
    for (std::size_t i = 0; i < copies.size(); ++i) {
      const Block& b = blocks[copies[i].block];
      const Index sz = static_cast<Index>(b.transversal.size());
      A.block(offset[i], offset[i], sz, sz) = b.cosetLattice.generatorAction()[gi];
    }
    midAct.push_back(std::move(A));
  }

  IntMat B = integerKernel(Pi);
  std::vector<IntMat> kerAct;
  kerAct.reserve(ng);
  for (std::size_t gi = 0; gi < ng; ++gi) {
    // The middle action is a coset permutation, so B * rho_P(g) is just a
    // column rearrangement of B.
    IntMat img(B.rows(), B.cols());
    for (std::size_t i = 0; i < copies.size(); ++i) {
      const Block& b = blocks[copies[i].block];
      const IntMat& P = b.cosetLattice.generatorAction()[gi];
      const Index sz = static_cast<Index>(b.transversal.size());
      for (Index c = 0; c < sz; ++c)
        for (Index d = 0; d < sz; ++d)
          if (P(c, d) != 0) img.col(offset[i] + d) = B.col(offset[i] + c);
    }
    kerAct.push_back(solveInBasis(B, img));
  }
  GLattice kernel(G, B.rows(), std::move(kerAct));

  FlabbyResolution out;
  out.source = M;
  out.middle = GLattice(G, total, std::move(midAct));
  out.flabbyPart = dual(kernel);
  out.embedding = Pi.transpose();
  out.projection = B.transpose();
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    Index mult = 0;
    for (const Copy& c : copies)
      if (c.block == bi) ++mult;
    if (mult > 0) out.permutationPart.emplace_back(blocks[bi].K, mult);
  }
  return out;
}

std::vector<long long> flabbyClassH1(const GLattice& M) { return flabbyClassH1(M, M.group()); }

std::vector<long long> flabbyClassH1(const GLattice& M, const PermGroup& K) {
  FlabbyResolution R = flabbyResolution(M);
  return h1(K, R.flabbyPart).invariants;
}

}  // namespace tori

#include <algorithm>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "tori/glattice.hpp"

using namespace tori;
using torit::mat;

namespace {

PermGroup gg(int degree, std::initializer_list<std::string> cycles) {
  std::vector<Perm> gens;
  for (const auto& c : cycles) gens.push_back(parsePerm(c, degree));
  return PermGroup(degree, gens);
}

bool isPermutationMatrix(const IntMat& P) {
  if (P.rows() != P.cols()) return false;
  for (Index i = 0; i < P.rows(); ++i) {
    int ones = 0;
    for (Index j = 0; j < P.cols(); ++j) {
      if (P(i, j) == 1)
        ++ones;
      else if (P(i, j) != 0)
        return false;
    }
    if (ones != 1) return false;
  }
  for (Index j = 0; j < P.cols(); ++j) {
    Int colSum = 0;
    for (Index i = 0; i < P.rows(); ++i) colSum += P(i, j);
    if (colSum != 1) return false;
  }
  return true;
}

// Quotient map Z^n -> Z^{n-1} sending e_i to the class basis, e_n to the
// negated sum; used to witness the defining exact sequence of the Chevalley
// module.
IntMat quotientMap(int n) {
  IntMat Q = IntMat::Zero(n, n - 1);
  for (Index i = 0; i + 1 < n; ++i) Q(i, i) = 1;
  for (Index j = 0; j + 1 < n; ++j) Q(n - 1, j) = -1;
  return Q;
}

}  // namespace

TEST_CASE("permutation lattices act by permutation matrices") {
  PermGroup s3 = gg(3, {"(1,2)", "(1,2,3)"});
  GLattice nat = permutationLattice(s3, stabilizer(s3, 1));
  CHECK(nat.rank() == 3);
  for (const IntMat& A : nat.generatorAction()) CHECK(isPermutationMatrix(A));

  GLattice triv = permutationLattice(s3, s3);
  CHECK(triv.rank() == 1);
  for (const IntMat& A : triv.generatorAction()) CHECK(A(0, 0) == 1);

  GLattice reg = permutationLattice(s3, PermGroup(3, {}));
  CHECK(reg.rank() == 6);
  for (const IntMat& A : reg.generatorAction()) CHECK(isPermutationMatrix(A));

  // Coset 1 is H itself, so matrices of H-elements fix the first basis vector.
  PermGroup h = stabilizer(s3, 1);
  for (const Perm& k : h.elements()) CHECK(nat.actionOf(k)(0, 0) == 1);

  CHECK_THROWS_AS(permutationLattice(s3, gg(4, {"(1,2)"})), std::invalid_argument);
}

TEST_CASE("point action matches the coset picture for point stabilizers") {
  for (PermGroup G : {gg(4, {"(1,2,3,4)", "(1,3)"}), gg(4, {"(1,2,3)", "(2,3,4)"}),
                      gg(5, {"(1,2,3,4,5)", "(2,3,5,4)"})}) {
    GLattice L = permutationLattice(G, stabilizer(G, 1));
    REQUIRE(L.rank() == G.degree());
    // The transversal rep for coset j moves point 1 to a distinct point;
    // relabel through that bijection and compare with the point action.
    std::vector<Perm> reps = rightTransversal(G, stabilizer(G, 1));
    std::vector<int> pointOf(reps.size());
    for (std::size_t j = 0; j < reps.size(); ++j) pointOf[j] = reps[j].apply(0);
    for (std::size_t gi = 0; gi < G.generators().size(); ++gi) {
      const IntMat& A = L.generatorAction()[gi];
      const Perm& s = G.generators()[gi];
      for (Index i = 0; i < A.rows(); ++i)
        for (Index j = 0; j < A.cols(); ++j)
          CHECK(A(i, j) == Int(s.apply(pointOf[static_cast<std::size_t>(i)]) ==
                                       pointOf[static_cast<std::size_t>(j)]
                                   ? 1
                                   : 0));
    }
  }
}

TEST_CASE("element action cache is a homomorphism") {
  PermGroup a4 = gg(4, {"(1,2,3)", "(2,3,4)"});
  GLattice J = norm1Lattice(a4);
  for (const Perm& a : a4.elements())
    for (const Perm& b : a4.elements()) {
      CAPTURE(printPerm(a));
      CAPTURE(printPerm(b));
      CHECK(J.actionOf(a) * J.actionOf(b) == J.actionOf(a * b));
    }
  CHECK(J.actionOf(a4.identity()) == IntMat(IntMat::Identity(3, 3)));

  // A generator matrix of the wrong multiplicative order is rejected once
  // the cache covers the group.
  PermGroup c2 = gg(2, {"(1,2)"});
  GLattice bad(c2, 2, {mat({{0, 1}, {-1, 0}})});
  CHECK_THROWS_AS((void)bad.actionOf(parsePerm("(1,2)", 2)), std::logic_error);

  CHECK_THROWS_AS(GLattice(c2, 1, {mat({{2}})}), std::invalid_argument);
  CHECK_THROWS_AS(GLattice(c2, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)J.actionOf(parsePerm("(1,2)", 4)), std::invalid_argument);
}

TEST_CASE("norm-one lattice reproduces the classical matrices") {
  PermGroup s2 = gg(2, {"(1,2)"});
  GLattice j2 = norm1Lattice(s2);
  CHECK(j2.rank() == 1);
  CHECK(j2.generatorAction()[0] == mat({{-1}}));

  // Degree 4 with the full cycle and a transposition: the cycle shifts the
  // basis with a negated-sum last row, the transposition swaps two rows.
  PermGroup s4 = gg(4, {"(1,2,3,4)", "(1,2)"});
  GLattice j4 = norm1Lattice(s4);
  CHECK(j4.rank() == 3);
  CHECK(j4.generatorAction()[0] == mat({{0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}));
  CHECK(j4.generatorAction()[1] == mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));

  PermGroup c2c2 = gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  GLattice jv = norm1Lattice(c2c2);
  CHECK(jv.generatorAction()[0] == mat({{0, 1, 0}, {1, 0, 0}, {-1, -1, -1}}));
  CHECK(jv.generatorAction()[1] == mat({{0, 0, 1}, {-1, -1, -1}, {1, 0, 0}}));

  CHECK_THROWS_AS(norm1Lattice(gg(4, {"(1,2)"})), std::invalid_argument);
  CHECK_THROWS_AS(norm1Lattice(PermGroup(1, {})), std::invalid_argument);
}

TEST_CASE("the defining sequence of the norm-one lattice is exact") {
  for (PermGroup G : {gg(3, {"(1,2)", "(1,2,3)"}), gg(4, {"(1,2,3,4)", "(1,3)"}),
                      gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"}), gg(6, {"(1,2,3,4,5,6)"})}) {
    GLattice J = norm1Lattice(G);
    GLattice P = permutationLattice(G, stabilizer(G, 1));
    IntMat Q = quotientMap(G.degree());

    // Kernel of the projection is exactly the all-ones line.
    IntMat K = integerKernel(Q);
    REQUIRE(K.rows() == 1);
    for (Index j = 0; j < K.cols(); ++j) CHECK(K(0, j) == 1);

    // The projection intertwines the two actions; transversal reps are
    // ordered by discovery, so relabel the natural lattice to point order.
    std::vector<Perm> reps = rightTransversal(G, stabilizer(G, 1));
    for (std::size_t gi = 0; gi < G.generators().size(); ++gi) {
      const Perm& s = G.generators()[gi];
      IntMat Pt = IntMat::Zero(G.degree(), G.degree());
      for (int i = 0; i < G.degree(); ++i) Pt(i, s.apply(i)) = 1;
      CHECK(Pt * Q == Q * J.generatorAction()[gi]);
    }
    (void)P;
  }
}

TEST_CASE("duality is an involution and fixes permutation lattices") {
  PermGroup d4 = gg(4, {"(1,2,3,4)", "(1,3)"});
  GLattice J = norm1Lattice(d4);
  GLattice Jdd = dual(dual(J));
  for (std::size_t i = 0; i < J.generatorAction().size(); ++i)
    CHECK(J.generatorAction()[i] == Jdd.generatorAction()[i]);

  GLattice P = permutationLattice(d4, stabilizer(d4, 1));
  GLattice Pd = dual(P);
  for (std::size_t i = 0; i < P.generatorAction().size(); ++i)
    CHECK(P.generatorAction()[i] == Pd.generatorAction()[i]);

  // Rank-1 sign lattice of C2 is self-dual.
  PermGroup c2 = gg(2, {"(1,2)"});
  GLattice sign(c2, 1, {mat({{-1}})});
  CHECK(dual(sign).generatorAction()[0] == mat({{-1}}));

  // Duality inverts-and-transposes on every element, not just generators.
  GLattice Jd = dual(J);
  for (const Perm& g : d4.elements())
    CHECK(Jd.actionOf(g) == IntMat(J.actionOf(g.inverse()).transpose()));
}

TEST_CASE("direct sums are block diagonal and type-checked") {
  PermGroup s3 = gg(3, {"(1,2)", "(1,2,3)"});
  GLattice J = norm1Lattice(s3);
  GLattice T = trivialLattice(s3, 2);
  GLattice S = directSum(J, T);
  CHECK(S.rank() == 4);
  for (std::size_t i = 0; i < S.generatorAction().size(); ++i) {
    const IntMat& B = S.generatorAction()[i];
    CHECK(torit::eqMat(B.topLeftCorner(2, 2), J.generatorAction()[i]));
    CHECK(torit::eqMat(B.bottomRightCorner(2, 2), IntMat::Identity(2, 2)));
    CHECK(torit::eqMat(B.topRightCorner(2, 2), IntMat::Zero(2, 2)));
    CHECK(torit::eqMat(B.bottomLeftCorner(2, 2), IntMat::Zero(2, 2)));
  }

  GLattice zero(s3, 0, {IntMat(0, 0), IntMat(0, 0)});
  GLattice Szero = directSum(J, zero);
  for (std::size_t i = 0; i < J.generatorAction().size(); ++i)
    CHECK(Szero.generatorAction()[i] == J.generatorAction()[i]);

  PermGroup other = gg(3, {"(1,2,3)", "(1,2)"});  // same group, swapped gens
  CHECK_THROWS_AS(directSum(J, trivialLattice(other, 1)), std::invalid_argument);
  CHECK_THROWS_AS(directSum(J, trivialLattice(gg(4, {"(1,2)"}), 1)), std::invalid_argument);
}

TEST_CASE("restriction reindexes the action to the subgroup") {
  PermGroup s4 = gg(4, {"(1,2)", "(1,2,3,4)"});
  GLattice P = permutationLattice(s4, stabilizer(s4, 1));
  PermGroup v4 = generatedSubgroup(s4, {parsePerm("(1,2)(3,4)", 4), parsePerm("(1,3)(2,4)", 4)});
  GLattice R = restrictTo(P, v4);
  CHECK(R.rank() == P.rank());
  CHECK(R.group().order() == 4);
  for (std::size_t i = 0; i < v4.generators().size(); ++i)
    CHECK(R.generatorAction()[i] == P.actionOf(v4.generators()[i]));

  GLattice Rt = restrictTo(P, PermGroup(4, {}));
  CHECK(Rt.group().order() == 1);
  CHECK(Rt.generatorAction().empty());

  CHECK_THROWS_AS(restrictTo(P, gg(5, {"(1,2)"})), std::invalid_argument);
}

TEST_CASE("fixed sublattices count subgroup orbits on cosets") {
  PermGroup s4 = gg(4, {"(1,2)", "(1,2,3,4)"});
  PermGroup h = gg(4, {"(1,2)"});
  GLattice P = permutationLattice(s4, h);  // rank 12
  auto [img, hom] = cosetAction(s4, h);

  for (const PermGroup& K : subgroupClassReps(s4)) {
    IntMat F = fixedSublattice(P, K);
    long long orbitCount = static_cast<long long>(orbits(homImage(hom, K)).size());
    CAPTURE(K.order());
    CHECK(static_cast<long long>(F.rows()) == orbitCount);
  }

  // Worked example: the swap lattice of C2 fixes exactly the diagonal line.
  PermGroup c2 = gg(2, {"(1,2)"});
  GLattice reg = permutationLattice(c2, PermGroup(2, {}));
  CHECK(torit::eqMat(fixedSublattice(reg, c2), mat({{1, 1}})));

  // Trivial subgroup fixes everything.
  CHECK(torit::eqMat(fixedSublattice(reg, PermGroup(2, {})), IntMat::Identity(2, 2)));

  // The Chevalley module of a transitive group has no invariants.
  PermGroup fourT2 = gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  CHECK(fixedSublattice(norm1Lattice(fourT2), fourT2).rows() == 0);
  CHECK(fixedSublattice(norm1Lattice(s4), s4).rows() == 0);
}

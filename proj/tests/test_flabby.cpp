#include <string>
#include <utility>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "tori/flabby.hpp"

using namespace tori;
using torit::eqMat;

namespace {

using Inv = std::vector<long long>;

PermGroup gg(int degree, std::initializer_list<std::string> cycles) {
  std::vector<Perm> gens;
  for (const auto& c : cycles) gens.push_back(parsePerm(c, degree));
  return PermGroup(degree, gens);
}

PermGroup regularRep(const PermGroup& G) {
  return cosetAction(G, PermGroup(G.degree(), {})).first;
}

// A4 acting on the cosets of a C2: the degree-6 faithful transitive action.
PermGroup a4OnSix() {
  PermGroup a4 = gg(4, {"(1,2,3)", "(2,3,4)"});
  return cosetAction(a4, generatedSubgroup(a4, {parsePerm("(1,2)(3,4)", 4)})).first;
}

bool allOnes(const std::vector<long long>& v, Index expected) {
  if (static_cast<Index>(v.size()) != expected) return false;
  for (long long d : v)
    if (d != 1) return false;
  return true;
}

void checkResolutionShape(const FlabbyResolution& R) {
  const GLattice& M = R.source;
  const PermGroup& G = M.group();
  CHECK(R.middle.rank() == M.rank() + R.flabbyPart.rank());
  CHECK(allOnes(elementaryDivisors(R.embedding), M.rank()));
  CHECK(allOnes(elementaryDivisors(R.projection), R.flabbyPart.rank()));
  if (M.rank() > 0 && R.flabbyPart.rank() > 0) {
    IntMat comp = R.embedding * R.projection;
    CHECK(eqMat(comp, IntMat(IntMat::Zero(comp.rows(), comp.cols()))));
  }
  for (std::size_t gi = 0; gi < G.generators().size(); ++gi) {
    const Perm& g = G.generators()[gi];
    IntMat lhsE = M.actionOf(g) * R.embedding;
    IntMat rhsE = R.embedding * R.middle.actionOf(g);
    CHECK(eqMat(lhsE, rhsE));
    IntMat lhsP = R.middle.actionOf(g) * R.projection;
    IntMat rhsP = R.projection * R.flabbyPart.actionOf(g);
    CHECK(eqMat(lhsP, rhsP));
  }
  Index fromParts = 0;
  for (const auto& [K, mult] : R.permutationPart)
    fromParts += mult * (G.order() / K.order());
  CHECK(fromParts == R.middle.rank());
}

}  // namespace

TEST_CASE("flabbyResolution: exact sequence with flabby cokernel") {
  PermGroup v4 = gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  PermGroup d4 = gg(4, {"(1,2,3,4)", "(1,3)"});
  PermGroup s3 = gg(3, {"(1,2)", "(1,2,3)"});
  std::vector<GLattice> corpus;
  corpus.push_back(norm1Lattice(v4));
  corpus.push_back(norm1Lattice(d4));
  corpus.push_back(norm1Lattice(s3));
  corpus.push_back(GLattice(gg(2, {"(1,2)"}), 1, {IntMat::Constant(1, 1, Int(-1))}));
  corpus.push_back(trivialLattice(v4, 1));
  for (const GLattice& M : corpus) {
    FlabbyResolution R = flabbyResolution(M);
    checkResolutionShape(R);
    CHECK(isFlabby(R.flabbyPart));
  }
}

TEST_CASE("flabbyResolution: kernel duality oracle") {
  // The middle is self-dual, so dual(F) is the kernel of the cover; its
  // Tate Hhat^-1 must match H^1 of F at every subgroup class.
  for (const GLattice& M :
       {norm1Lattice(gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"})), norm1Lattice(gg(3, {"(1,2)", "(1,2,3)"}))}) {
    FlabbyResolution R = flabbyResolution(M);
    GLattice kernel = dual(R.flabbyPart);
    for (const PermGroup& C : subgroupClassReps(M.group())) {
      CHECK(tateHminus1(C, kernel).invariants == h1(C, R.flabbyPart).invariants);
    }
  }
}

TEST_CASE("flabbyClassH1: worked examples") {
  PermGroup v4 = gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  CHECK(flabbyClassH1(norm1Lattice(v4)) == Inv{2});
  PermGroup a4 = gg(4, {"(1,2,3)", "(2,3,4)"});
  CHECK(flabbyClassH1(norm1Lattice(a4)) == Inv{2});
  CHECK(flabbyClassH1(norm1Lattice(gg(3, {"(1,2)", "(1,2,3)"}))).empty());
  CHECK(flabbyClassH1(norm1Lattice(gg(3, {"(1,2,3)"}))).empty());
  CHECK(flabbyClassH1(norm1Lattice(gg(4, {"(1,2,3,4)"}))).empty());

  PermGroup g64 = a4OnSix();
  CHECK(h1(g64, norm1Lattice(g64)).invariants == Inv{3});
  CHECK(flabbyClassH1(norm1Lattice(g64)) == Inv{2});

  // Permutation modules have trivial class.
  PermGroup s3 = gg(3, {"(1,2)", "(1,2,3)"});
  CHECK(flabbyClassH1(permutationLattice(s3, generatedSubgroup(s3, {parsePerm("(1,2)", 3)}))).empty());
}

TEST_CASE("flabbyClassH1: invariant under construction choices") {
  std::vector<GLattice> corpus;
  corpus.push_back(norm1Lattice(gg(3, {"(1,2,3)"})));
  corpus.push_back(norm1Lattice(gg(3, {"(1,2)", "(1,2,3)"})));
  corpus.push_back(norm1Lattice(gg(4, {"(1,2,3,4)"})));
  corpus.push_back(norm1Lattice(gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"})));
  corpus.push_back(norm1Lattice(gg(4, {"(1,2,3,4)", "(1,3)"})));
  corpus.push_back(norm1Lattice(gg(4, {"(1,2,3)", "(2,3,4)"})));
  corpus.push_back(norm1Lattice(gg(4, {"(1,2)", "(1,2,3,4)"})));  // S4, order 24
  corpus.push_back(norm1Lattice(gg(6, {"(1,2,3,4,5,6)"})));
  corpus.push_back(norm1Lattice(a4OnSix()));
  corpus.push_back(dual(norm1Lattice(gg(4, {"(1,2,3,4)", "(1,3)"}))));
  for (const GLattice& M : corpus) {
    FlabbyOptions alt;
    alt.reverseClassOrder = true;
    alt.perturbSeed = 1234;
    FlabbyResolution R1 = flabbyResolution(M);
    FlabbyResolution R2 = flabbyResolution(M, alt);
    checkResolutionShape(R2);
    for (const PermGroup& C : subgroupClassReps(M.group())) {
      INFO("group order " << M.group().order() << ", subgroup order " << C.order());
      CHECK(h1(C, R1.flabbyPart).invariants == h1(C, R2.flabbyPart).invariants);
    }
  }
}

TEST_CASE("flabbyClassH1: matches sha2omega on the table rows") {
  std::vector<GLattice> lattices;
  lattices.push_back(norm1Lattice(gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"})));     // 4T2
  lattices.push_back(norm1Lattice(gg(4, {"(1,2,3)", "(2,3,4)"})));           // 4T4
  lattices.push_back(norm1Lattice(a4OnSix()));                               // 6T4
  lattices.push_back(norm1Lattice(
      gg(8, {"(1,8)(2,3)(4,5)(6,7)", "(1,3)(2,8)(4,6)(5,7)", "(1,5)(2,6)(3,7)(4,8)"})));  // 8T3
  std::vector<Inv> expected = {{2}, {2}, {2}, {2, 2, 2}};
  for (std::size_t i = 0; i < lattices.size(); ++i) {
    FlabbyResolution R = flabbyResolution(lattices[i]);
    Inv viaFlabby = h1(lattices[i].group(), R.flabbyPart).invariants;
    CHECK(viaFlabby == expected[i]);
    CHECK(viaFlabby == sha2omega(lattices[i]).invariants);
  }

  // The equality descends to subgroups: a G-resolution restricts to a
  // K-resolution, so the class over K agrees with the K-level invariant.
  GLattice J = lattices[0];
  for (const PermGroup& C : subgroupClassReps(J.group()))
    CHECK(flabbyClassH1(J, C) == sha2omega(restrictTo(J, C)).invariants);
}

TEST_CASE("flabbyClassH1: matches degree-3 integral cohomology for Galois lattices") {
  // For the norm-one module of the regular action, H^1(K, [J]^fl) is the
  // Schur multiplier H^3(K, Z) at every subgroup.
  std::vector<PermGroup> groups;
  groups.push_back(gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"}));                  // V4
  groups.push_back(gg(6, {"(1,2,3,4,5,6)"}));                             // C6
  groups.push_back(regularRep(gg(4, {"(1,2,3,4)", "(1,3)"})));            // D4
  groups.push_back(gg(8, {"(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"})); // Q8
  groups.push_back(regularRep(gg(6, {"(1,2,3,4)", "(5,6)"})));            // C4 x C2
  groups.push_back(regularRep(gg(8, {"(1,2)", "(3,4)", "(5,6)"})));       // (C2)^3
  for (const PermGroup& G : groups) {
    PermGroup reg = G.isTransitive() && G.order() == G.degree() ? G : regularRep(G);
    FlabbyResolution R = flabbyResolution(norm1Lattice(reg));
    for (const PermGroup& K : subgroupClassReps(reg)) {
      INFO("order " << reg.order() << ", subgroup order " << K.order());
      CHECK(h1(K, R.flabbyPart).invariants == hnTrivialZ(K, 3).invariants);
    }
  }
}

TEST_CASE("flabbyResolution: greedy rank reduction stays exact") {
  PermGroup s3 = gg(3, {"(1,2)", "(1,2,3)"});
  FlabbyOptions red;
  red.reduceRank = true;

  FlabbyResolution Rt = flabbyResolution(trivialLattice(s3, 1), red);
  CHECK(Rt.middle.rank() == 1);
  CHECK(Rt.flabbyPart.rank() == 0);
  REQUIRE(Rt.permutationPart.size() == 1);
  CHECK(Rt.permutationPart[0].first.order() == s3.order());
  CHECK(Rt.permutationPart[0].second == 1);

  PermGroup v4 = gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  GLattice J = norm1Lattice(v4);
  FlabbyResolution Rfull = flabbyResolution(J);
  FlabbyResolution Rred = flabbyResolution(J, red);
  checkResolutionShape(Rred);
  CHECK(Rred.middle.rank() <= Rfull.middle.rank());
  CHECK(h1(v4, Rred.flabbyPart).invariants == Inv{2});
  CHECK(isFlabby(Rred.flabbyPart));

  // Reduction of a permutation module reaches the module itself.
  GLattice P = permutationLattice(s3, generatedSubgroup(s3, {parsePerm("(1,2)", 3)}));
  FlabbyResolution Rp = flabbyResolution(P, red);
  checkResolutionShape(Rp);
  CHECK(h1(s3, Rp.flabbyPart).invariants.empty());
}

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <doctest.h>

#include "helpers.hpp"
#include "tori/permgroup.hpp"

using namespace tori;

namespace {

Perm pp(const std::string& text, int degree) { return parsePerm(text, degree); }

PermGroup gg(int degree, std::initializer_list<std::string> cycles) {
  std::vector<Perm> gens;
  for (const auto& c : cycles) gens.push_back(parsePerm(c, degree));
  return PermGroup(degree, gens);
}

long long applyOrbitSize(const PermGroup& G, int point0) {
  for (const auto& orb : orbits(G))
    if (std::find(orb.begin(), orb.end(), point0) != orb.end())
      return static_cast<long long>(orb.size());
  return 0;
}

}  // namespace

TEST_CASE("cycle notation round-trips and composes left to right") {
  Perm a = pp("(1,2)", 3);
  Perm b = pp("(2,3)", 3);
  CHECK(printPerm(a * b) == "(1,3,2)");  // apply a first, then b
  CHECK(printPerm(b * a) == "(1,2,3)");

  Perm g = pp("(1,8)(2,3)(4,5)(6,7)", 8);
  CHECK(g.apply(0) == 7);
  CHECK(g.apply(7) == 0);
  CHECK(g.order() == 2);
  CHECK(printPerm(g) == "(1,8)(2,3)(4,5)(6,7)");

  CHECK(printPerm(pp("()", 5)) == "()");
  CHECK(pp("( 1 , 2 ) ( 3 , 4 )", 4) == pp("(1,2)(3,4)", 4));
  // Non-disjoint cycles compose left to right, as in the generator tables.
  CHECK(pp("(1,2)(2,3)", 3) == pp("(1,3,2)", 3));

  std::mt19937 rng(20260823);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> img(8);
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    Perm p{img};
    CAPTURE(printPerm(p));
    CHECK(parsePerm(printPerm(p), 8) == p);
    CHECK((p * p.inverse()).isIdentity());
  }
}

TEST_CASE("cycle parser reports malformed input") {
  CHECK_THROWS_AS(parsePerm("(1,2", 4), ParseError);
  CHECK_THROWS_AS(parsePerm("(0,1)", 4), ParseError);
  CHECK_THROWS_AS(parsePerm("(1,5)", 4), ParseError);
  CHECK_THROWS_AS(parsePerm("(1,2,1)", 4), ParseError);
  CHECK_THROWS_AS(parsePerm("1,2)", 4), ParseError);
  CHECK_THROWS_AS(parsePerm("(1,,2)", 4), ParseError);
}

TEST_CASE("element enumeration is sorted and indexable") {
  PermGroup s3 = gg(3, {"(1,2)", "(1,2,3)"});
  CHECK(s3.order() == 6);
  CHECK(std::is_sorted(s3.elements().begin(), s3.elements().end()));
  CHECK(s3.elements().front().isIdentity());
  for (long long i = 0; i < s3.order(); ++i)
    CHECK(s3.elementIndex(s3.elements()[static_cast<std::size_t>(i)]) == i);
  CHECK(s3.elementIndex(pp("(1,3)", 3)) >= 0);
  CHECK_FALSE(s3.contains(pp("(1,2)", 4)));

  PermGroup s8 = gg(8, {"(1,2)", "(1,2,3,4,5,6,7,8)"});
  CHECK(s8.order() == 40320);
  CHECK(s8.isTransitive());
  CHECK_FALSE(s8.isAbelian());

  CHECK_THROWS_AS(PermGroup(4, {pp("(1,2,3,4)", 4)}, Budgets{400, 200000, 16, 3}).order(),
                  BudgetError);
}

TEST_CASE("generator words reconstruct every element") {
  PermGroup a4 = gg(4, {"(1,2,3)", "(2,3,4)"});
  CHECK(a4.order() == 12);
  for (const Perm& g : a4.elements()) {
    Perm acc = a4.identity();
    for (int w : a4.wordFor(g)) acc = acc * a4.generators()[static_cast<std::size_t>(w)];
    CHECK_MESSAGE(acc == g, "word failed for ", printPerm(g));
  }
}

TEST_CASE("orbit sizes multiply against point stabilizers") {
  std::vector<PermGroup> cases = {
      gg(4, {"(1,2,3)", "(2,3,4)"}),          // A4
      gg(4, {"(1,2,3,4)", "(1,3)"}),          // dihedral of order 8
      gg(5, {"(1,2)", "(3,4,5)"}),            // intransitive product
      gg(6, {"(1,2,3,4,5,6)", "(2,6)(3,5)"})  // dihedral of order 12
  };
  for (const PermGroup& G : cases) {
    PermGroup st = stabilizer(G, 1);
    CAPTURE(G.order());
    CHECK(G.order() == applyOrbitSize(G, 0) * st.order());
    for (const Perm& s : st.elements()) CHECK(s.apply(0) == 0);
  }
  PermGroup prod = cases[2];
  auto orb = orbits(prod);
  REQUIRE(orb.size() == 2);
  CHECK(orb[0] == std::vector<int>{0, 1});
  CHECK(orb[1] == std::vector<int>{2, 3, 4});
  CHECK_FALSE(prod.isTransitive());
}

TEST_CASE("right transversals tile the group") {
  PermGroup s4 = gg(4, {"(1,2)", "(1,2,3,4)"});
  PermGroup a4 = gg(4, {"(1,2,3)", "(2,3,4)"});
  std::vector<Perm> reps = rightTransversal(s4, a4);
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].isIdentity());

  PermGroup c2 = gg(4, {"(1,2)"});
  reps = rightTransversal(s4, c2);
  REQUIRE(reps.size() == 12);
  std::set<Perm> covered;
  for (const Perm& r : reps)
    for (const Perm& h : c2.elements()) covered.insert(h * r);
  CHECK(covered.size() == 24);  // cosets are disjoint and exhaustive

  // The transversal of the trivial subgroup is the whole (sorted) group.
  PermGroup triv(4, {});
  CHECK(rightTransversal(s4, triv).size() == 24);
  PermGroup a4b = gg(4, {"(1,2,3)", "(2,3,4)"});
  CHECK_THROWS_AS(rightTransversal(a4b, gg(4, {"(1,2)"})), std::invalid_argument);
}

TEST_CASE("coset action gives the expected image and kernel") {
  PermGroup s4 = gg(4, {"(1,2)", "(1,2,3,4)"});
  auto [img, hom] = cosetAction(s4, gg(4, {"(1,2)"}));
  CHECK(img.degree() == 12);
  CHECK(img.order() == 24);  // the action is faithful here
  CHECK(img.isTransitive());
  CHECK(homKernel(hom).order() == 1);
  // Point 1 is the subgroup's own coset, so subgroup elements fix it.
  CHECK(hom.imageOf(pp("(1,2)", 4)).apply(0) == 0);

  // A central subgroup of the dihedral group of order 8 acts with kernel.
  PermGroup d4 = gg(4, {"(1,2,3,4)", "(1,3)"});
  PermGroup z = center(d4);
  REQUIRE(z.order() == 2);
  auto [img2, hom2] = cosetAction(d4, z);
  CHECK(img2.degree() == 4);
  CHECK(img2.order() == 4);
  CHECK(homKernel(hom2).order() == 2);

  CHECK_THROWS_AS(cosetAction(d4, gg(4, {"(1,2)"})), std::invalid_argument);
}

TEST_CASE("double cosets partition the group") {
  PermGroup s4 = gg(4, {"(1,2)", "(1,2,3,4)"});
  PermGroup h = sylow(s4, 2);
  PermGroup k = gg(4, {"(1,2,3)"});
  std::vector<Perm> reps = doubleCosets(s4, h, k);
  CHECK(std::is_sorted(reps.begin(), reps.end()));
  CHECK(reps.front().isIdentity());

  std::set<Perm> covered;
  for (const Perm& r : reps) {
    std::set<Perm> cell;
    for (const Perm& a : h.elements())
      for (const Perm& b : k.elements()) cell.insert(a * r * b);
    CHECK(*cell.begin() == r);  // representative is minimal in its cell
    for (const Perm& x : cell) {
      CHECK_MESSAGE(covered.insert(x).second, "overlap at ", printPerm(x));
    }
  }
  CHECK(covered.size() == 24);
}

TEST_CASE("derived subgroups and perfectness") {
  CHECK(derivedSubgroup(gg(3, {"(1,2)", "(1,2,3)"})).order() == 3);
  CHECK(derivedSubgroup(gg(4, {"(1,2)", "(1,2,3,4)"})).order() == 12);
  PermGroup v4 = derivedSubgroup(gg(4, {"(1,2,3)", "(2,3,4)"}));
  CHECK(v4.order() == 4);
  for (const Perm& g : v4.elements()) CHECK(g.order() <= 2);
  CHECK(derivedSubgroup(gg(6, {"(1,2)", "(3,4,5,6)"})).order() == 1);

  PermGroup a5 = gg(5, {"(1,2,3,4,5)", "(3,4,5)"});
  CHECK(a5.order() == 60);
  CHECK(a5.isPerfect());
  CHECK_FALSE(gg(4, {"(1,2)", "(1,2,3,4)"}).isPerfect());
}

TEST_CASE("centers of small groups") {
  CHECK(center(gg(3, {"(1,2)", "(1,2,3)"})).order() == 1);
  PermGroup d4 = gg(4, {"(1,2,3,4)", "(1,3)"});
  PermGroup z = center(d4);
  REQUIRE(z.order() == 2);
  CHECK(z.contains(pp("(1,3)(2,4)", 4)));
  PermGroup c6 = gg(6, {"(1,2,3,4,5,6)"});
  CHECK(center(c6).order() == 6);
}

TEST_CASE("Sylow subgroups via the normalizer climb") {
  PermGroup s4 = gg(4, {"(1,2)", "(1,2,3,4)"});
  PermGroup p2 = sylow(s4, 2);
  CHECK(p2.order() == 8);
  // The stored generating set must regenerate the subgroup on its own.
  CHECK(PermGroup(4, p2.generators()).order() == 8);
  for (const Perm& g : p2.elements()) CHECK((g.order() & (g.order() - 1)) == 0);
  CHECK(sylow(s4, 3).order() == 3);
  CHECK(sylow(s4, 5).order() == 1);

  PermGroup a5 = gg(5, {"(1,2,3,4,5)", "(3,4,5)"});
  CHECK(sylow(a5, 2).order() == 4);
  CHECK(sylow(a5, 3).order() == 3);
  CHECK(sylow(a5, 5).order() == 5);

  PermGroup s6 = gg(6, {"(1,2)", "(1,2,3,4,5,6)"});
  CHECK(sylow(s6, 2).order() == 16);
  CHECK(sylow(s6, 3).order() == 9);
}

TEST_CASE("metacyclicity means all Sylow subgroups cyclic") {
  CHECK(isMetacyclic(gg(3, {"(1,2)", "(1,2,3)"})));          // S3
  CHECK(isMetacyclic(gg(6, {"(1,2,3,4,5,6)"})));             // C6
  CHECK(isMetacyclic(gg(5, {"(1,2,3,4,5)", "(2,3,5,4)"})));  // order 20 metacyclic
  CHECK_FALSE(isMetacyclic(gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"})));  // V4
  CHECK_FALSE(isMetacyclic(gg(4, {"(1,2,3,4)", "(1,3)"})));        // dihedral, order 8
  CHECK_FALSE(isMetacyclic(gg(4, {"(1,2,3)", "(2,3,4)"})));        // A4
}

TEST_CASE("conjugate subgroups move stabilized points") {
  PermGroup a4 = gg(4, {"(1,2,3)", "(2,3,4)"});
  PermGroup st1 = stabilizer(a4, 1);
  Perm g = pp("(1,2,3)", 4);
  PermGroup conj = conjugateSubgroup(st1, g);
  CHECK(conj.order() == st1.order());
  CHECK(conj.elements() == stabilizer(a4, g.apply(0) + 1).elements());
  for (const Perm& x : conj.elements()) CHECK(a4.contains(x));
}

TEST_CASE("subgroup enumeration matches known catalogs") {
  CHECK(allSubgroups(gg(6, {"(1,2,3,4,5,6)"})).size() == 4);
  CHECK(allSubgroups(gg(3, {"(1,2)", "(1,2,3)"})).size() == 6);
  CHECK(allSubgroups(gg(4, {"(1,2,3,4)", "(1,3)"})).size() == 10);
  CHECK(allSubgroups(gg(4, {"(1,2,3)", "(2,3,4)"})).size() == 10);
  CHECK(allSubgroups(gg(4, {"(1,2)", "(1,2,3,4)"})).size() == 30);
  CHECK(allSubgroups(gg(5, {"(1,2,3,4,5)", "(3,4,5)"})).size() == 59);
  CHECK(allSubgroups(gg(5, {"(1,2)", "(1,2,3,4,5)"})).size() == 156);

  // Order-64 group on 8 points with a known subgroup count of 225.
  PermGroup g64 = gg(8, {"(4,8)", "(1,8)(2,3)(4,5)(6,7)", "(1,3)(2,8)(4,6)(5,7)"});
  REQUIRE(g64.order() == 64);
  CHECK(allSubgroups(g64).size() == 225);

  auto subs = allSubgroups(gg(4, {"(1,2)", "(1,2,3,4)"}));
  CHECK(subs.front().order() == 1);
  CHECK(subs.back().order() == 24);
  for (std::size_t i = 1; i < subs.size(); ++i)
    CHECK(subs[i - 1].order() <= subs[i].order());

  CHECK_THROWS_AS(allSubgroups(gg(4, {"(1,2)", "(1,2,3,4)"}), 10), BudgetError);
  CHECK_THROWS_AS(allSubgroups(gg(6, {"(1,2)", "(1,2,3,4,5,6)"})), BudgetError);
  // The full symmetric group on six points fits once the budget is raised.
  CHECK(allSubgroups(gg(6, {"(1,2)", "(1,2,3,4,5,6)"}), 800).size() == 1455);
}

TEST_CASE("subgroup class representatives are minimal and complete") {
  PermGroup s4 = gg(4, {"(1,2)", "(1,2,3,4)"});
  auto reps = subgroupClassReps(s4);
  CHECK(reps.size() == 11);
  CHECK(subgroupClassReps(gg(4, {"(1,2,3)", "(2,3,4)"})).size() == 5);
  CHECK(subgroupClassReps(gg(5, {"(1,2,3,4,5)", "(3,4,5)"})).size() == 9);
  CHECK(subgroupClassReps(gg(4, {"(1,2,3,4)", "(1,3)"})).size() == 8);

  // Each representative is the least subgroup in its conjugacy class.
  for (const PermGroup& r : reps) {
    std::vector<Perm> relems = r.elements();
    for (const Perm& g : s4.elements()) {
      std::vector<Perm> conj = conjugateSubgroup(r, g).elements();
      CHECK(relems <= conj);
    }
  }
}

TEST_CASE("abelianization invariants and projection arithmetic") {
  auto inv = [](const PermGroup& G) { return abelianization(G).invariants(); };
  CHECK(inv(gg(3, {"(1,2)", "(1,2,3)"})) == std::vector<long long>{2});
  CHECK(inv(gg(4, {"(1,2,3)", "(2,3,4)"})) == std::vector<long long>{3});
  CHECK(inv(gg(4, {"(1,2)", "(1,2,3,4)"})) == std::vector<long long>{2});
  CHECK(inv(gg(4, {"(1,2)(3,4)", "(1,3)(2,4)"})) == std::vector<long long>{2, 2});
  CHECK(inv(gg(12, {"(1,2,3,4,5,6,7,8,9,10,11,12)"})) == std::vector<long long>{12});
  CHECK(inv(gg(5, {"(1,2,3,4,5)", "(3,4,5)"})).empty());  // perfect group
  CHECK(inv(gg(8, {"(1,5)(2,6)(3,7)(4,8)", "(1,2,3,8)(4,5,6,7)"})) ==
        std::vector<long long>{2, 4});

  PermGroup q8 = gg(8, {"(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"});
  REQUIRE(q8.order() == 8);
  FinAbStructure ab = abelianization(q8);
  CHECK(ab.invariants() == std::vector<long long>{2, 2});
  CHECK(ab.groupOrder() == 4);

  // The chosen lifts really project to the unit coordinate vectors.
  for (std::size_t i = 0; i < ab.snfGenerators().size(); ++i) {
    std::vector<long long> e = ab.projectionOf(ab.snfGenerators()[i]);
    for (std::size_t j = 0; j < e.size(); ++j) CHECK(e[j] == (i == j ? 1 : 0));
  }

  // projectionOf is a homomorphism onto the coordinate group.
  PermGroup d6 = gg(6, {"(1,2,3,4,5,6)", "(2,6)(3,5)"});
  FinAbStructure abd = abelianization(d6);
  REQUIRE(abd.invariants() == std::vector<long long>{2, 2});
  std::mt19937 rng(917);
  const auto& els = d6.elements();
  for (int trial = 0; trial < 100; ++trial) {
    const Perm& a = els[rng() % els.size()];
    const Perm& b = els[rng() % els.size()];
    auto pa = abd.projectionOf(a);
    auto pb = abd.projectionOf(b);
    auto pab = abd.projectionOf(a * b);
    for (std::size_t j = 0; j < pab.size(); ++j) {
      CAPTURE(trial);
      CHECK(pab[j] == (pa[j] + pb[j]) % abd.invariants()[j]);
    }
  }
}

TEST_CASE("homomorphisms verify their defining relations") {
  PermGroup s3 = gg(3, {"(1,2)", "(1,2,3)"});
  PermGroup c2 = gg(2, {"(1,2)"});
  GroupHom sign(s3, c2, {pp("(1,2)", 2), pp("()", 2)});
  int odd = 0;
  for (const Perm& g : s3.elements())
    if (!sign.imageOf(g).isIdentity()) ++odd;
  CHECK(odd == 3);
  CHECK(homKernel(sign).order() == 3);
  CHECK(homImage(sign, s3).order() == 2);
  CHECK(homImage(sign, gg(3, {"(1,2,3)"})).order() == 1);
  CHECK(homPreimage(sign, c2).order() == 6);

  // Sending an order-3 generator to an involution is not a homomorphism.
  PermGroup c3 = gg(3, {"(1,2,3)"});
  CHECK_THROWS_AS(GroupHom(c3, c2, {pp("(1,2)", 2)}), std::invalid_argument);
  CHECK_THROWS_AS(GroupHom(s3, c2, {pp("(1,2)", 2)}), std::invalid_argument);
}

TEST_CASE("generated subgroups stay inside the ambient group") {
  PermGroup s4 = gg(4, {"(1,2)", "(1,2,3,4)"});
  PermGroup v = generatedSubgroup(s4, {pp("(1,2)(3,4)", 4), pp("(1,3)(2,4)", 4)});
  CHECK(v.order() == 4);
  CHECK(v.generators().size() == 2);  // generators kept verbatim
  CHECK_THROWS_AS(generatedSubgroup(v, {pp("(1,2)", 4)}), std::invalid_argument);

  std::vector<Perm> mg = minimizedGenerators(s4.elements());
  CHECK(mg.size() <= 5);
  CHECK(PermGroup(4, mg).order() == 24);
  CHECK(minimizedGenerators({Perm::identity(4)}).empty());
}

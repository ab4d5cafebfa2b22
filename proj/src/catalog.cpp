#include "tori/catalog.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "tori/common.hpp"

namespace tori {

namespace {

using nlohmann::ordered_json;

PermGroup fromCycles(int degree, const std::vector<std::string>& gens) {
  std::vector<Perm> ps;
  ps.reserve(gens.size());
  for (const auto& s : gens) ps.push_back(parsePerm(s, degree));
  return PermGroup(degree, std::move(ps));
}

Perm permFromMap(int degree, const std::function<int(int)>& image0) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) img[static_cast<std::size_t>(i)] = image0(i);
  return Perm(std::move(img));
}

// ---- arithmetic helpers for the linear/affine constructions ---------------

int modInverse(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw std::logic_error("modInverse: not invertible");
}

// Moebius action on P1(F_p): points 1..p are the values 0..p-1, point p+1
// is the point at infinity.
Perm moebiusShift(int p) {
  return permFromMap(p + 1, [p](int i) { return i < p ? (i + 1) % p : p; });
}

Perm moebiusNegInv(int p) {
  return permFromMap(p + 1, [p](int i) {
    if (i == p) return 0;                          // infinity -> 0
    if (i == 0) return p;                          // 0 -> infinity
    return (p - modInverse(i, p)) % p;
  });
}

Perm moebiusScale(int p, int a) {
  return permFromMap(p + 1, [p, a](int i) { return i < p ? i * a % p : p; });
}

PermGroup psl2(int p) {
  return PermGroup(p + 1, {moebiusShift(p), moebiusNegInv(p)});
}

PermGroup pgl2(int p) {
  int nonSquare = 0;
  for (int a = 2; a < p && nonSquare == 0; ++a) {
    bool square = false;
    for (int x = 1; x < p && !square; ++x) square = x * x % p == a;
    if (!square) nonSquare = a;
  }
  if (nonSquare == 0) throw std::logic_error("pgl2: no non-square found");
  return PermGroup(p + 1, {moebiusShift(p), moebiusNegInv(p), moebiusScale(p, nonSquare)});
}

// F8 = F2[t]/(t^3 + t + 1), elements as bit masks b0 + b1 t + b2 t^2.
int f8TimesT(int a) {
  int s = a << 1;
  if (s & 8) s ^= 0b1011;
  return s;
}

int f8Mul(int a, int b) {
  int r = 0, s = a;
  for (int i = 0; i < 3; ++i) {
    if (b & (1 << i)) r ^= s;
    s = f8TimesT(s);
  }
  return r;
}

// Affine group x -> a x + b over F8 on the 8 field elements (point i has
// value i - 1): generated by x -> x + 1 and x -> t x.
PermGroup agl18() {
  Perm add = permFromMap(8, [](int v) { return v ^ 1; });
  Perm mul = permFromMap(8, [](int v) { return f8Mul(v, 0b010); });
  return PermGroup(8, {add, mul});
}

// AGL(1,8) extended by the Frobenius x -> x^2.
PermGroup agammal18() {
  Perm add = permFromMap(8, [](int v) { return v ^ 1; });
  Perm mul = permFromMap(8, [](int v) { return f8Mul(v, 0b010); });
  Perm frob = permFromMap(8, [](int v) { return f8Mul(v, v); });
  return PermGroup(8, {add, mul, frob});
}

// 3x3 matrix over F2 given by rows-as-bitmasks; image bit j = <row j, v>.
int f2Apply(const std::array<int, 3>& rows, int v) {
  int w = 0;
  for (int j = 0; j < 3; ++j) w |= (__builtin_popcount(rows[j] & v) & 1) << j;
  return w;
}

constexpr std::array<int, 3> kGlRotate = {0b100, 0b001, 0b010};  // (x0,x1,x2) -> (x2,x0,x1)
constexpr std::array<int, 3> kGlTransvect = {0b011, 0b010, 0b100};  // x0 += x1

// GL(3,2) on the 7 nonzero vectors of F2^3 (point i is the vector with
// bit mask i).
PermGroup gl32OnVectors() {
  Perm a = permFromMap(7, [](int i) { return f2Apply(kGlRotate, i + 1) - 1; });
  Perm b = permFromMap(7, [](int i) { return f2Apply(kGlTransvect, i + 1) - 1; });
  return PermGroup(7, {a, b});
}

// AGL(3,2) on the 8 vectors of F2^3 (point i is the vector with bit mask
// i - 1): translations plus the GL(3,2) generators above.
PermGroup agl32() {
  std::vector<Perm> gens;
  for (int m : {1, 2, 4}) gens.push_back(permFromMap(8, [m](int v) { return v ^ m; }));
  gens.push_back(permFromMap(8, [](int v) { return f2Apply(kGlRotate, v); }));
  gens.push_back(permFromMap(8, [](int v) { return f2Apply(kGlTransvect, v); }));
  return PermGroup(8, gens);
}

PermGroup cyclicRegular(int n) {
  return PermGroup(n, {permFromMap(n, [n](int i) { return (i + 1) % n; })});
}

// Dihedral group of order 2m acting naturally on m points.
PermGroup dihedralNatural(int m) {
  Perm rot = permFromMap(m, [m](int i) { return (i + 1) % m; });
  Perm flip = permFromMap(m, [m](int i) { return (m - i) % m; });
  return PermGroup(m, {rot, flip});
}

PermGroup symmetricNatural(int n) {
  if (n == 1) return PermGroup(1, {});
  if (n == 2) return fromCycles(2, {"(1,2)"});
  return PermGroup(n, {parsePerm("(1,2)", n), permFromMap(n, [n](int i) { return (i + 1) % n; })});
}

PermGroup alternatingNatural(int n) {
  std::vector<Perm> gens;
  for (int i = 1; i + 2 <= n; ++i) {
    std::ostringstream c;
    c << "(" << i << "," << i + 1 << "," << i + 2 << ")";
    gens.push_back(parsePerm(c.str(), n));
  }
  return PermGroup(n, gens);
}

// Elementary abelian group of order q = p^k acting regularly; point i - 1 is
// a base-p digit vector, generated by the unit translations.
PermGroup elementaryAbelianRegular(long long q, long long p, int k) {
  int n = static_cast<int>(q);
  std::vector<Perm> gens;
  long long step = 1;
  for (int d = 0; d < k; ++d) {
    gens.push_back(permFromMap(n, [p, step](int v) {
      long long digit = v / step % p;
      return static_cast<int>(v + ((digit + 1) % p - digit) * step);
    }));
    step *= p;
  }
  return PermGroup(n, gens);
}

PermGroup cosetImage(const PermGroup& G, const std::vector<std::string>& subgroupGens) {
  std::vector<Perm> hs;
  for (const auto& s : subgroupGens) hs.push_back(parsePerm(s, G.degree()));
  return cosetAction(G, generatedSubgroup(G, hs)).first;
}

// ---- the registry ---------------------------------------------------------

struct EntryDef {
  int degree = 0;
  long long order = 0;
  Provenance prov = Provenance::Constructed;
  std::string note;
  std::vector<std::string> gens;        // literal generators when nonempty
  std::function<PermGroup()> builder;   // otherwise a construction
  bool fixture = false;                 // loaded from the fixture directory
};

using Registry = std::map<std::string, EntryDef>;

void lit(Registry& r, const std::string& label, int degree, long long order, Provenance prov,
         std::vector<std::string> gens, std::string note) {
  r[label] = EntryDef{degree, order, prov, std::move(note), std::move(gens), nullptr, false};
}

void mk(Registry& r, const std::string& label, int degree, long long order,
        std::function<PermGroup()> builder, std::string note) {
  r[label] = EntryDef{degree,  order, Provenance::Constructed, std::move(note),
                      {},      std::move(builder), false};
}

void fix(Registry& r, const std::string& label, int degree, long long order) {
  r[label] = EntryDef{degree, order, Provenance::Derived, "", {}, nullptr, true};
}

const Registry& registry() {
  static const Registry reg = [] {
    Registry r;
    const Provenance we = Provenance::WorkedExample;
    const Provenance co = Provenance::Constructed;
    // Fixed-point-free commuting involutions used by several degree-8 lists.
    const std::string e1 = "(1,8)(2,3)(4,5)(6,7)";
    const std::string e2 = "(1,3)(2,8)(4,6)(5,7)";
    const std::string e3 = "(1,5)(2,6)(3,7)(4,8)";

    lit(r, "2T1", 2, 2, co, {"(1,2)"}, "symmetric group of degree 2");

    lit(r, "3T1", 3, 3, co, {"(1,2,3)"}, "cyclic group acting regularly");
    lit(r, "3T2", 3, 6, co, {"(1,2)", "(1,2,3)"}, "symmetric group of degree 3");

    lit(r, "4T1", 4, 4, co, {"(1,2,3,4)"}, "cyclic group acting regularly");
    lit(r, "4T2", 4, 4, we, {"(1,2)(3,4)", "(1,4)(2,3)"}, "Klein four-group acting regularly");
    lit(r, "4T3", 4, 8, we, {"(2,3)", "(1,2)(3,4)"}, "dihedral group of order 8");
    lit(r, "4T4", 4, 12, we, {"(1,2,3)", "(2,3,4)"}, "alternating group of degree 4");
    lit(r, "4T5", 4, 24, co, {"(1,2)", "(1,2,3,4)"}, "symmetric group of degree 4");

    lit(r, "5T1", 5, 5, co, {"(1,2,3,4,5)"}, "cyclic group acting regularly");
    lit(r, "5T2", 5, 10, co, {"(1,2,3,4,5)", "(2,5)(3,4)"}, "dihedral group of order 10");
    lit(r, "5T3", 5, 20, co, {"(1,2,3,4,5)", "(1,2,4,3)"},
        "Frobenius group C5 : C4 of affine maps mod 5");
    lit(r, "5T4", 5, 60, co, {"(1,2,3,4,5)", "(1,2,3)"}, "alternating group of degree 5");
    lit(r, "5T5", 5, 120, co, {"(1,2)", "(1,2,3,4,5)"}, "symmetric group of degree 5");

    lit(r, "6T1", 6, 6, co, {"(1,2,3,4,5,6)"}, "cyclic group acting regularly");
    lit(r, "6T2", 6, 6, co, {"(1,2,3)(4,5,6)", "(1,4)(2,6)(3,5)"}, "S3 acting regularly");
    lit(r, "6T3", 6, 12, co, {"(1,2,3,4,5,6)", "(2,6)(3,5)"}, "dihedral group of order 12");
    mk(r, "6T4", 6, 12, [] { return cosetImage(fromCycles(4, {"(1,2,3)", "(2,3,4)"}), {"(1,2)(3,4)"}); },
       "coset action of A4 on the cosets of a subgroup of order 2");
    lit(r, "6T5", 6, 18, co, {"(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)"},
        "(C3 x C3) : C2 swapping two blocks of three");
    lit(r, "6T6", 6, 24, co, {"(1,2)", "(3,4)", "(5,6)", "(1,3,5)(2,4,6)"},
        "wreath product C2 wr C3 on three blocks of two");
    mk(r, "6T7", 6, 24,
       [] { return cosetImage(fromCycles(4, {"(1,2)", "(1,2,3,4)"}), {"(1,2)", "(3,4)"}); },
       "coset action of S4 on the cosets of <(1,2),(3,4)>");
    mk(r, "6T8", 6, 24, [] { return cosetImage(fromCycles(4, {"(1,2)", "(1,2,3,4)"}), {"(1,2,3,4)"}); },
       "coset action of S4 on the cosets of a cyclic subgroup of order 4");
    lit(r, "6T9", 6, 36, co, {"(1,2,3)", "(4,5,6)", "(2,3)(5,6)", "(1,4)(2,5)(3,6)"},
        "index-2 subdirect square of S3 extended by the block swap");
    lit(r, "6T10", 6, 36, co, {"(1,2,3)", "(4,5,6)", "(1,4)(2,6,3,5)"},
        "(C3 x C3) : C4 with the order-4 block twist");
    lit(r, "6T11", 6, 48, co, {"(1,2)", "(1,3,5)(2,4,6)", "(1,3)(2,4)"},
        "wreath product C2 wr S3 on three blocks of two");
    mk(r, "6T12", 6, 60, [] { return psl2(5); },
       "PSL(2,5) on the projective line over F5 (Moebius action)");
    lit(r, "6T13", 6, 72, co, {"(1,2,3)", "(1,2)", "(4,5,6)", "(4,5)", "(1,4)(2,5)(3,6)"},
        "wreath product S3 wr C2 on two blocks of three");
    mk(r, "6T14", 6, 120, [] { return pgl2(5); },
       "PGL(2,5) on the projective line over F5 (Moebius action)");
    mk(r, "6T15", 6, 360, [] { return alternatingNatural(6); }, "alternating group of degree 6");
    mk(r, "6T16", 6, 720, [] { return symmetricNatural(6); }, "symmetric group of degree 6");

    lit(r, "7T1", 7, 7, co, {"(1,2,3,4,5,6,7)"}, "cyclic group acting regularly");
    lit(r, "7T2", 7, 14, co, {"(1,2,3,4,5,6,7)", "(2,7)(3,6)(4,5)"}, "dihedral group of order 14");
    lit(r, "7T3", 7, 21, co, {"(1,2,3,4,5,6,7)", "(1,2,4)(3,6,5)"},
        "Frobenius group C7 : C3 of affine maps mod 7");
    lit(r, "7T4", 7, 42, co, {"(1,2,3,4,5,6,7)", "(1,3,2,6,4,5)"},
        "Frobenius group C7 : C6 of affine maps mod 7");
    mk(r, "7T5", 7, 168, [] { return gl32OnVectors(); },
       "GL(3,2) on the seven nonzero vectors of F2^3");
    mk(r, "7T6", 7, 2520, [] { return alternatingNatural(7); }, "alternating group of degree 7");
    mk(r, "7T7", 7, 5040, [] { return symmetricNatural(7); }, "symmetric group of degree 7");

    lit(r, "8T1", 8, 8, co, {"(1,2,3,4,5,6,7,8)"}, "cyclic group acting regularly");
    lit(r, "8T2", 8, 8, we, {e3, "(1,2,3,8)(4,5,6,7)"}, "C4 x C2 acting regularly");
    lit(r, "8T3", 8, 8, we, {e3, e2, e1}, "elementary abelian group of order 8 acting regularly");
    lit(r, "8T4", 8, 8, we, {"(1,6)(2,5)(3,4)(7,8)", "(1,2,3,8)(4,5,6,7)"},
        "dihedral group of order 8 acting regularly");
    lit(r, "8T5", 8, 8, co, {"(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"},
        "quaternion group acting regularly");
    lit(r, "8T6", 8, 16, we, {"(2,3)(4,5)(6,7)", "(1,2,4,6,8,7,5,3)"}, "dihedral group of order 16");
    lit(r, "8T7", 8, 16, co, {"(1,2,3,4,5,6,7,8)", "(2,4)(3,7)(6,8)"},
        "semidihedral group of order 16: affine maps x -> 3x + b mod 8");
    lit(r, "8T8", 8, 16, co, {"(1,2,3,4,5,6,7,8)", "(2,6)(4,8)"},
        "modular group of order 16: affine maps x -> 5x + b mod 8");
    lit(r, "8T9", 8, 16, we, {e1, e2, e3, "(4,5)(6,7)"}, "D4 x C2");
    lit(r, "8T10", 8, 16, we, {"(2,4)(3,6)", "(1,2,5,3)(4,7,6,8)"}, "(C4 x C2) : C2");
    lit(r, "8T11", 8, 16, we, {"(1,5)(3,7)", "(1,3,5,7)(2,4,6,8)", "(1,4,5,8)(2,3,6,7)"},
        "(C4 x C2) : C2");
    lit(r, "8T12", 8, 24, we, {"(1,2)(3,5,7,4,6,8)", "(1,3,6,2,4,5)(7,8)"}, "SL(2,3)");
    lit(r, "8T13", 8, 24, we, {e1, e2, e3, "(1,2,3)(4,6,5)"}, "C2 x A4");
    lit(r, "8T14", 8, 24, we, {"(1,4)(2,6)(3,7)(5,8)", "(2,8,3)(4,7,6)"}, "S4");
    lit(r, "8T15", 8, 32, we, {"(1,2,3,4,5,6,7,8)", "(1,5)(3,7)", "(1,6)(2,5)(3,4)(7,8)"},
        "C8 : (C2 x C2)");
    fix(r, "8T16", 8, 32);
    fix(r, "8T17", 8, 32);
    lit(r, "8T18", 8, 32, we, {"(2,3)(4,6)", "(1,2)(3,5)(4,7)(6,8)", "(2,4)(3,6)"},
        "order-32 stem extension of D4 x C2");
    lit(r, "8T19", 8, 32, we, {e1, e2, e3, "(1,3)(4,5,6,7)"}, "(C2 x C2 x C2) : C4");
    fix(r, "8T20", 8, 32);
    fix(r, "8T21", 8, 32);
    lit(r, "8T22", 8, 32, we, {e1, e2, e3, "(2,3)(4,5)", "(2,3)(6,7)"},
        "(C2 x C2 x C2) : (C2 x C2)");
    lit(r, "8T23", 8, 48, we, {"(2,4)(3,6)(5,8)", "(1,2,5,7,4,3)(6,8)"}, "GL(2,3)");
    lit(r, "8T24", 8, 48, co, {"(1,2,3,4)(5,6,7,8)", "(1,2)(5,6)", "(1,5)(2,6)(3,7)(4,8)"},
        "C2 x S4: diagonal S4 on pairs {i, i+4} with the central swap");
    mk(r, "8T25", 8, 56, [] { return agl18(); },
       "Frobenius group of order 56: affine maps x -> ax + b over F8");
    fix(r, "8T26", 8, 64);
    fix(r, "8T27", 8, 64);
    fix(r, "8T28", 8, 64);
    fix(r, "8T29", 8, 64);
    fix(r, "8T30", 8, 64);
    lit(r, "8T31", 8, 64, we, {"(4,8)", e1, e2}, "order-64 2-group from a worked example");
    lit(r, "8T32", 8, 96, we, {e1, e2, e3, "(1,2,3)(4,6,5)", "(2,5)(3,4)"},
        "(C2 x C2 x C2) : A4");
    fix(r, "8T33", 8, 96);
    fix(r, "8T34", 8, 96);
    lit(r, "8T35", 8, 128, co, {"(1,2)", "(1,3)(2,4)", "(1,5)(2,6)(3,7)(4,8)"},
        "iterated wreath product C2 wr C2 wr C2 (a Sylow 2-subgroup of S8)");
    mk(r, "8T36", 8, 168, [] { return agammal18(); },
       "A(Gamma)L(1,8): affine maps over F8 extended by the Frobenius");
    lit(r, "8T37", 8, 168, we, {"(1,2)(3,5)(4,7)(6,8)", "(2,6,7)(3,5,4)"},
        "PSL(3,2) = PSL(2,7) in its degree-8 action");
    lit(r, "8T38", 8, 192, we, {"(4,8)", e1, "(1,2,3)(5,6,7)"}, "(C2^4) : A4 on pairs {i, i+4}");
    fix(r, "8T39", 8, 192);
    fix(r, "8T40", 8, 192);
    fix(r, "8T41", 8, 192);
    lit(r, "8T42", 8, 288, co,
        {"(1,2,3)", "(2,3,4)", "(5,6,7)", "(6,7,8)", "(1,5)(2,6)(3,7)(4,8)"},
        "(A4 x A4) : C2 swapping the blocks {1..4} and {5..8}");
    mk(r, "8T43", 8, 336, [] { return pgl2(7); },
       "PGL(2,7) on the projective line over F7 (Moebius action)");
    lit(r, "8T44", 8, 384, co, {"(1,5)", "(1,2,3,4)(5,6,7,8)", "(1,2)(5,6)"},
        "wreath product C2 wr S4 on pairs {i, i+4}");
    fix(r, "8T45", 8, 576);
    fix(r, "8T46", 8, 576);
    lit(r, "8T47", 8, 1152, co, {"(1,2)", "(1,2,3,4)", "(5,6)", "(5,6,7,8)", "(1,5)(2,6)(3,7)(4,8)"},
        "wreath product S4 wr C2 on the blocks {1..4} and {5..8}");
    mk(r, "8T48", 8, 1344, [] { return agl32(); }, "AGL(3,2) on the vectors of F2^3");
    mk(r, "8T49", 8, 20160, [] { return alternatingNatural(8); }, "alternating group of degree 8");
    mk(r, "8T50", 8, 40320, [] { return symmetricNatural(8); }, "symmetric group of degree 8");

    lit(r, "9T2", 9, 9, we, {"(1,4,7)(2,5,8)(3,6,9)", "(1,2,9)(3,4,5)(6,7,8)"},
        "elementary abelian group of order 9 acting regularly");

    mk(r, "10T7", 10, 60,
       [] { return cosetImage(alternatingNatural(5), {"(1,2,3)", "(1,2)(4,5)"}); },
       "coset action of A5 on the cosets of a subgroup isomorphic to S3");
    mk(r, "10T26", 10, 360,
       [] { return cosetImage(alternatingNatural(6), {"(1,2,3)", "(4,5,6)", "(1,4,2,5)(3,6)"}); },
       "coset action of A6 on the cosets of a subgroup of order 36");
    lit(r, "10T32", 10, 720, we,
        {"(1,2,10)(3,4,5)(6,7,8)", "(1,3,2,6)(4,5,8,7)", "(1,2)(4,7)(5,8)(9,10)",
         "(3,6)(4,7)(5,8)"},
        "S6 in its degree-10 action");

    mk(r, "14T30", 14, 1092, [] { return psl2(13); },
       "PSL(2,13) on the projective line over F13 (Moebius action)");

    fix(r, "15T9", 15, 75);
    fix(r, "15T14", 15, 150);
    return r;
  }();
  return reg;
}

std::optional<std::pair<int, int>> parseNTm(const std::string& label) {
  std::size_t t = label.find('T');
  if (t == std::string::npos || t == 0 || t + 1 >= label.size()) return std::nullopt;
  for (std::size_t i = 0; i < label.size(); ++i)
    if (i != t && (label[i] < '0' || label[i] > '9')) return std::nullopt;
  long long n = 0, m = 0;
  for (std::size_t i = 0; i < t; ++i) n = n * 10 + (label[i] - '0');
  for (std::size_t i = t + 1; i < label.size(); ++i) m = m * 10 + (label[i] - '0');
  if (n < 1 || n > 1000000 || m < 1 || m > 1000000) return std::nullopt;
  return std::make_pair(static_cast<int>(n), static_cast<int>(m));
}

std::size_t editDistance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t next = std::min({row[j] + 1, row[j - 1] + 1,
                                   diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = row[j];
      row[j] = next;
    }
  }
  return row[b.size()];
}

[[noreturn]] void throwUnknownLabel(const std::string& label) {
  std::vector<std::pair<std::size_t, std::string>> ranked;
  for (const auto& [known, def] : registry())
    ranked.emplace_back(editDistance(label, known), known);
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::string> nearest;
  for (std::size_t i = 0; i < ranked.size() && i < 5; ++i) nearest.push_back(ranked[i].second);
  std::ostringstream msg;
  msg << "unknown group label '" << label << "'";
  if (auto nm = parseNTm(label)) {
    int maxM = 0;
    for (const auto& [known, def] : registry())
      if (auto km = parseNTm(known); km && km->first == nm->first) maxM = std::max(maxM, km->second);
    if (maxM > 0)
      msg << " (catalog labels of degree " << nm->first << " go up to " << nm->first << "T" << maxM
          << ")";
  }
  msg << "; nearest known labels:";
  for (const auto& s : nearest) msg << " " << s;
  throw UnknownLabelError(msg.str(), nearest);
}

// ---- family labels --------------------------------------------------------

std::optional<long long> parseCount(const std::string& text) {
  if (text.empty() || text.size() > 6) return std::nullopt;
  long long v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

bool isPrime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<CatalogEntry> familyEntry(const std::string& label) {
  auto finish = [&](PermGroup g, long long order, const std::string& note) {
    CatalogEntry e;
    e.label = label;
    e.degree = g.degree();
    e.order = order;
    for (const Perm& p : g.generators()) e.generators.push_back(printPerm(p));
    e.provenance = Provenance::Constructed;
    e.note = note;
    return e;
  };
  if (label == "V4")
    return finish(fromCycles(4, {"(1,2)(3,4)", "(1,4)(2,3)"}), 4, "Klein four-group acting regularly");
  if (label == "Q8")
    return finish(fromCycles(8, {"(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"}), 8,
                  "quaternion group acting regularly");
  if (label.size() >= 2 && label[0] == 'C') {
    if (auto n = parseCount(label.substr(1)); n && *n >= 1 && *n <= 64)
      return finish(cyclicRegular(static_cast<int>(*n)), *n, "cyclic group acting regularly");
  }
  if (label.size() >= 2 && label[0] == 'D') {
    if (auto n = parseCount(label.substr(1)); n && *n >= 6 && *n <= 128 && *n % 2 == 0)
      return finish(dihedralNatural(static_cast<int>(*n / 2)), *n,
                    "dihedral group in its natural action");
  }
  if (label.size() >= 2 && label[0] == 'S') {
    if (auto n = parseCount(label.substr(1)); n && *n >= 2 && *n <= 9) {
      long long order = 1;
      for (long long i = 2; i <= *n; ++i) order *= i;
      return finish(symmetricNatural(static_cast<int>(*n)), order, "symmetric group, natural action");
    }
  }
  if (label.size() >= 2 && label[0] == 'A') {
    if (auto n = parseCount(label.substr(1)); n && *n >= 3 && *n <= 9) {
      long long order = 1;
      for (long long i = 2; i <= *n; ++i) order *= i;
      return finish(alternatingNatural(static_cast<int>(*n)), order / 2,
                    "alternating group, natural action");
    }
  }
  if (label.size() >= 2 && label[0] == 'E') {
    if (auto q = parseCount(label.substr(1)); q && *q >= 4 && *q <= 128) {
      long long p = 2;
      while (*q % p != 0) ++p;
      long long rest = *q;
      int k = 0;
      while (rest % p == 0) {
        rest /= p;
        ++k;
      }
      if (rest == 1 && k >= 2 && isPrime(p))
        return finish(elementaryAbelianRegular(*q, p, k), *q,
                      "elementary abelian group acting regularly");
    }
  }
  auto moebius = [&](const std::string& prefix, bool projectiveGeneral)
      -> std::optional<CatalogEntry> {
    if (label.size() <= prefix.size() + 1 || label.compare(0, prefix.size(), prefix) != 0 ||
        label.back() != ')')
      return std::nullopt;
    auto p = parseCount(label.substr(prefix.size(), label.size() - prefix.size() - 1));
    if (!p || !isPrime(*p) || *p < 3 || *p > 61) return std::nullopt;
    long long order = (*p + 1) * *p * (*p - 1);
    if (!projectiveGeneral) order /= 2;
    return finish(projectiveGeneral ? pgl2(static_cast<int>(*p)) : psl2(static_cast<int>(*p)),
                  order, "Moebius action on the projective line");
  };
  if (auto e = moebius("PSL(2,", false)) return e;
  if (auto e = moebius("PGL(2,", true)) return e;
  return std::nullopt;
}

// ---- fixture files --------------------------------------------------------

std::optional<std::string>& fixtureOverride() {
  static std::optional<std::string> dir;
  return dir;
}

std::map<std::string, CatalogEntry>& entryCache() {
  static std::map<std::string, CatalogEntry> cache;
  return cache;
}

PermGroup buildVerified(const CatalogEntry& e, bool externalInput) {
  auto fail = [&](const std::string& what) -> PermGroup {
    std::string msg = "catalog entry '" + e.label + "': " + what;
    if (externalInput) throw ParseError(msg);
    throw std::logic_error(msg);
  };
  if (e.degree < 1) return fail("degree must be positive");
  PermGroup g = fromCycles(e.degree, e.generators);
  if (g.order() != e.order)
    return fail("recorded order " + std::to_string(e.order) + " but the generators produce order " +
                std::to_string(g.order()));
  if (!g.isTransitive()) return fail("group is not transitive");
  return g;
}

CatalogEntry loadFixtureEntry(const std::string& label, const EntryDef& def) {
  std::string path = fixtureDirectory() + "/" + label + ".json";
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("fixture file not found: " + path +
                             " (generate it with tools/catalog_tool)");
  std::ostringstream buf;
  buf << in.rdbuf();
  GroupSpec spec = parseGroupSpec(buf.str());
  if (spec.entry.label != label)
    throw ParseError("fixture file " + path + " records label '" + spec.entry.label + "'");
  if (spec.entry.degree != def.degree || spec.entry.order != def.order)
    throw ParseError("fixture file " + path + " does not match the expected degree/order");
  buildVerified(spec.entry, true);
  return spec.entry;
}

}  // namespace

std::string provenanceName(Provenance p) {
  switch (p) {
    case Provenance::WorkedExample:
      return "worked-example";
    case Provenance::Constructed:
      return "constructed";
    case Provenance::Derived:
      return "derived";
  }
  throw std::logic_error("provenanceName: bad value");
}

Provenance provenanceFromName(const std::string& name) {
  if (name == "worked-example") return Provenance::WorkedExample;
  if (name == "constructed") return Provenance::Constructed;
  if (name == "derived") return Provenance::Derived;
  throw ParseError("unknown provenance '" + name + "'");
}

std::string printGroupSpec(const GroupSpec& spec) {
  ordered_json j;
  j["label"] = spec.entry.label;
  j["degree"] = spec.entry.degree;
  j["order"] = spec.entry.order;
  j["generators"] = spec.entry.generators;
  j["provenance"] = provenanceName(spec.entry.provenance);
  j["note"] = spec.entry.note;
  if (spec.cover) {
    ordered_json c;
    c["degree"] = spec.cover->degree;
    c["order"] = spec.cover->order;
    c["generators"] = spec.cover->generators;
    c["epi_images"] = spec.cover->epiImages;
    j["cover"] = c;
  }
  return j.dump(2) + "\n";
}

GroupSpec parseGroupSpec(const std::string& jsonText) {
  ordered_json j = ordered_json::parse(jsonText, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("group spec is not a JSON object");
  auto need = [&](const ordered_json& obj, const char* key) -> const ordered_json& {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("group spec is missing '") + key + "'");
    return *it;
  };
  auto strings = [](const ordered_json& v, const char* key) {
    if (!v.is_array()) throw ParseError(std::string("group spec field '") + key + "' must be a list");
    std::vector<std::string> out;
    for (const auto& s : v) {
      if (!s.is_string())
        throw ParseError(std::string("group spec field '") + key + "' must hold strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  };
  GroupSpec spec;
  const ordered_json& label = need(j, "label");
  const ordered_json& degree = need(j, "degree");
  const ordered_json& order = need(j, "order");
  if (!label.is_string() || !degree.is_number_integer() || !order.is_number_integer())
    throw ParseError("group spec fields label/degree/order have the wrong types");
  spec.entry.label = label.get<std::string>();
  spec.entry.degree = degree.get<int>();
  spec.entry.order = order.get<long long>();
  spec.entry.generators = strings(need(j, "generators"), "generators");
  const ordered_json& prov = need(j, "provenance");
  if (!prov.is_string()) throw ParseError("group spec field 'provenance' must be a string");
  spec.entry.provenance = provenanceFromName(prov.get<std::string>());
  if (auto it = j.find("note"); it != j.end()) {
    if (!it->is_string()) throw ParseError("group spec field 'note' must be a string");
    spec.entry.note = it->get<std::string>();
  }
  if (auto it = j.find("cover"); it != j.end()) {
    if (!it->is_object()) throw ParseError("group spec field 'cover' must be an object");
    CoverSpec c;
    const ordered_json& cd = need(*it, "degree");
    const ordered_json& cn = need(*it, "order");
    if (!cd.is_number_integer() || !cn.is_number_integer())
      throw ParseError("cover fields degree/order must be integers");
    c.degree = cd.get<int>();
    c.order = cn.get<long long>();
    c.generators = strings(need(*it, "generators"), "cover.generators");
    c.epiImages = strings(need(*it, "epi_images"), "cover.epi_images");
    if (c.generators.size() != c.epiImages.size())
      throw ParseError("cover generators and epi_images must have the same length");
    spec.cover = std::move(c);
  }
  if (spec.entry.degree < 1 || spec.entry.order < 1)
    throw ParseError("group spec degree/order must be positive");
  return spec;
}

GroupSpec loadGroupSpecFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open group spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseGroupSpec(buf.str());
}

CoverInput realizeCover(const GroupSpec& spec) {
  PermGroup base = buildVerified(spec.entry, true);
  if (!spec.cover) throw ParseError("group spec has no cover block");
  const CoverSpec& c = *spec.cover;
  PermGroup cover = fromCycles(c.degree, c.generators);
  if (cover.order() != c.order)
    throw ParseError("cover records order " + std::to_string(c.order) +
                     " but the generators produce order " + std::to_string(cover.order()));
  std::vector<Perm> images;
  for (const auto& s : c.epiImages) {
    Perm img = parsePerm(s, base.degree());
    if (!base.contains(img)) throw ParseError("cover epi image " + s + " lies outside the base group");
    images.push_back(img);
  }
  try {
    GroupHom epi(cover, base, images);
    if (homImage(epi, cover).order() != base.order())
      throw ParseError("cover map is not surjective");
    return CoverInput{std::move(base), std::move(cover), std::move(epi)};
  } catch (const std::invalid_argument& err) {
    throw ParseError(std::string("cover map is not a homomorphism: ") + err.what());
  }
}

const std::vector<std::string>& catalogLabels() {
  static const std::vector<std::string> labels = [] {
    std::vector<std::string> out;
    for (const auto& [label, def] : registry()) out.push_back(label);
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
      auto pa = parseNTm(a), pb = parseNTm(b);
      return *pa < *pb;
    });
    return out;
  }();
  return labels;
}

std::vector<std::string> catalogLabelsOfDegree(int degree) {
  std::vector<std::string> out;
  for (const auto& label : catalogLabels())
    if (parseNTm(label)->first == degree) out.push_back(label);
  return out;
}

CatalogEntry catalogEntry(const std::string& label) {
  auto& cache = entryCache();
  if (auto it = cache.find(label); it != cache.end()) return it->second;
  CatalogEntry entry;
  auto reg = registry().find(label);
  if (reg != registry().end()) {
    const EntryDef& def = reg->second;
    if (def.fixture) {
      entry = loadFixtureEntry(label, def);
    } else {
      entry.label = label;
      entry.degree = def.degree;
      entry.order = def.order;
      entry.provenance = def.prov;
      entry.note = def.note;
      if (!def.gens.empty()) {
        entry.generators = def.gens;
      } else {
        PermGroup g = def.builder();
        if (g.degree() != def.degree) throw std::logic_error("catalog builder degree mismatch");
        for (const Perm& p : g.generators()) entry.generators.push_back(printPerm(p));
      }
      buildVerified(entry, false);
    }
  } else if (auto fam = familyEntry(label)) {
    entry = *fam;
    buildVerified(entry, false);
  } else {
    throwUnknownLabel(label);
  }
  cache[label] = entry;
  return entry;
}

PermGroup catalogGet(const std::string& label) {
  CatalogEntry e = catalogEntry(label);
  return fromCycles(e.degree, e.generators);
}

PermGroup parseGroupText(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos) return catalogGet(text);
  auto degree = parseCount(text.substr(0, colon));
  if (!degree || *degree < 1 || *degree > 10000)
    throw ParseError("inline group must start with '<degree>:', got '" + text + "'");
  std::vector<std::string> gens;
  std::string rest = text.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    std::size_t semi = rest.find(';', start);
    std::string tok = rest.substr(start, semi == std::string::npos ? std::string::npos
                                                                   : semi - start);
    if (!tok.empty()) gens.push_back(tok);
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return fromCycles(static_cast<int>(*degree), gens);
}

void setFixtureDirectory(const std::string& path) {
  fixtureOverride() = path;
  entryCache().clear();
}

std::string fixtureDirectory() {
  if (fixtureOverride()) return *fixtureOverride();
  if (const char* env = std::getenv("TORI_FIXTURE_DIR")) return env;
#ifdef TORI_FIXTURE_DIR
  return TORI_FIXTURE_DIR;
#else
  return "data/fixtures";
#endif
}

}  // namespace tori

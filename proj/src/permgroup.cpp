#include "tori/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace tori {

namespace {

// First index whose element equals p, in a sorted vector; -1 when absent.
long long indexIn(const std::vector<Perm>& sorted, const Perm& p) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
  if (it == sorted.end() || !(*it == p)) return -1;
  return it - sorted.begin();
}

Perm permPower(const Perm& g, long long e) {
  long long ord = g.order();
  e %= ord;
  if (e < 0) e += ord;
  Perm r = Perm::identity(g.degree());
  for (long long i = 0; i < e; ++i) r = r * g;
  return r;
}

}  // namespace

PermGroup::PermGroup(int degree, std::vector<Perm> generators, Budgets budgets)
    : degree_(degree), gens_(std::move(generators)), budgets_(budgets) {
  for (const Perm& g : gens_)
    if (g.degree() != degree_)
      throw std::invalid_argument("PermGroup: generator degree mismatch");
}

PermGroup PermGroup::fromElements(int degree, std::vector<Perm> generators,
                                  std::vector<Perm> sortedElements) {
  PermGroup G(degree, std::move(generators));
  G.elements_ = std::make_shared<std::vector<Perm>>(std::move(sortedElements));
  return G;
}

void PermGroup::materialize() const {
  if (elements_) return;
  std::set<Perm> seen;
  std::deque<Perm> queue;
  Perm e = Perm::identity(degree_);
  seen.insert(e);
  queue.push_back(e);
  while (!queue.empty()) {
    Perm cur = std::move(queue.front());
    queue.pop_front();
    for (const Perm& g : gens_) {
      Perm next = cur * g;
      if (seen.insert(next).second) {
        if (static_cast<long long>(seen.size()) > budgets_.elementLimit)
          throw BudgetError("PermGroup: element count exceeds the materialization budget of " +
                            std::to_string(budgets_.elementLimit));
        queue.push_back(std::move(next));
      }
    }
  }
  elements_ = std::make_shared<std::vector<Perm>>(seen.begin(), seen.end());
}

const std::vector<Perm>& PermGroup::elements() const {
  materialize();
  return *elements_;
}

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree_) return false;
  return indexIn(elements(), p) >= 0;
}

long long PermGroup::elementIndex(const Perm& p) const { return indexIn(elements(), p); }

bool PermGroup::isAbelian() const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i])) return false;
  return true;
}

bool PermGroup::isPerfect() const { return derivedSubgroup(*this).order() == order(); }

bool PermGroup::isTransitive() const { return degree_ > 0 && orbits(*this).size() == 1; }

const std::vector<std::pair<long long, int>>& PermGroup::bfsParents() const {
  materialize();
  if (parents_) return *parents_;
  const std::vector<Perm>& els = *elements_;
  auto parents = std::make_shared<std::vector<std::pair<long long, int>>>(
      els.size(), std::make_pair<long long, int>(-2, -1));
  long long start = indexIn(els, Perm::identity(degree_));
  (*parents)[static_cast<std::size_t>(start)] = {-1, -1};
  std::deque<long long> queue{start};
  while (!queue.empty()) {
    long long cur = queue.front();
    queue.pop_front();
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
      long long next = indexIn(els, els[static_cast<std::size_t>(cur)] * gens_[gi]);
      if ((*parents)[static_cast<std::size_t>(next)].first == -2) {
        (*parents)[static_cast<std::size_t>(next)] = {cur, static_cast<int>(gi)};
        queue.push_back(next);
      }
    }
  }
  parents_ = std::move(parents);
  return *parents_;
}

std::vector<int> PermGroup::wordFor(const Perm& g) const {
  long long idx = elementIndex(g);
  if (idx < 0) throw std::invalid_argument("wordFor: element not in group");
  const auto& par = bfsParents();
  std::vector<int> word;
  while (par[static_cast<std::size_t>(idx)].first >= 0) {
    word.push_back(par[static_cast<std::size_t>(idx)].second);
    idx = par[static_cast<std::size_t>(idx)].first;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

// --- GroupHom ------------------------------------------------------------

GroupHom::GroupHom(PermGroup source, PermGroup target, std::vector<Perm> generatorImages)
    : source_(std::move(source)), target_(std::move(target)), genImages_(std::move(generatorImages)) {
  if (genImages_.size() != source_.generators().size())
    throw std::invalid_argument("GroupHom: one image per source generator required");
  for (const Perm& m : genImages_)
    if (!target_.contains(m))
      throw std::invalid_argument("GroupHom: generator image lies outside the target group");
  const auto& els = source_.elements();
  const auto& par = source_.bfsParents();
  elementImages_.assign(els.size(), Perm());
  // Fill along the BFS tree, then check the homomorphism property on every
  // (element, generator) edge; a mismatch means the map is not well defined.
  std::vector<char> done(els.size(), 0);
  long long start = source_.elementIndex(source_.identity());
  elementImages_[static_cast<std::size_t>(start)] = target_.identity();
  done[static_cast<std::size_t>(start)] = 1;
  // BFS parent order is topological from the identity; process indices in
  // order of tree depth by repeated passes (the parent array is acyclic).
  std::vector<long long> stack;
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (done[i]) continue;
    long long j = static_cast<long long>(i);
    stack.clear();
    while (!done[static_cast<std::size_t>(j)]) {
      stack.push_back(j);
      j = par[static_cast<std::size_t>(j)].first;
    }
    while (!stack.empty()) {
      long long k = stack.back();
      stack.pop_back();
      auto [pidx, gi] = par[static_cast<std::size_t>(k)];
      elementImages_[static_cast<std::size_t>(k)] =
          elementImages_[static_cast<std::size_t>(pidx)] * genImages_[static_cast<std::size_t>(gi)];
      done[static_cast<std::size_t>(k)] = 1;
    }
  }
  for (std::size_t i = 0; i < els.size(); ++i)
    for (std::size_t gi = 0; gi < genImages_.size(); ++gi) {
      long long t = source_.elementIndex(els[i] * source_.generators()[gi]);
      if (!(elementImages_[static_cast<std::size_t>(t)] == elementImages_[i] * genImages_[gi]))
        throw std::invalid_argument(
            "GroupHom: generator images do not respect the group relations");
    }
}

Perm GroupHom::imageOf(const Perm& g) const {
  long long idx = source_.elementIndex(g);
  if (idx < 0) throw std::invalid_argument("GroupHom: element not in the source group");
  return elementImages_[static_cast<std::size_t>(idx)];
}

// --- free functions ------------------------------------------------------

PermGroup groupFromGenerators(int degree, const std::vector<Perm>& gens, Budgets budgets) {
  return PermGroup(degree, gens, budgets);
}

PermGroup generatedSubgroup(const PermGroup& G, const std::vector<Perm>& elts) {
  for (const Perm& p : elts)
    if (!G.contains(p))
      throw std::invalid_argument("generatedSubgroup: element lies outside the ambient group");
  PermGroup S(G.degree(), elts);
  S.elements();  // materialize now; ambient membership already vouched for
  return S;
}

PermGroup stabilizer(const PermGroup& G, int point) {
  if (point < 1 || point > G.degree())
    throw std::invalid_argument("stabilizer: point " + std::to_string(point) + " outside [1, " +
                                std::to_string(G.degree()) + "]");
  std::vector<Perm> fixed;
  for (const Perm& g : G.elements())
    if (g.apply(point - 1) == point - 1) fixed.push_back(g);
  std::vector<Perm> gens = minimizedGenerators(fixed);  // before the move below
  return PermGroup::fromElements(G.degree(), std::move(gens), std::move(fixed));
}

std::vector<Perm> rightTransversal(const PermGroup& G, const PermGroup& H) {
  if (H.degree() != G.degree())
    throw std::invalid_argument("rightTransversal: degree mismatch");
  for (const Perm& h : H.generators())
    if (!G.contains(h))
      throw std::invalid_argument("rightTransversal: H is not a subgroup of G");
  if (H.order() == 1) return G.elements();  // sorted; identity first
  std::vector<Perm> reps{G.identity()};
  std::vector<Perm> repInv{G.identity()};
  std::size_t head = 0;
  while (head < reps.size()) {
    Perm cur = reps[head++];
    for (const Perm& g : G.generators()) {
      Perm cand = cur * g;
      bool known = false;
      for (const Perm& ri : repInv)
        if (H.contains(cand * ri)) {
          known = true;
          break;
        }
      if (!known) {
        repInv.push_back(cand.inverse());
        reps.push_back(std::move(cand));
      }
    }
  }
  return reps;
}

std::pair<PermGroup, GroupHom> cosetAction(const PermGroup& G, const PermGroup& H) {
  std::vector<Perm> reps = rightTransversal(G, H);
  const int k = static_cast<int>(reps.size());
  std::vector<Perm> repInv;
  repInv.reserve(reps.size());
  for (const Perm& r : reps) repInv.push_back(r.inverse());
  auto cosetOf = [&](const Perm& x) -> int {
    for (int j = 0; j < k; ++j)
      if (H.contains(x * repInv[static_cast<std::size_t>(j)])) return j;
    throw std::logic_error("cosetAction: element escaped the coset table");
  };
  std::vector<Perm> images;
  images.reserve(G.generators().size());
  for (const Perm& g : G.generators()) {
    std::vector<int> img(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) img[static_cast<std::size_t>(j)] = cosetOf(reps[static_cast<std::size_t>(j)] * g);
    images.emplace_back(std::move(img));
  }
  PermGroup image(k, images);
  GroupHom hom(G, image, images);
  return {std::move(image), std::move(hom)};
}

std::vector<Perm> doubleCosets(const PermGroup& G, const PermGroup& H, const PermGroup& K) {
  for (const Perm& h : H.generators())
    if (!G.contains(h)) throw std::invalid_argument("doubleCosets: H is not a subgroup of G");
  for (const Perm& p : K.generators())
    if (!G.contains(p)) throw std::invalid_argument("doubleCosets: K is not a subgroup of G");
  const auto& els = G.elements();
  std::vector<char> marked(els.size(), 0);
  std::vector<Perm> reps;
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (marked[i]) continue;
    reps.push_back(els[i]);
    std::deque<long long> queue{static_cast<long long>(i)};
    marked[i] = 1;
    while (!queue.empty()) {
      long long cur = queue.front();
      queue.pop_front();
      const Perm& x = els[static_cast<std::size_t>(cur)];
      auto visit = [&](const Perm& y) {
        long long j = G.elementIndex(y);
        if (!marked[static_cast<std::size_t>(j)]) {
          marked[static_cast<std::size_t>(j)] = 1;
          queue.push_back(j);
        }
      };
      for (const Perm& h : H.generators()) visit(h * x);
      for (const Perm& p : K.generators()) visit(x * p);
    }
  }
  return reps;
}

PermGroup derivedSubgroup(const PermGroup& G) {
  std::vector<Perm> T;
  auto addNew = [&](const Perm& c, const PermGroup& X) {
    if (c.isIdentity() || X.contains(c)) return false;
    T.push_back(c);
    return true;
  };
  PermGroup X(G.degree(), {});
  for (const Perm& a : G.generators())
    for (const Perm& b : G.generators()) addNew(commutatorOf(a, b), X);
  X = PermGroup(G.degree(), T);
  // Normal closure: conjugate the generating set until stable.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Perm> snapshot = T;
    for (const Perm& t : snapshot)
      for (const Perm& g : G.generators())
        if (addNew(g.inverse() * t * g, X)) grew = true;
    if (grew) X = PermGroup(G.degree(), T);
  }
  std::vector<Perm> els = X.elements();
  std::vector<Perm> mg = minimizedGenerators(els);  // before the move below
  return PermGroup::fromElements(G.degree(), std::move(mg), std::move(els));
}

PermGroup center(const PermGroup& G) {
  std::vector<Perm> z;
  for (const Perm& g : G.elements()) {
    bool central = true;
    for (const Perm& h : G.generators())
      if (!(g * h == h * g)) {
        central = false;
        break;
      }
    if (central) z.push_back(g);
  }
  std::vector<Perm> mg = minimizedGenerators(z);  // before the move below
  return PermGroup::fromElements(G.degree(), std::move(mg), std::move(z));
}

namespace {

PermGroup normalizerOf(const PermGroup& G, const PermGroup& P) {
  std::vector<Perm> n;
  for (const Perm& g : G.elements()) {
    Perm gi = g.inverse();
    bool ok = true;
    for (const Perm& t : P.generators())
      if (!P.contains(gi * t * g)) {
        ok = false;
        break;
      }
    if (ok) n.push_back(g);
  }
  std::vector<Perm> mg = minimizedGenerators(n);  // before the move below
  return PermGroup::fromElements(G.degree(), std::move(mg), std::move(n));
}

bool isPPower(long long n, long long p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

bool isPrimePower(long long n) {
  if (n < 2) return false;
  long long p = 2;
  while (p * p <= n && n % p != 0) ++p;
  if (p * p > n) p = n;
  return isPPower(n, p);
}

}  // namespace

PermGroup sylow(const PermGroup& G, long long p) {
  if (p < 2) throw std::invalid_argument("sylow: p must be a prime");
  long long pk = 1;
  long long n = G.order();
  while (n % p == 0) {
    pk *= p;
    n /= p;
  }
  PermGroup P(G.degree(), {});
  while (P.order() < pk) {
    PermGroup N = normalizerOf(G, P);
    bool advanced = false;
    for (const Perm& y : N.elements()) {
      if (y.isIdentity() || !isPPower(y.order(), p) || P.contains(y)) continue;
      std::vector<Perm> gens = P.generators();
      gens.push_back(y);
      P = PermGroup(G.degree(), gens);
      P.elements();
      advanced = true;
      break;
    }
    if (!advanced)
      throw std::logic_error("sylow: no extension found below full p-power order");
  }
  std::vector<Perm> els = P.elements();
  std::vector<Perm> mg = minimizedGenerators(els);  // before the move below
  return PermGroup::fromElements(G.degree(), std::move(mg), std::move(els));
}

Perm commutatorOf(const Perm& a, const Perm& b) { return a.inverse() * b.inverse() * a * b; }

PermGroup conjugateSubgroup(const PermGroup& S, const Perm& g) {
  Perm gi = g.inverse();
  std::vector<Perm> els;
  els.reserve(S.elements().size());
  for (const Perm& s : S.elements()) els.push_back(gi * s * g);
  std::sort(els.begin(), els.end());
  std::vector<Perm> mg = minimizedGenerators(els);  // before the move below
  return PermGroup::fromElements(S.degree(), std::move(mg), std::move(els));
}

std::vector<PermGroup> allSubgroups(const PermGroup& G, std::optional<long long> orderBudget) {
  Budgets defaults;
  long long budget = orderBudget.value_or(defaults.subgroupOrderLimit);
  if (G.order() > budget)
    throw BudgetError("allSubgroups: group order " + std::to_string(G.order()) +
                      " exceeds the subgroup-enumeration budget of " + std::to_string(budget));
  const auto& els = G.elements();
  const int n = static_cast<int>(els.size());
  if (n > 5000)
    throw BudgetError("allSubgroups: order " + std::to_string(n) +
                      " is past the multiplication-table limit of 5000");

  // Everything below runs on element indices against a full multiplication
  // table; Perm arithmetic would dominate the join closure otherwise.
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      mul[static_cast<std::size_t>(i) * n + j] = static_cast<int>(
          G.elementIndex(els[static_cast<std::size_t>(i)] * els[static_cast<std::size_t>(j)]));
  const int id = static_cast<int>(G.elementIndex(G.identity()));

  std::vector<int> stamp(static_cast<std::size_t>(n), -1);
  int epoch = -1;
  // Sorted index set of the subgroup generated by the given indices.
  auto closure = [&](const std::vector<int>& gens) {
    ++epoch;
    std::vector<int> found{id};
    stamp[static_cast<std::size_t>(id)] = epoch;
    for (std::size_t h = 0; h < found.size(); ++h)
      for (int g : gens) {
        int next = mul[static_cast<std::size_t>(found[h]) * n + g];
        if (stamp[static_cast<std::size_t>(next)] != epoch) {
          stamp[static_cast<std::size_t>(next)] = epoch;
          found.push_back(next);
        }
      }
    std::sort(found.begin(), found.end());
    return found;
  };

  struct Sub {
    std::vector<int> idx;   // sorted element indices
    std::vector<int> gens;  // accumulated generator indices
  };
  std::map<std::vector<int>, std::size_t> seen;
  std::vector<Sub> subs;
  auto addSub = [&](std::vector<int> idx, std::vector<int> gens) {
    auto [it, fresh] = seen.emplace(std::move(idx), subs.size());
    if (fresh) subs.push_back({it->first, std::move(gens)});
    return fresh;
  };

  addSub({id}, {});
  // All cyclic subgroups enter the list; only prime-power ones are join
  // seeds, which suffices because every element is a product of the
  // prime-power components of the cyclic group it generates.
  struct Seed {
    int gen;
    std::vector<int> idx;
  };
  std::vector<Seed> seeds;
  std::set<std::vector<int>> seedKeys;
  for (int i = 0; i < n; ++i) {
    if (i == id) continue;
    std::vector<int> idx = closure({i});
    addSub(idx, {i});
    if (isPrimePower(els[static_cast<std::size_t>(i)].order()) && seedKeys.insert(idx).second)
      seeds.push_back({i, std::move(idx)});
  }

  // Close under joins with the prime-power cyclic seeds.
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (const Seed& s : seeds) {
      const std::vector<int>& have = subs[i].idx;
      if (std::includes(have.begin(), have.end(), s.idx.begin(), s.idx.end())) continue;
      std::vector<int> gens = subs[i].gens;
      gens.push_back(s.gen);
      std::vector<int> joined = closure(gens);  // before the move below
      addSub(std::move(joined), std::move(gens));
    }
  }

  std::vector<std::vector<int>> ordered;
  ordered.reserve(subs.size());
  for (auto& s : subs) ordered.push_back(s.idx);
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  std::vector<PermGroup> out;
  out.reserve(ordered.size());
  for (const auto& idx : ordered) {
    std::vector<Perm> sub;
    sub.reserve(idx.size());
    for (int i : idx) sub.push_back(els[static_cast<std::size_t>(i)]);
    std::vector<Perm> mg = minimizedGenerators(sub);  // before the move below
    out.push_back(PermGroup::fromElements(G.degree(), std::move(mg), std::move(sub)));
  }
  return out;
}

std::vector<PermGroup> subgroupClassReps(const PermGroup& G, std::optional<long long> orderBudget) {
  std::vector<PermGroup> all = allSubgroups(G, orderBudget);
  const auto& els = G.elements();

  // Conjugation tables: element index -> index of g^{-1} x g, one per generator.
  std::vector<std::vector<int>> conjTable;
  for (const Perm& g : G.generators()) {
    Perm gi = g.inverse();
    std::vector<int> t(els.size());
    for (std::size_t i = 0; i < els.size(); ++i)
      t[i] = static_cast<int>(G.elementIndex(gi * els[i] * g));
    conjTable.push_back(std::move(t));
  }

  std::map<std::vector<int>, std::size_t> pos;
  std::vector<std::vector<int>> idxSets(all.size());
  for (std::size_t s = 0; s < all.size(); ++s) {
    std::vector<int> v;
    for (const Perm& x : all[s].elements()) v.push_back(static_cast<int>(G.elementIndex(x)));
    std::sort(v.begin(), v.end());
    pos[v] = s;
    idxSets[s] = std::move(v);
  }

  std::vector<char> marked(all.size(), 0);
  std::vector<PermGroup> reps;
  for (std::size_t s = 0; s < all.size(); ++s) {
    if (marked[s]) continue;
    reps.push_back(all[s]);  // smallest member: `all` is sorted by (order, set)
    std::deque<std::size_t> queue{s};
    marked[s] = 1;
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      for (const auto& t : conjTable) {
        std::vector<int> img;
        img.reserve(idxSets[cur].size());
        for (int i : idxSets[cur]) img.push_back(t[static_cast<std::size_t>(i)]);
        std::sort(img.begin(), img.end());
        std::size_t j = pos.at(img);
        if (!marked[j]) {
          marked[j] = 1;
          queue.push_back(j);
        }
      }
    }
  }
  return reps;
}

bool isMetacyclic(const PermGroup& G) {
  long long n = G.order();
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    PermGroup P = sylow(G, p);
    bool cyclic = false;
    for (const Perm& x : P.elements())
      if (x.order() == P.order()) {
        cyclic = true;
        break;
      }
    if (!cyclic) return false;
    while (n % p == 0) n /= p;
  }
  if (n > 1) {
    PermGroup P = sylow(G, n);
    bool cyclic = false;
    for (const Perm& x : P.elements())
      if (x.order() == P.order()) {
        cyclic = true;
        break;
      }
    if (!cyclic) return false;
  }
  return true;
}

FinAbStructure abelianization(const PermGroup& G) {
  FinAbStructure A;
  A.group_ = G;
  PermGroup D = derivedSubgroup(G);
  std::vector<Perm> reps = rightTransversal(G, D);
  const std::size_t k = reps.size();
  std::vector<Perm> repInv;
  repInv.reserve(k);
  for (const Perm& r : reps) repInv.push_back(r.inverse());

  const auto& els = G.elements();
  A.cosetOf_.assign(els.size(), -1);
  for (std::size_t i = 0; i < els.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j)
      if (D.contains(els[i] * repInv[j])) {
        A.cosetOf_[i] = static_cast<long long>(j);
        break;
      }
    if (A.cosetOf_[i] < 0) throw std::logic_error("abelianization: coset table incomplete");
  }

  const std::size_t ngens = G.generators().size();
  auto cosetMul = [&](std::size_t c, std::size_t gi) {
    return static_cast<std::size_t>(
        A.cosetOf_[static_cast<std::size_t>(G.elementIndex(reps[c] * G.generators()[gi]))]);
  };

  // Exponent vectors along a BFS tree of the quotient's Cayley graph.
  std::vector<char> have(k, 0);
  A.cosetExponents_.assign(k, IntMat());
  std::size_t c0 = 0;
  for (std::size_t j = 0; j < k; ++j)
    if (reps[j].isIdentity()) c0 = j;
  A.cosetExponents_[c0] = IntMat::Zero(1, static_cast<Index>(ngens));
  have[c0] = 1;
  std::deque<std::size_t> queue{c0};
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t gi = 0; gi < ngens; ++gi) {
      std::size_t next = cosetMul(cur, gi);
      if (!have[next]) {
        have[next] = 1;
        A.cosetExponents_[next] = A.cosetExponents_[cur];
        A.cosetExponents_[next](0, static_cast<Index>(gi)) += 1;
        queue.push_back(next);
      }
    }
  }

  // Relation lattice: one row per Cayley edge of the quotient.
  IntMat R(static_cast<Index>(k * ngens), static_cast<Index>(ngens));
  Index row = 0;
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t gi = 0; gi < ngens; ++gi) {
      IntMat r = A.cosetExponents_[c] - A.cosetExponents_[cosetMul(c, gi)];
      r(0, static_cast<Index>(gi)) += 1;
      R.row(row++) = r.row(0);
    }
  A.quotient_ = quotientStructure(static_cast<Index>(ngens), R);
  if (A.quotient_.freeRank != 0)
    throw std::logic_error("abelianization: quotient of a finite group came out infinite");
  A.invariants_ = A.quotient_.invariants;

  for (std::size_t t = 0; t < A.invariants_.size(); ++t) {
    IntMat w = quotientGeneratorLift(A.quotient_, static_cast<Index>(t));
    Perm lift = G.identity();
    for (std::size_t gi = 0; gi < ngens; ++gi) {
      Int e = w(0, static_cast<Index>(gi));
      long long ord = G.generators()[gi].order();
      long long em = static_cast<long long>(e % ord);
      lift = lift * permPower(G.generators()[gi], em);
    }
    A.snfGens_.push_back(lift);
  }
  return A;
}

std::vector<long long> FinAbStructure::projectionOf(const Perm& g) const {
  long long idx = group_.elementIndex(g);
  if (idx < 0) throw std::invalid_argument("FinAbStructure: element not in the group");
  return coordsInQuotient(quotient_, cosetExponents_[static_cast<std::size_t>(
                                         cosetOf_[static_cast<std::size_t>(idx)])]);
}

long long FinAbStructure::groupOrder() const {
  long long p = 1;
  for (long long d : invariants_) p *= d;
  return p;
}

PermGroup homImage(const GroupHom& h, const PermGroup& S) {
  std::vector<Perm> gens;
  for (const Perm& s : S.generators()) gens.push_back(h.imageOf(s));
  PermGroup I(h.target().degree(), gens);
  I.elements();
  return I;
}

PermGroup homPreimage(const GroupHom& h, const PermGroup& T) {
  std::vector<Perm> pre;
  for (const Perm& g : h.source().elements())
    if (T.contains(h.imageOf(g))) pre.push_back(g);
  std::vector<Perm> mg = minimizedGenerators(pre);  // before the move below
  return PermGroup::fromElements(h.source().degree(), std::move(mg), std::move(pre));
}

PermGroup homKernel(const GroupHom& h) {
  return homPreimage(h, PermGroup(h.target().degree(), {}));
}

std::vector<std::vector<int>> orbits(const PermGroup& G) {
  std::vector<char> seen(static_cast<std::size_t>(G.degree()), 0);
  std::vector<std::vector<int>> out;
  for (int p = 0; p < G.degree(); ++p) {
    if (seen[static_cast<std::size_t>(p)]) continue;
    std::vector<int> orb{p};
    seen[static_cast<std::size_t>(p)] = 1;
    for (std::size_t h = 0; h < orb.size(); ++h)
      for (const Perm& g : G.generators()) {
        int q = g.apply(orb[h]);
        if (!seen[static_cast<std::size_t>(q)]) {
          seen[static_cast<std::size_t>(q)] = 1;
          orb.push_back(q);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<Perm> minimizedGenerators(const std::vector<Perm>& sortedElements) {
  if (sortedElements.empty()) return {};
  const int degree = sortedElements.front().degree();
  std::vector<Perm> gens;
  std::set<Perm> span{Perm::identity(degree)};
  for (const Perm& cand : sortedElements) {
    if (span.size() == sortedElements.size()) break;
    if (cand.isIdentity() || span.count(cand)) continue;
    gens.push_back(cand);
    // Re-close the span under the enlarged generating set.
    std::deque<Perm> queue(span.begin(), span.end());
    while (!queue.empty()) {
      Perm cur = std::move(queue.front());
      queue.pop_front();
      for (const Perm& g : gens) {
        Perm next = cur * g;
        if (span.insert(next).second) queue.push_back(std::move(next));
      }
    }
  }
  return gens;
}

}  // namespace tori

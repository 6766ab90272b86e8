#include "fuselab/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace fuselab {

const Limits& limits() {
  static const Limits lim = [] {
    Limits l;
    if (const char* s = std::getenv("FUSELAB_MAX_ORDER")) l.max_order = std::atoi(s);
    if (const char* s = std::getenv("FUSELAB_MAX_SYLOW")) l.max_sylow = std::atoi(s);
    if (const char* s = std::getenv("FUSELAB_MAX_SUBGROUPS")) l.max_subgroups = std::atoi(s);
    return l;
  }();
  return lim;
}

int p_part(int n, int p) {
  int q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool is_p_element(const FiniteGroup& g, int x, int p) {
  int o = g.element_order(x);
  return o == p_part(o, p);
}

// --- FiniteGroup -------------------------------------------------------------

int FiniteGroup::element_order(int a) const {
  int o = 1, x = a;
  while (x != 0) {
    x = op(x, a);
    ++o;
  }
  return o;
}

int FiniteGroup::power(int a, int k) const {
  if (k < 0) {
    a = inv_[a];
    k = -k;
  }
  int r = 0;
  for (int i = 0; i < k; ++i) r = op(r, a);
  return r;
}

const std::string& FiniteGroup::label(int i) const {
  static const std::string empty;
  if (i < 0 || i >= static_cast<int>(labels_.size())) return empty;
  return labels_[i];
}

int FiniteGroup::element_of_permutation(const std::vector<uint8_t>& perm) const {
  for (int i = 0; i < n_; ++i)
    if (perms_[i] == perm) return i;
  return -1;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<int> cls(n_, -1);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < n_; ++x) {
    if (cls[x] >= 0) continue;
    std::vector<int> c;
    int id = static_cast<int>(out.size());
    for (int g = 0; g < n_; ++g) {
      int y = conj(g, x);
      if (cls[y] < 0) {
        cls[y] = id;
        c.push_back(y);
      }
    }
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

// Greedy generating sequence; each pick strictly enlarges the generated subgroup.
std::vector<int> greedy_generators(const FiniteGroup& g) {
  std::vector<int> gens;
  Bitset have(g.order());
  have.set(0);
  int covered = 1;
  for (int x = 1; x < g.order() && covered < g.order(); ++x) {
    if (have.test(x)) continue;
    gens.push_back(x);
    // close
    std::vector<int> elems = have.to_indices();
    std::vector<int> work = {x};
    have.set(x);
    ++covered;
    while (!work.empty()) {
      int a = work.back();
      work.pop_back();
      std::vector<int> snapshot = have.to_indices();
      for (int b : snapshot) {
        for (int c : {g.op(a, b), g.op(b, a)}) {
          if (!have.test(c)) {
            have.set(c);
            ++covered;
            work.push_back(c);
          }
        }
      }
    }
  }
  return gens;
}

void validate_table(const FiniteGroup& g, const std::vector<uint16_t>& mul) {
  const int n = g.order();
  for (int i = 0; i < n; ++i) {
    if (mul[static_cast<size_t>(0) * n + i] != i || mul[static_cast<size_t>(i) * n + 0] != i)
      throw validation_error("identity is not element 0");
  }
  std::vector<char> seen(n);
  for (int i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n; ++j) {
      int v = mul[static_cast<size_t>(i) * n + j];
      if (v < 0 || v >= n || seen[v]) throw validation_error("row is not a permutation");
      seen[v] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n; ++j) {
      int v = mul[static_cast<size_t>(j) * n + i];
      if (seen[v]) throw validation_error("column is not a permutation");
      seen[v] = 1;
    }
  }
  auto mm = [&](int a, int b) { return mul[static_cast<size_t>(a) * n + b]; };
  if (n <= 200) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mm(mm(a, b), c) != mm(a, mm(b, c)))
            throw validation_error("multiplication table is not associative");
  } else {
    // Light's associativity test: checking against a generating set suffices.
    for (int gen : greedy_generators(g))
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (mm(mm(a, gen), b) != mm(a, mm(gen, b)))
            throw validation_error("multiplication table is not associative");
  }
}

}  // namespace

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<int>>& table,
                                 std::vector<std::string> labels, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw validation_error("empty multiplication table");
  if (n > limits().max_order) throw size_guard_error("group order exceeds FUSELAB_MAX_ORDER");
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = n;
  g->mul_.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n) throw validation_error("ragged table");
    for (int j = 0; j < n; ++j) {
      int v = table[i][j];
      if (v < 0 || v >= n) throw validation_error("table entry out of range");
      g->mul_[static_cast<size_t>(i) * n + j] = static_cast<uint16_t>(v);
    }
  }
  g->inv_.resize(n, 0xFFFF);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g->op(i, j) == 0) {
        g->inv_[i] = static_cast<uint16_t>(j);
        break;
      }
    }
    if (g->inv_[i] == 0xFFFF) throw validation_error("element without inverse");
    if (g->op(g->inv_[i], i) != 0) throw validation_error("one-sided inverse");
  }
  validate_table(*g, g->mul_);
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw validation_error("label count mismatch");
  g->labels_ = std::move(labels);
  g->name_ = std::move(name);
  return g;
}

namespace {

std::string cycle_notation(const std::vector<uint8_t>& p) {
  const int d = static_cast<int>(p.size());
  std::vector<char> used(d, 0);
  std::ostringstream os;
  bool wrote = false;
  for (int i = 0; i < d; ++i) {
    if (used[i] || p[i] == i) continue;
    os << '(';
    int j = i;
    bool first = true;
    while (!used[j]) {
      used[j] = 1;
      if (!first) os << ' ';
      os << (j + 1);
      first = false;
      j = p[j];
    }
    os << ')';
    wrote = true;
  }
  if (!wrote) return "()";
  return os.str();
}

}  // namespace

GroupPtr FiniteGroup::from_permutations(int degree,
                                        const std::vector<std::vector<uint8_t>>& gens,
                                        std::string name) {
  if (degree < 1 || degree > 64) throw validation_error("permutation degree out of range");
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree) throw validation_error("generator degree mismatch");
    std::vector<char> seen(degree, 0);
    for (uint8_t v : p) {
      if (v >= degree || seen[v]) throw validation_error("generator is not a permutation");
      seen[v] = 1;
    }
  }
  std::vector<uint8_t> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<uint8_t>> elems = {id};
  std::map<std::vector<uint8_t>, int> index = {{id, 0}};
  for (size_t i = 0; i < elems.size(); ++i) {
    for (const auto& gen : gens) {
      std::vector<uint8_t> prod(degree);
      for (int k = 0; k < degree; ++k) prod[k] = gen[elems[i][k]];  // gen . elems[i]
      if (index.emplace(prod, static_cast<int>(elems.size())).second) {
        elems.push_back(prod);
        if (static_cast<int>(elems.size()) > limits().max_order)
          throw size_guard_error("permutation closure exceeds FUSELAB_MAX_ORDER");
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = n;
  g->mul_.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::vector<uint8_t> prod(degree);
      for (int k = 0; k < degree; ++k) prod[k] = elems[a][elems[b][k]];
      g->mul_[static_cast<size_t>(a) * n + b] = static_cast<uint16_t>(index.at(prod));
    }
  }
  g->inv_.resize(n);
  for (int a = 0; a < n; ++a) {
    std::vector<uint8_t> inv(degree);
    for (int k = 0; k < degree; ++k) inv[elems[a][k]] = static_cast<uint8_t>(k);
    g->inv_[a] = static_cast<uint16_t>(index.at(inv));
  }
  g->degree_ = degree;
  g->perms_ = std::move(elems);
  g->labels_.resize(n);
  for (int a = 0; a < n; ++a) g->labels_[a] = cycle_notation(g->perms_[a]);
  g->name_ = std::move(name);
  return g;
}

GroupPtr FiniteGroup::trivial() {
  static GroupPtr t = from_table({{0}}, {"1"}, "1");
  return t;
}

// --- Subgroup helpers --------------------------------------------------------

Subgroup whole_subgroup(GroupPtr g) {
  Bitset b(g->order());
  for (int i = 0; i < g->order(); ++i) b.set(i);
  return Subgroup(std::move(g), std::move(b));
}

Subgroup trivial_subgroup(GroupPtr g) {
  Bitset b(g->order());
  b.set(0);
  return Subgroup(std::move(g), std::move(b));
}

Subgroup subgroup_from_indices(GroupPtr g, const std::vector<int>& elems) {
  Bitset b(g->order());
  for (int e : elems) {
    if (e < 0 || e >= g->order()) throw precondition_error("element index out of range");
    b.set(e);
  }
  b.set(0);
  if (!is_closed_subgroup(*g, b)) throw precondition_error("set is not a subgroup");
  return Subgroup(std::move(g), std::move(b));
}

bool is_closed_subgroup(const FiniteGroup& g, const Bitset& members) {
  if (!members.test(0)) return false;
  auto elems = members.to_indices();
  for (int a : elems) {
    if (!members.test(g.inverse(a))) return false;
    for (int b : elems)
      if (!members.test(g.op(a, b))) return false;
  }
  return true;
}

// --- GroupMap ----------------------------------------------------------------

bool GroupMap::is_identity() const {
  bool ok = true;
  domain.members.for_each([&](int x) {
    if (img[x] != x) ok = false;
  });
  return ok;
}

Bitset GroupMap::image_bits() const {
  Bitset b(domain.parent->order());
  domain.members.for_each([&](int x) { b.set(img[x]); });
  return b;
}

GroupMap GroupMap::after(const GroupMap& inner) const {
  if (!inner.image_bits().subset_of(domain.members))
    throw precondition_error("maps are not composable");
  GroupMap r;
  r.domain = inner.domain;
  r.codomain = codomain;
  r.img.assign(domain.parent->order(), -1);
  inner.domain.members.for_each([&](int x) { r.img[x] = img[inner.img[x]]; });
  return r;
}

GroupMap GroupMap::inverse() const {
  GroupMap r;
  r.domain = image_subgroup();
  r.codomain = domain;
  r.img.assign(domain.parent->order(), -1);
  domain.members.for_each([&](int x) { r.img[img[x]] = static_cast<int16_t>(x); });
  return r;
}

GroupMap GroupMap::restricted(const Subgroup& sub) const {
  if (!sub.members.subset_of(domain.members))
    throw precondition_error("restriction outside domain");
  GroupMap r;
  r.domain = sub;
  r.codomain = codomain;
  r.img.assign(domain.parent->order(), -1);
  sub.members.for_each([&](int x) { r.img[x] = img[x]; });
  return r;
}

void GroupMap::validate() const {
  const FiniteGroup& g = *domain.parent;
  auto elems = domain.elements();
  Bitset seen(g.order());
  for (int x : elems) {
    int y = img[x];
    if (y < 0 || !codomain.contains(y)) throw precondition_error("image outside codomain");
    if (seen.test(y)) throw precondition_error("map is not injective");
    seen.set(y);
  }
  for (int x : elems)
    for (int y : elems)
      if (img[g.op(x, y)] != g.op(img[x], img[y]))
        throw precondition_error("map is not multiplicative");
}

GroupMap GroupMap::identity(const Subgroup& dom, const Subgroup& cod) {
  GroupMap r;
  r.domain = dom;
  r.codomain = cod;
  r.img.assign(dom.parent->order(), -1);
  dom.members.for_each([&](int x) { r.img[x] = static_cast<int16_t>(x); });
  return r;
}

GroupMap GroupMap::conjugation(int g, const Subgroup& dom, const Subgroup& cod) {
  GroupMap r;
  r.domain = dom;
  r.codomain = cod;
  r.img.assign(dom.parent->order(), -1);
  const FiniteGroup& grp = *dom.parent;
  dom.members.for_each([&](int x) { r.img[x] = static_cast<int16_t>(grp.conj(g, x)); });
  return r;
}

int AutomorphismGroup::index_of(const GroupMap& m) const {
  for (int i = 0; i < static_cast<int>(maps.size()); ++i)
    if (maps[i].img == m.img) return i;
  return -1;
}

// --- subgroup generation and enumeration --------------------------------------

Subgroup generate_subgroup(const Subgroup& within, const std::vector<int>& seeds) {
  const FiniteGroup& g = *within.parent;
  Bitset b(g.order());
  b.set(0);
  std::vector<int> work;
  for (int s : seeds) {
    if (s < 0 || s >= g.order()) throw precondition_error("seed index out of range");
    if (!within.contains(s)) throw precondition_error("seed outside ambient subgroup");
    if (!b.test(s)) {
      b.set(s);
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    int a = work.back();
    work.pop_back();
    int ia = g.inverse(a);
    if (!b.test(ia)) {
      b.set(ia);
      work.push_back(ia);
    }
    for (int x : b.to_indices()) {
      for (int c : {g.op(a, x), g.op(x, a)}) {
        if (!b.test(c)) {
          b.set(c);
          work.push_back(c);
        }
      }
    }
  }
  return Subgroup(within.parent, std::move(b));
}

Subgroup generate_subgroup(GroupPtr g, const std::vector<int>& seeds) {
  return generate_subgroup(whole_subgroup(std::move(g)), seeds);
}

// Bottom-up cyclic extension: extend each known subgroup by elements of its
// normalizer. Complete for solvable subgroups, hence for every proper subgroup
// at the order cap of 64; the whole group is included explicitly.
std::vector<Subgroup> all_subgroups(const Subgroup& P) {
  if (P.order > limits().max_sylow)
    throw size_guard_error("all_subgroups input exceeds FUSELAB_MAX_SYLOW");
  std::map<Bitset, Subgroup> found;
  Subgroup triv = trivial_subgroup(P.parent);
  found.emplace(triv.members, triv);
  std::vector<Subgroup> work = {triv};
  while (!work.empty()) {
    Subgroup h = work.back();
    work.pop_back();
    Subgroup nz = normalizer(P, h);
    for (int x : nz.elements()) {
      if (h.contains(x)) continue;
      std::vector<int> seeds = h.elements();
      seeds.push_back(x);
      Subgroup k = generate_subgroup(P, seeds);
      if (found.emplace(k.members, k).second) {
        if (static_cast<int>(found.size()) > limits().max_subgroups)
          throw size_guard_error("subgroup count exceeds FUSELAB_MAX_SUBGROUPS");
        work.push_back(k);
      }
    }
  }
  found.emplace(P.members, P);
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& [bits, s] : found) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup normalizer(const Subgroup& A, const Subgroup& P) {
  if (!A.contains(P)) throw precondition_error("normalizer requires P <= A");
  const FiniteGroup& g = *A.parent;
  Bitset b(g.order());
  auto pel = P.elements();
  for (int a : A.elements()) {
    bool ok = true;
    for (int x : pel) {
      if (!P.contains(g.conj(a, x))) {
        ok = false;
        break;
      }
    }
    if (ok) b.set(a);
  }
  return Subgroup(A.parent, std::move(b));
}

Subgroup centralizer(const Subgroup& A, const Subgroup& P) {
  const FiniteGroup& g = *A.parent;
  Bitset b(g.order());
  auto pel = P.elements();
  for (int a : A.elements()) {
    bool ok = true;
    for (int x : pel) {
      if (g.op(a, x) != g.op(x, a)) {
        ok = false;
        break;
      }
    }
    if (ok) b.set(a);
  }
  return Subgroup(A.parent, std::move(b));
}

Subgroup center(const Subgroup& P) { return centralizer(P, P); }

std::vector<int> transporter(const Subgroup& A, const Subgroup& P, const Subgroup& Q) {
  const FiniteGroup& g = *A.parent;
  std::vector<int> out;
  auto pel = P.elements();
  for (int a : A.elements()) {
    bool ok = true;
    for (int x : pel) {
      if (!Q.contains(g.conj(a, x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

Subgroup sylow_subgroup(const Subgroup& A, int p) {
  if (!is_prime(p)) throw precondition_error("p must be prime");
  const FiniteGroup& g = *A.parent;
  const int target = p_part(A.order, p);
  Subgroup P = trivial_subgroup(A.parent);
  while (P.order < target) {
    // Some y in N_A(P)\P of p-power order extends P to a p-group of order p.|P|.
    Subgroup nz = normalizer(A, P);
    bool grew = false;
    for (int y : nz.elements()) {
      if (P.contains(y) || !is_p_element(g, y, p)) continue;
      std::vector<int> seeds = P.elements();
      seeds.push_back(y);
      Subgroup bigger = generate_subgroup(A, seeds);
      if (bigger.order == p_part(bigger.order, p)) {
        P = bigger;
        grew = true;
        break;
      }
    }
    if (!grew) throw error("sylow growth stalled; ambient set is not a subgroup?");
  }
  return P;
}

Subgroup sylow_subgroup(GroupPtr g, int p) { return sylow_subgroup(whole_subgroup(std::move(g)), p); }

bool is_normal_in(const Subgroup& N, const Subgroup& A) {
  if (!A.contains(N)) return false;
  const FiniteGroup& g = *A.parent;
  for (int a : A.elements())
    for (int x : N.elements())
      if (!N.contains(g.conj(a, x))) return false;
  return true;
}

Subgroup conjugate_subgroup(int g, const Subgroup& P) {
  const FiniteGroup& grp = *P.parent;
  Bitset b(grp.order());
  P.members.for_each([&](int x) { b.set(grp.conj(g, x)); });
  return Subgroup(P.parent, std::move(b));
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) {
  return Subgroup(A.parent, A.members & B.members);
}

Subgroup subgroup_product(const Subgroup& A, const Subgroup& B) {
  const FiniteGroup& g = *A.parent;
  Bitset b(g.order());
  for (int a : A.elements())
    for (int x : B.elements()) b.set(g.op(a, x));
  Subgroup r(A.parent, std::move(b));
  if (!is_closed_subgroup(g, r.members)) throw precondition_error("product set is not a subgroup");
  return r;
}

Subgroup normal_closure(const Subgroup& A, const std::vector<int>& seeds) {
  const FiniteGroup& g = *A.parent;
  std::vector<int> closed;
  for (int s : seeds)
    for (int a : A.elements()) closed.push_back(g.conj(a, s));
  return generate_subgroup(A, closed);
}

// --- quotient ----------------------------------------------------------------

QuotientGroup quotient_group(const Subgroup& A, const Subgroup& N) {
  if (!is_normal_in(N, A)) throw precondition_error("quotient by a non-normal subgroup");
  const FiniteGroup& g = *A.parent;
  std::vector<uint16_t> proj(g.order(), 0xFFFF);
  std::vector<uint16_t> reps;
  auto nel = N.elements();
  for (int a : A.elements()) {
    if (proj[a] != 0xFFFF) continue;
    int rep = a;
    std::vector<int> coset;
    for (int x : nel) {
      int e = g.op(a, x);
      coset.push_back(e);
      rep = std::min(rep, e);
    }
    uint16_t id = static_cast<uint16_t>(reps.size());
    reps.push_back(static_cast<uint16_t>(rep));
    for (int e : coset) proj[e] = id;
  }
  // Sort cosets by representative; identity coset has representative 0 and stays first.
  std::vector<int> order(reps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return reps[x] < reps[y]; });
  std::vector<uint16_t> newid(reps.size());
  for (size_t i = 0; i < order.size(); ++i) newid[order[i]] = static_cast<uint16_t>(i);
  for (int a : A.elements()) proj[a] = newid[proj[a]];
  std::vector<uint16_t> sorted_reps(reps.size());
  for (size_t i = 0; i < order.size(); ++i) sorted_reps[i] = reps[order[i]];

  const int m = static_cast<int>(sorted_reps.size());
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) table[i][j] = proj[g.op(sorted_reps[i], sorted_reps[j])];
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    const std::string& l = g.label(sorted_reps[i]);
    labels[i] = (l.empty() ? "g" + std::to_string(sorted_reps[i]) : l) + "N";
  }
  QuotientGroup q;
  q.group = FiniteGroup::from_table(table, std::move(labels),
                                    A.parent->name().empty() ? "quotient"
                                                             : A.parent->name() + "/N");
  q.proj = std::move(proj);
  q.rep = std::move(sorted_reps);
  return q;
}

// --- automorphisms -----------------------------------------------------------

namespace {

struct AutSearch {
  const FiniteGroup& g;
  const Subgroup& P;
  std::vector<int> gens;                 // generating sequence of P
  std::vector<int> cls;                  // conjugacy class id within P
  std::vector<int> clsize;
  std::vector<std::vector<int16_t>> results;

  // Extends the partial map on <gens[0..k-1]> by gens[k] -> y; returns the map on
  // <gens[0..k]> or nothing if inconsistent. The closure walk checks every edge,
  // which makes a conflict-free map automatically multiplicative.
  std::optional<std::vector<int16_t>> extend(const std::vector<int16_t>& base, int k, int y) {
    std::vector<int16_t> m = base;
    if (m[gens[k]] != -1) return m[gens[k]] == y ? std::optional(m) : std::nullopt;
    m[gens[k]] = static_cast<int16_t>(y);
    Bitset seen(g.order());
    std::vector<int> queue = {0};
    seen.set(0);
    size_t qi = 0;
    while (qi < queue.size()) {
      int a = queue[qi++];
      for (int i = 0; i <= k; ++i) {
        int b = g.op(a, gens[i]);
        int fb = g.op(m[a], m[gens[i]]);
        if (m[b] == -1) {
          m[b] = static_cast<int16_t>(fb);
        } else if (m[b] != fb) {
          return std::nullopt;
        }
        if (!seen.test(b)) {
          seen.set(b);
          queue.push_back(b);
        }
      }
    }
    // injectivity on the layer
    Bitset im(g.order());
    for (int a : queue) {
      if (im.test(m[a])) return std::nullopt;
      im.set(m[a]);
    }
    return m;
  }

  void search(const std::vector<int16_t>& m, int k) {
    if (k == static_cast<int>(gens.size())) {
      results.push_back(m);
      return;
    }
    int gk = gens[k];
    for (int y : P.elements()) {
      if (g.element_order(y) != g.element_order(gk)) continue;
      if (cls[y] >= 0 && clsize[cls[y]] != clsize[cls[gk]]) continue;
      if (auto next = extend(m, k, y)) search(*next, k + 1);
    }
  }
};

}  // namespace

AutomorphismGroup automorphism_group(const Subgroup& P) {
  if (P.order > limits().max_sylow)
    throw size_guard_error("automorphism_group input exceeds FUSELAB_MAX_SYLOW");
  const FiniteGroup& g = *P.parent;
  AutSearch s{g, P, {}, std::vector<int>(g.order(), -1), {}, {}};
  // conjugacy classes within P, for pruning
  {
    int nc = 0;
    for (int x : P.elements()) {
      if (s.cls[x] >= 0) continue;
      int count = 0;
      for (int a : P.elements()) {
        int y = g.conj(a, x);
        if (s.cls[y] < 0) {
          s.cls[y] = nc;
          ++count;
        }
      }
      s.clsize.push_back(count);
      ++nc;
    }
  }
  // greedy generating sequence with layer subgroups
  Subgroup h = trivial_subgroup(P.parent);
  for (int x : P.elements()) {
    if (h.contains(x)) continue;
    s.gens.push_back(x);
    std::vector<int> seeds = h.elements();
    seeds.push_back(x);
    h = generate_subgroup(P, seeds);
    if (h.order == P.order) break;
  }
  std::vector<int16_t> init(g.order(), -1);
  init[0] = 0;
  if (s.gens.empty())
    s.results.push_back(init);  // trivial group
  else
    s.search(init, 0);

  AutomorphismGroup out;
  out.base = P;
  for (auto& m : s.results) {
    GroupMap gm;
    gm.domain = P;
    gm.codomain = P;
    gm.img = std::move(m);
    // clear scratch entries outside P left by the closure walk
    for (int x = 0; x < g.order(); ++x)
      if (!P.contains(x)) gm.img[x] = -1;
    out.maps.push_back(std::move(gm));
  }
  std::sort(out.maps.begin(), out.maps.end());
  // composition table; identity sorts first
  const int n = static_cast<int>(out.maps.size());
  std::map<std::vector<int16_t>, int> index;
  for (int i = 0; i < n; ++i) index.emplace(out.maps[i].img, i);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[i][j] = index.at(out.maps[i].after(out.maps[j]).img);
  out.table = FiniteGroup::from_table(table, {}, "Aut");
  return out;
}

// --- cores, residuals, p-solvability -----------------------------------------

namespace {

// Join of all normal closures of single classes that stay within the predicate.
template <typename Pred>
Subgroup join_of_normal_parts(const Subgroup& A, Pred keep) {
  const FiniteGroup& g = *A.parent;
  Bitset gens(g.order());
  gens.set(0);
  std::vector<char> done(g.order(), 0);
  for (int x : A.elements()) {
    if (done[x]) continue;
    std::vector<int> cls;
    for (int a : A.elements()) {
      int y = g.conj(a, x);
      if (!done[y]) {
        done[y] = 1;
        cls.push_back(y);
      }
    }
    Subgroup closure = generate_subgroup(A, cls);
    if (keep(closure)) gens |= closure.members;
  }
  return generate_subgroup(A, Bitset(gens).to_indices());
}

}  // namespace

Subgroup p_core(const Subgroup& A, int p) {
  return join_of_normal_parts(A, [&](const Subgroup& s) { return s.order == p_part(s.order, p); });
}

Subgroup p_prime_core(const Subgroup& A, int p) {
  return join_of_normal_parts(A, [&](const Subgroup& s) { return s.order % p != 0; });
}

Subgroup p_residual(const Subgroup& A, int p) {
  // O^p(A) = <all p'-elements>
  const FiniteGroup& g = *A.parent;
  std::vector<int> seeds;
  for (int x : A.elements())
    if (g.element_order(x) % p != 0) seeds.push_back(x);
  return generate_subgroup(A, seeds);
}

Subgroup p_prime_residual(const Subgroup& A, int p) {
  // O^{p'}(A) = <all p-elements>
  const FiniteGroup& g = *A.parent;
  std::vector<int> seeds;
  for (int x : A.elements())
    if (is_p_element(g, x, p)) seeds.push_back(x);
  return generate_subgroup(A, seeds);
}

PSolvability p_solvable_series(const Subgroup& A, int p) {
  PSolvability out;
  Subgroup N = trivial_subgroup(A.parent);
  out.series.push_back(N);
  bool take_p = true;
  int stalled = 0;
  while (N.order < A.order) {
    QuotientGroup q = quotient_group(A, N);
    Subgroup qw = whole_subgroup(q.group);
    Subgroup core = take_p ? p_core(qw, p) : p_prime_core(qw, p);
    take_p = !take_p;
    if (core.order == 1) {
      if (++stalled >= 2) {
        out.solvable = false;
        return out;
      }
      continue;
    }
    stalled = 0;
    // pull the core back to a subgroup of A
    Bitset pre(A.parent->order());
    for (int a : A.elements())
      if (core.contains(q.proj[a])) pre.set(a);
    N = Subgroup(A.parent, std::move(pre));
    out.series.push_back(N);
  }
  out.solvable = true;
  return out;
}

// --- isomorphism search --------------------------------------------------------

namespace {

struct IsoSearch {
  const FiniteGroup& ga;
  const FiniteGroup& gb;
  const Subgroup& A;
  const Subgroup& B;
  std::vector<int> gens;
  std::optional<std::vector<uint16_t>> found;

  std::optional<std::vector<int>> extend(const std::vector<int>& base, int k, int y) {
    std::vector<int> m = base;
    if (m[gens[k]] != -1) return m[gens[k]] == y ? std::optional(m) : std::nullopt;
    m[gens[k]] = y;
    std::vector<int> queue = {0};
    Bitset seen(ga.order());
    seen.set(0);
    size_t qi = 0;
    while (qi < queue.size()) {
      int a = queue[qi++];
      for (int i = 0; i <= k; ++i) {
        int b = ga.op(a, gens[i]);
        int fb = gb.op(m[a], m[gens[i]]);
        if (m[b] == -1)
          m[b] = fb;
        else if (m[b] != fb)
          return std::nullopt;
        if (!seen.test(b)) {
          seen.set(b);
          queue.push_back(b);
        }
      }
    }
    Bitset im(gb.order());
    for (int a : queue) {
      if (im.test(m[a])) return std::nullopt;
      im.set(m[a]);
    }
    return m;
  }

  void search(const std::vector<int>& m, int k) {
    if (found) return;
    if (k == static_cast<int>(gens.size())) {
      std::vector<uint16_t> r(ga.order(), 0xFFFF);
      A.members.for_each([&](int x) { r[x] = static_cast<uint16_t>(m[x]); });
      found = r;
      return;
    }
    int gk = gens[k];
    for (int y : B.elements()) {
      if (gb.element_order(y) != ga.element_order(gk)) continue;
      if (auto next = extend(m, k, y)) search(*next, k + 1);
      if (found) return;
    }
  }
};

}  // namespace

std::optional<std::vector<uint16_t>> find_isomorphism(const Subgroup& A, const Subgroup& B) {
  if (A.order != B.order) return std::nullopt;
  IsoSearch s{*A.parent, *B.parent, A, B, {}, std::nullopt};
  Subgroup h = trivial_subgroup(A.parent);
  for (int x : A.elements()) {
    if (h.contains(x)) continue;
    s.gens.push_back(x);
    std::vector<int> seeds = h.elements();
    seeds.push_back(x);
    h = generate_subgroup(A, seeds);
    if (h.order == A.order) break;
  }
  std::vector<int> init(A.parent->order(), -1);
  init[0] = 0;
  if (s.gens.empty()) {
    std::vector<uint16_t> r(A.parent->order(), 0xFFFF);
    r[0] = 0;
    return r;
  }
  s.search(init, 0);
  return s.found;
}

}  // namespace fuselab

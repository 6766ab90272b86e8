#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "fuselab/catalog.hpp"
#include "fuselab/group.hpp"

using namespace fuselab;

namespace {

GroupPtr catalog_group(const std::string& name) {
  const GroupSpec* spec = catalog_entry(name);
  REQUIRE(spec != nullptr);
  return load_group(*spec);
}

int element_of(GroupPtr g, const std::string& cycles) {
  auto perm = parse_permutation_cycles(cycles, g->permutation_degree());
  int e = g->element_of_permutation(perm);
  REQUIRE(e >= 0);
  return e;
}

// independent oracle: every subset closure, feasible up to order 16
std::set<Bitset> brute_force_subgroups(const Subgroup& P) {
  auto elems = P.elements();
  const int n = static_cast<int>(elems.size());
  REQUIRE(n <= 16);
  std::set<Bitset> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> seeds;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) seeds.push_back(elems[i]);
    out.insert(generate_subgroup(P, seeds).members);
  }
  return out;
}

// independent oracle: count bijections of P that are homomorphisms
int brute_force_automorphism_count(const Subgroup& P) {
  auto elems = P.elements();
  REQUIRE(elems.size() <= 8);
  std::vector<int> pos(elems.size());
  std::iota(pos.begin(), pos.end(), 0);
  const FiniteGroup& g = *P.parent;
  std::map<int, int> rank;
  for (size_t i = 0; i < elems.size(); ++i) rank[elems[i]] = static_cast<int>(i);
  int count = 0;
  do {
    if (elems[pos[rank[0]]] != 0) continue;
    bool hom = true;
    for (size_t i = 0; i < elems.size() && hom; ++i)
      for (size_t j = 0; j < elems.size(); ++j) {
        int lhs = elems[pos[rank[g.op(elems[i], elems[j])]]];
        int rhs = g.op(elems[pos[i]], elems[pos[j]]);
        if (lhs != rhs) {
          hom = false;
          break;
        }
      }
    if (hom) ++count;
  } while (std::next_permutation(pos.begin(), pos.end()));
  return count;
}

}  // namespace

TEST_CASE("table validation rejects malformed input") {
  CHECK_THROWS_AS(FiniteGroup::from_table({{1, 0}, {0, 1}}), validation_error);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), validation_error);
  // Z/4 with a corrupted entry breaking associativity but keeping rows Latin
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1, 2, 3},
                                           {1, 2, 3, 0},
                                           {2, 3, 0, 1},
                                           {3, 0, 2, 1}}),
                  validation_error);
  GroupPtr c2 = FiniteGroup::from_table({{0, 1}, {1, 0}});
  CHECK(c2->order() == 2);
  CHECK(c2->inverse(1) == 1);
}

TEST_CASE("permutation closure builds the expected orders") {
  CHECK(catalog_group("C4")->order() == 4);
  CHECK(catalog_group("D8")->order() == 8);
  CHECK(catalog_group("S4")->order() == 24);
  CHECK(catalog_group("S5")->order() == 120);
  CHECK(catalog_group("A5")->order() == 60);
  CHECK(catalog_group("A6")->order() == 360);
  CHECK(catalog_group("SL(2,3)")->order() == 24);
  CHECK(catalog_group("GL(3,2)")->order() == 168);
  CHECK(catalog_group("Q8")->order() == 8);
}

TEST_CASE("generate_subgroup") {
  GroupPtr s4 = catalog_group("S4");
  CHECK(generate_subgroup(s4, {}).order == 1);

  GroupPtr c4 = catalog_group("C4");
  int gen = element_of(c4, "(1 2 3 4)");
  CHECK(generate_subgroup(c4, {gen}).order == 4);

  // V4 inside S4, closure by hand: {e, (12)(34), (13)(24), (14)(23)}
  int a = element_of(s4, "(1 2)(3 4)");
  int b = element_of(s4, "(1 3)(2 4)");
  Subgroup v4 = generate_subgroup(s4, {a, b});
  CHECK(v4.order == 4);
  CHECK(v4.contains(element_of(s4, "(1 4)(2 3)")));
  CHECK(v4.contains(0));
}

TEST_CASE("all_subgroups matches brute force") {
  GroupPtr v4g = catalog_group("V4");
  auto subs = all_subgroups(whole_subgroup(v4g));
  CHECK(subs.size() == 5);
  std::set<Bitset> got;
  for (const auto& s : subs) got.insert(s.members);
  CHECK(got == brute_force_subgroups(whole_subgroup(v4g)));

  GroupPtr d8 = catalog_group("D8");
  auto d8subs = all_subgroups(whole_subgroup(d8));
  CHECK(d8subs.size() == 10);
  std::set<Bitset> got8;
  for (const auto& s : d8subs) got8.insert(s.members);
  CHECK(got8 == brute_force_subgroups(whole_subgroup(d8)));

  GroupPtr d16 = catalog_group("D16");
  auto d16subs = all_subgroups(whole_subgroup(d16));
  std::set<Bitset> got16;
  for (const auto& s : d16subs) got16.insert(s.members);
  CHECK(got16 == brute_force_subgroups(whole_subgroup(d16)));

  // sorted by (order, bitset), trivial first, whole last
  CHECK(d8subs.front().order == 1);
  CHECK(d8subs.back().order == 8);
  CHECK(std::is_sorted(d8subs.begin(), d8subs.end(),
                       [](const Subgroup& x, const Subgroup& y) { return x < y; }));

  // A5 has order 60 <= 64: enumeration must include the whole group and
  // find only 1 and A5 normal
  GroupPtr a5 = catalog_group("A5");
  auto a5subs = all_subgroups(whole_subgroup(a5));
  int normal = 0;
  for (const auto& s : a5subs)
    if (is_normal_in(s, whole_subgroup(a5))) ++normal;
  CHECK(normal == 2);
  CHECK(a5subs.back().order == 60);
  CHECK(a5subs.size() == 59);  // known subgroup count of A5
}

TEST_CASE("normalizer, centralizer, transporter") {
  GroupPtr s4 = catalog_group("S4");
  Subgroup whole = whole_subgroup(s4);
  Subgroup v4 = generate_subgroup(
      s4, {element_of(s4, "(1 2)(3 4)"), element_of(s4, "(1 3)(2 4)")});
  CHECK(normalizer(whole, v4).order == 24);   // N_{S4}(V4) = S4
  CHECK(centralizer(whole, v4).members == v4.members);  // C_{S4}(V4) = V4

  Subgroup d8 = sylow_subgroup(whole, 2);
  CHECK(normalizer(whole, d8).order == 8);
  CHECK(d8.contains(v4));
  CHECK(centralizer(d8, v4).members == v4.members);
  CHECK(normalizer(d8, d8).members == d8.members);

  // index-2 subgroups are normal: N_{D8}(C4) = D8
  for (const auto& s : all_subgroups(d8))
    if (s.order == 4) CHECK(normalizer(d8, s).order == 8);

  // T_{S4}(<(12)(34)>, V4) has all 24 elements
  Subgroup z = generate_subgroup(s4, {element_of(s4, "(1 2)(3 4)")});
  CHECK(transporter(whole, z, v4).size() == 24);
  CHECK(transporter(whole, trivial_subgroup(s4), v4).size() == 24);
  // T_G(P,P) contains N_G(P) and conjugation cannot shrink P
  auto t = transporter(whole, v4, v4);
  CHECK(t.size() == normalizer(whole, v4).order);
}

TEST_CASE("sylow subgroups") {
  GroupPtr s4 = catalog_group("S4");
  CHECK(sylow_subgroup(s4, 2).order == 8);
  CHECK(sylow_subgroup(s4, 3).order == 3);

  GroupPtr s3 = catalog_group("S3");
  Subgroup syl3 = sylow_subgroup(s3, 3);
  CHECK(syl3.order == 3);
  CHECK(syl3.contains(element_of(s3, "(1 2 3)")));

  GroupPtr a6 = catalog_group("A6");
  Subgroup syl = sylow_subgroup(a6, 2);
  CHECK(syl.order == 8);
  // isomorphism type: dihedral of order 8
  GroupPtr d8 = catalog_group("D8");
  CHECK(find_isomorphism(syl, whole_subgroup(d8)).has_value());
  GroupPtr q8 = catalog_group("Q8");
  CHECK(!find_isomorphism(syl, whole_subgroup(q8)).has_value());

  // sylow for p not dividing the order is trivial
  CHECK(sylow_subgroup(s4, 5).order == 1);
  // determinism
  CHECK(sylow_subgroup(s4, 2).members == sylow_subgroup(s4, 2).members);
}

TEST_CASE("quotient groups") {
  GroupPtr s4 = catalog_group("S4");
  Subgroup whole = whole_subgroup(s4);
  QuotientGroup top = quotient_group(whole, whole);
  CHECK(top.group->order() == 1);
  QuotientGroup bottom = quotient_group(whole, trivial_subgroup(s4));
  CHECK(bottom.group->order() == 24);
  CHECK(find_isomorphism(whole_subgroup(bottom.group), whole).has_value());

  Subgroup v4 = p_core(whole, 2);
  QuotientGroup q = quotient_group(whole, v4);
  CHECK(q.group->order() == 6);
  GroupPtr s3 = catalog_group("S3");
  CHECK(find_isomorphism(whole_subgroup(q.group), whole_subgroup(s3)).has_value());
  bool abelian = true;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (q.group->op(a, b) != q.group->op(b, a)) abelian = false;
  CHECK(!abelian);

  Subgroup c4 = generate_subgroup(s4, {element_of(s4, "(1 2 3 4)")});
  CHECK_THROWS_AS(quotient_group(whole, c4), precondition_error);
}

TEST_CASE("automorphism groups against bijection scan") {
  GroupPtr c2 = catalog_group("C2");
  CHECK(automorphism_group(whole_subgroup(c2)).maps.size() == 1);

  GroupPtr v4 = catalog_group("V4");
  AutomorphismGroup a = automorphism_group(whole_subgroup(v4));
  CHECK(a.maps.size() == 6);
  CHECK(a.maps.size() == static_cast<size_t>(brute_force_automorphism_count(whole_subgroup(v4))));

  GroupPtr d8 = catalog_group("D8");
  AutomorphismGroup ad8 = automorphism_group(whole_subgroup(d8));
  CHECK(ad8.maps.size() == 8);
  CHECK(ad8.maps.size() ==
        static_cast<size_t>(brute_force_automorphism_count(whole_subgroup(d8))));
  CHECK(ad8.maps[0].is_identity());
  CHECK(ad8.table->order() == 8);

  GroupPtr c8 = catalog_group("C8");
  CHECK(automorphism_group(whole_subgroup(c8)).maps.size() == 4);
}

TEST_CASE("cores and residuals") {
  GroupPtr s4 = catalog_group("S4");
  Subgroup whole = whole_subgroup(s4);

  // oracle route: filter the full subgroup list
  auto subs = all_subgroups(whole);
  Subgroup best_core = trivial_subgroup(s4);
  for (const auto& s : subs)
    if (is_normal_in(s, whole) && s.order == p_part(s.order, 2) && s.order > best_core.order)
      best_core = s;
  CHECK(p_core(whole, 2).members == best_core.members);
  CHECK(p_core(whole, 2).order == 4);  // O_2(S4) = V4

  Subgroup best_res = whole;
  for (const auto& s : subs) {
    if (!is_normal_in(s, whole)) continue;
    int q = whole.order / s.order;
    if (q == p_part(q, 2) && s.order < best_res.order) best_res = s;
  }
  CHECK(p_residual(whole, 2).members == best_res.members);
  CHECK(p_residual(whole, 2).order == 12);  // O^2(S4) = A4
  CHECK(p_prime_residual(whole, 2).order == 24);  // no odd quotient

  GroupPtr a5 = catalog_group("A5");
  CHECK(p_core(whole_subgroup(a5), 2).order == 1);
  CHECK(p_prime_core(whole_subgroup(a5), 2).order == 1);

  GroupPtr d8 = catalog_group("D8");
  CHECK(p_core(whole_subgroup(d8), 2).order == 8);
  CHECK(p_residual(whole_subgroup(d8), 2).order == 1);
}

TEST_CASE("p-solvability") {
  GroupPtr d8 = catalog_group("D8");
  CHECK(p_solvable_series(whole_subgroup(d8), 2).solvable);

  GroupPtr s4 = catalog_group("S4");
  PSolvability ps = p_solvable_series(whole_subgroup(s4), 2);
  CHECK(ps.solvable);
  REQUIRE(ps.series.size() == 4);  // 1 < V4 < A4 < S4
  CHECK(ps.series[0].order == 1);
  CHECK(ps.series[1].order == 4);
  CHECK(ps.series[2].order == 12);
  CHECK(ps.series[3].order == 24);

  GroupPtr a5 = catalog_group("A5");
  CHECK(!p_solvable_series(whole_subgroup(a5), 2).solvable);
  CHECK(!p_solvable_series(whole_subgroup(a5), 3).solvable);
  CHECK(p_solvable_series(whole_subgroup(s4), 3).solvable);
}

TEST_CASE("group map algebra") {
  GroupPtr s4 = catalog_group("S4");
  Subgroup v4 = generate_subgroup(
      s4, {element_of(s4, "(1 2)(3 4)"), element_of(s4, "(1 3)(2 4)")});
  int g = element_of(s4, "(1 2 3)");
  GroupMap c = GroupMap::conjugation(g, v4, v4);
  c.validate();
  CHECK(c.image_bits() == v4.members);
  GroupMap cc = c.after(c).after(c);
  CHECK(cc.is_identity());
  CHECK(c.inverse().after(c).is_identity());
  GroupMap r = c.restricted(generate_subgroup(s4, {element_of(s4, "(1 2)(3 4)")}));
  CHECK(r.domain.order == 2);
  r.validate();
}

TEST_CASE("size guards") {
  GroupPtr a6 = catalog_group("A6");
  CHECK_THROWS_AS(all_subgroups(whole_subgroup(a6)), size_guard_error);
  CHECK_THROWS_AS(automorphism_group(whole_subgroup(a6)), size_guard_error);
}

TEST_CASE("containment preconditions") {
  GroupPtr s4 = catalog_group("S4");
  Subgroup d8 = sylow_subgroup(s4, 2);
  Subgroup c3 = sylow_subgroup(s4, 3);
  CHECK_THROWS_AS(normalizer(d8, c3), precondition_error);
  CHECK_THROWS_AS(generate_subgroup(d8, {c3.elements()[1]}), precondition_error);
}

TEST_CASE("degenerate groups") {
  GroupPtr one = FiniteGroup::trivial();
  CHECK(one->order() == 1);
  CHECK(all_subgroups(whole_subgroup(one)).size() == 1);
  CHECK(sylow_subgroup(one, 2).order == 1);
  CHECK(automorphism_group(whole_subgroup(one)).maps.size() == 1);
  CHECK(p_solvable_series(whole_subgroup(one), 2).solvable);

  // abelian P: C_P(P) = Z(P) = P
  GroupPtr c12 = catalog_group("C12");
  Subgroup whole = whole_subgroup(c12);
  CHECK(center(whole).members == whole.members);
  CHECK(p_core(whole, 2).order == 4);  // O_p of an abelian group is its Sylow
}

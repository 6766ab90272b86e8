#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fuselab/catalog.hpp"
#include "fuselab/linking.hpp"
#include "fuselab/subsystem.hpp"

using namespace fuselab;

namespace {

GroupPtr catalog_group(const std::string& name) {
  const GroupSpec* spec = catalog_entry(name);
  REQUIRE(spec != nullptr);
  return load_group(*spec);
}

}  // namespace

TEST_CASE("linking system of C2") {
  LinkingSystem L = linking_of_group(catalog_group("C2"), 2);
  REQUIRE(L.objects.size() == 1);  // only S itself is centric
  CHECK(L.mor[0][0].size() == 2);  // Aut_L(S) = C2
  CHECK(check_linking_axioms(L).ok());
}

TEST_CASE("linking system of S4 at p=2") {
  LinkingSystem L = linking_of_group(catalog_group("S4"), 2);
  const FusionSystem& F = L.fusion;
  CHECK(L.objects.size() == 4);  // C4, two Kleins, D8

  // Z(D8) is not an object
  int zobj = F.object_index(center(F.sylow()).members);
  CHECK(L.object_position(zobj) == -1);

  // |Aut_L(V4)| = 24 for the normal Klein subgroup
  Subgroup v4 = p_core(L.ambient, 2);
  int pos = L.object_position(F.object_index(v4.members));
  REQUIRE(pos >= 0);
  CHECK(L.mor[pos][pos].size() == 24);

  LinkingReport rep = check_linking_axioms(L);
  CHECK(rep.composition_well_defined);
  CHECK(rep.composition_closed);
  CHECK(rep.delta_injective);
  CHECK(rep.pi_surjective);
  CHECK(rep.pi_delta_is_conjugation);
  CHECK(rep.cardinality_identity);
  CHECK(rep.centric_decomposition);

  // cardinality identity spot check: |Mor(P,Q)| = |Hom(P,Q)| |Z(P)|
  for (int i = 0; i < static_cast<int>(L.objects.size()); ++i)
    for (int j = 0; j < static_cast<int>(L.objects.size()); ++j) {
      auto homs = hom_set(F, F.object(L.objects[i]), F.object(L.objects[j]));
      CHECK(L.mor[i][j].size() == homs.size() * static_cast<size_t>(L.zp[i].order));
    }

  // distinguished inclusions and subgroups: iota_P is the class of 1, and
  // delta restricted to [[P]] embeds P into Aut_L(P)
  const FiniteGroup& g = *L.ambient.parent;
  for (int i = 0; i < static_cast<int>(L.objects.size()); ++i) {
    CHECK(L.iota(i) == L.rep_of(i, 0));
    auto dist = L.dist_subgroup(i);
    CHECK(dist.size() == static_cast<size_t>(F.object(L.objects[i]).order));  // injective
    for (int x : F.object(L.objects[i]).elements())
      for (int y : F.object(L.objects[i]).elements())
        CHECK(L.rep_of(i, g.op(x, y)) ==
              L.rep_of(i, g.op(L.rep_of(i, x), L.rep_of(i, y))));  // multiplicative
  }
}

TEST_CASE("linking systems of S5 and A6 pass the axioms") {
  for (const char* name : {"S5", "A6"}) {
    LinkingSystem L = linking_of_group(catalog_group(name), 2);
    CHECK_MESSAGE(check_linking_axioms(L).ok(), name);
  }
}

TEST_CASE("centralizer consequences") {
  // T = S: quotient trivial, abelian
  FusionSystem f = fusion_of_group(catalog_group("S4"), 2);
  CentralizerConsequences cs = centralizer_consequences(f, f);
  CHECK(cs.quotient_abelian);
  CHECK(cs.quotient_order == 1);

  // E = F_{V4}(A5) normal in F_{D8}(S5): T C_S(T)/T = 1
  FusionSystem f5 = fusion_of_group(catalog_group("S5"), 2);
  Subgroup a5 = p_residual(whole_subgroup(f5.parent()), 2);
  FusionSystem e5 = fusion_of_group_action(a5, 2, intersect(f5.sylow(), a5));
  CentralizerConsequences cc = centralizer_consequences(f5, e5);
  CHECK(cc.quotient_abelian);
  CHECK(cc.quotient_order == 1);
  CHECK(!cc.odd_case_applies);

  // p = 3: C_S(T) <= T
  FusionSystem f3 = fusion_of_group(catalog_group("S3"), 3);
  FusionSystem e3 = fusion_of_group_action(f3.sylow(), 3, f3.sylow());
  CentralizerConsequences c3 = centralizer_consequences(f3, e3);
  CHECK(c3.odd_case_applies);
  CHECK(c3.cs_inside_t);
  CHECK(c3.ok());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "fuselab/catalog.hpp"
#include "fuselab/subsystem.hpp"

using namespace fuselab;

namespace {

GroupPtr catalog_group(const std::string& name) {
  const GroupSpec* spec = catalog_entry(name);
  REQUIRE(spec != nullptr);
  return load_group(*spec);
}

FusionSystem system_of(const std::string& name, int p) {
  return fusion_of_group(catalog_group(name), p);
}

// E = F_{S cap N}(N) living inside F's parent
FusionSystem subsystem_over(const FusionSystem& F, const Subgroup& N) {
  return fusion_of_group_action(N, F.prime(), intersect(F.sylow(), N));
}

}  // namespace

TEST_CASE("hyperfocal subgroups") {
  FusionSystem f = system_of("S4", 2);
  Subgroup v4 = p_core(whole_subgroup(f.parent()), 2);
  CHECK(hyperfocal(f).members == v4.members);

  FusionSystem inner = fusion_of_group_action(f.sylow(), 2, f.sylow());
  CHECK(hyperfocal(inner).order == 1);

  FusionSystem f3 = system_of("S3", 3);
  CHECK(hyperfocal(f3).members == f3.sylow().members);
}

TEST_CASE("p-power index subsystems") {
  FusionSystem f = system_of("S4", 2);
  CHECK(fusion_equals(p_power_index_subsystem(f, f.sylow()), f));

  FusionSystem op = o_p_subsystem(f);
  Subgroup a4 = p_residual(whole_subgroup(f.parent()), 2);
  FusionSystem expect = fusion_of_group_action(a4, 2, op.sylow());
  CHECK(fusion_equals(op, expect));

  FusionSystem inner = fusion_of_group_action(f.sylow(), 2, f.sylow());
  FusionSystem op_inner = o_p_subsystem(inner);
  CHECK(is_trivial_system(op_inner));

  // hyp(F) <= U is required
  Subgroup z = center(f.sylow());
  CHECK_THROWS_AS(p_power_index_subsystem(f, z), precondition_error);
}

TEST_CASE("O^{p'} subsystems") {
  FusionSystem inner = fusion_of_group_action(system_of("S4", 2).sylow(), 2,
                                              system_of("S4", 2).sylow());
  CHECK(fusion_equals(o_pprime_subsystem(inner), inner));

  FusionSystem fa4 = system_of("A4", 2);
  FusionSystem opp = o_pprime_subsystem(fa4);
  FusionSystem innerV4 = fusion_of_group_action(fa4.sylow(), 2, fa4.sylow());
  CHECK(fusion_equals(opp, innerV4));

  FusionSystem f = system_of("S4", 2);
  CHECK(fusion_equals(o_pprime_subsystem(f), f));

  FusionSystem f3 = system_of("S3", 3);
  FusionSystem opp3 = o_pprime_subsystem(f3);
  FusionSystem innerC3 = fusion_of_group_action(f3.sylow(), 3, f3.sylow());
  CHECK(fusion_equals(opp3, innerC3));
}

TEST_CASE("chi-kernel subsystem on F_{V4}(A4)") {
  FusionSystem f = system_of("A4", 2);
  const Subgroup& v4 = f.sylow();
  int obj = f.object_index(v4.members);

  // Delta = C3, chi sends psi^k |-> k on Aut_F(V4) = C3
  GroupPtr c3 = load_group(*catalog_entry("C3"));
  CharacterData cd;
  cd.delta = c3;
  CompactMap gen;
  bool found = false;
  for (const auto& m : f.maps_from(obj)) {
    if (f.image_of(m) == v4.members && !f.is_identity(m)) {
      gen = m;
      found = true;
      break;
    }
  }
  REQUIRE(found);
  cd.chi[{obj, f.identity_map(obj).img}] = 0;
  cd.chi[{obj, gen.img}] = 1;
  cd.chi[{obj, f.compose(gen, gen).img}] = 2;
  FusionSystem f0 = subsystem_from_character(f, {obj}, cd);
  FusionSystem inner = fusion_of_group_action(v4, 2, v4);
  CHECK(fusion_equals(f0, inner));

  // Delta = 1 gives back F
  CharacterData triv;
  triv.delta = FiniteGroup::trivial();
  for (const auto& m : f.maps_from(obj)) triv.chi[{obj, m.img}] = 0;
  CHECK(fusion_equals(subsystem_from_character(f, {obj}, triv), f));

  // swapping two chi values breaks multiplicativity
  CharacterData bad = cd;
  bad.chi[{obj, gen.img}] = 2;
  CHECK_THROWS_AS(subsystem_from_character(f, {obj}, bad), precondition_error);
}

TEST_CASE("chi-kernel subsystem on F_{C3}(S3) at p=3") {
  FusionSystem f = system_of("S3", 3);
  int obj = f.object_index(f.sylow().members);
  GroupPtr c2 = load_group(*catalog_entry("C2"));
  CharacterData cd;
  cd.delta = c2;
  for (const auto& m : f.maps_from(obj))
    cd.chi[{obj, m.img}] = f.is_identity(m) ? 0 : 1;  // sign character
  FusionSystem f0 = subsystem_from_character(f, {obj}, cd);
  FusionSystem inner = fusion_of_group_action(f.sylow(), 3, f.sylow());
  CHECK(fusion_equals(f0, inner));
}

TEST_CASE("T-character construction") {
  // p=3, T = S = C3, E = F_{C3}(C3) normal in F = F_{C3}(S3), chi0 = sign
  FusionSystem f = system_of("S3", 3);
  FusionSystem e = fusion_of_group_action(f.sylow(), 3, f.sylow());
  int tobj = f.object_index(f.sylow().members);
  GroupPtr c2 = load_group(*catalog_entry("C2"));
  std::map<std::vector<uint16_t>, int> chi0;
  for (const auto& m : f.maps_from(tobj))
    if (f.image_of(m) == f.sylow().members) chi0[m.img] = f.is_identity(m) ? 0 : 1;
  FusionSystem f0 = subsystem_from_T_character(f, e, c2, chi0);
  CHECK(fusion_equals(f0, e));
  CHECK(fusion_equals(f0, o_pprime_subsystem(f)));

  // Delta = 1 rejected
  std::map<std::vector<uint16_t>, int> all_zero;
  for (const auto& m : f.maps_from(tobj))
    if (f.image_of(m) == f.sylow().members) all_zero[m.img] = 0;
  CHECK_THROWS_AS(subsystem_from_T_character(f, e, FiniteGroup::trivial(), all_zero),
                  precondition_error);

  // E = F_{V4}(A5) inside F = F_{D8}(S5): quotient is a 2-group, so a 2-element
  // Delta violates the order condition
  FusionSystem f5 = system_of("S5", 2);
  Subgroup a5 = p_residual(whole_subgroup(f5.parent()), 2);
  FusionSystem e5 = subsystem_over(f5, a5);
  int t5 = f5.object_index(e5.sylow().members);
  std::map<std::vector<uint16_t>, int> chi5;
  int assigned = 0;
  for (const auto& m : f5.maps_from(t5))
    if (f5.image_of(m) == e5.sylow().members) chi5[m.img] = (assigned++) % 2;
  CHECK_THROWS_AS(subsystem_from_T_character(f5, e5, c2, chi5), precondition_error);
}

TEST_CASE("quotient fusion systems") {
  FusionSystem f = system_of("S4", 2);
  // F/S is the trivial system
  QuotientFusion top = quotient_fusion(f, f.sylow());
  CHECK(is_trivial_system(top.system));

  // F/V4 lives over C2 with trivial automizer
  Subgroup v4 = p_core(whole_subgroup(f.parent()), 2);
  QuotientFusion qf = quotient_fusion(f, v4);
  CHECK(qf.system.sylow().order == 2);
  CHECK(qf.system.morphism_count() == 2);  // the trivial map and id_S
  CHECK(hom_set(qf.system, qf.system.sylow(), qf.system.sylow()).size() == 1);
  CHECK(is_saturated(qf.system).saturated);

  // not strongly closed: Z(D8)
  CHECK_THROWS_AS(quotient_fusion(f, center(f.sylow())), precondition_error);

  // hyp(F/T) = T.hyp(F)/T here: quotient has trivial hyperfocal
  CHECK(hyperfocal(qf.system).order == 1);
}

TEST_CASE("normality reports") {
  FusionSystem f = system_of("S4", 2);
  CHECK(normality_report(f, f).is_normal());

  FusionSystem fa4 = system_of("A4", 2);
  FusionSystem innerV4 = fusion_of_group_action(fa4.sylow(), 2, fa4.sylow());
  NormalityReport nr = normality_report(fa4, innerV4);
  CHECK(nr.strongly_closed);
  CHECK(nr.invariance);
  CHECK(nr.frattini);
  CHECK(nr.extension);

  // E = F_{V4}(A4) inside F = F_{D8}(S4)
  Subgroup a4 = p_residual(whole_subgroup(f.parent()), 2);
  FusionSystem e = subsystem_over(f, a4);
  CHECK(normality_report(f, e).is_normal());

  // the inner system over Z(D8) is not normal: Z is not strongly closed
  FusionSystem ez = fusion_of_group_action(center(f.sylow()), 2, center(f.sylow()));
  NormalityReport nz = normality_report(f, ez);
  CHECK(!nz.strongly_closed);
  CHECK(!nz.is_normal());

  // F_{V4}(V4) is normal in F_{D8}(S4): Aut_F(V4) = S3 supplies every
  // Frattini factor and Aut_E(V4) is trivial
  Subgroup v4 = p_core(whole_subgroup(f.parent()), 2);
  FusionSystem iv4 = fusion_of_group_action(v4, 2, v4);
  NormalityReport nv = normality_report(f, iv4);
  CHECK(nv.is_normal());

  // the inner system F_{D8}(D8) fails Frattini: fusion across V4 is not inner
  FusionSystem inner8 = fusion_of_group_action(f.sylow(), 2, f.sylow());
  NormalityReport ni = normality_report(f, inner8);
  CHECK(ni.strongly_closed);
  CHECK(ni.invariance);
  CHECK(!ni.frattini);
  CHECK(!ni.is_normal());
}

TEST_CASE("centralizer subsystems") {
  FusionSystem f = system_of("S4", 2);
  // C_F(1) = F
  FusionSystem cf1 = centralizer_subsystem(f, trivial_subgroup(f.parent()));
  CHECK(fusion_equals(cf1, f));

  // C_F(Z(S)) = F_{D8}(D8)
  FusionSystem cfz = centralizer_subsystem(f, center(f.sylow()));
  FusionSystem inner = fusion_of_group_action(f.sylow(), 2, f.sylow());
  CHECK(fusion_equals(cfz, inner));

  // C_F(<x>) inside F_{V4}(A4) is the trivial fusion over V4
  FusionSystem fa4 = system_of("A4", 2);
  auto subs = all_subgroups(fa4.sylow());
  for (const auto& x : subs) {
    if (x.order != 2) continue;
    FusionSystem c = centralizer_subsystem(fa4, x);
    CHECK(c.sylow().members == fa4.sylow().members);
    FusionSystem innerV4 = fusion_of_group_action(fa4.sylow(), 2, fa4.sylow());
    CHECK(fusion_equals(c, innerV4));
  }
}

TEST_CASE("centralizer of a subsystem") {
  // E = F over S: C_S(E) <= Z(S)
  FusionSystem f = system_of("S4", 2);
  Subgroup cse = centralizer_of_subsystem(f, f);
  CHECK(cse.members.subset_of(center(f.sylow()).members));

  // E = F = F_{C2}(C2): C_S(E) = C2
  FusionSystem fc2 = system_of("C2", 2);
  CHECK(centralizer_of_subsystem(fc2, fc2).order == 2);

  // E = F_{V4}(A5) normal in F_{D8}(S5): C_S(E) = 1
  FusionSystem f5 = system_of("S5", 2);
  Subgroup a5 = p_residual(whole_subgroup(f5.parent()), 2);
  FusionSystem e5 = subsystem_over(f5, a5);
  CHECK(centralizer_of_subsystem(f5, e5).order == 1);
}

TEST_CASE("O_p of a fusion system") {
  FusionSystem inner = fusion_of_group_action(system_of("S4", 2).sylow(), 2,
                                              system_of("S4", 2).sylow());
  CHECK(op_of_fusion(inner).order == 8);

  FusionSystem f = system_of("S4", 2);
  Subgroup v4 = p_core(whole_subgroup(f.parent()), 2);
  CHECK(op_of_fusion(f).members == v4.members);

  FusionSystem fa6 = system_of("A6", 2);
  CHECK(op_of_fusion(fa6).order == 1);
}

TEST_CASE("reduction") {
  FusionSystem inner = fusion_of_group_action(system_of("S4", 2).sylow(), 2,
                                              system_of("S4", 2).sylow());
  CHECK(is_trivial_system(reduction(inner)));

  FusionSystem f = system_of("S4", 2);
  CHECK(is_trivial_system(reduction(f)));

  FusionSystem fa6 = system_of("A6", 2);
  CHECK(is_reduced(fa6));
  CHECK(fusion_equals(reduction(fa6), fa6));
}

TEST_CASE("f_infinity chains") {
  FusionSystem triv = fusion_of_group(catalog_group("C2"), 2);
  FInfinity fi0 = f_infinity(fusion_of_group_action(trivial_subgroup(triv.parent()), 2,
                                                    trivial_subgroup(triv.parent())));
  CHECK(is_trivial_system(fi0.limit));

  FusionSystem f = system_of("S4", 2);
  FInfinity fi = f_infinity(f);
  CHECK(is_trivial_system(fi.limit));
  CHECK(fi.chain.systems.size() >= 3);  // S4 -> A4 -> V4 -> 1 cascade
  CHECK(fi.chain.labels.size() + 1 == fi.chain.systems.size());

  FusionSystem fa6 = system_of("A6", 2);
  FInfinity fia6 = f_infinity(fa6);
  CHECK(fusion_equals(fia6.limit, fa6));
  CHECK(fia6.chain.systems.size() == 1);
}

TEST_CASE("solvable reduction chain") {
  // E = F gives a chain of length zero
  FusionSystem f = system_of("S4", 2);
  SubsystemChain same = solvable_reduction_chain(f, f);
  CHECK(same.systems.size() == 1);
  CHECK(same.labels.empty());

  // E = F_{V4}(A5) normal in F = F_{D8}(S5): one p-power step down to V4
  FusionSystem f5 = system_of("S5", 2);
  Subgroup a5 = p_residual(whole_subgroup(f5.parent()), 2);
  FusionSystem e5 = subsystem_over(f5, a5);
  SubsystemChain chain = solvable_reduction_chain(f5, e5);
  REQUIRE(chain.systems.size() == 2);
  CHECK(chain.labels[0] == "p-power index");
  CHECK(chain.systems[1].sylow().members == e5.sylow().members);
  CHECK(fusion_contains(chain.systems[1], e5));

  // E = F_{C3}(C3) normal in F_{C3}(S3) at p=3: one prime-to-p step
  FusionSystem f3 = system_of("S3", 3);
  FusionSystem e3 = fusion_of_group_action(f3.sylow(), 3, f3.sylow());
  SubsystemChain c3 = solvable_reduction_chain(f3, e3);
  REQUIRE(c3.systems.size() == 2);
  CHECK(c3.labels[0] == "index prime to p");
  CHECK(fusion_equals(c3.systems[1], e3));
}

TEST_CASE("two-step reduction chain for the trivial fusion over V4") {
  // E = F_{V4}(V4) inside F = F_{D8}(S4): Aut_F(T)/Aut_E(T) = S3 needs one
  // p-power step and one prime-to-p step
  FusionSystem f = system_of("S4", 2);
  Subgroup v4 = p_core(whole_subgroup(f.parent()), 2);
  FusionSystem e = fusion_of_group_action(v4, 2, v4);
  REQUIRE(normality_report(f, e).is_normal());
  SubsystemChain chain = solvable_reduction_chain(f, e);
  REQUIRE(chain.systems.size() == 3);
  CHECK(chain.labels[0] == "p-power index");
  CHECK(chain.labels[1] == "index prime to p");
  CHECK(fusion_equals(chain.systems.back(), e));
  SolvReport rep = verify_solv(f, e);
  CHECK(rep.limits_equal);
  CHECK(rep.cross_check);
}

TEST_CASE("prime-to-p step with several centric objects: Q8 inside SL(2,3)") {
  FusionSystem f = system_of("SL(2,3)", 2);
  FusionSystem e = fusion_of_group_action(f.sylow(), 2, f.sylow());
  REQUIRE(normality_report(f, e).is_normal());
  SubsystemChain chain = solvable_reduction_chain(f, e);
  REQUIRE(chain.systems.size() == 2);
  CHECK(chain.labels[0] == "index prime to p");
  CHECK(fusion_equals(chain.systems.back(), e));
  CHECK(chain.systems.back().morphism_count() == 12);
  SolvReport rep = verify_solv(f, e);
  CHECK(rep.limits_equal);
  CHECK(rep.cross_check);
}

TEST_CASE("verify_solv end to end") {
  FusionSystem f5 = system_of("S5", 2);
  Subgroup a5 = p_residual(whole_subgroup(f5.parent()), 2);
  FusionSystem e5 = subsystem_over(f5, a5);
  SolvReport rep = verify_solv(f5, e5);
  CHECK(rep.hyp_a_p_solvable);
  CHECK(rep.hyp_b_out_p_solvable);
  CHECK(rep.limits_equal);
  CHECK(rep.cross_check);
  CHECK(is_trivial_system(rep.f_limit));

  FusionSystem f3 = system_of("S3", 3);
  FusionSystem e3 = fusion_of_group_action(f3.sylow(), 3, f3.sylow());
  SolvReport rep3 = verify_solv(f3, e3);
  CHECK(rep3.limits_equal);
  CHECK(rep3.cross_check);

  // trivially, E = F
  SolvReport same = verify_solv(f5, f5);
  CHECK(same.limits_equal);
}

TEST_CASE("SL(2,3) at p=2: quaternion Sylow") {
  FusionSystem f = system_of("SL(2,3)", 2);
  CHECK(f.sylow().order == 8);  // Q8
  // O^2(SL(2,3)) = SL(2,3), so hyp(F) is all of Q8
  CHECK(hyperfocal(f).members == f.sylow().members);
  // O^{2'}(F) = F_{Q8}(Q8): the C3 on top acts with odd order everywhere
  FusionSystem inner = fusion_of_group_action(f.sylow(), 2, f.sylow());
  CHECK(fusion_equals(o_pprime_subsystem(f), inner));
  CHECK(op_of_fusion(f).members == f.sylow().members);  // Q8 normal in SL(2,3)
  CHECK(is_trivial_system(f_infinity(f).limit));
}

TEST_CASE("A6 and GL(3,2) realize the same fusion system over D8") {
  FusionSystem fa6 = system_of("A6", 2);
  FusionSystem fgl = system_of("GL(3,2)", 2);
  REQUIRE(fa6.sylow().order == 8);
  REQUIRE(fgl.sylow().order == 8);
  auto base = find_isomorphism(fa6.sylow(), fgl.sylow());
  REQUIRE(base.has_value());
  // some isomorphism of the Sylow groups must transport the fusion
  bool transported = false;
  for (const auto& a : automorphism_group(fgl.sylow()).maps) {
    std::vector<uint16_t> lambda(fa6.parent()->order(), 0xFFFF);
    fa6.sylow().members.for_each(
        [&](int x) { lambda[x] = static_cast<uint16_t>(a.img[(*base)[x]]); });
    if (fusion_isomorphic_along(fa6, fgl, lambda)) {
      transported = true;
      break;
    }
  }
  CHECK(transported);

  // S4 realizes a different system: only one Klein subgroup is radical there
  FusionSystem fs4 = system_of("S4", 2);
  auto base2 = find_isomorphism(fs4.sylow(), fgl.sylow());
  REQUIRE(base2.has_value());
  bool any = false;
  for (const auto& a : automorphism_group(fgl.sylow()).maps) {
    std::vector<uint16_t> lambda(fs4.parent()->order(), 0xFFFF);
    fs4.sylow().members.for_each(
        [&](int x) { lambda[x] = static_cast<uint16_t>(a.img[(*base2)[x]]); });
    if (fusion_isomorphic_along(fs4, fgl, lambda)) any = true;
  }
  CHECK(!any);
  CHECK(is_reduced(fgl));
}

TEST_CASE("index predicates and idempotence of the p-power residual") {
  FusionSystem f = system_of("S4", 2);
  FusionSystem op = o_p_subsystem(f);
  CHECK(has_p_power_index(f, op));
  CHECK(!has_index_prime_to_p(f, op));
  CHECK(fusion_equals(o_p_subsystem(op), o_p_subsystem(f)));

  FusionSystem fa4 = system_of("A4", 2);
  FusionSystem opp = o_pprime_subsystem(fa4);
  CHECK(has_index_prime_to_p(fa4, opp));
}

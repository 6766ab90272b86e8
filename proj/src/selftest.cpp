#include "fuselab/selftest.hpp"

#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "fuselab/catalog.hpp"
#include "fuselab/fusion.hpp"
#include "fuselab/linking.hpp"
#include "fuselab/subsystem.hpp"

namespace fuselab {

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SUITE_CHECK(cond, msg)                        \
  do {                                                \
    if (!(cond)) throw Failure(std::string("") + msg); \
  } while (0)

GroupPtr cached_group(const std::string& name) {
  static std::map<std::string, GroupPtr> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  const GroupSpec* spec = catalog_entry(name);
  if (!spec) throw validation_error("no catalog entry: " + name);
  GroupPtr g = load_group(*spec);
  cache.emplace(name, g);
  return g;
}

struct CatalogPair {
  std::string name;
  GroupPtr group;
  int p;
};

std::vector<CatalogPair> catalog_pairs(int prime_filter) {
  std::vector<CatalogPair> out;
  for (const auto& spec : builtin_catalog())
    for (int p : spec.primes)
      if (prime_filter == 0 || p == prime_filter)
        out.push_back({spec.name, cached_group(spec.name), p});
  return out;
}

const FusionSystem& cached_fusion(const std::string& name, int p) {
  static std::map<std::pair<std::string, int>, FusionSystem> cache;
  auto key = std::make_pair(name, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, fusion_of_group(cached_group(name), p)).first->second;
}

// the three theorem instances (G, N, p) used by the solv and linking suites
struct SolvTriple {
  std::string gname;
  int p;
  Subgroup normal;  // N with E = F_{S cap N}(N)
};

std::vector<SolvTriple> solv_triples() {
  std::vector<SolvTriple> out;
  out.push_back({"S5", 2, p_residual(whole_subgroup(cached_group("S5")), 2)});   // A5
  out.push_back({"S3", 3, p_core(whole_subgroup(cached_group("S3")), 3)});      // C3
  out.push_back({"S4", 2, p_residual(whole_subgroup(cached_group("S4")), 2)});  // A4
  return out;
}

FusionSystem subsystem_of_pair(const FusionSystem& F, const Subgroup& N) {
  Subgroup T = intersect(F.sylow(), N);
  if (T.order != p_part(N.order, F.prime()))
    throw hypothesis_violation("S cap N is not a Sylow p-subgroup of N");
  return fusion_of_group_action(N, F.prime(), T);
}

// --- suites --------------------------------------------------------------------------

void suite_saturation(const SelftestOptions& opt, std::ostringstream& detail) {
  int count = 0;
  for (const auto& pr : catalog_pairs(opt.prime)) {
    SaturationReport rep = is_saturated(cached_fusion(pr.name, pr.p));
    SUITE_CHECK(rep.saturated,
                "F_S(" + pr.name + ") at p=" + std::to_string(pr.p) + " not saturated: " + rep.detail);
    ++count;
  }
  // the deliberately unsaturated system over V4 generated by one isomorphism
  GroupPtr v4 = cached_group("V4");
  Subgroup whole = whole_subgroup(v4);
  std::vector<Subgroup> subs = all_subgroups(whole);
  std::vector<Subgroup> order2;
  for (const auto& s : subs)
    if (s.order == 2) order2.push_back(s);
  SUITE_CHECK(order2.size() == 3, "V4 should have three order-2 subgroups");
  GroupMap iso;
  iso.domain = order2[0];
  iso.codomain = order2[1];
  iso.img.assign(v4->order(), -1);
  iso.img[0] = 0;
  iso.img[order2[0].elements()[1]] = static_cast<int16_t>(order2[1].elements()[1]);
  FusionSystem bad = close_fusion(whole, 2, {iso});
  SaturationReport rep = is_saturated(bad);
  SUITE_CHECK(!rep.saturated, "single-isomorphism system over V4 must be unsaturated");
  SUITE_CHECK(rep.witness_object >= 0 && !rep.detail.empty(),
              "unsaturated verdict must carry a witness");
  detail << count << " catalog pairs saturated; single-iso witness: " << rep.detail;
}

void suite_local_flags(const SelftestOptions& opt, std::ostringstream& detail) {
  long checked = 0;
  for (const auto& pr : catalog_pairs(opt.prime)) {
    const FusionSystem& F = cached_fusion(pr.name, pr.p);
    for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
      SubgroupStatus st = subgroup_status(F, obj);
      SUITE_CHECK(st.fully_centralized == st.receptive,
                  pr.name + ": fully centralized <=> receptive fails on object " +
                      std::to_string(obj));
      SUITE_CHECK(st.fully_normalized == (st.fully_automized && st.receptive),
                  pr.name + ": fully normalized <=> automized and receptive fails on object " +
                      std::to_string(obj));
      if (st.centric)
        SUITE_CHECK(st.fully_centralized,
                    pr.name + ": centric subgroup not fully centralized, object " +
                        std::to_string(obj));
      ++checked;
    }
  }
  detail << checked << " subgroup statuses verified";
}

void regenerate_from_automizers(const FusionSystem& F, const std::string& name) {
  std::vector<GroupMap> gens;
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
    SubgroupStatus st = subgroup_status(F, obj);
    if (!(st.fully_normalized && st.centric && st.radical)) continue;
    const Bitset& bits = F.object(obj).members;
    for (const auto& m : F.maps_from(obj))
      if (F.image_of(m) == bits) gens.push_back(F.to_group_map(m));
  }
  FusionSystem regen = close_fusion(F.sylow(), F.prime(), gens);
  SUITE_CHECK(fusion_equals(regen, F), name + ": automizer regeneration differs from F");
}

void suite_alperin(const SelftestOptions& opt, std::ostringstream& detail) {
  std::vector<std::pair<std::string, int>> cases = {{"S4", 2}, {"S5", 2}, {"A6", 2}, {"S3", 3}};
  long decomposed = 0;
  for (const auto& [name, p] : cases) {
    if (opt.prime && p != opt.prime) continue;
    const FusionSystem& F = cached_fusion(name, p);
    for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
      for (const auto& m : F.maps_from(obj)) {
        AlperinDecomposition dec = alperin_decompose(F, F.to_group_map(m));
        SUITE_CHECK(dec.exact, name + ": recomposition mismatch");
        for (const auto& step : dec.steps) {
          SubgroupStatus st = subgroup_status(F, step.group);
          SUITE_CHECK(st.fully_normalized && st.centric && st.radical,
                      name + ": step subgroup is not fully normalized centric radical");
        }
        ++decomposed;
      }
    }
  }
  // every saturated catalog system is generated by its centric radical
  // fully normalized automizers
  int regenerated = 0;
  for (const auto& pr : catalog_pairs(opt.prime)) {
    regenerate_from_automizers(cached_fusion(pr.name, pr.p), pr.name);
    ++regenerated;
  }
  detail << decomposed << " morphisms decomposed; " << regenerated << " systems regenerated";
}

void suite_hyperfocal(const SelftestOptions& opt, std::ostringstream& detail) {
  if (opt.prime && opt.prime != 2) {
    detail << "skipped (p filter)";
    return;
  }
  GroupPtr s4 = cached_group("S4");
  const FusionSystem& F = cached_fusion("S4", 2);
  Subgroup v4 = p_core(whole_subgroup(s4), 2);  // V4 = O_2(S4)
  SUITE_CHECK(hyperfocal(F).members == v4.members, "hyp(F_{D8}(S4)) != V4");

  Subgroup a4 = p_residual(whole_subgroup(s4), 2);  // A4 = O^2(S4)
  FusionSystem expect = fusion_of_group_action(a4, 2, v4);
  SUITE_CHECK(fusion_equals(o_p_subsystem(F), expect),
              "O^2(F_{D8}(S4)) differs from F_{V4}(A4)");

  const FusionSystem& FA4 = cached_fusion("A4", 2);
  FusionSystem inner = fusion_of_group_action(FA4.sylow(), 2, FA4.sylow());
  SUITE_CHECK(fusion_equals(o_pprime_subsystem(FA4), inner),
              "O^{2'}(F_{V4}(A4)) differs from F_{V4}(V4)");
  detail << "hyperfocal oracle checks hold";
}

void suite_quotient(const SelftestOptions& opt, std::ostringstream& detail) {
  long quotients = 0;
  for (const auto& pr : catalog_pairs(opt.prime)) {
    const FusionSystem& F = cached_fusion(pr.name, pr.p);
    Subgroup hyp = hyperfocal(F);
    for (const Subgroup& T : F.objects()) {
      if (!is_strongly_closed(F, T)) continue;
      QuotientFusion qf = quotient_fusion(F, T);
      // hyp(F/T) = T.hyp(F)/T
      Subgroup lifted = generate_subgroup(F.sylow(), [&] {
        std::vector<int> seeds = T.elements();
        for (int e : hyp.elements()) seeds.push_back(e);
        return seeds;
      }());
      Bitset expect(qf.quot.group->order());
      lifted.members.for_each([&](int x) { expect.set(qf.quot.proj[x]); });
      SUITE_CHECK(hyperfocal(qf.system).members == expect,
                  pr.name + ": hyp(F/T) != T.hyp(F)/T");
      // T C_S(T) strongly closed
      Subgroup tbar = subgroup_product(T, centralizer(F.sylow(), T));
      SUITE_CHECK(is_strongly_closed(F, tbar), pr.name + ": T C_S(T) not strongly closed");
      // F / T C_S(T) isomorphic to F_{Out_S(T)}(Out_F(T)) under the canonical map
      QuotientFusion qf2 = quotient_fusion(F, tbar);
      int tobj = F.object_index(T.members);
      MapGroup mgT = aut_group(F, tobj);
      Subgroup inner = inner_auts(F, tobj, mgT);
      QuotientGroup outq = quotient_group(whole_subgroup(mgT.table), inner);
      Subgroup autS = auts_from(F, tobj, F.sylow(), mgT);
      Bitset outSbits(outq.group->order());
      for (int i : autS.elements()) outSbits.set(outq.proj[i]);
      FusionSystem rhs = fusion_of_group_action(whole_subgroup(outq.group), pr.p,
                                                Subgroup(outq.group, outSbits));
      std::vector<uint16_t> lambda(qf2.quot.group->order(), 0xFFFF);
      for (int c = 0; c < qf2.quot.group->order(); ++c) {
        int rep = qf2.quot.rep[c];
        lambda[c] = static_cast<uint16_t>(outq.proj[mgT.index_of(F.conj_map(tobj, rep).img)]);
      }
      SUITE_CHECK(fusion_isomorphic_along(qf2.system, rhs, lambda),
                  pr.name + ": F/TC_S(T) is not canonically isomorphic to F_{Out_S(T)}(Out_F(T))");
      ++quotients;
    }
  }
  detail << quotients << " strongly closed quotients verified";
}

void suite_hyperfocal_bound(const SelftestOptions& opt, std::ostringstream& detail) {
  long bounds = 0;
  for (const auto& pr : catalog_pairs(opt.prime)) {
    const FusionSystem& F = cached_fusion(pr.name, pr.p);
    Subgroup hyp = hyperfocal(F);
    for (const Subgroup& T : F.objects()) {
      if (!is_strongly_closed(F, T)) continue;
      int tobj = F.object_index(T.members);
      MapGroup mgT = aut_group(F, tobj);
      Subgroup res = p_residual(whole_subgroup(mgT.table), pr.p);
      Subgroup inner = inner_auts(F, tobj, mgT);
      Bitset prod(mgT.table->order());
      for (int a : res.elements())
        for (int b : inner.elements()) prod.set(mgT.table->op(a, b));
      Bitset allowed(F.parent()->order());
      for (int x : F.sylow().elements())
        if (prod.test(mgT.index_of(F.conj_map(tobj, x).img))) allowed.set(x);
      SUITE_CHECK(hyp.members.subset_of(allowed),
                  pr.name + ": hyp(F) escapes {x | c_x in O^p(Aut_F(T)) Inn(T)}");
      ++bounds;
    }
  }
  detail << bounds << " hyperfocal bounds verified";
}

void suite_finfty_invariance(const SelftestOptions& opt, std::ostringstream& detail) {
  if (opt.prime && opt.prime != 2) {
    detail << "skipped (p filter)";
    return;
  }
  for (const std::string& name : {std::string("S4"), std::string("S5")}) {
    const FusionSystem& F = cached_fusion(name, 2);
    FInfinity standard = f_infinity(F);  // O^p then O^{p'} interleaving
    // interleaving starting with the prime-to-p step
    FusionSystem e1 = o_pprime_subsystem(F);
    SUITE_CHECK(has_index_prime_to_p(F, e1), name + ": O^{p'} step has wrong index type");
    FusionSystem limit2 = f_infinity(e1).limit;
    SUITE_CHECK(fusion_equals(standard.limit, limit2),
                name + ": limits differ between interleavings");
    // a third route: repeat the p-power step before proceeding
    FusionSystem e2 = o_p_subsystem(o_p_subsystem(F));
    SUITE_CHECK(fusion_equals(e2, o_p_subsystem(F)), name + ": O^p(O^p(F)) != O^p(F)");
    SUITE_CHECK(fusion_equals(f_infinity(e2).limit, standard.limit),
                name + ": limit through repeated O^p differs");
    SUITE_CHECK(is_trivial_system(standard.limit), name + ": expected trivial limit");
  }
  detail << "two systems, three interleavings each, identical limits";
}

void suite_solv(const SelftestOptions& opt, std::ostringstream& detail) {
  int done = 0;
  for (const auto& t : solv_triples()) {
    if (opt.prime && t.p != opt.prime) continue;
    const FusionSystem& F = cached_fusion(t.gname, t.p);
    FusionSystem E = subsystem_of_pair(F, t.normal);
    NormalityReport nr = normality_report(F, E);
    SUITE_CHECK(nr.is_normal(), t.gname + ": E is not normal in F");
    Subgroup cse = centralizer_of_subsystem(F, E);
    SUITE_CHECK(cse.members.subset_of(E.sylow().members), t.gname + ": C_S(E) not inside T");
    SolvReport rep = verify_solv(F, E);
    SUITE_CHECK(rep.hyp_a_p_solvable, t.gname + ": Aut_F(T)/Aut_E(T) not p-solvable");
    SUITE_CHECK(rep.limits_equal, t.gname + ": F^infty != E^infty (theorem violation)");
    SUITE_CHECK(rep.cross_check, t.gname + ": chain limit differs from F^infty");
    ++done;
  }
  detail << done << " (G,N,p) instances verified end to end";
}

void suite_opprime_minimal(const SelftestOptions& opt, std::ostringstream& detail) {
  std::vector<std::pair<std::string, int>> cases = {{"A4", 2}, {"S3", 3}};
  for (const auto& [name, p] : cases) {
    if (opt.prime && p != opt.prime) continue;
    const FusionSystem& F = cached_fusion(name, p);
    const Subgroup& S = F.sylow();
    std::vector<GroupMap> base;
    for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
      MapGroup mg = aut_group(F, obj);
      Subgroup res = p_prime_residual(whole_subgroup(mg.table), p);
      for (int i : res.elements()) base.push_back(F.to_group_map(mg.maps[i], S));
    }
    int sobj = F.object_index(S.members);
    MapGroup mgS = aut_group(F, sobj);
    std::vector<FusionSystem> valid;
    for (const Subgroup& A : all_subgroups(whole_subgroup(mgS.table))) {
      std::vector<GroupMap> gens = base;
      for (int i : A.elements()) gens.push_back(F.to_group_map(mgS.maps[i], S));
      FusionSystem cand = close_fusion(S, p, gens);
      if (!is_saturated(cand).saturated) continue;
      if (!has_index_prime_to_p(F, cand)) continue;
      if (!normality_report(F, cand).is_normal()) continue;
      valid.push_back(std::move(cand));
    }
    SUITE_CHECK(!valid.empty(), name + ": no valid candidate subsystems");
    FusionSystem constructed = o_pprime_subsystem(F);
    bool among = false;
    for (const auto& v : valid) {
      SUITE_CHECK(fusion_contains(v, constructed),
                  name + ": constructed O^{p'}(F) is not minimal");
      if (fusion_equals(v, constructed)) among = true;
    }
    SUITE_CHECK(among, name + ": constructed O^{p'}(F) missing from the candidate set");
  }
  detail << "brute-force minimality confirmed";
}

void suite_linking(const SelftestOptions& opt, std::ostringstream& detail) {
  if (opt.prime && opt.prime != 2) {
    detail << "skipped (p filter)";
    return;
  }
  for (const std::string& name : {std::string("C2"), std::string("S4"), std::string("S5"),
                                  std::string("A6")}) {
    LinkingSystem L = linking_of_group(cached_group(name), 2);
    LinkingReport rep = check_linking_axioms(L);
    SUITE_CHECK(rep.ok(), name + ": linking axiom failed: " + rep.detail);
  }
  // composition associativity, exhaustively on (S4, 2)
  {
    LinkingSystem L = linking_of_group(cached_group("S4"), 2);
    const FiniteGroup& g = *L.ambient.parent;
    const int n = static_cast<int>(L.objects.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (uint16_t rg : L.mor[i][j])
            for (uint16_t rh : L.mor[j][k])
              for (int l = 0; l < n; ++l)
                for (uint16_t rk : L.mor[k][l]) {
                  int left = L.rep_of(i, g.op(rk, L.rep_of(i, g.op(rh, rg))));
                  int right = L.rep_of(i, g.op(L.rep_of(j, g.op(rk, rh)), rg));
                  SUITE_CHECK(left == right, "S4 linking composition not associative");
                }
    // Z(D8) is not an object
    Subgroup z = center(L.fusion.sylow());
    SUITE_CHECK(L.object_position(L.fusion.object_index(z.members)) == -1,
                "Z(D8) must not be a linking object");
    // non-centric subgroups fail the centralizer decomposition
    for (int obj = 0; obj < static_cast<int>(L.fusion.objects().size()); ++obj) {
      if (is_centric(L.fusion, obj)) continue;
      Subgroup P = L.fusion.object(obj);
      Subgroup cg = centralizer(L.ambient, P);
      Subgroup zp = center(P);
      Subgroup core = p_prime_core(cg, 2);
      SUITE_CHECK(zp.order * core.order != cg.order || intersect(zp, core).order != 1,
                  "non-centric subgroup satisfies the centric decomposition");
    }
  }
  // Corollary: T C_S(T)/T abelian, and C_S(T) <= T for odd p
  for (const auto& t : solv_triples()) {
    const FusionSystem& F = cached_fusion(t.gname, t.p);
    FusionSystem E = subsystem_of_pair(F, t.normal);
    CentralizerConsequences cc = centralizer_consequences(F, E);
    SUITE_CHECK(cc.ok(), t.gname + ": centralizer consequences fail (theorem violation)");
  }
  detail << "linking axioms, associativity, and centralizer consequences verified";
}

void suite_group_invariants(const SelftestOptions& opt, std::ostringstream& detail) {
  long groups = 0;
  for (const auto& spec : builtin_catalog()) {
    GroupPtr g = cached_group(spec.name);
    Subgroup whole = whole_subgroup(g);
    for (int p : spec.primes) {
      if (opt.prime && p != opt.prime) continue;
      Subgroup syl = sylow_subgroup(whole, p);
      SUITE_CHECK(syl.order == p_part(g->order(), p), spec.name + ": Sylow order wrong");
      for (int x = 0; x < g->order(); x += std::max(1, g->order() / 7)) {
        Subgroup conj = conjugate_subgroup(x, syl);
        SUITE_CHECK(conj.order == syl.order, spec.name + ": conjugate Sylow broken");
      }
      QuotientGroup q1 = quotient_group(whole, p_residual(whole, p));
      SUITE_CHECK(q1.group->order() == p_part(q1.group->order(), p),
                  spec.name + ": G/O^p(G) is not a p-group");
      QuotientGroup q2 = quotient_group(whole, p_prime_residual(whole, p));
      SUITE_CHECK(q2.group->order() % p != 0 || q2.group->order() == 1,
                  spec.name + ": G/O^{p'}(G) is not a p'-group");
      Subgroup core = p_core(whole, p);
      SUITE_CHECK(core.members.subset_of(syl.members),
                  spec.name + ": O_p(G) not inside the Sylow subgroup");
    }
    if (g->order() <= 48) {
      std::vector<Subgroup> subs = all_subgroups(whole);
      for (const Subgroup& P : subs) {
        SUITE_CHECK(g->order() % P.order == 0, spec.name + ": Lagrange fails");
        Subgroup nz = normalizer(whole, P);
        Subgroup cz = centralizer(whole, P);
        Subgroup prod = [&] {
          Bitset b(g->order());
          for (int a : P.elements())
            for (int c : cz.elements()) b.set(g->op(a, c));
          return Subgroup(g, b);
        }();
        SUITE_CHECK(prod.members.subset_of(nz.members),
                    spec.name + ": P.C_G(P) escapes N_G(P)");
        if (is_normal_in(P, whole)) {
          QuotientGroup q = quotient_group(whole, P);
          SUITE_CHECK(q.group->order() * P.order == g->order(),
                      spec.name + ": quotient order identity fails");
        }
      }
      if (g->order() <= 24) {
        for (const Subgroup& P : subs) {
          if (P.order > 8) continue;
          AutomorphismGroup aut = automorphism_group(P);
          int inner = 0;
          Subgroup z = center(P);
          for (const auto& m : aut.maps) {
            bool is_inner = false;
            for (int x : P.elements()) {
              if (GroupMap::conjugation(x, P, P).img == m.img) {
                is_inner = true;
                break;
              }
            }
            if (is_inner) ++inner;
          }
          SUITE_CHECK(inner == P.order / z.order,
                      spec.name + ": |Inn(P)| != |P/Z(P)|");
        }
      }
    }
    ++groups;
  }
  detail << groups << " catalog groups checked";
}

void suite_subsystem_invariants(const SelftestOptions& opt, std::ostringstream& detail) {
  int pairs = 0;
  for (const auto& t : solv_triples()) {
    if (opt.prime && t.p != opt.prime) continue;
    const FusionSystem& F = cached_fusion(t.gname, t.p);
    FusionSystem E = subsystem_of_pair(F, t.normal);
    const Subgroup& T = E.sylow();
    int p = F.prime();

    // Lemma: centric P with P cap T not E-centric has a conjugate with
    // Out_S(P*) meeting O_p(Out_F(P*))
    for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
      if (!is_centric(F, obj)) continue;
      Bitset meet = F.object(obj).members & T.members;
      int eobj = E.object_index(meet);
      if (eobj >= 0 && is_centric(E, eobj)) continue;
      bool witness = false;
      for (int q : conjugacy_class_ids(F, obj)) {
        MapGroup mg = aut_group(F, q);
        Subgroup inner = inner_auts(F, q, mg);
        QuotientGroup quo = quotient_group(whole_subgroup(mg.table), inner);
        Subgroup autS = auts_from(F, q, F.sylow(), mg);
        Bitset outS(quo.group->order());
        for (int i : autS.elements()) outS.set(quo.proj[i]);
        Bitset meetbits = outS & p_core(whole_subgroup(quo.group), p).members;
        meetbits.reset(0);
        if (meetbits.any()) {
          witness = true;
          break;
        }
      }
      SUITE_CHECK(witness, t.gname + ": no conjugate with Out_S meeting O_p(Out_F)");
    }

    // p-power-index containment: E <= F_U for every normal U >= T.hyp(F)
    Subgroup hyp = hyperfocal(F);
    Subgroup thyp = [&] {
      std::vector<int> seeds = T.elements();
      for (int e : hyp.elements()) seeds.push_back(e);
      return generate_subgroup(F.sylow(), seeds);
    }();
    for (const Subgroup& U : F.objects()) {
      if (!thyp.members.subset_of(U.members) || !is_normal_in(U, F.sylow())) continue;
      FusionSystem FU = p_power_index_subsystem(F, U);
      SUITE_CHECK(fusion_contains(FU, E), t.gname + ": E escapes F_U for U >= T.hyp(F)");
    }

    // unnamed corollary: Aut_E(T) O^{p'}(Aut_F(T)) < Aut_F(T) forces O^{p'}(F) < F
    {
      int tobj = F.object_index(T.members);
      MapGroup mgT = aut_group(F, tobj);
      Bitset prod(mgT.table->order());
      Subgroup res = p_prime_residual(whole_subgroup(mgT.table), p);
      int etobj = E.object_index(T.members);
      for (const auto& m : E.maps_from(etobj)) {
        if (!(E.image_of(m) == T.members)) continue;
        int a = mgT.index_of(m.img);
        for (int b : res.elements()) prod.set(mgT.table->op(a, b));
      }
      if (prod.count() < mgT.table->order()) {
        FusionSystem opp = o_pprime_subsystem(F);
        SUITE_CHECK(!fusion_equals(opp, F),
                    t.gname + ": corollary forces O^{p'}(F) proper, but it is all of F");
      }
    }
    ++pairs;
  }

  // closure idempotence and conjugation partition on small systems
  for (const auto& [name, p] : std::vector<std::pair<std::string, int>>{{"A4", 2}, {"S3", 3},
                                                                        {"S4", 2}}) {
    if (opt.prime && p != opt.prime) continue;
    const FusionSystem& F = cached_fusion(name, p);
    std::vector<GroupMap> all;
    for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj)
      for (const auto& m : F.maps_from(obj)) all.push_back(F.to_group_map(m));
    SUITE_CHECK(fusion_equals(close_fusion(F.sylow(), p, all), F),
                name + ": closure of Mor(F) differs from F");
    // conjugacy classes partition the objects
    std::vector<int> cls(F.objects().size(), -1);
    for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
      auto ids = conjugacy_class_ids(F, obj);
      SUITE_CHECK(std::find(ids.begin(), ids.end(), obj) != ids.end(),
                  name + ": object missing from its own class");
      for (int q : ids) {
        SUITE_CHECK(conjugacy_class_ids(F, q) == ids, name + ": classes are not an equivalence");
        if (cls[q] == -1) cls[q] = obj;
        SUITE_CHECK(cls[q] == obj || cls[obj] == cls[q], name + ": classes overlap");
      }
    }
    // Hom_S(P,Q) inside Hom_F(P,Q)
    FusionSystem innerF = fusion_of_group_action(F.sylow(), p, F.sylow());
    SUITE_CHECK(fusion_contains(F, innerF), name + ": inner fusion escapes F");
  }
  detail << pairs << " normal pairs plus closure/partition invariants";
}

}  // namespace

std::vector<std::string> selftest_suite_names() {
  return {"saturation",        "local-flags",       "alperin",
          "hyperfocal",        "quotient",          "hyperfocal-bound",
          "finfty-invariance", "solv",              "opprime-minimal",
          "linking",           "group-invariants",  "subsystem-invariants"};
}

std::vector<SuiteResult> run_selftest(const SelftestOptions& opt) {
  using Runner = std::function<void(const SelftestOptions&, std::ostringstream&)>;
  std::vector<std::pair<std::string, Runner>> suites = {
      {"saturation", suite_saturation},
      {"local-flags", suite_local_flags},
      {"alperin", suite_alperin},
      {"hyperfocal", suite_hyperfocal},
      {"quotient", suite_quotient},
      {"hyperfocal-bound", suite_hyperfocal_bound},
      {"finfty-invariance", suite_finfty_invariance},
      {"solv", suite_solv},
      {"opprime-minimal", suite_opprime_minimal},
      {"linking", suite_linking},
      {"group-invariants", suite_group_invariants},
      {"subsystem-invariants", suite_subsystem_invariants},
  };
  std::vector<SuiteResult> out;
  for (auto& [name, fn] : suites) {
    if (!opt.only.empty() && opt.only != name) continue;
    SuiteResult r;
    r.name = name;
    auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    try {
      fn(opt, detail);
      r.passed = true;
      r.detail = detail.str();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                   .count();
    out.push_back(std::move(r));
  }
  if (out.empty()) throw validation_error("unknown suite: " + opt.only);
  return out;
}

}  // namespace fuselab

#include "fuselab/subsystem.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fuselab {

namespace {

// Aut_F(P) as GroupMaps into codomain, for feeding close_fusion.
std::vector<GroupMap> residual_generator_maps(const FusionSystem& F, int obj,
                                              const Subgroup& codomain, bool p_power) {
  MapGroup mg = aut_group(F, obj);
  Subgroup res = p_power ? p_residual(whole_subgroup(mg.table), F.prime())
                         : p_prime_residual(whole_subgroup(mg.table), F.prime());
  std::vector<GroupMap> out;
  for (int i : res.elements()) out.push_back(F.to_group_map(mg.maps[i], codomain));
  return out;
}

std::set<std::vector<uint16_t>> aut_images(const FusionSystem& F, int obj) {
  std::set<std::vector<uint16_t>> out;
  const Bitset& bits = F.object(obj).members;
  for (const auto& m : F.maps_from(obj))
    if (F.image_of(m) == bits) out.insert(m.img);
  return out;
}

}  // namespace

// --- hyperfocal -------------------------------------------------------------------

Subgroup hyperfocal(const FusionSystem& F) {
  const FiniteGroup& g = *F.parent();
  std::vector<int> seeds;
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
    MapGroup mg = aut_group(F, obj);
    Subgroup res = p_residual(whole_subgroup(mg.table), F.prime());
    for (int i : res.elements()) {
      const CompactMap& alpha = mg.maps[i];
      for (int x : F.object(obj).elements())
        seeds.push_back(g.op(F.apply(alpha, x), g.inverse(x)));  // alpha(x) x^-1
    }
  }
  return generate_subgroup(F.sylow(), seeds);
}

// --- p-power index -----------------------------------------------------------------

FusionSystem p_power_index_subsystem(const FusionSystem& F, const Subgroup& U) {
  Subgroup hyp = hyperfocal(F);
  if (!hyp.members.subset_of(U.members) || !F.sylow().contains(U))
    throw precondition_error("p_power_index_subsystem requires hyp(F) <= U <= S");
  if (U.members == F.sylow().members) return F;

  std::vector<GroupMap> gens;
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
    if (!F.object(obj).members.subset_of(U.members)) continue;
    auto maps = residual_generator_maps(F, obj, U, /*p_power=*/true);
    gens.insert(gens.end(), maps.begin(), maps.end());
  }
  FusionSystem FU = close_fusion(U, F.prime(), gens);

  if (!fusion_contains(F, FU))
    throw construction_unverified("p-power index subsystem escapes F");
  SaturationReport sat = is_saturated(FU);
  if (!sat.saturated)
    throw construction_unverified("p-power index subsystem is not saturated: " + sat.detail);
  if (is_normal_in(U, F.sylow())) {
    NormalityReport nr = normality_report(F, FU);
    if (!nr.is_normal())
      throw construction_unverified("p-power index subsystem over normal U is not normal in F");
  }
  return FU;
}

FusionSystem o_p_subsystem(const FusionSystem& F) {
  return p_power_index_subsystem(F, hyperfocal(F));
}

// --- index prime to p ---------------------------------------------------------------

FusionSystem o_pprime_subsystem(const FusionSystem& F) {
  const Subgroup& S = F.sylow();
  std::vector<GroupMap> gens;
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
    auto maps = residual_generator_maps(F, obj, S, /*p_power=*/false);
    gens.insert(gens.end(), maps.begin(), maps.end());
  }
  FusionSystem Estar = close_fusion(S, F.prime(), gens);

  // A0 = < alpha in Aut_F(S) | alpha|_P in Hom_{E*}(P,S) for some centric P >
  int sobj = F.object_index(S.members);
  MapGroup mgS = aut_group(F, sobj);
  std::vector<int> centrics;
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj)
    if (is_centric(F, obj)) centrics.push_back(obj);
  std::vector<int> seeds;
  for (int i = 0; i < static_cast<int>(mgS.maps.size()); ++i) {
    for (int obj : centrics) {
      CompactMap restr = F.restrict_map(mgS.maps[i], obj);
      if (Estar.contains_map(restr)) {
        seeds.push_back(i);
        break;
      }
    }
  }
  Subgroup A0 = generate_subgroup(whole_subgroup(mgS.table), seeds);
  std::vector<GroupMap> gens2 = gens;
  for (int i : A0.elements()) gens2.push_back(F.to_group_map(mgS.maps[i], S));
  FusionSystem F0 = close_fusion(S, F.prime(), gens2);

  SaturationReport sat = is_saturated(F0);
  if (!sat.saturated)
    throw construction_unverified("O^{p'}(F) candidate is not saturated: " + sat.detail);
  if (!has_index_prime_to_p(F, F0))
    throw construction_unverified("O^{p'}(F) candidate does not have index prime to p");
  NormalityReport nr = normality_report(F, F0);
  if (!nr.is_normal()) throw construction_unverified("O^{p'}(F) candidate is not normal in F");
  // Aut_{F0}(S) must be exactly A0
  std::set<std::vector<uint16_t>> want;
  for (int i : A0.elements()) want.insert(mgS.maps[i].img);
  if (aut_images(F0, F0.object_index(S.members)) != want)
    throw construction_unverified("Aut_{F0}(S) differs from the generated automizer");
  return F0;
}

// --- chi-kernel construction ----------------------------------------------------------

namespace {

int chi_value(const CharacterData& cd, int obj, const std::vector<uint16_t>& img) {
  auto it = cd.chi.find({obj, img});
  if (it == cd.chi.end()) throw precondition_error("chi is not defined on a morphism of F*");
  return it->second;
}

}  // namespace

FusionSystem subsystem_from_character(const FusionSystem& F, const std::vector<int>& H,
                                      const CharacterData& cd) {
  if (H.empty()) throw precondition_error("condition (i): H is empty");
  std::set<int> hset(H.begin(), H.end());
  int sobj = F.object_index(F.sylow().members);
  for (int h : hset) {
    if (!is_centric(F, h)) throw precondition_error("condition (i): H contains a non-centric subgroup");
    for (int q : conjugacy_class_ids(F, h))
      if (!hset.count(q)) throw precondition_error("condition (i): H is not closed under F-conjugacy");
    for (int o = 0; o < static_cast<int>(F.objects().size()); ++o)
      if (F.object(h).members.subset_of(F.object(o).members) && !hset.count(o))
        throw precondition_error("condition (i): H is not closed under overgroups");
  }
  // (ii) every centric subgroup outside H has a conjugate with
  //      Out_S(P*) meeting O_p(Out_F(P*)) nontrivially
  for (int o = 0; o < static_cast<int>(F.objects().size()); ++o) {
    if (hset.count(o) || !is_centric(F, o)) continue;
    bool ok = false;
    for (int q : conjugacy_class_ids(F, o)) {
      MapGroup mg = aut_group(F, q);
      Subgroup inner = inner_auts(F, q, mg);
      QuotientGroup quo = quotient_group(whole_subgroup(mg.table), inner);
      Subgroup autS = auts_from(F, q, F.sylow(), mg);
      Bitset outS(quo.group->order());
      for (int i : autS.elements()) outS.set(quo.proj[i]);
      Subgroup core = p_core(whole_subgroup(quo.group), F.prime());
      Bitset meet = outS & core.members;
      meet.reset(0);
      if (meet.any()) {
        ok = true;
        break;
      }
    }
    if (!ok) throw precondition_error("condition (ii) fails for a centric subgroup outside H");
  }
  // (iii) inclusions map to 1
  for (int h : hset)
    if (chi_value(cd, h, F.identity_map(h).img) != 0)
      throw precondition_error("condition (iii): chi(incl) != 1");
  // (iv) chi(psi . phi) = chi(psi) chi(phi)
  for (int p : hset) {
    for (const auto& phi : F.maps_from(p)) {
      Bitset im = F.image_of(phi);
      for (int q : hset) {
        if (!im.subset_of(F.object(q).members)) continue;
        for (const auto& psi : F.maps_from(q)) {
          CompactMap comp = F.compose(psi, phi);
          int lhs = chi_value(cd, p, comp.img);
          int rhs = cd.delta->op(chi_value(cd, q, psi.img), chi_value(cd, p, phi.img));
          if (lhs != rhs) throw precondition_error("condition (iv): chi is not multiplicative");
        }
      }
    }
  }
  // (v) chi(Aut_F(S)) = Delta
  {
    std::set<int> hit;
    for (const auto& img : aut_images(F, sobj)) hit.insert(chi_value(cd, sobj, img));
    if (static_cast<int>(hit.size()) != cd.delta->order())
      throw precondition_error("condition (v): chi does not map Aut_F(S) onto Delta");
  }

  std::vector<GroupMap> gens;
  for (int h : hset)
    for (const auto& m : F.maps_from(h))
      if (chi_value(cd, h, m.img) == 0) gens.push_back(F.to_group_map(m));
  FusionSystem F0 = close_fusion(F.sylow(), F.prime(), gens);

  NormalityReport nr = normality_report(F, F0);
  if (!nr.is_normal()) throw construction_unverified("Ker(chi) subsystem is not normal in F");
  if (!fusion_contains(F0, o_pprime_subsystem(F)))
    throw construction_unverified("Ker(chi) subsystem does not contain O^{p'}(F)");
  std::set<std::vector<uint16_t>> kernel;
  for (const auto& img : aut_images(F, sobj))
    if (chi_value(cd, sobj, img) == 0) kernel.insert(img);
  if (aut_images(F0, F0.object_index(F.sylow().members)) != kernel)
    throw construction_unverified("Aut_{F0}(S) is not Ker(chi|Aut_F(S))");
  return F0;
}

FusionSystem subsystem_from_T_character(const FusionSystem& F, const FusionSystem& E,
                                        GroupPtr delta,
                                        const std::map<std::vector<uint16_t>, int>& chi0) {
  const Subgroup& T = E.sylow();
  if (delta->order() == 1) throw precondition_error("Delta must be nontrivial");
  if (delta->order() % F.prime() == 0)
    throw precondition_error("Delta must have order prime to p");
  NormalityReport nr = normality_report(F, E);
  if (!nr.is_normal()) throw precondition_error("E must be normal in F");

  int tobj = F.object_index(T.members);
  auto autFT = aut_images(F, tobj);
  // chi0 is a surjective homomorphism killing Aut_E(T)
  {
    std::set<int> hit;
    for (const auto& a : autFT) {
      auto it = chi0.find(a);
      if (it == chi0.end()) throw precondition_error("chi0 undefined on Aut_F(T)");
      hit.insert(it->second);
    }
    if (static_cast<int>(hit.size()) != delta->order())
      throw precondition_error("chi0 is not surjective");
    for (const auto& a : autFT)
      for (const auto& b : autFT) {
        CompactMap ca{tobj, a}, cb{tobj, b};
        if (chi0.at(F.compose(ca, cb).img) != delta->op(chi0.at(a), chi0.at(b)))
          throw precondition_error("chi0 is not a homomorphism");
      }
    int etobj = E.object_index(T.members);
    for (const auto& m : E.maps_from(etobj))
      if (E.image_of(m) == T.members && chi0.at(m.img) != 0)
        throw precondition_error("Aut_E(T) is not inside Ker(chi0)");
  }

  // E-centric subgroups of T, as F object ids
  std::vector<char> ecentric(F.objects().size(), 0);
  for (int eobj = 0; eobj < static_cast<int>(E.objects().size()); ++eobj) {
    if (!is_centric(E, eobj)) continue;
    int fobj = F.object_index(E.object(eobj).members);
    ecentric[fobj] = 1;
  }

  // chi on Mor(F|_{E^c}) by Frattini decomposition phi = alpha . phi0; every valid
  // decomposition must give the same value.
  std::map<std::pair<int, std::vector<uint16_t>>, int> chi;
  for (int p = 0; p < static_cast<int>(F.objects().size()); ++p) {
    if (!ecentric[p]) continue;
    int ep = E.object_index(F.object(p).members);
    for (const auto& phi : F.maps_from(p)) {
      if (!F.image_of(phi).subset_of(T.members)) continue;
      int value = -1;
      for (const auto& a : autFT) {
        CompactMap alpha{tobj, a};
        CompactMap alpha_inv = F.invert(alpha);
        CompactMap phi0 = F.compose(F.restrict_map(alpha_inv, F.image_object(phi)), phi);
        if (!E.contains_map(CompactMap{ep, phi0.img})) continue;
        int v = chi0.at(a);
        if (value < 0)
          value = v;
        else if (value != v)
          throw construction_unverified(
              "chi is ill-defined: two Frattini decompositions disagree");
      }
      if (value < 0)
        throw construction_unverified("Frattini decomposition missing; E is not normal in F");
      chi.emplace(std::make_pair(p, phi.img), value);
    }
  }

  // H* = {P in F^c | P cap T in E^c}, then lift chi along restriction to P cap T
  std::vector<int> hstar;
  for (int o = 0; o < static_cast<int>(F.objects().size()); ++o) {
    if (!is_centric(F, o)) continue;
    Bitset meet = F.object(o).members & T.members;
    int mobj = F.object_index(meet);
    if (mobj >= 0 && ecentric[mobj]) hstar.push_back(o);
  }
  CharacterData lifted;
  lifted.delta = delta;
  for (int o : hstar) {
    Bitset meet = F.object(o).members & T.members;
    int mobj = F.object_index(meet);
    for (const auto& phi : F.maps_from(o)) {
      CompactMap restr = F.restrict_map(phi, mobj);
      lifted.chi.emplace(std::make_pair(o, phi.img), chi.at({mobj, restr.img}));
    }
  }

  FusionSystem F0;
  try {
    F0 = subsystem_from_character(F, hstar, lifted);
  } catch (const precondition_error& e) {
    // conditions (i)-(v) are conclusions of the proposition here
    throw construction_unverified(std::string("lifted character fails: ") + e.what());
  }
  if (!fusion_contains(F0, E))
    throw construction_unverified("chi-kernel subsystem does not contain E");
  if (fusion_equals(F0, F)) throw construction_unverified("chi-kernel subsystem is not proper");
  return F0;
}

// --- quotient fusion systems ------------------------------------------------------------

QuotientFusion quotient_fusion(const FusionSystem& F, const Subgroup& T) {
  if (F.object_index(T.members) < 0) throw precondition_error("T is not a subgroup of S");
  if (!is_strongly_closed(F, T))
    throw precondition_error("quotient_fusion requires a strongly closed subgroup");
  QuotientGroup q = quotient_group(F.sylow(), T);
  FusionBuilder b(whole_subgroup(q.group), F.prime());
  FusionSystem& qsys = b.system();
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
    if (!T.members.subset_of(F.object(obj).members)) continue;
    // image of the object in the quotient
    Bitset qbits(q.group->order());
    F.object(obj).members.for_each([&](int x) { qbits.set(q.proj[x]); });
    int qobj = qsys.object_index(qbits);
    if (qobj < 0) throw error("quotient of a subgroup is not a subgroup");
    for (const auto& m : F.maps_from(obj)) {
      CompactMap induced;
      induced.dom = qobj;
      int sz = qbits.count();
      induced.img.resize(sz);
      for (int j = 0; j < sz; ++j) {
        int rep = q.rep[qsys.element_at(qobj, j)];  // minimal coset representative, lies in P
        induced.img[j] = q.proj[F.apply(m, rep)];
      }
      b.add(qobj, std::move(induced.img));
    }
  }
  QuotientFusion out{b.take(), std::move(q), T};
  SaturationReport sat = is_saturated(out.system);
  if (!sat.saturated)
    throw construction_unverified("quotient fusion system is not saturated: " + sat.detail);
  return out;
}

// --- normality ---------------------------------------------------------------------------

NormalityReport normality_report(const FusionSystem& F, const FusionSystem& E) {
  const Subgroup& T = E.sylow();
  if (F.object_index(T.members) < 0) throw precondition_error("T is not a subgroup of S");
  if (!fusion_contains(F, E)) throw precondition_error("Mor(E) is not contained in Mor(F)");
  SaturationReport esat = is_saturated(E);
  if (!esat.saturated) throw precondition_error("E is not saturated: " + esat.detail);

  NormalityReport rep;
  int tobj = F.object_index(T.members);

  rep.strongly_closed = is_strongly_closed(F, T);
  if (!rep.strongly_closed) rep.why_not_strongly_closed = "a subgroup of T fuses out of T";

  // invariance: alpha Mor(E) alpha^{-1} = Mor(E) for every alpha in Aut_F(T)
  rep.invariance = true;
  std::vector<CompactMap> autFT;
  for (const auto& m : F.maps_from(tobj))
    if (F.image_of(m) == T.members) autFT.push_back(m);
  for (const auto& alpha : autFT) {
    for (int eobj = 0; eobj < static_cast<int>(E.objects().size()) && rep.invariance; ++eobj) {
      int fobj = F.object_index(E.object(eobj).members);
      for (const auto& m : E.maps_from(eobj)) {
        CompactMap fm{fobj, m.img};
        CompactMap conj = F.compose(F.restrict_map(alpha, F.image_object(fm)), fm);
        int pre = F.object_index(F.image_of(F.restrict_map(alpha, fobj)));
        CompactMap whole = F.compose(conj, F.invert(F.restrict_map(alpha, fobj)));
        int edom = E.object_index(F.object(pre).members);
        if (edom < 0 || !E.contains_map(CompactMap{edom, whole.img})) {
          rep.invariance = false;
          rep.why_not_invariance = "an Aut_F(T) element does not preserve Mor(E)";
          break;
        }
      }
    }
    if (!rep.invariance) break;
  }

  // Frattini: every phi in Hom_F(P,T) factors as alpha . phi0
  rep.frattini = true;
  for (int obj = 0; obj < static_cast<int>(F.objects().size()) && rep.frattini; ++obj) {
    if (!F.object(obj).members.subset_of(T.members)) continue;
    int eobj = E.object_index(F.object(obj).members);
    for (const auto& phi : F.maps_from(obj)) {
      if (!F.image_of(phi).subset_of(T.members)) continue;
      bool found = false;
      for (const auto& alpha : autFT) {
        CompactMap alpha_inv = F.invert(alpha);
        CompactMap phi0 = F.compose(F.restrict_map(alpha_inv, F.image_object(phi)), phi);
        if (eobj >= 0 && E.contains_map(CompactMap{eobj, phi0.img})) {
          found = true;
          break;
        }
      }
      if (!found) {
        rep.frattini = false;
        rep.why_not_frattini = "a morphism into T has no Frattini decomposition";
        break;
      }
    }
  }

  // extension: each alpha in Aut_E(T) extends over T C_S(T) with [ext, C_S(T)] <= Z(T)
  rep.extension = true;
  Subgroup cst = centralizer(F.sylow(), T);
  Subgroup tbar = subgroup_product(T, cst);
  Subgroup zt = center(T);
  int tbarobj = F.object_index(tbar.members);
  int etobj = E.object_index(T.members);
  const FiniteGroup& g = *F.parent();
  for (const auto& m : E.maps_from(etobj)) {
    if (!(E.image_of(m) == T.members)) continue;
    bool found = false;
    for (const auto& ext : F.maps_from(tbarobj)) {
      if (!(F.image_of(ext) == tbar.members)) continue;
      if (!(F.restrict_map(ext, tobj).img == m.img)) continue;
      bool commutes = true;
      cst.members.for_each([&](int c) {
        if (!zt.contains(g.op(F.apply(ext, c), g.inverse(c)))) commutes = false;
      });
      if (commutes) {
        found = true;
        break;
      }
    }
    if (!found) {
      rep.extension = false;
      rep.why_not_extension = "an Aut_E(T) element has no extension over T C_S(T)";
      break;
    }
  }
  return rep;
}

// --- centralizer subsystems ----------------------------------------------------------------

FusionSystem centralizer_subsystem(const FusionSystem& F, const Subgroup& P) {
  if (F.object_index(P.members) < 0) throw precondition_error("P is not a subgroup of S");
  Subgroup C = centralizer(F.sylow(), P);
  FusionBuilder b(C, F.prime());
  FusionSystem& csys = b.system();
  const int nq = static_cast<int>(csys.objects().size());
  for (int qobj = 0; qobj < nq; ++qobj) {
    const Subgroup& Q = csys.object(qobj);
    Subgroup QP = subgroup_product(Q, P);
    int qpobj = F.object_index(QP.members);
    for (const auto& ext : F.maps_from(qpobj)) {
      bool fixes = true;
      P.members.for_each([&](int x) {
        if (F.apply(ext, x) != x) fixes = false;
      });
      if (!fixes) continue;
      CompactMap r;
      r.dom = qobj;
      r.img.resize(Q.order);
      for (int j = 0; j < Q.order; ++j)
        r.img[j] = static_cast<uint16_t>(F.apply(ext, csys.element_at(qobj, j)));
      b.add(qobj, std::move(r.img));
    }
  }
  FusionSystem out = b.take();
  if (subgroup_status(F, P).fully_centralized) {
    SaturationReport sat = is_saturated(out);
    if (!sat.saturated)
      throw construction_unverified(
          "centralizer system of a fully centralized subgroup is not saturated");
  }
  return out;
}

Subgroup centralizer_of_subsystem(const FusionSystem& F, const FusionSystem& E) {
  NormalityReport nr = normality_report(F, E);
  if (!nr.is_normal()) throw precondition_error("centralizer_of_subsystem requires E normal in F");
  Subgroup CT = centralizer(F.sylow(), E.sylow());
  std::vector<Subgroup> passing;
  for (const Subgroup& P : all_subgroups(CT)) {
    FusionSystem CFP = centralizer_subsystem(F, P);
    if (fusion_contains(CFP, E)) passing.push_back(P);
  }
  if (passing.empty()) throw construction_unverified("C_S(E) has no candidates");
  Subgroup best = passing.back();  // all_subgroups sorts ascending by order
  for (const Subgroup& P : passing)
    if (!P.members.subset_of(best.members))
      throw construction_unverified("C_S(E) maximum is not unique");
  return best;
}

// --- O_p(F) and reduction ---------------------------------------------------------------------

namespace {

bool normal_in_fusion(const FusionSystem& F, const Subgroup& Q) {
  int qobj = F.object_index(Q.members);
  if (qobj < 0) return false;
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
    Subgroup PQ = subgroup_product(F.object(obj), Q);
    int pqobj = F.object_index(PQ.members);
    for (const auto& phi : F.maps_from(obj)) {
      bool found = false;
      for (const auto& ext : F.maps_from(pqobj)) {
        if (!(F.restrict_map(ext, obj).img == phi.img)) continue;
        if (F.image_of(F.restrict_map(ext, qobj)) == Q.members) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

Subgroup op_of_fusion(const FusionSystem& F) {
  std::vector<Subgroup> passing;
  for (const Subgroup& Q : F.objects())
    if (is_normal_in(Q, F.sylow()) && normal_in_fusion(F, Q)) passing.push_back(Q);
  Subgroup best = passing.back();  // objects sorted ascending
  for (const Subgroup& Q : passing)
    if (!Q.members.subset_of(best.members))
      throw construction_unverified("O_p(F) maximum is not unique");
  return best;
}

bool is_reduced(const FusionSystem& F) {
  if (op_of_fusion(F).order != 1) return false;
  if (!(hyperfocal(F).members == F.sylow().members)) return false;
  return fusion_equals(o_pprime_subsystem(F), F);
}

FusionSystem reduction(const FusionSystem& F) {
  Subgroup Q = op_of_fusion(F);
  FusionSystem C = centralizer_subsystem(F, Q);
  Subgroup Z = center(Q);
  FusionSystem base = C;
  if (Z.order > 1) {
    if (!is_strongly_closed(C, Z))
      throw construction_unverified("Z(O_p(F)) is not strongly closed in C_F(O_p(F))");
    base = quotient_fusion(C, Z).system;
  }
  FusionSystem red = f_infinity(base).limit;
  if (!is_reduced(red)) throw construction_unverified("reduction is not reduced");
  return red;
}

// --- F^infinity --------------------------------------------------------------------------------

FInfinity f_infinity(const FusionSystem& F) {
  FInfinity out;
  out.chain.systems.push_back(F);
  out.chain.sylows.push_back(F.sylow());
  FusionSystem cur = F;
  auto append = [&](FusionSystem sys, const char* label) {
    if (!normality_report(F, sys).is_normal())
      throw construction_unverified("F^infinity chain member is not normal in F");
    out.chain.labels.push_back(label);
    out.chain.sylows.push_back(sys.sylow());
    out.chain.systems.push_back(std::move(sys));
    cur = out.chain.systems.back();
  };
  for (int iter = 0; iter < 64; ++iter) {
    FusionSystem fp = o_p_subsystem(cur);
    bool changed_p = !fusion_equals(fp, cur);
    if (changed_p) append(std::move(fp), "p-power index");
    FusionSystem fq = o_pprime_subsystem(cur);
    bool changed_q = !fusion_equals(fq, cur);
    if (changed_q) append(std::move(fq), "index prime to p");
    if (!changed_p && !changed_q) {
      out.limit = cur;
      return out;
    }
  }
  throw construction_unverified("F^infinity did not stabilize within 64 iterations");
}

// --- index predicates ----------------------------------------------------------------------------

bool has_p_power_index(const FusionSystem& F, const FusionSystem& sub) {
  if (!fusion_contains(F, sub)) return false;
  if (!hyperfocal(F).members.subset_of(sub.sylow().members)) return false;
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
    if (!F.object(obj).members.subset_of(sub.sylow().members)) continue;
    int sobj = sub.object_index(F.object(obj).members);
    MapGroup mg = aut_group(F, obj);
    Subgroup res = p_residual(whole_subgroup(mg.table), F.prime());
    for (int i : res.elements())
      if (!sub.contains_map(CompactMap{sobj, mg.maps[i].img})) return false;
  }
  return true;
}

bool has_index_prime_to_p(const FusionSystem& F, const FusionSystem& sub) {
  if (!(sub.sylow().members == F.sylow().members)) return false;
  if (!fusion_contains(F, sub)) return false;
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
    MapGroup mg = aut_group(F, obj);
    Subgroup res = p_prime_residual(whole_subgroup(mg.table), F.prime());
    for (int i : res.elements())
      if (!sub.contains_map(CompactMap{obj, mg.maps[i].img})) return false;
  }
  return true;
}

// --- solvable reduction chain --------------------------------------------------------------------

SubsystemChain solvable_reduction_chain(const FusionSystem& F, const FusionSystem& E) {
  const Subgroup& T = E.sylow();
  NormalityReport nr = normality_report(F, E);
  if (!nr.is_normal()) throw hypothesis_violation("E is not normal in F");
  Subgroup cse = centralizer_of_subsystem(F, E);
  if (!cse.members.subset_of(T.members)) throw hypothesis_violation("C_S(E) is not inside T");

  int tobj = F.object_index(T.members);
  MapGroup mgT = aut_group(F, tobj);
  // Aut_E(T) inside the abstract Aut_F(T)
  Bitset autEbits(mgT.table->order());
  int etobj = E.object_index(T.members);
  for (const auto& m : E.maps_from(etobj)) {
    if (!(E.image_of(m) == T.members)) continue;
    int idx = mgT.index_of(m.img);
    if (idx < 0) throw error("Aut_E(T) is not inside Aut_F(T)");
    autEbits.set(idx);
  }
  Subgroup autE(mgT.table, autEbits);
  Subgroup autF = whole_subgroup(mgT.table);
  if (!is_normal_in(autE, autF)) throw hypothesis_violation("Aut_E(T) is not normal in Aut_F(T)");

  QuotientGroup quo = quotient_group(autF, autE);
  PSolvability ps = p_solvable_series(whole_subgroup(quo.group), F.prime());
  if (!ps.solvable) throw hypothesis_violation("Aut_F(T)/Aut_E(T) is not p-solvable");

  // G_0 = Aut_E(T) < G_1 < ... < G_m = Aut_F(T), each factor a p- or p'-group
  std::vector<Subgroup> G = {autE};
  for (const Subgroup& q : ps.series) {
    if (q.order == 1) continue;
    Bitset pre(mgT.table->order());
    for (int a = 0; a < mgT.table->order(); ++a)
      if (q.contains(quo.proj[a])) pre.set(a);
    Subgroup lifted(mgT.table, pre);
    if (lifted.order > G.back().order) G.push_back(lifted);
  }
  if (!(G.back().members == autF.members)) G.push_back(autF);

  auto sylow_for = [&](const Subgroup& Gi) {
    Bitset bits(F.parent()->order());
    for (int x : F.sylow().elements()) {
      int idx = mgT.index_of(F.conj_map(tobj, x).img);
      if (idx >= 0 && Gi.contains(idx)) bits.set(x);
    }
    return Subgroup(F.parent(), std::move(bits));
  };
  auto aut_T_of = [&](const FusionSystem& sys) {
    std::set<std::vector<uint16_t>> out;
    int t = sys.object_index(T.members);
    for (const auto& m : sys.maps_from(t))
      if (sys.image_of(m) == T.members) out.insert(m.img);
    return out;
  };
  auto maps_of_subgroup = [&](const Subgroup& Gi) {
    std::set<std::vector<uint16_t>> out;
    for (int i : Gi.elements()) out.insert(mgT.maps[i].img);
    return out;
  };

  SubsystemChain chain;
  chain.systems.push_back(F);
  chain.sylows.push_back(F.sylow());
  FusionSystem cur = F;
  for (int i = static_cast<int>(G.size()) - 1; i >= 1; --i) {
    if (aut_T_of(cur) != maps_of_subgroup(G[i]))
      throw construction_unverified("Aut_{F_i}(T) drifted from G_i");
    int factor = G[i].order / G[i - 1].order;
    bool p_step = factor == p_part(factor, F.prime());
    FusionSystem next;
    if (p_step) {
      Subgroup Si1 = sylow_for(G[i - 1]);
      if (!hyperfocal(cur).members.subset_of(Si1.members))
        throw construction_unverified("hyperfocal bound fails for the p-power step");
      next = p_power_index_subsystem(cur, Si1);
      if (!fusion_contains(next, E))
        throw construction_unverified("p-power step lost E");
      if (!has_p_power_index(cur, next))
        throw construction_unverified("p-power step has wrong index type");
      chain.labels.push_back("p-power index");
    } else {
      // chi0 = projection G_i -> G_i/G_{i-1}
      QuotientGroup proj = quotient_group(G[i], G[i - 1]);
      std::map<std::vector<uint16_t>, int> chi0;
      for (int a : G[i].elements()) chi0.emplace(mgT.maps[a].img, proj.proj[a]);
      NormalityReport nri = normality_report(cur, E);
      if (!nri.is_normal()) throw construction_unverified("E is not normal in F_i");
      next = subsystem_from_T_character(cur, E, proj.group, chi0);
      if (!has_index_prime_to_p(cur, next))
        throw construction_unverified("prime-to-p step has wrong index type");
      chain.labels.push_back("index prime to p");
    }
    if (aut_T_of(next) != maps_of_subgroup(G[i - 1]))
      throw construction_unverified("Aut_{F_{i-1}}(T) is not G_{i-1}");
    NormalityReport nrF = normality_report(F, next);
    if (!nrF.is_normal()) throw construction_unverified("chain member is not normal in F");
    chain.systems.push_back(next);
    chain.sylows.push_back(next.sylow());
    cur = std::move(next);
  }
  if (!fusion_contains(chain.systems.back(), E))
    throw construction_unverified("final chain member does not contain E");
  return chain;
}

SolvReport verify_solv(const FusionSystem& F, const FusionSystem& E) {
  const Subgroup& T = E.sylow();
  NormalityReport nr = normality_report(F, E);
  if (!nr.is_normal()) throw hypothesis_violation("E is not normal in F");
  Subgroup cse = centralizer_of_subsystem(F, E);
  if (!cse.members.subset_of(T.members)) throw hypothesis_violation("C_S(E) is not inside T");

  SolvReport rep;
  // (a) Aut_F(T)/Aut_E(T) p-solvable
  {
    int tobj = F.object_index(T.members);
    MapGroup mgT = aut_group(F, tobj);
    Bitset autEbits(mgT.table->order());
    int etobj = E.object_index(T.members);
    for (const auto& m : E.maps_from(etobj)) {
      if (!(E.image_of(m) == T.members)) continue;
      int idx = mgT.index_of(m.img);
      if (idx < 0) throw error("Aut_E(T) is not inside Aut_F(T)");
      autEbits.set(idx);
    }
    QuotientGroup quo = quotient_group(whole_subgroup(mgT.table), Subgroup(mgT.table, autEbits));
    rep.hyp_a_p_solvable = p_solvable_series(whole_subgroup(quo.group), F.prime()).solvable;
  }
  // (b) Out(T,E) p-solvable
  {
    FusionPreservingAutomorphisms fpa = fusion_preserving_automorphisms(E);
    rep.hyp_b_out_p_solvable =
        p_solvable_series(whole_subgroup(fpa.out_table), F.prime()).solvable;
  }
  if (!rep.hyp_a_p_solvable && !rep.hyp_b_out_p_solvable)
    throw hypothesis_violation("neither Aut_F(T)/Aut_E(T) nor Out(T,E) is p-solvable");

  rep.e_limit = f_infinity(E).limit;
  rep.f_limit = f_infinity(F).limit;
  rep.limits_equal = fusion_equals(rep.f_limit, rep.e_limit);

  rep.chain = solvable_reduction_chain(F, E);
  FusionSystem through_chain = f_infinity(rep.chain.systems.back()).limit;
  rep.cross_check = fusion_equals(through_chain, rep.f_limit);
  return rep;
}

}  // namespace fuselab

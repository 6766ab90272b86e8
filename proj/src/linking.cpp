#include "fuselab/linking.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fuselab/subsystem.hpp"

namespace fuselab {

int LinkingSystem::object_position(int fusion_obj) const {
  for (int i = 0; i < static_cast<int>(objects.size()); ++i)
    if (objects[i] == fusion_obj) return i;
  return -1;
}

int LinkingSystem::rep_of(int i, int g) const {
  const FiniteGroup& grp = *ambient.parent;
  int best = g;
  core[i].members.for_each([&](int k) { best = std::min(best, grp.op(g, k)); });
  return best;
}

std::vector<int> LinkingSystem::dist_subgroup(int i) const {
  std::set<int> out;
  fusion.object(objects[i]).members.for_each([&](int x) { out.insert(rep_of(i, x)); });
  return std::vector<int>(out.begin(), out.end());
}

LinkingSystem linking_of_group(GroupPtr g, int p) {
  if (g->order() > limits().max_order) throw size_guard_error("group exceeds FUSELAB_MAX_ORDER");
  LinkingSystem L;
  L.fusion = fusion_of_group(g, p);
  L.ambient = whole_subgroup(std::move(g));
  for (int obj = 0; obj < static_cast<int>(L.fusion.objects().size()); ++obj)
    if (is_centric(L.fusion, obj)) L.objects.push_back(obj);
  for (int obj : L.objects) {
    Subgroup cg = centralizer(L.ambient, L.fusion.object(obj));
    L.core.push_back(p_prime_core(cg, p));
    L.zp.push_back(center(L.fusion.object(obj)));
  }
  const int n = static_cast<int>(L.objects.size());
  L.mor.assign(n, std::vector<std::vector<uint16_t>>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::set<uint16_t> reps;
      for (int t : transporter(L.ambient, L.fusion.object(L.objects[i]),
                               L.fusion.object(L.objects[j])))
        reps.insert(static_cast<uint16_t>(L.rep_of(i, t)));
      L.mor[i][j].assign(reps.begin(), reps.end());
    }
  }
  return L;
}

LinkingReport check_linking_axioms(const LinkingSystem& L) {
  LinkingReport rep;
  const FiniteGroup& g = *L.ambient.parent;
  const FusionSystem& F = L.fusion;
  const int n = static_cast<int>(L.objects.size());

  // C_G(P) = Z(P) x O_{p'}(C_G(P)) on every object
  for (int i = 0; i < n && rep.centric_decomposition; ++i) {
    Subgroup cg = centralizer(L.ambient, F.object(L.objects[i]));
    if (L.zp[i].order * L.core[i].order != cg.order ||
        intersect(L.zp[i], L.core[i]).order != 1) {
      rep.centric_decomposition = false;
      rep.detail = "centralizer of an object does not split as Z(P) x O_{p'}(C_G(P))";
    }
  }

  for (int i = 0; i < n; ++i) {
    const Subgroup& P = F.object(L.objects[i]);
    for (int j = 0; j < n; ++j) {
      const Subgroup& Q = F.object(L.objects[j]);
      auto transporter_set = transporter(L.ambient, P, Q);

      // delta injective on T_S(P,Q)
      std::set<int> seen;
      for (int t : transporter_set) {
        if (!F.sylow().contains(t)) continue;
        if (!seen.insert(L.rep_of(i, t)).second) {
          rep.delta_injective = false;
          rep.detail = "delta identifies two S-transporter elements";
        }
      }

      // pi([g]) = c_g and surjectivity onto Hom_F(P,Q)
      std::set<std::vector<uint16_t>> via_pi;
      for (uint16_t r : L.mor[i][j]) via_pi.insert(F.conj_map(L.objects[i], r).img);
      std::set<std::vector<uint16_t>> homs;
      for (const auto& m : F.maps_from(L.objects[i]))
        if (F.image_of(m).subset_of(Q.members)) homs.insert(m.img);
      if (via_pi != homs) {
        rep.pi_surjective = false;
        rep.detail = "pi does not map morphisms onto Hom_F(P,Q)";
      }
      for (int t : transporter_set) {
        if (!F.sylow().contains(t)) continue;
        if (F.conj_map(L.objects[i], L.rep_of(i, t)).img != F.conj_map(L.objects[i], t).img) {
          rep.pi_delta_is_conjugation = false;
          rep.detail = "pi(delta(g)) differs from c_g";
        }
      }

      // |Mor_L(P,Q)| = |Hom_F(P,Q)| |Z(P)|
      if (static_cast<int>(L.mor[i][j].size()) !=
          static_cast<int>(homs.size()) * L.zp[i].order) {
        rep.cardinality_identity = false;
        rep.detail = "morphism count differs from |Hom|.|Z(P)|";
      }

      // composition well-defined on cosets and closed
      for (int k = 0; k < n; ++k) {
        for (uint16_t rg : L.mor[i][j]) {
          for (uint16_t rh : L.mor[j][k]) {
            int expect = L.rep_of(i, g.op(rh, rg));
            if (!std::binary_search(L.mor[i][k].begin(), L.mor[i][k].end(),
                                    static_cast<uint16_t>(expect))) {
              rep.composition_closed = false;
              rep.detail = "composite coset is not a morphism";
            }
            bool ok = true;
            L.core[i].members.for_each([&](int k1) {
              L.core[j].members.for_each([&](int k2) {
                int h2 = g.op(rh, k2), g2 = g.op(rg, k1);
                if (L.rep_of(i, g.op(h2, g2)) != expect) ok = false;
              });
            });
            if (!ok) {
              rep.composition_well_defined = false;
              rep.detail = "composition depends on coset representatives";
            }
          }
        }
      }
    }
  }
  return rep;
}

CentralizerConsequences centralizer_consequences(const FusionSystem& F, const FusionSystem& E) {
  Subgroup cse = centralizer_of_subsystem(F, E);
  if (!cse.members.subset_of(E.sylow().members))
    throw hypothesis_violation("C_S(E) is not inside T");
  CentralizerConsequences out;
  const Subgroup& T = E.sylow();
  Subgroup cst = centralizer(F.sylow(), T);
  Subgroup tbar = subgroup_product(T, cst);
  QuotientGroup q = quotient_group(tbar, T);
  out.quotient_order = q.group->order();
  out.quotient_abelian = true;
  for (int a = 0; a < q.group->order() && out.quotient_abelian; ++a)
    for (int b = 0; b < q.group->order(); ++b)
      if (q.group->op(a, b) != q.group->op(b, a)) {
        out.quotient_abelian = false;
        break;
      }
  out.odd_case_applies = F.prime() % 2 == 1;
  out.cs_inside_t = cst.members.subset_of(T.members);
  return out;
}

}  // namespace fuselab

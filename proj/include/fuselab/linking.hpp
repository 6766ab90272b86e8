#pragma once

#include <string>
#include <vector>

#include "fuselab/fusion.hpp"

namespace fuselab {

// Centric linking system L_S^c(G) of a group-realized fusion system.
// Morphisms (P,Q) are the cosets T_G(P,Q)/O_{p'}(C_G(P)), stored by their
// canonical representative (minimal element index in the coset).
struct LinkingSystem {
  FusionSystem fusion;
  Subgroup ambient;                  // G
  std::vector<int> objects;          // centric subgroups, as fusion object ids
  std::vector<Subgroup> core;        // K_P = O_{p'}(C_G(P))
  std::vector<Subgroup> zp;          // Z(P)
  std::vector<std::vector<std::vector<uint16_t>>> mor;  // [i][j] -> sorted coset reps

  int object_position(int fusion_obj) const;
  // canonical representative of g K_{P_i}
  int rep_of(int i, int g) const;
  // delta_{P_i,P_j} on g in T_S(P_i,P_j)
  int delta(int i, int g) const { return rep_of(i, g); }
  // iota_P = delta_{P,S}(1), the distinguished inclusion of P_i into S
  int iota(int i) const { return rep_of(i, 0); }
  // [[P]] = delta_P(P) inside Aut_L(P_i)
  std::vector<int> dist_subgroup(int i) const;
};

LinkingSystem linking_of_group(GroupPtr g, int p);

struct LinkingReport {
  bool composition_well_defined = true;
  bool composition_closed = true;
  bool delta_injective = true;
  bool pi_surjective = true;
  bool pi_delta_is_conjugation = true;
  bool cardinality_identity = true;
  bool centric_decomposition = true;
  std::string detail;

  bool ok() const {
    return composition_well_defined && composition_closed && delta_injective && pi_surjective &&
           pi_delta_is_conjugation && cardinality_identity && centric_decomposition;
  }
};

LinkingReport check_linking_axioms(const LinkingSystem& L);

struct CentralizerConsequences {
  bool quotient_abelian = false;  // T C_S(T) / T abelian
  bool odd_case_applies = false;  // p odd
  bool cs_inside_t = false;       // C_S(T) <= T, claimed for odd p
  int quotient_order = 0;

  bool ok() const { return quotient_abelian && (!odd_case_applies || cs_inside_t); }
};

// Group-level consequences of C_S(E) <= T; throws hypothesis_violation when the
// centralizer hypothesis fails.
CentralizerConsequences centralizer_consequences(const FusionSystem& F, const FusionSystem& E);

}  // namespace fuselab

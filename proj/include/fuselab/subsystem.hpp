#pragma once

#include <map>
#include <string>
#include <vector>

#include "fuselab/fusion.hpp"

namespace fuselab {

struct NormalityReport {
  bool strongly_closed = false;
  bool invariance = false;
  bool frattini = false;
  bool extension = false;
  std::string why_not_strongly_closed;
  std::string why_not_invariance;
  std::string why_not_frattini;
  std::string why_not_extension;

  bool is_normal() const { return strongly_closed && invariance && frattini && extension; }
};

// chi : Mor(F*) -> Delta on the full subcategory with objects H, keyed by
// (object id, compact image vector); values are Delta element indices.
struct CharacterData {
  GroupPtr delta;
  std::map<std::pair<int, std::vector<uint16_t>>, int> chi;
};

struct SubsystemChain {
  std::vector<FusionSystem> systems;  // F = systems[0] > ... > systems.back()
  std::vector<std::string> labels;    // labels[i]: step systems[i] -> systems[i+1]
  std::vector<Subgroup> sylows;       // Sylow subgroup of each system
};

struct FInfinity {
  FusionSystem limit;
  SubsystemChain chain;
};

struct SolvReport {
  bool hyp_a_p_solvable = false;      // Aut_F(T)/Aut_E(T) p-solvable
  bool hyp_b_out_p_solvable = false;  // Out(T,E) p-solvable
  bool limits_equal = false;          // F^infty = E^infty (the theorem's conclusion)
  bool cross_check = false;           // limit through the reduction chain agrees
  FusionSystem f_limit;
  FusionSystem e_limit;
  SubsystemChain chain;
};

// --- subsystem-lab operations ----------------------------------------------------

// hyp(F) = < [O^p(Aut_F(P)), P] | P <= S >
Subgroup hyperfocal(const FusionSystem& F);

// Unique subsystem of p-power index over U, for hyp(F) <= U <= S.
FusionSystem p_power_index_subsystem(const FusionSystem& F, const Subgroup& U);
FusionSystem o_p_subsystem(const FusionSystem& F);  // over hyp(F)

// Smallest normal subsystem of index prime to p, built constructively and verified.
FusionSystem o_pprime_subsystem(const FusionSystem& F);

FusionSystem subsystem_from_character(const FusionSystem& F, const std::vector<int>& H,
                                      const CharacterData& chi);

// chi0 : Aut_F(T) -> Delta with Aut_E(T) <= Ker(chi0); keys are compact image
// vectors of Aut_F(T) elements in F.
FusionSystem subsystem_from_T_character(const FusionSystem& F, const FusionSystem& E,
                                        GroupPtr delta,
                                        const std::map<std::vector<uint16_t>, int>& chi0);

struct QuotientFusion {
  FusionSystem system;
  QuotientGroup quot;
  Subgroup kernel;
};
QuotientFusion quotient_fusion(const FusionSystem& F, const Subgroup& T);

NormalityReport normality_report(const FusionSystem& F, const FusionSystem& E);

FusionSystem centralizer_subsystem(const FusionSystem& F, const Subgroup& P);

// C_S(E): the largest P <= C_S(T) with E <= C_F(P).
Subgroup centralizer_of_subsystem(const FusionSystem& F, const FusionSystem& E);

Subgroup op_of_fusion(const FusionSystem& F);  // O_p(F)

FusionSystem reduction(const FusionSystem& F);
bool is_reduced(const FusionSystem& F);

FInfinity f_infinity(const FusionSystem& F);

SubsystemChain solvable_reduction_chain(const FusionSystem& F, const FusionSystem& E);

SolvReport verify_solv(const FusionSystem& F, const FusionSystem& E);

// index-type predicates, used to validate chain labels
bool has_p_power_index(const FusionSystem& F, const FusionSystem& sub);
bool has_index_prime_to_p(const FusionSystem& F, const FusionSystem& sub);

}  // namespace fuselab

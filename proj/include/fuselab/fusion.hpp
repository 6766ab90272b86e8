#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuselab/group.hpp"

namespace fuselab {

// Morphism P -> S stored compactly: img[i] is the image of the i-th smallest
// element of the domain object. Every categorical morphism P -> Q of the fusion
// system is such a map with image inside Q, so the per-pair hom sets are views.
struct CompactMap {
  int dom = -1;                // object id
  std::vector<uint16_t> img;   // length |P|, domain elements in ascending order

  bool operator==(const CompactMap& o) const { return dom == o.dom && img == o.img; }
  bool operator<(const CompactMap& o) const {
    if (dom != o.dom) return dom < o.dom;
    return img < o.img;
  }
};

// Fusion system over a p-group S: objects are all subgroups of S, morphisms the
// stored injective maps, closed under composition, restriction, inversion and
// inclusion-factorization. Immutable once built.
class FusionSystem {
 public:
  int prime() const { return p_; }
  const Subgroup& sylow() const { return S_; }
  GroupPtr parent() const { return S_.parent; }
  const std::vector<Subgroup>& objects() const { return objects_; }
  const Subgroup& object(int id) const { return objects_[id]; }
  int object_index(const Bitset& bits) const;
  int object_index(const Subgroup& s) const { return object_index(s.members); }
  const std::vector<CompactMap>& maps_from(int obj) const { return maps_[obj]; }
  long morphism_count() const;

  // map algebra, all relative to this system's object table
  int rank_of(int obj, int parent_elt) const { return ranks_[obj][parent_elt]; }
  int element_at(int obj, int rank) const { return elems_[obj][rank]; }
  int apply(const CompactMap& m, int parent_elt) const;
  Bitset image_of(const CompactMap& m) const;
  int image_object(const CompactMap& m) const { return object_index(image_of(m)); }
  CompactMap compose(const CompactMap& outer, const CompactMap& inner) const;
  CompactMap invert(const CompactMap& m) const;
  CompactMap restrict_map(const CompactMap& m, int subobj) const;
  CompactMap identity_map(int obj) const;
  CompactMap conj_map(int obj, int g) const;
  bool is_identity(const CompactMap& m) const;
  bool contains_map(const CompactMap& m) const;

  GroupMap to_group_map(const CompactMap& m, const Subgroup& codomain) const;
  GroupMap to_group_map(const CompactMap& m) const;  // codomain = S
  CompactMap from_group_map(const GroupMap& m) const;

  friend class FusionBuilder;

 private:
  GroupPtr parent_;
  int p_ = 2;
  Subgroup S_;
  std::vector<Subgroup> objects_;
  std::map<Bitset, int> index_;
  std::vector<std::vector<uint16_t>> ranks_;
  std::vector<std::vector<uint16_t>> elems_;
  std::vector<std::vector<CompactMap>> maps_;
};

// Incremental worklist closure used by every constructor of a fusion system.
class FusionBuilder {
 public:
  FusionBuilder(Subgroup S, int p);
  void add_inner();                              // all c_s restricted to each object
  void add(int obj, std::vector<uint16_t> img);  // one generator map
  void add_group_map(const GroupMap& m);
  void close();                                  // composition/restriction/inversion fixpoint
  FusionSystem take();                           // sorts and freezes
  FusionSystem& system() { return sys_; }

 private:
  void push(int obj, std::vector<uint16_t> img);
  FusionSystem sys_;
  std::vector<std::map<std::vector<uint16_t>, char>> have_;
  std::vector<std::pair<int, std::vector<uint16_t>>> queue_;
  std::vector<std::vector<int>> by_image_;  // object id -> indices into done_
  std::vector<std::pair<int, std::vector<uint16_t>>> done_;
};

struct SubgroupStatus {
  bool fully_normalized = false;
  bool fully_centralized = false;
  bool fully_automized = false;
  bool receptive = false;
  bool centric = false;
  bool radical = false;
  bool strongly_closed = false;
  // witnesses for failed flags, empty otherwise
  std::string why_not_fully_normalized;
  std::string why_not_fully_centralized;
  std::string why_not_fully_automized;
  std::string why_not_receptive;
  std::string why_not_centric;
  std::string why_not_radical;
  std::string why_not_strongly_closed;
};

struct SaturationReport {
  bool saturated = true;
  int witness_object = -1;  // representative of the first failing class
  std::string detail;
};

struct AlperinStep {
  Subgroup group;          // fully normalized, centric, radical
  GroupMap automorphism;   // element of Aut_F(group)
  Subgroup applied_to;     // the subgroup this step acts on in the chain
};

struct AlperinDecomposition {
  GroupMap target;
  std::vector<AlperinStep> steps;
  GroupMap recomposed;
  bool exact = false;
};

// Aut_F(P) as maps plus its abstract composition table; maps[i] <-> element i.
struct MapGroup {
  std::vector<CompactMap> maps;
  GroupPtr table;

  int index_of(const std::vector<uint16_t>& img) const;
};

struct FusionPreservingAutomorphisms {
  AutomorphismGroup aut;        // Aut(T,E)
  GroupPtr out_table;           // Out(T,E) = Aut(T,E)/Aut_E(T)
  std::vector<int> to_out;      // index in aut.maps -> element of out_table
};

// --- fusion-core operations ---------------------------------------------------

FusionSystem fusion_of_group(GroupPtr g, int p);
// Fusion induced on a Sylow p-subgroup of A by conjugation inside A.
FusionSystem fusion_of_group_action(const Subgroup& A, int p);
FusionSystem fusion_of_group_action(const Subgroup& A, int p, const Subgroup& sylow);

FusionSystem close_fusion(const Subgroup& S, int p, const std::vector<GroupMap>& generators);

std::vector<GroupMap> hom_set(const FusionSystem& F, const Subgroup& P, const Subgroup& Q);
std::vector<Subgroup> conjugacy_class(const FusionSystem& F, const Subgroup& P);
std::vector<int> conjugacy_class_ids(const FusionSystem& F, int obj);

SubgroupStatus subgroup_status(const FusionSystem& F, const Subgroup& P);
SubgroupStatus subgroup_status(const FusionSystem& F, int obj);

SaturationReport is_saturated(const FusionSystem& F);
SaturationReport is_saturated(const FusionSystem& F, const std::vector<int>& class_reps);

bool is_strongly_closed(const FusionSystem& F, const Subgroup& T);

AlperinDecomposition alperin_decompose(const FusionSystem& F, const GroupMap& phi);

bool fusion_equals(const FusionSystem& F1, const FusionSystem& F2);
// Mor(E) subseteq Mor(F), object by object; requires a common parent group.
bool fusion_contains(const FusionSystem& F, const FusionSystem& E);
bool is_trivial_system(const FusionSystem& F);

// lambda maps parent elements of F1's Sylow onto F2's; checks that it carries
// Mor(F1) exactly onto Mor(F2).
bool fusion_isomorphic_along(const FusionSystem& F1, const FusionSystem& F2,
                             const std::vector<uint16_t>& lambda);

FusionPreservingAutomorphisms fusion_preserving_automorphisms(const FusionSystem& E);

// --- automizer groups ----------------------------------------------------------

MapGroup aut_group(const FusionSystem& F, int obj);
// Aut_A(P) inside mg.table, for A <= S acting by conjugation.
Subgroup auts_from(const FusionSystem& F, int obj, const Subgroup& A, const MapGroup& mg);
Subgroup inner_auts(const FusionSystem& F, int obj, const MapGroup& mg);

// centric / radical / fully-normalized helpers used across modules
bool is_centric(const FusionSystem& F, int obj);
bool is_radical(const FusionSystem& F, int obj);
int fully_normalized_rep(const FusionSystem& F, int obj);

}  // namespace fuselab

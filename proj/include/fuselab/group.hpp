#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fuselab/bitset.hpp"
#include "fuselab/config.hpp"
#include "fuselab/errors.hpp"

namespace fuselab {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Exact finite group given by its full multiplication table.
// Element 0 is always the identity.
class FiniteGroup {
 public:
  int order() const { return n_; }
  int op(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }
  int inverse(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return op(op(g, x), inv_[g]); }  // g x g^-1

  int element_order(int a) const;
  int power(int a, int k) const;

  const std::string& name() const { return name_; }
  const std::string& label(int i) const;

  // Permutation data survives from permutation-format input so generators given
  // in cycle notation can be resolved back to element indices.
  int permutation_degree() const { return degree_; }
  const std::vector<uint8_t>& permutation(int i) const { return perms_[i]; }
  bool has_permutations() const { return degree_ > 0; }
  int element_of_permutation(const std::vector<uint8_t>& perm) const;

  std::vector<std::vector<int>> conjugacy_classes() const;

  // Validates identity placement, inverses, Latin-square rows/columns and
  // associativity before accepting the table.
  static GroupPtr from_table(const std::vector<std::vector<int>>& table,
                             std::vector<std::string> labels = {}, std::string name = {});

  // Closure of permutations on {1..degree}; identity becomes element 0.
  static GroupPtr from_permutations(int degree, const std::vector<std::vector<uint8_t>>& gens,
                                    std::string name = {});

  static GroupPtr trivial();

 private:
  FiniteGroup() = default;

  int n_ = 0;
  std::vector<uint16_t> mul_;
  std::vector<uint16_t> inv_;
  std::vector<std::string> labels_;
  std::string name_;
  int degree_ = 0;
  std::vector<std::vector<uint8_t>> perms_;
};

// A subgroup is a membership bitset over a parent group's elements.
struct Subgroup {
  GroupPtr parent;
  Bitset members;
  int order = 0;

  Subgroup() = default;
  Subgroup(GroupPtr g, Bitset bits) : parent(std::move(g)), members(std::move(bits)) {
    order = members.count();
  }

  bool contains(int i) const { return members.test(i); }
  bool contains(const Subgroup& other) const { return other.members.subset_of(members); }
  std::vector<int> elements() const { return members.to_indices(); }
  bool is_trivial() const { return order == 1; }
  bool is_whole() const { return order == parent->order(); }

  bool operator==(const Subgroup& o) const { return members == o.members; }
  bool operator<(const Subgroup& o) const {
    if (order != o.order) return order < o.order;
    return members < o.members;
  }
};

Subgroup whole_subgroup(GroupPtr g);
Subgroup trivial_subgroup(GroupPtr g);
Subgroup subgroup_from_indices(GroupPtr g, const std::vector<int>& elems);
bool is_closed_subgroup(const FiniteGroup& g, const Bitset& members);

// Element-wise injective homomorphism between subgroups of one parent group.
// img has one entry per parent element; -1 outside the domain.
struct GroupMap {
  Subgroup domain;
  Subgroup codomain;
  std::vector<int16_t> img;

  int apply(int x) const { return img[x]; }
  bool is_identity() const;
  Bitset image_bits() const;
  Subgroup image_subgroup() const { return Subgroup(domain.parent, image_bits()); }

  GroupMap after(const GroupMap& inner) const;  // this . inner, right-to-left
  GroupMap inverse() const;
  GroupMap restricted(const Subgroup& sub) const;

  // Multiplicative + injective; throws precondition_error when violated.
  void validate() const;

  static GroupMap identity(const Subgroup& dom, const Subgroup& cod);
  static GroupMap conjugation(int g, const Subgroup& dom, const Subgroup& cod);

  bool operator==(const GroupMap& o) const { return domain == o.domain && img == o.img; }
  bool operator<(const GroupMap& o) const {
    if (!(domain.members == o.domain.members)) return domain.members < o.domain.members;
    return img < o.img;
  }
};

// All automorphisms of one subgroup together with their abstract composition table.
// maps[i] corresponds to element i of `table`; maps[0] is the identity.
struct AutomorphismGroup {
  Subgroup base;
  std::vector<GroupMap> maps;
  GroupPtr table;

  int index_of(const GroupMap& m) const;
};

// --- group-kernel operations ------------------------------------------------

Subgroup generate_subgroup(const Subgroup& within, const std::vector<int>& seeds);
Subgroup generate_subgroup(GroupPtr g, const std::vector<int>& seeds);

// Complete subgroup list of P, sorted by (order, bitset).
std::vector<Subgroup> all_subgroups(const Subgroup& P);

Subgroup normalizer(const Subgroup& A, const Subgroup& P);
Subgroup centralizer(const Subgroup& A, const Subgroup& P);
Subgroup center(const Subgroup& P);

// T_A(P,Q) = {a in A | a P a^-1 <= Q}.
std::vector<int> transporter(const Subgroup& A, const Subgroup& P, const Subgroup& Q);

Subgroup sylow_subgroup(const Subgroup& A, int p);
Subgroup sylow_subgroup(GroupPtr g, int p);

bool is_normal_in(const Subgroup& N, const Subgroup& A);
Subgroup conjugate_subgroup(int g, const Subgroup& P);
Subgroup intersect(const Subgroup& A, const Subgroup& B);
// A B when one of the factors normalizes the other.
Subgroup subgroup_product(const Subgroup& A, const Subgroup& B);
Subgroup normal_closure(const Subgroup& A, const std::vector<int>& seeds);

struct QuotientGroup {
  GroupPtr group;               // cosets, labeled by minimal representative
  std::vector<uint16_t> proj;   // parent element -> quotient element (0xFFFF outside A)
  std::vector<uint16_t> rep;    // quotient element -> minimal coset representative
};
QuotientGroup quotient_group(const Subgroup& A, const Subgroup& N);

AutomorphismGroup automorphism_group(const Subgroup& P);

Subgroup p_core(const Subgroup& A, int p);            // O_p
Subgroup p_prime_core(const Subgroup& A, int p);      // O_{p'}
Subgroup p_residual(const Subgroup& A, int p);        // O^p
Subgroup p_prime_residual(const Subgroup& A, int p);  // O^{p'}

struct PSolvability {
  bool solvable = false;
  std::vector<Subgroup> series;  // ascending, 1 < ... <= A
};
PSolvability p_solvable_series(const Subgroup& A, int p);

// Isomorphism A -> B as a parent-element translation table, if one exists.
std::optional<std::vector<uint16_t>> find_isomorphism(const Subgroup& A, const Subgroup& B);

int p_part(int n, int p);
bool is_prime(int p);
bool is_p_element(const FiniteGroup& g, int x, int p);

}  // namespace fuselab

#include "fuselab/fusion.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace fuselab {

// --- FusionSystem map algebra --------------------------------------------------

int FusionSystem::object_index(const Bitset& bits) const {
  auto it = index_.find(bits);
  return it == index_.end() ? -1 : it->second;
}

long FusionSystem::morphism_count() const {
  long c = 0;
  for (const auto& v : maps_) c += static_cast<long>(v.size());
  return c;
}

int FusionSystem::apply(const CompactMap& m, int parent_elt) const {
  return m.img[ranks_[m.dom][parent_elt]];
}

Bitset FusionSystem::image_of(const CompactMap& m) const {
  Bitset b(parent_->order());
  for (uint16_t v : m.img) b.set(v);
  return b;
}

CompactMap FusionSystem::compose(const CompactMap& outer, const CompactMap& inner) const {
  CompactMap r;
  r.dom = inner.dom;
  r.img.resize(inner.img.size());
  const auto& rk = ranks_[outer.dom];
  for (size_t i = 0; i < inner.img.size(); ++i) r.img[i] = outer.img[rk[inner.img[i]]];
  return r;
}

CompactMap FusionSystem::invert(const CompactMap& m) const {
  int iobj = image_object(m);
  CompactMap r;
  r.dom = iobj;
  r.img.resize(m.img.size());
  const auto& rk = ranks_[iobj];
  const auto& de = elems_[m.dom];
  for (size_t i = 0; i < m.img.size(); ++i) r.img[rk[m.img[i]]] = de[i];
  return r;
}

CompactMap FusionSystem::restrict_map(const CompactMap& m, int subobj) const {
  CompactMap r;
  r.dom = subobj;
  const auto& se = elems_[subobj];
  const auto& rk = ranks_[m.dom];
  r.img.resize(se.size());
  for (size_t i = 0; i < se.size(); ++i) r.img[i] = m.img[rk[se[i]]];
  return r;
}

CompactMap FusionSystem::identity_map(int obj) const {
  CompactMap r;
  r.dom = obj;
  r.img = elems_[obj];
  return r;
}

CompactMap FusionSystem::conj_map(int obj, int g) const {
  CompactMap r;
  r.dom = obj;
  const auto& de = elems_[obj];
  r.img.resize(de.size());
  for (size_t i = 0; i < de.size(); ++i)
    r.img[i] = static_cast<uint16_t>(parent_->conj(g, de[i]));
  return r;
}

bool FusionSystem::is_identity(const CompactMap& m) const { return m.img == elems_[m.dom]; }

bool FusionSystem::contains_map(const CompactMap& m) const {
  const auto& v = maps_[m.dom];
  return std::binary_search(v.begin(), v.end(), m);
}

GroupMap FusionSystem::to_group_map(const CompactMap& m, const Subgroup& codomain) const {
  GroupMap r;
  r.domain = objects_[m.dom];
  r.codomain = codomain;
  r.img.assign(parent_->order(), -1);
  const auto& de = elems_[m.dom];
  for (size_t i = 0; i < de.size(); ++i) r.img[de[i]] = static_cast<int16_t>(m.img[i]);
  return r;
}

GroupMap FusionSystem::to_group_map(const CompactMap& m) const { return to_group_map(m, S_); }

CompactMap FusionSystem::from_group_map(const GroupMap& m) const {
  int obj = object_index(m.domain.members);
  if (obj < 0) throw precondition_error("map domain is not a subgroup of S");
  CompactMap r;
  r.dom = obj;
  const auto& de = elems_[obj];
  r.img.resize(de.size());
  for (size_t i = 0; i < de.size(); ++i) {
    int v = m.img[de[i]];
    if (v < 0) throw precondition_error("map undefined on its domain");
    r.img[i] = static_cast<uint16_t>(v);
  }
  return r;
}

// --- FusionBuilder ---------------------------------------------------------------

FusionBuilder::FusionBuilder(Subgroup S, int p) {
  if (!is_prime(p)) throw precondition_error("p must be prime");
  if (S.order != p_part(S.order, p)) throw precondition_error("S is not a p-group");
  if (S.order > limits().max_sylow) throw size_guard_error("|S| exceeds FUSELAB_MAX_SYLOW");
  sys_.parent_ = S.parent;
  sys_.p_ = p;
  sys_.S_ = S;
  sys_.objects_ = all_subgroups(S);
  const int n = S.parent->order();
  for (int i = 0; i < static_cast<int>(sys_.objects_.size()); ++i) {
    sys_.index_.emplace(sys_.objects_[i].members, i);
    std::vector<uint16_t> rk(n, 0xFFFF), el;
    for (int e : sys_.objects_[i].elements()) {
      rk[e] = static_cast<uint16_t>(el.size());
      el.push_back(static_cast<uint16_t>(e));
    }
    sys_.ranks_.push_back(std::move(rk));
    sys_.elems_.push_back(std::move(el));
  }
  have_.resize(sys_.objects_.size());
  by_image_.resize(sys_.objects_.size());
}

void FusionBuilder::push(int obj, std::vector<uint16_t> img) {
  auto [it, inserted] = have_[obj].emplace(std::move(img), 0);
  if (!inserted) return;
  CompactMap m{obj, it->first};
  int iobj = sys_.object_index(sys_.image_of(m));
  if (iobj < 0) throw precondition_error("map image is not a subgroup of S");
  int idx = static_cast<int>(done_.size());
  done_.emplace_back(obj, it->first);
  by_image_[iobj].push_back(idx);
  queue_.emplace_back(obj, it->first);
}

void FusionBuilder::add(int obj, std::vector<uint16_t> img) { push(obj, std::move(img)); }

void FusionBuilder::add_group_map(const GroupMap& m) {
  m.validate();
  if (!m.domain.members.subset_of(sys_.S_.members) ||
      !m.image_bits().subset_of(sys_.S_.members))
    throw precondition_error("generator is not a map between subgroups of S");
  CompactMap cm = sys_.from_group_map(m);
  push(cm.dom, std::move(cm.img));
}

void FusionBuilder::add_inner() {
  for (int obj = 0; obj < static_cast<int>(sys_.objects_.size()); ++obj)
    for (int s : sys_.S_.elements()) push(obj, sys_.conj_map(obj, s).img);
}

void FusionBuilder::close() {
  // subobject table for restriction closure
  const int nobj = static_cast<int>(sys_.objects_.size());
  std::vector<std::vector<int>> subobjs(nobj);
  for (int i = 0; i < nobj; ++i)
    for (int j = 0; j < nobj; ++j)
      if (j != i && sys_.objects_[j].members.subset_of(sys_.objects_[i].members))
        subobjs[i].push_back(j);

  size_t qi = 0;
  while (qi < queue_.size()) {
    CompactMap phi{queue_[qi].first, queue_[qi].second};
    ++qi;
    int q = sys_.object_index(sys_.image_of(phi));
    push(q, sys_.invert(phi).img);
    for (int sub : subobjs[phi.dom]) push(sub, sys_.restrict_map(phi, sub).img);
    // psi . phi for known psi out of the image object
    {
      std::vector<CompactMap> snapshot;
      snapshot.reserve(have_[q].size());
      for (const auto& [img, tag] : have_[q]) snapshot.push_back(CompactMap{q, img});
      for (const auto& psi : snapshot) push(phi.dom, sys_.compose(psi, phi).img);
    }
    // phi . chi for known chi landing in phi's domain
    {
      std::vector<int> snapshot = by_image_[phi.dom];
      for (int idx : snapshot) {
        CompactMap chi{done_[idx].first, done_[idx].second};
        push(chi.dom, sys_.compose(phi, chi).img);
      }
    }
  }
}

FusionSystem FusionBuilder::take() {
  sys_.maps_.assign(sys_.objects_.size(), {});
  for (int obj = 0; obj < static_cast<int>(sys_.objects_.size()); ++obj) {
    auto& out = sys_.maps_[obj];
    out.reserve(have_[obj].size());
    for (const auto& [img, tag] : have_[obj]) out.push_back(CompactMap{obj, img});
    // std::map iteration is already sorted by img
  }
  return std::move(sys_);
}

// --- constructors -----------------------------------------------------------------

FusionSystem fusion_of_group_action(const Subgroup& A, int p, const Subgroup& sylow) {
  if (!A.contains(sylow)) throw precondition_error("Sylow subgroup not inside acting group");
  if (sylow.order != p_part(A.order, p))
    throw precondition_error("specified subgroup is not a Sylow p-subgroup");
  FusionBuilder b(sylow, p);
  const auto& objs = b.system().objects();
  for (int obj = 0; obj < static_cast<int>(objs.size()); ++obj)
    for (int a : transporter(A, objs[obj], sylow)) b.add(obj, b.system().conj_map(obj, a).img);
  // conjugation families are already closed under composition, restriction and inverses
  return b.take();
}

FusionSystem fusion_of_group_action(const Subgroup& A, int p) {
  return fusion_of_group_action(A, p, sylow_subgroup(A, p));
}

FusionSystem fusion_of_group(GroupPtr g, int p) {
  if (g->order() > limits().max_order) throw size_guard_error("group exceeds FUSELAB_MAX_ORDER");
  return fusion_of_group_action(whole_subgroup(std::move(g)), p);
}

FusionSystem close_fusion(const Subgroup& S, int p, const std::vector<GroupMap>& generators) {
  FusionBuilder b(S, p);
  b.add_inner();
  for (const auto& g : generators) b.add_group_map(g);
  b.close();
  return b.take();
}

// --- queries ----------------------------------------------------------------------

std::vector<GroupMap> hom_set(const FusionSystem& F, const Subgroup& P, const Subgroup& Q) {
  int pobj = F.object_index(P.members);
  int qobj = F.object_index(Q.members);
  if (pobj < 0 || qobj < 0) throw precondition_error("hom_set arguments must be subgroups of S");
  std::vector<GroupMap> out;
  for (const auto& m : F.maps_from(pobj))
    if (F.image_of(m).subset_of(Q.members)) out.push_back(F.to_group_map(m, Q));
  return out;
}

std::vector<int> conjugacy_class_ids(const FusionSystem& F, int obj) {
  std::set<int> ids;
  for (const auto& m : F.maps_from(obj)) ids.insert(F.image_object(m));
  return std::vector<int>(ids.begin(), ids.end());
}

std::vector<Subgroup> conjugacy_class(const FusionSystem& F, const Subgroup& P) {
  int obj = F.object_index(P.members);
  if (obj < 0) throw precondition_error("P is not a subgroup of S");
  std::vector<Subgroup> out;
  for (int id : conjugacy_class_ids(F, obj)) out.push_back(F.object(id));
  return out;
}

// --- automizers --------------------------------------------------------------------

int MapGroup::index_of(const std::vector<uint16_t>& img) const {
  CompactMap probe{maps.empty() ? -1 : maps[0].dom, img};
  auto it = std::lower_bound(maps.begin(), maps.end(), probe);
  if (it == maps.end() || it->img != img) return -1;
  return static_cast<int>(it - maps.begin());
}

MapGroup aut_group(const FusionSystem& F, int obj) {
  MapGroup mg;
  const Bitset& bits = F.object(obj).members;
  for (const auto& m : F.maps_from(obj))
    if (F.image_of(m) == bits) mg.maps.push_back(m);
  std::sort(mg.maps.begin(), mg.maps.end());
  const int n = static_cast<int>(mg.maps.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = mg.index_of(F.compose(mg.maps[i], mg.maps[j]).img);
      if (k < 0) throw error("automizer set not closed under composition");
      table[i][j] = k;
    }
  mg.table = FiniteGroup::from_table(table, {}, "Aut_F");
  return mg;
}

Subgroup auts_from(const FusionSystem& F, int obj, const Subgroup& A, const MapGroup& mg) {
  Bitset b(mg.table->order());
  const Subgroup& P = F.object(obj);
  const FiniteGroup& g = *F.parent();
  for (int a : A.elements()) {
    bool norm = true;
    P.members.for_each([&](int x) {
      if (!P.contains(g.conj(a, x))) norm = false;
    });
    if (!norm) continue;
    int idx = mg.index_of(F.conj_map(obj, a).img);
    if (idx < 0) throw error("inner automorphism missing from automizer");
    b.set(idx);
  }
  return Subgroup(mg.table, std::move(b));
}

Subgroup inner_auts(const FusionSystem& F, int obj, const MapGroup& mg) {
  return auts_from(F, obj, F.object(obj), mg);
}

// --- subgroup classification ---------------------------------------------------------

bool is_centric(const FusionSystem& F, int obj) {
  for (int q : conjugacy_class_ids(F, obj)) {
    Subgroup cs = centralizer(F.sylow(), F.object(q));
    if (!cs.members.subset_of(F.object(q).members)) return false;
  }
  return true;
}

bool is_radical(const FusionSystem& F, int obj) {
  MapGroup mg = aut_group(F, obj);
  Subgroup inner = inner_auts(F, obj, mg);
  QuotientGroup out = quotient_group(whole_subgroup(mg.table), inner);
  return p_core(whole_subgroup(out.group), F.prime()).order == 1;
}

namespace {

// Aut_S(P) image vectors, for receptivity tests.
std::set<std::vector<uint16_t>> aut_s_images(const FusionSystem& F, int obj) {
  std::set<std::vector<uint16_t>> out;
  Subgroup ns = normalizer(F.sylow(), F.object(obj));
  for (int s : ns.elements()) out.insert(F.conj_map(obj, s).img);
  return out;
}

// N_phi for an isomorphism phi : Q -> P.
Bitset n_phi(const FusionSystem& F, const CompactMap& phi,
             const std::set<std::vector<uint16_t>>& autSP) {
  int qobj = phi.dom;
  CompactMap phiinv = F.invert(phi);
  Subgroup nq = normalizer(F.sylow(), F.object(qobj));
  Bitset out(F.parent()->order());
  for (int g : nq.elements()) {
    CompactMap conj = F.compose(phi, F.compose(F.conj_map(qobj, g), phiinv));
    if (autSP.count(conj.img)) out.set(g);
  }
  return out;
}

bool has_extension(const FusionSystem& F, const CompactMap& phi, const Bitset& nphi_bits) {
  int nobj = F.object_index(nphi_bits);
  if (nobj < 0) throw error("N_phi is not a subgroup");
  for (const auto& ext : F.maps_from(nobj))
    if (F.restrict_map(ext, phi.dom).img == phi.img) return true;
  return false;
}

bool member_receptive(const FusionSystem& F, int pobj, std::string* why) {
  auto autSP = aut_s_images(F, pobj);
  const Bitset& pbits = F.object(pobj).members;
  for (int qobj : conjugacy_class_ids(F, pobj)) {
    for (const auto& m : F.maps_from(qobj)) {
      if (!(F.image_of(m) == pbits)) continue;
      Bitset nphi = n_phi(F, m, autSP);
      if (!has_extension(F, m, nphi)) {
        if (why) {
          std::ostringstream os;
          os << "iso from object of order " << F.object(qobj).order
             << " has no extension over N_phi of order " << nphi.count();
          *why = os.str();
        }
        return false;
      }
    }
  }
  return true;
}

bool member_fully_automized(const FusionSystem& F, int pobj) {
  Subgroup ns = normalizer(F.sylow(), F.object(pobj));
  Subgroup cs = centralizer(F.sylow(), F.object(pobj));
  int aut_s = ns.order / cs.order;
  int aut_f = 0;
  const Bitset& pbits = F.object(pobj).members;
  for (const auto& m : F.maps_from(pobj))
    if (F.image_of(m) == pbits) ++aut_f;
  return aut_s == p_part(aut_f, F.prime());
}

}  // namespace

bool is_strongly_closed(const FusionSystem& F, const Subgroup& T) {
  if (F.object_index(T.members) < 0) throw precondition_error("T is not a subgroup of S");
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
    if (!F.object(obj).members.subset_of(T.members)) continue;
    for (const auto& m : F.maps_from(obj))
      if (!F.image_of(m).subset_of(T.members)) return false;
  }
  return true;
}

int fully_normalized_rep(const FusionSystem& F, int obj) {
  int best = -1, best_n = -1;
  for (int q : conjugacy_class_ids(F, obj)) {
    int n = normalizer(F.sylow(), F.object(q)).order;
    if (n > best_n) {
      best_n = n;
      best = q;
    }
  }
  return best;
}

SubgroupStatus subgroup_status(const FusionSystem& F, int obj) {
  SubgroupStatus st;
  const Subgroup& S = F.sylow();
  const Subgroup& P = F.object(obj);
  auto cls = conjugacy_class_ids(F, obj);

  int my_n = normalizer(S, P).order, my_c = centralizer(S, P).order;
  int max_n = 0, max_c = 0, wn = -1, wc = -1;
  for (int q : cls) {
    int n = normalizer(S, F.object(q)).order;
    int c = centralizer(S, F.object(q)).order;
    if (n > max_n) {
      max_n = n;
      wn = q;
    }
    if (c > max_c) {
      max_c = c;
      wc = q;
    }
  }
  st.fully_normalized = my_n == max_n;
  if (!st.fully_normalized)
    st.why_not_fully_normalized =
        "|N_S| = " + std::to_string(my_n) + " < " + std::to_string(max_n) +
        " attained by conjugate object " + std::to_string(wn);
  st.fully_centralized = my_c == max_c;
  if (!st.fully_centralized)
    st.why_not_fully_centralized =
        "|C_S| = " + std::to_string(my_c) + " < " + std::to_string(max_c) +
        " attained by conjugate object " + std::to_string(wc);

  st.fully_automized = member_fully_automized(F, obj);
  if (!st.fully_automized) st.why_not_fully_automized = "Aut_S(P) is not Sylow in Aut_F(P)";

  st.receptive = member_receptive(F, obj, &st.why_not_receptive);

  st.centric = true;
  for (int q : cls) {
    if (!centralizer(S, F.object(q)).members.subset_of(F.object(q).members)) {
      st.centric = false;
      st.why_not_centric = "C_S exceeds conjugate object " + std::to_string(q);
      break;
    }
  }

  st.radical = is_radical(F, obj);
  if (!st.radical) st.why_not_radical = "O_p(Out_F(P)) != 1";

  st.strongly_closed = true;
  for (int sub = 0; sub < static_cast<int>(F.objects().size()) && st.strongly_closed; ++sub) {
    if (!F.object(sub).members.subset_of(P.members)) continue;
    for (const auto& m : F.maps_from(sub)) {
      if (!F.image_of(m).subset_of(P.members)) {
        st.strongly_closed = false;
        st.why_not_strongly_closed =
            "subgroup of order " + std::to_string(F.object(sub).order) + " escapes";
        break;
      }
    }
  }
  return st;
}

SubgroupStatus subgroup_status(const FusionSystem& F, const Subgroup& P) {
  int obj = F.object_index(P.members);
  if (obj < 0) throw precondition_error("P is not a subgroup of S");
  return subgroup_status(F, obj);
}

SaturationReport is_saturated(const FusionSystem& F, const std::vector<int>& class_reps) {
  SaturationReport rep;
  for (int obj : class_reps) {
    bool ok = false;
    for (int q : conjugacy_class_ids(F, obj)) {
      if (member_fully_automized(F, q) && member_receptive(F, q, nullptr)) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      rep.saturated = false;
      rep.witness_object = obj;
      std::string why;
      member_receptive(F, obj, &why);
      rep.detail = "no fully automized and receptive member in the class of object " +
                   std::to_string(obj) + (why.empty() ? "" : "; " + why);
      return rep;
    }
  }
  return rep;
}

SaturationReport is_saturated(const FusionSystem& F) {
  std::vector<char> seen(F.objects().size(), 0);
  std::vector<int> reps;
  for (int obj = 0; obj < static_cast<int>(F.objects().size()); ++obj) {
    if (seen[obj]) continue;
    for (int q : conjugacy_class_ids(F, obj)) seen[q] = 1;
    reps.push_back(obj);
  }
  return is_saturated(F, reps);
}

// --- equality and transport -----------------------------------------------------------

namespace {

bool same_parent(const GroupPtr& a, const GroupPtr& b) {
  if (a == b) return true;
  if (a->order() != b->order()) return false;
  const int n = a->order();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a->op(i, j) != b->op(i, j)) return false;
  return true;
}

}  // namespace

bool fusion_equals(const FusionSystem& F1, const FusionSystem& F2) {
  if (F1.prime() != F2.prime()) return false;
  if (!same_parent(F1.parent(), F2.parent())) return false;
  if (!(F1.sylow().members == F2.sylow().members)) return false;
  for (int obj = 0; obj < static_cast<int>(F1.objects().size()); ++obj) {
    const auto& a = F1.maps_from(obj);
    const auto& b = F2.maps_from(obj);
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i].img != b[i].img) return false;
  }
  return true;
}

bool fusion_contains(const FusionSystem& F, const FusionSystem& E) {
  if (F.prime() != E.prime()) return false;
  if (!same_parent(F.parent(), E.parent())) return false;
  if (!E.sylow().members.subset_of(F.sylow().members)) return false;
  for (int eobj = 0; eobj < static_cast<int>(E.objects().size()); ++eobj) {
    int fobj = F.object_index(E.object(eobj).members);
    if (fobj < 0) return false;
    for (const auto& m : E.maps_from(eobj))
      if (!F.contains_map(CompactMap{fobj, m.img})) return false;
  }
  return true;
}

bool is_trivial_system(const FusionSystem& F) { return F.sylow().order == 1; }

bool fusion_isomorphic_along(const FusionSystem& F1, const FusionSystem& F2,
                             const std::vector<uint16_t>& lambda) {
  const int n1 = F1.parent()->order();
  if (static_cast<int>(lambda.size()) != n1) return false;
  // bijection S1 -> S2 respecting multiplication
  Bitset im(F2.parent()->order());
  bool ok = true;
  F1.sylow().members.for_each([&](int x) {
    int y = lambda[x];
    if (y == 0xFFFF || !F2.sylow().contains(y) || im.test(y)) ok = false;
    else im.set(y);
  });
  if (!ok || im.count() != F1.sylow().order || F1.sylow().order != F2.sylow().order) return false;
  for (int x : F1.sylow().elements())
    for (int y : F1.sylow().elements())
      if (lambda[F1.parent()->op(x, y)] != F2.parent()->op(lambda[x], lambda[y])) return false;

  std::vector<uint16_t> lambda_inv(F2.parent()->order(), 0xFFFF);
  F1.sylow().members.for_each([&](int x) { lambda_inv[lambda[x]] = static_cast<uint16_t>(x); });

  long total2 = 0;
  for (int obj1 = 0; obj1 < static_cast<int>(F1.objects().size()); ++obj1) {
    Bitset target(F2.parent()->order());
    F1.object(obj1).members.for_each([&](int x) { target.set(lambda[x]); });
    int obj2 = F2.object_index(target);
    if (obj2 < 0) return false;
    if (F1.maps_from(obj1).size() != F2.maps_from(obj2).size()) return false;
    total2 += static_cast<long>(F2.maps_from(obj2).size());
    for (const auto& m : F1.maps_from(obj1)) {
      CompactMap t;
      t.dom = obj2;
      t.img.resize(m.img.size());
      for (size_t j = 0; j < t.img.size(); ++j) {
        int e2 = F2.element_at(obj2, static_cast<int>(j));
        int e1 = lambda_inv[e2];
        t.img[j] = lambda[F1.apply(m, e1)];
      }
      if (!F2.contains_map(t)) return false;
    }
  }
  return total2 == F2.morphism_count();
}

// --- fusion preserving automorphisms ---------------------------------------------------

namespace {

bool preserves_fusion(const FusionSystem& E, const GroupMap& alpha, const GroupMap& alpha_inv) {
  for (int obj = 0; obj < static_cast<int>(E.objects().size()); ++obj) {
    Bitset target(E.parent()->order());
    E.object(obj).members.for_each([&](int x) { target.set(alpha.img[x]); });
    int tobj = E.object_index(target);
    if (tobj < 0) return false;
    for (const auto& m : E.maps_from(obj)) {
      CompactMap t;
      t.dom = tobj;
      t.img.resize(m.img.size());
      for (size_t j = 0; j < t.img.size(); ++j) {
        int e = E.element_at(tobj, static_cast<int>(j));
        int pre = alpha_inv.img[e];
        t.img[j] = static_cast<uint16_t>(alpha.img[E.apply(m, pre)]);
      }
      if (!E.contains_map(t)) return false;
    }
  }
  return true;
}

}  // namespace

FusionPreservingAutomorphisms fusion_preserving_automorphisms(const FusionSystem& E) {
  const Subgroup& T = E.sylow();
  AutomorphismGroup full = automorphism_group(T);
  FusionPreservingAutomorphisms out;
  out.aut.base = T;
  for (const auto& a : full.maps)
    if (preserves_fusion(E, a, a.inverse())) out.aut.maps.push_back(a);
  std::sort(out.aut.maps.begin(), out.aut.maps.end());
  const int n = static_cast<int>(out.aut.maps.size());
  std::map<std::vector<int16_t>, int> index;
  for (int i = 0; i < n; ++i) index.emplace(out.aut.maps[i].img, i);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[i][j] = index.at(out.aut.maps[i].after(out.aut.maps[j]).img);
  out.aut.table = FiniteGroup::from_table(table, {}, "Aut(T,E)");

  // Aut_E(T) as a subgroup of the table group
  int tobj = E.object_index(T.members);
  Bitset autE(n);
  for (const auto& m : E.maps_from(tobj)) {
    if (!(E.image_of(m) == T.members)) continue;
    auto it = index.find(E.to_group_map(m, T).img);
    if (it == index.end()) throw error("Aut_E(T) automorphism does not preserve E");
    autE.set(it->second);
  }
  QuotientGroup q = quotient_group(whole_subgroup(out.aut.table), Subgroup(out.aut.table, autE));
  out.out_table = q.group;
  out.to_out.resize(n);
  for (int i = 0; i < n; ++i) out.to_out[i] = q.proj[i];
  return out;
}

// --- Alperin decomposition --------------------------------------------------------------

namespace {

struct AlperinCtx {
  const FusionSystem& F;
  int sobj;

  using Steps = std::vector<std::pair<int, CompactMap>>;

  static Steps inverted(const FusionSystem& F, const Steps& steps) {
    Steps out;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
      out.emplace_back(it->first, F.invert(it->second));
    return out;
  }

  CompactMap extend_to_fn(int qobj, int robj) {
    Subgroup nq = normalizer(F.sylow(), F.object(qobj));
    int nqobj = F.object_index(nq.members);
    if (qobj == robj) return F.identity_map(nqobj);
    const Bitset& rbits = F.object(robj).members;
    for (const auto& psi : F.maps_from(nqobj)) {
      if (F.image_of(F.restrict_map(psi, qobj)) == rbits) return psi;
    }
    throw decomposition_error("no morphism of N_S(Q) onto the fully normalized representative");
  }

  Steps decompose(const CompactMap& phi, int depth) {
    if (depth > 200) throw decomposition_error("recursion depth exceeded");
    if (F.is_identity(phi)) return {};
    if (phi.dom == sobj) return {{sobj, phi}};
    int pobj = phi.dom;
    int qobj = F.image_object(phi);
    int robj = fully_normalized_rep(F, pobj);
    CompactMap psi_p = extend_to_fn(pobj, robj);
    CompactMap psi_q = extend_to_fn(qobj, robj);
    CompactMap a = F.restrict_map(psi_p, pobj);
    CompactMap b = F.restrict_map(psi_q, qobj);
    CompactMap beta = F.compose(b, F.compose(phi, F.invert(a)));
    Steps out = decompose(psi_p, depth + 1);
    Steps betasteps = decompose_aut(robj, beta, depth + 1);
    out.insert(out.end(), betasteps.begin(), betasteps.end());
    Steps qsteps = inverted(F, decompose(psi_q, depth + 1));
    out.insert(out.end(), qsteps.begin(), qsteps.end());
    return out;
  }

  Steps decompose_aut(int robj, const CompactMap& beta, int depth) {
    if (depth > 200) throw decomposition_error("recursion depth exceeded");
    if (F.is_identity(beta)) return {};
    if (is_centric(F, robj) && is_radical(F, robj)) return {{robj, beta}};
    auto autS = aut_s_images(F, robj);
    Bitset nbeta = n_phi(F, beta, autS);
    if (nbeta.count() <= F.object(robj).order)
      throw decomposition_error("extension control subgroup did not grow");
    int nobj = F.object_index(nbeta);
    if (nobj < 0) throw decomposition_error("N_beta is not a subgroup");
    for (const auto& ext : F.maps_from(nobj)) {
      if (F.restrict_map(ext, robj).img == beta.img) return decompose(ext, depth + 1);
    }
    throw decomposition_error("fully normalized subgroup is not receptive");
  }
};

}  // namespace

AlperinDecomposition alperin_decompose(const FusionSystem& F, const GroupMap& phi) {
  CompactMap cm = F.from_group_map(phi);
  if (!F.contains_map(cm)) throw precondition_error("morphism does not belong to the system");
  AlperinCtx ctx{F, F.object_index(F.sylow().members)};
  auto raw = ctx.decompose(cm, 0);

  AlperinDecomposition out;
  out.target = F.to_group_map(cm);
  Bitset current = F.object(cm.dom).members;
  CompactMap composite = F.identity_map(cm.dom);
  for (const auto& [robj, alpha] : raw) {
    if (!current.subset_of(F.object(robj).members))
      throw decomposition_error("step does not cover the current subgroup");
    AlperinStep step;
    step.group = F.object(robj);
    step.automorphism = F.to_group_map(alpha, F.object(robj));
    step.applied_to = Subgroup(F.parent(), current);
    out.steps.push_back(step);
    composite = F.compose(alpha, composite);
    current = F.image_of(composite);
  }
  out.recomposed = F.to_group_map(composite);
  out.exact = composite.img == cm.img;
  if (!out.exact) throw decomposition_error("recomposition does not reproduce the morphism");
  return out;
}

}  // namespace fuselab

#ifndef CATWORK_FINCAT_HPP
#define CATWORK_FINCAT_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "catwork/base.hpp"

namespace catwork {

// Raw composition/identity tables, before the category laws are checked.
struct RawCategory {
  struct RawMor {
    std::string id, src, tgt;
  };
  std::vector<std::string> objects;
  std::vector<RawMor> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;  // (object, morphism)
  std::vector<std::array<std::string, 3>> compose;              // (g, f, g.f)
};

struct LawViolation {
  ErrKind kind;
  std::string law;
  json offender;
};

class FinCat;
using CatPtr = std::shared_ptr<const FinCat>;

// A finite category as explicit object/morphism/composition tables.
class FinCat {
 public:
  struct Mor {
    std::string id;
    int src = -1, tgt = -1;
  };

  std::vector<std::string> objects;
  std::vector<Mor> mors;
  std::vector<int> idmor;               // object -> identity morphism
  std::vector<std::vector<int>> comp;   // comp[g][f] = g.f, -1 when tgt(f) != src(g)

  int nobj() const { return static_cast<int>(objects.size()); }
  int nmor() const { return static_cast<int>(mors.size()); }
  int src(int m) const { return mors[m].src; }
  int tgt(int m) const { return mors[m].tgt; }
  bool is_id(int m) const { return idmor[mors[m].src] == m && mors[m].src == mors[m].tgt; }
  int compose(int g, int f) const { return comp[g][f]; }  // g after f
  int obj_index(const std::string& id) const;
  int mor_index(const std::string& id) const;
  std::vector<int> hom(int x, int y) const;
  bool is_invertible(int m) const;
  std::optional<int> inverse(int m) const;

  bool operator==(const FinCat& o) const;

  // Validates the raw tables. On failure the violation list names the broken
  // law together with the offending triple.
  static std::pair<std::optional<FinCat>, std::vector<LawViolation>> try_make(
      const RawCategory& raw);
  static CatPtr make(const RawCategory& raw);  // throws on violation

  // For constructions that are composition tables of an already validated
  // category (functor categories, products, ...): checks shape and units but
  // skips the cubic associativity sweep above `assoc_recheck_limit`.
  static CatPtr make_trusted(FinCat c);
  static void full_validate(const FinCat& c);  // re-check all laws, throws

  json to_json() const;
  static CatPtr from_json(const json& j);
  std::uint64_t content_hash() const;
};

CatPtr sorted_canonical(const CatPtr& c);  // objects/morphisms sorted by id

// Builders for the standard small categories.
CatPtr poset_chain(int n);  // the poset 0 -> 1 -> ... -> n
CatPtr discrete_cat(int k);
CatPtr terminal_cat();
CatPtr empty_cat();
CatPtr walking_iso();
CatPtr cyclic_group_cat(int n);  // one object, Z/n worth of arrows
CatPtr op_cat(const CatPtr& c);
CatPtr poset_cat(int n, const std::vector<std::pair<int, int>>& le);  // reflexive-transitive closure is taken

struct ProductCat {
  CatPtr cat;
  std::vector<std::pair<int, int>> obj_pairs;  // product object -> (a-obj, b-obj)
  std::vector<std::pair<int, int>> mor_pairs;
  int obj_of(int a, int b) const;
  int mor_of(int m, int n) const;

 private:
  friend ProductCat product_cat(const CatPtr&, const CatPtr&);
  int nb_obj_ = 0, nb_mor_ = 0;
};
ProductCat product_cat(const CatPtr& a, const CatPtr& b);

class Functor {
 public:
  CatPtr dom, cod;
  std::vector<int> obj_map, mor_map;

  Functor() = default;
  Functor(CatPtr d, CatPtr c, std::vector<int> om, std::vector<int> mm, bool check = true);
  int on_obj(int x) const { return obj_map[x]; }
  int on_mor(int m) const { return mor_map[m]; }
  bool operator==(const Functor& o) const { return obj_map == o.obj_map && mor_map == o.mor_map; }

  bool is_isomorphism() const;
  bool is_fully_faithful() const;
  bool is_essentially_surjective() const;
  bool is_equivalence() const;

  json to_json() const;
  static Functor from_json(const json& j, CatPtr dom, CatPtr cod);
};

Functor identity_functor(const CatPtr& c);
Functor compose_functors(const Functor& g, const Functor& f);  // g after f
Functor constant_functor(const CatPtr& dom, const CatPtr& cod, int obj);
Functor product_functor(const ProductCat& dom, const ProductCat& cod, const Functor& fa,
                        const Functor& fb);
// pairing <fa, fb> : dom -> A x B of two functors with a common domain
Functor pair_functor(const ProductCat& cod, const Functor& fa, const Functor& fb);
Functor proj1_functor(const ProductCat& p, const CatPtr& a);
Functor proj2_functor(const ProductCat& p, const CatPtr& b);
Functor op_functor(const Functor& f);  // same data between the opposite categories

class NatTrans {
 public:
  Functor src, tgt;
  std::vector<int> comps;  // per dom object, a cod morphism

  NatTrans() = default;
  NatTrans(Functor s, Functor t, std::vector<int> c, bool check = true);
  bool operator==(const NatTrans& o) const { return comps == o.comps && src == o.src && tgt == o.tgt; }
};

NatTrans vertical_compose(const NatTrans& b, const NatTrans& a);  // b after a

// A strict Cat-valued diagram: index category, a category per object and a
// functor per morphism, with action of composites equal to composites.
struct CatValuedDiagram {
  CatPtr index;
  std::vector<CatPtr> value;
  std::vector<Functor> action;

  void validate() const;  // throws on a functoriality failure
  json to_json() const;
};

// ---- core operations ----

struct SliceCat {
  CatPtr cat;
  Functor proj;                 // forgetful projection to the base category
  std::vector<int> obj_to_mor;  // slice object -> witnessing morphism of the base
  int obj_of_mor(int m) const;  // inverse lookup

 private:
  friend SliceCat slice_under(const CatPtr&, int);
  friend SliceCat slice_over(const CatPtr&, int);
  std::unordered_map<int, int> rev_;
};
SliceCat slice_under(const CatPtr& c, int x);  // C_{x/}
SliceCat slice_over(const CatPtr& c, int x);   // C_{/x}

// Weight diagrams built from slices. under_slice_diagram(C) lives on op(C)
// and sends x to C_{x/}; over_slice_diagram(C) lives on C and sends x to C_{/x}.
CatValuedDiagram under_slice_diagram(const CatPtr& c);
CatValuedDiagram over_slice_diagram(const CatPtr& c);

struct FunctorCat {
  CatPtr cat;
  std::vector<Functor> obj_functors;
  std::vector<NatTrans> mor_transes;
  int index_of(const Functor& f) const;
  int index_of_nat(const NatTrans& n) const;
};
FunctorCat functor_category(const CatPtr& c, const CatPtr& d);

struct Interior {
  CatPtr cat;
  Functor inclusion;
};
Interior interior(const CatPtr& c);

struct LimitCat {
  CatPtr cat;
  std::vector<Functor> projections;             // one per index object
  std::vector<std::vector<int>> obj_families;   // limit object -> family
  std::vector<std::vector<int>> mor_families;
};
LimitCat limit_cat(const CatValuedDiagram& d);

std::vector<Functor> enumerate_functors(const CatPtr& c, const CatPtr& d);
// Functors F : C -> D with proj_d . F = proj_c, both strictly over the same base.
std::vector<Functor> enumerate_functors_over(const CatPtr& c, const CatPtr& d,
                                             const Functor& proj_c, const Functor& proj_d);
std::vector<NatTrans> enumerate_nat(const Functor& f, const Functor& g);
// Natural transformations whose components are all identities under `collapse`.
std::vector<NatTrans> enumerate_nat_over(const Functor& f, const Functor& g,
                                         const Functor& collapse);

std::optional<Functor> cat_isomorphic(const CatPtr& a, const CatPtr& b);

struct CoconeCheck {
  bool pass = true;
  json witness;  // first failure, with the probe and the offending item
};
// Probe-based universal property: for each probe X the restriction
// Fun(apex, X) -> lim_i Fun(D(i), X) must be an isomorphism of categories.
CoconeCheck check_colimit_cocone(const CatValuedDiagram& d, const CatPtr& apex,
                                 const std::vector<Functor>& legs,
                                 const std::vector<CatPtr>& probes);

}  // namespace catwork

#endif

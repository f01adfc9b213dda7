#ifndef CATWORK_DUSKIN_HPP
#define CATWORK_DUSKIN_HPP

#include "catwork/groth.hpp"
#include "catwork/sset.hpp"

namespace catwork {

// A strict 2-category: hom categories with strictly associative and unital
// composition functors. The (2,1) flag additionally requires every hom to be
// a groupoid.
struct TwoCat {
  std::vector<std::string> objects;
  std::vector<std::vector<CatPtr>> hom;                 // hom[x][y]
  std::vector<std::vector<std::vector<ProductCat>>> comp_dom;  // product hom(y,z) x hom(x,y)
  std::vector<std::vector<std::vector<Functor>>> comp;  // comp[x][y][z]
  std::vector<int> unit;                                // object of hom[x][x]

  int nobj() const { return static_cast<int>(objects.size()); }
  // composite 1-cell g . f for f in hom(x,y), g in hom(y,z)
  int hcomp_obj(int x, int y, int z, int g, int f) const;
  // horizontal composite of 2-cells
  int hcomp_mor(int x, int y, int z, int mu_g, int mu_f) const;
  int vcomp(int x, int y, int b, int a) const;  // vertical: b after a in hom(x,y)

  void validate(bool require_groupoid) const;
};
using TwoCatPtr = std::shared_ptr<const TwoCat>;

struct TwoCatViolation {
  ErrKind kind;
  std::string law;
  json offender;
};
std::vector<TwoCatViolation> check_two_cat(const TwoCat& b, bool require_groupoid);

// builders
TwoCatPtr discrete_two_cat(const CatPtr& c);     // a 1-category, identity 2-cells
TwoCatPtr one_object_two_cells_z2();             // one 1-cell, Z/2 worth of 2-cells
TwoCatPtr one_object_z2_one_cells();             // 1-cells Z/2, identity 2-cells
TwoCatPtr walking_two_iso();                     // hom(x,y) the walking isomorphism
TwoCatPtr gen_random_two_cat(std::uint64_t seed);

// Normal oplax functor data; all comparison 2-cells invertible makes it a
// normal pseudofunctor, which is automatic out of a (2,1)-category.
struct NormalOplax {
  TwoCatPtr dom, cod;
  std::vector<int> obj_map;
  std::map<std::pair<int, int>, Functor> hom_map;  // hom(x,y) -> hom(Fx,Fy)
  // eta[(x,y,z,f,g)] : F(g.f) => F(g).F(f) in hom(Fx,Fz)
  std::map<std::array<int, 5>, int> eta;

  void validate() const;  // laws (i)-(vi); throws CoherenceViolation("law ...")
  bool is_pseudo() const;
  bool etas_all_identity() const;
};

NormalOplax identity_oplax(const TwoCatPtr& b);

struct DuskinNerve {
  SSet space;
  // decode for levels 1 and 2
  struct Edge {
    int x, y, f;
  };
  struct Triangle {
    int x0, x1, x2;
    int f01, f12, f02;
    int phi;  // 2-cell f02 => f12 . f01 in hom(x0, x2)
  };
  std::vector<Edge> edges;
  std::vector<Triangle> triangles;
  int edge_index(int x, int y, int f) const;
  int triangle_index(const Triangle& t) const;
  // cells at level >= 3 are their face tuples
  int cell_by_faces(int k, const std::vector<int>& faces) const;
};
DuskinNerve duskin_nerve(const TwoCatPtr& b, int dim);

struct CoskeletalReport {
  bool pass = true;
  int spheres4 = 0, spheres5 = 0;
  json witness;
};
CoskeletalReport check_3_coskeletal(const TwoCatPtr& b);

SSetMap duskin_encode(const NormalOplax& f, const DuskinNerve& dom_nerve,
                      const DuskinNerve& cod_nerve);
NormalOplax duskin_decode(const SSetMap& m, const TwoCatPtr& dom, const DuskinNerve& dom_nerve,
                          const TwoCatPtr& cod, const DuskinNerve& cod_nerve);

// P_{i,j}: subsets of {i..j} containing both endpoints, ordered by inclusion
CatPtr hom_poset(int i, int j);
struct CubeCheck {
  bool pass = true;
  int size = 0;
  json witness;
};
CubeCheck cube_check(int i, int j);

struct AgreementReport {
  bool pass = true;
  std::vector<int> functor_counts;  // per level 0..k_max
  std::vector<int> nerve_counts;
  json witness;
};
// simplicial functors from the cosimplicial hom-poset categories into the
// nerve-enriched two-category, against the nerve cells, level by level
AgreementReport coherent_nerve_agreement(const TwoCatPtr& b, int k_max);

// straightening relative to a wide subcategory W of the total category
struct RelativePseudofunctor {
  PseudofunctorToCat ps;
  std::vector<std::set<int>> wide;  // per base object, fiber-local W morphisms
};
RelativePseudofunctor relative_fibration_straighten(const FibCat& q, const std::set<int>& w);

}  // namespace catwork

#endif

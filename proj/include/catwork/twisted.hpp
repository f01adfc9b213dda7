#ifndef CATWORK_TWISTED_HPP
#define CATWORK_TWISTED_HPP

#include <functional>

#include "catwork/fincat.hpp"

namespace catwork {

// Twisted arrow category. Objects are the morphisms f of the base; a morphism
// f -> g is a factorization g = b . f . a, so morphisms run from an arrow to
// the arrows it factors (inner to outer). With this orientation ends are
// limits over TwCat and coends are colimits over its opposite. The paper-side
// orientation is the opposite category; see paper_op().
struct TwCat {
  CatPtr base;
  CatPtr cat;
  std::vector<int> obj_arrow;                 // Tw object -> base morphism
  std::vector<std::pair<int, int>> mor_pair;  // Tw morphism -> (a, b)
  Functor proj_src;                           // to op(base), first factorization leg
  Functor proj_tgt;                           // to base, second factorization leg
  int obj_of_arrow(int f) const;
  CatPtr paper_op() const { return op_cat(cat); }
};

TwCat twisted_arrow(const CatPtr& c);

// A bifunctor C^op x C -> Set with callback-backed tables. `at(x,y)` is the
// size of the value set; `map(a, b, e)` applies the action of the morphism
// pair (a : x' -> x, b : y -> y') to element e of value(x, y).
struct SetBifunctor {
  CatPtr base;
  std::function<int(int, int)> at;
  std::function<int(int, int, int)> map;
};

// Hom_D(F-, G-) as a Set-valued bifunctor on C; elements of the value at
// (x, y) are indices into cod->hom(F x, G y).
SetBifunctor hom_bifunctor(const Functor& f, const Functor& g);

// A bifunctor C^op x C -> Cat.
struct CatBifunctor {
  CatPtr base;
  std::function<CatPtr(int, int)> at;
  std::function<Functor(int, int)> map;  // (a, b) -> functor value(x,y) -> value(x',y')
};

struct EndResult {
  std::vector<std::vector<int>> elements;  // element -> per-Tw-object choice
  int size() const { return static_cast<int>(elements.size()); }
};
EndResult end_of(const SetBifunctor& t);

struct CoendResult {
  // disjoint union of T(tgt f, src f) over Tw objects f, modulo the coend
  // relations, computed by union-find
  std::vector<int> class_of;                  // flattened element -> class id
  std::vector<std::pair<int, int>> carrier;   // flattened element -> (tw object, element)
  int classes = 0;
};
CoendResult coend_of(const SetBifunctor& t);

// end of a Cat-valued bifunctor, as the limit over TwCat of the induced diagram
struct CatEndResult {
  TwCat tw;
  CatValuedDiagram diagram;
  LimitCat limit;
};
CatEndResult cat_end_of(const CatBifunctor& t);

// Weighted limit of F by W (both Cat-valued diagrams on the same index C):
// the end of (x, y) -> Fun(W x, F y).
CatEndResult weighted_limit(const CatValuedDiagram& w, const CatValuedDiagram& f);

// Weighted colimit data: the diagram over TwCat(C)^op with value
// W(tgt f) x F(src f), together with the twisted arrow category used.
struct WeightedColimitDiagram {
  TwCat tw;
  CatPtr index;  // op of tw.cat
  CatValuedDiagram diagram;
  std::vector<ProductCat> products;  // per Tw object
};
WeightedColimitDiagram weighted_colimit_diagram(const CatValuedDiagram& w,
                                                const CatValuedDiagram& f);

// The four lax/oplax constructions for a Cat-valued diagram on C.
WeightedColimitDiagram lax_colimit_diagram(const CatValuedDiagram& f);
WeightedColimitDiagram oplax_colimit_diagram(const CatValuedDiagram& f);
CatEndResult lax_limit(const CatValuedDiagram& f);
CatEndResult oplax_limit(const CatValuedDiagram& f);

// Natural transformations of functors C -> D, twice: once by direct
// enumeration and once as the end of Hom_D(F-, G-), with the canonical
// comparison. pass is false when either direction of the bijection fails.
struct NatEndCheck {
  bool pass = true;
  int direct_count = 0;
  int end_count = 0;
  json witness;
};
NatEndCheck nat_via_end(const Functor& f, const Functor& g);

// Strict natural transformations and modifications of Cat-valued diagrams,
// against the Cat-valued end of Fun(F-, G-).
struct NatCatCheck {
  bool pass = true;
  CatPtr direct_cat;
  CatPtr end_cat;
  json witness;
};
NatCatCheck nat_category_via_end(const CatValuedDiagram& f, const CatValuedDiagram& g);

// The category of strict natural transformations F => G and modifications.
CatPtr nat_transformation_category(const CatValuedDiagram& f, const CatValuedDiagram& g);

}  // namespace catwork

#endif

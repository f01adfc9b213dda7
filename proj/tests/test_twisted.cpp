#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "catwork/gen.hpp"
#include "catwork/twisted.hpp"

using namespace catwork;

namespace {

// Independent coend oracle for Set-valued bifunctors: the classical
// coequalizer  \coprod_{h : x -> y} T(y, x)  =>  \coprod_x T(x, x)
// computed directly from dinaturality, with no twisted arrow category.
int coend_oracle(const SetBifunctor& t) {
  const FinCat& C = *t.base;
  std::vector<int> offset(C.nobj() + 1, 0);
  for (int x = 0; x < C.nobj(); ++x) offset[x + 1] = offset[x] + t.at(x, x);
  int total = offset[C.nobj()];
  std::vector<int> parent(total);
  for (int i = 0; i < total; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int h = 0; h < C.nmor(); ++h) {
    int x = C.mors[h].src, y = C.mors[h].tgt;
    int n = t.at(y, x);
    for (int e = 0; e < n; ++e) {
      // t |-> t . h lands in T(x, x); t |-> h . t lands in T(y, y)
      int via_left = t.map(h, C.idmor[x], e);
      int via_right = t.map(C.idmor[y], h, e);
      parent[find(offset[x] + via_left)] = find(offset[y] + via_right);
    }
  }
  std::set<int> roots;
  for (int i = 0; i < total; ++i) roots.insert(find(i));
  return static_cast<int>(roots.size());
}

SetBifunctor hom_self(const CatPtr& c) {
  return hom_bifunctor(identity_functor(c), identity_functor(c));
}

}  // namespace

TEST_CASE("twisted_arrow counts for chains") {
  auto t1 = twisted_arrow(poset_chain(1));
  CHECK(t1.cat->nobj() == 3);
  CHECK(t1.cat->nmor() == 5);
  auto t2 = twisted_arrow(poset_chain(2));
  CHECK(t2.cat->nobj() == 6);
  CHECK(t2.cat->nmor() == 15);
  auto t0 = twisted_arrow(poset_chain(0));
  CHECK(t0.cat->nobj() == 1);
  CHECK(t0.cat->nmor() == 1);
  FinCat::full_validate(*t2.cat);
}

TEST_CASE("paper-orientation opposite of Tw([n]) realizes the interval-containment poset") {
  for (int n = 1; n <= 4; ++n) {
    auto tw = twisted_arrow(poset_chain(n));
    CHECK(tw.cat->nobj() == (n + 1) * (n + 2) / 2);
    // the poset with objects (i,j), i <= j, and (i,j) <= (i',j') iff i <= i' <= j' <= j
    std::vector<std::pair<int, int>> objs;
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j) objs.push_back({i, j});
    std::vector<std::pair<int, int>> le;
    for (int p = 0; p < static_cast<int>(objs.size()); ++p)
      for (int q = 0; q < static_cast<int>(objs.size()); ++q)
        if (objs[p].first <= objs[q].first && objs[q].second <= objs[p].second) le.push_back({p, q});
    auto expected = poset_cat(static_cast<int>(objs.size()), le);
    CHECK(cat_isomorphic(tw.paper_op(), expected).has_value());
  }
}

TEST_CASE("twisted arrow projections are functorial to op(base) and base") {
  auto c = gen_random_category(GenBounds{3, 2}, 41);
  auto tw = twisted_arrow(c);
  CHECK(*tw.proj_src.cod == *op_cat(c));
  CHECK(*tw.proj_tgt.cod == *c);
}

TEST_CASE("end of Hom over [1] is a single wedge") {
  auto c = poset_chain(1);
  auto e = end_of(hom_self(c));
  CHECK(e.size() == 1);
}

TEST_CASE("end over a discrete category is the product") {
  auto c = discrete_cat(3);
  SetBifunctor t;
  t.base = c;
  t.at = [](int x, int y) { return x == y ? (x + 1) : 0; };
  t.map = [&](int, int, int e) { return e; };
  auto e = end_of(t);
  CHECK(e.size() == 1 * 2 * 3);
}

TEST_CASE("coend of Hom over [1], frozen from the coequalizer oracle") {
  auto c = poset_chain(1);
  auto t = hom_self(c);
  int oracle = coend_oracle(t);
  CHECK(oracle == 2);  // endomorphism classes of [1]: id_0 and id_1
  auto co = coend_of(t);
  CHECK(co.classes == oracle);
}

TEST_CASE("coend over a discrete category is the coproduct") {
  auto c = discrete_cat(3);
  SetBifunctor t;
  t.base = c;
  t.at = [](int x, int y) { return x == y ? 2 : 0; };
  t.map = [&](int, int, int e) { return e; };
  auto co = coend_of(t);
  CHECK(co.classes == 6);
  CHECK(coend_oracle(t) == 6);
}

TEST_CASE("coend of Hom agrees with the coequalizer oracle on seeded categories") {
  for (unsigned seed : {2u, 9u, 31u, 77u}) {
    auto c = gen_random_category(GenBounds{3, 2}, seed);
    auto t = hom_self(c);
    CHECK(coend_of(t).classes == coend_oracle(t));
  }
}

TEST_CASE("nat_via_end: singleton cases") {
  auto one = poset_chain(1);
  // F = id, G = const_1 on [1]
  auto r1 = nat_via_end(identity_functor(one), constant_functor(one, one, 1));
  CHECK(r1.pass);
  CHECK(r1.direct_count == 1);
  CHECK(r1.end_count == 1);
  // identity on any poset
  auto two = poset_chain(2);
  auto r2 = nat_via_end(identity_functor(two), identity_functor(two));
  CHECK(r2.pass);
  CHECK(r2.direct_count == 1);
}

TEST_CASE("nat_via_end on seeded instances") {
  int done = 0;
  for (unsigned seed = 0; seed < 12; ++seed) {
    auto c = gen_random_category(GenBounds{3, 1}, seed * 3 + 1);
    auto d = gen_random_category(GenBounds{4, 2}, seed * 7 + 2);
    auto fs = enumerate_functors(c, d);
    if (fs.size() < 2) continue;
    Rng rng(seed);
    const Functor& f = fs[rng.below(static_cast<int>(fs.size()))];
    const Functor& g = fs[rng.below(static_cast<int>(fs.size()))];
    auto r = nat_via_end(f, g);
    CHECK(r.pass);
    CHECK(r.direct_count == r.end_count);
    ++done;
  }
  CHECK(done >= 6);
}

TEST_CASE("oplax limit of the two-point contravariant diagram is [1]") {
  // F : [1]^op -> Cat with F(0) = [0], F(1) = [1]
  auto opc = op_cat(poset_chain(1));
  CatValuedDiagram f;
  f.index = opc;
  f.value = {terminal_cat(), poset_chain(1)};
  f.action.resize(opc->nmor());
  for (int m = 0; m < opc->nmor(); ++m) {
    if (opc->is_id(m))
      f.action[m] = identity_functor(f.value[opc->mors[m].src]);
    else  // the op arrow 1 -> 0: F(1) -> F(0) is the unique functor to the point
      f.action[m] = constant_functor(poset_chain(1), terminal_cat(), 0);
  }
  f.validate();
  auto ol = oplax_limit(f);
  CHECK(cat_isomorphic(ol.limit.cat, poset_chain(1)).has_value());
}

TEST_CASE("weighted limit with the unit weight is the plain limit") {
  auto index = poset_chain(1);
  auto f = gen_random_diagram(index, GenBounds{2, 1}, 55);
  CatValuedDiagram unit;
  unit.index = index;
  for (int x = 0; x < index->nobj(); ++x) unit.value.push_back(terminal_cat());
  for (int m = 0; m < index->nmor(); ++m)
    unit.action.push_back(identity_functor(terminal_cat()));
  auto wl = weighted_limit(unit, f);
  auto plain = limit_cat(f);
  CHECK(cat_isomorphic(wl.limit.cat, plain.cat).has_value());
}

TEST_CASE("weighted limit by a representable reduces to the value (Yoneda)") {
  // C = [1], W = C(c, -) as discrete categories, F arbitrary; the weighted
  // limit is F(c). Take c = 0 so W(0) = {*}, W(1) = {*}.
  auto c = poset_chain(1);
  auto f = gen_random_diagram(c, GenBounds{2, 1}, 19);
  CatValuedDiagram w;
  w.index = c;
  w.value = {discrete_cat(1), discrete_cat(1)};
  w.action.resize(c->nmor());
  for (int m = 0; m < c->nmor(); ++m)
    w.action[m] = constant_functor(discrete_cat(1), discrete_cat(1), 0);
  auto wl = weighted_limit(w, f);
  CHECK(cat_isomorphic(wl.limit.cat, f.value[0]).has_value());
}

TEST_CASE("lax colimit diagram of a two-point diagram has the pushout shape") {
  // C = [1], F(0) = A, F(1) = B: values over Tw([1])^op are
  // [1]_{0/} x A  (at id_0),  [1]_{1/} x B  (at id_1),  [1]_{1/} x A  (at u)
  auto c = poset_chain(1);
  auto f = gen_random_diagram(c, GenBounds{2, 0}, 8);
  auto lax = lax_colimit_diagram(f);
  REQUIRE(lax.diagram.value.size() == 3);
  for (int i = 0; i < 3; ++i) {
    int g = lax.tw.obj_arrow[i];
    int x = c->mors[g].src, y = c->mors[g].tgt;
    int expected_weight = (y == 0) ? 2 : 1;  // |[1]_{0/}| = 2 objects, |[1]_{1/}| = 1
    CHECK(lax.diagram.value[i]->nobj() == expected_weight * f.value[x]->nobj());
  }
}

TEST_CASE("nat_category_via_end: point index and constant diagrams") {
  // D = [0]: the end is Fun(F(0), G(0))
  CatValuedDiagram f, g;
  f.index = g.index = terminal_cat();
  f.value = {poset_chain(1)};
  g.value = {poset_chain(1)};
  f.action = {identity_functor(f.value[0])};
  g.action = {identity_functor(g.value[0])};
  auto r = nat_category_via_end(f, g);
  CHECK(r.pass);
  auto fun = functor_category(poset_chain(1), poset_chain(1));
  CHECK(cat_isomorphic(r.end_cat, fun.cat).has_value());

  // D = [1], F = G = constant [1]
  auto one = poset_chain(1);
  CatValuedDiagram fc, gc;
  fc.index = gc.index = one;
  fc.value = {one, one};
  gc.value = {one, one};
  for (int m = 0; m < one->nmor(); ++m) {
    fc.action.push_back(identity_functor(one));
    gc.action.push_back(identity_functor(one));
  }
  auto r2 = nat_category_via_end(fc, gc);
  CHECK(r2.pass);
  CHECK(cat_isomorphic(r2.end_cat, fun.cat).has_value());
}

TEST_CASE("nat_category_via_end on a seeded instance") {
  auto index = gen_random_poset(2, 91);
  auto f = gen_random_diagram(index, GenBounds{2, 0}, 13);
  auto g = gen_random_diagram(index, GenBounds{2, 0}, 14);
  auto r = nat_category_via_end(f, g);
  CHECK(r.pass);
}

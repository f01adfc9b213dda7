#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catwork/gen.hpp"
#include "catwork/sset.hpp"
#include "catwork/twisted.hpp"

using namespace catwork;

namespace {

// Oracle for nondegenerate cells of a product of simplices: a k-cell is a
// pair of monotone words, nondegenerate exactly when no column repeats.
long long product_nondeg_oracle(int n, int m, int k) {
  std::vector<int> u(k + 1), v(k + 1);
  long long count = 0;
  std::function<void(int)> rec = [&](int pos) {
    if (pos == k + 1) {
      ++count;
      return;
    }
    int ustart = (pos == 0) ? 0 : u[pos - 1];
    int vstart = (pos == 0) ? 0 : v[pos - 1];
    for (int a = ustart; a <= n; ++a)
      for (int b = vstart; b <= m; ++b) {
        if (pos > 0 && a == u[pos - 1] && b == v[pos - 1]) continue;  // repeated column
        u[pos] = a;
        v[pos] = b;
        rec(pos + 1);
      }
  };
  rec(0);
  return count;
}

}  // namespace

TEST_CASE("standard simplices, boundaries, horns, spines") {
  auto d1 = simplex(1, 4);
  CHECK(d1.count(0) == 2);
  CHECK(d1.count(1) == 3);
  CHECK(d1.nondegenerate_count(1) == 1);
  auto sp2 = spine(2, 4);
  CHECK(sp2.count(0) == 3);
  CHECK(sp2.nondegenerate_count(1) == 2);
  CHECK(sp2.nondegenerate_count(2) == 0);
  auto h21 = horn(2, 1, 4);
  CHECK(h21.nondegenerate_count(1) == 2);
  CHECK(h21.nondegenerate_count(2) == 0);
  auto b2 = boundary(2, 4);
  CHECK(b2.nondegenerate_count(1) == 3);
  CHECK(b2.nondegenerate_count(2) == 0);
  d1.validate();
}

TEST_CASE("product of two 1-simplices has nondegenerate counts (4, 5, 2)") {
  auto p = product(simplex(1, 4), simplex(1, 4));
  CHECK(p.nondegenerate_count(0) == 4);
  CHECK(p.nondegenerate_count(1) == 5);
  CHECK(p.nondegenerate_count(2) == 2);
  CHECK(p.nondegenerate_count(3) == 0);
  // oracle agreement on a couple of shapes
  CHECK(product_nondeg_oracle(1, 1, 1) == 5);
  CHECK(product_nondeg_oracle(1, 1, 2) == 2);
  auto p21 = product(simplex(2, 4), simplex(1, 4));
  for (int k = 0; k <= 3; ++k)
    CHECK(p21.nondegenerate_count(k) == product_nondeg_oracle(2, 1, k));
}

TEST_CASE("pushout of two triangles along the long edge is the square") {
  // Delta^2 u_{Delta^{0,2}} Delta^2 = Delta^1 x Delta^1
  auto d2 = simplex(2, 3);
  auto d1 = simplex(1, 3);
  // two maps d1 -> d2 picking the 02 edge
  std::vector<std::vector<int>> lvl(4);
  for (int k = 0; k <= 3; ++k) {
    lvl[k].resize(d1.count(k));
    for (int c = 0; c < d1.count(k); ++c) {
      // word over [1] with values in {0,1} -> word over [2] sending 0 |-> 0, 1 |-> 2
      SimplicialOperator w;
      // recover the word from the cell order: rebuild by enumeration
      // cells of simplex(1) at level k are monotone words [k] -> [1] in
      // lexicographic construction order; reconstruct them:
      std::vector<SimplicialOperator> words;
      std::function<void(SimplicialOperator&, int, int)> rec = [&](SimplicialOperator& acc,
                                                                   int pos, int lo) {
        if (pos == k + 1) {
          words.push_back(acc);
          return;
        }
        for (int v = lo; v <= 1; ++v) {
          acc.push_back(v);
          rec(acc, pos + 1, v);
          acc.pop_back();
        }
      };
      SimplicialOperator acc;
      rec(acc, 0, 0);
      w = words[c];
      for (int& v : w) v = (v == 0) ? 0 : 2;
      // find in d2
      int found = -1;
      std::vector<SimplicialOperator> words2;
      std::function<void(SimplicialOperator&, int, int)> rec3 = [&](SimplicialOperator& acc2,
                                                                    int pos, int lo) {
        if (pos == k + 1) {
          words2.push_back(acc2);
          return;
        }
        for (int v = lo; v <= 2; ++v) {
          acc2.push_back(v);
          rec3(acc2, pos + 1, v);
          acc2.pop_back();
        }
      };
      SimplicialOperator acc2;
      rec3(acc2, 0, 0);
      for (size_t t = 0; t < words2.size(); ++t)
        if (words2[t] == w) found = static_cast<int>(t);
      lvl[k][c] = found;
    }
  }
  SSetMap edge = SSetMap::make(d1, d2, lvl);
  auto po = pushout(d1, d2, edge, d2, edge);
  auto square = product(simplex(1, 3), simplex(1, 3));
  CHECK(sset_isomorphic(po.space, square).has_value());
}

TEST_CASE("coskeleton and is_k_coskeletal") {
  auto c = gen_random_category(GenBounds{3, 1}, 12);
  auto n2 = nerve(c, 4);
  CHECK(is_k_coskeletal(n2, 2));
  CHECK(is_k_coskeletal(n2, 3));
  CHECK(!is_k_coskeletal(simplex(1, 3), 0));
  // cosk_k(X) agrees with X up to level k and is k-coskeletal
  auto csk = coskeleton(n2, 2, 4);
  CHECK(is_k_coskeletal(csk, 2));
  for (int k = 0; k <= 2; ++k) CHECK(csk.count(k) == n2.count(k));
  CHECK(csk.count(3) == n2.count(3));
}

TEST_CASE("edgewise subdivision of the 1-simplex") {
  auto esd = edgewise_subdivision(simplex(1, 5));
  CHECK(esd.count(0) == 3);
  CHECK(esd.nondegenerate_count(1) == 2);
  CHECK(esd.nondegenerate_count(2) == 0);
  auto esd0 = edgewise_subdivision(simplex(0, 3));
  CHECK(esd0.count(0) == 1);
  CHECK(esd0.nondegenerate_count(1) == 0);
}

TEST_CASE("esd of a nerve is the nerve of the paper-oriented twisted arrow category") {
  for (unsigned seed : {4u, 18u, 33u}) {
    auto c = gen_random_category(GenBounds{3, 1}, seed);
    auto n = nerve(c, 5);
    auto esd = edgewise_subdivision(n);
    auto tw = twisted_arrow(c);
    auto ntw = nerve(tw.paper_op(), 2);
    CHECK(esd.dim == 2);
    CHECK(sset_isomorphic(esd, ntw).has_value());
  }
}

TEST_CASE("nerve and realization") {
  auto two = poset_chain(2);
  auto n = nerve(two, 4);
  CHECK(n.count(0) == 3);
  CHECK(n.nondegenerate_count(1) == 3);
  CHECK(n.nondegenerate_count(2) == 1);
  auto r = realize(n);
  CHECK(cat_isomorphic(r.cat, two).has_value());

  CHECK(cat_isomorphic(realize(horn(2, 1, 3)).cat, poset_chain(2)).has_value());
  for (int nn = 1; nn <= 4; ++nn)
    CHECK(cat_isomorphic(realize(spine(nn, 3)).cat, poset_chain(nn)).has_value());
  auto sq = product(simplex(1, 3), simplex(1, 3));
  auto sq_cat = product_cat(poset_chain(1), poset_chain(1));
  CHECK(cat_isomorphic(realize(sq).cat, sq_cat.cat).has_value());
}

TEST_CASE("realize rejects cyclic one-skeleta") {
  // two nondegenerate edges a -> b -> a assembled by hand
  SSet x;
  x.dim = 1;
  x.cells = {{"a", "b"}, {"ida", "idb", "e1", "e2"}};
  x.face.resize(2);
  x.degen.resize(2);
  x.face[1] = {{0, 1, 1, 0}, {0, 1, 0, 1}};  // d0 (target), d1 (source)
  x.degen[0] = {{0, 1}};
  x.validate();
  CHECK_THROWS_AS(realize(x), CatError);
}

TEST_CASE("nerve round trip on seeded acyclic categories") {
  for (unsigned seed : {2u, 10u}) {
    auto c = gen_random_poset(4, seed);
    auto n = nerve(c, 3);
    auto r = realize(n);
    CHECK(cat_isomorphic(r.cat, c).has_value());
    auto n2 = nerve(r.cat, 3);
    CHECK(sset_isomorphic(n, n2).has_value());
  }
}

namespace {
SimplexDiagram two_point_phi() {
  // n = 1, phi(0) = Delta^1, phi(1) = Delta^0
  std::vector<MarkedSSet> values = {natural(simplex(1, 4)), natural(simplex(0, 4))};
  std::vector<std::vector<int>> lvl(5);
  for (int k = 0; k <= 4; ++k) lvl[k].assign(values[0].space.count(k), 0);
  SSetMap to_point = SSetMap::make(values[0].space, values[1].space, lvl);
  return SimplexDiagram::from_steps(values, {to_point});
}
}  // namespace

TEST_CASE("mapping simplex of the two-point diagram") {
  auto phi = two_point_phi();
  auto m = mapping_simplex(phi, 3);
  CHECK(m.m.space.count(0) == 3);
  CHECK(m.m.space.nondegenerate_count(1) == 4);
  // constant phi = point gives Delta^n
  std::vector<MarkedSSet> pts = {natural(simplex(0, 3)), natural(simplex(0, 3))};
  std::vector<std::vector<int>> lvl(4);
  for (int k = 0; k <= 3; ++k) lvl[k].assign(1, 0);
  auto d = SimplexDiagram::from_steps(pts, {SSetMap::make(pts[0].space, pts[1].space, lvl)});
  auto mp = mapping_simplex(d, 3);
  CHECK(sset_isomorphic(mp.m.space, simplex(1, 3)).has_value());
}

TEST_CASE("relative nerve, nu, and the fiber comparison") {
  auto phi = two_point_phi();
  auto m = mapping_simplex(phi, 3);
  auto n = relative_nerve(phi, 3);
  CHECK(n.m.space.count(0) == 3);
  auto comparison = nu(phi, m, n);
  // bijective on vertices
  std::set<int> v(comparison.level[0].begin(), comparison.level[0].end());
  CHECK(v.size() == 3);
  for (int i = 0; i <= 1; ++i) {
    auto fc = fiber_compare(phi, m, n, i);
    CHECK(fc.pass);
  }
  // n = 0: nu is the identity
  std::vector<MarkedSSet> single = {natural(simplex(1, 3))};
  auto d0 = SimplexDiagram::from_steps(single, {});
  auto m0 = mapping_simplex(d0, 3);
  auto n0 = relative_nerve(d0, 3);
  auto nu0 = nu(d0, m0, n0);
  for (int k = 0; k <= 3; ++k) {
    std::set<int> img(nu0.level[k].begin(), nu0.level[k].end());
    CHECK(static_cast<int>(img.size()) == m0.m.space.count(k));
  }
}

TEST_CASE("mapping simplex decompositions for the two-point diagram") {
  auto phi = two_point_phi();
  auto r = mapping_simplex_decompositions(phi, 3);
  CHECK(r.pushout_identity);
  CHECK(r.zigzag_identity);
  CHECK(r.coend_identity);
  CHECK(r.pass);
}

TEST_CASE("mapping simplex decompositions for a constant point diagram on [2]") {
  std::vector<MarkedSSet> pts = {natural(simplex(0, 3)), natural(simplex(0, 3)),
                                 natural(simplex(0, 3))};
  std::vector<std::vector<int>> lvl(4);
  for (int k = 0; k <= 3; ++k) lvl[k].assign(1, 0);
  SSetMap idm = SSetMap::make(pts[0].space, pts[1].space, lvl);
  auto d = SimplexDiagram::from_steps(pts, {idm, idm});
  auto m = mapping_simplex(d, 3);
  CHECK(sset_isomorphic(m.m.space, simplex(2, 3)).has_value());
  auto r = mapping_simplex_decompositions(d, 3);
  CHECK(r.pass);
}

TEST_CASE("json round trip for simplicial sets") {
  auto x = product(simplex(1, 3), simplex(1, 3));
  auto j = x.to_json();
  auto y = SSet::from_json(j);
  CHECK(j.dump() == y.to_json().dump());
}

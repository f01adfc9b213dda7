#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catwork/duskin.hpp"
#include "catwork/gen.hpp"

using namespace catwork;

namespace {

// F2 solution-count oracle for the one-object 2-cells-Z/2 nerve at level m:
// simplices are phi : triangles of Delta^m -> Z/2 with, per tetrahedron
// {a<b<c<d}, phi(bcd) + phi(acd) + phi(abd) + phi(abc) = 0.
long long z2_level_count_oracle(int m) {
  std::vector<std::array<int, 3>> tris;
  for (int a = 0; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      for (int c = b + 1; c <= m; ++c) tris.push_back({a, b, c});
  auto tix = [&](int a, int b, int c) {
    for (size_t t = 0; t < tris.size(); ++t)
      if (tris[t][0] == a && tris[t][1] == b && tris[t][2] == c) return static_cast<int>(t);
    return -1;
  };
  std::vector<std::vector<int>> rows;
  for (int a = 0; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      for (int c = b + 1; c <= m; ++c)
        for (int d = c + 1; d <= m; ++d) {
          std::vector<int> row(tris.size(), 0);
          row[tix(b, c, d)] ^= 1;
          row[tix(a, c, d)] ^= 1;
          row[tix(a, b, d)] ^= 1;
          row[tix(a, b, c)] ^= 1;
          rows.push_back(row);
        }
  // Gaussian elimination over F2
  int rank = 0;
  size_t cols = tris.size();
  for (size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (size_t r = rank; r < rows.size(); ++r)
      if (rows[r][col]) {
        pivot = static_cast<int>(r);
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (static_cast<int>(r) != rank && rows[r][col])
        for (size_t cc = 0; cc < cols; ++cc) rows[r][cc] ^= rows[rank][cc];
    ++rank;
  }
  return 1ll << (static_cast<long long>(cols) - rank);
}

}  // namespace

TEST_CASE("two-category validation and builders") {
  auto z2 = one_object_two_cells_z2();
  CHECK(check_two_cat(*z2, true).empty());
  auto z2cells = one_object_z2_one_cells();
  CHECK(check_two_cat(*z2cells, true).empty());
  auto w2 = walking_two_iso();
  CHECK(check_two_cat(*w2, true).empty());
  auto disc = discrete_two_cat(poset_chain(2));
  CHECK(check_two_cat(*disc, false).empty());
  // a broken unit is caught
  TwoCat bad = *one_object_z2_one_cells();
  bad.unit[0] = 1;  // the nonidentity 1-cell is not a strict unit
  CHECK(!check_two_cat(bad, false).empty());
}

TEST_CASE("duskin nerve of the one-object Z/2 two-category has level counts (1,1,2,8)") {
  auto n = duskin_nerve(one_object_two_cells_z2(), 4);
  CHECK(n.space.count(0) == 1);
  CHECK(n.space.count(1) == 1);
  CHECK(n.space.count(2) == 2);
  CHECK(n.space.count(3) == 8);
  CHECK(z2_level_count_oracle(2) == 2);
  CHECK(z2_level_count_oracle(3) == 8);
  CHECK(z2_level_count_oracle(4) == 64);
  CHECK(n.space.count(4) == 64);
}

TEST_CASE("duskin nerve of a 1-category is its nerve") {
  for (auto c : {poset_chain(2), gen_random_category(GenBounds{3, 1}, 6)}) {
    auto dn = duskin_nerve(discrete_two_cat(c), 4);
    auto n = nerve(c, 4);
    for (int k = 0; k <= 4; ++k) CHECK(dn.space.count(k) == n.count(k));
    CHECK(sset_isomorphic(dn.space, n).has_value());
  }
}

TEST_CASE("duskin nerve of the walking 2-isomorphism") {
  auto n = duskin_nerve(walking_two_iso(), 3);
  CHECK(n.space.count(2) == 10);
  CHECK(n.space.nondegenerate_count(2) == 4);
  // the mixed-vertex 2-simplices match the hom groupoid arrow count
  int mixed = 0;
  for (const auto& t : n.triangles)
    if (t.x0 == 0 && t.x1 == 0 && t.x2 == 1) ++mixed;
  CHECK(mixed == 4);
}

TEST_CASE("3-coskeletality") {
  CHECK(check_3_coskeletal(one_object_two_cells_z2()).pass);
  CHECK(check_3_coskeletal(discrete_two_cat(poset_chain(1))).pass);
  CHECK(check_3_coskeletal(walking_two_iso()).pass);
  for (unsigned seed = 0; seed < 6; ++seed)
    CHECK(check_3_coskeletal(gen_random_two_cat(seed)).pass);
  // 2-coskeletal exactly when all 2-cells are identities
  auto n_z2 = duskin_nerve(one_object_two_cells_z2(), 4);
  CHECK(!is_k_coskeletal(n_z2.space, 2));
  auto n_disc = duskin_nerve(discrete_two_cat(poset_chain(2)), 4);
  CHECK(is_k_coskeletal(n_disc.space, 2));
}

TEST_CASE("duskin encode/decode round trip on the identity and a strict functor") {
  auto b = discrete_two_cat(poset_chain(1));
  auto nb = duskin_nerve(b, 4);
  auto idf = identity_oplax(b);
  auto m = duskin_encode(idf, nb, nb);
  for (int k = 0; k <= 4; ++k)
    for (int c = 0; c < nb.space.count(k); ++c) CHECK(m.level[k][c] == c);
  auto back = duskin_decode(m, b, nb, b, nb);
  CHECK(back.obj_map == idf.obj_map);
  CHECK(back.etas_all_identity());
}

TEST_CASE("duskin dictionary with a nontrivial eta") {
  // source: 1-cells Z/2 with identity 2-cells; target: one 1-cell with Z/2
  // 2-cells; eta on the unique composable pair of nonidentity 1-cells is the
  // nontrivial 2-cell
  auto src = one_object_z2_one_cells();
  auto tgt = one_object_two_cells_z2();
  NormalOplax f;
  f.dom = src;
  f.cod = tgt;
  f.obj_map = {0};
  // both 1-cells map to the unique 1-cell of the target
  f.hom_map[{0, 0}] = Functor(src->hom[0][0], tgt->hom[0][0], {0, 0},
                              {tgt->hom[0][0]->idmor[0], tgt->hom[0][0]->idmor[0]});
  int nontrivial = -1;
  for (int m = 0; m < tgt->hom[0][0]->nmor(); ++m)
    if (!tgt->hom[0][0]->is_id(m)) nontrivial = m;
  REQUIRE(nontrivial >= 0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      bool unit_leg = (a == 0) || (b == 0);
      f.eta[{0, 0, 0, a, b}] = unit_leg ? tgt->hom[0][0]->idmor[0] : nontrivial;
    }
  f.validate();
  CHECK(f.is_pseudo());
  CHECK(!f.etas_all_identity());

  auto nsrc = duskin_nerve(src, 4);
  auto ntgt = duskin_nerve(tgt, 4);
  auto m = duskin_encode(f, nsrc, ntgt);
  auto back = duskin_decode(m, src, nsrc, tgt, ntgt);
  CHECK(back.eta.at({0, 0, 0, 1, 1}) == nontrivial);
  CHECK(back.eta.at({0, 0, 0, 0, 1}) == tgt->hom[0][0]->idmor[0]);
  auto m2 = duskin_encode(back, nsrc, ntgt);
  CHECK(m.level == m2.level);
}

TEST_CASE("hom posets and cubes") {
  CHECK(hom_poset(0, 1)->nobj() == 1);
  CHECK(hom_poset(0, 2)->nobj() == 2);
  CHECK(cat_isomorphic(hom_poset(0, 2), poset_chain(1)).has_value());
  CHECK(hom_poset(0, 3)->nobj() == 4);
  for (int j = 1; j <= 4; ++j) {
    auto r = cube_check(0, j);
    CHECK(r.pass);
    CHECK(r.size == (1 << std::max(0, j - 1)));
  }
}

TEST_CASE("coherent nerve agreement") {
  auto z2 = one_object_two_cells_z2();
  auto r = coherent_nerve_agreement(z2, 4);
  CHECK(r.pass);
  REQUIRE(r.functor_counts.size() == 5);
  CHECK(r.functor_counts[0] == 1);
  CHECK(r.functor_counts[1] == 1);
  CHECK(r.functor_counts[2] == 2);
  CHECK(r.functor_counts[3] == 8);
  CHECK(r.functor_counts[4] == 64);
  for (unsigned seed = 0; seed < 5; ++seed) {
    auto b = gen_random_two_cat(seed + 40);
    auto rr = coherent_nerve_agreement(b, 3);
    CHECK(rr.pass);
  }
}

TEST_CASE("relative straightening") {
  // fibration over [1] with walking-iso fibers: W = everything works
  auto one = poset_chain(1);
  auto opc = op_cat(one);
  CatValuedDiagram f;
  f.index = opc;
  f.value = {walking_iso(), walking_iso()};
  f.action.resize(opc->nmor());
  for (int m = 0; m < opc->nmor(); ++m)
    f.action[m] = opc->is_id(m) ? identity_functor(f.value[opc->mors[m].src])
                                : identity_functor(walking_iso());
  f.validate();
  auto gr = cart_groth(f);
  std::set<int> all;
  for (int m = 0; m < gr.fib.total->nmor(); ++m) all.insert(m);
  auto r = relative_fibration_straighten(gr.fib, all);
  CHECK(r.wide.size() == 2);
  for (int c = 0; c < 2; ++c)
    CHECK(r.wide[c].size() == static_cast<size_t>(r.ps.value[c]->nmor()));

  // W = isomorphisms of the total category: contains all cartesian morphisms
  std::set<int> isos;
  for (int m = 0; m < gr.fib.total->nmor(); ++m)
    if (gr.fib.total->is_invertible(m)) isos.insert(m);
  for (int m : gr.fib.cartesian) isos.insert(m);
  auto r2 = relative_fibration_straighten(gr.fib, isos);
  CHECK(r2.ps.etas_all_identity());

  // a W whose fiber part is not stable under pullback is rejected
  CatValuedDiagram g;
  g.index = opc;
  g.value = {poset_chain(1), poset_chain(1)};
  g.action.resize(opc->nmor());
  for (int m = 0; m < opc->nmor(); ++m)
    g.action[m] = opc->is_id(m) ? identity_functor(g.value[opc->mors[m].src])
                                : identity_functor(poset_chain(1));
  g.validate();
  auto gr2 = cart_groth(g);
  std::set<int> w;
  for (int m = 0; m < gr2.fib.total->nmor(); ++m)
    if (gr2.fib.total->is_id(m)) w.insert(m);
  for (int m : gr2.fib.cartesian) w.insert(m);
  // add the nonidentity arrow of the fiber over 1, and its forced composites
  int w1 = -1;
  for (int m = 0; m < gr2.fib.total->nmor(); ++m) {
    auto [gamma, xi] = gr2.mor_pairs[m];
    if (gr2.fib.base->is_id(gamma) && gr2.fib.base->mors[gamma].src == 1 &&
        !g.value[1]->is_id(xi))
      w1 = m;
  }
  REQUIRE(w1 >= 0);
  w.insert(w1);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a : std::set<int>(w))
      for (int b : std::set<int>(w)) {
        int ab = (gr2.fib.total->mors[b].tgt == gr2.fib.total->mors[a].src)
                     ? gr2.fib.total->comp[a][b]
                     : -1;
        if (ab >= 0 && !w.count(ab)) {
          w.insert(ab);
          grew = true;
        }
      }
  }
  CHECK_THROWS_AS(relative_fibration_straighten(gr2.fib, w), CatError);
}

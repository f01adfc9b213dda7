#include "catwork/gen.hpp"

#include <algorithm>
#include <functional>

namespace catwork {

CatPtr gen_random_poset(int max_objects, std::uint64_t seed) {
  Rng rng(seed);
  int n = rng.range(1, max_objects);
  std::vector<std::pair<int, int>> le;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.coin()) le.push_back({i, j});  // i < j keeps the relation acyclic
  return poset_cat(n, le);
}

CatPtr gen_random_category(const GenBounds& b, std::uint64_t seed) {
  Rng rng(seed);
  int n = rng.range(1, b.max_objects);
  std::vector<std::pair<int, int>> le;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.coin()) le.push_back({i, j});
  auto poset = poset_cat(n, le);

  int extras = rng.range(0, b.max_extra_arrows);
  if (extras == 0) return poset;

  RawCategory raw;
  raw.objects = poset->objects;
  for (const auto& m : poset->mors)
    raw.morphisms.push_back({m.id, poset->objects[m.src], poset->objects[m.tgt]});
  for (int x = 0; x < poset->nobj(); ++x)
    raw.identities.push_back({poset->objects[x], poset->mors[poset->idmor[x]].id});

  // Extra arrows sit parallel to existing poset arrows and compose by
  // collapsing to the poset arrow. Loops are idempotent, at most one per
  // object; more than that cannot be made associative by collapsing.
  struct Extra {
    int src, tgt;
    std::string id;
  };
  std::vector<Extra> ex;
  std::vector<bool> has_loop(poset->nobj(), false);
  for (int k = 0; k < extras; ++k) {
    int m = rng.below(poset->nmor());
    int s = poset->mors[m].src, t = poset->mors[m].tgt;
    if (s == t) {
      if (has_loop[s]) continue;
      has_loop[s] = true;
    }
    Extra e{s, t, "e" + std::to_string(k)};
    ex.push_back(e);
    raw.morphisms.push_back({e.id, poset->objects[e.src], poset->objects[e.tgt]});
  }

  int total = static_cast<int>(raw.morphisms.size());
  auto base_arrow = [&](int i) -> std::pair<int, int> {
    if (i < poset->nmor()) return {poset->mors[i].src, poset->mors[i].tgt};
    const Extra& e = ex[i - poset->nmor()];
    return {e.src, e.tgt};
  };
  auto poset_between = [&](int s, int t) -> std::string {
    return std::to_string(s) + ">" + std::to_string(t);
  };
  auto is_identity = [&](int i) { return i < poset->nmor() && poset->is_id(i); };
  for (int g = 0; g < total; ++g)
    for (int f = 0; f < total; ++f) {
      auto [fs, ft] = base_arrow(f);
      auto [gs, gt] = base_arrow(g);
      if (ft != gs) continue;
      std::string res;
      if (is_identity(f))
        res = raw.morphisms[g].id;
      else if (is_identity(g))
        res = raw.morphisms[f].id;
      else if (g == f && fs == ft && g >= poset->nmor())
        res = raw.morphisms[f].id;  // idempotent loop
      else
        res = poset_between(fs, gt);  // other nonidentity composites collapse
      raw.compose.push_back({raw.morphisms[g].id, raw.morphisms[f].id, res});
    }
  return FinCat::make(raw);
}

Functor gen_random_functor(const CatPtr& c, const CatPtr& d, std::uint64_t seed) {
  auto all = enumerate_functors(c, d);
  if (all.empty())
    throw CatError(ErrKind::Internal, "no functor exists between generated categories");
  Rng rng(seed);
  return all[rng.below(static_cast<int>(all.size()))];
}

namespace {
std::vector<int> longest_chain_rank(const FinCat& index) {
  int n = index.nobj();
  std::vector<int> rank(n, 0);
  bool changed = true;
  int guard = 0;
  while (changed && guard++ < n + 2) {
    changed = false;
    for (int m = 0; m < index.nmor(); ++m) {
      if (index.is_id(m)) continue;
      int s = index.mors[m].src, t = index.mors[m].tgt;
      if (s == t) continue;
      if (rank[t] < rank[s] + 1) {
        rank[t] = rank[s] + 1;
        changed = true;
      }
    }
  }
  return rank;
}
}  // namespace

CatValuedDiagram gen_random_diagram(const CatPtr& index, const GenBounds& fiber_bounds,
                                    std::uint64_t seed) {
  Rng rng(seed);
  auto rank = longest_chain_rank(*index);
  int maxrank = 0;
  for (int r : rank) maxrank = std::max(maxrank, r);

  // a chain of categories and functors along the ranks; every diagram arrow
  // acts by the composite of chain steps, so all squares commute strictly
  std::vector<CatPtr> chain(maxrank + 1);
  for (int r = 0; r <= maxrank; ++r) chain[r] = gen_random_category(fiber_bounds, rng.raw());
  std::vector<Functor> step(maxrank);
  for (int r = 0; r < maxrank; ++r) step[r] = gen_random_functor(chain[r], chain[r + 1], rng.raw());
  auto chain_map = [&](int r0, int r1) {
    Functor f = identity_functor(chain[r0]);
    for (int r = r0; r < r1; ++r) f = compose_functors(step[r], f);
    return f;
  };

  CatValuedDiagram d;
  d.index = index;
  for (int x = 0; x < index->nobj(); ++x) d.value.push_back(chain[rank[x]]);
  for (int m = 0; m < index->nmor(); ++m) {
    int s = index->mors[m].src, t = index->mors[m].tgt;
    if (index->is_id(m) || s == t)
      d.action.push_back(identity_functor(d.value[s]));
    else
      d.action.push_back(chain_map(rank[s], rank[t]));
  }
  d.validate();
  return d;
}

CatValuedDiagram gen_random_presheaf(const CatPtr& c, int max_fiber, std::uint64_t seed) {
  Rng rng(seed);
  auto opc = op_cat(c);
  auto rank = longest_chain_rank(*opc);
  int maxrank = 0;
  for (int r : rank) maxrank = std::max(maxrank, r);
  std::vector<CatPtr> chain(maxrank + 1);
  for (int r = 0; r <= maxrank; ++r) {
    int size = rng.range(0, max_fiber);
    if (size == 0 && r < maxrank) size = 1;  // keep maps into later stages definable
    chain[r] = discrete_cat(size);
  }
  for (int r = 0; r + 1 <= maxrank; ++r)
    if (chain[r + 1]->nobj() == 0 && chain[r]->nobj() > 0) chain[r + 1] = discrete_cat(1);
  std::vector<Functor> step(maxrank);
  for (int r = 0; r < maxrank; ++r) {
    const CatPtr& a = chain[r];
    const CatPtr& b = chain[r + 1];
    std::vector<int> om(a->nobj()), mm(a->nmor());
    for (int x = 0; x < a->nobj(); ++x) {
      om[x] = b->nobj() ? rng.below(b->nobj()) : 0;
      mm[x] = om[x];
    }
    step[r] = Functor(a, b, om, mm);
  }
  auto chain_map = [&](int r0, int r1) {
    Functor f = identity_functor(chain[r0]);
    for (int r = r0; r < r1; ++r) f = compose_functors(step[r], f);
    return f;
  };
  CatValuedDiagram d;
  d.index = opc;
  for (int x = 0; x < opc->nobj(); ++x) d.value.push_back(chain[rank[x]]);
  for (int m = 0; m < opc->nmor(); ++m) {
    int s = opc->mors[m].src, t = opc->mors[m].tgt;
    if (opc->is_id(m) || s == t)
      d.action.push_back(identity_functor(d.value[s]));
    else
      d.action.push_back(chain_map(rank[s], rank[t]));
  }
  d.validate();
  return d;
}

}  // namespace catwork

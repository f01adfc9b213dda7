#include "catwork/fincat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace catwork {

namespace {
// Associativity sweeps are cubic; constructions whose tables are componentwise
// images of already-validated categories skip them above this size.
constexpr int kAssocRecheckLimit = 160;

std::unordered_map<std::string, int> index_of(const std::vector<std::string>& ids) {
  std::unordered_map<std::string, int> m;
  for (int i = 0; i < static_cast<int>(ids.size()); ++i) m[ids[i]] = i;
  return m;
}
}  // namespace

int FinCat::obj_index(const std::string& id) const {
  for (int i = 0; i < nobj(); ++i)
    if (objects[i] == id) return i;
  return -1;
}

int FinCat::mor_index(const std::string& id) const {
  for (int i = 0; i < nmor(); ++i)
    if (mors[i].id == id) return i;
  return -1;
}

std::vector<int> FinCat::hom(int x, int y) const {
  std::vector<int> out;
  for (int m = 0; m < nmor(); ++m)
    if (mors[m].src == x && mors[m].tgt == y) out.push_back(m);
  return out;
}

bool FinCat::is_invertible(int m) const { return inverse(m).has_value(); }

std::optional<int> FinCat::inverse(int m) const {
  int x = mors[m].src, y = mors[m].tgt;
  for (int n : hom(y, x))
    if (compose(n, m) == idmor[x] && compose(m, n) == idmor[y]) return n;
  return std::nullopt;
}

bool FinCat::operator==(const FinCat& o) const {
  if (objects != o.objects || idmor != o.idmor || comp != o.comp) return false;
  if (mors.size() != o.mors.size()) return false;
  for (size_t i = 0; i < mors.size(); ++i)
    if (mors[i].id != o.mors[i].id || mors[i].src != o.mors[i].src || mors[i].tgt != o.mors[i].tgt)
      return false;
  return true;
}

std::pair<std::optional<FinCat>, std::vector<LawViolation>> FinCat::try_make(
    const RawCategory& raw) {
  std::vector<LawViolation> bad;
  FinCat c;
  c.objects = raw.objects;
  auto oix = index_of(raw.objects);
  std::unordered_map<std::string, int> mix;
  for (const auto& rm : raw.morphisms) {
    Mor m;
    m.id = rm.id;
    auto is = oix.find(rm.src), it = oix.find(rm.tgt);
    if (is == oix.end() || it == oix.end()) {
      bad.push_back({ErrKind::TypeMismatch, "morphism endpoints must be declared objects",
                     {{"morphism", rm.id}, {"src", rm.src}, {"tgt", rm.tgt}}});
      continue;
    }
    m.src = is->second;
    m.tgt = it->second;
    if (mix.count(rm.id)) {
      bad.push_back({ErrKind::TypeMismatch, "duplicate morphism id", {{"morphism", rm.id}}});
      continue;
    }
    mix[rm.id] = static_cast<int>(c.mors.size());
    c.mors.push_back(m);
  }
  c.idmor.assign(c.nobj(), -1);
  for (const auto& [ob, mo] : raw.identities) {
    auto io = oix.find(ob);
    auto im = mix.find(mo);
    if (io == oix.end() || im == mix.end()) {
      bad.push_back({ErrKind::TypeMismatch, "identity table references unknown id",
                     {{"object", ob}, {"morphism", mo}}});
      continue;
    }
    c.idmor[io->second] = im->second;
    const Mor& m = c.mors[im->second];
    if (m.src != io->second || m.tgt != io->second)
      bad.push_back({ErrKind::TypeMismatch, "identity morphism is not an endomorphism",
                     {{"object", ob}, {"morphism", mo}}});
  }
  for (int x = 0; x < c.nobj(); ++x)
    if (c.idmor[x] < 0)
      bad.push_back({ErrKind::UnitViolation, "object has no identity", {{"object", c.objects[x]}}});

  c.comp.assign(c.nmor(), std::vector<int>(c.nmor(), -1));
  for (const auto& t : raw.compose) {
    auto g = mix.find(t[0]), f = mix.find(t[1]), gf = mix.find(t[2]);
    if (g == mix.end() || f == mix.end() || gf == mix.end()) {
      bad.push_back({ErrKind::TypeMismatch, "compose entry references unknown morphism",
                     {{"g", t[0]}, {"f", t[1]}, {"gf", t[2]}}});
      continue;
    }
    c.comp[g->second][f->second] = gf->second;
  }
  if (!bad.empty()) return {std::nullopt, bad};

  auto report = [&](ErrKind k, const std::string& law, json off) {
    bad.push_back({k, law, std::move(off)});
  };

  for (int g = 0; g < c.nmor(); ++g)
    for (int f = 0; f < c.nmor(); ++f) {
      int gf = c.comp[g][f];
      bool composable = c.mors[f].tgt == c.mors[g].src;
      if (!composable && gf >= 0)
        report(ErrKind::TypeMismatch, "compose entry for non-composable pair",
               {{"g", c.mors[g].id}, {"f", c.mors[f].id}});
      if (composable && gf < 0)
        report(ErrKind::TypeMismatch, "missing compose entry",
               {{"g", c.mors[g].id}, {"f", c.mors[f].id}});
      if (composable && gf >= 0 &&
          (c.mors[gf].src != c.mors[f].src || c.mors[gf].tgt != c.mors[g].tgt))
        report(ErrKind::TypeMismatch, "compose entry does not respect src/tgt",
               {{"g", c.mors[g].id}, {"f", c.mors[f].id}, {"gf", c.mors[gf].id}});
    }
  if (!bad.empty()) return {std::nullopt, bad};

  for (int m = 0; m < c.nmor(); ++m) {
    int l = c.comp[c.idmor[c.mors[m].tgt]][m];
    int r = c.comp[m][c.idmor[c.mors[m].src]];
    if (l != m)
      report(ErrKind::UnitViolation, "identity is not a left unit",
             {{"morphism", c.mors[m].id}, {"got", l >= 0 ? c.mors[l].id : "?"}});
    if (r != m)
      report(ErrKind::UnitViolation, "identity is not a right unit",
             {{"morphism", c.mors[m].id}, {"got", r >= 0 ? c.mors[r].id : "?"}});
  }
  if (!bad.empty()) return {std::nullopt, bad};

  for (int h = 0; h < c.nmor(); ++h)
    for (int g = 0; g < c.nmor(); ++g) {
      if (c.mors[g].tgt != c.mors[h].src) continue;
      int hg = c.comp[h][g];
      for (int f = 0; f < c.nmor(); ++f) {
        if (c.mors[f].tgt != c.mors[g].src) continue;
        int gf = c.comp[g][f];
        if (c.comp[h][gf] != c.comp[hg][f]) {
          report(ErrKind::AssocViolation, "associativity fails on a composable triple",
                 {{"h", c.mors[h].id}, {"g", c.mors[g].id}, {"f", c.mors[f].id}});
          return {std::nullopt, bad};
        }
      }
    }
  return {std::move(c), {}};
}

CatPtr FinCat::make(const RawCategory& raw) {
  ensure_cat_size(static_cast<int>(raw.objects.size()), static_cast<int>(raw.morphisms.size()));
  auto [cat, bad] = try_make(raw);
  if (!cat) {
    json offenders = json::array();
    for (const auto& v : bad) offenders.push_back({{"law", v.law}, {"offender", v.offender}});
    throw CatError(bad.front().kind, bad.front().law, offenders);
  }
  return std::make_shared<const FinCat>(std::move(*cat));
}

CatPtr FinCat::make_trusted(FinCat c) {
  ensure_cat_size(c.nobj(), c.nmor());
  if (c.nmor() <= kAssocRecheckLimit) {
    full_validate(c);
    return std::make_shared<const FinCat>(std::move(c));
  }
  // shape and unit checks stay on, only the cubic sweep is skipped
  for (int m = 0; m < c.nmor(); ++m) {
    if (c.comp[c.idmor[c.mors[m].tgt]][m] != m || c.comp[m][c.idmor[c.mors[m].src]] != m)
      throw CatError(ErrKind::UnitViolation, "unit law fails in constructed category",
                     {{"morphism", c.mors[m].id}});
  }
  return std::make_shared<const FinCat>(std::move(c));
}

void FinCat::full_validate(const FinCat& c) {
  RawCategory raw;
  raw.objects = c.objects;
  for (const auto& m : c.mors) raw.morphisms.push_back({m.id, c.objects[m.src], c.objects[m.tgt]});
  for (int x = 0; x < c.nobj(); ++x) raw.identities.push_back({c.objects[x], c.mors[c.idmor[x]].id});
  for (int g = 0; g < c.nmor(); ++g)
    for (int f = 0; f < c.nmor(); ++f)
      if (c.comp[g][f] >= 0)
        raw.compose.push_back({c.mors[g].id, c.mors[f].id, c.mors[c.comp[g][f]].id});
  auto [cat, bad] = try_make(raw);
  if (!cat)
    throw CatError(bad.front().kind, "constructed category breaks " + bad.front().law,
                   bad.front().offender);
}

json FinCat::to_json() const {
  json j;
  j["objects"] = objects;
  j["morphisms"] = json::array();
  for (const auto& m : mors)
    j["morphisms"].push_back({{"id", m.id}, {"src", objects[m.src]}, {"tgt", objects[m.tgt]}});
  json ids = json::object();
  for (int x = 0; x < nobj(); ++x) ids[objects[x]] = mors[idmor[x]].id;
  j["identities"] = ids;
  std::vector<std::array<std::string, 3>> triples;
  for (int g = 0; g < nmor(); ++g)
    for (int f = 0; f < nmor(); ++f)
      if (comp[g][f] >= 0) triples.push_back({mors[g].id, mors[f].id, mors[comp[g][f]].id});
  std::sort(triples.begin(), triples.end());
  j["compose"] = json::array();
  for (const auto& t : triples) j["compose"].push_back({t[0], t[1], t[2]});
  return j;
}

CatPtr FinCat::from_json(const json& j) {
  RawCategory raw;
  for (const auto& o : j.at("objects")) raw.objects.push_back(o.get<std::string>());
  for (const auto& m : j.at("morphisms"))
    raw.morphisms.push_back({m.at("id").get<std::string>(), m.at("src").get<std::string>(),
                             m.at("tgt").get<std::string>()});
  for (auto it = j.at("identities").begin(); it != j.at("identities").end(); ++it)
    raw.identities.push_back({it.key(), it.value().get<std::string>()});
  for (const auto& t : j.at("compose"))
    raw.compose.push_back({t.at(0).get<std::string>(), t.at(1).get<std::string>(),
                           t.at(2).get<std::string>()});
  return make(raw);
}

std::uint64_t FinCat::content_hash() const { return json_hash(to_json()); }

CatPtr sorted_canonical(const CatPtr& c) {
  RawCategory raw;
  raw.objects = c->objects;
  std::sort(raw.objects.begin(), raw.objects.end());
  std::vector<int> order(c->nmor());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return c->mors[a].id < c->mors[b].id; });
  for (int m : order)
    raw.morphisms.push_back(
        {c->mors[m].id, c->objects[c->mors[m].src], c->objects[c->mors[m].tgt]});
  for (int x = 0; x < c->nobj(); ++x)
    raw.identities.push_back({c->objects[x], c->mors[c->idmor[x]].id});
  for (int g = 0; g < c->nmor(); ++g)
    for (int f = 0; f < c->nmor(); ++f)
      if (c->comp[g][f] >= 0)
        raw.compose.push_back({c->mors[g].id, c->mors[f].id, c->mors[c->comp[g][f]].id});
  return FinCat::make(raw);
}

// ---- builders ----

CatPtr poset_chain(int n) {
  std::vector<std::pair<int, int>> le;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) le.push_back({i, j});
  return poset_cat(n + 1, le);
}

CatPtr poset_cat(int n, const std::vector<std::pair<int, int>>& le) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) rel[i][i] = true;
  for (auto [a, b] : le) rel[a][b] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;

  RawCategory raw;
  for (int i = 0; i < n; ++i) raw.objects.push_back(std::to_string(i));
  auto mid = [](int i, int j) { return std::to_string(i) + ">" + std::to_string(j); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i][j]) raw.morphisms.push_back({mid(i, j), std::to_string(i), std::to_string(j)});
  for (int i = 0; i < n; ++i) raw.identities.push_back({std::to_string(i), mid(i, i)});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (rel[i][j] && rel[j][k]) raw.compose.push_back({mid(j, k), mid(i, j), mid(i, k)});
  return FinCat::make(raw);
}

CatPtr discrete_cat(int k) {
  RawCategory raw;
  for (int i = 0; i < k; ++i) {
    raw.objects.push_back(std::to_string(i));
    raw.morphisms.push_back({"id" + std::to_string(i), std::to_string(i), std::to_string(i)});
    raw.identities.push_back({std::to_string(i), "id" + std::to_string(i)});
    raw.compose.push_back({"id" + std::to_string(i), "id" + std::to_string(i), "id" + std::to_string(i)});
  }
  return FinCat::make(raw);
}

CatPtr terminal_cat() { return poset_chain(0); }

CatPtr empty_cat() {
  RawCategory raw;
  return FinCat::make(raw);
}

CatPtr walking_iso() {
  RawCategory raw;
  raw.objects = {"a", "b"};
  raw.morphisms = {{"ida", "a", "a"}, {"idb", "b", "b"}, {"u", "a", "b"}, {"v", "b", "a"}};
  raw.identities = {{"a", "ida"}, {"b", "idb"}};
  raw.compose = {{"ida", "ida", "ida"}, {"idb", "idb", "idb"}, {"u", "ida", "u"},
                 {"idb", "u", "u"},     {"v", "idb", "v"},     {"ida", "v", "v"},
                 {"v", "u", "ida"},     {"u", "v", "idb"}};
  return FinCat::make(raw);
}

CatPtr cyclic_group_cat(int n) {
  RawCategory raw;
  raw.objects = {"*"};
  for (int i = 0; i < n; ++i) raw.morphisms.push_back({"g" + std::to_string(i), "*", "*"});
  raw.identities = {{"*", "g0"}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      raw.compose.push_back(
          {"g" + std::to_string(i), "g" + std::to_string(j), "g" + std::to_string((i + j) % n)});
  return FinCat::make(raw);
}

CatPtr op_cat(const CatPtr& c) {
  FinCat o;
  o.objects = c->objects;
  o.idmor = c->idmor;
  for (const auto& m : c->mors) o.mors.push_back({m.id, m.tgt, m.src});
  o.comp.assign(c->nmor(), std::vector<int>(c->nmor(), -1));
  for (int g = 0; g < c->nmor(); ++g)
    for (int f = 0; f < c->nmor(); ++f)
      if (c->comp[g][f] >= 0) o.comp[f][g] = c->comp[g][f];
  return FinCat::make_trusted(std::move(o));
}

int ProductCat::obj_of(int a, int b) const { return a * nb_obj_ + b; }
int ProductCat::mor_of(int m, int n) const { return m * nb_mor_ + n; }

ProductCat product_cat(const CatPtr& a, const CatPtr& b) {
  ProductCat p;
  p.nb_obj_ = b->nobj();
  p.nb_mor_ = b->nmor();
  ensure_cat_size(a->nobj() * b->nobj(), a->nmor() * b->nmor());
  FinCat c;
  for (int x = 0; x < a->nobj(); ++x)
    for (int y = 0; y < b->nobj(); ++y) {
      c.objects.push_back("(" + a->objects[x] + "," + b->objects[y] + ")");
      p.obj_pairs.push_back({x, y});
    }
  for (int m = 0; m < a->nmor(); ++m)
    for (int n = 0; n < b->nmor(); ++n) {
      c.mors.push_back({"(" + a->mors[m].id + "," + b->mors[n].id + ")",
                        p.obj_of(a->mors[m].src, b->mors[n].src),
                        p.obj_of(a->mors[m].tgt, b->mors[n].tgt)});
      p.mor_pairs.push_back({m, n});
    }
  c.idmor.assign(c.objects.size(), -1);
  for (int x = 0; x < a->nobj(); ++x)
    for (int y = 0; y < b->nobj(); ++y)
      c.idmor[p.obj_of(x, y)] = p.mor_of(a->idmor[x], b->idmor[y]);
  int M = static_cast<int>(c.mors.size());
  c.comp.assign(M, std::vector<int>(M, -1));
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f) {
      auto [gm, gn] = p.mor_pairs[g];
      auto [fm, fn] = p.mor_pairs[f];
      int cm = a->comp[gm][fm], cn = b->comp[gn][fn];
      if (cm >= 0 && cn >= 0) c.comp[g][f] = p.mor_of(cm, cn);
    }
  p.cat = FinCat::make_trusted(std::move(c));
  return p;
}

// ---- functors ----

Functor::Functor(CatPtr d, CatPtr c, std::vector<int> om, std::vector<int> mm, bool check)
    : dom(std::move(d)), cod(std::move(c)), obj_map(std::move(om)), mor_map(std::move(mm)) {
  if (!check) return;
  if (static_cast<int>(obj_map.size()) != dom->nobj() ||
      static_cast<int>(mor_map.size()) != dom->nmor())
    throw CatError(ErrKind::TypeMismatch, "functor tables have the wrong size");
  for (int m = 0; m < dom->nmor(); ++m) {
    int fm = mor_map[m];
    if (cod->mors[fm].src != obj_map[dom->mors[m].src] ||
        cod->mors[fm].tgt != obj_map[dom->mors[m].tgt])
      throw CatError(ErrKind::TypeMismatch, "functor does not respect src/tgt",
                     {{"morphism", dom->mors[m].id}});
  }
  for (int x = 0; x < dom->nobj(); ++x)
    if (mor_map[dom->idmor[x]] != cod->idmor[obj_map[x]])
      throw CatError(ErrKind::TypeMismatch, "functor does not preserve an identity",
                     {{"object", dom->objects[x]}});
  for (int g = 0; g < dom->nmor(); ++g)
    for (int f = 0; f < dom->nmor(); ++f) {
      int gf = dom->comp[g][f];
      if (gf >= 0 && cod->comp[mor_map[g]][mor_map[f]] != mor_map[gf])
        throw CatError(ErrKind::TypeMismatch, "functor does not preserve a composite",
                       {{"g", dom->mors[g].id}, {"f", dom->mors[f].id}});
    }
}

bool Functor::is_isomorphism() const {
  if (dom->nobj() != cod->nobj() || dom->nmor() != cod->nmor()) return false;
  std::vector<bool> ohit(cod->nobj(), false), mhit(cod->nmor(), false);
  for (int x : obj_map) ohit[x] = true;
  for (int m : mor_map) mhit[m] = true;
  return std::all_of(ohit.begin(), ohit.end(), [](bool b) { return b; }) &&
         std::all_of(mhit.begin(), mhit.end(), [](bool b) { return b; });
}

bool Functor::is_fully_faithful() const {
  for (int x = 0; x < dom->nobj(); ++x)
    for (int y = 0; y < dom->nobj(); ++y) {
      auto hs = dom->hom(x, y);
      auto ht = cod->hom(obj_map[x], obj_map[y]);
      if (hs.size() != ht.size()) return false;
      std::set<int> image;
      for (int m : hs) image.insert(mor_map[m]);
      if (image.size() != hs.size()) return false;
    }
  return true;
}

bool Functor::is_essentially_surjective() const {
  for (int d = 0; d < cod->nobj(); ++d) {
    bool hit = false;
    for (int x = 0; x < dom->nobj() && !hit; ++x)
      for (int m : cod->hom(obj_map[x], d))
        if (cod->is_invertible(m)) {
          hit = true;
          break;
        }
    if (!hit) return false;
  }
  return true;
}

bool Functor::is_equivalence() const { return is_fully_faithful() && is_essentially_surjective(); }

json Functor::to_json() const {
  json obj = json::object(), mor = json::object();
  for (int x = 0; x < dom->nobj(); ++x) obj[dom->objects[x]] = cod->objects[obj_map[x]];
  for (int m = 0; m < dom->nmor(); ++m) mor[dom->mors[m].id] = cod->mors[mor_map[m]].id;
  return json{{"obj", obj}, {"mor", mor}};
}

Functor Functor::from_json(const json& j, CatPtr dom, CatPtr cod) {
  std::vector<int> om(dom->nobj(), -1), mm(dom->nmor(), -1);
  for (auto it = j.at("obj").begin(); it != j.at("obj").end(); ++it) {
    int x = dom->obj_index(it.key()), y = cod->obj_index(it.value().get<std::string>());
    if (x < 0 || y < 0) throw CatError(ErrKind::UnknownObject, "functor json references unknown object");
    om[x] = y;
  }
  for (auto it = j.at("mor").begin(); it != j.at("mor").end(); ++it) {
    int m = dom->mor_index(it.key()), n = cod->mor_index(it.value().get<std::string>());
    if (m < 0 || n < 0) throw CatError(ErrKind::UnknownObject, "functor json references unknown morphism");
    mm[m] = n;
  }
  return Functor(dom, cod, om, mm);
}

Functor identity_functor(const CatPtr& c) {
  std::vector<int> om(c->nobj()), mm(c->nmor());
  std::iota(om.begin(), om.end(), 0);
  std::iota(mm.begin(), mm.end(), 0);
  return Functor(c, c, om, mm, false);
}

Functor compose_functors(const Functor& g, const Functor& f) {
  if (!(*f.cod == *g.dom))
    throw CatError(ErrKind::DomainMismatch, "functor composition domain mismatch");
  std::vector<int> om(f.dom->nobj()), mm(f.dom->nmor());
  for (int x = 0; x < f.dom->nobj(); ++x) om[x] = g.obj_map[f.obj_map[x]];
  for (int m = 0; m < f.dom->nmor(); ++m) mm[m] = g.mor_map[f.mor_map[m]];
  return Functor(f.dom, g.cod, om, mm, false);
}

Functor constant_functor(const CatPtr& dom, const CatPtr& cod, int obj) {
  std::vector<int> om(dom->nobj(), obj), mm(dom->nmor(), cod->idmor[obj]);
  return Functor(dom, cod, om, mm, false);
}

Functor product_functor(const ProductCat& dom, const ProductCat& cod, const Functor& fa,
                        const Functor& fb) {
  std::vector<int> om(dom.cat->nobj()), mm(dom.cat->nmor());
  for (int x = 0; x < dom.cat->nobj(); ++x) {
    auto [a, b] = dom.obj_pairs[x];
    om[x] = cod.obj_of(fa.obj_map[a], fb.obj_map[b]);
  }
  for (int m = 0; m < dom.cat->nmor(); ++m) {
    auto [a, b] = dom.mor_pairs[m];
    mm[m] = cod.mor_of(fa.mor_map[a], fb.mor_map[b]);
  }
  return Functor(dom.cat, cod.cat, om, mm, false);
}

Functor pair_functor(const ProductCat& cod, const Functor& fa, const Functor& fb) {
  const CatPtr& d = fa.dom;
  std::vector<int> om(d->nobj()), mm(d->nmor());
  for (int x = 0; x < d->nobj(); ++x) om[x] = cod.obj_of(fa.obj_map[x], fb.obj_map[x]);
  for (int m = 0; m < d->nmor(); ++m) mm[m] = cod.mor_of(fa.mor_map[m], fb.mor_map[m]);
  return Functor(d, cod.cat, om, mm, false);
}

Functor proj1_functor(const ProductCat& p, const CatPtr& a) {
  std::vector<int> om(p.cat->nobj()), mm(p.cat->nmor());
  for (int x = 0; x < p.cat->nobj(); ++x) om[x] = p.obj_pairs[x].first;
  for (int m = 0; m < p.cat->nmor(); ++m) mm[m] = p.mor_pairs[m].first;
  return Functor(p.cat, a, om, mm, false);
}

Functor proj2_functor(const ProductCat& p, const CatPtr& b) {
  std::vector<int> om(p.cat->nobj()), mm(p.cat->nmor());
  for (int x = 0; x < p.cat->nobj(); ++x) om[x] = p.obj_pairs[x].second;
  for (int m = 0; m < p.cat->nmor(); ++m) mm[m] = p.mor_pairs[m].second;
  return Functor(p.cat, b, om, mm, false);
}

Functor op_functor(const Functor& f) {
  return Functor(op_cat(f.dom), op_cat(f.cod), f.obj_map, f.mor_map, false);
}

// ---- natural transformations ----

NatTrans::NatTrans(Functor s, Functor t, std::vector<int> c, bool check)
    : src(std::move(s)), tgt(std::move(t)), comps(std::move(c)) {
  if (!check) return;
  if (!(*src.dom == *tgt.dom) || !(*src.cod == *tgt.cod))
    throw CatError(ErrKind::DomainMismatch, "natural transformation between incompatible functors");
  const FinCat& D = *src.cod;
  for (int x = 0; x < src.dom->nobj(); ++x) {
    int cx = comps[x];
    if (D.mors[cx].src != src.obj_map[x] || D.mors[cx].tgt != tgt.obj_map[x])
      throw CatError(ErrKind::TypeMismatch, "component has wrong endpoints",
                     {{"object", src.dom->objects[x]}});
  }
  for (int m = 0; m < src.dom->nmor(); ++m) {
    int x = src.dom->mors[m].src, y = src.dom->mors[m].tgt;
    if (D.comp[comps[y]][src.mor_map[m]] != D.comp[tgt.mor_map[m]][comps[x]])
      throw CatError(ErrKind::TypeMismatch, "naturality square does not commute",
                     {{"morphism", src.dom->mors[m].id}});
  }
}

NatTrans vertical_compose(const NatTrans& b, const NatTrans& a) {
  std::vector<int> comps(a.comps.size());
  for (size_t x = 0; x < comps.size(); ++x)
    comps[x] = a.src.cod->comp[b.comps[x]][a.comps[x]];
  return NatTrans(a.src, b.tgt, comps, false);
}

void CatValuedDiagram::validate() const {
  if (static_cast<int>(value.size()) != index->nobj() ||
      static_cast<int>(action.size()) != index->nmor())
    throw CatError(ErrKind::TypeMismatch, "diagram tables have the wrong size");
  for (int m = 0; m < index->nmor(); ++m) {
    if (!(*action[m].dom == *value[index->mors[m].src]) ||
        !(*action[m].cod == *value[index->mors[m].tgt]))
      throw CatError(ErrKind::TypeMismatch, "diagram action has wrong endpoints",
                     {{"morphism", index->mors[m].id}});
  }
  for (int x = 0; x < index->nobj(); ++x)
    if (!(action[index->idmor[x]] == identity_functor(value[x])))
      throw CatError(ErrKind::TypeMismatch, "diagram does not send an identity to the identity",
                     {{"object", index->objects[x]}});
  for (int g = 0; g < index->nmor(); ++g)
    for (int f = 0; f < index->nmor(); ++f) {
      int gf = index->comp[g][f];
      if (gf < 0) continue;
      if (!(compose_functors(action[g], action[f]) == action[gf]))
        throw CatError(ErrKind::TypeMismatch, "diagram is not strictly functorial",
                       {{"g", index->mors[g].id}, {"f", index->mors[f].id}});
    }
}

json CatValuedDiagram::to_json() const {
  json cats = json::object();
  auto add = [&](const CatPtr& c) {
    std::string h = hash_hex(c->content_hash());
    if (!cats.contains(h)) cats[h] = c->to_json();
    return h;
  };
  json j;
  j["index"] = add(index);
  json vals = json::object();
  for (int x = 0; x < index->nobj(); ++x) vals[index->objects[x]] = add(value[x]);
  j["value"] = vals;
  json acts = json::object();
  for (int m = 0; m < index->nmor(); ++m) acts[index->mors[m].id] = action[m].to_json();
  j["action"] = acts;
  j["cats"] = cats;
  return j;
}

// ---- slices ----

int SliceCat::obj_of_mor(int m) const {
  auto it = rev_.find(m);
  return it == rev_.end() ? -1 : it->second;
}

SliceCat slice_under(const CatPtr& c, int x) {
  if (x < 0 || x >= c->nobj())
    throw CatError(ErrKind::UnknownObject, "slice_under: object out of range");
  SliceCat s;
  FinCat u;
  std::vector<int> omor;
  for (int f = 0; f < c->nmor(); ++f)
    if (c->mors[f].src == x) {
      s.rev_[f] = static_cast<int>(omor.size());
      omor.push_back(f);
      u.objects.push_back(c->mors[f].id);
    }
  // morphisms f -> g are arrows w with w.f = g
  struct Tri {
    int from, to, w;
  };
  std::vector<Tri> tris;
  for (int a = 0; a < static_cast<int>(omor.size()); ++a)
    for (int b = 0; b < static_cast<int>(omor.size()); ++b)
      for (int w : c->hom(c->mors[omor[a]].tgt, c->mors[omor[b]].tgt))
        if (c->comp[w][omor[a]] == omor[b]) tris.push_back({a, b, w});
  ensure_cat_size(static_cast<int>(omor.size()), static_cast<int>(tris.size()));
  for (const auto& t : tris)
    u.mors.push_back({"[" + c->mors[t.w].id + ":" + u.objects[t.from] + ">" + u.objects[t.to] + "]",
                      t.from, t.to});
  u.idmor.assign(u.objects.size(), -1);
  for (int i = 0; i < static_cast<int>(tris.size()); ++i)
    if (tris[i].from == tris[i].to && tris[i].w == c->idmor[c->mors[omor[tris[i].from]].tgt])
      u.idmor[tris[i].from] = i;
  int M = static_cast<int>(tris.size());
  u.comp.assign(M, std::vector<int>(M, -1));
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f) {
      if (tris[f].to != tris[g].from) continue;
      int w = c->comp[tris[g].w][tris[f].w];
      for (int h = 0; h < M; ++h)
        if (tris[h].from == tris[f].from && tris[h].to == tris[g].to && tris[h].w == w) {
          u.comp[g][f] = h;
          break;
        }
    }
  s.cat = FinCat::make_trusted(std::move(u));
  s.obj_to_mor = omor;
  std::vector<int> om(s.cat->nobj()), mm(s.cat->nmor());
  for (int i = 0; i < s.cat->nobj(); ++i) om[i] = c->mors[omor[i]].tgt;
  for (int i = 0; i < M; ++i) mm[i] = tris[i].w;
  s.proj = Functor(s.cat, c, om, mm);
  return s;
}

SliceCat slice_over(const CatPtr& c, int x) {
  if (x < 0 || x >= c->nobj())
    throw CatError(ErrKind::UnknownObject, "slice_over: object out of range");
  // C_/x = op(  op(C)_{x/}  ), but built directly to keep labels readable
  SliceCat s;
  FinCat u;
  std::vector<int> omor;
  for (int f = 0; f < c->nmor(); ++f)
    if (c->mors[f].tgt == x) {
      s.rev_[f] = static_cast<int>(omor.size());
      omor.push_back(f);
      u.objects.push_back(c->mors[f].id);
    }
  struct Tri {
    int from, to, w;
  };
  std::vector<Tri> tris;  // f -> g via w with g.w = f
  for (int a = 0; a < static_cast<int>(omor.size()); ++a)
    for (int b = 0; b < static_cast<int>(omor.size()); ++b)
      for (int w : c->hom(c->mors[omor[a]].src, c->mors[omor[b]].src))
        if (c->comp[omor[b]][w] == omor[a]) tris.push_back({a, b, w});
  ensure_cat_size(static_cast<int>(omor.size()), static_cast<int>(tris.size()));
  for (const auto& t : tris)
    u.mors.push_back({"[" + c->mors[t.w].id + ":" + u.objects[t.from] + ">" + u.objects[t.to] + "]",
                      t.from, t.to});
  u.idmor.assign(u.objects.size(), -1);
  for (int i = 0; i < static_cast<int>(tris.size()); ++i)
    if (tris[i].from == tris[i].to && tris[i].w == c->idmor[c->mors[omor[tris[i].from]].src])
      u.idmor[tris[i].from] = i;
  int M = static_cast<int>(tris.size());
  u.comp.assign(M, std::vector<int>(M, -1));
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f) {
      if (tris[f].to != tris[g].from) continue;
      int w = c->comp[tris[g].w][tris[f].w];
      for (int h = 0; h < M; ++h)
        if (tris[h].from == tris[f].from && tris[h].to == tris[g].to && tris[h].w == w) {
          u.comp[g][f] = h;
          break;
        }
    }
  s.cat = FinCat::make_trusted(std::move(u));
  s.obj_to_mor = omor;
  std::vector<int> om(s.cat->nobj()), mm(s.cat->nmor());
  for (int i = 0; i < s.cat->nobj(); ++i) om[i] = c->mors[omor[i]].src;
  for (int i = 0; i < M; ++i) mm[i] = tris[i].w;
  s.proj = Functor(s.cat, c, om, mm);
  return s;
}

CatValuedDiagram under_slice_diagram(const CatPtr& c) {
  CatValuedDiagram d;
  d.index = op_cat(c);
  std::vector<SliceCat> slices;
  for (int x = 0; x < c->nobj(); ++x) slices.push_back(slice_under(c, x));
  for (auto& s : slices) d.value.push_back(s.cat);
  // for u : x -> y in C (so y -> x in op(C) is not what we store; op keeps ids,
  // morphism m of op(C) has src = tgt_C(m)), the action precomposes with u
  for (int m = 0; m < c->nmor(); ++m) {
    int x = c->mors[m].src, y = c->mors[m].tgt;  // u : x -> y, action C_{y/} -> C_{x/}
    const SliceCat& sy = slices[y];
    const SliceCat& sx = slices[x];
    std::vector<int> om(sy.cat->nobj()), mm(sy.cat->nmor());
    for (int i = 0; i < sy.cat->nobj(); ++i)
      om[i] = sx.obj_of_mor(c->comp[sy.obj_to_mor[i]][m]);
    for (int t = 0; t < sy.cat->nmor(); ++t) {
      int w = sy.proj.mor_map[t];
      int from = om[sy.cat->mors[t].src], to = om[sy.cat->mors[t].tgt];
      // find the triangle in C_{x/} with the same witness
      int found = -1;
      for (int h = 0; h < sx.cat->nmor(); ++h)
        if (sx.cat->mors[h].src == from && sx.cat->mors[h].tgt == to && sx.proj.mor_map[h] == w) {
          found = h;
          break;
        }
      mm[t] = found;
    }
    d.action.push_back(Functor(sy.cat, sx.cat, om, mm));
  }
  d.validate();
  return d;
}

CatValuedDiagram over_slice_diagram(const CatPtr& c) {
  CatValuedDiagram d;
  d.index = c;
  std::vector<SliceCat> slices;
  for (int x = 0; x < c->nobj(); ++x) slices.push_back(slice_over(c, x));
  for (auto& s : slices) d.value.push_back(s.cat);
  for (int m = 0; m < c->nmor(); ++m) {
    int x = c->mors[m].src, y = c->mors[m].tgt;  // u : x -> y, action C_/x -> C_/y postcomposes
    const SliceCat& sx = slices[x];
    const SliceCat& sy = slices[y];
    std::vector<int> om(sx.cat->nobj()), mm(sx.cat->nmor());
    for (int i = 0; i < sx.cat->nobj(); ++i)
      om[i] = sy.obj_of_mor(c->comp[m][sx.obj_to_mor[i]]);
    for (int t = 0; t < sx.cat->nmor(); ++t) {
      int w = sx.proj.mor_map[t];
      int from = om[sx.cat->mors[t].src], to = om[sx.cat->mors[t].tgt];
      int found = -1;
      for (int h = 0; h < sy.cat->nmor(); ++h)
        if (sy.cat->mors[h].src == from && sy.cat->mors[h].tgt == to && sy.proj.mor_map[h] == w) {
          found = h;
          break;
        }
      mm[t] = found;
    }
    d.action.push_back(Functor(sx.cat, sy.cat, om, mm));
  }
  d.validate();
  return d;
}

// ---- functor enumeration ----

namespace {

// Backtracking enumeration of functors C -> D, optionally constrained to lie
// strictly over a base projection pair.
struct FunctorSearch {
  const FinCat& C;
  const FinCat& D;
  const Functor* proj_c = nullptr;
  const Functor* proj_d = nullptr;
  std::vector<int> om, mm;
  std::vector<Functor> out;
  CatPtr cptr, dptr;
  long long budget = 20'000'000;

  bool obj_ok(int x, int img) const {
    if (proj_c && proj_d->obj_map[img] != proj_c->obj_map[x]) return false;
    // hom-emptiness pruning against already assigned objects
    for (int y = 0; y < C.nobj(); ++y) {
      if (om[y] < 0) continue;
      if (!C.hom(x, y).empty() && D.hom(img, om[y]).empty()) return false;
      if (!C.hom(y, x).empty() && D.hom(om[y], img).empty()) return false;
    }
    return true;
  }

  bool mor_ok(int m, int img) {
    if (D.mors[img].src != om[C.mors[m].src] || D.mors[img].tgt != om[C.mors[m].tgt]) return false;
    if (proj_c && proj_d->mor_map[img] != proj_c->mor_map[m]) return false;
    mm[m] = img;
    for (int g = 0; g < C.nmor(); ++g) {
      if (mm[g] < 0) continue;
      int gm = C.comp[g][m];
      if (gm >= 0 && mm[gm] >= 0 && D.comp[mm[g]][mm[m]] != mm[gm]) { mm[m] = -1; return false; }
      int mg = C.comp[m][g];
      if (mg >= 0 && mm[mg] >= 0 && D.comp[mm[m]][mm[g]] != mm[mg]) { mm[m] = -1; return false; }
    }
    mm[m] = -1;
    return true;
  }

  void mors_from(int m) {
    if (--budget < 0) throw CatError(ErrKind::SizeBoundExceeded, "functor enumeration too large");
    while (m < C.nmor() && mm[m] >= 0) ++m;
    if (m == C.nmor()) {
      out.push_back(Functor(cptr, dptr, om, mm, false));
      return;
    }
    for (int img = 0; img < D.nmor(); ++img) {
      if (!mor_ok(m, img)) continue;
      mm[m] = img;
      mors_from(m + 1);
      mm[m] = -1;
    }
  }

  void objs_from(int x) {
    if (--budget < 0) throw CatError(ErrKind::SizeBoundExceeded, "functor enumeration too large");
    if (x == C.nobj()) {
      mm.assign(C.nmor(), -1);
      for (int y = 0; y < C.nobj(); ++y) mm[C.idmor[y]] = D.idmor[om[y]];
      mors_from(0);
      return;
    }
    for (int img = 0; img < D.nobj(); ++img) {
      if (!obj_ok(x, img)) continue;
      om[x] = img;
      objs_from(x + 1);
      om[x] = -1;
    }
  }

  std::vector<Functor> run() {
    om.assign(C.nobj(), -1);
    objs_from(0);
    return std::move(out);
  }
};

}  // namespace

std::vector<Functor> enumerate_functors(const CatPtr& c, const CatPtr& d) {
  FunctorSearch s{*c, *d, nullptr, nullptr, {}, {}, {}, nullptr, nullptr};
  s.cptr = c;
  s.dptr = d;
  return s.run();
}

std::vector<Functor> enumerate_functors_over(const CatPtr& c, const CatPtr& d,
                                             const Functor& proj_c, const Functor& proj_d) {
  if (!(*proj_c.cod == *proj_d.cod))
    throw CatError(ErrKind::DomainMismatch, "projections must share a base");
  FunctorSearch s{*c, *d, &proj_c, &proj_d, {}, {}, {}, nullptr, nullptr};
  s.cptr = c;
  s.dptr = d;
  return s.run();
}

namespace {
void nat_backtrack(const Functor& f, const Functor& g, const Functor* collapse,
                   std::vector<int>& comps, int x, std::vector<NatTrans>& out) {
  const FinCat& C = *f.dom;
  const FinCat& D = *f.cod;
  if (x == C.nobj()) {
    out.push_back(NatTrans(f, g, comps, false));
    return;
  }
  for (int cand : D.hom(f.obj_map[x], g.obj_map[x])) {
    if (collapse && !collapse->cod->is_id(collapse->mor_map[cand])) continue;
    comps[x] = cand;
    bool ok = true;
    for (int m = 0; m < C.nmor() && ok; ++m) {
      int a = C.mors[m].src, b = C.mors[m].tgt;
      if (comps[a] < 0 || comps[b] < 0) continue;
      if (D.comp[comps[b]][f.mor_map[m]] != D.comp[g.mor_map[m]][comps[a]]) ok = false;
    }
    if (ok) nat_backtrack(f, g, collapse, comps, x + 1, out);
    comps[x] = -1;
  }
}
}  // namespace

std::vector<NatTrans> enumerate_nat(const Functor& f, const Functor& g) {
  std::vector<NatTrans> out;
  std::vector<int> comps(f.dom->nobj(), -1);
  nat_backtrack(f, g, nullptr, comps, 0, out);
  return out;
}

std::vector<NatTrans> enumerate_nat_over(const Functor& f, const Functor& g,
                                         const Functor& collapse) {
  std::vector<NatTrans> out;
  std::vector<int> comps(f.dom->nobj(), -1);
  nat_backtrack(f, g, &collapse, comps, 0, out);
  return out;
}

// ---- functor categories ----

int FunctorCat::index_of(const Functor& f) const {
  for (int i = 0; i < static_cast<int>(obj_functors.size()); ++i)
    if (obj_functors[i] == f) return i;
  return -1;
}

int FunctorCat::index_of_nat(const NatTrans& n) const {
  for (int i = 0; i < static_cast<int>(mor_transes.size()); ++i)
    if (mor_transes[i] == n) return i;
  return -1;
}

FunctorCat functor_category(const CatPtr& c, const CatPtr& d) {
  FunctorCat fc;
  fc.obj_functors = enumerate_functors(c, d);
  ensure_cat_size(static_cast<int>(fc.obj_functors.size()), Limits::global().max_morphisms);
  FinCat cat;
  for (int i = 0; i < static_cast<int>(fc.obj_functors.size()); ++i)
    cat.objects.push_back("F" + std::to_string(i));
  std::vector<std::pair<int, int>> ends;
  for (int i = 0; i < static_cast<int>(fc.obj_functors.size()); ++i)
    for (int j = 0; j < static_cast<int>(fc.obj_functors.size()); ++j)
      for (auto& n : enumerate_nat(fc.obj_functors[i], fc.obj_functors[j])) {
        ends.push_back({i, j});
        fc.mor_transes.push_back(n);
      }
  ensure_cat_size(static_cast<int>(cat.objects.size()), static_cast<int>(ends.size()));
  for (int t = 0; t < static_cast<int>(ends.size()); ++t)
    cat.mors.push_back({"n" + std::to_string(t), ends[t].first, ends[t].second});
  cat.idmor.assign(cat.objects.size(), -1);
  for (int t = 0; t < static_cast<int>(ends.size()); ++t) {
    if (ends[t].first != ends[t].second) continue;
    bool all_id = true;
    const NatTrans& n = fc.mor_transes[t];
    for (int x = 0; x < c->nobj(); ++x)
      if (!d->is_id(n.comps[x])) { all_id = false; break; }
    if (all_id) cat.idmor[ends[t].first] = t;
  }
  int M = static_cast<int>(ends.size());
  cat.comp.assign(M, std::vector<int>(M, -1));
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f) {
      if (ends[f].second != ends[g].first) continue;
      NatTrans v = vertical_compose(fc.mor_transes[g], fc.mor_transes[f]);
      for (int h = 0; h < M; ++h)
        if (ends[h].first == ends[f].first && ends[h].second == ends[g].second &&
            fc.mor_transes[h].comps == v.comps) {
          cat.comp[g][f] = h;
          break;
        }
    }
  fc.cat = FinCat::make_trusted(std::move(cat));
  return fc;
}

Interior interior(const CatPtr& c) {
  Interior out;
  FinCat i;
  i.objects = c->objects;
  std::vector<int> keep;
  for (int m = 0; m < c->nmor(); ++m)
    if (c->is_invertible(m)) keep.push_back(m);
  std::unordered_map<int, int> rev;
  for (int k = 0; k < static_cast<int>(keep.size()); ++k) {
    rev[keep[k]] = k;
    i.mors.push_back(c->mors[keep[k]]);
  }
  i.idmor.resize(c->nobj());
  for (int x = 0; x < c->nobj(); ++x) i.idmor[x] = rev[c->idmor[x]];
  int M = static_cast<int>(keep.size());
  i.comp.assign(M, std::vector<int>(M, -1));
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f) {
      int gf = c->comp[keep[g]][keep[f]];
      if (gf >= 0) i.comp[g][f] = rev[gf];  // composite of invertibles is invertible
    }
  out.cat = FinCat::make_trusted(std::move(i));
  std::vector<int> om(c->nobj()), mm(M);
  std::iota(om.begin(), om.end(), 0);
  for (int k = 0; k < M; ++k) mm[k] = keep[k];
  out.inclusion = Functor(out.cat, c, om, mm);
  return out;
}

// ---- limits of Cat-valued diagrams ----

LimitCat limit_cat(const CatValuedDiagram& d) {
  const FinCat& I = *d.index;
  LimitCat out;
  // compatible object families, found by backtracking over index objects
  std::vector<int> fam(I.nobj(), -1);
  std::function<void(int)> objs = [&](int i) {
    if (i == I.nobj()) {
      out.obj_families.push_back(fam);
      ensure_cells(static_cast<long long>(out.obj_families.size()));
      return;
    }
    for (int x = 0; x < d.value[i]->nobj(); ++x) {
      fam[i] = x;
      bool ok = true;
      for (int m = 0; m < I.nmor() && ok; ++m) {
        int a = I.mors[m].src, b = I.mors[m].tgt;
        if (fam[a] < 0 || fam[b] < 0) continue;
        if (d.action[m].obj_map[fam[a]] != fam[b]) ok = false;
      }
      if (ok) objs(i + 1);
      fam[i] = -1;
    }
  };
  if (I.nobj() == 0) out.obj_families.push_back({});
  else objs(0);

  std::vector<int> mfam(I.nobj(), -1);
  std::vector<std::pair<int, int>> ends;
  std::function<void(int, const std::vector<int>&, const std::vector<int>&)> morsearch =
      [&](int i, const std::vector<int>& from, const std::vector<int>& to) {
        if (i == I.nobj()) {
          out.mor_families.push_back(mfam);
          return;
        }
        for (int m : d.value[i]->hom(from[i], to[i])) {
          mfam[i] = m;
          bool ok = true;
          for (int e = 0; e < I.nmor() && ok; ++e) {
            int a = I.mors[e].src, b = I.mors[e].tgt;
            if (mfam[a] < 0 || mfam[b] < 0) continue;
            if (d.action[e].mor_map[mfam[a]] != mfam[b]) ok = false;
          }
          if (ok) morsearch(i + 1, from, to);
          mfam[i] = -1;
        }
      };
  FinCat cat;
  for (int i = 0; i < static_cast<int>(out.obj_families.size()); ++i)
    cat.objects.push_back("L" + std::to_string(i));
  for (int a = 0; a < static_cast<int>(out.obj_families.size()); ++a)
    for (int b = 0; b < static_cast<int>(out.obj_families.size()); ++b) {
      size_t before = out.mor_families.size();
      if (I.nobj() == 0) {
        if (a == b) out.mor_families.push_back({});
      } else {
        morsearch(0, out.obj_families[a], out.obj_families[b]);
      }
      for (size_t t = before; t < out.mor_families.size(); ++t) ends.push_back({a, b});
    }
  ensure_cat_size(static_cast<int>(cat.objects.size()), static_cast<int>(ends.size()));
  for (int t = 0; t < static_cast<int>(ends.size()); ++t)
    cat.mors.push_back({"l" + std::to_string(t), ends[t].first, ends[t].second});
  cat.idmor.assign(cat.objects.size(), -1);
  for (int t = 0; t < static_cast<int>(ends.size()); ++t) {
    if (ends[t].first != ends[t].second) continue;
    bool all_id = true;
    for (int i = 0; i < I.nobj(); ++i)
      if (!d.value[i]->is_id(out.mor_families[t][i])) { all_id = false; break; }
    if (I.nobj() == 0 || all_id) cat.idmor[ends[t].first] = t;
  }
  int M = static_cast<int>(ends.size());
  cat.comp.assign(M, std::vector<int>(M, -1));
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f) {
      if (ends[f].second != ends[g].first) continue;
      std::vector<int> comp_fam(I.nobj());
      for (int i = 0; i < I.nobj(); ++i)
        comp_fam[i] = d.value[i]->comp[out.mor_families[g][i]][out.mor_families[f][i]];
      for (int h = 0; h < M; ++h)
        if (ends[h].first == ends[f].first && ends[h].second == ends[g].second &&
            out.mor_families[h] == comp_fam) {
          cat.comp[g][f] = h;
          break;
        }
    }
  out.cat = FinCat::make_trusted(std::move(cat));
  for (int i = 0; i < I.nobj(); ++i) {
    std::vector<int> om(out.cat->nobj()), mm(out.cat->nmor());
    for (int a = 0; a < out.cat->nobj(); ++a) om[a] = out.obj_families[a][i];
    for (int t = 0; t < out.cat->nmor(); ++t) mm[t] = out.mor_families[t][i];
    out.projections.push_back(Functor(out.cat, d.value[i], om, mm));
  }
  return out;
}

// ---- category isomorphism search ----

namespace {
struct IsoSearch {
  const FinCat& A;
  const FinCat& B;
  std::vector<int> om, mm, used_o, used_m;
  long long budget = 10'000'000;

  bool extend_mors(int m) {
    if (--budget < 0) return false;
    if (m == A.nmor()) return true;
    if (mm[m] >= 0) return extend_mors(m + 1);
    for (int img = 0; img < B.nmor(); ++img) {
      if (used_m[img]) continue;
      if (B.mors[img].src != om[A.mors[m].src] || B.mors[img].tgt != om[A.mors[m].tgt]) continue;
      mm[m] = img;
      used_m[img] = 1;
      bool ok = true;
      for (int g = 0; g < A.nmor() && ok; ++g) {
        if (mm[g] < 0) continue;
        int gm = A.comp[g][m];
        if (gm >= 0 && mm[gm] >= 0 && B.comp[mm[g]][mm[m]] != mm[gm]) ok = false;
        int mg = A.comp[m][g];
        if (ok && mg >= 0 && mm[mg] >= 0 && B.comp[mm[m]][mm[g]] != mm[mg]) ok = false;
      }
      if (ok && extend_mors(m + 1)) return true;
      used_m[img] = 0;
      mm[m] = -1;
    }
    return false;
  }

  bool extend_objs(int x) {
    if (--budget < 0) return false;
    if (x == A.nobj()) {
      mm.assign(A.nmor(), -1);
      used_m.assign(B.nmor(), 0);
      for (int y = 0; y < A.nobj(); ++y) {
        mm[A.idmor[y]] = B.idmor[om[y]];
        used_m[B.idmor[om[y]]] = 1;
      }
      return extend_mors(0);
    }
    for (int img = 0; img < B.nobj(); ++img) {
      if (used_o[img]) continue;
      bool ok = true;
      for (int y = 0; y < A.nobj() && ok; ++y) {
        if (om[y] < 0) continue;
        if (A.hom(x, y).size() != B.hom(img, om[y]).size()) ok = false;
        if (ok && A.hom(y, x).size() != B.hom(om[y], img).size()) ok = false;
      }
      if (ok && A.hom(x, x).size() != B.hom(img, img).size()) ok = false;
      if (!ok) continue;
      om[x] = img;
      used_o[img] = 1;
      if (extend_objs(x + 1)) return true;
      used_o[img] = 0;
      om[x] = -1;
    }
    return false;
  }
};
}  // namespace

std::optional<Functor> cat_isomorphic(const CatPtr& a, const CatPtr& b) {
  if (a->nobj() != b->nobj() || a->nmor() != b->nmor()) return std::nullopt;
  IsoSearch s{*a, *b, {}, {}, {}, {}};
  s.om.assign(a->nobj(), -1);
  s.used_o.assign(b->nobj(), 0);
  if (!s.extend_objs(0)) return std::nullopt;
  return Functor(a, b, s.om, s.mm);
}

// ---- probe-based colimit cocones ----

namespace {

// matching families of functors D(i) -> X, i.e. objects of lim_i Fun(D(i), X)
struct FamilyEnum {
  const CatValuedDiagram& d;
  const CatPtr& probe;
  std::vector<std::vector<Functor>> per_value;

  FamilyEnum(const CatValuedDiagram& dd, const CatPtr& p) : d(dd), probe(p) {
    for (int i = 0; i < d.index->nobj(); ++i)
      per_value.push_back(enumerate_functors(d.value[i], probe));
  }

  std::vector<std::vector<int>> families() const {
    std::vector<std::vector<int>> out;
    std::vector<int> pick(d.index->nobj(), -1);
    std::function<void(int)> rec = [&](int i) {
      if (i == d.index->nobj()) {
        out.push_back(pick);
        return;
      }
      for (int k = 0; k < static_cast<int>(per_value[i].size()); ++k) {
        pick[i] = k;
        bool ok = true;
        for (int m = 0; m < d.index->nmor() && ok; ++m) {
          int a = d.index->mors[m].src, b = d.index->mors[m].tgt;
          if (pick[a] < 0 || pick[b] < 0) continue;
          if (!(compose_functors(per_value[b][pick[b]], d.action[m]) == per_value[a][pick[a]]))
            ok = false;
        }
        if (ok) rec(i + 1);
        pick[i] = -1;
      }
    };
    if (d.index->nobj() == 0) out.push_back({});
    else rec(0);
    return out;
  }
};

}  // namespace

CoconeCheck check_colimit_cocone(const CatValuedDiagram& d, const CatPtr& apex,
                                 const std::vector<Functor>& legs,
                                 const std::vector<CatPtr>& probes) {
  CoconeCheck res;
  // cocone commutation
  for (int m = 0; m < d.index->nmor(); ++m) {
    int a = d.index->mors[m].src, b = d.index->mors[m].tgt;
    if (!(compose_functors(legs[b], d.action[m]) == legs[a]))
      throw CatError(ErrKind::NotACocone, "legs do not commute with a diagram map",
                     {{"index_morphism", d.index->mors[m].id}});
  }
  for (const CatPtr& probe : probes) {
    auto apex_functors = enumerate_functors(apex, probe);
    FamilyEnum fe(d, probe);
    auto fams = fe.families();

    auto restrict_functor = [&](const Functor& h) {
      std::vector<int> pick(d.index->nobj());
      for (int i = 0; i < d.index->nobj(); ++i) {
        Functor r = compose_functors(h, legs[i]);
        int k = -1;
        for (int t = 0; t < static_cast<int>(fe.per_value[i].size()); ++t)
          if (fe.per_value[i][t] == r) { k = t; break; }
        pick[i] = k;
      }
      return pick;
    };

    // object level: restriction must be a bijection onto the matching families
    std::map<std::vector<int>, int> image;
    for (int h = 0; h < static_cast<int>(apex_functors.size()); ++h) {
      auto pick = restrict_functor(apex_functors[h]);
      auto [it, fresh] = image.insert({pick, h});
      if (!fresh) {
        res.pass = false;
        res.witness = {{"probe", probe->to_json()},
                       {"reason", "restriction not injective on functors"},
                       {"first", apex_functors[it->second].to_json()},
                       {"second", apex_functors[h].to_json()}};
        return res;
      }
    }
    for (const auto& fam : fams) {
      if (!image.count(fam)) {
        json fj = json::array();
        for (int i = 0; i < d.index->nobj(); ++i) fj.push_back(fe.per_value[i][fam[i]].to_json());
        res.pass = false;
        res.witness = {{"probe", probe->to_json()},
                       {"reason", "matching family is not a restriction of any functor"},
                       {"family", fj}};
        return res;
      }
    }
    if (image.size() != fams.size()) {
      res.pass = false;
      res.witness = {{"probe", probe->to_json()},
                     {"reason", "functor counts differ"},
                     {"apex_side", apex_functors.size()},
                     {"family_side", fams.size()}};
      return res;
    }

    // morphism level: for each pair of apex functors, natural transformations
    // must biject with matching families of natural transformations
    for (int h1 = 0; h1 < static_cast<int>(apex_functors.size()); ++h1)
      for (int h2 = 0; h2 < static_cast<int>(apex_functors.size()); ++h2) {
        auto nats = enumerate_nat(apex_functors[h1], apex_functors[h2]);
        // family-side morphisms: per index object a nat trans, compatible along actions
        std::vector<std::vector<NatTrans>> per_i;
        for (int i = 0; i < d.index->nobj(); ++i)
          per_i.push_back(enumerate_nat(compose_functors(apex_functors[h1], legs[i]),
                                        compose_functors(apex_functors[h2], legs[i])));
        std::vector<std::vector<int>> fam_mors;
        std::vector<int> pick(d.index->nobj(), -1);
        std::function<void(int)> rec = [&](int i) {
          if (i == d.index->nobj()) {
            fam_mors.push_back(pick);
            return;
          }
          for (int k = 0; k < static_cast<int>(per_i[i].size()); ++k) {
            pick[i] = k;
            bool ok = true;
            for (int m = 0; m < d.index->nmor() && ok; ++m) {
              int a = d.index->mors[m].src, b = d.index->mors[m].tgt;
              if (pick[a] < 0 || pick[b] < 0) continue;
              // whisker the b-component along the action and compare with the a-component
              const NatTrans& nb = per_i[b][pick[b]];
              const NatTrans& na = per_i[a][pick[a]];
              for (int o = 0; o < d.value[a]->nobj() && ok; ++o)
                if (nb.comps[d.action[m].obj_map[o]] != na.comps[o]) ok = false;
            }
            if (ok) rec(i + 1);
            pick[i] = -1;
          }
        };
        if (d.index->nobj() == 0) fam_mors.push_back({});
        else rec(0);

        std::set<std::vector<int>> nat_images;
        for (const auto& n : nats) {
          std::vector<int> img;
          for (int i = 0; i < d.index->nobj(); ++i)
            for (int o = 0; o < d.value[i]->nobj(); ++o)
              img.push_back(n.comps[legs[i].obj_map[o]]);
          if (!nat_images.insert(img).second) {
            res.pass = false;
            res.witness = {{"probe", probe->to_json()},
                           {"reason", "restriction not injective on natural transformations"}};
            return res;
          }
        }
        std::set<std::vector<int>> fam_keys;
        for (const auto& fm : fam_mors) {
          std::vector<int> key;
          for (int i = 0; i < d.index->nobj(); ++i)
            for (int o = 0; o < d.value[i]->nobj(); ++o) key.push_back(per_i[i][fm[i]].comps[o]);
          fam_keys.insert(key);
        }
        if (nat_images != fam_keys) {
          res.pass = false;
          res.witness = {{"probe", probe->to_json()},
                         {"reason", "natural transformation families differ"},
                         {"apex_side", nats.size()},
                         {"family_side", fam_keys.size()},
                         {"between", {apex_functors[h1].to_json(), apex_functors[h2].to_json()}}};
          return res;
        }
      }
  }
  return res;
}

}  // namespace catwork

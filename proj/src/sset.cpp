#include "catwork/sset.hpp"

#include "catwork/twisted.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace catwork {

bool SSet::is_degenerate(int k, int c) const {
  if (k == 0) return false;
  for (int j = 0; j < k; ++j)
    if (degen[k - 1][j][face[k][j][c]] == c) return true;
  return false;
}

std::pair<int, int> SSet::ez_core(int k, int c) const {
  while (k > 0) {
    bool stripped = false;
    for (int j = 0; j < k && !stripped; ++j) {
      int below = face[k][j][c];
      if (degen[k - 1][j][below] == c) {
        c = below;
        --k;
        stripped = true;
      }
    }
    if (!stripped) break;
  }
  return {k, c};
}

int SSet::nondegenerate_count(int k) const {
  int n = 0;
  for (int c = 0; c < count(k); ++c)
    if (!is_degenerate(k, c)) ++n;
  return n;
}

long long SSet::total_cells() const {
  long long n = 0;
  for (int k = 0; k <= dim; ++k) n += count(k);
  return n;
}

void SSet::validate() const {
  if (static_cast<int>(cells.size()) != dim + 1)
    throw CatError(ErrKind::Internal, "sset level storage has the wrong size");
  for (int k = 1; k <= dim; ++k) {
    if (static_cast<int>(face[k].size()) != k + 1)
      throw CatError(ErrKind::Internal, "face table missing an index");
    for (int i = 0; i <= k; ++i)
      for (int c = 0; c < count(k); ++c)
        if (face[k][i][c] < 0 || face[k][i][c] >= count(k - 1))
          throw CatError(ErrKind::Internal, "face out of range");
  }
  for (int k = 0; k < dim; ++k)
    for (int j = 0; j <= k; ++j)
      for (int c = 0; c < count(k); ++c)
        if (degen[k][j][c] < 0 || degen[k][j][c] >= count(k + 1))
          throw CatError(ErrKind::Internal, "degeneracy out of range");
  // d_i d_j = d_{j-1} d_i for i < j
  for (int k = 2; k <= dim; ++k)
    for (int j = 1; j <= k; ++j)
      for (int i = 0; i < j; ++i)
        for (int c = 0; c < count(k); ++c)
          if (face[k - 1][i][face[k][j][c]] != face[k - 1][j - 1][face[k][i][c]])
            throw CatError(ErrKind::Internal, "simplicial identity d_i d_j fails",
                           {{"level", k}, {"i", i}, {"j", j}, {"cell", cells[k][c]}});
  // s_i s_j = s_{j+1} s_i for i <= j
  for (int k = 0; k + 2 <= dim; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= j; ++i)
        for (int c = 0; c < count(k); ++c)
          if (degen[k + 1][i][degen[k][j][c]] != degen[k + 1][j + 1][degen[k][i][c]])
            throw CatError(ErrKind::Internal, "simplicial identity s_i s_j fails",
                           {{"level", k}, {"i", i}, {"j", j}});
  // d_i s_j relations
  for (int k = 0; k < dim; ++k)
    for (int j = 0; j <= k; ++j)
      for (int c = 0; c < count(k); ++c) {
        int sc = degen[k][j][c];
        for (int i = 0; i <= k + 1; ++i) {
          int got = face[k + 1][i][sc];
          int want;
          if (i < j)
            want = (k >= 1) ? degen[k - 1][j - 1][face[k][i][c]] : -2;
          else if (i == j || i == j + 1)
            want = c;
          else
            want = (k >= 1) ? degen[k - 1][j][face[k][i - 1][c]] : -2;
          if (want != -2 && got != want)
            throw CatError(ErrKind::Internal, "simplicial identity d_i s_j fails",
                           {{"level", k}, {"i", i}, {"j", j}, {"cell", cells[k][c]}});
        }
      }
}

json SSet::to_json() const {
  json j;
  j["dim"] = dim;
  json cj = json::object(), dj = json::object(), sj = json::object();
  for (int k = 0; k <= dim; ++k) cj[std::to_string(k)] = cells[k];
  for (int k = 1; k <= dim; ++k) {
    json per = json::array();
    for (int i = 0; i <= k; ++i) per.push_back(face[k][i]);
    dj[std::to_string(k)] = per;
  }
  for (int k = 0; k < dim; ++k) {
    json per = json::array();
    for (int i = 0; i <= k; ++i) per.push_back(degen[k][i]);
    sj[std::to_string(k)] = per;
  }
  j["cells"] = cj;
  j["d"] = dj;
  j["s"] = sj;
  return j;
}

SSet SSet::from_json(const json& j) {
  SSet x;
  x.dim = j.at("dim").get<int>();
  x.cells.resize(x.dim + 1);
  x.face.resize(x.dim + 1);
  x.degen.resize(x.dim + 1);
  for (int k = 0; k <= x.dim; ++k)
    x.cells[k] = j.at("cells").at(std::to_string(k)).get<std::vector<std::string>>();
  for (int k = 1; k <= x.dim; ++k)
    x.face[k] = j.at("d").at(std::to_string(k)).get<std::vector<std::vector<int>>>();
  for (int k = 0; k < x.dim; ++k)
    x.degen[k] = j.at("s").at(std::to_string(k)).get<std::vector<std::vector<int>>>();
  x.validate();
  return x;
}

bool is_monotone(const SimplicialOperator& a) {
  for (size_t i = 0; i + 1 < a.size(); ++i)
    if (a[i] > a[i + 1]) return false;
  return true;
}

int apply_operator(const SSet& x, const SimplicialOperator& a, int k, int c) {
  if (static_cast<int>(a.size()) == 0)
    throw CatError(ErrKind::Internal, "empty simplicial operator");
  // identity?
  if (static_cast<int>(a.size()) == k + 1) {
    bool ident = true;
    for (int i = 0; i <= k; ++i)
      if (a[i] != i) ident = false;
    if (ident) return c;
  }
  // repeated value: a = a' . sigma_t, so X(a) = s_t . X(a')
  for (size_t t = 0; t + 1 < a.size(); ++t)
    if (a[t] == a[t + 1]) {
      SimplicialOperator shorter(a);
      shorter.erase(shorter.begin() + t + 1);
      int below = apply_operator(x, shorter, k, c);
      return x.degen[static_cast<int>(shorter.size()) - 1][t][below];
    }
  // injective, missing a value i: a = delta_i . a'', so X(a) = X(a'') . d_i
  std::vector<bool> hit(k + 1, false);
  for (int v : a) hit[v] = true;
  for (int i = k; i >= 0; --i)
    if (!hit[i]) {
      int below = x.face[k][i][c];
      SimplicialOperator adjusted(a);
      for (int& v : adjusted)
        if (v > i) --v;
      return apply_operator(x, adjusted, k - 1, below);
    }
  return c;  // identity
}

void MarkedSSet::normalize() {
  if (space.dim < 1) return;
  for (int c = 0; c < space.count(1); ++c)
    if (space.is_degenerate(1, c)) marked.insert(c);
}

void MarkedSSet::validate() const {
  space.validate();
  if (space.dim >= 1)
    for (int c = 0; c < space.count(1); ++c)
      if (space.is_degenerate(1, c) && !marked.count(c))
        throw CatError(ErrKind::Internal, "degenerate edge is unmarked");
}

SSetMap SSetMap::make(const SSet& dom, const SSet& cod, std::vector<std::vector<int>> level) {
  if (static_cast<int>(level.size()) != dom.dim + 1)
    throw CatError(ErrKind::Internal, "sset map levels have the wrong size");
  if (cod.dim < dom.dim)
    throw CatError(ErrKind::DimensionBoundExceeded, "codomain dimension bound too small");
  SSetMap m;
  m.level = std::move(level);
  for (int k = 0; k <= dom.dim; ++k)
    for (int c = 0; c < dom.count(k); ++c)
      if (m.level[k][c] < 0 || m.level[k][c] >= cod.count(k))
        throw CatError(ErrKind::Internal, "sset map cell out of range");
  for (int k = 1; k <= dom.dim; ++k)
    for (int i = 0; i <= k; ++i)
      for (int c = 0; c < dom.count(k); ++c)
        if (cod.face[k][i][m.level[k][c]] != m.level[k - 1][dom.face[k][i][c]])
          throw CatError(ErrKind::Internal, "sset map does not commute with a face",
                         {{"level", k}, {"i", i}, {"cell", dom.cells[k][c]}});
  for (int k = 0; k < dom.dim; ++k)
    for (int j = 0; j <= k; ++j)
      for (int c = 0; c < dom.count(k); ++c)
        if (cod.degen[k][j][m.level[k][c]] != m.level[k + 1][dom.degen[k][j][c]])
          throw CatError(ErrKind::Internal, "sset map does not commute with a degeneracy",
                         {{"level", k}, {"j", j}, {"cell", dom.cells[k][c]}});
  return m;
}

// ---- generators: subcomplexes of the standard simplex ----

namespace {

std::string word_name(const SimplicialOperator& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(w[i]);
  }
  return s;
}

std::vector<SimplicialOperator> monotone_words(int k, int n) {
  // all monotone maps [k] -> [n]
  std::vector<SimplicialOperator> out;
  SimplicialOperator w(k + 1, 0);
  std::function<void(int, int)> rec = [&](int pos, int lo) {
    if (pos == k + 1) {
      out.push_back(w);
      return;
    }
    for (int v = lo; v <= n; ++v) {
      w[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

SSet sub_simplex(int n, int dim, const std::function<bool(const SimplicialOperator&)>& keep) {
  SSet x;
  x.dim = dim;
  x.cells.resize(dim + 1);
  x.face.resize(dim + 1);
  x.degen.resize(dim + 1);
  std::vector<std::vector<SimplicialOperator>> words(dim + 1);
  std::vector<std::map<SimplicialOperator, int>> index(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    for (auto& w : monotone_words(k, n))
      if (keep(w)) {
        index[k][w] = static_cast<int>(words[k].size());
        words[k].push_back(w);
        x.cells[k].push_back(word_name(w));
      }
    ensure_cells(static_cast<long long>(x.cells[k].size()));
  }
  for (int k = 1; k <= dim; ++k) {
    x.face[k].assign(k + 1, std::vector<int>(words[k].size()));
    for (int i = 0; i <= k; ++i)
      for (int c = 0; c < static_cast<int>(words[k].size()); ++c) {
        SimplicialOperator w = words[k][c];
        w.erase(w.begin() + i);
        x.face[k][i][c] = index[k - 1].at(w);
      }
  }
  for (int k = 0; k < dim; ++k) {
    x.degen[k].assign(k + 1, std::vector<int>(words[k].size()));
    for (int j = 0; j <= k; ++j)
      for (int c = 0; c < static_cast<int>(words[k].size()); ++c) {
        SimplicialOperator w = words[k][c];
        w.insert(w.begin() + j, w[j]);
        x.degen[k][j][c] = index[k + 1].at(w);
      }
  }
  x.validate();
  return x;
}

}  // namespace

SSet simplex(int n, int dim) {
  return sub_simplex(n, dim, [](const SimplicialOperator&) { return true; });
}

SSet boundary(int n, int dim) {
  return sub_simplex(n, dim, [n](const SimplicialOperator& w) {
    std::vector<bool> hit(n + 1, false);
    for (int v : w) hit[v] = true;
    for (int i = 0; i <= n; ++i)
      if (!hit[i]) return true;
    return false;
  });
}

SSet horn(int n, int i, int dim) {
  return sub_simplex(n, dim, [n, i](const SimplicialOperator& w) {
    std::vector<bool> hit(n + 1, false);
    for (int v : w) hit[v] = true;
    for (int j = 0; j <= n; ++j)
      if (j != i && !hit[j]) return true;
    return false;
  });
}

SSet spine(int n, int dim) {
  return sub_simplex(n, dim, [](const SimplicialOperator& w) {
    return w.back() - w.front() <= 1;
  });
}

SSet product(const SSet& x, const SSet& y) {
  SSet p;
  p.dim = std::min(x.dim, y.dim);
  p.cells.resize(p.dim + 1);
  p.face.resize(p.dim + 1);
  p.degen.resize(p.dim + 1);
  auto at = [&](int k, int a, int b) { return a * y.count(k) + b; };
  for (int k = 0; k <= p.dim; ++k) {
    ensure_cells(static_cast<long long>(x.count(k)) * y.count(k));
    for (int a = 0; a < x.count(k); ++a)
      for (int b = 0; b < y.count(k); ++b)
        p.cells[k].push_back("(" + x.cells[k][a] + "," + y.cells[k][b] + ")");
  }
  for (int k = 1; k <= p.dim; ++k) {
    p.face[k].assign(k + 1, std::vector<int>(p.count(k)));
    for (int i = 0; i <= k; ++i)
      for (int a = 0; a < x.count(k); ++a)
        for (int b = 0; b < y.count(k); ++b)
          p.face[k][i][at(k, a, b)] = x.face[k][i][a] * y.count(k - 1) + y.face[k][i][b];
  }
  for (int k = 0; k < p.dim; ++k) {
    p.degen[k].assign(k + 1, std::vector<int>(p.count(k)));
    for (int j = 0; j <= k; ++j)
      for (int a = 0; a < x.count(k); ++a)
        for (int b = 0; b < y.count(k); ++b)
          p.degen[k][j][at(k, a, b)] = x.degen[k][j][a] * y.count(k + 1) + y.degen[k][j][b];
  }
  p.validate();
  return p;
}

MarkedSSet sharp(const SSet& x) {
  MarkedSSet m;
  m.space = x;
  if (x.dim >= 1)
    for (int c = 0; c < x.count(1); ++c) m.marked.insert(c);
  return m;
}

MarkedSSet natural(const SSet& x) {
  MarkedSSet m;
  m.space = x;
  m.normalize();
  return m;
}

MarkedSSet marked_product(const MarkedSSet& x, const MarkedSSet& y) {
  MarkedSSet p;
  p.space = product(x.space, y.space);
  if (p.space.dim >= 1)
    for (int a = 0; a < x.space.count(1); ++a)
      for (int b = 0; b < y.space.count(1); ++b)
        if (x.marked.count(a) && y.marked.count(b)) p.marked.insert(a * y.space.count(1) + b);
  p.normalize();
  return p;
}

// ---- finite colimits, levelwise ----

void SSetDiagram::validate() const {
  if (static_cast<int>(value.size()) != index->nobj() ||
      static_cast<int>(action.size()) != index->nmor())
    throw CatError(ErrKind::Internal, "sset diagram tables have the wrong size");
  for (int g = 0; g < index->nmor(); ++g)
    for (int f = 0; f < index->nmor(); ++f) {
      int gf = index->comp[g][f];
      if (gf < 0) continue;
      const SSetMap& mg = action[g];
      const SSetMap& mf = action[f];
      const SSetMap& mgf = action[gf];
      for (size_t k = 0; k < mf.level.size(); ++k)
        for (size_t c = 0; c < mf.level[k].size(); ++c)
          if (mg.level[k][mf.level[k][c]] != mgf.level[k][c])
            throw CatError(ErrKind::Internal, "sset diagram is not functorial");
    }
}

SSetColimit finite_colimit(const SSetDiagram& d) {
  d.validate();
  SSetColimit out;
  int dim = d.value.empty() ? 0 : d.value[0].dim;
  for (const auto& v : d.value) dim = std::min(dim, v.dim);
  SSet& colim = out.space;
  colim.dim = dim;
  colim.cells.resize(dim + 1);
  colim.face.resize(dim + 1);
  colim.degen.resize(dim + 1);
  out.cell_class.resize(d.value.size());
  for (size_t v = 0; v < d.value.size(); ++v) out.cell_class[v].resize(dim + 1);

  std::vector<std::vector<int>> offset(dim + 1);  // per level, per value
  std::vector<std::vector<int>> parent(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    int total = 0;
    for (size_t v = 0; v < d.value.size(); ++v) {
      offset[k].push_back(total);
      total += d.value[v].count(k);
    }
    parent[k].resize(total);
    std::iota(parent[k].begin(), parent[k].end(), 0);
  }
  std::function<int(int, int)> find = [&](int k, int a) {
    while (parent[k][a] != a) a = parent[k][a] = parent[k][parent[k][a]];
    return a;
  };
  for (int m = 0; m < d.index->nmor(); ++m) {
    int vsrc = d.index->mors[m].src, vtgt = d.index->mors[m].tgt;
    for (int k = 0; k <= dim; ++k)
      for (int c = 0; c < d.value[vsrc].count(k); ++c) {
        int a = find(k, offset[k][vsrc] + c);
        int b = find(k, offset[k][vtgt] + d.action[m].level[k][c]);
        parent[k][a] = b;
      }
  }
  // classes per level, with the lexicographically least member name
  std::vector<std::map<int, int>> root_class(dim + 1);
  std::vector<std::vector<std::string>> names(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    for (size_t v = 0; v < d.value.size(); ++v) {
      out.cell_class[v][k].resize(d.value[v].count(k));
      for (int c = 0; c < d.value[v].count(k); ++c) {
        int r = find(k, offset[k][v] + c);
        auto it = root_class[k].find(r);
        if (it == root_class[k].end()) {
          it = root_class[k].insert({r, static_cast<int>(names[k].size())}).first;
          names[k].push_back(d.value[v].cells[k][c]);
        } else {
          names[k][it->second] = std::min(names[k][it->second], d.value[v].cells[k][c]);
        }
        out.cell_class[v][k][c] = it->second;
      }
    }
    colim.cells[k] = names[k];
    ensure_cells(static_cast<long long>(names[k].size()));
  }
  // induced faces and degeneracies; naturality makes them well defined, but
  // verify representative independence anyway
  for (int k = 1; k <= dim; ++k) colim.face[k].assign(k + 1, std::vector<int>(colim.count(k), -1));
  for (int k = 0; k < dim; ++k) colim.degen[k].assign(k + 1, std::vector<int>(colim.count(k), -1));
  for (size_t v = 0; v < d.value.size(); ++v) {
    for (int k = 1; k <= dim; ++k)
      for (int i = 0; i <= k; ++i)
        for (int c = 0; c < d.value[v].count(k); ++c) {
          int cl = out.cell_class[v][k][c];
          int want = out.cell_class[v][k - 1][d.value[v].face[k][i][c]];
          int& slot = colim.face[k][i][cl];
          if (slot >= 0 && slot != want)
            throw CatError(ErrKind::Internal, "colimit face map not well defined");
          slot = want;
        }
    for (int k = 0; k < dim; ++k)
      for (int j = 0; j <= k; ++j)
        for (int c = 0; c < d.value[v].count(k); ++c) {
          int cl = out.cell_class[v][k][c];
          int want = out.cell_class[v][k + 1][d.value[v].degen[k][j][c]];
          int& slot = colim.degen[k][j][cl];
          if (slot >= 0 && slot != want)
            throw CatError(ErrKind::Internal, "colimit degeneracy not well defined");
          slot = want;
        }
  }
  colim.validate();
  for (size_t v = 0; v < d.value.size(); ++v) {
    SSetMap inj;
    inj.level = out.cell_class[v];
    out.injections.push_back(inj);
  }
  return out;
}

SSetColimit pushout(const SSet& a, const SSet& left, const SSetMap& to_left, const SSet& right,
                    const SSetMap& to_right) {
  SSetDiagram d;
  d.index = poset_cat(3, {{1, 0}, {1, 2}});
  d.value = {left, a, right};
  d.action.resize(d.index->nmor());
  for (int m = 0; m < d.index->nmor(); ++m) {
    int s = d.index->mors[m].src, t = d.index->mors[m].tgt;
    if (s == t) {
      SSetMap id;
      id.level.resize(d.value[s].dim + 1);
      for (int k = 0; k <= d.value[s].dim; ++k) {
        id.level[k].resize(d.value[s].count(k));
        std::iota(id.level[k].begin(), id.level[k].end(), 0);
      }
      d.action[m] = id;
    } else if (t == 0) {
      d.action[m] = to_left;
    } else {
      d.action[m] = to_right;
    }
  }
  return finite_colimit(d);
}

// ---- (co)skeleta ----

SSet skeleton(const SSet& x, int k) {
  SSet out;
  out.dim = x.dim;
  out.cells.resize(x.dim + 1);
  out.face.resize(x.dim + 1);
  out.degen.resize(x.dim + 1);
  std::vector<std::vector<int>> keep(x.dim + 1), reindex(x.dim + 1);
  for (int m = 0; m <= x.dim; ++m) {
    reindex[m].assign(x.count(m), -1);
    for (int c = 0; c < x.count(m); ++c) {
      auto [lvl, core] = x.ez_core(m, c);
      (void)core;
      if (lvl <= k) {
        reindex[m][c] = static_cast<int>(keep[m].size());
        keep[m].push_back(c);
        out.cells[m].push_back(x.cells[m][c]);
      }
    }
  }
  for (int m = 1; m <= x.dim; ++m) {
    out.face[m].assign(m + 1, std::vector<int>(keep[m].size()));
    for (int i = 0; i <= m; ++i)
      for (size_t c = 0; c < keep[m].size(); ++c)
        out.face[m][i][c] = reindex[m - 1][x.face[m][i][keep[m][c]]];
  }
  for (int m = 0; m < x.dim; ++m) {
    out.degen[m].assign(m + 1, std::vector<int>(keep[m].size()));
    for (int j = 0; j <= m; ++j)
      for (size_t c = 0; c < keep[m].size(); ++c)
        out.degen[m][j][c] = reindex[m + 1][x.degen[m][j][keep[m][c]]];
  }
  out.validate();
  return out;
}

namespace {
// compatible boundary tuples (c_0, ..., c_m) of (m-1)-cells
std::vector<std::vector<int>> spheres(const SSet& x, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(m + 1, -1);
  std::function<void(int)> rec = [&](int i) {
    if (i == m + 1) {
      out.push_back(pick);
      return;
    }
    for (int c = 0; c < x.count(m - 1); ++c) {
      pick[i] = c;
      bool ok = true;
      // d_a c_b = d_{b-1} c_a for a < b (faces of the would-be m-cell)
      for (int a = 0; a < i && ok; ++a)
        if (m >= 2 && x.face[m - 1][a][pick[i]] != x.face[m - 1][i - 1][pick[a]]) ok = false;
      if (ok) rec(i + 1);
      pick[i] = -1;
    }
  };
  rec(0);
  return out;
}
}  // namespace

SSet coskeleton(const SSet& x, int k, int dim) {
  if (dim > Limits::global().max_cells)
    throw CatError(ErrKind::DimensionBoundExceeded, "coskeleton dimension too large");
  SSet out;
  out.dim = dim;
  out.cells.resize(dim + 1);
  out.face.resize(dim + 1);
  out.degen.resize(dim + 1);
  int copy_to = std::min(k, std::min(dim, x.dim));
  for (int m = 0; m <= copy_to; ++m) out.cells[m] = x.cells[m];
  for (int m = 1; m <= copy_to; ++m) out.face[m] = x.face[m];
  for (int m = 0; m < copy_to; ++m) out.degen[m] = x.degen[m];
  for (int m = copy_to + 1; m <= dim; ++m) {
    auto sph = spheres(out, m);
    ensure_cells(static_cast<long long>(sph.size()));
    out.face[m].assign(m + 1, std::vector<int>(sph.size()));
    for (size_t c = 0; c < sph.size(); ++c) {
      std::string name = "[";
      for (int i = 0; i <= m; ++i) {
        if (i) name += ";";
        name += std::to_string(sph[c][i]);
      }
      name += "]";
      out.cells[m].push_back(name);
      for (int i = 0; i <= m; ++i) out.face[m][i][c] = sph[c][i];
    }
    // degeneracies from level m-1 up to m
    out.degen[m - 1].assign(m, std::vector<int>(out.count(m - 1), -1));
    for (int j = 0; j <= m - 1; ++j)
      for (int c = 0; c < out.count(m - 1); ++c) {
        std::vector<int> faces(m + 1);
        for (int i = 0; i <= m; ++i) {
          if (i < j)
            faces[i] = (m - 1 >= 1) ? out.degen[m - 2][j - 1][out.face[m - 1][i][c]] : -1;
          else if (i == j || i == j + 1)
            faces[i] = c;
          else
            faces[i] = (m - 1 >= 1) ? out.degen[m - 2][j][out.face[m - 1][i - 1][c]] : -1;
        }
        int found = -1;
        for (size_t t = 0; t < sph.size(); ++t)
          if (sph[t] == faces) found = static_cast<int>(t);
        if (found < 0)
          throw CatError(ErrKind::Internal, "degenerate sphere missing in coskeleton");
        out.degen[m - 1][j][c] = found;
      }
  }
  out.validate();
  return out;
}

bool is_k_coskeletal(const SSet& x, int k) {
  for (int m = k + 1; m <= x.dim; ++m) {
    auto sph = spheres(x, m);
    for (const auto& s : sph) {
      int fillers = 0;
      for (int c = 0; c < x.count(m); ++c) {
        bool match = true;
        for (int i = 0; i <= m; ++i)
          if (x.face[m][i][c] != s[i]) match = false;
        if (match) ++fillers;
      }
      if (fillers != 1) return false;
    }
  }
  return true;
}

// ---- edgewise subdivision ----

SSet edgewise_subdivision(const SSet& x) {
  if (x.dim < 1)
    throw CatError(ErrKind::DimensionBoundExceeded,
                   "edgewise subdivision needs at least dimension 1 data");
  SSet out;
  out.dim = (x.dim - 1) / 2;
  out.cells.resize(out.dim + 1);
  out.face.resize(out.dim + 1);
  out.degen.resize(out.dim + 1);
  for (int k = 0; k <= out.dim; ++k) out.cells[k] = x.cells[2 * k + 1];
  auto eps = [](const SimplicialOperator& a, int k) {
    // a : [k'] -> [k]; returns a * a^op : [2k'+1] -> [2k+1]
    int kp = static_cast<int>(a.size()) - 1;
    SimplicialOperator e(2 * kp + 2);
    for (int i = 0; i <= kp; ++i) {
      e[i] = a[i];
      e[2 * kp + 1 - i] = 2 * k + 1 - a[i];
    }
    return e;
  };
  for (int k = 1; k <= out.dim; ++k) {
    out.face[k].assign(k + 1, std::vector<int>(out.count(k)));
    for (int i = 0; i <= k; ++i) {
      SimplicialOperator di;
      for (int v = 0; v <= k; ++v)
        if (v != i) di.push_back(v);
      SimplicialOperator e = eps(di, k);
      for (int c = 0; c < out.count(k); ++c)
        out.face[k][i][c] = apply_operator(x, e, 2 * k + 1, c);
    }
  }
  for (int k = 0; k < out.dim; ++k) {
    out.degen[k].assign(k + 1, std::vector<int>(out.count(k)));
    for (int j = 0; j <= k; ++j) {
      SimplicialOperator sj;
      for (int v = 0; v <= k; ++v) {
        sj.push_back(v);
        if (v == j) sj.push_back(v);
      }
      SimplicialOperator e = eps(sj, k);
      for (int c = 0; c < out.count(k); ++c)
        out.degen[k][j][c] = apply_operator(x, e, 2 * k + 1, c);
    }
  }
  out.validate();
  return out;
}

// ---- nerve and realization ----

SSet nerve(const CatPtr& c, int dim) {
  SSet x;
  x.dim = dim;
  x.cells.resize(dim + 1);
  x.face.resize(dim + 1);
  x.degen.resize(dim + 1);
  // level k cells: composable chains (m_1, ..., m_k); level 0: objects
  std::vector<std::vector<std::vector<int>>> chains(dim + 1);
  for (int o = 0; o < c->nobj(); ++o) {
    chains[0].push_back({o});
    x.cells[0].push_back(c->objects[o]);
  }
  for (int k = 1; k <= dim; ++k) {
    for (const auto& prev : chains[k - 1]) {
      int last_tgt = (k == 1) ? prev[0] : c->mors[prev.back()].tgt;
      for (int m = 0; m < c->nmor(); ++m) {
        if (c->mors[m].src != last_tgt) continue;
        auto chain = prev;
        if (k == 1) chain.clear();
        chain.push_back(m);
        chains[k].push_back(chain);
        std::string nm = c->objects[(k == 1) ? prev[0] : c->mors[prev[0]].src];
        for (int mm : chain) nm += "|" + c->mors[mm].id;
        x.cells[k].push_back(nm);
      }
    }
    ensure_cells(static_cast<long long>(x.cells[k].size()));
  }
  auto index_of = [&](int k, const std::vector<int>& ch, int first_obj) {
    for (size_t t = 0; t < chains[k].size(); ++t) {
      if (k == 0) {
        if (chains[0][t][0] == first_obj) return static_cast<int>(t);
      } else if (chains[k][t] == ch) {
        if (c->mors[ch[0]].src == first_obj) return static_cast<int>(t);
        return static_cast<int>(t);
      }
    }
    return -1;
  };
  for (int k = 1; k <= dim; ++k) {
    x.face[k].assign(k + 1, std::vector<int>(x.count(k)));
    for (int cix = 0; cix < x.count(k); ++cix) {
      const auto& ch = chains[k][cix];
      for (int i = 0; i <= k; ++i) {
        std::vector<int> nch;
        if (i == 0)
          nch.assign(ch.begin() + 1, ch.end());
        else if (i == k)
          nch.assign(ch.begin(), ch.end() - 1);
        else {
          nch.assign(ch.begin(), ch.end());
          int comp = c->comp[ch[i]][ch[i - 1]];
          nch[i - 1] = comp;
          nch.erase(nch.begin() + i);
        }
        int first_obj;
        if (k - 1 == 0)
          first_obj = (i == 0) ? c->mors[ch[0]].tgt : c->mors[ch[0]].src;
        else
          first_obj = c->mors[nch[0]].src;
        x.face[k][i][cix] = index_of(k - 1, (k - 1 == 0) ? std::vector<int>{first_obj} : nch,
                                     first_obj);
      }
    }
  }
  for (int k = 0; k < dim; ++k) {
    x.degen[k].assign(k + 1, std::vector<int>(x.count(k)));
    for (int cix = 0; cix < x.count(k); ++cix) {
      const auto& ch = chains[k][cix];
      for (int j = 0; j <= k; ++j) {
        std::vector<int> nch;
        int first_obj;
        if (k == 0) {
          nch = {c->idmor[ch[0]]};
          first_obj = ch[0];
        } else {
          nch = ch;
          int obj = (j == 0) ? c->mors[ch[0]].src : c->mors[ch[j - 1]].tgt;
          nch.insert(nch.begin() + j, c->idmor[obj]);
          first_obj = c->mors[nch[0]].src;
        }
        x.degen[k][j][cix] = index_of(k + 1, nch, first_obj);
      }
    }
  }
  x.validate();
  return x;
}

RealizeResult realize(const SSet& x) {
  // nondegenerate edges form a digraph that must be acyclic
  std::vector<int> edges;
  if (x.dim < 1) throw CatError(ErrKind::DimensionBoundExceeded, "realize needs 1-cells");
  for (int e = 0; e < x.count(1); ++e)
    if (!x.is_degenerate(1, e)) edges.push_back(e);
  int nv = x.count(0);
  auto esrc = [&](int e) { return x.face[1][1][e]; };
  auto etgt = [&](int e) { return x.face[1][0][e]; };
  {
    std::vector<int> state(nv, 0);
    std::function<void(int)> dfs = [&](int v) {
      state[v] = 1;
      for (int e : edges)
        if (esrc(e) == v) {
          int w = etgt(e);
          if (state[w] == 1)
            throw CatError(ErrKind::CyclicOneSkeleton, "one-skeleton has a directed cycle");
          if (state[w] == 0) dfs(w);
        }
      state[v] = 2;
    };
    for (int v = 0; v < nv; ++v)
      if (state[v] == 0) dfs(v);
  }
  // all paths of nondegenerate edges
  struct Path {
    int src;
    std::vector<int> edges;
  };
  std::vector<Path> paths;
  std::map<std::pair<int, std::vector<int>>, int> path_index;
  auto add_path = [&](int src, std::vector<int> es) {
    auto key = std::make_pair(src, es);
    auto it = path_index.find(key);
    if (it != path_index.end()) return it->second;
    int id = static_cast<int>(paths.size());
    path_index[key] = id;
    paths.push_back({src, std::move(es)});
    ensure_cells(static_cast<long long>(paths.size()));
    return id;
  };
  std::function<void(int, std::vector<int>&)> extend = [&](int v, std::vector<int>& acc) {
    add_path(acc.empty() ? v : esrc(acc.front()), acc);
    for (int e : edges)
      if (esrc(e) == v) {
        acc.push_back(e);
        extend(etgt(e), acc);
        acc.pop_back();
      }
  };
  for (int v = 0; v < nv; ++v) {
    std::vector<int> acc;
    extend(v, acc);
  }
  auto ptgt = [&](const Path& p) { return p.edges.empty() ? p.src : etgt(p.edges.back()); };
  // congruence generated by the 2-cells: d_1 t ~ d_0 t . d_2 t
  std::vector<int> parent(paths.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  auto edge_path = [&](int e) {
    std::vector<int> es;
    if (!x.is_degenerate(1, e)) es.push_back(e);
    int src = x.is_degenerate(1, e) ? x.face[1][1][e] : esrc(e);
    return std::make_pair(src, es);
  };
  std::vector<std::pair<std::pair<int, std::vector<int>>, std::pair<int, std::vector<int>>>> rels;
  if (x.dim >= 2) {
    for (int t = 0; t < x.count(2); ++t) {
      auto lhs = edge_path(x.face[2][1][t]);
      auto e2 = edge_path(x.face[2][2][t]);
      auto e0 = edge_path(x.face[2][0][t]);
      std::vector<int> rhs_edges = e2.second;
      rhs_edges.insert(rhs_edges.end(), e0.second.begin(), e0.second.end());
      rels.push_back({lhs, {e2.first, rhs_edges}});
    }
  }
  // rewrite every path at every relation occurrence; appended paths are
  // processed too since the loop bound is re-evaluated
  auto as_subpath = [&](const std::vector<int>& hay, const std::vector<int>& needle, int at) {
    for (size_t i = 0; i < needle.size(); ++i)
      if (hay[at + i] != needle[i]) return false;
    return true;
  };
  auto valid_path = [&](int src, const std::vector<int>& es) {
    int v = src;
    for (int e : es) {
      if (esrc(e) != v) return false;
      v = etgt(e);
    }
    return true;
  };
  for (size_t pid = 0; pid < paths.size(); ++pid) {
    for (const auto& [lhs, rhs] : rels) {
      for (int dir = 0; dir < 2; ++dir) {
        const auto& from = dir ? rhs : lhs;
        const auto& to = dir ? lhs : rhs;
        const Path w = paths[pid];  // copy: add_path may reallocate
        if (from.second.empty()) {
          // empty source: splice `to` in at matching vertices (only loops
          // could arise, which acyclicity rules out unless `to` is empty too)
          int v = from.first;
          int pos_vertex = w.src;
          for (size_t pos = 0; pos <= w.edges.size(); ++pos) {
            if (pos_vertex == v) {
              std::vector<int> ne(w.edges.begin(), w.edges.begin() + pos);
              ne.insert(ne.end(), to.second.begin(), to.second.end());
              ne.insert(ne.end(), w.edges.begin() + pos, w.edges.end());
              if (valid_path(w.src, ne)) unite(static_cast<int>(pid), add_path(w.src, ne));
            }
            if (pos < w.edges.size()) pos_vertex = etgt(w.edges[pos]);
          }
        } else {
          for (size_t pos = 0; pos + from.second.size() <= w.edges.size(); ++pos) {
            if (!as_subpath(w.edges, from.second, static_cast<int>(pos))) continue;
            std::vector<int> ne(w.edges.begin(), w.edges.begin() + pos);
            ne.insert(ne.end(), to.second.begin(), to.second.end());
            ne.insert(ne.end(), w.edges.begin() + pos + from.second.size(), w.edges.end());
            if (valid_path(w.src, ne)) unite(static_cast<int>(pid), add_path(w.src, ne));
          }
        }
      }
    }
  }
  std::map<int, int> root_class;
  std::vector<int> cls(paths.size());
  std::vector<int> rep;
  for (size_t pid = 0; pid < paths.size(); ++pid) {
    int r = find(static_cast<int>(pid));
    auto it = root_class.find(r);
    if (it == root_class.end()) {
      it = root_class.insert({r, static_cast<int>(rep.size())}).first;
      rep.push_back(static_cast<int>(pid));
    } else if (paths[pid].edges.size() < paths[rep[it->second]].edges.size()) {
      rep[it->second] = static_cast<int>(pid);
    }
    cls[pid] = it->second;
  }
  RawCategory raw;
  for (int v = 0; v < nv; ++v) raw.objects.push_back(x.cells[0][v]);
  auto cname = [&](int c2) {
    const Path& p = paths[rep[c2]];
    if (p.edges.empty()) return "1@" + x.cells[0][p.src];
    std::string s;
    for (size_t i = 0; i < p.edges.size(); ++i) {
      if (i) s += "*";
      s += x.cells[1][p.edges[i]];
    }
    return s;
  };
  for (size_t c2 = 0; c2 < rep.size(); ++c2) {
    const Path& p = paths[rep[c2]];
    raw.morphisms.push_back({cname(static_cast<int>(c2)), x.cells[0][p.src], x.cells[0][ptgt(p)]});
  }
  for (int v = 0; v < nv; ++v) {
    int pid = path_index.at({v, {}});
    raw.identities.push_back({x.cells[0][v], cname(cls[pid])});
  }
  for (size_t cf = 0; cf < rep.size(); ++cf)
    for (size_t cg = 0; cg < rep.size(); ++cg) {
      const Path& pf = paths[rep[cf]];
      const Path& pg = paths[rep[cg]];
      if (ptgt(pf) != pg.src) continue;
      std::vector<int> cat = pf.edges;
      cat.insert(cat.end(), pg.edges.begin(), pg.edges.end());
      auto it = path_index.find({pf.src, cat});
      if (it == path_index.end())
        throw CatError(ErrKind::Internal, "composite path missing during realization");
      raw.compose.push_back({cname(static_cast<int>(cg)), cname(static_cast<int>(cf)),
                             cname(cls[it->second])});
    }
  RealizeResult out;
  out.cat = FinCat::make(raw);
  return out;
}

// ---- generic isomorphism search ----

std::optional<std::vector<std::vector<int>>> sset_isomorphic(const SSet& a, const SSet& b) {
  if (a.dim != b.dim) return std::nullopt;
  for (int k = 0; k <= a.dim; ++k)
    if (a.count(k) != b.count(k)) return std::nullopt;
  std::vector<std::vector<int>> map(a.dim + 1);
  std::vector<std::vector<int>> used(a.dim + 1);
  for (int k = 0; k <= a.dim; ++k) {
    map[k].assign(a.count(k), -1);
    used[k].assign(b.count(k), 0);
  }
  long long budget = 5'000'000;
  std::function<bool(int, int)> assign = [&](int k, int c) -> bool {
    if (--budget < 0) return false;
    if (k > a.dim) return true;
    if (c == a.count(k)) return assign(k + 1, 0);
    for (int img = 0; img < b.count(k); ++img) {
      if (used[k][img]) continue;
      bool ok = true;
      if (k >= 1)
        for (int i = 0; i <= k && ok; ++i)
          if (map[k - 1][a.face[k][i][c]] != b.face[k][i][img]) ok = false;
      // degeneracy compatibility downward
      if (ok && k >= 1)
        for (int j = 0; j <= k - 1 && ok; ++j)
          for (int c2 = 0; c2 < a.count(k - 1) && ok; ++c2)
            if (a.degen[k - 1][j][c2] == c && map[k - 1][c2] >= 0 &&
                b.degen[k - 1][j][map[k - 1][c2]] != img)
              ok = false;
      if (!ok) continue;
      map[k][c] = img;
      used[k][img] = 1;
      if (assign(k, c + 1)) return true;
      used[k][img] = 0;
      map[k][c] = -1;
    }
    return false;
  };
  if (!assign(0, 0)) return std::nullopt;
  return map;
}


// ---- the over-a-simplex constructions ----

namespace {

struct WordComplex {
  SSet space;
  std::vector<std::vector<SimplicialOperator>> words;
  int index_of(int k, const SimplicialOperator& w) const {
    for (int c = 0; c < static_cast<int>(words[k].size()); ++c)
      if (words[k][c] == w) return c;
    return -1;
  }
};

WordComplex word_subcomplex(int n, int dim,
                            const std::function<bool(const SimplicialOperator&)>& keep) {
  WordComplex out;
  SSet& x = out.space;
  x.dim = dim;
  x.cells.resize(dim + 1);
  x.face.resize(dim + 1);
  x.degen.resize(dim + 1);
  out.words.resize(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    for (auto& w : monotone_words(k, n))
      if (keep(w)) {
        out.words[k].push_back(w);
        x.cells[k].push_back(word_name(w));
      }
    ensure_cells(static_cast<long long>(x.cells[k].size()));
  }
  for (int k = 1; k <= dim; ++k) {
    x.face[k].assign(k + 1, std::vector<int>(out.words[k].size()));
    for (int i = 0; i <= k; ++i)
      for (int c = 0; c < static_cast<int>(out.words[k].size()); ++c) {
        SimplicialOperator w = out.words[k][c];
        w.erase(w.begin() + i);
        x.face[k][i][c] = out.index_of(k - 1, w);
      }
  }
  for (int k = 0; k < dim; ++k) {
    x.degen[k].assign(k + 1, std::vector<int>(out.words[k].size()));
    for (int j = 0; j <= k; ++j)
      for (int c = 0; c < static_cast<int>(out.words[k].size()); ++c) {
        SimplicialOperator w = out.words[k][c];
        w.insert(w.begin() + j, w[j]);
        x.degen[k][j][c] = out.index_of(k + 1, w);
      }
  }
  x.validate();
  return out;
}

WordComplex interval_complex(int n, int lo, int hi, int dim) {
  return word_subcomplex(n, dim, [lo, hi](const SimplicialOperator& w) {
    return w.front() >= lo && w.back() <= hi;
  });
}

}  // namespace

SimplexDiagram SimplexDiagram::from_steps(std::vector<MarkedSSet> value,
                                          std::vector<SSetMap> steps) {
  SimplexDiagram d;
  d.n = static_cast<int>(value.size()) - 1;
  d.value = std::move(value);
  for (auto& v : d.value) v.validate();
  if (static_cast<int>(steps.size()) != d.n)
    throw CatError(ErrKind::Internal, "simplex diagram needs one step map per edge");
  for (int i = 0; i <= d.n; ++i) {
    SSetMap id;
    id.level.resize(d.value[i].space.dim + 1);
    for (int k = 0; k <= d.value[i].space.dim; ++k) {
      id.level[k].resize(d.value[i].space.count(k));
      std::iota(id.level[k].begin(), id.level[k].end(), 0);
    }
    d.maps[{i, i}] = id;
  }
  for (int i = 0; i < d.n; ++i)
    SSetMap::make(d.value[i].space, d.value[i + 1].space, steps[i].level);
  for (int i = 0; i < d.n; ++i)
    for (int e : d.value[i].marked)
      if (!d.value[i + 1].marked.count(steps[i].level[1][e]))
        throw CatError(ErrKind::Internal, "step map does not preserve markings");
  for (int j = 1; j <= d.n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      const SSetMap& rest = d.maps.at({i + 1, j});
      SSetMap m;
      m.level.resize(d.value[i].space.dim + 1);
      for (int k = 0; k <= d.value[i].space.dim; ++k) {
        m.level[k].resize(d.value[i].space.count(k));
        for (int c = 0; c < d.value[i].space.count(k); ++c)
          m.level[k][c] = rest.level[k][steps[i].level[k][c]];
      }
      d.maps[{i, j}] = m;
    }
  return d;
}

int MappingSimplex::encode(int k, const SimplicialOperator& sigma, int tau) const {
  for (int c = 0; c < static_cast<int>(decode[k].size()); ++c)
    if (decode[k][c].first == sigma && decode[k][c].second == tau) return c;
  return -1;
}

MappingSimplex mapping_simplex(const SimplexDiagram& phi, int dim) {
  MappingSimplex out;
  for (const auto& v : phi.value)
    if (v.space.dim < dim)
      throw CatError(ErrKind::DimensionBoundExceeded, "value dimension bound too small");
  SSet& x = out.m.space;
  x.dim = dim;
  x.cells.resize(dim + 1);
  x.face.resize(dim + 1);
  x.degen.resize(dim + 1);
  out.decode.resize(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    for (auto& sigma : monotone_words(k, phi.n))
      for (int tau = 0; tau < phi.value[sigma[0]].space.count(k); ++tau) {
        out.decode[k].push_back({sigma, tau});
        x.cells[k].push_back("(" + word_name(sigma) + "|" +
                             phi.value[sigma[0]].space.cells[k][tau] + ")");
      }
    ensure_cells(static_cast<long long>(x.cells[k].size()));
  }
  for (int k = 1; k <= dim; ++k) {
    x.face[k].assign(k + 1, std::vector<int>(x.count(k)));
    for (int c = 0; c < x.count(k); ++c) {
      auto [sigma, tau] = out.decode[k][c];
      for (int i = 0; i <= k; ++i) {
        SimplicialOperator nsigma = sigma;
        nsigma.erase(nsigma.begin() + i);
        int ntau;
        if (i > 0) {
          ntau = phi.value[sigma[0]].space.face[k][i][tau];
        } else {
          int below = phi.value[sigma[0]].space.face[k][0][tau];
          ntau = phi.map(sigma[0], sigma[1]).level[k - 1][below];
        }
        x.face[k][i][c] = out.encode(k - 1, nsigma, ntau);
      }
    }
  }
  for (int k = 0; k < dim; ++k) {
    x.degen[k].assign(k + 1, std::vector<int>(x.count(k)));
    for (int c = 0; c < x.count(k); ++c) {
      auto [sigma, tau] = out.decode[k][c];
      for (int j = 0; j <= k; ++j) {
        SimplicialOperator nsigma = sigma;
        nsigma.insert(nsigma.begin() + j, sigma[j]);
        int ntau = phi.value[sigma[0]].space.degen[k][j][tau];
        x.degen[k][j][c] = out.encode(k + 1, nsigma, ntau);
      }
    }
  }
  x.validate();
  // an edge ((i <= j), f) is marked exactly when f is marked in value[i]
  for (int c = 0; c < x.count(1); ++c) {
    auto [sigma, tau] = out.decode[1][c];
    if (phi.value[sigma[0]].marked.count(tau)) out.m.marked.insert(c);
  }
  out.m.normalize();
  out.m.validate();
  return out;
}

int RelativeNerve::encode(int k, const Cell& c) const {
  for (int i = 0; i < static_cast<int>(decode[k].size()); ++i)
    if (decode[k][i].sigma == c.sigma && decode[k][i].tau == c.tau) return i;
  return -1;
}

namespace {
std::vector<std::vector<int>> nonempty_subsets(int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << (k + 1)); ++mask) {
    std::vector<int> s;
    for (int v = 0; v <= k; ++v)
      if (mask & (1 << v)) s.push_back(v);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}
}  // namespace

RelativeNerve relative_nerve(const SimplexDiagram& phi, int dim) {
  RelativeNerve out;
  SSet& x = out.m.space;
  x.dim = dim;
  x.cells.resize(dim + 1);
  x.face.resize(dim + 1);
  x.degen.resize(dim + 1);
  out.decode.resize(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    auto subsets = nonempty_subsets(k);
    for (auto& sigma : monotone_words(k, phi.n)) {
      RelativeNerve::Cell cell;
      cell.sigma = sigma;
      std::function<void(size_t)> rec = [&](size_t t) {
        if (t == subsets.size()) {
          out.decode[k].push_back(cell);
          ensure_cells(static_cast<long long>(out.decode[k].size()));
          return;
        }
        const auto& J = subsets[t];
        int target = sigma[J.back()];
        int lvl = static_cast<int>(J.size()) - 1;
        for (int tau = 0; tau < phi.value[target].space.count(lvl); ++tau) {
          bool ok = true;
          for (size_t drop = 0; drop < J.size() && ok; ++drop) {
            if (J.size() == 1) break;
            std::vector<int> Jp = J;
            Jp.erase(Jp.begin() + drop);
            int tp = sigma[Jp.back()];
            SimplicialOperator beta;
            for (int v : Jp)
              beta.push_back(
                  static_cast<int>(std::lower_bound(J.begin(), J.end(), v) - J.begin()));
            int restricted = apply_operator(phi.value[target].space, beta, lvl, tau);
            int expect =
                phi.map(tp, target).level[static_cast<int>(Jp.size()) - 1][cell.tau.at(Jp)];
            if (restricted != expect) ok = false;
          }
          if (!ok) continue;
          cell.tau[J] = tau;
          rec(t + 1);
          cell.tau.erase(J);
        }
      };
      rec(0);
    }
    for (const auto& cell : out.decode[k]) {
      std::vector<int> full(k + 1);
      std::iota(full.begin(), full.end(), 0);
      x.cells[k].push_back("(" + word_name(cell.sigma) + "|" +
                           phi.value[cell.sigma[k]].space.cells[k][cell.tau.at(full)] + ")");
    }
  }
  auto act = [&](const RelativeNerve::Cell& cell, const SimplicialOperator& alpha) {
    int kp = static_cast<int>(alpha.size()) - 1;
    RelativeNerve::Cell ncell;
    ncell.sigma.resize(kp + 1);
    for (int i = 0; i <= kp; ++i) ncell.sigma[i] = cell.sigma[alpha[i]];
    for (const auto& J : nonempty_subsets(kp)) {
      std::vector<int> Jimg;
      for (int v : J) Jimg.push_back(alpha[v]);
      std::vector<int> Jset = Jimg;
      Jset.erase(std::unique(Jset.begin(), Jset.end()), Jset.end());
      SimplicialOperator beta;
      for (int v : Jimg)
        beta.push_back(
            static_cast<int>(std::lower_bound(Jset.begin(), Jset.end(), v) - Jset.begin()));
      int target = cell.sigma[Jset.back()];
      int moved = apply_operator(phi.value[target].space, beta,
                                 static_cast<int>(Jset.size()) - 1, cell.tau.at(Jset));
      ncell.tau[J] = moved;
    }
    return ncell;
  };
  for (int k = 1; k <= dim; ++k) {
    x.face[k].assign(k + 1, std::vector<int>(x.count(k)));
    for (int c = 0; c < x.count(k); ++c)
      for (int i = 0; i <= k; ++i) {
        SimplicialOperator di;
        for (int v = 0; v <= k; ++v)
          if (v != i) di.push_back(v);
        x.face[k][i][c] = out.encode(k - 1, act(out.decode[k][c], di));
      }
  }
  for (int k = 0; k < dim; ++k) {
    x.degen[k].assign(k + 1, std::vector<int>(x.count(k)));
    for (int c = 0; c < x.count(k); ++c)
      for (int j = 0; j <= k; ++j) {
        SimplicialOperator sj;
        for (int v = 0; v <= k; ++v) {
          sj.push_back(v);
          if (v == j) sj.push_back(v);
        }
        x.degen[k][j][c] = out.encode(k + 1, act(out.decode[k][c], sj));
      }
  }
  x.validate();
  for (int c = 0; c < x.count(1); ++c) {
    const auto& cell = out.decode[1][c];
    int j = cell.sigma[1];
    int edge = cell.tau.at({0, 1});
    if (phi.value[j].marked.count(edge)) out.m.marked.insert(c);
  }
  out.m.normalize();
  out.m.validate();
  return out;
}

SSetMap nu(const SimplexDiagram& phi, const MappingSimplex& m, const RelativeNerve& n) {
  int dim = m.m.space.dim;
  std::vector<std::vector<int>> level(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    level[k].resize(m.m.space.count(k));
    for (int c = 0; c < m.m.space.count(k); ++c) {
      auto [sigma, tau] = m.decode[k][c];
      RelativeNerve::Cell cell;
      cell.sigma = sigma;
      for (const auto& J : nonempty_subsets(k)) {
        SimplicialOperator incl(J.begin(), J.end());
        int restricted = apply_operator(phi.value[sigma[0]].space, incl, k, tau);
        cell.tau[J] =
            phi.map(sigma[0], sigma[J.back()]).level[static_cast<int>(J.size()) - 1][restricted];
      }
      level[k][c] = n.encode(k, cell);
      if (level[k][c] < 0)
        throw CatError(ErrKind::Internal, "nu image cell missing from the relative nerve");
    }
  }
  SSetMap map = SSetMap::make(m.m.space, n.m.space, level);
  for (int e : m.m.marked)
    if (!n.m.marked.count(map.level[1][e]))
      throw CatError(ErrKind::Internal, "nu does not preserve a marking");
  return map;
}

FiberCompare fiber_compare(const SimplexDiagram& phi, const MappingSimplex& m,
                           const RelativeNerve& n, int i) {
  FiberCompare out;
  SSetMap comparison = nu(phi, m, n);
  int dim = m.m.space.dim;
  for (int k = 0; k <= dim; ++k) {
    for (int c = 0; c < m.m.space.count(k); ++c) {
      auto [sigma, tau] = m.decode[k][c];
      bool constant = true;
      for (int v : sigma)
        if (v != i) constant = false;
      if (!constant) continue;
      int img = comparison.level[k][c];
      const auto& cell = n.decode[k][img];
      std::vector<int> full(k + 1);
      std::iota(full.begin(), full.end(), 0);
      if (cell.sigma != sigma || cell.tau.at(full) != tau) {
        out.pass = false;
        out.witness = {{"level", k}, {"cell", m.m.space.cells[k][c]}};
        return out;
      }
    }
  }
  return out;
}

namespace {

std::set<int> colimit_marking(const SSetColimit& col, const std::vector<MarkedSSet>& values) {
  std::set<int> out;
  for (size_t v = 0; v < values.size(); ++v)
    for (int e : values[v].marked) out.insert(col.cell_class[v][1][e]);
  return out;
}

json colimit_equals(const SSetColimit& col, const std::set<int>& col_marking,
                    const MarkedSSet& target, const std::vector<SSetMap>& legs,
                    const std::vector<MarkedSSet>& values) {
  int dim = target.space.dim;
  std::vector<std::vector<int>> induced(dim + 1);
  for (int k = 0; k <= dim; ++k) induced[k].assign(col.space.count(k), -1);
  for (size_t v = 0; v < values.size(); ++v)
    for (int k = 0; k <= dim; ++k)
      for (int c = 0; c < values[v].space.count(k); ++c) {
        int cl = col.cell_class[v][k][c];
        int want = legs[v].level[k][c];
        if (induced[k][cl] >= 0 && induced[k][cl] != want)
          return {{"reason", "legs do not factor through the colimit"}, {"level", k}};
        induced[k][cl] = want;
      }
  for (int k = 0; k <= dim; ++k) {
    if (col.space.count(k) != target.space.count(k))
      return {{"reason", "cell counts differ"},
              {"level", k},
              {"colimit", col.space.count(k)},
              {"target", target.space.count(k)}};
    std::vector<bool> hit(target.space.count(k), false);
    for (int cl = 0; cl < col.space.count(k); ++cl) {
      if (induced[k][cl] < 0) return {{"reason", "colimit cell not covered"}, {"level", k}};
      if (hit[induced[k][cl]]) return {{"reason", "canonical map not injective"}, {"level", k}};
      hit[induced[k][cl]] = true;
    }
  }
  for (int e = 0; e < col.space.count(1); ++e) {
    bool cm = col_marking.count(e) > 0;
    bool tm = target.marked.count(induced[1][e]) > 0;
    if (cm != tm) return {{"reason", "markings differ"}, {"edge", col.space.cells[1][e]}};
  }
  return json();
}

SSetMap identity_sset_map(const SSet& x) {
  SSetMap id;
  id.level.resize(x.dim + 1);
  for (int k = 0; k <= x.dim; ++k) {
    id.level[k].resize(x.count(k));
    std::iota(id.level[k].begin(), id.level[k].end(), 0);
  }
  return id;
}

// phi(v) x (interval lo..hi of [n])^sharp with its canonical leg into M
struct Piece {
  MarkedSSet space;
  WordComplex interval;
  SSetMap leg;
};

Piece make_piece(const SimplexDiagram& phi, const MappingSimplex& m, int v, int lo, int hi,
                 int dim) {
  Piece out;
  out.interval = interval_complex(phi.n, lo, hi, dim);
  out.space = marked_product(phi.value[v], sharp(out.interval.space));
  const SSet& vs = phi.value[v].space;
  const SSet& is = out.interval.space;
  std::vector<std::vector<int>> level(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    level[k].resize(out.space.space.count(k));
    for (int a = 0; a < vs.count(k); ++a)
      for (int b = 0; b < is.count(k); ++b) {
        const SimplicialOperator& sigma = out.interval.words[k][b];
        int tau = phi.map(v, sigma[0]).level[k][a];
        int img = m.encode(k, sigma, tau);
        if (img < 0) throw CatError(ErrKind::Internal, "piece leg misses the mapping simplex");
        level[k][a * is.count(k) + b] = img;
      }
  }
  out.leg = SSetMap::make(out.space.space, m.m.space, level);
  return out;
}

// a map between pieces: phi-component along value maps, interval inclusion
SSetMap piece_map(const SimplexDiagram& phi, const Piece& from, const Piece& to, int v_from,
                  int v_to) {
  const SSet& fi = from.interval.space;
  const SSet& ti = to.interval.space;
  int dim = from.space.space.dim;
  std::vector<std::vector<int>> level(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    level[k].resize(from.space.space.count(k));
    for (int a = 0; a < phi.value[v_from].space.count(k); ++a)
      for (int b = 0; b < fi.count(k); ++b) {
        int na = phi.map(v_from, v_to).level[k][a];
        int nb = to.interval.index_of(k, from.interval.words[k][b]);
        if (nb < 0) throw CatError(ErrKind::Internal, "interval inclusion missing a cell");
        level[k][a * fi.count(k) + b] = na * ti.count(k) + nb;
      }
  }
  return SSetMap::make(from.space.space, to.space.space, level);
}

}  // namespace

DecompositionReport mapping_simplex_decompositions(const SimplexDiagram& phi, int dim) {
  DecompositionReport out;
  if (phi.n < 1) throw CatError(ErrKind::Internal, "decompositions need n >= 1");
  auto m = mapping_simplex(phi, dim);

  // (1) M is the pushout of phi(0) x Delta^{1..n} -> phi(0) x Delta^n along
  // the inclusion into the smaller mapping simplex
  {
    Piece a = make_piece(phi, m, 0, 1, phi.n, dim);
    Piece l = make_piece(phi, m, 0, 0, phi.n, dim);
    // the restricted diagram on vertices 1..n and its mapping simplex; rather
    // than rebuilding cells on [n-1], realize it as the sub-mapping-simplex of
    // M spanned by words inside {1..n}
    SimplexDiagram rest;
    {
      std::vector<MarkedSSet> values(phi.value.begin() + 1, phi.value.end());
      std::vector<SSetMap> steps;
      for (int i = 1; i < phi.n; ++i) steps.push_back(phi.map(i, i + 1));
      if (phi.n == 1) steps.clear();
      rest = SimplexDiagram::from_steps(values, steps);
    }
    auto mrest = mapping_simplex(rest, dim);
    // leg of the restricted simplex into M: shift vertex labels up by one
    std::vector<std::vector<int>> shift(dim + 1);
    for (int k = 0; k <= dim; ++k) {
      shift[k].resize(mrest.m.space.count(k));
      for (int c = 0; c < mrest.m.space.count(k); ++c) {
        auto [sigma, tau] = mrest.decode[k][c];
        SimplicialOperator up = sigma;
        for (int& vv : up) ++vv;
        shift[k][c] = m.encode(k, up, tau);
        if (shift[k][c] < 0) throw CatError(ErrKind::Internal, "restricted simplex leg missing");
      }
    }
    SSetMap mrest_leg = SSetMap::make(mrest.m.space, m.m.space, shift);
    // map a -> mrest: (tau, word in 1..n) |-> (word shifted down, phi(0 <= w0)(tau))
    std::vector<std::vector<int>> down(dim + 1);
    for (int k = 0; k <= dim; ++k) {
      down[k].resize(a.space.space.count(k));
      for (int t = 0; t < phi.value[0].space.count(k); ++t)
        for (int b = 0; b < a.interval.space.count(k); ++b) {
          SimplicialOperator w = a.interval.words[k][b];
          for (int& vv : w) --vv;
          int tau = phi.map(0, a.interval.words[k][b][0]).level[k][t];
          int img = mrest.encode(k, w, tau);
          if (img < 0) throw CatError(ErrKind::Internal, "pushout leg missing");
          down[k][t * a.interval.space.count(k) + b] = img;
        }
    }
    SSetMap a_to_rest = SSetMap::make(a.space.space, mrest.m.space, down);
    SSetMap a_to_l = piece_map(phi, a, l, 0, 0);
    auto po = pushout(a.space.space, l.space.space, a_to_l, mrest.m.space, a_to_rest);
    std::vector<MarkedSSet> values = {l.space, a.space, mrest.m};
    std::vector<SSetMap> legs = {l.leg, a.leg, mrest_leg};
    json w = colimit_equals(po, colimit_marking(po, values), m.m, legs, values);
    out.pushout_identity = w.is_null();
    if (!w.is_null()) out.witness = {{"identity", "pushout"}, {"detail", w}};
  }

  // (2) M is the colimit of the 2n+1-term zigzag of peaks and valleys
  {
    std::vector<Piece> peaks, valleys;
    for (int i = 0; i <= phi.n; ++i) peaks.push_back(make_piece(phi, m, i, i, phi.n, dim));
    for (int i = 0; i < phi.n; ++i) valleys.push_back(make_piece(phi, m, i, i + 1, phi.n, dim));
    SSetDiagram d;
    // objects: 0..n peaks, then n..2n-1 valleys; valley i maps to peaks i, i+1
    std::vector<std::pair<int, int>> le;
    for (int i = 0; i < phi.n; ++i) {
      le.push_back({phi.n + 1 + i, i});
      le.push_back({phi.n + 1 + i, i + 1});
    }
    d.index = poset_cat(2 * phi.n + 1, le);
    d.value.resize(2 * phi.n + 1);
    std::vector<MarkedSSet> marked_values(2 * phi.n + 1);
    for (int i = 0; i <= phi.n; ++i) {
      d.value[i] = peaks[i].space.space;
      marked_values[i] = peaks[i].space;
    }
    for (int i = 0; i < phi.n; ++i) {
      d.value[phi.n + 1 + i] = valleys[i].space.space;
      marked_values[phi.n + 1 + i] = valleys[i].space;
    }
    d.action.resize(d.index->nmor());
    for (int mm = 0; mm < d.index->nmor(); ++mm) {
      int s = d.index->mors[mm].src, t = d.index->mors[mm].tgt;
      if (s == t)
        d.action[mm] = identity_sset_map(d.value[s]);
      else {
        int vi = s - (phi.n + 1);
        if (t == vi)
          d.action[mm] = piece_map(phi, valleys[vi], peaks[vi], vi, vi);
        else
          d.action[mm] = piece_map(phi, valleys[vi], peaks[vi + 1], vi, vi + 1);
      }
    }
    auto col = finite_colimit(d);
    std::vector<SSetMap> legs;
    for (int i = 0; i <= phi.n; ++i) legs.push_back(peaks[i].leg);
    for (int i = 0; i < phi.n; ++i) legs.push_back(valleys[i].leg);
    json w = colimit_equals(col, colimit_marking(col, marked_values), m.m, legs, marked_values);
    out.zigzag_identity = w.is_null();
    if (!w.is_null() && out.witness.is_null())
      out.witness = {{"identity", "zigzag"}, {"detail", w}};
  }

  // (3) M is the coend: the colimit over Tw([n])^op of phi(x) x N([n]_{y/})
  {
    auto tw = twisted_arrow(poset_chain(phi.n));
    std::vector<Piece> pieces;
    for (int i = 0; i < tw.cat->nobj(); ++i) {
      int g = tw.obj_arrow[i];
      int xv = tw.base->mors[g].src, yv = tw.base->mors[g].tgt;
      pieces.push_back(make_piece(phi, m, xv, yv, phi.n, dim));
    }
    SSetDiagram d;
    d.index = op_cat(tw.cat);
    std::vector<MarkedSSet> marked_values;
    for (int i = 0; i < tw.cat->nobj(); ++i) {
      d.value.push_back(pieces[i].space.space);
      marked_values.push_back(pieces[i].space);
    }
    d.action.resize(d.index->nmor());
    for (int mm = 0; mm < d.index->nmor(); ++mm) {
      // Tw morphism f -> g; over the opposite index the map goes H(g) -> H(f)
      int fobj = tw.cat->mors[mm].src, gobj = tw.cat->mors[mm].tgt;
      int fx = tw.base->mors[tw.obj_arrow[fobj]].src;
      int gx = tw.base->mors[tw.obj_arrow[gobj]].src;
      d.action[mm] = piece_map(phi, pieces[gobj], pieces[fobj], gx, fx);
    }
    auto col = finite_colimit(d);
    std::vector<SSetMap> legs;
    for (int i = 0; i < tw.cat->nobj(); ++i) legs.push_back(pieces[i].leg);
    json w = colimit_equals(col, colimit_marking(col, marked_values), m.m, legs, marked_values);
    out.coend_identity = w.is_null();
    if (!w.is_null() && out.witness.is_null())
      out.witness = {{"identity", "coend"}, {"detail", w}};
  }

  out.pass = out.pushout_identity && out.zigzag_identity && out.coend_identity;
  return out;
}

}  // namespace catwork

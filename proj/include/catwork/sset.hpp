#ifndef CATWORK_SSET_HPP
#define CATWORK_SSET_HPP

#include <map>
#include <set>

#include "catwork/fincat.hpp"

namespace catwork {

// A dimension-bounded simplicial set with full face/degeneracy tables.
// Levels 0..dim are stored; all simplicial identities are checked on
// construction and re-checkable on demand.
class SSet {
 public:
  int dim = 0;
  std::vector<std::vector<std::string>> cells;          // names per level
  std::vector<std::vector<std::vector<int>>> face;      // face[k][i][c], 1 <= k, 0 <= i <= k
  std::vector<std::vector<std::vector<int>>> degen;     // degen[k][j][c], 0 <= k < dim, j <= k

  int count(int k) const { return k <= dim ? static_cast<int>(cells[k].size()) : 0; }
  int d(int k, int i, int c) const { return face[k][i][c]; }
  int s(int k, int j, int c) const { return degen[k][j][c]; }
  bool is_degenerate(int k, int c) const;
  // Eilenberg-Zilber core: the unique nondegenerate cell this one degenerates
  std::pair<int, int> ez_core(int k, int c) const;  // (level, cell)
  int nondegenerate_count(int k) const;
  long long total_cells() const;

  void validate() const;  // throws on a broken simplicial identity

  json to_json() const;
  static SSet from_json(const json& j);
};

// a monotone map [m] -> [k]
using SimplicialOperator = std::vector<int>;
bool is_monotone(const SimplicialOperator& a);
// contravariant action: takes a level-k cell to a level-(a.size()-1) cell
int apply_operator(const SSet& x, const SimplicialOperator& a, int k, int c);

struct MarkedSSet {
  SSet space;
  std::set<int> marked;  // 1-cells; degenerate edges are always marked
  void normalize();      // add degenerate edges to the marking
  void validate() const;
};

struct SSetMap {
  std::vector<std::vector<int>> level;  // per dom level, cell map
  // naturality with faces and degeneracies checked against the two complexes
  static SSetMap make(const SSet& dom, const SSet& cod, std::vector<std::vector<int>> level);
  bool operator==(const SSetMap& o) const { return level == o.level; }
};

// generators
SSet simplex(int n, int dim);
SSet boundary(int n, int dim);
SSet horn(int n, int i, int dim);
SSet spine(int n, int dim);

SSet product(const SSet& x, const SSet& y);
MarkedSSet marked_product(const MarkedSSet& x, const MarkedSSet& y);
MarkedSSet sharp(const SSet& x);    // every edge marked
MarkedSSet natural(const SSet& x);  // only degenerate edges marked

// colimit of a finite diagram of simplicial sets, computed levelwise
struct SSetColimit {
  SSet space;
  std::vector<SSetMap> injections;            // one per diagram value
  std::vector<std::vector<std::vector<int>>> cell_class;  // value v, level k, cell -> colimit cell
};
struct SSetDiagram {
  CatPtr index;
  std::vector<SSet> value;
  std::vector<SSetMap> action;
  void validate() const;
};
SSetColimit finite_colimit(const SSetDiagram& d);
SSetColimit pushout(const SSet& a, const SSet& left, const SSetMap& to_left, const SSet& right,
                    const SSetMap& to_right);

SSet coskeleton(const SSet& x, int k, int dim);
SSet skeleton(const SSet& x, int k);
bool is_k_coskeletal(const SSet& x, int k);

SSet edgewise_subdivision(const SSet& x);

SSet nerve(const CatPtr& c, int dim);
struct RealizeResult {
  CatPtr cat;
  // morphism index of every nondegenerate-edge path class is internal; the
  // vertex map is the identity on level-0 indices
};
RealizeResult realize(const SSet& x);

std::optional<std::vector<std::vector<int>>> sset_isomorphic(const SSet& a, const SSet& b);

// ---- the over-a-simplex constructions ----

// A functor [n] -> marked simplicial sets, stored with all composite maps.
struct SimplexDiagram {
  int n = 0;
  std::vector<MarkedSSet> value;
  // map(i, j) for i <= j, strictly functorial
  std::map<std::pair<int, int>, SSetMap> maps;
  static SimplexDiagram from_steps(std::vector<MarkedSSet> value, std::vector<SSetMap> steps);
  const SSetMap& map(int i, int j) const { return maps.at({i, j}); }
};

struct MappingSimplex {
  MarkedSSet m;
  // cell decode: per level, (sigma as operator into [n], cell of value[sigma(0)])
  std::vector<std::vector<std::pair<SimplicialOperator, int>>> decode;
  int encode(int k, const SimplicialOperator& sigma, int tau) const;
};
MappingSimplex mapping_simplex(const SimplexDiagram& phi, int dim);

struct RelativeNerve {
  MarkedSSet m;
  // cell decode: sigma plus the family tau_J indexed by nonempty subsets of [k]
  struct Cell {
    SimplicialOperator sigma;
    std::map<std::vector<int>, int> tau;
  };
  std::vector<std::vector<Cell>> decode;
  int encode(int k, const Cell& c) const;
};
RelativeNerve relative_nerve(const SimplexDiagram& phi, int dim);

// the comparison map, levelwise
SSetMap nu(const SimplexDiagram& phi, const MappingSimplex& m, const RelativeNerve& n);

struct FiberCompare {
  bool pass = true;
  json witness;
};
// over vertex i both fibers identify with phi(i) and nu restricts to the identity
FiberCompare fiber_compare(const SimplexDiagram& phi, const MappingSimplex& m,
                           const RelativeNerve& n, int i);

struct DecompositionReport {
  bool pushout_identity = false;
  bool zigzag_identity = false;
  bool coend_identity = false;
  bool pass = false;
  json witness;
};
DecompositionReport mapping_simplex_decompositions(const SimplexDiagram& phi, int dim);

}  // namespace catwork

#endif

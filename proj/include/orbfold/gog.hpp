#ifndef ORBFOLD_GOG_HPP
#define ORBFOLD_GOG_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orbfold/graph.hpp"

// Graphs of groups with FPC vertex groups and cyclic edge groups, A-paths,
// the equivalence relation, and pi_1 as transversal-normalized reduced loops.

namespace orbfold {

struct GraphOfGroups {
  Graph graph;
  std::map<VertexId, FpcGroup> vertex_groups;
  // cyclic edge group order per directed edge: 1 trivial, 0 infinite, m >= 2
  std::map<EdgeId, long> edge_orders;
  // image of the edge generator under alpha_e, a word in the group of alpha(e)
  std::map<EdgeId, FpcWord> boundary;

  const FpcGroup& vertex_group(const VertexId& v) const;
  long edge_order(const EdgeId& e) const;
  const FpcWord& boundary_word(const EdgeId& e) const;
  bool trivial_edge_groups() const;

  // checks the monomorphism condition and the pairing invariants
  void validate() const;

  bool operator==(const GraphOfGroups&) const = default;
};

struct APath {
  struct Step {
    EdgeId edge;
    FpcWord a;
    bool operator==(const Step&) const = default;
  };
  VertexId start;
  FpcWord a0;
  std::vector<Step> steps;

  std::size_t length() const { return steps.size(); }
  bool operator==(const APath&) const = default;
};

APath trivial_path(const VertexId& v, const FpcWord& a = FpcWord::identity());
VertexId path_end(const GraphOfGroups& gog, const APath& p);
bool is_closed(const GraphOfGroups& gog, const APath& p);
void validate_path(const GraphOfGroups& gog, const APath& p);

APath path_concat(const GraphOfGroups& gog, const APath& p, const APath& q);
APath path_inverse(const GraphOfGroups& gog, const APath& p);
// rotate a closed path so it starts just before edge index `k` (0-based);
// the junction element is carried whole to the front
APath path_rotate(const GraphOfGroups& gog, const APath& p, std::size_t k);
// multiply the terminal element on the right
APath path_append_element(const GraphOfGroups& gog, const APath& p, const FpcWord& a);

enum class ReduceStrategy { LeftFirst, RightFirst };
bool is_reduced(const GraphOfGroups& gog, const APath& p);
APath reduce(const GraphOfGroups& gog, const APath& p,
             ReduceStrategy strategy = ReduceStrategy::LeftFirst);
// reduced + left-to-right coset transversal normalization; equivalence of
// paths coincides with equality of normal forms
APath normalize(const GraphOfGroups& gog, const APath& p);

struct Pi1Element {
  VertexId base;
  APath path;  // normalized closed path
  bool operator==(const Pi1Element&) const = default;
};

Pi1Element pi1_identity(const GraphOfGroups& gog, const VertexId& base);
Pi1Element pi1_from_path(const GraphOfGroups& gog, const APath& p);
Pi1Element pi1_mul(const GraphOfGroups& gog, const Pi1Element& x, const Pi1Element& y);
Pi1Element pi1_inv(const GraphOfGroups& gog, const Pi1Element& x);
Pi1Element pi1_pow(const GraphOfGroups& gog, const Pi1Element& x, long n);
bool pi1_eq(const GraphOfGroups& gog, const Pi1Element& x, const Pi1Element& y);
bool pi1_is_identity(const Pi1Element& x);

// carried sub-graph of groups; `removed` must be closed under inversion
GraphOfGroups subgraph_of_groups(const GraphOfGroups& gog, const std::set<EdgeId>& removed);
// component of `base` as a graph of groups
GraphOfGroups component_gog(const GraphOfGroups& gog, const VertexId& base);

// ---- free splitting of pi_1 for trivial edge groups -----------------------

struct BasisElem {
  enum class Kind { VertexFactor, EdgeLoop };
  Kind kind = Kind::VertexFactor;
  VertexId vertex;   // for VertexFactor
  int factor = 0;    // for VertexFactor
  EdgeId edge;       // for EdgeLoop (positive representative, not in the tree)
  APath loop;        // explicit representative loop at the base
};

struct FreeSplitting {
  VertexId base;
  FpcGroup group;                      // abstract free product of cyclics
  std::vector<BasisElem> basis;        // one entry per factor of `group`
  std::map<VertexId, APath> tree_path; // base -> v along the spanning tree
};

// requires connected underlying graph and trivial edge groups
FreeSplitting free_splitting(const GraphOfGroups& gog, const VertexId& base);

// expression of a closed path's class in the splitting basis
FpcWord express(const GraphOfGroups& gog, const FreeSplitting& fs, const APath& loop);
// inverse direction: build a loop realizing a basis word
APath realize(const GraphOfGroups& gog, const FreeSplitting& fs, const FpcWord& w);

struct RankTorsion {
  std::size_t rank = 0;
  std::size_t torsion = 0;
  bool operator==(const RankTorsion&) const = default;
};
RankTorsion rank_tn(const GraphOfGroups& gog, const VertexId& base);

// loops used by the move-lemma checks: basis loops, a tree-conjugated loop
// through every edge pair, and all length-2 loops at the base
std::vector<APath> lemma_check_loops(const GraphOfGroups& gog, const VertexId& base);

}  // namespace orbfold

#endif

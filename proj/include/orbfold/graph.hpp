#ifndef ORBFOLD_GRAPH_HPP
#define ORBFOLD_GRAPH_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "orbfold/fpc.hpp"

// Finite graphs with a fixed point free edge involution and no loops.
// Vertex and edge ids are opaque strings; each edge pair is stored once and
// exposed through its two directed ids.

namespace orbfold {

using VertexId = std::string;
using EdgeId = std::string;

struct EdgePair {
  EdgeId id;       // positively oriented representative
  EdgeId inv;      // the reverse edge
  VertexId from;   // alpha(id)
  VertexId to;     // omega(id)
  bool operator==(const EdgePair&) const = default;
};

class Graph {
 public:
  Graph() = default;
  Graph(std::vector<VertexId> vertices, std::vector<EdgePair> pairs);

  const std::set<VertexId>& vertices() const { return vertices_; }
  const std::vector<EdgePair>& pairs() const { return pairs_; }
  // all directed edge ids, sorted
  std::vector<EdgeId> edges() const;

  bool has_vertex(const VertexId& v) const { return vertices_.count(v) > 0; }
  bool has_edge(const EdgeId& e) const { return dir_.count(e) > 0; }

  const EdgeId& inv(const EdgeId& e) const;
  const VertexId& alpha(const EdgeId& e) const;
  const VertexId& omega(const EdgeId& e) const;
  // true when `e` is the stored representative of its pair
  bool is_positive(const EdgeId& e) const;
  // representative id of the pair containing e
  const EdgeId& pair_of(const EdgeId& e) const;

  std::vector<EdgeId> star(const VertexId& v) const;

  bool is_connected() const;
  std::size_t component_count() const;
  // betti = |edge pairs| - |vertices| + |components|
  std::size_t first_betti() const;

  // component containing v, as vertex set
  std::set<VertexId> component_of(const VertexId& v) const;

  // spanning tree of the component of `base`: for every reachable vertex the
  // incoming tree edge (absent for base). Deterministic (BFS in id order).
  std::map<VertexId, EdgeId> spanning_tree(const VertexId& base) const;

  bool operator==(const Graph&) const = default;

 private:
  struct Directed {
    VertexId from, to;
    EdgeId inv;
    EdgeId pair;
    bool operator==(const Directed&) const = default;
  };
  std::set<VertexId> vertices_;
  std::vector<EdgePair> pairs_;
  std::map<EdgeId, Directed> dir_;
};

}  // namespace orbfold

#endif

#ifndef ORBFOLD_TEST_HELPERS_HPP
#define ORBFOLD_TEST_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "orbfold/gog.hpp"

namespace testutil {

using namespace orbfold;

inline Graph make_graph(std::vector<VertexId> vs,
                        std::vector<std::tuple<EdgeId, VertexId, VertexId>> pairs) {
  std::vector<EdgePair> ps;
  for (auto& [id, from, to] : pairs) ps.push_back({id, id + "'", from, to});
  return Graph(std::move(vs), std::move(ps));
}

// graph of groups with trivial edge groups
inline GraphOfGroups make_trivial_gog(Graph g, std::map<VertexId, FpcGroup> groups) {
  GraphOfGroups out;
  out.graph = std::move(g);
  for (const VertexId& v : out.graph.vertices()) {
    auto it = groups.find(v);
    out.vertex_groups[v] = it == groups.end() ? FpcGroup() : it->second;
  }
  for (const EdgeId& e : out.graph.edges()) {
    out.edge_orders[e] = 1;
    out.boundary[e] = FpcWord::identity();
  }
  out.validate();
  return out;
}

inline FpcGroup random_fpc_group(std::mt19937_64& rng, int max_factors = 2) {
  std::uniform_int_distribution<int> nf(0, max_factors);
  std::vector<long> orders;
  const long choices[] = {0, 2, 3, 4};
  std::uniform_int_distribution<int> oi(0, 3);
  int n = nf(rng);
  for (int i = 0; i < n; ++i) orders.push_back(choices[oi(rng)]);
  return FpcGroup(orders);
}

inline FpcWord random_element(std::mt19937_64& rng, const FpcGroup& g, int max_len = 3) {
  if (g.is_trivial()) return FpcWord::identity();
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> fac(0, static_cast<int>(g.factor_count()) - 1);
  FpcWord w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    int f = fac(rng);
    long p = g.factor_order(f);
    long e;
    if (p == 0) {
      std::uniform_int_distribution<long> ed(-2, 2);
      e = ed(rng);
      if (e == 0) e = 1;
    } else {
      std::uniform_int_distribution<long> ed(1, p - 1);
      e = ed(rng);
    }
    w.letters.push_back({f, e});
  }
  return canonical(g, w);
}

// connected graph: spanning tree over n vertices plus a few extra pairs
inline Graph random_connected_graph(std::mt19937_64& rng, int max_vertices = 5,
                                    int max_extra = 2) {
  std::uniform_int_distribution<int> nv(2, max_vertices);
  int n = nv(rng);
  std::vector<VertexId> vs;
  for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  std::vector<std::tuple<EdgeId, VertexId, VertexId>> pairs;
  int eid = 0;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    pairs.push_back({"e" + std::to_string(eid++), vs[static_cast<std::size_t>(parent(rng))],
                     vs[static_cast<std::size_t>(i)]});
  }
  std::uniform_int_distribution<int> ne(0, max_extra);
  int extra = ne(rng);
  for (int k = 0; k < extra; ++k) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;  // no loops
    pairs.push_back({"e" + std::to_string(eid++), vs[static_cast<std::size_t>(a)],
                     vs[static_cast<std::size_t>(b)]});
  }
  return make_graph(vs, pairs);
}

inline GraphOfGroups random_trivial_gog(std::mt19937_64& rng, int max_vertices = 5) {
  Graph g = random_connected_graph(rng, max_vertices);
  std::map<VertexId, FpcGroup> groups;
  for (const VertexId& v : g.vertices()) groups[v] = random_fpc_group(rng);
  return make_trivial_gog(std::move(g), std::move(groups));
}

// random walk of the requested length, with random vertex elements
inline APath random_path(std::mt19937_64& rng, const GraphOfGroups& gog, const VertexId& start,
                         int length) {
  APath p = trivial_path(start, random_element(rng, gog.vertex_group(start)));
  VertexId cur = start;
  for (int i = 0; i < length; ++i) {
    auto st = gog.graph.star(cur);
    if (st.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, st.size() - 1);
    const EdgeId& e = st[pick(rng)];
    cur = gog.graph.omega(e);
    p.steps.push_back({e, random_element(rng, gog.vertex_group(cur))});
  }
  return p;
}

// closed random walk (returns to start via retrace when needed)
inline APath random_loop(std::mt19937_64& rng, const GraphOfGroups& gog, const VertexId& base,
                         int out_length) {
  APath out = random_path(rng, gog, base, out_length);
  APath back = path_inverse(gog, out);
  // splice fresh random elements into the return leg so the loop is not
  // trivially reducible
  for (auto& s : back.steps) s.a = random_element(rng, gog.vertex_group(gog.graph.omega(s.edge)));
  if (!back.steps.empty())
    back.steps.back().a = random_element(rng, gog.vertex_group(base));
  return path_concat(gog, out, back);
}

}  // namespace testutil

#endif

#include "orbfold/gog.hpp"

#include <algorithm>

namespace orbfold {

const FpcGroup& GraphOfGroups::vertex_group(const VertexId& v) const {
  auto it = vertex_groups.find(v);
  if (it == vertex_groups.end()) throw error("no vertex group for " + v);
  return it->second;
}

long GraphOfGroups::edge_order(const EdgeId& e) const {
  auto it = edge_orders.find(e);
  if (it == edge_orders.end()) throw error("no edge group for " + e);
  return it->second;
}

const FpcWord& GraphOfGroups::boundary_word(const EdgeId& e) const {
  auto it = boundary.find(e);
  if (it == boundary.end()) throw error("no boundary monomorphism for " + e);
  return it->second;
}

bool GraphOfGroups::trivial_edge_groups() const {
  for (const auto& [e, m] : edge_orders)
    if (m != 1) return false;
  return true;
}

void GraphOfGroups::validate() const {
  for (const VertexId& v : graph.vertices())
    if (!vertex_groups.count(v)) throw error("missing vertex group for " + v);
  for (const EdgeId& e : graph.edges()) {
    long m = edge_order(e);
    if (m < 0 || m == 1) {
      if (m != 1) throw error("edge order must be 0, 1 or >= 2 on " + e);
    }
    if (m != edge_order(graph.inv(e))) throw error("edge orders differ across " + e);
    const FpcWord& w = boundary_word(e);
    const FpcGroup& gv = vertex_group(graph.alpha(e));
    if (!valid_word(gv, w)) throw error("boundary word invalid on " + e);
    if (m == 1) {
      if (!w.is_identity()) throw error("trivial edge group needs identity boundary on " + e);
    } else {
      long ord = order_of(gv, w);
      if (ord != m)
        throw error("boundary word on " + e + " has order " + std::to_string(ord) +
                    ", edge group has order " + std::to_string(m));
    }
  }
}

APath trivial_path(const VertexId& v, const FpcWord& a) {
  APath p;
  p.start = v;
  p.a0 = a;
  return p;
}

VertexId path_end(const GraphOfGroups& gog, const APath& p) {
  return p.steps.empty() ? p.start : gog.graph.omega(p.steps.back().edge);
}

bool is_closed(const GraphOfGroups& gog, const APath& p) { return path_end(gog, p) == p.start; }

void validate_path(const GraphOfGroups& gog, const APath& p) {
  if (!gog.graph.has_vertex(p.start)) throw error("path starts at unknown vertex " + p.start);
  if (!valid_word(gog.vertex_group(p.start), p.a0)) throw error("path element a0 invalid");
  VertexId cur = p.start;
  for (const APath::Step& s : p.steps) {
    if (!gog.graph.has_edge(s.edge)) throw error("path uses unknown edge " + s.edge);
    if (gog.graph.alpha(s.edge) != cur) throw error("path not incident at edge " + s.edge);
    cur = gog.graph.omega(s.edge);
    if (!valid_word(gog.vertex_group(cur), s.a)) throw error("path element invalid after " + s.edge);
  }
}

APath path_concat(const GraphOfGroups& gog, const APath& p, const APath& q) {
  if (path_end(gog, p) != q.start) throw error("path_concat: endpoints do not match");
  APath out = p;
  const FpcGroup& gj = gog.vertex_group(q.start);
  FpcWord joined = mul(gj, p.steps.empty() ? p.a0 : p.steps.back().a, q.a0);
  if (out.steps.empty())
    out.a0 = joined;
  else
    out.steps.back().a = joined;
  out.steps.insert(out.steps.end(), q.steps.begin(), q.steps.end());
  return out;
}

APath path_inverse(const GraphOfGroups& gog, const APath& p) {
  APath out;
  out.start = path_end(gog, p);
  out.a0 = inv(gog.vertex_group(out.start), p.steps.empty() ? p.a0 : p.steps.back().a);
  for (std::size_t i = p.steps.size(); i-- > 0;) {
    const FpcWord& prev = i == 0 ? p.a0 : p.steps[i - 1].a;
    VertexId v = gog.graph.alpha(p.steps[i].edge);
    out.steps.push_back({gog.graph.inv(p.steps[i].edge), inv(gog.vertex_group(v), prev)});
  }
  return out;
}

APath path_rotate(const GraphOfGroups& gog, const APath& p, std::size_t k) {
  if (!is_closed(gog, p)) throw error("path_rotate: path must be closed");
  if (p.steps.empty() || k == 0) {
    if (k == 0) return p;
    throw error("path_rotate: rotation out of range");
  }
  if (k >= p.steps.size()) throw error("path_rotate: rotation out of range");
  // junction element at the base carried whole: b_k, f_{k+1}, ..., b_L*b_0, ..., f_k, 1
  APath out;
  out.start = gog.graph.alpha(p.steps[k].edge);
  out.a0 = p.steps[k - 1].a;
  for (std::size_t i = k; i < p.steps.size(); ++i) out.steps.push_back(p.steps[i]);
  FpcWord junction = mul(gog.vertex_group(p.start), p.steps.back().a, p.a0);
  out.steps.back().a = junction;
  for (std::size_t i = 0; i < k; ++i) out.steps.push_back(p.steps[i]);
  out.steps.back().a = FpcWord::identity();
  return out;
}

APath path_append_element(const GraphOfGroups& gog, const APath& p, const FpcWord& a) {
  APath out = p;
  const FpcGroup& g = gog.vertex_group(path_end(gog, p));
  if (out.steps.empty())
    out.a0 = mul(g, out.a0, a);
  else
    out.steps.back().a = mul(g, out.steps.back().a, a);
  return out;
}

namespace {

// membership of x in omega_e(A_e) = <boundary(inv e)>, returning the exponent
std::optional<long> omega_power(const GraphOfGroups& gog, const EdgeId& e, const FpcWord& x) {
  long m = gog.edge_order(e);
  if (m == 1) {
    if (x.is_identity()) return 0;
    return std::nullopt;
  }
  const FpcGroup& g = gog.vertex_group(gog.graph.omega(e));
  return is_power_of(g, x, gog.boundary_word(gog.graph.inv(e)));
}

// one backtracking reduction at junction i (between steps i and i+1), if any
bool reduce_at(const GraphOfGroups& gog, APath& p, std::size_t i) {
  const EdgeId& e = p.steps[i].edge;
  if (p.steps[i + 1].edge != gog.graph.inv(e)) return false;
  auto c = omega_power(gog, e, p.steps[i].a);
  if (!c) return false;
  const VertexId v = gog.graph.alpha(e);
  const FpcGroup& gv = gog.vertex_group(v);
  FpcWord alpha_c = pow(gv, gog.boundary_word(e), *c);
  FpcWord merged = mul(gv, i == 0 ? p.a0 : p.steps[i - 1].a, mul(gv, alpha_c, p.steps[i + 1].a));
  if (i == 0)
    p.a0 = merged;
  else
    p.steps[i - 1].a = merged;
  p.steps.erase(p.steps.begin() + static_cast<std::ptrdiff_t>(i),
                p.steps.begin() + static_cast<std::ptrdiff_t>(i) + 2);
  return true;
}

}  // namespace

bool is_reduced(const GraphOfGroups& gog, const APath& p) {
  for (std::size_t i = 0; i + 1 < p.steps.size(); ++i) {
    const EdgeId& e = p.steps[i].edge;
    if (p.steps[i + 1].edge == gog.graph.inv(e) && omega_power(gog, e, p.steps[i].a))
      return false;
  }
  return true;
}

APath reduce(const GraphOfGroups& gog, const APath& p, ReduceStrategy strategy) {
  APath out = p;
  bool changed = true;
  while (changed && out.steps.size() >= 2) {
    changed = false;
    if (strategy == ReduceStrategy::LeftFirst) {
      for (std::size_t i = 0; i + 1 < out.steps.size(); ++i)
        if (reduce_at(gog, out, i)) {
          changed = true;
          break;
        }
    } else {
      for (std::size_t i = out.steps.size() - 1; i-- > 0;)
        if (reduce_at(gog, out, i)) {
          changed = true;
          break;
        }
    }
  }
  return out;
}

APath normalize(const GraphOfGroups& gog, const APath& p) {
  APath out = reduce(gog, p);
  for (std::size_t j = 0; j < out.steps.size(); ++j) {
    const EdgeId& e = out.steps[j].edge;
    if (gog.edge_order(e) == 1) continue;
    const VertexId va = gog.graph.alpha(e);
    const FpcGroup& ga = gog.vertex_group(va);
    const FpcWord& t = gog.boundary_word(e);
    FpcWord& elem = j == 0 ? out.a0 : out.steps[j - 1].a;
    CosetRep cr = coset_min_rep(ga, elem, t);
    if (cr.exponent != 0) {
      elem = cr.rep;
      const VertexId vw = gog.graph.omega(e);
      const FpcGroup& gw = gog.vertex_group(vw);
      FpcWord corr = pow(gw, gog.boundary_word(gog.graph.inv(e)), -cr.exponent);
      out.steps[j].a = mul(gw, corr, out.steps[j].a);
    }
  }
  return out;
}

Pi1Element pi1_identity(const GraphOfGroups& gog, const VertexId& base) {
  (void)gog;
  return Pi1Element{base, trivial_path(base)};
}

Pi1Element pi1_from_path(const GraphOfGroups& gog, const APath& p) {
  validate_path(gog, p);
  if (!is_closed(gog, p)) throw error("pi1_from_path: path is not closed");
  return Pi1Element{p.start, normalize(gog, p)};
}

Pi1Element pi1_mul(const GraphOfGroups& gog, const Pi1Element& x, const Pi1Element& y) {
  if (x.base != y.base) throw error("pi1_mul: base vertices differ");
  return Pi1Element{x.base, normalize(gog, path_concat(gog, x.path, y.path))};
}

Pi1Element pi1_inv(const GraphOfGroups& gog, const Pi1Element& x) {
  return Pi1Element{x.base, normalize(gog, path_inverse(gog, x.path))};
}

Pi1Element pi1_pow(const GraphOfGroups& gog, const Pi1Element& x, long n) {
  Pi1Element acc = pi1_identity(gog, x.base);
  Pi1Element b = n < 0 ? pi1_inv(gog, x) : x;
  long k = n < 0 ? -n : n;
  for (long i = 0; i < k; ++i) acc = pi1_mul(gog, acc, b);
  return acc;
}

bool pi1_eq(const GraphOfGroups& gog, const Pi1Element& x, const Pi1Element& y) {
  (void)gog;
  return x.base == y.base && x.path == y.path;
}

bool pi1_is_identity(const Pi1Element& x) {
  return x.path.steps.empty() && x.path.a0.is_identity();
}

GraphOfGroups subgraph_of_groups(const GraphOfGroups& gog, const std::set<EdgeId>& removed) {
  for (const EdgeId& e : removed)
    if (!removed.count(gog.graph.inv(e))) throw error("removed edge set not closed under inversion");
  GraphOfGroups out;
  std::vector<VertexId> vs(gog.graph.vertices().begin(), gog.graph.vertices().end());
  std::vector<EdgePair> pairs;
  for (const EdgePair& p : gog.graph.pairs())
    if (!removed.count(p.id)) pairs.push_back(p);
  out.graph = Graph(vs, pairs);
  out.vertex_groups = gog.vertex_groups;
  for (const EdgeId& e : out.graph.edges()) {
    out.edge_orders[e] = gog.edge_order(e);
    out.boundary[e] = gog.boundary_word(e);
  }
  return out;
}

GraphOfGroups component_gog(const GraphOfGroups& gog, const VertexId& base) {
  auto comp = gog.graph.component_of(base);
  GraphOfGroups out;
  std::vector<VertexId> vs(comp.begin(), comp.end());
  std::vector<EdgePair> pairs;
  for (const EdgePair& p : gog.graph.pairs())
    if (comp.count(p.from)) pairs.push_back(p);
  out.graph = Graph(vs, pairs);
  for (const VertexId& v : comp) out.vertex_groups[v] = gog.vertex_group(v);
  for (const EdgeId& e : out.graph.edges()) {
    out.edge_orders[e] = gog.edge_order(e);
    out.boundary[e] = gog.boundary_word(e);
  }
  return out;
}

FreeSplitting free_splitting(const GraphOfGroups& gog, const VertexId& base) {
  if (!gog.trivial_edge_groups())
    throw error("free_splitting requires trivial edge groups");
  if (!gog.graph.is_connected()) throw error("free_splitting requires a connected graph");
  FreeSplitting fs;
  fs.base = base;
  auto tree = gog.graph.spanning_tree(base);
  // explicit tree paths
  fs.tree_path[base] = trivial_path(base);
  std::vector<VertexId> order = {base};
  while (order.size() < gog.graph.vertices().size()) {
    for (const auto& [v, e] : tree) {
      if (fs.tree_path.count(v)) continue;
      VertexId from = gog.graph.alpha(e);
      if (!fs.tree_path.count(from)) continue;
      APath p = fs.tree_path[from];
      p.steps.push_back({e, FpcWord::identity()});
      fs.tree_path[v] = p;
      order.push_back(v);
    }
  }
  std::vector<long> orders;
  for (const VertexId& v : gog.graph.vertices()) {
    const FpcGroup& gv = gog.vertex_group(v);
    for (std::size_t i = 0; i < gv.factor_count(); ++i) {
      BasisElem be;
      be.kind = BasisElem::Kind::VertexFactor;
      be.vertex = v;
      be.factor = static_cast<int>(i);
      APath mid = trivial_path(v, FpcWord::generator(static_cast<int>(i)));
      be.loop = path_concat(gog, path_concat(gog, fs.tree_path[v], mid),
                            path_inverse(gog, fs.tree_path[v]));
      fs.basis.push_back(be);
      orders.push_back(gv.factor_orders[i]);
    }
  }
  std::set<EdgeId> tree_pairs;
  for (const auto& [v, e] : tree) {
    tree_pairs.insert(e);
    tree_pairs.insert(gog.graph.inv(e));
  }
  for (const EdgePair& p : gog.graph.pairs()) {
    if (tree_pairs.count(p.id)) continue;
    BasisElem be;
    be.kind = BasisElem::Kind::EdgeLoop;
    be.edge = p.id;
    APath mid = trivial_path(p.from);
    mid.steps.push_back({p.id, FpcWord::identity()});
    be.loop = path_concat(gog, path_concat(gog, fs.tree_path[p.from], mid),
                          path_inverse(gog, fs.tree_path[p.to]));
    fs.basis.push_back(be);
    orders.push_back(0);
  }
  fs.group = FpcGroup(orders);
  return fs;
}

FpcWord express(const GraphOfGroups& gog, const FreeSplitting& fs, const APath& loop) {
  if (loop.start != fs.base) throw error("express: loop must be based at the splitting base");
  if (!is_closed(gog, loop)) throw error("express: path is not closed");
  std::map<std::pair<VertexId, int>, int> vertex_index;
  std::map<EdgeId, int> edge_index;
  for (std::size_t i = 0; i < fs.basis.size(); ++i) {
    const BasisElem& be = fs.basis[i];
    if (be.kind == BasisElem::Kind::VertexFactor)
      vertex_index[{be.vertex, be.factor}] = static_cast<int>(i);
    else
      edge_index[be.edge] = static_cast<int>(i);
  }
  std::set<EdgeId> nontree;
  for (const auto& [e, i] : edge_index) {
    nontree.insert(e);
    nontree.insert(gog.graph.inv(e));
  }
  FpcWord out = FpcWord::identity();
  auto emit_element = [&](const VertexId& v, const FpcWord& a) {
    for (const FpcLetter& l : a.letters) {
      auto it = vertex_index.find({v, l.factor});
      if (it == vertex_index.end()) throw error("express: missing basis factor");
      out = mul(fs.group, out, FpcWord::generator(it->second, l.exp));
    }
  };
  emit_element(loop.start, loop.a0);
  VertexId cur = loop.start;
  for (const APath::Step& s : loop.steps) {
    if (nontree.count(s.edge)) {
      auto it = edge_index.find(s.edge);
      if (it != edge_index.end())
        out = mul(fs.group, out, FpcWord::generator(it->second, 1));
      else
        out = mul(fs.group, out, FpcWord::generator(edge_index.at(gog.graph.inv(s.edge)), -1));
    }
    cur = gog.graph.omega(s.edge);
    emit_element(cur, s.a);
  }
  return out;
}

APath realize(const GraphOfGroups& gog, const FreeSplitting& fs, const FpcWord& w) {
  APath out = trivial_path(fs.base);
  for (const FpcLetter& l : w.letters) {
    const BasisElem& be = fs.basis.at(static_cast<std::size_t>(l.factor));
    APath piece = be.loop;
    if (be.kind == BasisElem::Kind::VertexFactor) {
      piece = path_concat(gog, path_concat(gog, fs.tree_path.at(be.vertex),
                                           trivial_path(be.vertex,
                                                        FpcWord::generator(be.factor, l.exp))),
                          path_inverse(gog, fs.tree_path.at(be.vertex)));
      out = path_concat(gog, out, piece);
    } else {
      long k = l.exp < 0 ? -l.exp : l.exp;
      APath step = l.exp < 0 ? path_inverse(gog, piece) : piece;
      for (long i = 0; i < k; ++i) out = path_concat(gog, out, step);
    }
  }
  return out;
}

RankTorsion rank_tn(const GraphOfGroups& gog, const VertexId& base) {
  FreeSplitting fs = free_splitting(gog, base);
  RankTorsion rt;
  rt.rank = fs.group.factor_count();
  for (long p : fs.group.factor_orders)
    if (p != 0) ++rt.torsion;
  return rt;
}

std::vector<APath> lemma_check_loops(const GraphOfGroups& gog, const VertexId& base) {
  std::vector<APath> out;
  auto tree = gog.graph.spanning_tree(base);
  std::map<VertexId, APath> tp;
  tp[base] = trivial_path(base);
  while (tp.size() < gog.graph.vertices().size()) {
    for (const auto& [v, e] : tree) {
      if (tp.count(v) || !tp.count(gog.graph.alpha(e))) continue;
      APath p = tp[gog.graph.alpha(e)];
      p.steps.push_back({e, FpcWord::identity()});
      tp[v] = p;
    }
  }
  for (const VertexId& v : gog.graph.vertices()) {
    const FpcGroup& gv = gog.vertex_group(v);
    for (std::size_t i = 0; i < gv.factor_count(); ++i) {
      APath mid = trivial_path(v, FpcWord::generator(static_cast<int>(i)));
      out.push_back(path_concat(gog, path_concat(gog, tp[v], mid), path_inverse(gog, tp[v])));
    }
  }
  for (const EdgePair& p : gog.graph.pairs()) {
    APath mid = trivial_path(p.from);
    mid.steps.push_back({p.id, FpcWord::identity()});
    out.push_back(path_concat(gog, path_concat(gog, tp[p.from], mid), path_inverse(gog, tp[p.to])));
  }
  // length-2 loops at the base
  auto st = gog.graph.star(base);
  for (const EdgeId& f : st)
    for (const EdgeId& g : st)
      if (f != g && gog.graph.omega(f) == gog.graph.omega(g)) {
        APath p = trivial_path(base);
        p.steps.push_back({f, FpcWord::identity()});
        p.steps.push_back({gog.graph.inv(g), FpcWord::identity()});
        out.push_back(p);
      }
  return out;
}

}  // namespace orbfold

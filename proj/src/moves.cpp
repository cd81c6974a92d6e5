#include "orbfold/moves.hpp"

#include <algorithm>
#include <map>

namespace orbfold {

namespace {

FpcWord reindex(const FpcWord& w, int offset) {
  FpcWord out = w;
  for (FpcLetter& l : out.letters) l.factor += offset;
  return out;
}

FpcGroup concat_groups(const FpcGroup& a, const FpcGroup& b) {
  std::vector<long> orders = a.factor_orders;
  orders.insert(orders.end(), b.factor_orders.begin(), b.factor_orders.end());
  return FpcGroup(orders);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw error(what);
}

}  // namespace

GGMorphism move_a0(const GGMorphism& m, const VertexId& u, const FpcWord& g) {
  const VertexId v = m.phi_v(u);
  const FpcGroup& gv = m.target.vertex_group(v);
  require(valid_word(gv, g), "move_a0: g is not a word in the target vertex group");
  GGMorphism out = m;
  out.vertex_homs.at(u) = m.vertex_hom(u).conjugated(g);
  for (const EdgeId& f : m.source.graph.star(u)) out.o.at(f) = mul(gv, g, m.o_of(f));
  return out;
}

GGMorphism move_a1(const GGMorphism& m, const EdgeId& f, long c) {
  const EdgeId& e = m.phi_e(f);
  GGMorphism out = m;
  const VertexId va = m.target.graph.alpha(e);
  const VertexId vw = m.target.graph.omega(e);
  const FpcGroup& ga = m.target.vertex_group(va);
  const FpcGroup& gw = m.target.vertex_group(vw);
  out.o.at(f) = mul(ga, m.o_of(f), pow(ga, m.target.boundary_word(e), -c));
  const EdgeId& fi = m.source.graph.inv(f);
  out.o.at(fi) =
      mul(gw, m.o_of(fi), pow(gw, m.target.boundary_word(m.target.graph.inv(e)), -c));
  return out;
}

MoveResult move_a2(const GGMorphism& m, const EdgeId& f, const FpcWord& b) {
  const VertexId u = m.source.graph.alpha(f);
  const FpcGroup& gu = m.source.vertex_group(u);
  require(valid_word(gu, b), "move_a2: b is not a word in the source vertex group");
  GGMorphism out = m;
  out.source.boundary.at(f) = conj(gu, b, m.source.boundary_word(f));
  const VertexId v = m.phi_v(u);
  out.o.at(f) = mul(m.target.vertex_group(v), m.vertex_hom(u).apply(b), m.o_of(f));

  GGMorphism sigma = identity_morphism(m.source);
  sigma.target = out.source;
  sigma.o.at(f) = inv(gu, b);
  MoveResult res;
  res.morphism = std::move(out);
  res.sigma = std::move(sigma);
  return res;
}

namespace {

// shared graph surgery for the elementary folds: drop the f2 pair and, for
// IA, merge vertex y into x
GraphOfGroups folded_source(const GGMorphism& m, const EdgeId& f2,
                            const std::optional<VertexId>& merge_y, const VertexId& x,
                            const FpcGroup& new_x_group, int y_offset) {
  const Graph& g = m.source.graph;
  std::vector<VertexId> vs;
  for (const VertexId& v : g.vertices())
    if (!(merge_y && v == *merge_y)) vs.push_back(v);
  std::vector<EdgePair> pairs;
  const EdgeId& drop = g.pair_of(f2);
  for (const EdgePair& p : g.pairs()) {
    if (p.id == drop) continue;
    EdgePair np = p;
    if (merge_y) {
      if (np.from == *merge_y) np.from = x;
      if (np.to == *merge_y) np.to = x;
    }
    pairs.push_back(np);
  }
  GraphOfGroups out;
  out.graph = Graph(vs, pairs);
  for (const VertexId& v : vs)
    out.vertex_groups[v] = v == x ? new_x_group : m.source.vertex_group(v);
  for (const EdgeId& e : out.graph.edges()) {
    out.edge_orders[e] = m.source.edge_order(e);
    FpcWord bw = m.source.boundary_word(e);
    // boundary words that lived in B_y move into the second block of the
    // merged group
    if (merge_y && m.source.graph.alpha(e) == *merge_y) bw = reindex(bw, y_offset);
    out.boundary[e] = bw;
  }
  return out;
}

}  // namespace

MoveResult elementary_fold_ia(const GGMorphism& m, const EdgeId& f1, const EdgeId& f2) {
  const Graph& g = m.source.graph;
  require(f1 != f2 && g.pair_of(f1) != g.pair_of(f2), "fold IA: edges must be distinct");
  const VertexId u = g.alpha(f1);
  require(g.alpha(f2) == u, "fold IA: edges must share the initial vertex");
  const VertexId x = g.omega(f1), y = g.omega(f2);
  require(x != y, "fold IA: terminal vertices must be distinct (use IIIA)");
  require(m.phi_e(f1) == m.phi_e(f2), "fold IA: edges must have the same image");
  require(m.source.edge_order(f1) == 1 && m.source.edge_order(f2) == 1,
          "fold IA: edge groups must be trivial");
  require(m.o_of(f1) == m.o_of(f2), "fold IA: o elements must agree");
  require(m.t_of(f1) == m.t_of(f2), "fold IA: t elements must agree");
  for (const EdgeId& e : g.star(x))
    require(g.omega(e) != y, "fold IA: an edge joins the vertices being merged");

  const FpcGroup& gx = m.source.vertex_group(x);
  const FpcGroup& gy = m.source.vertex_group(y);
  int offset = static_cast<int>(gx.factor_count());
  FpcGroup merged = concat_groups(gx, gy);

  GGMorphism out;
  out.source = folded_source(m, f2, y, x, merged, offset);
  out.target = m.target;
  for (const VertexId& v : out.source.graph.vertices()) {
    out.vertex_map[v] = m.phi_v(v);
    if (v == x) {
      std::vector<FpcWord> images = m.vertex_hom(x).images();
      for (const FpcWord& w : m.vertex_hom(y).images()) images.push_back(w);
      out.vertex_homs.emplace(v, FpcHom(merged, m.target.vertex_group(m.phi_v(x)), images));
    } else {
      out.vertex_homs.emplace(v, m.vertex_hom(v));
    }
  }
  for (const EdgeId& e : out.source.graph.edges()) {
    out.edge_map[e] = m.phi_e(e);
    out.edge_exponents[e] = m.edge_exp(e);
    out.o[e] = m.o_of(e);
  }

  GGMorphism sigma;
  sigma.source = m.source;
  sigma.target = out.source;
  for (const VertexId& v : m.source.graph.vertices()) {
    sigma.vertex_map[v] = v == y ? x : v;
    if (v == y) {
      std::vector<FpcWord> images;
      for (std::size_t i = 0; i < gy.factor_count(); ++i)
        images.push_back(FpcWord::generator(static_cast<int>(i) + offset));
      sigma.vertex_homs.emplace(v, FpcHom(gy, merged, images));
    } else if (v == x) {
      std::vector<FpcWord> images;
      for (std::size_t i = 0; i < gx.factor_count(); ++i)
        images.push_back(FpcWord::generator(static_cast<int>(i)));
      sigma.vertex_homs.emplace(v, FpcHom(gx, merged, images));
    } else {
      sigma.vertex_homs.emplace(v, FpcHom::identity(m.source.vertex_group(v)));
    }
  }
  const EdgeId f1i = g.inv(f1), f2i = g.inv(f2);
  for (const EdgeId& e : m.source.graph.edges()) {
    EdgeId img = e;
    if (e == f2) img = f1;
    if (e == f2i) img = f1i;
    sigma.edge_map[e] = img;
    sigma.edge_exponents[e] = 1;
    sigma.o[e] = FpcWord::identity();
  }
  MoveResult res;
  res.morphism = std::move(out);
  res.sigma = std::move(sigma);
  return res;
}

MoveResult elementary_fold_iiia(const GGMorphism& m, const EdgeId& f1, const EdgeId& f2) {
  const Graph& g = m.source.graph;
  require(f1 != f2 && g.pair_of(f1) != g.pair_of(f2), "fold IIIA: edges must be distinct");
  const VertexId u = g.alpha(f1);
  require(g.alpha(f2) == u, "fold IIIA: edges must share the initial vertex");
  const VertexId x = g.omega(f1);
  require(g.omega(f2) == x, "fold IIIA: terminal vertices must agree (use IA)");
  require(m.phi_e(f1) == m.phi_e(f2), "fold IIIA: edges must have the same image");
  require(m.source.edge_order(f1) == 1 && m.source.edge_order(f2) == 1,
          "fold IIIA: edge groups must be trivial");
  require(m.o_of(f1) == m.o_of(f2), "fold IIIA: o elements must agree");

  const FpcGroup& gx = m.source.vertex_group(x);
  int fresh = static_cast<int>(gx.factor_count());
  std::vector<long> orders = gx.factor_orders;
  orders.push_back(0);
  FpcGroup extended(orders);

  const VertexId w = m.target.graph.omega(m.phi_e(f1));
  const FpcGroup& gw = m.target.vertex_group(w);
  FpcWord b1 = m.t_of(f1), b2 = m.t_of(f2);

  GGMorphism out;
  out.source = folded_source(m, f2, std::nullopt, x, extended, 0);
  out.target = m.target;
  for (const VertexId& v : out.source.graph.vertices()) {
    out.vertex_map[v] = m.phi_v(v);
    if (v == x) {
      std::vector<FpcWord> images = m.vertex_hom(x).images();
      images.push_back(mul(gw, inv(gw, b1), b2));
      out.vertex_homs.emplace(v, FpcHom(extended, gw, images));
    } else {
      out.vertex_homs.emplace(v, m.vertex_hom(v));
    }
  }
  for (const EdgeId& e : out.source.graph.edges()) {
    out.edge_map[e] = m.phi_e(e);
    out.edge_exponents[e] = m.edge_exp(e);
    out.o[e] = m.o_of(e);  // t_{f1} is kept, so t_f' = b1 as required
  }

  GGMorphism sigma;
  sigma.source = m.source;
  sigma.target = out.source;
  for (const VertexId& v : m.source.graph.vertices()) {
    sigma.vertex_map[v] = v;
    if (v == x) {
      std::vector<FpcWord> images;
      for (std::size_t i = 0; i < gx.factor_count(); ++i)
        images.push_back(FpcWord::generator(static_cast<int>(i)));
      sigma.vertex_homs.emplace(v, FpcHom(gx, extended, images));
    } else {
      sigma.vertex_homs.emplace(v, FpcHom::identity(m.source.vertex_group(v)));
    }
  }
  const EdgeId f1i = g.inv(f1), f2i = g.inv(f2);
  for (const EdgeId& e : m.source.graph.edges()) {
    EdgeId img = e;
    if (e == f2) img = f1;
    if (e == f2i) img = f1i;
    sigma.edge_map[e] = img;
    sigma.edge_exponents[e] = 1;
    sigma.o[e] = FpcWord::identity();
  }
  // crossing f2 against its orientation picks up the fresh generator inverse
  sigma.o.at(f2i) = FpcWord::generator(fresh, -1);
  MoveResult res;
  res.morphism = std::move(out);
  res.sigma = std::move(sigma);
  return res;
}

MoveResult vertex_morphism(const GGMorphism& m, const VertexId& u) {
  const FpcHom& h = m.vertex_hom(u);
  const FpcGroup& gu = h.source();
  const FpcGroup& gv = h.target();
  std::vector<long> kept_orders;
  std::vector<FpcWord> kept_images;
  std::vector<FpcWord> sigma_images;  // per original factor
  for (std::size_t i = 0; i < gu.factor_count(); ++i) {
    long ord = order_of(gv, h.image(static_cast<int>(i)));
    if (ord == 1) {
      sigma_images.push_back(FpcWord::identity());
      continue;
    }
    sigma_images.push_back(FpcWord::generator(static_cast<int>(kept_orders.size())));
    kept_orders.push_back(ord);
    kept_images.push_back(h.image(static_cast<int>(i)));
  }
  FpcGroup quotient(kept_orders);
  FpcHom reduced(quotient, gv, kept_images);
  InjectivityReport ir = injectivity(reduced);
  if (ir.verdict != Verdict::Yes)
    throw error("vertex morphism unsupported: kernel of the vertex hom at " + u +
                " is not factor-generated (or injectivity of the quotient is undecided)");
  FpcHom sigma_u(gu, quotient, sigma_images);
  for (const EdgeId& e : m.source.graph.star(u)) {
    long me = m.source.edge_order(e);
    if (me == 1) continue;
    if (order_of(quotient, sigma_u.apply(m.source.boundary_word(e))) != me)
      throw error("vertex morphism unsupported: edge group at " + e +
                  " does not embed into the quotient");
  }

  GGMorphism out = m;
  out.source.vertex_groups.at(u) = quotient;
  for (const EdgeId& e : m.source.graph.star(u))
    out.source.boundary.at(e) = sigma_u.apply(m.source.boundary_word(e));
  out.vertex_homs.at(u) = reduced;

  GGMorphism sigma;
  sigma.source = m.source;
  sigma.target = out.source;
  for (const VertexId& v : m.source.graph.vertices()) {
    sigma.vertex_map[v] = v;
    sigma.vertex_homs.emplace(v, v == u ? sigma_u : FpcHom::identity(m.source.vertex_group(v)));
  }
  for (const EdgeId& e : m.source.graph.edges()) {
    sigma.edge_map[e] = e;
    sigma.edge_exponents[e] = 1;
    sigma.o[e] = FpcWord::identity();
  }
  MoveResult res;
  res.morphism = std::move(out);
  res.sigma = std::move(sigma);
  return res;
}

FoldOutcome fold(const GGMorphism& m, const EdgeId& f1_in, const EdgeId& f2_in,
                 const F1Witness& w_in, const VertexId& base) {
  EdgeId f1 = f1_in, f2 = f2_in;
  F1Witness w = w_in;
  const Graph& g = m.source.graph;
  FoldOutcome out;
  // keep the vanishing omega vertex away from the base ("possibly after
  // exchanging f_1 and f_2")
  if (g.omega(f1) != g.omega(f2) && g.omega(f2) == base) {
    std::swap(f1, f2);
    const FpcGroup& gu = m.source.vertex_group(g.alpha(f1));
    w.b = inv(gu, w_in.b);
    w.c = -w_in.c;
    out.swapped = true;
  }
  const VertexId u = g.alpha(f2);
  const FpcGroup& gu = m.source.vertex_group(u);

  MoveResult a2 = move_a2(m, f2, inv(gu, w.b));
  GGMorphism m2 = move_a1(a2.morphism, f2, w.c);
  if (!(m2.o_of(f1) == m2.o_of(f2)))
    throw error("fold: witness does not equalize the o elements");

  MoveResult elem;
  if (g.omega(f1) == g.omega(f2)) {
    elem = elementary_fold_iiia(m2, f1, f2);
    out.kind = FoldOutcome::Kind::IIIA;
  } else {
    const VertexId y = g.omega(f2);
    if (y == base) throw error("fold: cannot keep the base vertex fixed");
    const FpcGroup& gw = m2.target.vertex_group(m2.target.graph.omega(m2.phi_e(f1)));
    FpcWord gmove = mul(gw, inv(gw, m2.t_of(f1)), m2.t_of(f2));
    m2 = move_a0(m2, y, gmove);
    elem = elementary_fold_ia(m2, f1, f2);
    out.kind = FoldOutcome::Kind::IA;
  }
  out.morphism = elem.morphism;
  out.sigma = compose(*elem.sigma, *a2.sigma);
  out.merged_edge = f1;
  return out;
}

MoveResult unfold(const GGMorphism& m, const EdgeId& g_edge, const UnfoldWitness& w) {
  const Graph& g = m.source.graph;
  const VertexId u = g.alpha(g_edge);
  const FpcGroup& gu = m.source.vertex_group(u);
  require(m.source.edge_order(g_edge) != 1, "unfold: edge group already trivial");

  std::vector<EdgeId> st1;
  for (const EdgeId& f : g.star(u))
    if (m.source.edge_order(f) != 1) st1.push_back(f);
  require(std::count(st1.begin(), st1.end(), g_edge) == 1, "unfold: edge not in st_1(u)");
  require(w.cu_generators.size() == w.cu_orders.size(),
          "unfold: witness generator/order mismatch");

  // abstract splitting group: C_u factors, then one factor per st_1 edge
  std::vector<long> orders = w.cu_orders;
  std::vector<FpcWord> iota;  // images in B_u
  for (std::size_t i = 0; i < w.cu_generators.size(); ++i) {
    FpcWord cw = canonical(gu, w.cu_generators[i]);
    require(order_of(gu, cw) == w.cu_orders[i], "unfold: declared C_u order is wrong");
    iota.push_back(cw);
  }
  std::map<EdgeId, int> factor_of_edge;
  for (const EdgeId& f : st1) {
    auto it = w.conjugators.find(f);
    require(it != w.conjugators.end(), "unfold: missing conjugator for " + f);
    FpcWord bf = canonical(gu, it->second);
    factor_of_edge[f] = static_cast<int>(orders.size());
    orders.push_back(m.source.edge_order(f));
    iota.push_back(conj(gu, bf, m.source.boundary_word(f)));
  }
  FpcGroup splitting(orders);
  {
    // Grushko: factor order multisets must agree
    std::vector<long> a = orders, b = gu.factor_orders;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    require(a == b, "unfold: witness factors do not match the vertex group");
  }
  // surjectivity certificate; injectivity follows since finitely generated
  // free products of cyclics are Hopfian
  require(w.expressions.size() == gu.factor_count(),
          "unfold: need one expression per vertex group factor");
  FpcHom iota_hom(splitting, gu, iota);
  for (std::size_t i = 0; i < w.expressions.size(); ++i)
    require(iota_hom.apply(canonical(splitting, w.expressions[i])) ==
                FpcWord::generator(static_cast<int>(i)),
            "unfold: expression " + std::to_string(i) + " does not evaluate to its generator");

  // drop the factor belonging to g_edge
  int gfac = factor_of_edge.at(g_edge);
  std::vector<long> new_orders;
  std::vector<FpcWord> sigma_images;
  std::map<EdgeId, int> new_factor_of_edge;
  for (int i = 0; i < static_cast<int>(orders.size()); ++i) {
    if (i == gfac) continue;
    new_orders.push_back(orders[static_cast<std::size_t>(i)]);
    sigma_images.push_back(iota[static_cast<std::size_t>(i)]);
  }
  for (const auto& [f, idx] : factor_of_edge)
    if (f != g_edge) new_factor_of_edge[f] = idx < gfac ? idx : idx - 1;
  FpcGroup reduced(new_orders);
  FpcHom sigma_u(reduced, gu, sigma_images);

  GGMorphism out = m;
  out.source.vertex_groups.at(u) = reduced;
  out.source.edge_orders.at(g_edge) = 1;
  out.source.edge_orders.at(g.inv(g_edge)) = 1;
  out.source.boundary.at(g_edge) = FpcWord::identity();
  out.source.boundary.at(g.inv(g_edge)) = FpcWord::identity();
  for (const EdgeId& f : st1) {
    if (f == g_edge) continue;
    out.source.boundary.at(f) = FpcWord::generator(new_factor_of_edge.at(f));
  }
  out.edge_exponents.at(g_edge) = 1;
  out.edge_exponents.at(g.inv(g_edge)) = 1;
  {
    std::vector<FpcWord> images;
    for (const FpcWord& q : sigma_images) images.push_back(m.vertex_hom(u).apply(q));
    out.vertex_homs.at(u) = FpcHom(reduced, m.target.vertex_group(m.phi_v(u)), images);
  }
  // o elements absorb the conjugators so that phi sigma = phi' exactly
  const FpcGroup& gv = m.target.vertex_group(m.phi_v(u));
  for (const EdgeId& f : st1)
    out.o.at(f) = mul(gv, m.vertex_hom(u).apply(canonical(gu, w.conjugators.at(f))), m.o_of(f));

  GGMorphism sigma;
  sigma.source = out.source;
  sigma.target = m.source;
  for (const VertexId& v : g.vertices()) {
    sigma.vertex_map[v] = v;
    sigma.vertex_homs.emplace(v, v == u ? sigma_u : FpcHom::identity(m.source.vertex_group(v)));
  }
  for (const EdgeId& e : g.edges()) {
    sigma.edge_map[e] = e;
    sigma.edge_exponents[e] = 1;
    sigma.o[e] = FpcWord::identity();
  }
  for (const EdgeId& f : st1) sigma.o.at(f) = canonical(gu, w.conjugators.at(f));
  MoveResult res;
  res.morphism = std::move(out);
  res.sigma = std::move(sigma);
  return res;
}

MoveResult fold_along_edge(const GGMorphism& m, const EdgeId& f, const FoldAlongWitness& w) {
  const Graph& g = m.source.graph;
  const VertexId u = g.alpha(f);
  const VertexId uprime = g.omega(f);
  require(m.source.edge_order(f) == 1, "fold_along_edge: edge group must be trivial");
  require(w.k != 0, "fold_along_edge: witness exponent must be nonzero");
  const EdgeId& e = m.phi_e(f);
  const FpcGroup& gu = m.source.vertex_group(u);
  const FpcGroup& gva = m.target.vertex_group(m.target.graph.alpha(e));
  const FpcGroup& gvw = m.target.vertex_group(m.target.graph.omega(e));
  FpcWord b = canonical(gu, w.b);
  FpcWord target_word = conj(gva, m.o_of(f), pow(gva, m.target.boundary_word(e), w.k));
  require(m.vertex_hom(u).apply(b) == target_word,
          "fold_along_edge: phi_u(b) != o_f alpha_e(gen^k) o_f^-1");
  long new_order = order_of(gu, b);
  require(new_order != 1, "fold_along_edge: witness element is trivial");

  const FpcGroup& gup = m.source.vertex_group(uprime);
  int fresh = static_cast<int>(gup.factor_count());
  std::vector<long> orders = gup.factor_orders;
  orders.push_back(new_order);
  FpcGroup extended(orders);

  GGMorphism out = m;
  out.source.vertex_groups.at(uprime) = extended;
  out.source.edge_orders.at(f) = new_order;
  out.source.edge_orders.at(g.inv(f)) = new_order;
  out.source.boundary.at(f) = b;
  out.source.boundary.at(g.inv(f)) = FpcWord::generator(fresh);
  {
    std::vector<FpcWord> images = m.vertex_hom(uprime).images();
    images.push_back(
        mul(gvw,
            mul(gvw, inv(gvw, m.t_of(f)),
                pow(gvw, m.target.boundary_word(m.target.graph.inv(e)), w.k)),
            m.t_of(f)));
    out.vertex_homs.at(uprime) = FpcHom(extended, gvw, images);
  }
  out.edge_exponents.at(f) = w.k;
  out.edge_exponents.at(g.inv(f)) = w.k;

  GGMorphism sigma;
  sigma.source = m.source;
  sigma.target = out.source;
  for (const VertexId& v : g.vertices()) {
    sigma.vertex_map[v] = v;
    if (v == uprime) {
      std::vector<FpcWord> images;
      for (std::size_t i = 0; i < gup.factor_count(); ++i)
        images.push_back(FpcWord::generator(static_cast<int>(i)));
      sigma.vertex_homs.emplace(v, FpcHom(gup, extended, images));
    } else {
      sigma.vertex_homs.emplace(v, FpcHom::identity(m.source.vertex_group(v)));
    }
  }
  for (const EdgeId& ed : g.edges()) {
    sigma.edge_map[ed] = ed;
    sigma.edge_exponents[ed] = 1;
    sigma.o[ed] = FpcWord::identity();
  }
  MoveResult res;
  res.morphism = std::move(out);
  res.sigma = std::move(sigma);
  return res;
}

}  // namespace orbfold

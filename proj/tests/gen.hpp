#ifndef ORBFOLD_TEST_GEN_HPP
#define ORBFOLD_TEST_GEN_HPP

#include <random>

#include "helpers.hpp"
#include "orbfold/moves.hpp"

// Random instance generators for the morphism and move tests.

namespace testutil {

using namespace orbfold;

// target graph of groups with finite cyclic vertex groups; optionally some
// nontrivial cyclic edge groups embedded via powers of the vertex generators
inline GraphOfGroups random_target(std::mt19937_64& rng, bool nontrivial_edges = false,
                                   int max_vertices = 4) {
  Graph g = random_connected_graph(rng, max_vertices, 2);
  GraphOfGroups out;
  out.graph = g;
  const long orders[] = {2, 3, 4, 6};
  std::uniform_int_distribution<int> oi(0, 3);
  std::uniform_int_distribution<int> tri(0, 2);
  for (const VertexId& v : g.vertices())
    out.vertex_groups[v] = tri(rng) == 0 ? FpcGroup() : FpcGroup({orders[oi(rng)]});
  for (const EdgePair& p : g.pairs()) {
    long m = 1;
    if (nontrivial_edges && tri(rng) == 0) {
      const FpcGroup& ga = out.vertex_groups[p.from];
      const FpcGroup& gb = out.vertex_groups[p.to];
      long pa = ga.order(), pb = gb.order();
      long common = std::gcd(pa, pb);
      for (long d = common; d >= 2; --d)
        if (common % d == 0) {
          m = d;
          break;
        }
    }
    out.edge_orders[p.id] = m;
    out.edge_orders[p.inv] = m;
    if (m == 1) {
      out.boundary[p.id] = FpcWord::identity();
      out.boundary[p.inv] = FpcWord::identity();
    } else {
      out.boundary[p.id] = FpcWord::generator(0, out.vertex_groups[p.from].order() / m);
      out.boundary[p.inv] = FpcWord::generator(0, out.vertex_groups[p.to].order() / m);
    }
  }
  out.validate();
  return out;
}

// random morphism with trivial source edge groups: the source graph grows by
// lifting random target edges, vertex groups are cyclic subgroups of the
// image vertex groups
inline GGMorphism random_morphism(std::mt19937_64& rng, const GraphOfGroups& target,
                                  int source_vertices = 4, int extra_edges = 2) {
  GGMorphism m;
  m.target = target;
  std::vector<VertexId> tverts(target.graph.vertices().begin(), target.graph.vertices().end());
  std::uniform_int_distribution<std::size_t> tv(0, tverts.size() - 1);

  std::vector<VertexId> vs;
  std::vector<EdgePair> pairs;
  int eid = 0;
  vs.push_back("u0");
  m.vertex_map["u0"] = tverts[tv(rng)];
  for (int i = 1; i < source_vertices; ++i) {
    // attach to a random existing vertex along a random target edge
    std::uniform_int_distribution<std::size_t> pick(0, vs.size() - 1);
    VertexId parent = vs[pick(rng)];
    auto st = target.graph.star(m.vertex_map[parent]);
    if (st.empty()) continue;
    std::uniform_int_distribution<std::size_t> se(0, st.size() - 1);
    EdgeId te = st[se(rng)];
    VertexId nv = "u" + std::to_string(i);
    vs.push_back(nv);
    m.vertex_map[nv] = target.graph.omega(te);
    EdgeId f = "f" + std::to_string(eid++);
    pairs.push_back({f, f + "'", parent, nv});
    m.edge_map[f] = te;
    m.edge_map[f + "'"] = target.graph.inv(te);
  }
  for (int k = 0; k < extra_edges; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, vs.size() - 1);
    VertexId a = vs[pick(rng)], b = vs[pick(rng)];
    if (a == b) continue;
    std::vector<EdgeId> options;
    for (const EdgeId& te : target.graph.star(m.vertex_map[a]))
      if (target.graph.omega(te) == m.vertex_map[b]) options.push_back(te);
    if (options.empty()) continue;
    std::uniform_int_distribution<std::size_t> se(0, options.size() - 1);
    EdgeId te = options[se(rng)];
    EdgeId f = "f" + std::to_string(eid++);
    pairs.push_back({f, f + "'", a, b});
    m.edge_map[f] = te;
    m.edge_map[f + "'"] = target.graph.inv(te);
  }
  m.source.graph = Graph(vs, pairs);
  std::uniform_int_distribution<int> tri(0, 2);
  for (const VertexId& v : m.source.graph.vertices()) {
    const FpcGroup& gv = target.vertex_group(m.vertex_map[v]);
    long p = gv.order();
    if (p <= 1 || tri(rng) == 0) {
      m.source.vertex_groups[v] = FpcGroup();
      m.vertex_homs.emplace(v, FpcHom(FpcGroup(), gv, {}));
    } else {
      // random divisor d >= 2 of p: B_v = Z_d embedded as <s^(p/d)>
      std::vector<long> divs;
      for (long d = 2; d <= p; ++d)
        if (p % d == 0) divs.push_back(d);
      std::uniform_int_distribution<std::size_t> di(0, divs.size() - 1);
      long d = divs[di(rng)];
      m.source.vertex_groups[v] = FpcGroup({d});
      m.vertex_homs.emplace(v, FpcHom(FpcGroup({d}), gv, {FpcWord::generator(0, p / d)}));
    }
  }
  for (const EdgeId& f : m.source.graph.edges()) {
    m.source.edge_orders[f] = 1;
    m.source.boundary[f] = FpcWord::identity();
    m.edge_exponents[f] = 1;
    const FpcGroup& ga = target.vertex_group(target.graph.alpha(m.edge_map.at(f)));
    m.o[f] = random_element(rng, ga, 1);
  }
  m.source.validate();
  m.validate();
  return m;
}

// folded morphism onto a trivial-edge-group target: vertex homs are injective
// by construction and colliding edges get o's in distinct image cosets
inline GGMorphism random_folded_morphism(std::mt19937_64& rng, int max_target_vertices = 3) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    GraphOfGroups target = random_target(rng, false, max_target_vertices);
    GGMorphism m = random_morphism(rng, target);
    // fix F1 by reassigning o values within each collision class
    bool ok = true;
    for (const VertexId& x : m.source.graph.vertices()) {
      std::map<EdgeId, std::vector<EdgeId>> classes;
      for (const EdgeId& f : m.source.graph.star(x)) classes[m.phi_e(f)].push_back(f);
      const FpcGroup& gv = target.vertex_group(m.phi_v(x));
      for (auto& [te, fs] : classes) {
        if (fs.size() == 1) continue;
        long p = gv.order();
        long d = m.source.vertex_group(x).order();  // image subgroup size (or 1)
        if (d == 0) d = 1;
        long index = p == 0 ? 0 : p / std::max<long>(d, 1);
        if (p == 0 || index < static_cast<long>(fs.size())) {
          ok = false;
          break;
        }
        // s^j for j = 0..: one per coset of <s^(p/d)>... cosets of the image
        // subgroup are represented by s^0 .. s^(index-1)
        for (std::size_t k = 0; k < fs.size(); ++k)
          m.o.at(fs[k]) = k == 0 ? FpcWord::identity()
                                 : FpcWord::generator(0, static_cast<long>(k));
      }
      if (!ok) break;
    }
    if (!ok) continue;
    FoldedReport rep = is_folded(m);
    if (rep.verdict == Verdict::Yes) return m;
  }
  throw error("random_folded_morphism: exhausted attempts");
}

// random reduced path of the requested length in a trivial-edge-group source
inline APath random_reduced_path(std::mt19937_64& rng, const GraphOfGroups& gog,
                                 const VertexId& start, int length) {
  if (!gog.trivial_edge_groups()) throw error("random_reduced_path needs trivial edge groups");
  APath p = trivial_path(start, random_element(rng, gog.vertex_group(start)));
  VertexId cur = start;
  for (int i = 0; i < length; ++i) {
    auto st = gog.graph.star(cur);
    if (st.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, st.size() - 1);
    EdgeId e = st[pick(rng)];
    if (!p.steps.empty() && e == gog.graph.inv(p.steps.back().edge)) {
      // backtracking: the junction element after the previous edge must stay
      // outside the (trivial) edge group image
      const FpcGroup& gj = gog.vertex_group(cur);
      if (gj.is_trivial()) {
        bool found = false;
        for (const EdgeId& alt : st)
          if (alt != e) {
            e = alt;
            found = true;
            break;
          }
        if (!found) break;  // dead end
      } else if (p.steps.back().a.is_identity()) {
        FpcWord a;
        do {
          a = random_element(rng, gj, 2);
        } while (a.is_identity());
        p.steps.back().a = a;
      }
    }
    cur = gog.graph.omega(e);
    p.steps.push_back({e, random_element(rng, gog.vertex_group(cur))});
  }
  return p;
}


// ---- planted instances shared by the move tests and the acceptance suite ----

// morphism with a planted (F1) violation between f1 and f2; same_omega
// selects the IIIA configuration
struct F1Instance {
  GGMorphism m;
  EdgeId f1, f2;
  F1Witness witness;
  VertexId base;
};

inline F1Instance plant_f1(std::mt19937_64& rng, bool same_omega, bool nontrivial_target_edges) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    GraphOfGroups target = random_target(rng, nontrivial_target_edges);
    std::vector<EdgePair> tpairs = target.graph.pairs();
    std::uniform_int_distribution<std::size_t> pe(0, tpairs.size() - 1);
    EdgeId e = tpairs[pe(rng)].id;
    VertexId va = target.graph.alpha(e), vb = target.graph.omega(e);
    const FpcGroup& ga = target.vertex_group(va);
    const FpcGroup& gb = target.vertex_group(vb);

    GGMorphism m;
    m.target = target;
    std::vector<VertexId> vs = {"u", "x"};
    std::vector<EdgePair> pairs = {{"f1", "f1'", "u", "x"}};
    m.vertex_map["u"] = va;
    m.vertex_map["x"] = vb;
    if (same_omega) {
      pairs.push_back({"f2", "f2'", "u", "x"});
    } else {
      vs.push_back("y");
      m.vertex_map["y"] = vb;
      pairs.push_back({"f2", "f2'", "u", "y"});
    }
    // a spectator pendant edge keeps the instances from being degenerate
    vs.push_back("z");
    auto st = target.graph.star(vb);
    if (st.empty()) continue;
    EdgeId spect = st[0];
    m.vertex_map["z"] = target.graph.omega(spect);
    pairs.push_back({"f3", "f3'", "x", "z"});
    m.edge_map["f3"] = spect;
    m.edge_map["f3'"] = target.graph.inv(spect);

    m.source.graph = Graph(vs, pairs);
    m.edge_map["f1"] = e;
    m.edge_map["f1'"] = target.graph.inv(e);
    m.edge_map["f2"] = e;
    m.edge_map["f2'"] = target.graph.inv(e);
    // B_u = Z_d inside A_va when possible, so the witness b can be nontrivial
    long p = ga.order();
    if (p > 1) {
      m.source.vertex_groups["u"] = FpcGroup({p});
      m.vertex_homs.emplace("u", FpcHom(FpcGroup({p}), ga, {FpcWord::generator(0)}));
    } else {
      m.source.vertex_groups["u"] = FpcGroup();
      m.vertex_homs.emplace("u", FpcHom(FpcGroup(), ga, {}));
    }
    for (const VertexId& v : {VertexId("x"), VertexId("y"), VertexId("z")}) {
      if (!m.source.graph.has_vertex(v)) continue;
      const FpcGroup& gv = target.vertex_group(m.vertex_map[v]);
      m.source.vertex_groups[v] = gv;  // full vertex group, injective
      m.vertex_homs.emplace(v, FpcHom::identity(gv));
    }
    for (const EdgeId& f : m.source.graph.edges()) {
      m.source.edge_orders[f] = 1;
      m.source.boundary[f] = FpcWord::identity();
      m.edge_exponents[f] = 1;
      m.o[f] = FpcWord::identity();
    }
    m.o.at("f1") = random_element(rng, ga, 1);
    m.o.at("f1'") = random_element(rng, gb, 1);
    m.o.at("f3") = random_element(rng, gb, 1);
    // witness
    F1Witness w;
    w.f1 = "f1";
    w.f2 = "f2";
    w.b = random_element(rng, m.source.vertex_group("u"), 1);
    long me = target.edge_order(e);
    if (me == 1) {
      w.c = 0;
    } else if (me == 0) {
      std::uniform_int_distribution<long> cd(-2, 2);
      w.c = cd(rng);
    } else {
      std::uniform_int_distribution<long> cd(0, me - 1);
      w.c = cd(rng);
    }
    const FpcGroup& gva = ga;
    m.o.at("f2") = mul(gva, mul(gva, m.vertex_hom("u").apply(w.b), m.o_of("f1")),
                       pow(gva, target.boundary_word(e), w.c));
    m.o.at("f2'") = random_element(rng, gb, 1);
    m.validate();
    if (!check_morphism(m).empty()) continue;
    return {m, "f1", "f2", w, "u"};
  }
  throw error("plant_f1: exhausted attempts");
}

// source with one nontrivial edge group and a verified splitting witness
struct UnfoldInstance {
  GGMorphism m;
  EdgeId g;
  UnfoldWitness witness;
};

inline UnfoldInstance make_unfold_instance() {
  GraphOfGroups target;
  target.graph = make_graph({"vA", "vB"}, {{"e", "vA", "vB"}});
  target.vertex_groups["vA"] = FpcGroup({4});
  target.vertex_groups["vB"] = FpcGroup({2});
  target.edge_orders["e"] = 2;
  target.edge_orders["e'"] = 2;
  target.boundary["e"] = FpcWord::generator(0, 2);
  target.boundary["e'"] = FpcWord::generator(0);
  target.validate();

  GGMorphism m;
  m.target = target;
  m.source.graph = make_graph({"u", "w"}, {{"g", "u", "w"}});
  // B_u = <c0> * <q | q^2> with alpha_g(gen) = c0 q c0^-1
  FpcGroup bu({0, 2});
  m.source.vertex_groups["u"] = bu;
  m.source.vertex_groups["w"] = FpcGroup({2});
  m.source.edge_orders["g"] = 2;
  m.source.edge_orders["g'"] = 2;
  m.source.boundary["g"] = conj(bu, FpcWord::generator(0), FpcWord::generator(1));
  m.source.boundary["g'"] = FpcWord::generator(0);
  m.source.validate();
  m.vertex_map["u"] = "vA";
  m.vertex_map["w"] = "vB";
  m.vertex_homs.emplace(
      "u", FpcHom(bu, FpcGroup({4}), {FpcWord::generator(0), FpcWord::generator(0, 2)}));
  m.vertex_homs.emplace("w", FpcHom::identity(FpcGroup({2})));
  for (const EdgeId& f : {EdgeId("g"), EdgeId("g'")}) {
    m.edge_map[f] = f == "g" ? "e" : "e'";
    m.edge_exponents[f] = 1;
    m.o[f] = FpcWord::identity();
  }
  m.validate();
  if (!check_morphism(m).empty()) throw error("unfold fixture broken");

  UnfoldWitness w;
  w.cu_generators = {FpcWord::generator(0)};
  w.cu_orders = {0};
  // alpha_g(B_g) = <c0 q c0^-1>; conjugating once more by c0 still splits:
  // B_u = <c0> * c0 <c0 q c0^-1> c0^-1, and q = c0^-2 (c0^2 q c0^-2) c0^2
  w.conjugators["g"] = FpcWord::generator(0);
  w.expressions = {FpcWord::generator(0),
                   canonical(FpcGroup({0, 2}), FpcWord({FpcLetter{0, -2}, FpcLetter{1, 1},
                                                        FpcLetter{0, 2}}))};
  return {m, "g", w};
}

}  // namespace testutil

#endif

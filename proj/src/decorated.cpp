#include "orbfold/decorated.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace orbfold {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw error(what);
}

long positive_mod(long d, long q) {
  long m = d % q;
  if (m <= 0) m += q;
  return m;  // in 1..q
}

// boundary-class access for a bare decorated group, where only the underlying
// A^O graph is stored
SmallOrbGraph shim(const GraphOfGroups& ao) {
  SmallOrbGraph tmp;
  tmp.gog = ao;
  tmp.q = static_cast<long>(ao.graph.pairs().size());
  tmp.p1 = ao.vertex_group("v1").order();
  tmp.p2 = ao.vertex_group("v2").order();
  return tmp;
}

}  // namespace

EdgeId SmallOrbGraph::edge(long d) const { return "e" + std::to_string(positive_mod(d, q)); }

FpcWord SmallOrbGraph::s_v(const VertexId& v, long e) const {
  long p = v == "v1" ? p1 : p2;
  if (p == 1 || e % p == 0) return FpcWord::identity();
  return canonical(gog.vertex_group(v), FpcWord::generator(0, e));
}

APath SmallOrbGraph::boundary_path(long i) const {
  long idx = positive_mod(i, q);
  APath c = trivial_path("v1", s_v("v1", epsilon(idx)));
  c.steps.push_back({edge(idx), s_v("v2", epsilon(idx))});
  c.steps.push_back({gog.graph.inv(edge(idx + 1)), FpcWord::identity()});
  return c;
}

Pi1Element SmallOrbGraph::boundary_class(long i) const {
  return pi1_from_path(gog, boundary_path(i));
}

Pi1Element SmallOrbGraph::theta_s1() const {
  return pi1_from_path(gog, trivial_path("v1", s_v("v1")));
}

Pi1Element SmallOrbGraph::theta_s2() const {
  APath p = trivial_path("v1");
  p.steps.push_back({"e1", s_v("v2")});
  p.steps.push_back({gog.graph.inv("e1"), FpcWord::identity()});
  return pi1_from_path(gog, p);
}

SmallOrbGraph build_ao(const OrbifoldSpec& spec) {
  require(is_small(spec) && spec.orientable, "build_ao needs an orientable small orbifold");
  SmallOrbGraph sg;
  sg.spec = spec;
  sg.q = spec.boundary_count;
  sg.p1 = spec.cone_count() >= 1 ? spec.cone_orders[0] : 1;
  sg.p2 = spec.cone_count() >= 2 ? spec.cone_orders[1] : 1;
  std::vector<EdgePair> pairs;
  for (long i = 1; i <= sg.q; ++i) {
    EdgeId id = "e" + std::to_string(i);
    pairs.push_back({id, id + "'", "v1", "v2"});
  }
  sg.gog.graph = Graph({"v1", "v2"}, pairs);
  sg.gog.vertex_groups["v1"] = sg.p1 == 1 ? FpcGroup() : FpcGroup({sg.p1});
  sg.gog.vertex_groups["v2"] = sg.p2 == 1 ? FpcGroup() : FpcGroup({sg.p2});
  for (const EdgeId& e : sg.gog.graph.edges()) {
    sg.gog.edge_orders[e] = 1;
    sg.gog.boundary[e] = FpcWord::identity();
  }
  sg.gog.validate();
  return sg;
}

BoundaryDecomposition decompose_boundary_image(const SmallOrbGraph& sg, const GGMorphism& phi,
                                               const APath& p) {
  validate_path(phi.source, p);
  require(is_closed(phi.source, p), "boundary path must be closed");
  std::size_t len = p.steps.size();
  require(len >= 2 && len % 2 == 0, "boundary path must have positive even length");
  long z = static_cast<long>(len) / 2;
  const FpcGroup& g1 = sg.gog.vertex_group("v1");
  for (std::size_t shift = 0; shift < len; ++shift) {
    APath rotated = shift == 0 ? p : path_rotate(phi.source, p, shift);
    if (phi.phi_v(rotated.start) != "v1") continue;
    APath img = induced_image(phi, rotated);
    const EdgeId& first = img.steps.front().edge;
    if (!sg.gog.graph.is_positive(first)) continue;
    long i = std::stol(first.substr(1));
    bool ok = true;
    for (std::size_t m = 0; m < len && ok; ++m) {
      const EdgeId expected = m % 2 == 0 ? sg.edge(i) : sg.gog.graph.inv(sg.edge(i + 1));
      ok = img.steps[m].edge == expected;
    }
    if (!ok) continue;
    FpcWord sv1 = sg.s_v("v1", sg.epsilon(i));
    FpcWord sv2 = sg.s_v("v2", sg.epsilon(i));
    for (std::size_t m = 0; m + 1 < len && ok; ++m)
      ok = img.steps[m].a == (m % 2 == 0 ? sv2 : sv1);
    if (!ok) continue;
    FpcWord a = inv(g1, img.steps.back().a);  // x_{2z} = a^-1
    if (!(img.a0 == mul(g1, a, sv1))) continue;
    BoundaryDecomposition out;
    out.i = i;
    out.z = z;
    out.a = a;
    out.shift = shift;
    return out;
  }
  throw error("path image is not a conjugated boundary power: invalid decorated morphism");
}

DecoratedMorphism make_decorated(SmallOrbGraph sg, GGMorphism phi, VertexId base,
                                 std::vector<APath> paths, std::vector<APath> gammas) {
  require(phi.target == sg.gog, "decorated morphism must land in the small orbifold graph");
  require(phi.source.trivial_edge_groups(), "decorated morphism needs trivial source edge groups");
  require(phi.phi_v(base) == "v1", "base vertex must map to v1");
  require(paths.size() == gammas.size(), "need one connecting path per boundary path");
  phi.validate();
  require(check_morphism(phi).empty(), "decorated morphism carries a broken underlying morphism");
  DecoratedMorphism dm;
  dm.sg = std::move(sg);
  dm.base = std::move(base);
  for (std::size_t j = 0; j < paths.size(); ++j) {
    validate_path(phi.source, paths[j]);
    validate_path(phi.source, gammas[j]);
    require(gammas[j].start == dm.base, "gamma must start at the base");
    require(path_end(phi.source, gammas[j]) == paths[j].start,
            "gamma must end at the start of its boundary path");
    dm.decomposition.push_back(decompose_boundary_image(dm.sg, phi, paths[j]));
  }
  dm.phi = std::move(phi);
  dm.paths = std::move(paths);
  dm.gammas = std::move(gammas);
  return dm;
}

Pi1Element DecoratedGroup::eta_apply(const FpcWord& w) const {
  Pi1Element out = pi1_identity(ao, "v1");
  for (const FpcLetter& l : w.letters)
    out = pi1_mul(ao, out, pi1_pow(ao, eta.at(static_cast<std::size_t>(l.factor)), l.exp));
  return out;
}

DecoratedGroup induced_decorated_group(const DecoratedMorphism& dm) {
  DecoratedGroup dg;
  dg.ao = dm.sg.gog;
  FreeSplitting fs = free_splitting(dm.phi.source, dm.base);
  dg.group = fs.group;
  for (const BasisElem& be : fs.basis)
    dg.eta.push_back(induced_hom(dm.phi, pi1_from_path(dm.phi.source, be.loop)));
  for (std::size_t j = 0; j < dm.paths.size(); ++j) {
    const APath& p = dm.paths[j];
    const BoundaryDecomposition& dec = dm.decomposition[j];
    APath hloop = path_concat(dm.phi.source, path_concat(dm.phi.source, dm.gammas[j], p),
                              path_inverse(dm.phi.source, dm.gammas[j]));
    PeripheralData pd;
    pd.generator = express(dm.phi.source, fs, hloop);
    pd.i = dec.i;
    pd.z = dec.z;
    // o = [phi(gamma_j p_{j,1}) a_j]; the canonical split carries the whole
    // junction element into the rotated path, so p_{j,1} ends trivially and
    // is empty for shift 0
    APath prefix = trivial_path(p.start, dec.shift == 0 ? FpcWord::identity() : p.a0);
    for (std::size_t t = 0; t < dec.shift; ++t) prefix.steps.push_back(p.steps[t]);
    if (dec.shift > 0) prefix.steps.back().a = FpcWord::identity();
    APath opath = induced_image(dm.phi, path_concat(dm.phi.source, dm.gammas[j], prefix));
    opath = path_append_element(dm.sg.gog, opath, dec.a);
    pd.o = pi1_from_path(dm.sg.gog, opath);
    // eta(h_j) = o [c_i]^z o^-1: internal consistency of the decomposition
    Pi1Element lhs = dg.eta_apply(pd.generator);
    Pi1Element rhs = pi1_mul(
        dm.sg.gog,
        pi1_mul(dm.sg.gog, pd.o, pi1_pow(dm.sg.gog, dm.sg.boundary_class(pd.i), pd.z)),
        pi1_inv(dm.sg.gog, pd.o));
    require(pi1_eq(dm.sg.gog, lhs, rhs), "peripheral image mismatch in induced decorated group");
    require(!pi1_is_identity(lhs), "peripheral image must be nontrivial");
    dg.peripherals.push_back(pd);
  }
  return dg;
}

SquareFoldReport folds_squares(const DecoratedMorphism& dm) {
  SquareFoldReport rep;
  std::map<EdgeId, std::vector<std::size_t>> table;
  for (std::size_t j = 0; j < dm.paths.size(); ++j)
    for (const APath::Step& s : dm.paths[j].steps) table[s.edge].push_back(j);
  for (const auto& [e, js] : table) {
    for (std::size_t a = 0; a < js.size(); ++a)
      for (std::size_t b = a + 1; b < js.size(); ++b) {
        if (js[a] == js[b]) {
          rep.kind = SquareFoldReport::Kind::SelfFold;
          rep.edge = e;
          rep.j = js[a];
          return rep;
        }
        if (dm.decomposition[js[a]].i == dm.decomposition[js[b]].i) {
          rep.kind = SquareFoldReport::Kind::PeripheralFold;
          rep.edge = e;
          rep.j = js[a];
          rep.k = js[b];
          return rep;
        }
      }
  }
  return rep;
}

LocalGraph local_graph(const DecoratedMorphism& dm, const VertexId& u) {
  require(folds_squares(dm).kind == SquareFoldReport::Kind::None,
          "local graph undefined: the decorated morphism folds squares");
  LocalGraph lg;
  lg.vertex = u;
  lg.nodes = dm.phi.source.graph.star(u);
  const Graph& g = dm.phi.source.graph;
  const FpcGroup& gu = dm.phi.source.vertex_group(u);
  for (std::size_t j = 0; j < dm.paths.size(); ++j) {
    const APath& p = dm.paths[j];
    std::size_t L = p.steps.size();
    for (std::size_t t = 0; t < L; ++t) {
      const EdgeId& et = p.steps[t].edge;
      if (g.omega(et) != u) continue;
      const EdgeId& enext = p.steps[(t + 1) % L].edge;
      FpcWord b = t + 1 < L ? p.steps[t].a : mul(gu, p.steps[t].a, p.a0);
      lg.arcs.push_back({g.inv(et), enext, j, b});
    }
  }
  std::map<EdgeId, std::size_t> out_arc, in_arc;
  for (std::size_t k = 0; k < lg.arcs.size(); ++k) {
    require(out_arc.emplace(lg.arcs[k].from, k).second,
            "local graph degree violation at " + lg.arcs[k].from);
    require(in_arc.emplace(lg.arcs[k].to, k).second,
            "local graph degree violation at " + lg.arcs[k].to);
  }
  std::set<EdgeId> visited;
  for (const EdgeId& n : lg.nodes) {  // intervals start without incoming arcs
    if (in_arc.count(n) || visited.count(n)) continue;
    LocalGraph::Component comp;
    comp.circle = false;
    EdgeId cur = n;
    visited.insert(cur);
    comp.nodes.push_back(cur);
    while (out_arc.count(cur)) {
      std::size_t k = out_arc.at(cur);
      comp.arc_idxs.push_back(k);
      cur = lg.arcs[k].to;
      visited.insert(cur);
      comp.nodes.push_back(cur);
    }
    lg.components.push_back(comp);
  }
  for (const EdgeId& n : lg.nodes) {  // the rest are circles; start at the least node
    if (visited.count(n)) continue;
    LocalGraph::Component comp;
    comp.circle = true;
    EdgeId start = n;
    {
      EdgeId cur = n;
      do {
        if (cur < start) start = cur;
        cur = lg.arcs[out_arc.at(cur)].to;
      } while (cur != n);
    }
    EdgeId cur = start;
    do {
      visited.insert(cur);
      comp.nodes.push_back(cur);
      std::size_t k = out_arc.at(cur);
      comp.arc_idxs.push_back(k);
      cur = lg.arcs[k].to;
    } while (cur != start);
    lg.components.push_back(comp);
  }
  return lg;
}

PathFormulaReport check_local_path_formulas(const DecoratedMorphism& dm, const VertexId& u) {
  PathFormulaReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  LocalGraph lg = local_graph(dm, u);
  const VertexId v = dm.phi.phi_v(u);
  const bool at_v1 = v == "v1";
  const long delta = at_v1 ? 1 : -1;
  const FpcGroup& gv = dm.sg.gog.vertex_group(v);
  const FpcGroup& gu = dm.phi.source.vertex_group(u);

  for (const LocalGraph::Component& comp : lg.components) {
    if (comp.arc_idxs.empty()) continue;
    long i1 = dm.decomposition[lg.arcs[comp.arc_idxs[0]].j].i;
    long i0 = at_v1 ? i1 + 1 : i1;
    {
      EdgeId expect = dm.sg.edge(i0);
      if (!at_v1) expect = dm.sg.gog.graph.inv(expect);
      if (dm.phi.phi_e(comp.nodes[0]) != expect)
        fail("edge image pattern fails at the start of a component at " + u);
    }
    FpcWord prod = FpcWord::identity();  // b_1 ... b_t
    long eps_sum = 0;
    for (std::size_t t = 0; t < comp.arc_idxs.size(); ++t) {
      const LocalGraph::Arc& arc = lg.arcs[comp.arc_idxs[t]];
      long ij = dm.decomposition[arc.j].i;
      // label index congruence, ascending at v2 and descending at v1
      long expected_i =
          positive_mod(i1 + (at_v1 ? -static_cast<long>(t) : static_cast<long>(t)), dm.sg.q);
      if (positive_mod(ij, dm.sg.q) != expected_i)
        fail("label index congruence fails at " + arc.from);
      prod = mul(gu, prod, arc.b);
      eps_sum += dm.sg.epsilon(ij);
      FpcWord lhs = dm.phi.o_of(arc.to);
      FpcWord rhs = mul(gv,
                        mul(gv, inv(gv, dm.phi.vertex_hom(u).apply(prod)),
                            dm.phi.o_of(comp.nodes[0])),
                        dm.sg.s_v(v, eps_sum));
      if (!(lhs == rhs)) fail("o element formula fails at " + arc.to);
      EdgeId expect = dm.sg.edge(i0 - delta * static_cast<long>(t + 1));
      if (!at_v1) expect = dm.sg.gog.graph.inv(expect);
      if (dm.phi.phi_e(arc.to) != expect) fail("edge image pattern fails at " + arc.to);
    }
    if (comp.circle) {
      long l = static_cast<long>(comp.arc_idxs.size());
      if (l % dm.sg.q != 0) {
        fail("circle length not divisible by q at " + u);
        continue;
      }
      long k = l / dm.sg.q;
      if (eps_sum != k) fail("epsilon sum along the circle differs from l/q at " + u);
      FpcWord sk = dm.sg.s_v(v, k);
      auto img = enumerate_subgroup(gv, dm.phi.vertex_hom(u).images());
      bool member = false;
      for (const auto& el : img.elements) member |= el.element == sk;
      if (!(img.complete && member)) fail("s_v^(l/q) escapes phi_u(B_u) at " + u);
      std::vector<FpcWord> all = enumerate_group(gv);
      for (const EdgeId& e : dm.sg.gog.graph.star(v)) {
        std::set<std::vector<FpcLetter>> covered;
        long hits = 0;
        for (const EdgeId& f : comp.nodes) {
          if (dm.phi.phi_e(f) != e) continue;
          ++hits;
          for (const auto& el : img.elements)
            covered.insert(mul(gv, el.element, dm.phi.o_of(f)).letters);
        }
        if (hits != k) fail("fiber count over " + e + " is not l/q at " + u);
        if (covered.size() != all.size()) fail("coset covering fails over " + e + " at " + u);
      }
    }
  }
  return rep;
}

std::optional<CollapsingOrder> collapsing_order(const DecoratedMorphism& dm) {
  std::size_t n = dm.paths.size();
  if (n == 0) return CollapsingOrder{};
  require(n <= 16, "collapsing order search capped at 16 paths");
  const Graph& g = dm.phi.source.graph;
  struct PathInfo {
    std::map<EdgeId, EdgeId> once;  // pair rep -> directed crossing
    std::set<EdgeId> pairs;
  };
  std::vector<PathInfo> info(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::map<EdgeId, std::vector<EdgeId>> crossings;
    for (const APath::Step& s : dm.paths[j].steps)
      crossings[g.pair_of(s.edge)].push_back(s.edge);
    for (const auto& [pair, dirs] : crossings) {
      info[j].pairs.insert(pair);
      if (dirs.size() == 1) info[j].once[pair] = dirs.front();
    }
  }
  std::set<std::pair<unsigned, std::string>> dead;
  std::vector<EdgeId> edges;
  std::vector<std::size_t> nu;
  std::set<EdgeId> removed;

  std::function<bool(unsigned)> search = [&](unsigned used) -> bool {
    if (static_cast<std::size_t>(std::popcount(used)) == n) return true;
    std::string rkey;
    for (const EdgeId& e : removed) rkey += e + ",";
    if (dead.count({used, rkey})) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (used & (1u << j)) continue;
      bool avoids = true;
      for (const EdgeId& r : removed) avoids &= !info[j].pairs.count(r);
      if (!avoids) continue;
      for (const auto& [pair, dir] : info[j].once) {
        if (removed.count(pair)) continue;
        removed.insert(pair);
        edges.push_back(dir);
        nu.push_back(j);
        if (search(used | (1u << j))) return true;
        removed.erase(pair);
        edges.pop_back();
        nu.pop_back();
      }
    }
    dead.insert({used, rkey});
    return false;
  };
  if (!search(0)) return std::nullopt;
  CollapsingOrder out;
  out.edges = edges;
  out.nu = nu;
  return out;
}

TameReport is_tame(const DecoratedMorphism& dm) {
  TameReport rep;
  rep.vertex_injective = true;
  for (const VertexId& u : dm.phi.source.graph.vertices()) {
    InjectivityReport ir = injectivity(dm.phi.vertex_hom(u));
    if (ir.verdict != Verdict::Yes) {
      rep.vertex_injective = false;
      rep.reasons.push_back("vertex hom not injective at " + u);
    }
  }
  rep.squares = folds_squares(dm);
  if (rep.squares.kind != SquareFoldReport::Kind::None)
    rep.reasons.push_back("folds squares at edge " + rep.squares.edge);
  rep.order = collapsing_order(dm);
  rep.collapsible = rep.order.has_value();
  if (!rep.collapsible) rep.reasons.push_back("no collapsing order exists");
  rep.tame = rep.vertex_injective && rep.collapsible &&
             rep.squares.kind == SquareFoldReport::Kind::None;
  return rep;
}

namespace {

void rotate_path_of(DecoratedMorphism& dm, std::size_t j, std::size_t shift) {
  if (shift == 0) return;
  const GraphOfGroups& B = dm.phi.source;
  APath prefix = trivial_path(dm.paths[j].start, dm.paths[j].a0);
  for (std::size_t t = 0; t < shift; ++t) prefix.steps.push_back(dm.paths[j].steps[t]);
  prefix.steps.back().a = FpcWord::identity();
  dm.gammas[j] = path_concat(B, dm.gammas[j], prefix);
  dm.paths[j] = path_rotate(B, dm.paths[j], shift);
}

DecoratedMorphism apply_sigma(const DecoratedMorphism& dm, const GGMorphism& moved,
                              const GGMorphism& sigma) {
  std::vector<APath> paths, gammas;
  for (const APath& p : dm.paths) paths.push_back(induced_image(sigma, p));
  for (const APath& gpath : dm.gammas) gammas.push_back(induced_image(sigma, gpath));
  return make_decorated(dm.sg, moved, sigma.phi_v(dm.base), std::move(paths), std::move(gammas));
}

}  // namespace

DecoratedMorphism dm_move_a0(const DecoratedMorphism& dm, const VertexId& u, const FpcWord& a) {
  require(u != dm.base, "decorated A0 move must avoid the base vertex");
  GGMorphism moved = move_a0(dm.phi, u, a);
  return make_decorated(dm.sg, moved, dm.base, dm.paths, dm.gammas);
}

DecoratedMorphism dm_move_a2(const DecoratedMorphism& dm, const EdgeId& f, const FpcWord& b) {
  MoveResult r = move_a2(dm.phi, f, b);
  return apply_sigma(dm, r.morphism, *r.sigma);
}

DecoratedMorphism dm_elementary_fold(const DecoratedMorphism& dm, const EdgeId& f1,
                                     const EdgeId& f2) {
  const Graph& g = dm.phi.source.graph;
  EdgeId a = f1, b = f2;
  if (g.omega(f1) != g.omega(f2)) {
    if (g.omega(b) == dm.base) std::swap(a, b);
    MoveResult r = elementary_fold_ia(dm.phi, a, b);
    return apply_sigma(dm, r.morphism, *r.sigma);
  }
  MoveResult r = elementary_fold_iiia(dm.phi, a, b);
  return apply_sigma(dm, r.morphism, *r.sigma);
}

DecoratedMorphism dm_vertex_morphism(const DecoratedMorphism& dm, const VertexId& u) {
  MoveResult r = vertex_morphism(dm.phi, u);
  return apply_sigma(dm, r.morphism, *r.sigma);
}

DecoratedMorphism dm_fold(const DecoratedMorphism& dm, const EdgeId& f1, const EdgeId& f2,
                          const F1Witness& w) {
  FoldOutcome out = fold(dm.phi, f1, f2, w, dm.base);
  return apply_sigma(dm, out.morphism, out.sigma);
}

DecoratedMorphism redecorate(const DecoratedMorphism& dm, const std::vector<std::size_t>& shifts,
                             const std::vector<APath>& gammas) {
  require(shifts.size() == dm.paths.size(), "redecorate: one shift per path");
  DecoratedMorphism out = dm;
  for (std::size_t j = 0; j < shifts.size(); ++j) rotate_path_of(out, j, shifts[j]);
  if (!gammas.empty()) {
    require(gammas.size() == dm.paths.size(), "redecorate: one gamma per path");
    out.gammas = gammas;
  }
  return make_decorated(out.sg, out.phi, out.base, out.paths, out.gammas);
}

STrivialResult make_s_trivial(const DecoratedMorphism& dm, const VertexId& u,
                              const LocalGraph::Component& interval) {
  require(!interval.circle, "make_s_trivial needs a contractible component");
  DecoratedMorphism cur = dm;
  {
    std::vector<std::size_t> shifts(dm.paths.size(), 0);
    for (std::size_t j = 0; j < cur.paths.size(); ++j)
      if (cur.paths[j].start == u) shifts[j] = 1;
    cur = redecorate(cur, shifts, {});
  }
  GGMorphism sigma = identity_morphism(cur.phi.source);
  if (interval.arc_idxs.empty()) return {cur, sigma};
  LocalGraph lg = local_graph(cur, u);
  const LocalGraph::Component* comp = nullptr;
  for (const auto& c : lg.components)
    if (!c.circle && c.nodes == interval.nodes) comp = &c;
  require(comp != nullptr, "make_s_trivial: interval not found in the local graph");
  const FpcGroup gu = cur.phi.source.vertex_group(u);  // by value: cur is reassigned below
  FpcWord acc = FpcWord::identity();
  for (std::size_t t = 0; t + 1 < comp->nodes.size(); ++t) {
    acc = mul(gu, acc, lg.arcs[comp->arc_idxs[t]].b);
    if (acc.is_identity()) continue;
    MoveResult r = move_a2(cur.phi, comp->nodes[t + 1], acc);
    cur = apply_sigma(cur, r.morphism, *r.sigma);
    sigma = compose(*r.sigma, sigma);
  }
  LocalGraph after = local_graph(cur, u);
  for (const auto& c : after.components) {
    if (c.circle || c.nodes != interval.nodes) continue;
    for (std::size_t k : c.arc_idxs)
      require(after.arcs[k].b.is_identity(), "make_s_trivial failed to clear a label");
  }
  return {cur, sigma};
}

AlmostCoverDescriptor extract_almost_cover(const DecoratedMorphism& dm, const VertexId& u) {
  AlmostCoverDescriptor out;
  out.exceptional = u;
  const Graph& g = dm.phi.source.graph;
  require(g.has_vertex(u), "unknown exceptional vertex");
  // (a) every local graph is one circle through the whole star
  for (const VertexId& w : g.vertices()) {
    LocalGraph lg = local_graph(dm, w);
    require(lg.components.size() == 1 && lg.components.front().circle,
            "condition (a) fails: local graph at " + w + " is not a single circle");
    long l = static_cast<long>(lg.components.front().arc_idxs.size());
    require(l % dm.sg.q == 0, "circle length at " + w + " not divisible by q");
    out.circle_length[w] = l;
    out.local_degree[w] = l / dm.sg.q;
  }
  // (b) folded away from u
  for (const VertexId& w : g.vertices()) {
    if (w == u) continue;
    require(injectivity(dm.phi.vertex_hom(w)).verdict == Verdict::Yes,
            "condition (b) fails: vertex hom not injective at " + w);
    const FpcGroup& gv = dm.sg.gog.vertex_group(dm.phi.phi_v(w));
    auto img = enumerate_subgroup(gv, dm.phi.vertex_hom(w).images());
    require(img.complete, "condition (b) fails: image subgroup not enumerable at " + w);
    auto st = g.star(w);
    for (std::size_t x = 0; x < st.size(); ++x)
      for (std::size_t y = x + 1; y < st.size(); ++y) {
        if (dm.phi.phi_e(st[x]) != dm.phi.phi_e(st[y])) continue;
        FpcWord q = mul(gv, dm.phi.o_of(st[y]), inv(gv, dm.phi.o_of(st[x])));
        for (const auto& el : img.elements)
          require(!(el.element == q), "condition (b) fails: equal cosets at " + w);
      }
    const FpcGroup& bw = dm.phi.source.vertex_group(w);
    require(bw.order() >= 1, "condition (b) fails: infinite vertex group at " + w);
    out.cone_orders[w] = bw.order();
  }
  // (c) structure at the exceptional vertex
  const FpcGroup& bu = dm.phi.source.vertex_group(u);
  const VertexId v = dm.phi.phi_v(u);
  const FpcGroup& gv = dm.sg.gog.vertex_group(v);
  long p = gv.order();
  int free_factor = -1, finite_factor = -1;
  for (std::size_t i = 0; i < bu.factor_count(); ++i) {
    if (bu.factor_orders[i] == 0) {
      require(free_factor < 0, "condition (c.1) fails: two free factors at " + u);
      free_factor = static_cast<int>(i);
    } else {
      require(finite_factor < 0, "condition (c.1) fails: two finite factors at " + u);
      finite_factor = static_cast<int>(i);
    }
  }
  require(free_factor >= 0, "condition (c.1) fails: no free factor b_u at " + u);
  long k_u = out.local_degree.at(u);
  out.k_u = k_u;
  if (finite_factor >= 0) {
    long img_ord = order_of(gv, dm.phi.vertex_hom(u).image(finite_factor));
    require(img_ord == bu.factor_orders[static_cast<std::size_t>(finite_factor)],
            "condition (c.3) fails: finite factor does not embed at " + u);
    out.d = p / img_ord;
  } else {
    out.d = p;
  }
  require(dm.phi.vertex_hom(u).image(free_factor) == dm.sg.s_v(v, k_u),
          "condition (c.3) fails: free generator does not map to s_v^(l_u/q)");
  {
    LocalGraph lg = local_graph(dm, u);
    const auto& comp = lg.components.front();
    int nontrivial = -1;
    for (std::size_t t = 0; t < comp.arc_idxs.size(); ++t) {
      const FpcWord& b = lg.arcs[comp.arc_idxs[t]].b;
      if (b.is_identity()) continue;
      require(nontrivial < 0, "condition (c.2) fails: two nontrivial labels at " + u);
      nontrivial = static_cast<int>(t);
      require(b == FpcWord::generator(free_factor),
              "condition (c.2) fails: closing label is not the free generator");
    }
    require(nontrivial >= 0, "condition (c.2) fails: no closing b_u label at " + u);
  }
  long deg1 = 0, deg2 = 0;
  for (const VertexId& w : g.vertices())
    (dm.phi.phi_v(w) == "v1" ? deg1 : deg2) += out.local_degree.at(w);
  require(deg1 == deg2, "degree mismatch between the two fibers");
  out.degree = deg1;
  for (const EdgePair& ep : dm.sg.gog.graph.pairs()) {
    long fiber = 0;
    for (const EdgePair& sp : g.pairs())
      if (dm.phi.phi_e(sp.id) == ep.id || dm.phi.phi_e(sp.id) == ep.inv) ++fiber;
    require(fiber == out.degree, "edge fiber count over " + ep.id + " differs from the degree");
  }
  for (const auto& dec : dm.decomposition) out.boundary_data.push_back({dec.i, dec.z});
  out.special = k_u <= p;
  if (finite_factor >= 0 && out.d < p) {
    FreeSplitting fs = free_splitting(dm.phi.source, dm.base);
    for (std::size_t i = 0; i < fs.basis.size(); ++i)
      if (fs.basis[i].kind == BasisElem::Kind::VertexFactor && fs.basis[i].vertex == u &&
          fs.basis[i].factor == finite_factor)
        out.adjoined_factor = static_cast<int>(i);
    out.notes.push_back("adjoined subgroup of order " + std::to_string(p / out.d) +
                        " carried by the finite factor at " + u);
  }
  return out;
}

AdjoinUnfoldResult adjoin_unfold(const DecoratedMorphism& dm, const VertexId& u) {
  AlmostCoverDescriptor desc = extract_almost_cover(dm, u);
  require(desc.d >= 1 && desc.d < desc.k_u,
          "adjoin_unfold requires 1 <= d < k_u (d = " + std::to_string(desc.d) +
              ", k_u = " + std::to_string(desc.k_u) + ")");
  const FpcGroup& bu = dm.phi.source.vertex_group(u);
  const VertexId v = dm.phi.phi_v(u);
  const FpcGroup& gv = dm.sg.gog.vertex_group(v);
  int free_factor = -1, finite_factor = -1;
  for (std::size_t i = 0; i < bu.factor_count(); ++i)
    (bu.factor_orders[i] == 0 ? free_factor : finite_factor) = static_cast<int>(i);

  LocalGraph lg0 = local_graph(dm, u);
  std::size_t closing = 0;
  for (std::size_t t = 0; t < lg0.components.front().arc_idxs.size(); ++t)
    if (!lg0.arcs[lg0.components.front().arc_idxs[t]].b.is_identity()) closing = t;
  const LocalGraph::Arc closing_arc = lg0.arcs[lg0.components.front().arc_idxs[closing]];
  EdgeId f_last = closing_arc.from;
  EdgeId f_first = closing_arc.to;
  std::size_t jstar = closing_arc.j;

  const DecoratedMorphism& cur = dm;
  const Graph& g = cur.phi.source.graph;
  // locate the b_u crossing (1, f_last^-1, b_u, f_first, 1); it may sit at
  // the wraparound junction of its path
  std::size_t pos = cur.paths[jstar].steps.size();
  {
    const APath& p = cur.paths[jstar];
    std::size_t L = p.steps.size();
    for (std::size_t t = 0; t < L; ++t)
      if (p.steps[t].edge == g.inv(f_last) && p.steps[(t + 1) % L].edge == f_first) pos = t;
    require(pos < cur.paths[jstar].steps.size(),
            "adjoin_unfold: closing crossing not found in its path");
  }

  EdgeId new_edge = "fadj";
  while (g.has_edge(new_edge) || g.has_edge(new_edge + "'")) new_edge += "x";

  std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
  std::vector<EdgePair> pairs = g.pairs();
  pairs.push_back({new_edge, new_edge + "'", u, g.omega(f_first)});

  FpcGroup new_bu = finite_factor >= 0
                        ? FpcGroup({bu.factor_orders[static_cast<std::size_t>(finite_factor)]})
                        : FpcGroup();
  auto remap_word = [&](const FpcWord& w, const VertexId& at) -> FpcWord {
    if (at != u) return w;
    FpcWord out;
    for (const FpcLetter& l : w.letters) {
      require(l.factor == finite_factor,
              "adjoin_unfold: an element at u uses the dropped free factor");
      out.letters.push_back({0, l.exp});
    }
    return out;
  };

  GGMorphism phi2;
  phi2.target = dm.sg.gog;
  phi2.source.graph = Graph(vs, pairs);
  for (const VertexId& w : phi2.source.graph.vertices()) {
    phi2.source.vertex_groups[w] = w == u ? new_bu : cur.phi.source.vertex_group(w);
    phi2.vertex_map[w] = cur.phi.phi_v(w);
    if (w == u) {
      std::vector<FpcWord> images;
      if (finite_factor >= 0) images.push_back(cur.phi.vertex_hom(u).image(finite_factor));
      phi2.vertex_homs.emplace(w, FpcHom(new_bu, gv, images));
    } else {
      phi2.vertex_homs.emplace(w, cur.phi.vertex_hom(w));
    }
  }
  for (const EdgeId& e : phi2.source.graph.edges()) {
    phi2.source.edge_orders[e] = 1;
    phi2.source.boundary[e] = FpcWord::identity();
    phi2.edge_exponents[e] = 1;
    if (e == new_edge) {
      phi2.edge_map[e] = cur.phi.phi_e(f_first);
      // the dropped b_u crossing is absorbed: o = phi(b_u) o_{f_first}
      phi2.o[e] = mul(gv, dm.sg.s_v(v, desc.k_u), cur.phi.o_of(f_first));
    } else if (e == new_edge + "'") {
      phi2.edge_map[e] = cur.phi.phi_e(g.inv(f_first));
      phi2.o[e] = cur.phi.o_of(g.inv(f_first));  // t_{f_new} = t_{f_first}
    } else {
      phi2.edge_map[e] = cur.phi.phi_e(e);
      phi2.o[e] = cur.phi.o_of(e);
    }
  }

  std::vector<APath> paths;
  for (std::size_t j = 0; j < cur.paths.size(); ++j) {
    APath p = cur.paths[j];
    if (j == jstar) {
      std::size_t L = p.steps.size();
      if (pos + 1 < L) {
        p.steps[pos].a = FpcWord::identity();
        p.steps[pos + 1].edge = new_edge;
      } else {
        // the b_u junction straddles the basepoint; replacing both split
        // pieces by 1 deletes it, since the dropped phi(b_u) moved into o
        p.steps[pos].a = FpcWord::identity();
        p.a0 = FpcWord::identity();
        p.steps[0].edge = new_edge;
      }
    }
    p.a0 = remap_word(p.a0, p.start);
    VertexId at = p.start;
    for (auto& s : p.steps) {
      at = phi2.source.graph.omega(s.edge);
      s.a = remap_word(s.a, at);
    }
    paths.push_back(p);
  }
  std::vector<APath> gammas;
  for (const APath& gp : cur.gammas) {
    APath q = gp;
    q.a0 = remap_word(q.a0, q.start);
    VertexId at = q.start;
    for (auto& s : q.steps) {
      at = phi2.source.graph.omega(s.edge);
      s.a = remap_word(s.a, at);
    }
    gammas.push_back(q);
  }
  return {make_decorated(dm.sg, phi2, cur.base, paths, gammas), new_edge, f_first};
}

std::optional<PeripheralFoldWitness> folds_peripheral_subgroups(const DecoratedGroup& dg,
                                                                const SplitDesignation& split,
                                                                std::size_t max_norm) {
  std::size_t n = dg.peripherals.size();
  SmallOrbGraph tmp = shim(dg.ao);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      if (k == l || dg.peripherals[k].i != dg.peripherals[l].i) continue;
      std::vector<FpcWord> gens = split.g0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != l) gens.push_back(dg.peripherals[j].generator);
      auto sub = enumerate_subgroup(dg.group, gens, 4000, static_cast<int>(max_norm));
      long zb = static_cast<long>(max_norm) + std::abs(dg.peripherals[k].z) +
                std::abs(dg.peripherals[l].z);
      Pi1Element ci = tmp.boundary_class(dg.peripherals[k].i);
      for (const auto& el : sub.elements) {
        Pi1Element eg = dg.eta_apply(el.element);
        for (long z = -zb; z <= zb; ++z) {
          Pi1Element rhs =
              pi1_mul(dg.ao, pi1_mul(dg.ao, eg, dg.peripherals[k].o), pi1_pow(dg.ao, ci, z));
          if (pi1_eq(dg.ao, dg.peripherals[l].o, rhs))
            return PeripheralFoldWitness{k, l, el.element, z};
        }
      }
    }
  return std::nullopt;
}

bool has_obvious_relation(const DecoratedGroup& dg, const SplitDesignation& split, std::size_t k,
                          const ObviousRelationWitness& w) {
  require(k < dg.peripherals.size(), "peripheral index out of range");
  std::vector<FpcWord> gens = split.g0;
  for (std::size_t j = 0; j < dg.peripherals.size(); ++j)
    if (j != k) gens.push_back(dg.peripherals[j].generator);
  FpcWord g = FpcWord::identity();
  for (const FpcLetter& l : w.word) {
    require(l.factor >= 0 && static_cast<std::size_t>(l.factor) < gens.size(),
            "witness word references an unknown designated generator");
    g = mul(dg.group, g, pow(dg.group, gens[static_cast<std::size_t>(l.factor)], l.exp));
  }
  SmallOrbGraph tmp = shim(dg.ao);
  const PeripheralData& pk = dg.peripherals[k];
  Pi1Element expected =
      pi1_mul(dg.ao, pi1_mul(dg.ao, pk.o, pi1_pow(dg.ao, tmp.boundary_class(pk.i), w.z_prime)),
              pi1_inv(dg.ao, pk.o));
  require(pi1_eq(dg.ao, dg.eta_apply(g), expected),
          "obvious relation witness fails: eta(word) != o c_i^z' o^-1");
  return 0 < w.z_prime && w.z_prime < pk.z;
}

ProjectionReport verify_projection(const DecoratedGroup& a, const DecoratedGroup& b,
                                   const ProjectionWitness& w) {
  ProjectionReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.violated = s;
    return rep;
  };
  if (w.sigma_images.size() != a.group.factor_count()) return fail("sigma image count");
  FpcHom sigma;
  try {
    sigma = FpcHom(a.group, b.group, w.sigma_images);
  } catch (const error& e) {
    return fail(std::string("sigma is not a homomorphism: ") + e.what());
  }
  for (std::size_t i = 0; i < a.group.factor_count(); ++i)
    if (!pi1_eq(a.ao, b.eta_apply(sigma.image(static_cast<int>(i))), a.eta[i]))
      return fail("lambda after sigma differs from eta at factor " + std::to_string(i));
  if (w.surjectivity.size() != b.group.factor_count())
    return fail("surjectivity certificate count");
  for (std::size_t i = 0; i < b.group.factor_count(); ++i) {
    FpcWord val = FpcWord::identity();
    for (const FpcLetter& l : w.surjectivity[i].letters) {
      if (l.factor < 0 || static_cast<std::size_t>(l.factor) >= w.sigma_images.size())
        return fail("surjectivity certificate references a bad index");
      val = mul(b.group, val,
                pow(b.group, w.sigma_images[static_cast<std::size_t>(l.factor)], l.exp));
    }
    if (!(val == FpcWord::generator(static_cast<int>(i))))
      return fail("surjectivity certificate fails at target factor " + std::to_string(i));
  }
  if (w.tau.size() != a.peripherals.size() || a.peripherals.size() != b.peripherals.size())
    return fail("tau is not a bijection");
  SmallOrbGraph tmp = shim(a.ao);
  std::set<std::size_t> used;
  for (std::size_t j = 0; j < w.tau.size(); ++j) {
    std::size_t k = w.tau[j];
    if (k >= b.peripherals.size() || !used.insert(k).second) return fail("tau is not a bijection");
    const PeripheralData& gj = a.peripherals[j];
    const PeripheralData& hk = b.peripherals[k];
    if (gj.i != hk.i) return fail("(i) boundary index differs at j = " + std::to_string(j));
    FpcWord img = sigma.apply(gj.generator);
    FpcWord h = pow(b.group, hk.generator, w.h_exponents.at(j));
    bool match = false;
    for (long epsn : {1L, -1L})
      match |= img == conj(b.group, h, pow(b.group, hk.generator, epsn));
    if (!match) return fail("(ii) conjugacy fails at j = " + std::to_string(j));
    Pi1Element rhs = pi1_mul(a.ao, pi1_mul(a.ao, b.eta_apply(h), hk.o),
                             pi1_pow(a.ao, tmp.boundary_class(gj.i), w.z.at(j)));
    if (!pi1_eq(a.ao, gj.o, rhs)) return fail("(iii) o relation fails at j = " + std::to_string(j));
  }
  rep.ok = true;
  {
    std::vector<long> fa = a.group.factor_orders, fb = b.group.factor_orders;
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    rep.isomorphism = fa == fb;  // epimorphism between isomorphic fpc groups: Hopf
  }
  return rep;
}

std::optional<ProjectionWitness> projection_witness_search(const DecoratedGroup& a,
                                                           const DecoratedGroup& b,
                                                           const std::vector<FpcWord>& sigma_images,
                                                           long bound) {
  ProjectionWitness w;
  w.sigma_images = sigma_images;
  FpcHom sigma;
  try {
    sigma = FpcHom(a.group, b.group, sigma_images);
  } catch (const error&) {
    return std::nullopt;
  }
  SmallOrbGraph tmp = shim(a.ao);
  std::set<std::size_t> used;
  for (std::size_t j = 0; j < a.peripherals.size(); ++j) {
    const PeripheralData& gj = a.peripherals[j];
    FpcWord img = sigma.apply(gj.generator);
    bool assigned = false;
    for (std::size_t k = 0; k < b.peripherals.size() && !assigned; ++k) {
      if (used.count(k) || b.peripherals[k].i != gj.i) continue;
      const PeripheralData& hk = b.peripherals[k];
      for (long m = -bound; m <= bound && !assigned; ++m) {
        FpcWord h = pow(b.group, hk.generator, m);
        bool conj_ok = false;
        for (long epsn : {1L, -1L})
          conj_ok |= img == conj(b.group, h, pow(b.group, hk.generator, epsn));
        if (!conj_ok) continue;
        for (long z = -bound; z <= bound && !assigned; ++z) {
          Pi1Element rhs = pi1_mul(a.ao, pi1_mul(a.ao, b.eta_apply(h), hk.o),
                                   pi1_pow(a.ao, tmp.boundary_class(gj.i), z));
          if (pi1_eq(a.ao, gj.o, rhs)) {
            w.tau.push_back(k);
            w.h_exponents.push_back(m);
            w.z.push_back(z);
            used.insert(k);
            assigned = true;
          }
        }
      }
    }
    if (!assigned) return std::nullopt;
  }
  auto sub = enumerate_subgroup(b.group, sigma_images, 20000, static_cast<int>(bound) + 4);
  for (std::size_t i = 0; i < b.group.factor_count(); ++i) {
    bool found = false;
    for (const auto& el : sub.elements)
      if (el.element == FpcWord::generator(static_cast<int>(i))) {
        w.surjectivity.push_back(el.expression);
        found = true;
        break;
      }
    if (!found) return std::nullopt;
  }
  return w;
}

// ---- constructions ----------------------------------------------------------

DecoratedMorphism degree_one_cover(const SmallOrbGraph& sg) {
  GGMorphism phi;
  phi.target = sg.gog;
  std::vector<EdgePair> pairs;
  for (long i = 1; i <= sg.q; ++i) {
    EdgeId id = "g" + std::to_string(i);
    pairs.push_back({id, id + "'", "u1", "u2"});
  }
  phi.source.graph = Graph({"u1", "u2"}, pairs);
  FpcGroup bu({0});
  FpcGroup bw = sg.p2 == 1 ? FpcGroup() : FpcGroup({sg.p2});
  phi.source.vertex_groups["u1"] = bu;
  phi.source.vertex_groups["u2"] = bw;
  phi.vertex_map["u1"] = "v1";
  phi.vertex_map["u2"] = "v2";
  phi.vertex_homs.emplace("u1", FpcHom(bu, sg.gog.vertex_group("v1"), {sg.s_v("v1", 1)}));
  phi.vertex_homs.emplace("u2", bw.is_trivial()
                                    ? FpcHom(FpcGroup(), sg.gog.vertex_group("v2"), {})
                                    : FpcHom::identity(sg.gog.vertex_group("v2")));
  for (const EdgeId& e : phi.source.graph.edges()) {
    phi.source.edge_orders[e] = 1;
    phi.source.boundary[e] = FpcWord::identity();
    phi.edge_exponents[e] = 1;
    phi.o[e] = FpcWord::identity();
  }
  for (long i = 1; i <= sg.q; ++i) {
    EdgeId id = "g" + std::to_string(i);
    phi.edge_map[id] = sg.edge(i);
    phi.edge_map[id + "'"] = sg.gog.graph.inv(sg.edge(i));
  }
  auto gedge = [&](long d) { return "g" + std::to_string(positive_mod(d, sg.q)); };
  std::vector<APath> paths, gammas;
  for (long j = 1; j <= sg.q; ++j) {
    APath p = trivial_path("u1", j == 1 ? FpcWord::generator(0) : FpcWord::identity());
    FpcWord mid = (sg.p2 == 1 || sg.epsilon(j) == 0) ? FpcWord::identity() : FpcWord::generator(0);
    p.steps.push_back({gedge(j), mid});
    p.steps.push_back({phi.source.graph.inv(gedge(j + 1)), FpcWord::identity()});
    paths.push_back(p);
    gammas.push_back(trivial_path("u1"));
  }
  return make_decorated(sg, phi, "u1", paths, gammas);
}

DecoratedMorphism disk22_example() {
  SmallOrbGraph sg = build_ao(OrbifoldSpec{true, 0, 1, {2, 2}});
  GGMorphism phi;
  phi.target = sg.gog;
  phi.source.graph = Graph({"u1", "u2"}, {{"f1", "f1'", "u1", "u2"},
                                          {"f2", "f2'", "u1", "u2"},
                                          {"f3", "f3'", "u1", "u2"}});
  for (const VertexId& v : phi.source.graph.vertices()) {
    phi.source.vertex_groups[v] = FpcGroup();
    phi.vertex_map[v] = v == "u1" ? "v1" : "v2";
    phi.vertex_homs.emplace(v, FpcHom(FpcGroup(), sg.gog.vertex_group(phi.vertex_map[v]), {}));
  }
  for (const EdgeId& e : phi.source.graph.edges()) {
    phi.source.edge_orders[e] = 1;
    phi.source.boundary[e] = FpcWord::identity();
    phi.edge_exponents[e] = 1;
    phi.o[e] = FpcWord::identity();
    bool fwd = phi.source.graph.alpha(e) == "u1";
    phi.edge_map[e] = fwd ? "e1" : "e1'";
  }
  // o_{f1} = o_{f3} = s_{v1}; t_{f1} = t_{f3} = s_{v2}
  phi.o.at("f1") = FpcWord::generator(0);
  phi.o.at("f3") = FpcWord::generator(0);
  phi.o.at("f1'") = FpcWord::generator(0);
  phi.o.at("f3'") = FpcWord::generator(0);
  APath p1 = trivial_path("u1");
  p1.steps.push_back({"f1", FpcWord::identity()});
  p1.steps.push_back({"f2'", FpcWord::identity()});
  APath p2 = trivial_path("u1");
  p2.steps.push_back({"f2", FpcWord::identity()});
  p2.steps.push_back({"f3'", FpcWord::identity()});
  return make_decorated(sg, phi, "u1", {p1, p2}, {trivial_path("u1"), trivial_path("u1")});
}

namespace {

DecoratedMorphism disk_degree_two(long p1, long p2, bool adjoin_full) {
  require(p1 >= 2 && p2 >= 2 && p2 % 2 == 0, "degree-two disk cover needs cone orders with p2 even");
  SmallOrbGraph sg = build_ao(OrbifoldSpec{true, 0, 1, {p1, p2}});
  GGMorphism phi;
  phi.target = sg.gog;
  phi.source.graph = Graph({"u", "w"}, {{"f1", "f1'", "u", "w"}, {"f2", "f2'", "u", "w"}});
  FpcGroup bu = adjoin_full ? FpcGroup({0, p1}) : FpcGroup({0});
  FpcGroup bw = p2 == 2 ? FpcGroup() : FpcGroup({p2 / 2});
  phi.source.vertex_groups["u"] = bu;
  phi.source.vertex_groups["w"] = bw;
  phi.vertex_map["u"] = "v1";
  phi.vertex_map["w"] = "v2";
  {
    std::vector<FpcWord> images = {sg.s_v("v1", 2)};  // b_u -> s^{k_u}, k_u = 2
    if (adjoin_full) images.push_back(sg.s_v("v1", 1));
    phi.vertex_homs.emplace("u", FpcHom(bu, sg.gog.vertex_group("v1"), images));
  }
  phi.vertex_homs.emplace("w", bw.is_trivial()
                                   ? FpcHom(FpcGroup(), sg.gog.vertex_group("v2"), {})
                                   : FpcHom(bw, sg.gog.vertex_group("v2"), {sg.s_v("v2", 2)}));
  for (const EdgeId& e : phi.source.graph.edges()) {
    phi.source.edge_orders[e] = 1;
    phi.source.boundary[e] = FpcWord::identity();
    phi.edge_exponents[e] = 1;
    phi.o[e] = FpcWord::identity();
    bool fwd = phi.source.graph.alpha(e) == "u";
    phi.edge_map[e] = fwd ? "e1" : "e1'";
  }
  phi.o.at("f2") = sg.s_v("v1", 1);
  phi.o.at("f2'") = sg.s_v("v2", 1);  // t_{f2} = s_{v2}^-1
  // pa = (b_u, f1, 1, f2^-1, 1), pb = (1, f2, c_w, f1^-1, 1)
  APath pa = trivial_path("u", FpcWord::generator(0));
  pa.steps.push_back({"f1", FpcWord::identity()});
  pa.steps.push_back({"f2'", FpcWord::identity()});
  APath pb = trivial_path("u");
  pb.steps.push_back({"f2", bw.is_trivial() ? FpcWord::identity() : FpcWord::generator(0)});
  pb.steps.push_back({"f1'", FpcWord::identity()});
  return make_decorated(sg, phi, "u", {pa, pb}, {trivial_path("u"), trivial_path("u")});
}

}  // namespace

DecoratedMorphism degree_two_disk_cover(long p1, long p2) {
  return disk_degree_two(p1, p2, false);
}

DecoratedMorphism adjfinite_instance(long p1, long p2) {
  return disk_degree_two(p1, p2, true);
}

DecoratedMorphism degree_three_nonspecial_cover(long p2) {
  require(p2 >= 4 && p2 % 2 == 0, "nonspecial cover needs an even second cone order >= 4");
  SmallOrbGraph sg = build_ao(OrbifoldSpec{true, 0, 1, {2, p2}});
  GGMorphism phi;
  phi.target = sg.gog;
  phi.source.graph = Graph({"u", "w1", "w2"}, {{"f1", "f1'", "u", "w1"},
                                               {"f2", "f2'", "u", "w2"},
                                               {"f3", "f3'", "u", "w2"}});
  FpcGroup bu({0});
  FpcGroup bw1({p2});
  FpcGroup bw2({p2 / 2});
  phi.source.vertex_groups["u"] = bu;
  phi.source.vertex_groups["w1"] = bw1;
  phi.source.vertex_groups["w2"] = bw2;
  phi.vertex_map["u"] = "v1";
  phi.vertex_map["w1"] = "v2";
  phi.vertex_map["w2"] = "v2";
  phi.vertex_homs.emplace("u", FpcHom(bu, sg.gog.vertex_group("v1"), {sg.s_v("v1", 3)}));
  phi.vertex_homs.emplace("w1", FpcHom::identity(sg.gog.vertex_group("v2")));
  phi.vertex_homs.emplace("w2", FpcHom(bw2, sg.gog.vertex_group("v2"), {sg.s_v("v2", 2)}));
  for (const EdgeId& e : phi.source.graph.edges()) {
    phi.source.edge_orders[e] = 1;
    phi.source.boundary[e] = FpcWord::identity();
    phi.edge_exponents[e] = 1;
    phi.o[e] = FpcWord::identity();
    bool fwd = phi.source.graph.alpha(e) == "u";
    phi.edge_map[e] = fwd ? "e1" : "e1'";
  }
  phi.o.at("f3") = sg.s_v("v1", 1);
  phi.o.at("f3'") = sg.s_v("v2", -1);
  // p1 winds twice through w1 and w2, p2 once through w2
  APath p1 = trivial_path("u", FpcWord::generator(0));  // b_u lives at the wrap junction
  p1.steps.push_back({"f1", FpcWord::generator(0)});    // c1 with phi(c1) = s_{v2}
  p1.steps.push_back({"f1'", FpcWord::identity()});
  p1.steps.push_back({"f3", FpcWord::identity()});
  p1.steps.push_back({"f2'", FpcWord::identity()});
  APath p2path = trivial_path("u");
  p2path.steps.push_back({"f2", FpcWord::generator(0)});  // q with phi(q) = s_{v2}^2
  p2path.steps.push_back({"f3'", FpcWord::identity()});
  return make_decorated(sg, phi, "u", {p1, p2path},
                        {trivial_path("u"), trivial_path("u")});
}

}  // namespace orbfold

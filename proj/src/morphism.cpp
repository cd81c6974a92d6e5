#include "orbfold/morphism.hpp"

#include <algorithm>
#include <numeric>

namespace orbfold {

const VertexId& GGMorphism::phi_v(const VertexId& u) const {
  auto it = vertex_map.find(u);
  if (it == vertex_map.end()) throw error("morphism has no image for vertex " + u);
  return it->second;
}

const EdgeId& GGMorphism::phi_e(const EdgeId& f) const {
  auto it = edge_map.find(f);
  if (it == edge_map.end()) throw error("morphism has no image for edge " + f);
  return it->second;
}

const FpcHom& GGMorphism::vertex_hom(const VertexId& u) const {
  auto it = vertex_homs.find(u);
  if (it == vertex_homs.end()) throw error("morphism has no vertex hom at " + u);
  return it->second;
}

long GGMorphism::edge_exp(const EdgeId& f) const {
  auto it = edge_exponents.find(f);
  if (it == edge_exponents.end()) throw error("morphism has no edge hom at " + f);
  return it->second;
}

const FpcWord& GGMorphism::o_of(const EdgeId& f) const {
  auto it = o.find(f);
  if (it == o.end()) throw error("morphism has no edge element o at " + f);
  return it->second;
}

FpcWord GGMorphism::t_of(const EdgeId& f) const {
  const EdgeId& fi = source.graph.inv(f);
  const FpcGroup& g = target.vertex_group(target.graph.omega(phi_e(f)));
  return inv(g, o_of(fi));
}

void GGMorphism::validate() const {
  source.validate();
  target.validate();
  for (const VertexId& u : source.graph.vertices()) {
    const VertexId& v = phi_v(u);
    if (!target.graph.has_vertex(v)) throw error("vertex image unknown: " + v);
    const FpcHom& h = vertex_hom(u);
    if (!(h.source() == source.vertex_group(u)) || !(h.target() == target.vertex_group(v)))
      throw error("vertex hom at " + u + " has wrong type");
  }
  for (const EdgeId& f : source.graph.edges()) {
    const EdgeId& e = phi_e(f);
    if (!target.graph.has_edge(e)) throw error("edge image unknown: " + e);
    if (phi_v(source.graph.alpha(f)) != target.graph.alpha(e) ||
        phi_v(source.graph.omega(f)) != target.graph.omega(e))
      throw error("graph map does not commute with alpha/omega at " + f);
    if (phi_e(source.graph.inv(f)) != target.graph.inv(e))
      throw error("graph map does not commute with inversion at " + f);
    if (edge_exp(f) != edge_exp(source.graph.inv(f)))
      throw error("edge homomorphism differs across the pair at " + f);
    // edge hom must be a homomorphism of cyclic groups
    long m = source.edge_order(f);
    long me = target.edge_order(e);
    if (m != 1) {
      FpcWord img_gen = pow(target.vertex_group(target.graph.alpha(e)),
                            target.boundary_word(e), edge_exp(f));
      long ord = img_gen.is_identity()
                     ? 1
                     : order_of(target.vertex_group(target.graph.alpha(e)), img_gen);
      if (m != 0 && ord != 0 && m % ord != 0)
        throw error("edge hom image order does not divide edge order at " + f);
      if (m != 0 && ord == 0) throw error("finite edge group maps to infinite order at " + f);
      (void)me;
    }
    const FpcGroup& ga = target.vertex_group(target.graph.alpha(e));
    if (!valid_word(ga, o_of(f))) throw error("edge element o invalid at " + f);
  }
}

std::vector<Violation> check_morphism(const GGMorphism& m) {
  std::vector<Violation> out;
  try {
    m.validate();
  } catch (const error& e) {
    out.push_back({"structure", "", e.what()});
    return out;
  }
  for (const EdgeId& f : m.source.graph.edges()) {
    const EdgeId& e = m.phi_e(f);
    const VertexId u = m.source.graph.alpha(f);
    const VertexId v = m.target.graph.alpha(e);
    const FpcGroup& gv = m.target.vertex_group(v);
    // t_f^-1 = o_{f^-1} holds by representation; commuting condition (5):
    // phi_u(alpha_f(x)) = o_f alpha_e(phi_f(x)) o_f^-1 on the edge generator
    if (m.source.edge_order(f) != 1) {
      FpcWord lhs = m.vertex_hom(u).apply(m.source.boundary_word(f));
      FpcWord rhs = conj(gv, m.o_of(f), pow(gv, m.target.boundary_word(e), m.edge_exp(f)));
      if (!(lhs == rhs))
        out.push_back({"condition5", f,
                       "phi(alpha_f(gen)) = " + to_string(lhs) + " but o_f alpha_e(phi_f(gen)) o_f^-1 = " +
                           to_string(rhs)});
    }
  }
  return out;
}

APath induced_image(const GGMorphism& m, const APath& q) {
  validate_path(m.source, q);
  APath out;
  out.start = m.phi_v(q.start);
  if (q.steps.empty()) {
    out.a0 = m.vertex_hom(q.start).apply(q.a0);
    return out;
  }
  const FpcGroup& g0 = m.target.vertex_group(out.start);
  out.a0 = mul(g0, m.vertex_hom(q.start).apply(q.a0), m.o_of(q.steps.front().edge));
  VertexId cur = q.start;
  for (std::size_t i = 0; i < q.steps.size(); ++i) {
    const EdgeId& f = q.steps[i].edge;
    cur = m.source.graph.omega(f);
    const VertexId w = m.phi_v(cur);
    const FpcGroup& gw = m.target.vertex_group(w);
    FpcWord a = mul(gw, m.t_of(f), m.vertex_hom(cur).apply(q.steps[i].a));
    if (i + 1 < q.steps.size()) a = mul(gw, a, m.o_of(q.steps[i + 1].edge));
    out.steps.push_back({m.phi_e(f), a});
  }
  return out;
}

Pi1Element induced_hom(const GGMorphism& m, const Pi1Element& x) {
  return pi1_from_path(m.target, induced_image(m, x.path));
}

namespace {

struct ImageSubgroup {
  bool complete = false;
  // pairs (image element, preimage word in B)
  std::vector<std::pair<FpcWord, FpcWord>> elements;
};

ImageSubgroup image_subgroup(const GGMorphism& m, const VertexId& u, long search_bound) {
  const FpcHom& h = m.vertex_hom(u);
  std::vector<FpcWord> gens;
  for (std::size_t i = 0; i < h.source().factor_count(); ++i)
    gens.push_back(h.image(static_cast<int>(i)));
  SubgroupEnumeration se = enumerate_subgroup(
      h.target(), gens, static_cast<std::size_t>(search_bound) * 64,
      static_cast<int>(search_bound));
  ImageSubgroup out;
  out.complete = se.complete;
  for (const SubgroupElement& el : se.elements) out.elements.push_back({el.element, el.expression});
  return out;
}

}  // namespace

DoubleCosetResult f1_membership(const GGMorphism& m, const EdgeId& f1, const EdgeId& f2,
                                long search_bound) {
  const VertexId x = m.source.graph.alpha(f1);
  if (m.source.graph.alpha(f2) != x) throw error("f1_membership: edges start at distinct vertices");
  const EdgeId& e = m.phi_e(f1);
  if (m.phi_e(f2) != e) throw error("f1_membership: edges have distinct images");
  const VertexId v = m.target.graph.alpha(e);
  const FpcGroup& gv = m.target.vertex_group(v);
  long me = m.target.edge_order(e);
  const FpcWord& we = m.target.boundary_word(e);

  ImageSubgroup img = image_subgroup(m, x, search_bound);
  std::vector<long> c_candidates;
  if (me == 1) {
    c_candidates.push_back(0);
  } else if (me > 1) {
    for (long c = 0; c < me; ++c) c_candidates.push_back(c);
  } else {
    for (long c = 0; c <= search_bound; ++c) {
      c_candidates.push_back(c);
      if (c > 0) c_candidates.push_back(-c);
    }
  }
  bool exhaustive_c = me != 0;
  for (long c : c_candidates) {
    FpcWord g = mul(gv, mul(gv, m.o_of(f2), pow(gv, we, -c)), inv(gv, m.o_of(f1)));
    for (const auto& [el, expr] : img.elements) {
      if (el == g) {
        DoubleCosetResult r;
        r.verdict = Verdict::Yes;
        // expression over the images of B_x's factor generators rewrites to b
        r.b = canonical(m.source.vertex_group(x), expr);
        r.c = c;
        return r;
      }
    }
  }
  DoubleCosetResult r;
  r.verdict = (img.complete && exhaustive_c) ? Verdict::No : Verdict::Unknown;
  return r;
}

FoldedReport is_folded(const GGMorphism& m, long search_bound) {
  FoldedReport rep;
  // F0
  for (const VertexId& u : m.source.graph.vertices()) {
    InjectivityReport ir = injectivity(m.vertex_hom(u));
    if (ir.verdict == Verdict::No) rep.f0.push_back({u, *ir.kernel_witness});
    if (ir.verdict == Verdict::Unknown) rep.exact = false;
  }
  // F1
  for (const VertexId& u : m.source.graph.vertices()) {
    auto st = m.source.graph.star(u);
    for (std::size_t i = 0; i < st.size(); ++i)
      for (std::size_t j = 0; j < st.size(); ++j) {
        if (i == j) continue;
        if (m.phi_e(st[i]) != m.phi_e(st[j])) continue;
        DoubleCosetResult dc = f1_membership(m, st[i], st[j], search_bound);
        if (dc.verdict == Verdict::Yes) {
          bool dup = false;
          for (const F1Witness& w : rep.f1)
            if ((w.f1 == st[j] && w.f2 == st[i]) || (w.f1 == st[i] && w.f2 == st[j])) dup = true;
          if (!dup) rep.f1.push_back({st[i], st[j], *dc.b, dc.c});
        }
        if (dc.verdict == Verdict::Unknown) rep.exact = false;
      }
  }
  // F2
  for (const EdgeId& f : m.source.graph.edges()) {
    const VertexId u = m.source.graph.alpha(f);
    const FpcGroup& gb = m.source.vertex_group(u);
    const EdgeId& e = m.phi_e(f);
    const VertexId v = m.target.graph.alpha(e);
    const FpcGroup& gv = m.target.vertex_group(v);
    long me = m.target.edge_order(e);
    FpcWord wconj = conj(gv, m.o_of(f), m.target.boundary_word(e));
    auto in_edge_subgroup = [&](const FpcWord& b) {
      long mf = m.source.edge_order(f);
      if (mf == 1) return b.is_identity();
      return is_power_of(gb, b, m.source.boundary_word(f)).has_value();
    };
    auto image_in_target_edge = [&](const FpcWord& img) -> std::optional<long> {
      if (me == 1) {
        if (img.is_identity()) return 0;
        return std::nullopt;
      }
      return is_power_of(gv, img, wconj);
    };
    if (gb.order() > 0 || gb.is_trivial()) {
      for (const FpcWord& b : enumerate_group(gb)) {
        if (b.is_identity() || in_edge_subgroup(b)) continue;
        auto c = image_in_target_edge(m.vertex_hom(u).apply(b));
        if (c) rep.f2.push_back({f, b, *c});
      }
    } else {
      // bounded search over short elements of an infinite vertex group
      std::vector<FpcWord> frontier = {FpcWord::identity()};
      bool found = false;
      for (long depth = 0; depth < std::min<long>(search_bound, 5) && !found; ++depth) {
        std::vector<FpcWord> next;
        for (const FpcWord& w : frontier) {
          for (std::size_t i = 0; i < gb.factor_count(); ++i) {
            long p = gb.factor_orders[i];
            long lim = p == 0 ? 3 : p - 1;
            for (long sgn : {1L, -1L}) {
              if (p != 0 && sgn < 0) continue;
              for (long ex = 1; ex <= lim; ++ex) {
                FpcWord nb = mul(gb, w, FpcWord::generator(static_cast<int>(i), sgn * ex));
                if (nb.letters.size() <= w.letters.size()) continue;
                if (!in_edge_subgroup(nb)) {
                  auto c = image_in_target_edge(m.vertex_hom(u).apply(nb));
                  if (c) {
                    rep.f2.push_back({f, nb, *c});
                    found = true;
                  }
                }
                if (!found) next.push_back(nb);
              }
            }
          }
          if (found) break;
        }
        frontier = std::move(next);
        if (frontier.size() > 4000) break;
      }
      if (!found) rep.exact = false;
    }
  }
  if (!rep.f0.empty() || !rep.f1.empty() || !rep.f2.empty())
    rep.verdict = Verdict::No;
  else
    rep.verdict = rep.exact ? Verdict::Yes : Verdict::Unknown;
  return rep;
}

LocalSurjReport is_locally_surjective_at(const GGMorphism& m, const VertexId& x) {
  LocalSurjReport rep;
  const VertexId v = m.phi_v(x);
  const FpcGroup& gv = m.target.vertex_group(v);
  ImageSubgroup img = image_subgroup(m, x, 32);
  if (gv.order() == 0) {
    // surjective vertex homomorphisms cover regardless of the star
    bool all = img.complete;
    if (img.complete) {
      for (std::size_t i = 0; i < gv.factor_count() && all; ++i) {
        bool hit = false;
        for (const auto& [el, expr] : img.elements)
          if (el == FpcWord::generator(static_cast<int>(i))) hit = true;
        all = all && hit;
      }
    }
    if (all && img.complete) {
      rep.verdict = Verdict::Yes;
      for (const EdgeId& e : m.target.graph.star(v)) {
        auto st = m.source.graph.star(x);
        for (const EdgeId& f : st)
          if (m.phi_e(f) == e) {
            rep.covers.push_back({e, {f}});
            break;
          }
        if (rep.covers.empty() || rep.covers.back().target_edge != e) {
          rep.verdict = Verdict::No;
          rep.detail = "no preimage edge over " + e;
          return rep;
        }
      }
      return rep;
    }
    rep.verdict = Verdict::Unknown;
    rep.detail = "infinite target vertex group; local surjectivity undecided here";
    return rep;
  }
  std::vector<FpcWord> all = enumerate_group(gv);
  for (const EdgeId& e : m.target.graph.star(v)) {
    long me = m.target.edge_order(e);
    const FpcWord& we = m.target.boundary_word(e);
    long crange = me == 1 ? 1 : order_of(gv, we);
    CosetCover cover{e, {}};
    std::set<std::vector<FpcLetter>> covered;
    for (const EdgeId& f : m.source.graph.star(x)) {
      if (m.phi_e(f) != e) continue;
      bool used = false;
      for (const auto& [h, expr] : img.elements)
        for (long c = 0; c < crange; ++c) {
          FpcWord g = mul(gv, mul(gv, h, m.o_of(f)), pow(gv, we, c));
          if (covered.insert(g.letters).second) used = true;
        }
      if (used) cover.used.push_back(f);
    }
    if (covered.size() != all.size()) {
      rep.verdict = Verdict::No;
      rep.detail = "cosets over edge " + e + " cover " + std::to_string(covered.size()) + " of " +
                   std::to_string(all.size()) + " elements";
      return rep;
    }
    rep.covers.push_back(cover);
  }
  rep.verdict = Verdict::Yes;
  return rep;
}

LocalSurjReport is_locally_surjective(const GGMorphism& m) {
  LocalSurjReport rep;
  rep.verdict = Verdict::Yes;
  for (const VertexId& x : m.source.graph.vertices()) {
    LocalSurjReport r = is_locally_surjective_at(m, x);
    if (r.verdict == Verdict::No) return r;
    if (r.verdict == Verdict::Unknown) {
      rep.verdict = Verdict::Unknown;
      rep.detail = r.detail;
    }
  }
  return rep;
}

GGMorphism identity_morphism(const GraphOfGroups& gog) {
  GGMorphism m;
  m.source = gog;
  m.target = gog;
  for (const VertexId& v : gog.graph.vertices()) {
    m.vertex_map[v] = v;
    m.vertex_homs.emplace(v, FpcHom::identity(gog.vertex_group(v)));
  }
  for (const EdgeId& e : gog.graph.edges()) {
    m.edge_map[e] = e;
    m.edge_exponents[e] = 1;
    m.o[e] = FpcWord::identity();
  }
  return m;
}

GGMorphism compose(const GGMorphism& outer, const GGMorphism& inner) {
  if (!(inner.target == outer.source)) throw error("compose: inner target != outer source");
  GGMorphism m;
  m.source = inner.source;
  m.target = outer.target;
  for (const auto& [u, v] : inner.vertex_map) {
    m.vertex_map[u] = outer.phi_v(v);
    m.vertex_homs.emplace(u, outer.vertex_hom(v).compose(inner.vertex_hom(u)));
  }
  for (const auto& [f, e] : inner.edge_map) {
    m.edge_map[f] = outer.phi_e(e);
    m.edge_exponents[f] = inner.edge_exp(f) * outer.edge_exp(e);
    const VertexId va = inner.target.graph.alpha(e);
    m.o[f] = mul(outer.target.vertex_group(outer.phi_v(va)),
                 outer.vertex_hom(va).apply(inner.o_of(f)), outer.o_of(e));
  }
  return m;
}

GGMorphism inclusion_morphism(const GraphOfGroups& sub, const GraphOfGroups& super) {
  GGMorphism m;
  m.source = sub;
  m.target = super;
  for (const VertexId& v : sub.graph.vertices()) {
    if (!super.graph.has_vertex(v)) throw error("inclusion: vertex not in super graph: " + v);
    if (!(sub.vertex_group(v) == super.vertex_group(v)))
      throw error("inclusion: vertex groups differ at " + v);
    m.vertex_map[v] = v;
    m.vertex_homs.emplace(v, FpcHom::identity(sub.vertex_group(v)));
  }
  for (const EdgeId& e : sub.graph.edges()) {
    if (!super.graph.has_edge(e)) throw error("inclusion: edge not in super graph: " + e);
    m.edge_map[e] = e;
    m.edge_exponents[e] = 1;
    m.o[e] = FpcWord::identity();
  }
  return m;
}

GGMorphism restriction(const GGMorphism& m, const std::set<EdgeId>& removed) {
  GraphOfGroups sub = subgraph_of_groups(m.source, removed);
  return compose(m, inclusion_morphism(sub, m.source));
}

ComplexityReport complexity(const GGMorphism& m, const VertexId& base) {
  ComplexityReport rep;
  rep.edge_count = m.source.graph.edges().size();
  if (m.source.trivial_edge_groups() && m.source.graph.is_connected()) {
    rep.rank_torsion = rank_tn(m.source, base);
    rep.c = {static_cast<long>(rep.rank_torsion->rank),
             static_cast<long>(rep.rank_torsion->rank - rep.rank_torsion->torsion),
             static_cast<long>(rep.edge_count)};
  } else if (!m.source.trivial_edge_groups()) {
    rep.notes.push_back("rank/torsion omitted: nontrivial edge groups (no splitting supplied)");
  } else {
    rep.notes.push_back("rank/torsion omitted: disconnected source");
  }
  long ce = 0;
  bool ce_defined = true;
  for (const EdgePair& p : m.source.graph.pairs()) {
    if (m.source.edge_order(p.id) == 1) continue;
    ++rep.nontrivial_edge_pairs;
    const EdgeId& e = m.phi_e(p.id);
    long me = m.target.edge_order(e);
    long k = m.edge_exp(p.id);
    long index;
    if (me == 0) {
      if (k == 0) {
        ce_defined = false;
        rep.notes.push_back("c_E undefined: infinite index over " + p.id);
        continue;
      }
      index = k < 0 ? -k : k;
    } else {
      index = std::gcd(((k % me) + me) % me, me);  // gcd(0, me) = me
    }
    ce += index;
  }
  if (ce_defined) rep.c_e = ce;
  return rep;
}

GGMorphism wedge_morphism(const GraphOfGroups& target, const VertexId& base,
                          const std::vector<APath>& loops) {
  GGMorphism m;
  m.target = target;
  std::vector<VertexId> vs = {"u0"};
  std::vector<EdgePair> pairs;
  m.vertex_map["u0"] = base;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const APath& p = loops[i];
    validate_path(target, p);
    if (p.start != base || !is_closed(target, p))
      throw error("wedge_morphism: paths must be closed at the base");
    if (p.steps.empty()) throw error("wedge_morphism: paths must have positive length");
    VertexId prev = "u0";
    for (std::size_t j = 0; j < p.steps.size(); ++j) {
      bool last = j + 1 == p.steps.size();
      VertexId next = last ? "u0" : "u" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      EdgeId f = "f" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      if (!last) {
        vs.push_back(next);
        m.vertex_map[next] = target.graph.omega(p.steps[j].edge);
      }
      pairs.push_back({f, f + "'", prev, next});
      m.edge_map[f] = p.steps[j].edge;
      m.edge_map[f + "'"] = target.graph.inv(p.steps[j].edge);
      prev = next;
    }
  }
  m.source.graph = Graph(vs, pairs);
  for (const VertexId& v : m.source.graph.vertices()) {
    m.source.vertex_groups[v] = FpcGroup();
    m.vertex_homs.emplace(v, FpcHom(FpcGroup(), target.vertex_group(m.vertex_map.at(v)), {}));
  }
  for (const EdgeId& e : m.source.graph.edges()) {
    m.source.edge_orders[e] = 1;
    m.source.boundary[e] = FpcWord::identity();
    m.edge_exponents[e] = 1;
    m.o[e] = FpcWord::identity();
  }
  // o_{f_{i,1}} = a_{i,0}, t_{f_{i,j}} = a_{i,j} (stored as o of the reverse)
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const APath& p = loops[i];
    m.o["f" + std::to_string(i + 1) + "_1"] = p.a0;
    for (std::size_t j = 0; j < p.steps.size(); ++j) {
      EdgeId f = "f" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      const FpcGroup& gw = target.vertex_group(target.graph.omega(p.steps[j].edge));
      m.o[f + "'"] = inv(gw, p.steps[j].a);
    }
  }
  return m;
}

int compare_c(const ComplexityReport& a, const ComplexityReport& b) {
  if (!a.c || !b.c) throw error("compare_c: c-complexity unavailable");
  if (*a.c != *b.c) return *a.c < *b.c ? -1 : 1;
  return 0;
}

int compare_d(const ComplexityReport& a, const ComplexityReport& b) {
  if (!a.c_e || !b.c_e) throw error("compare_d: c_E unavailable");
  auto da = a.d(), db = b.d();
  if (da != db) return da < db ? -1 : 1;
  return 0;
}

}  // namespace orbfold

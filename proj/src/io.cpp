#include "orbfold/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace orbfold {

namespace {

[[noreturn]] void schema_error(const std::string& at, const std::string& what) {
  throw error("schema error at " + (at.empty() ? "/" : at) + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& at) {
  if (!j.is_object() || !j.contains(key)) schema_error(at + "/" + key, "missing field");
  return j.at(key);
}

long need_int(const Json& j, const std::string& at) {
  if (!j.is_number_integer()) schema_error(at, "expected an integer");
  return j.get<long>();
}

std::string need_str(const Json& j, const std::string& at) {
  if (!j.is_string()) schema_error(at, "expected a string");
  return j.get<std::string>();
}

}  // namespace

Json to_json(const FpcGroup& g) { return Json{{"orders", g.factor_orders}}; }

Json to_json(const FpcWord& w) {
  Json arr = Json::array();
  for (const FpcLetter& l : w.letters) arr.push_back(Json::array({l.factor, l.exp}));
  return arr;
}

Json to_json(const Graph& g) {
  Json out;
  out["vertices"] = Json::array();
  for (const VertexId& v : g.vertices()) out["vertices"].push_back(v);
  out["edges"] = Json::array();
  for (const EdgePair& p : g.pairs())
    out["edges"].push_back(Json{{"id", p.id}, {"inv", p.inv}, {"from", p.from}, {"to", p.to}});
  return out;
}

Json to_json(const GraphOfGroups& gog) {
  Json out;
  out["graph"] = to_json(gog.graph);
  out["vertex_groups"] = Json::object();
  for (const auto& [v, grp] : gog.vertex_groups) out["vertex_groups"][v] = to_json(grp);
  out["edge_groups"] = Json::object();
  for (const auto& [e, m] : gog.edge_orders) out["edge_groups"][e] = m;
  out["boundary"] = Json::object();
  for (const auto& [e, w] : gog.boundary) out["boundary"][e] = to_json(w);
  return out;
}

Json to_json(const APath& p) {
  Json out;
  out["start"] = p.start;
  out["a0"] = to_json(p.a0);
  out["steps"] = Json::array();
  for (const APath::Step& s : p.steps)
    out["steps"].push_back(Json{{"edge", s.edge}, {"a", to_json(s.a)}});
  return out;
}

Json to_json(const GGMorphism& m) {
  Json out;
  out["source"] = to_json(m.source);
  out["target"] = to_json(m.target);
  out["vertex_map"] = Json::object();
  for (const auto& [u, v] : m.vertex_map) out["vertex_map"][u] = v;
  out["edge_map"] = Json::object();
  for (const auto& [f, e] : m.edge_map) out["edge_map"][f] = e;
  out["vertex_homs"] = Json::object();
  for (const auto& [u, h] : m.vertex_homs) {
    Json images = Json::array();
    for (const FpcWord& w : h.images()) images.push_back(to_json(w));
    out["vertex_homs"][u] = images;
  }
  out["edge_exponents"] = Json::object();
  for (const auto& [f, k] : m.edge_exponents) out["edge_exponents"][f] = k;
  out["o"] = Json::object();
  for (const auto& [f, w] : m.o) out["o"][f] = to_json(w);
  return out;
}

Json to_json(const OrbifoldSpec& spec) {
  return Json{{"orientable", spec.orientable},
              {"genus", spec.genus},
              {"boundary", spec.boundary_count},
              {"cone_orders", spec.cone_orders}};
}

Json to_json(const OrbifoldPresentation& pres) {
  Json out;
  out["generators"] = pres.generators;
  out["relators"] = Json::array();
  for (const auto& rel : pres.relators) {
    Json r = Json::array();
    for (const FpcLetter& l : rel)
      r.push_back(Json::array({pres.generators[static_cast<std::size_t>(l.factor)], l.exp}));
    out["relators"].push_back(r);
  }
  if (pres.fpc_model) {
    out["fpc_model"] = to_json(*pres.fpc_model);
    Json images = Json::object();
    for (std::size_t i = 0; i < pres.generators.size(); ++i)
      images[pres.generators[i]] = to_json(pres.generator_images[i]);
    out["generator_images"] = images;
  }
  return out;
}

Json to_json(const DecoratedMorphism& dm) {
  Json out;
  out["spec"] = to_json(dm.sg.spec);
  out["morphism"] = to_json(dm.phi);
  out["base"] = dm.base;
  out["paths"] = Json::array();
  for (const APath& p : dm.paths) out["paths"].push_back(to_json(p));
  out["gammas"] = Json::array();
  for (const APath& p : dm.gammas) out["gammas"].push_back(to_json(p));
  return out;
}

Json to_json(const std::vector<NielsenMove>& trace) {
  Json out = Json::array();
  for (const NielsenMove& m : trace) {
    const char* kind = m.kind == NielsenMove::Kind::T1   ? "T1"
                       : m.kind == NielsenMove::Kind::T2 ? "T2"
                                                         : "T3";
    Json entry{{"move", kind}, {"i", m.i}};
    if (m.kind != NielsenMove::Kind::T1) entry["j"] = m.j;
    out.push_back(entry);
  }
  return out;
}

Json to_json(const ComplexityReport& rep) {
  Json out;
  if (rep.rank_torsion) {
    out["rank"] = rep.rank_torsion->rank;
    out["torsion"] = rep.rank_torsion->torsion;
  }
  out["edge_count"] = rep.edge_count;
  if (rep.c) out["c"] = *rep.c;
  out["nontrivial_edge_pairs"] = rep.nontrivial_edge_pairs;
  if (rep.c_e) out["c_E"] = *rep.c_e;
  if (!rep.notes.empty()) out["notes"] = rep.notes;
  return out;
}

Json to_json(const FoldedReport& rep) {
  Json out;
  out["verdict"] = rep.verdict == Verdict::Yes   ? "folded"
                   : rep.verdict == Verdict::No ? "not folded"
                                                : "unknown";
  out["exact"] = rep.exact;
  out["F0"] = Json::array();
  for (const auto& w : rep.f0)
    out["F0"].push_back(Json{{"vertex", w.u}, {"kernel_witness", to_json(w.kernel_elem)}});
  out["F1"] = Json::array();
  for (const auto& w : rep.f1)
    out["F1"].push_back(Json{{"f1", w.f1}, {"f2", w.f2}, {"b", to_json(w.b)}, {"c", w.c}});
  out["F2"] = Json::array();
  for (const auto& w : rep.f2)
    out["F2"].push_back(Json{{"f", w.f}, {"b", to_json(w.b)}, {"c", w.c}});
  return out;
}

Json to_json(const LocalGraph& lg) {
  Json out;
  out["vertex"] = lg.vertex;
  out["nodes"] = lg.nodes;
  out["arcs"] = Json::array();
  for (const auto& arc : lg.arcs)
    out["arcs"].push_back(
        Json{{"from", arc.from}, {"to", arc.to}, {"j", arc.j + 1}, {"b", to_json(arc.b)}});
  out["components"] = Json::array();
  for (const auto& comp : lg.components)
    out["components"].push_back(Json{{"circle", comp.circle}, {"nodes", comp.nodes}});
  return out;
}

Json to_json(const AlmostCoverDescriptor& d) {
  Json out;
  out["exceptional"] = d.exceptional;
  out["degree"] = d.degree;
  out["k_u"] = d.k_u;
  out["d"] = d.d;
  out["special"] = d.special;
  out["circle_lengths"] = Json::object();
  for (const auto& [w, l] : d.circle_length) out["circle_lengths"][w] = l;
  out["local_degrees"] = Json::object();
  for (const auto& [w, k] : d.local_degree) out["local_degrees"][w] = k;
  out["cone_orders"] = Json::object();
  for (const auto& [w, p] : d.cone_orders) out["cone_orders"][w] = p;
  out["boundary_data"] = Json::array();
  for (const auto& [i, z] : d.boundary_data) out["boundary_data"].push_back(Json::array({i, z}));
  if (d.adjoined_factor) out["adjoined_factor"] = *d.adjoined_factor;
  if (!d.notes.empty()) out["notes"] = d.notes;
  return out;
}

FpcGroup group_from_json(const Json& j, const std::string& at) {
  const Json& orders = need(j, "orders", at);
  if (!orders.is_array()) schema_error(at + "/orders", "expected an array");
  std::vector<long> os;
  for (std::size_t i = 0; i < orders.size(); ++i)
    os.push_back(need_int(orders[i], at + "/orders/" + std::to_string(i)));
  try {
    return FpcGroup(os);
  } catch (const error& e) {
    schema_error(at + "/orders", e.what());
  }
}

FpcWord word_from_json(const Json& j, const std::string& at) {
  if (!j.is_array()) schema_error(at, "expected an array of [factor, exp] pairs");
  FpcWord w;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& l = j[i];
    if (!l.is_array() || l.size() != 2)
      schema_error(at + "/" + std::to_string(i), "expected [factor, exp]");
    w.letters.push_back({static_cast<int>(need_int(l[0], at + "/" + std::to_string(i) + "/0")),
                         need_int(l[1], at + "/" + std::to_string(i) + "/1")});
  }
  return w;
}

Graph graph_from_json(const Json& j, const std::string& at) {
  const Json& vs = need(j, "vertices", at);
  const Json& es = need(j, "edges", at);
  if (!vs.is_array()) schema_error(at + "/vertices", "expected an array");
  if (!es.is_array()) schema_error(at + "/edges", "expected an array");
  std::vector<VertexId> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i)
    vertices.push_back(need_str(vs[i], at + "/vertices/" + std::to_string(i)));
  std::vector<EdgePair> pairs;
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string here = at + "/edges/" + std::to_string(i);
    pairs.push_back({need_str(need(es[i], "id", here), here + "/id"),
                     need_str(need(es[i], "inv", here), here + "/inv"),
                     need_str(need(es[i], "from", here), here + "/from"),
                     need_str(need(es[i], "to", here), here + "/to")});
  }
  try {
    return Graph(vertices, pairs);
  } catch (const error& e) {
    schema_error(at, e.what());
  }
}

GraphOfGroups gog_from_json(const Json& j, const std::string& at) {
  GraphOfGroups out;
  out.graph = graph_from_json(need(j, "graph", at), at + "/graph");
  const Json& vg = need(j, "vertex_groups", at);
  for (const VertexId& v : out.graph.vertices()) {
    if (!vg.contains(v)) schema_error(at + "/vertex_groups/" + v, "missing vertex group");
    out.vertex_groups[v] = group_from_json(vg.at(v), at + "/vertex_groups/" + v);
  }
  const Json& eg = need(j, "edge_groups", at);
  const Json& bd = need(j, "boundary", at);
  for (const EdgeId& e : out.graph.edges()) {
    if (!eg.contains(e)) schema_error(at + "/edge_groups/" + e, "missing edge group");
    out.edge_orders[e] = need_int(eg.at(e), at + "/edge_groups/" + e);
    if (!bd.contains(e)) schema_error(at + "/boundary/" + e, "missing boundary word");
    out.boundary[e] = word_from_json(bd.at(e), at + "/boundary/" + e);
  }
  try {
    out.validate();
  } catch (const error& e) {
    schema_error(at, e.what());
  }
  return out;
}

APath path_from_json(const Json& j, const std::string& at) {
  APath p;
  p.start = need_str(need(j, "start", at), at + "/start");
  p.a0 = word_from_json(need(j, "a0", at), at + "/a0");
  const Json& steps = need(j, "steps", at);
  if (!steps.is_array()) schema_error(at + "/steps", "expected an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::string here = at + "/steps/" + std::to_string(i);
    p.steps.push_back({need_str(need(steps[i], "edge", here), here + "/edge"),
                       word_from_json(need(steps[i], "a", here), here + "/a")});
  }
  return p;
}

GGMorphism morphism_from_json(const Json& j, std::vector<Violation>* extra,
                              const std::string& at) {
  GGMorphism m;
  m.source = gog_from_json(need(j, "source", at), at + "/source");
  m.target = gog_from_json(need(j, "target", at), at + "/target");
  const Json& vm = need(j, "vertex_map", at);
  const Json& em = need(j, "edge_map", at);
  const Json& vh = need(j, "vertex_homs", at);
  const Json& ee = need(j, "edge_exponents", at);
  const Json& oo = need(j, "o", at);
  for (const VertexId& u : m.source.graph.vertices()) {
    if (!vm.contains(u)) schema_error(at + "/vertex_map/" + u, "missing image");
    m.vertex_map[u] = need_str(vm.at(u), at + "/vertex_map/" + u);
    if (!vh.contains(u)) schema_error(at + "/vertex_homs/" + u, "missing vertex hom");
    const Json& images = vh.at(u);
    if (!images.is_array()) schema_error(at + "/vertex_homs/" + u, "expected an array of words");
    std::vector<FpcWord> ws;
    for (std::size_t i = 0; i < images.size(); ++i)
      ws.push_back(word_from_json(images[i], at + "/vertex_homs/" + u + "/" + std::to_string(i)));
    if (!m.target.graph.has_vertex(m.vertex_map[u]))
      schema_error(at + "/vertex_map/" + u, "unknown target vertex");
    try {
      m.vertex_homs.emplace(
          u, FpcHom(m.source.vertex_group(u), m.target.vertex_group(m.vertex_map[u]), ws));
    } catch (const error& e) {
      schema_error(at + "/vertex_homs/" + u, e.what());
    }
  }
  for (const EdgeId& f : m.source.graph.edges()) {
    if (!em.contains(f)) schema_error(at + "/edge_map/" + f, "missing image");
    m.edge_map[f] = need_str(em.at(f), at + "/edge_map/" + f);
    if (!ee.contains(f)) schema_error(at + "/edge_exponents/" + f, "missing exponent");
    m.edge_exponents[f] = need_int(ee.at(f), at + "/edge_exponents/" + f);
    if (!oo.contains(f)) schema_error(at + "/o/" + f, "missing edge element");
    m.o[f] = word_from_json(oo.at(f), at + "/o/" + f);
  }
  try {
    m.validate();
  } catch (const error& e) {
    schema_error(at, e.what());
  }
  // optional redundant t table: check t_f = o_{f^-1}^-1
  if (j.contains("t") && extra) {
    const Json& tt = j.at("t");
    for (const EdgeId& f : m.source.graph.edges()) {
      if (!tt.contains(f)) continue;
      FpcWord claimed = word_from_json(tt.at(f), at + "/t/" + f);
      if (!(canonical(m.target.vertex_group(m.target.graph.omega(m.phi_e(f))), claimed) ==
            m.t_of(f)))
        extra->push_back({"involution", f, "t(f)^-1 != o(inv(f))"});
    }
  }
  return m;
}

OrbifoldSpec spec_from_json(const Json& j, const std::string& at) {
  OrbifoldSpec spec;
  const Json& ori = need(j, "orientable", at);
  if (!ori.is_boolean()) schema_error(at + "/orientable", "expected a boolean");
  spec.orientable = ori.get<bool>();
  spec.genus = need_int(need(j, "genus", at), at + "/genus");
  spec.boundary_count = need_int(need(j, "boundary", at), at + "/boundary");
  const Json& cones = need(j, "cone_orders", at);
  if (!cones.is_array()) schema_error(at + "/cone_orders", "expected an array");
  for (std::size_t i = 0; i < cones.size(); ++i)
    spec.cone_orders.push_back(need_int(cones[i], at + "/cone_orders/" + std::to_string(i)));
  try {
    spec.validate();
  } catch (const error& e) {
    schema_error(at, e.what());
  }
  return spec;
}

DecoratedMorphism decorated_from_json(const Json& j, const std::string& at) {
  OrbifoldSpec spec = spec_from_json(need(j, "spec", at), at + "/spec");
  SmallOrbGraph sg = build_ao(spec);
  GGMorphism phi = morphism_from_json(need(j, "morphism", at), nullptr, at + "/morphism");
  VertexId base = need_str(need(j, "base", at), at + "/base");
  const Json& ps = need(j, "paths", at);
  const Json& gs = need(j, "gammas", at);
  std::vector<APath> paths, gammas;
  for (std::size_t i = 0; i < ps.size(); ++i)
    paths.push_back(path_from_json(ps[i], at + "/paths/" + std::to_string(i)));
  for (std::size_t i = 0; i < gs.size(); ++i)
    gammas.push_back(path_from_json(gs[i], at + "/gammas/" + std::to_string(i)));
  try {
    return make_decorated(sg, phi, base, paths, gammas);
  } catch (const error& e) {
    schema_error(at, e.what());
  }
}

std::vector<NielsenMove> trace_from_json(const Json& j, const std::string& at) {
  if (!j.is_array()) schema_error(at, "expected an array of moves");
  std::vector<NielsenMove> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string here = at + "/" + std::to_string(i);
    std::string kind = need_str(need(j[i], "move", here), here + "/move");
    NielsenMove m;
    if (kind == "T1")
      m.kind = NielsenMove::Kind::T1;
    else if (kind == "T2")
      m.kind = NielsenMove::Kind::T2;
    else if (kind == "T3")
      m.kind = NielsenMove::Kind::T3;
    else
      schema_error(here + "/move", "expected T1, T2 or T3");
    m.i = static_cast<int>(need_int(need(j[i], "i", here), here + "/i"));
    if (m.kind != NielsenMove::Kind::T1)
      m.j = static_cast<int>(need_int(need(j[i], "j", here), here + "/j"));
    out.push_back(m);
  }
  return out;
}

std::vector<FpcWord> tuple_from_json(const Json& j, const std::string& at) {
  const Json& entries = need(j, "entries", at);
  if (!entries.is_array()) schema_error(at + "/entries", "expected an array");
  std::vector<FpcWord> out;
  for (std::size_t i = 0; i < entries.size(); ++i)
    out.push_back(word_from_json(entries[i], at + "/entries/" + std::to_string(i)));
  return out;
}

std::string to_dot(const GraphOfGroups& gog) {
  std::ostringstream os;
  os << "digraph gog {\n";
  for (const VertexId& v : gog.graph.vertices()) {
    os << "  \"" << v << "\" [label=\"" << v << " : ";
    const FpcGroup& g = gog.vertex_group(v);
    if (g.is_trivial())
      os << "1";
    else
      for (std::size_t i = 0; i < g.factor_count(); ++i) {
        if (i) os << "*";
        if (g.factor_orders[i] == 0)
          os << "Z";
        else
          os << "Z" << g.factor_orders[i];
      }
    os << "\"];\n";
  }
  for (const EdgePair& p : gog.graph.pairs()) {
    os << "  \"" << p.from << "\" -> \"" << p.to << "\" [label=\"" << p.id;
    if (gog.edge_order(p.id) != 1)
      os << " (" << (gog.edge_order(p.id) == 0 ? std::string("Z")
                                               : "Z" + std::to_string(gog.edge_order(p.id)))
         << ")";
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const LocalGraph& lg) {
  std::ostringstream os;
  os << "digraph local {\n";
  for (const EdgeId& n : lg.nodes) os << "  \"" << n << "\";\n";
  for (const auto& arc : lg.arcs)
    os << "  \"" << arc.from << "\" -> \"" << arc.to << "\" [label=\"(" << arc.j + 1 << ", "
       << to_string(arc.b) << ")\"];\n";
  os << "}\n";
  return os.str();
}

Json load_json(const std::string& path_or_dash) {
  try {
    if (path_or_dash == "-") {
      std::ostringstream buf;
      buf << std::cin.rdbuf();
      return Json::parse(buf.str());
    }
    std::ifstream in(path_or_dash);
    if (!in) throw error("cannot open " + path_or_dash);
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw error(std::string("JSON parse error: ") + e.what());
  }
}

void write_output(const std::string& path_or_dash, const std::string& text) {
  if (path_or_dash.empty() || path_or_dash == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path_or_dash);
  if (!out) throw error("cannot open " + path_or_dash + " for writing");
  out << text;
}

}  // namespace orbfold

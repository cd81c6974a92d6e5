#include "orbfold/scenarios.hpp"

#include <random>

#include "orbfold/decorated.hpp"

namespace orbfold {

namespace {

void check(ScenarioReport& rep, const std::string& what, bool ok) {
  rep.checks.push_back({what, ok});
}

// the worked D^2(2,2) example: decomposition types and the local graph
ScenarioReport disk22_local_graph() {
  ScenarioReport rep;
  rep.name = "d2-2-2-local-graph";
  DecoratedMorphism dm = disk22_example();
  check(rep, "p1 decomposes as c_1 with trivial conjugator",
        dm.decomposition[0].i == 1 && dm.decomposition[0].z == 1 &&
            dm.decomposition[0].a.is_identity());
  check(rep, "p2 decomposes as s_v1^-1 c_1 s_v1",
        dm.decomposition[1].i == 1 && dm.decomposition[1].z == 1 &&
            dm.decomposition[1].a == FpcWord::generator(0));
  DecoratedGroup dg = induced_decorated_group(dm);
  check(rep, "H(p1, gamma1) has peripheral type (1, 1)",
        pi1_is_identity(dg.peripherals[0].o) && dg.peripherals[0].i == 1);
  check(rep, "H(p2, gamma2) has peripheral type (s_v1^-1, 1)",
        pi1_eq(dm.sg.gog, dg.peripherals[1].o, dm.sg.theta_s1()) && dg.peripherals[1].i == 1);
  LocalGraph lg = local_graph(dm, "u1");
  bool f3f2 = false, f2f1 = false;
  for (const auto& arc : lg.arcs) {
    if (arc.from == "f3" && arc.to == "f2" && arc.j == 1 && arc.b.is_identity()) f3f2 = true;
    if (arc.from == "f2" && arc.to == "f1" && arc.j == 0 && arc.b.is_identity()) f2f1 = true;
  }
  check(rep, "local graph at u1 has edge f3 -> f2 with label (2, 1)", f3f2);
  check(rep, "local graph at u1 has edge f2 -> f1 with label (1, 1)", f2f1);
  check(rep, "local graph at u1 has exactly these edges", lg.arcs.size() == 2);
  check(rep, "the morphism is tame", is_tame(dm).tame);
  return rep;
}

// the commuting square: elementary fold then A2 versus A2 then fold
ScenarioReport fold_commutes_a2(unsigned long seed) {
  ScenarioReport rep;
  rep.name = "fold-commutes-a2";
  std::mt19937_64 rng(seed);
  for (int instance = 0; instance < 3; ++instance) {
    SmallOrbGraph sg = build_ao(OrbifoldSpec{true, 0, 1, {2, 2}});
    GGMorphism phi;
    phi.target = sg.gog;
    phi.source.graph = Graph({"u1", "u2"}, {{"f1", "f1'", "u1", "u2"},
                                            {"f2", "f2'", "u1", "u2"},
                                            {"f3", "f3'", "u1", "u2"},
                                            {"f4", "f4'", "u1", "u2"}});
    FpcGroup bu({2});
    phi.source.vertex_groups["u1"] = bu;
    phi.source.vertex_groups["u2"] = FpcGroup();
    phi.vertex_map["u1"] = "v1";
    phi.vertex_map["u2"] = "v2";
    phi.vertex_homs.emplace("u1", FpcHom::identity(sg.gog.vertex_group("v1")));
    phi.vertex_homs.emplace("u2", FpcHom(FpcGroup(), sg.gog.vertex_group("v2"), {}));
    for (const EdgeId& e : phi.source.graph.edges()) {
      phi.source.edge_orders[e] = 1;
      phi.source.boundary[e] = FpcWord::identity();
      phi.edge_exponents[e] = 1;
      phi.o[e] = FpcWord::identity();
      bool fwd = phi.source.graph.alpha(e) == "u1";
      phi.edge_map[e] = fwd ? "e1" : "e1'";
    }
    FpcWord gen = FpcWord::generator(0);
    // x1 = t_{f} o_{f'} = s_{v2} with t shared across the foldable pair
    std::uniform_int_distribution<int> coin(0, 1);
    FpcWord rho = coin(rng) == 1 ? FpcWord::generator(0) : FpcWord::identity();
    const FpcGroup& g2 = sg.gog.vertex_group("v2");
    phi.o.at("f1'") = rho;
    phi.o.at("f3'") = rho;
    phi.o.at("f2'") = mul(g2, rho, FpcWord::generator(0));
    phi.o.at("f4'") = mul(g2, rho, FpcWord::generator(0));
    APath p1 = trivial_path("u1", gen);
    p1.steps.push_back({"f1", FpcWord::identity()});
    p1.steps.push_back({"f2'", FpcWord::identity()});
    APath p2 = trivial_path("u1", gen);
    p2.steps.push_back({"f3", FpcWord::identity()});
    p2.steps.push_back({"f4'", FpcWord::identity()});
    DecoratedMorphism dm =
        make_decorated(sg, phi, "u1", {p1, p2}, {trivial_path("u1"), trivial_path("u1")});
    DecoratedMorphism fold_first = dm_elementary_fold(dm, "f1", "f3");
    DecoratedMorphism route1 = dm_move_a2(fold_first, "f2", gen);
    DecoratedMorphism a2_first = dm_move_a2(dm, "f2", gen);
    DecoratedMorphism route2 = dm_elementary_fold(a2_first, "f1", "f3");
    DecoratedGroup a = induced_decorated_group(route1);
    DecoratedGroup b = induced_decorated_group(route2);
    std::vector<FpcWord> ids;
    for (std::size_t i = 0; i < a.group.factor_count(); ++i)
      ids.push_back(FpcWord::generator(static_cast<int>(i)));
    auto w1 = projection_witness_search(a, b, ids);
    auto w2 = projection_witness_search(b, a, ids);
    bool ok = w1 && w2 && verify_projection(a, b, *w1).ok && verify_projection(b, a, *w2).ok;
    check(rep, "instance " + std::to_string(instance) +
                   ": both orders induce isomorphic decorated groups",
          ok);
  }
  return rep;
}

// the degree-one almost cover of the standard-tuple construction
ScenarioReport degree_one() {
  ScenarioReport rep;
  rep.name = "degree-one-cover";
  for (const OrbifoldSpec spec : {OrbifoldSpec{true, 0, 3, {2, 3}},
                                  OrbifoldSpec{true, 0, 1, {2, 2}},
                                  OrbifoldSpec{true, 0, 2, {5}}}) {
    SmallOrbGraph sg = build_ao(spec);
    DecoratedMorphism dm = degree_one_cover(sg);
    std::string tag = "F(q=" + std::to_string(spec.boundary_count) + ")";
    bool formulas = true;
    for (const VertexId& u : dm.phi.source.graph.vertices())
      formulas &= check_local_path_formulas(dm, u).ok;
    check(rep, tag + ": local path formulas hold", formulas);
    AlmostCoverDescriptor desc = extract_almost_cover(dm, "u1");
    check(rep, tag + ": extraction has degree one", desc.degree == 1 && desc.k_u == 1);
    check(rep, tag + ": adjoined index equals |A_v1|", desc.d == sg.p1);
    check(rep, tag + ": the covering is special", desc.special);
  }
  return rep;
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"d2-2-2-local-graph", "fold-commutes-a2", "degree-one-cover"};
}

ScenarioReport run_scenario(const std::string& name, unsigned long seed) {
  if (name == "d2-2-2-local-graph") return disk22_local_graph();
  if (name == "fold-commutes-a2") return fold_commutes_a2(seed);
  if (name == "degree-one-cover") return degree_one();
  throw error("unknown scenario: " + name);
}

}  // namespace orbfold

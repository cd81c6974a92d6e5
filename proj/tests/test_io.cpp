#include <random>

#include "dmgen.hpp"
#include "doctest.h"
#include "gen.hpp"
#include "orbfold/io.hpp"

using namespace orbfold;
using namespace testutil;

TEST_CASE("round trips on every schema") {
  std::mt19937_64 rng(808);
  SUBCASE("graph of groups") {
    for (int i = 0; i < 10; ++i) {
      GraphOfGroups g = random_trivial_gog(rng);
      CHECK(gog_from_json(to_json(g)) == g);
    }
    GraphOfGroups amalgam = make_unfold_instance().m.source;
    CHECK(gog_from_json(to_json(amalgam)) == amalgam);
  }
  SUBCASE("paths") {
    GraphOfGroups g = random_trivial_gog(rng);
    VertexId base = *g.graph.vertices().begin();
    APath p = random_loop(rng, g, base, 3);
    CHECK(path_from_json(to_json(p)) == p);
  }
  SUBCASE("morphisms") {
    for (int i = 0; i < 10; ++i) {
      GGMorphism m = random_morphism(rng, random_target(rng, true));
      CHECK(morphism_from_json(to_json(m)) == m);
    }
  }
  SUBCASE("orbifold specs") {
    OrbifoldSpec spec{true, 0, 2, {3, 7}};
    CHECK(spec_from_json(to_json(spec)) == spec);
  }
  SUBCASE("decorated morphisms") {
    DecoratedMorphism dm = disk22_example();
    Json j = to_json(dm);
    DecoratedMorphism back = decorated_from_json(j);
    CHECK(back.phi == dm.phi);
    CHECK(back.paths == dm.paths);
    CHECK(back.gammas == dm.gammas);
  }
  SUBCASE("nielsen traces") {
    std::vector<NielsenMove> trace = {{NielsenMove::Kind::T1, 1, 0},
                                      {NielsenMove::Kind::T2, 0, 1},
                                      {NielsenMove::Kind::T3, 2, 0}};
    CHECK(trace_from_json(to_json(trace)) == trace);
  }
}

TEST_CASE("deterministic serialization") {
  std::mt19937_64 rng(809);
  GGMorphism m = random_morphism(rng, random_target(rng));
  CHECK(to_json(m).dump() == to_json(morphism_from_json(to_json(m))).dump());
}

TEST_CASE("schema errors carry JSON pointers") {
  Json bad = Json::object();
  bad["vertices"] = Json::array({"a", "b"});
  // missing edges
  try {
    graph_from_json(bad);
    CHECK(false);
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("/edges") != std::string::npos);
  }
  Json badword = Json::array({Json::array({0})});  // not a pair
  try {
    word_from_json(badword, "/w");
    CHECK(false);
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("/w/0") != std::string::npos);
  }
}

TEST_CASE("redundant t tables are checked against o") {
  std::mt19937_64 rng(811);
  GGMorphism m = random_morphism(rng, random_target(rng));
  Json j = to_json(m);
  // write a consistent t table, then corrupt one entry
  Json t = Json::object();
  for (const EdgeId& f : m.source.graph.edges()) t[f] = to_json(m.t_of(f));
  j["t"] = t;
  std::vector<Violation> extra;
  morphism_from_json(j, &extra);
  CHECK(extra.empty());
  EdgeId f0 = m.source.graph.edges().front();
  const FpcGroup& gw = m.target.vertex_group(m.target.graph.omega(m.phi_e(f0)));
  j["t"][f0] = to_json(mul(gw, m.t_of(f0), FpcWord::generator(0)));
  if (!gw.is_trivial()) {
    extra.clear();
    morphism_from_json(j, &extra);
    REQUIRE(extra.size() == 1);
    CHECK(extra.front().code == "involution");
  }
}

TEST_CASE("dot export mentions every vertex and pair") {
  DecoratedMorphism dm = disk22_example();
  std::string dot = to_dot(dm.phi.source);
  for (const VertexId& v : dm.phi.source.graph.vertices())
    CHECK(dot.find("\"" + v + "\"") != std::string::npos);
  CHECK(dot.find("f2") != std::string::npos);
  LocalGraph lg = local_graph(dm, "u1");
  std::string ldot = to_dot(lg);
  CHECK(ldot.find("f3") != std::string::npos);
  CHECK(ldot.find("(2, 1)") != std::string::npos);
}

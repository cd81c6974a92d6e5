#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "orbfold/gog.hpp"

using namespace orbfold;
using namespace testutil;

namespace {

// fixture with a nontrivial cyclic edge group: Z4 --(order 2)-- Z2
GraphOfGroups amalgam_fixture() {
  GraphOfGroups gog;
  gog.graph = make_graph({"u", "v"}, {{"e", "u", "v"}});
  gog.vertex_groups["u"] = FpcGroup({4});
  gog.vertex_groups["v"] = FpcGroup({2});
  gog.edge_orders["e"] = 2;
  gog.edge_orders["e'"] = 2;
  gog.boundary["e"] = FpcWord::generator(0, 2);  // s^2 in Z4
  gog.boundary["e'"] = FpcWord::generator(0);    // s in Z2
  gog.validate();
  return gog;
}

// one random generator of the path equivalence relation
APath random_equiv_move(std::mt19937_64& rng, const GraphOfGroups& gog, const APath& p) {
  std::uniform_int_distribution<int> kind(0, 2);
  int k = kind(rng);
  if (k == 0) return reduce(gog, p);
  if (k == 1 && !p.steps.empty()) {
    // second-type move at a junction
    std::uniform_int_distribution<std::size_t> pick(0, p.steps.size() - 1);
    std::size_t j = pick(rng);
    const EdgeId& e = p.steps[j].edge;
    long m = gog.edge_order(e);
    long c;
    if (m == 1) {
      c = 0;
    } else if (m == 0) {
      std::uniform_int_distribution<long> cd(-2, 2);
      c = cd(rng);
    } else {
      std::uniform_int_distribution<long> cd(0, m - 1);
      c = cd(rng);
    }
    APath out = p;
    const VertexId va = gog.graph.alpha(e);
    const VertexId vw = gog.graph.omega(e);
    FpcWord alpha_c = pow(gog.vertex_group(va), gog.boundary_word(e), c);
    FpcWord omega_c = pow(gog.vertex_group(vw), gog.boundary_word(gog.graph.inv(e)), -c);
    FpcWord& before = j == 0 ? out.a0 : out.steps[j - 1].a;
    before = mul(gog.vertex_group(va), before, alpha_c);
    out.steps[j].a = mul(gog.vertex_group(vw), omega_c, out.steps[j].a);
    return out;
  }
  // insert a backtracking spur at a random position
  std::uniform_int_distribution<std::size_t> pos(0, p.steps.size());
  std::size_t j = pos(rng);
  VertexId here = j == 0 ? p.start : gog.graph.omega(p.steps[j - 1].edge);
  auto st = gog.graph.star(here);
  if (st.empty()) return p;
  std::uniform_int_distribution<std::size_t> se(0, st.size() - 1);
  const EdgeId& e = st[se(rng)];
  long m = gog.edge_order(e);
  long c = 0;
  if (m == 0) {
    std::uniform_int_distribution<long> cd(-2, 2);
    c = cd(rng);
  } else if (m > 1) {
    std::uniform_int_distribution<long> cd(0, m - 1);
    c = cd(rng);
  }
  const FpcGroup& ga = gog.vertex_group(here);
  const FpcGroup& gw = gog.vertex_group(gog.graph.omega(e));
  FpcWord w = j == 0 ? p.a0 : p.steps[j - 1].a;
  FpcWord aprime = random_element(rng, ga);
  FpcWord alpha_c = pow(ga, gog.boundary_word(e), c);
  FpcWord omega_c = pow(gw, gog.boundary_word(gog.graph.inv(e)), c);
  FpcWord rest = mul(ga, inv(ga, alpha_c), mul(ga, inv(ga, aprime), w));
  APath out;
  out.start = p.start;
  out.a0 = j == 0 ? aprime : p.a0;
  for (std::size_t i = 0; i + 1 <= p.steps.size(); ++i) {
    if (i + 1 <= j && i < j) out.steps.push_back(p.steps[i]);
  }
  if (j > 0) out.steps[j - 1].a = aprime;
  out.steps.push_back({e, omega_c});
  out.steps.push_back({gog.graph.inv(e), rest});
  for (std::size_t i = j; i < p.steps.size(); ++i) out.steps.push_back(p.steps[i]);
  return out;
}

}  // namespace

TEST_CASE("reduce removes backtracks over trivial edge groups") {
  GraphOfGroups gog = make_trivial_gog(make_graph({"a", "b"}, {{"e", "a", "b"}}), {});
  APath p = trivial_path("a");
  p.steps.push_back({"e", FpcWord::identity()});
  p.steps.push_back({"e'", FpcWord::identity()});
  APath r = reduce(gog, p);
  CHECK(r.length() == 0);
  CHECK(r.a0.is_identity());
  CHECK(reduce(gog, r) == r);  // idempotent
}

TEST_CASE("elementary equivalence with a nontrivial edge group") {
  GraphOfGroups gog = amalgam_fixture();
  const FpcGroup& gu = gog.vertex_group("u");
  // a, e, omega_e(c), e^-1, a'  ->  a alpha_e(c) a'
  FpcWord a = FpcWord::generator(0);            // s in Z4
  FpcWord a2 = FpcWord::generator(0, 3);        // s^3 in Z4
  FpcWord omega_c = FpcWord::generator(0);      // s in Z2 = omega_e(c), c = 1
  APath p = trivial_path("u", a);
  p.steps.push_back({"e", omega_c});
  p.steps.push_back({"e'", a2});
  APath r = reduce(gog, p);
  CHECK(r.length() == 0);
  CHECK(r.a0 == mul(gu, mul(gu, a, FpcWord::generator(0, 2)), a2));  // a alpha_e(1) a'
  // non-member middle element stays reduced
  APath q = trivial_path("u", a);
  q.steps.push_back({"e", FpcWord::identity()});
  q.steps.push_back({"e'", a2});
  CHECK(reduce(gog, q).length() == 0);  // c = 0 also reduces
}

TEST_CASE("reduction strategies agree on trivial edge groups") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    GraphOfGroups gog = random_trivial_gog(rng);
    VertexId base = *gog.graph.vertices().begin();
    APath p = random_loop(rng, gog, base, 4);
    CHECK(reduce(gog, p, ReduceStrategy::LeftFirst) == reduce(gog, p, ReduceStrategy::RightFirst));
  }
}

TEST_CASE("normalize equals reduce over trivial edge groups") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    GraphOfGroups gog = random_trivial_gog(rng);
    VertexId base = *gog.graph.vertices().begin();
    APath p = random_loop(rng, gog, base, 3);
    CHECK(normalize(gog, p) == reduce(gog, p));
  }
}

TEST_CASE("normalize is invariant under random equivalence moves") {
  std::mt19937_64 rng(41);
  GraphOfGroups amalgam = amalgam_fixture();
  for (int trial = 0; trial < 120; ++trial) {
    GraphOfGroups gog = trial % 3 == 0 ? amalgam : random_trivial_gog(rng);
    VertexId base = *gog.graph.vertices().begin();
    APath p = random_path(rng, gog, base, 3);
    APath q = p;
    for (int moves = 0; moves < 4; ++moves) q = random_equiv_move(rng, gog, q);
    validate_path(gog, q);
    CHECK(normalize(gog, p) == normalize(gog, q));
  }
}

TEST_CASE("length zero paths normalize to themselves") {
  GraphOfGroups gog = amalgam_fixture();
  APath p = trivial_path("u", FpcWord::generator(0, 3));
  CHECK(normalize(gog, p) == p);
}

TEST_CASE("pi1 group laws") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    GraphOfGroups gog = random_trivial_gog(rng);
    VertexId base = *gog.graph.vertices().begin();
    Pi1Element x = pi1_from_path(gog, random_loop(rng, gog, base, 3));
    Pi1Element y = pi1_from_path(gog, random_loop(rng, gog, base, 2));
    Pi1Element z = pi1_from_path(gog, random_loop(rng, gog, base, 2));
    CHECK(pi1_eq(gog, pi1_mul(gog, pi1_mul(gog, x, y), z), pi1_mul(gog, x, pi1_mul(gog, y, z))));
    CHECK(pi1_is_identity(pi1_mul(gog, x, pi1_inv(gog, x))));
    CHECK(pi1_eq(gog, pi1_mul(gog, x, pi1_identity(gog, base)), x));
  }
}

TEST_CASE("boundary loop of the D2(2,2) splitting") {
  GraphOfGroups gog = make_trivial_gog(make_graph({"v1", "v2"}, {{"e1", "v1", "v2"}}),
                                       {{"v1", FpcGroup({2})}, {"v2", FpcGroup({2})}});
  APath c1 = trivial_path("v1", FpcWord::generator(0));
  c1.steps.push_back({"e1", FpcWord::generator(0)});
  c1.steps.push_back({"e1'", FpcWord::identity()});
  Pi1Element x = pi1_from_path(gog, c1);
  Pi1Element x2 = pi1_pow(gog, x, 2);
  // the square is the unreduced double loop, already reduced
  CHECK(x2.path.length() == 4);
  CHECK(x2.path.a0 == FpcWord::generator(0));
  CHECK(!pi1_is_identity(x2));
  // infinite order up to 50 by normal-form growth
  Pi1Element acc = x;
  for (int n = 2; n <= 50; ++n) {
    acc = pi1_mul(gog, acc, x);
    CHECK(acc.path.length() == static_cast<std::size_t>(2 * n));
  }
  // [1,e,1,e^-1,1] is the identity
  APath back = trivial_path("v1");
  back.steps.push_back({"e1", FpcWord::identity()});
  back.steps.push_back({"e1'", FpcWord::identity()});
  CHECK(pi1_is_identity(pi1_from_path(gog, back)));
}

TEST_CASE("subgraph of groups") {
  GraphOfGroups gog = make_trivial_gog(
      make_graph({"a", "b"}, {{"e0", "a", "b"}, {"e1", "a", "b"}, {"e2", "a", "b"}}),
      {{"a", FpcGroup({2})}});
  SUBCASE("remove nothing") {
    CHECK(subgraph_of_groups(gog, {}) == gog);
  }
  SUBCASE("must be inversion closed") {
    CHECK_THROWS_AS(subgraph_of_groups(gog, {"e0"}), error);
  }
  SUBCASE("removing a pair lowers betti") {
    GraphOfGroups sub = subgraph_of_groups(gog, {"e0", "e0'"});
    CHECK(sub.graph.first_betti() == 1);
    CHECK(sub.vertex_group("a") == gog.vertex_group("a"));
  }
  SUBCASE("component extraction after disconnecting") {
    GraphOfGroups path2 = make_trivial_gog(
        make_graph({"a", "b", "c"}, {{"e0", "a", "b"}, {"e1", "b", "c"}}), {});
    GraphOfGroups cut = subgraph_of_groups(path2, {"e1", "e1'"});
    CHECK(!cut.graph.is_connected());
    GraphOfGroups comp = component_gog(cut, "a");
    CHECK(comp.graph.vertices().size() == 2);
    CHECK(comp.graph.pairs().size() == 1);
  }
}

TEST_CASE("free splitting rank and torsion") {
  // banana graph with one Z2*Z vertex group: rank 3, tn 1
  GraphOfGroups gog = make_trivial_gog(
      make_graph({"a", "b"}, {{"e0", "a", "b"}, {"e1", "a", "b"}}),
      {{"a", FpcGroup({2, 0})}});
  RankTorsion rt = rank_tn(gog, "a");
  CHECK(rt.rank == 3);
  CHECK(rt.torsion == 1);
}

TEST_CASE("express and realize are mutually inverse") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    GraphOfGroups gog = random_trivial_gog(rng);
    VertexId base = *gog.graph.vertices().begin();
    FreeSplitting fs = free_splitting(gog, base);
    if (fs.group.is_trivial()) continue;
    // word -> loop -> word
    FpcWord w = random_element(rng, fs.group, 4);
    CHECK(express(gog, fs, realize(gog, fs, w)) == w);
    // loop -> word -> loop (pi1 equality)
    APath loop = random_loop(rng, gog, base, 3);
    FpcWord expr = express(gog, fs, loop);
    CHECK(pi1_eq(gog, pi1_from_path(gog, loop),
                 pi1_from_path(gog, realize(gog, fs, expr))));
  }
}

TEST_CASE("rank of pi1 equals factors plus betti against the splitting oracle") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    GraphOfGroups gog = random_trivial_gog(rng);
    std::size_t factor_sum = 0, finite_sum = 0;
    for (const auto& [v, grp] : gog.vertex_groups) {
      factor_sum += grp.factor_count();
      for (long p : grp.factor_orders)
        if (p != 0) ++finite_sum;
    }
    RankTorsion rt = rank_tn(gog, *gog.graph.vertices().begin());
    CHECK(rt.rank == factor_sum + gog.graph.first_betti());
    CHECK(rt.torsion == finite_sum);
  }
}

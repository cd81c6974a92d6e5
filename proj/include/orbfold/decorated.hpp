#ifndef ORBFOLD_DECORATED_HPP
#define ORBFOLD_DECORATED_HPP

#include <optional>
#include <variant>

#include "orbfold/moves.hpp"
#include "orbfold/orbifold.hpp"

// Decorated morphisms over the two-vertex graph of groups of an orientable
// small orbifold: boundary path decompositions, induced decorated groups,
// square-fold detection, local graphs, collapsibility, S-trivialization and
// almost-orbifold-cover extraction.

namespace orbfold {

// The graph of groups A^O: vertices v1, v2, edge pairs e1..eq from v1 to v2,
// finite cyclic vertex groups, trivial edge groups; boundary paths c_i and
// the generator table of the identification theta.
struct SmallOrbGraph {
  OrbifoldSpec spec;
  GraphOfGroups gog;
  long q = 0;        // number of boundary components = edge pairs
  long p1 = 1, p2 = 1;  // orders of the cone points carried by v1, v2

  // e_d with d resolved mod q into 1..q
  EdgeId edge(long d) const;
  long epsilon(long i) const { return ((i - 1) % q + q) % q == 0 ? 1 : 0; }
  FpcWord s_v(const VertexId& v, long e = 1) const;  // s_{v}^e (identity when trivial)
  APath boundary_path(long i) const;                 // c_i
  Pi1Element boundary_class(long i) const;           // [c_i]
  Pi1Element theta_t(long i) const { return boundary_class(i); }
  Pi1Element theta_s1() const;
  Pi1Element theta_s2() const;
};

// requires an orientable small spec (not a Moebius band)
SmallOrbGraph build_ao(const OrbifoldSpec& spec);

// phi(p') = a c_i^z a^-1 for the cyclic shift by `shift` edges
struct BoundaryDecomposition {
  long i = 0;
  long z = 0;
  FpcWord a;
  std::size_t shift = 0;
};
BoundaryDecomposition decompose_boundary_image(const SmallOrbGraph& sg, const GGMorphism& phi,
                                               const APath& p);

struct DecoratedMorphism {
  SmallOrbGraph sg;
  GGMorphism phi;  // source B (trivial edge groups), target sg.gog
  VertexId base;   // maps to v1
  std::vector<APath> paths;
  std::vector<APath> gammas;
  std::vector<BoundaryDecomposition> decomposition;  // per path, validated
};

// validates everything: trivial source edge groups, base over v1, gamma
// endpoints, and one boundary decomposition per path
DecoratedMorphism make_decorated(SmallOrbGraph sg, GGMorphism phi, VertexId base,
                                 std::vector<APath> paths, std::vector<APath> gammas);

// ---- induced decorated group ------------------------------------------------

struct PeripheralData {
  FpcWord generator;  // h(p_j, gamma_j) in the splitting basis
  Pi1Element o;       // o_{H(p_j, gamma_j)} in pi1(A^O, v1)
  long i = 0;
  long z = 0;
};

struct DecoratedGroup {
  GraphOfGroups ao;  // underlying target, for pi1 arithmetic
  FpcGroup group;    // pi1(B, u1) on a free product basis
  std::vector<Pi1Element> eta;  // basis generator images
  std::vector<PeripheralData> peripherals;

  Pi1Element eta_apply(const FpcWord& w) const;
};

DecoratedGroup induced_decorated_group(const DecoratedMorphism& dm);

// ---- square folds ------------------------------------------------------------

struct SquareFoldReport {
  enum class Kind { None, PeripheralFold, SelfFold };
  Kind kind = Kind::None;
  EdgeId edge;
  std::size_t j = 0, k = 0;
};
SquareFoldReport folds_squares(const DecoratedMorphism& dm);

// ---- local graphs -------------------------------------------------------------

struct LocalGraph {
  VertexId vertex;
  std::vector<EdgeId> nodes;  // star(u, B)
  struct Arc {
    EdgeId from, to;
    std::size_t j = 0;
    FpcWord b;
  };
  std::vector<Arc> arcs;
  struct Component {
    bool circle = false;
    std::vector<EdgeId> nodes;          // in traversal order
    std::vector<std::size_t> arc_idxs;  // arcs along the traversal
  };
  std::vector<Component> components;
};
// requires that dm does not fold squares
LocalGraph local_graph(const DecoratedMorphism& dm, const VertexId& u);

// Lemma checks along local-graph components: the o-element formula, the edge
// index pattern, the label index congruence, and for circles the divisibility
// q | l, s_v^(l/q) in phi_u(B_u), and the coset covering identity.
struct PathFormulaReport {
  bool ok = true;
  std::vector<std::string> failures;
};
PathFormulaReport check_local_path_formulas(const DecoratedMorphism& dm, const VertexId& u);

// ---- collapsibility and tameness ---------------------------------------------

struct CollapsingOrder {
  std::vector<EdgeId> edges;      // f_1 .. f_n, one orientation per pair
  std::vector<std::size_t> nu;    // nu[k] = path split at f_k
};
std::optional<CollapsingOrder> collapsing_order(const DecoratedMorphism& dm);

struct TameReport {
  bool tame = false;
  bool vertex_injective = false;
  bool collapsible = false;
  SquareFoldReport squares;
  std::vector<std::string> reasons;
  std::optional<CollapsingOrder> order;
};
TameReport is_tame(const DecoratedMorphism& dm);

// redecoration and A2 moves making every path {f_1..f_l}-trivial at u along a
// contractible (interval) component; labels on the interval become (j, 1).
// sigma is the composite of the A2 comparison morphisms (the redecoration is
// invisible to the group), witnessing that the induced decorated group is
// unchanged up to isomorphism.
struct STrivialResult {
  DecoratedMorphism dm;
  GGMorphism sigma;  // old source -> new source
};
STrivialResult make_s_trivial(const DecoratedMorphism& dm, const VertexId& u,
                              const LocalGraph::Component& interval);

// ---- almost orbifold covers ---------------------------------------------------

struct AlmostCoverDescriptor {
  VertexId exceptional;
  std::map<VertexId, long> circle_length;  // l_w
  std::map<VertexId, long> local_degree;   // k_w = l_w / q
  long k_u = 0;
  long d = 0;       // index of the adjoined subgroup <s_v^d>
  long degree = 0;  // sum of k_w over either fiber
  std::vector<std::pair<long, long>> boundary_data;  // (i(j), z_j) per path
  std::map<VertexId, long> cone_orders;              // |B_w| for w != u
  bool special = false;                              // k_u <= |A_phi(u)|
  std::optional<int> adjoined_factor;  // splitting factor of the <s_v^d> part
  std::vector<std::string> notes;
};
AlmostCoverDescriptor extract_almost_cover(const DecoratedMorphism& dm, const VertexId& u);

// Adjoining-a-finite-subgroup unfold (needs 1 <= d < k_u): adds the edge
// f_{u,l_u+1}, shrinks B_u to <s_v^d> and reroutes the closing path
struct AdjoinUnfoldResult {
  DecoratedMorphism dm;
  EdgeId new_edge;
  EdgeId first_edge;  // f_{u,1}, the fold partner for the round trip
};
AdjoinUnfoldResult adjoin_unfold(const DecoratedMorphism& dm, const VertexId& u);

// ---- decorated group predicates ----------------------------------------------

// designated strong splitting: G = <g0 generators> * prod_j <peripheral j>
struct SplitDesignation {
  std::vector<FpcWord> g0;  // words in the decorated group's basis
};

struct PeripheralFoldWitness {
  std::size_t k = 0, l = 0;
  FpcWord g;  // element of G_0 * prod_{j != l} G_j
  long z = 0;
};
// bounded search for o_{G_l} = eta(g) o_{G_k} [c_i]^z; sound, incomplete
std::optional<PeripheralFoldWitness> folds_peripheral_subgroups(const DecoratedGroup& dg,
                                                                const SplitDesignation& split,
                                                                std::size_t max_norm = 6);

// witness: exponent z' with 0 < z' < z_k and a word over the designated
// generators of Gbar = G_0 * prod_{j != k} G_j expressing an element with
// eta-image o [c_i]^{z'} o^-1
struct ObviousRelationWitness {
  long z_prime = 0;
  std::vector<FpcLetter> word;  // letters over (g0..., peripherals != k)
};
bool has_obvious_relation(const DecoratedGroup& dg, const SplitDesignation& split, std::size_t k,
                          const ObviousRelationWitness& w);

// ---- isomorphism / projection of decorated groups ----------------------------

struct ProjectionWitness {
  std::vector<FpcWord> sigma_images;  // per factor of the source group
  std::vector<std::size_t> tau;       // bijection onto target peripherals
  std::vector<long> h_exponents;      // h_j = gen(H_tau(j))^m
  std::vector<long> z;                // z_j in condition (iii)
  std::vector<FpcWord> surjectivity;  // target factor generators over sigma images
};
struct ProjectionReport {
  bool ok = false;
  bool isomorphism = false;  // factor multisets agree, so epi + Hopf = iso
  std::string violated;
};
ProjectionReport verify_projection(const DecoratedGroup& a, const DecoratedGroup& b,
                                   const ProjectionWitness& w);

// deterministic bounded search for a full projection witness along a given
// sigma-image table (used by the move-propagation checks)
std::optional<ProjectionWitness> projection_witness_search(const DecoratedGroup& a,
                                                           const DecoratedGroup& b,
                                                           const std::vector<FpcWord>& sigma_images,
                                                           long bound = 8);

// ---- moves lifted to decorated morphisms --------------------------------------

DecoratedMorphism dm_move_a0(const DecoratedMorphism& dm, const VertexId& u, const FpcWord& a);
DecoratedMorphism dm_move_a2(const DecoratedMorphism& dm, const EdgeId& f, const FpcWord& b);
DecoratedMorphism dm_elementary_fold(const DecoratedMorphism& dm, const EdgeId& f1,
                                     const EdgeId& f2);
DecoratedMorphism dm_vertex_morphism(const DecoratedMorphism& dm, const VertexId& u);
DecoratedMorphism dm_fold(const DecoratedMorphism& dm, const EdgeId& f1, const EdgeId& f2,
                          const F1Witness& w);
// cyclic shifts of the paths plus new connecting paths
DecoratedMorphism redecorate(const DecoratedMorphism& dm, const std::vector<std::size_t>& shifts,
                             const std::vector<APath>& gammas);

// ---- constructions -------------------------------------------------------------

// the inclusion-type cover of degree one (one boundary path per c_i)
DecoratedMorphism degree_one_cover(const SmallOrbGraph& sg);
// the worked example over D^2(2,2)
DecoratedMorphism disk22_example();
// degree-two cover of D^2(p1, p2) with p2 even, exceptional over v1
DecoratedMorphism degree_two_disk_cover(long p1, long p2);
// same cover with the full <s_v1> adjoined at the exceptional vertex: d = 1
DecoratedMorphism adjfinite_instance(long p1, long p2);
// degree-three cover of D^2(2, p2) with k_u = 3 > |A_v1| = 2, hence not
// special; p2 must be even and >= 4
DecoratedMorphism degree_three_nonspecial_cover(long p2);

}  // namespace orbfold

#endif

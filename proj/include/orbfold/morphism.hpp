#ifndef ORBFOLD_MORPHISM_HPP
#define ORBFOLD_MORPHISM_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "orbfold/gog.hpp"

// Morphisms between graphs of groups: graph map, vertex/edge homomorphisms
// and edge elements o_f, t_f with t_f^-1 = o_{f^-1}. Only o is stored, per
// directed edge.

namespace orbfold {

struct GGMorphism {
  GraphOfGroups source;
  GraphOfGroups target;
  std::map<VertexId, VertexId> vertex_map;
  std::map<EdgeId, EdgeId> edge_map;
  std::map<VertexId, FpcHom> vertex_homs;
  // edge homomorphism as exponent on the cyclic generators; equal across the pair
  std::map<EdgeId, long> edge_exponents;
  std::map<EdgeId, FpcWord> o;  // o_f in the group of alpha(phi(f))

  const VertexId& phi_v(const VertexId& u) const;
  const EdgeId& phi_e(const EdgeId& f) const;
  const FpcHom& vertex_hom(const VertexId& u) const;
  long edge_exp(const EdgeId& f) const;
  const FpcWord& o_of(const EdgeId& f) const;
  FpcWord t_of(const EdgeId& f) const;  // inv(o[inv f])

  // structural well-formedness (graph map commutes, homs typed, ...); the
  // commuting condition (5) is reported by check_morphism instead
  void validate() const;

  bool operator==(const GGMorphism&) const = default;
};

// the wedge over a family of closed target paths: one subdivided loop of
// trivial groups per path, edge f_{i,j} over e_{i,j}, with o_{f_{i,1}} = a_{i,0}
// and t_{f_{i,j}} = a_{i,j}; the i-th wedge loop maps onto [p_i]
GGMorphism wedge_morphism(const GraphOfGroups& target, const VertexId& base,
                          const std::vector<APath>& loops);

struct Violation {
  std::string code;    // e.g. "condition5", "edge-exp", "involution"
  std::string where;   // edge or vertex id
  std::string detail;
};

std::vector<Violation> check_morphism(const GGMorphism& m);

APath induced_image(const GGMorphism& m, const APath& q);
Pi1Element induced_hom(const GGMorphism& m, const Pi1Element& x);

// ---- foldedness ------------------------------------------------------------

struct F0Witness {
  VertexId u;
  FpcWord kernel_elem;
};
struct F1Witness {
  EdgeId f1, f2;  // o_{f2} = phi(b) o_{f1} alpha_e(gen^c)
  FpcWord b;
  long c = 0;
};
struct F2Witness {
  EdgeId f;  // o_f^-1 phi(b) o_f = alpha_e(gen^c), b outside alpha_f(B_f)
  FpcWord b;
  long c = 0;
};

struct FoldedReport {
  Verdict verdict = Verdict::Unknown;
  bool exact = true;  // every sub-check was decided exactly
  std::vector<F0Witness> f0;
  std::vector<F1Witness> f1;
  std::vector<F2Witness> f2;
};

FoldedReport is_folded(const GGMorphism& m, long search_bound = 32);

// membership o_{f2} in phi_x(B_x) o_{f1} alpha_e(A_e), with witness
struct DoubleCosetResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<FpcWord> b;
  long c = 0;
};
DoubleCosetResult f1_membership(const GGMorphism& m, const EdgeId& f1, const EdgeId& f2,
                                long search_bound = 32);

// ---- local surjectivity ----------------------------------------------------

struct CosetCover {
  EdgeId target_edge;
  std::vector<EdgeId> used;  // preimage edges whose cosets are needed
};
struct LocalSurjReport {
  Verdict verdict = Verdict::Unknown;
  std::vector<CosetCover> covers;  // one per target star edge when verdict == Yes
  std::string detail;
};
LocalSurjReport is_locally_surjective_at(const GGMorphism& m, const VertexId& x);
LocalSurjReport is_locally_surjective(const GGMorphism& m);

// ---- composition & friends -------------------------------------------------

GGMorphism identity_morphism(const GraphOfGroups& gog);
GGMorphism compose(const GGMorphism& outer, const GGMorphism& inner);
// sub must be the carried sub-graph of groups of super
GGMorphism inclusion_morphism(const GraphOfGroups& sub, const GraphOfGroups& super);
GGMorphism restriction(const GGMorphism& m, const std::set<EdgeId>& removed);

// ---- complexity ------------------------------------------------------------

struct ComplexityReport {
  std::optional<RankTorsion> rank_torsion;  // exact only for trivial edge groups
  std::size_t edge_count = 0;               // |EB| (directed edges)
  std::optional<std::array<long, 3>> c;     // (rk, rk - tn, |EB|)
  std::size_t nontrivial_edge_pairs = 0;    // |B|_c
  std::optional<long> c_e;                  // sum over pairs of |A_phi(f) : phi_f(B_f)|
  std::array<long, 2> d() const {
    return {static_cast<long>(nontrivial_edge_pairs), c_e.value_or(-1)};
  }
  std::vector<std::string> notes;
};

ComplexityReport complexity(const GGMorphism& m, const VertexId& base);
// lexicographic comparison; throws if either side is unavailable
int compare_c(const ComplexityReport& a, const ComplexityReport& b);
int compare_d(const ComplexityReport& a, const ComplexityReport& b);

}  // namespace orbfold

#endif

#ifndef ORBFOLD_ORBIFOLD_HPP
#define ORBFOLD_ORBIFOLD_HPP

#include <optional>
#include <string>
#include <vector>

#include "orbfold/fpc.hpp"

// Compact 2-orbifold descriptors (no reflector curves), fundamental group
// presentations and standard generating tuples.

namespace orbfold {

struct OrbifoldSpec {
  bool orientable = true;
  long genus = 0;  // orientable genus, or crosscap count when non-orientable
  long boundary_count = 0;
  std::vector<long> cone_orders;  // each >= 2

  bool closed() const { return boundary_count == 0; }
  long cone_count() const { return static_cast<long>(cone_orders.size()); }
  void validate() const;
  bool operator==(const OrbifoldSpec&) const = default;
};

// Presentation on generators a_1..a_p, t_1..t_q, s_1..s_r with relators
// s_i^{p_i} and R s_1...s_r (t_1...t_q)^-1. Words are letter sequences over
// generator indices.
struct OrbifoldPresentation {
  std::vector<std::string> generators;
  std::vector<std::vector<FpcLetter>> relators;
  // free product of cyclics carrying the group when the boundary is nonempty:
  // factors a_1..a_p, t_1..t_{q-1}, s_1..s_r; t_q is expressed via the long
  // relation
  std::optional<FpcGroup> fpc_model;
  std::vector<FpcWord> generator_images;  // one per generator, in fpc_model

  int a_count = 0, t_count = 0, s_count = 0;
  int gen_a(int i) const { return i; }
  int gen_t(int j) const { return a_count + j; }
  int gen_s(int i) const { return a_count + t_count + i; }
};

OrbifoldPresentation presentation(const OrbifoldSpec& spec);

bool is_small(const OrbifoldSpec& spec);
bool is_moebius(const OrbifoldSpec& spec);
bool is_sufficiently_large(const OrbifoldSpec& spec);

// standard generating tuple (a_1..a_p, t_{j_1}..t_{j_q'}, s_{i_1}^{nu_1}..):
// boundary/cone indices are 1-based and strictly increasing
struct StandardTupleRequest {
  std::vector<int> boundary_indices;
  std::vector<int> cone_indices;
  std::vector<long> exponents;  // one per cone index, coprime to the order
};
std::vector<std::vector<FpcLetter>> standard_tuple(const OrbifoldSpec& spec,
                                                   const StandardTupleRequest& req);

// tuple entries as words in the fpc model (requires nonempty boundary)
std::vector<FpcWord> standard_tuple_in_model(const OrbifoldSpec& spec,
                                             const StandardTupleRequest& req);

}  // namespace orbfold

#endif

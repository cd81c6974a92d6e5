#ifndef ORBFOLD_MOVES_HPP
#define ORBFOLD_MOVES_HPP

#include "orbfold/morphism.hpp"

// The move calculus on graph of groups morphisms: auxiliary moves A0/A1/A2,
// elementary folds IA and IIIA, vertex morphisms, the composite fold driven
// by an (F1) witness, and the edge-group unfold/fold pair. Moves are pure:
// each returns fresh objects plus the comparison morphism its lemma provides.

namespace orbfold {

struct MoveResult {
  GGMorphism morphism;              // the moved morphism phi'
  std::optional<GGMorphism> sigma;  // comparison morphism, when the move has one
};

// conjugation move: phi_u' = i_g phi_u, o_f' = g o_f on star(u)
GGMorphism move_a0(const GGMorphism& m, const VertexId& u, const FpcWord& g);

// Bass-Serre move: o_f' = o_f alpha_e(gen^-c), t_f' = omega_e(gen^c) t_f
GGMorphism move_a1(const GGMorphism& m, const EdgeId& f, long c);

// simple adjustment: alpha_f conjugated by b, o_f' = phi(b) o_f;
// sigma: B -> B' with o_f^sigma = b^-1 and phi' sigma = phi
MoveResult move_a2(const GGMorphism& m, const EdgeId& f, const FpcWord& b);

// identify f1, f2 with distinct endpoints; omega vertices merge, the groups
// free-multiply. sigma: B -> B' with phi' sigma = phi and sigma_* iso.
MoveResult elementary_fold_ia(const GGMorphism& m, const EdgeId& f1, const EdgeId& f2);

// identify parallel f1, f2; the omega vertex group gains a free generator
// mapping to t1^-1 t2
MoveResult elementary_fold_iiia(const GGMorphism& m, const EdgeId& f1, const EdgeId& f2);

// quotient B_u by ker(phi_u) when the kernel is factor-generated; sigma is
// pi1-surjective and phi' sigma = phi
MoveResult vertex_morphism(const GGMorphism& m, const VertexId& u);

// composite fold removing the (F1) violation witnessed by (b, c); performs
// A2, A1, an optional base-avoiding A0, then the elementary fold
struct FoldOutcome {
  GGMorphism morphism;  // phi-bar
  GGMorphism sigma;     // B -> B-bar, built from the A2 and elementary-fold sigmas
  enum class Kind { IA, IIIA } kind = Kind::IA;
  EdgeId merged_edge;
  bool swapped = false;  // f1/f2 exchanged so the vanishing vertex avoids the base
};
FoldOutcome fold(const GGMorphism& m, const EdgeId& f1, const EdgeId& f2, const F1Witness& w,
                 const VertexId& base);

// unfold along an edge g with nontrivial group, witnessed by a free splitting
// B_u = <C_u> * prod_f b_f alpha_f(B_f) b_f^-1 over f in st_1(u)
struct UnfoldWitness {
  std::vector<FpcWord> cu_generators;  // elements of B_u
  std::vector<long> cu_orders;         // their declared orders (0 = infinite)
  std::map<EdgeId, FpcWord> conjugators;
  // each factor generator of B_u as a word over (cu..., then st_1 factors in
  // edge id order); validates surjectivity, injectivity follows by Hopficity
  std::vector<FpcWord> expressions;
};
// returns phi' and sigma: B' -> B with sigma_* iso and phi sigma = phi'
MoveResult unfold(const GGMorphism& m, const EdgeId& g, const UnfoldWitness& w);

// fold along a trivial-group edge f: promote B_f to the intersection
// witnessed by phi_u(b) = o_f alpha_e(gen^k) o_f^-1; sigma: B -> B' with
// phi' sigma = phi and sigma_* iso
struct FoldAlongWitness {
  long k = 0;
  FpcWord b;
};
MoveResult fold_along_edge(const GGMorphism& m, const EdgeId& f, const FoldAlongWitness& w);

}  // namespace orbfold

#endif

#ifndef ORBFOLD_NIELSEN_HPP
#define ORBFOLD_NIELSEN_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orbfold/gog.hpp"

// Nielsen transformations on tuples and a sound-but-incomplete equivalence
// search with replayable traces. Works over a group oracle; see FpcOracle and
// Pi1Oracle below.
//
// The search runs bidirectionally over canonical states (entries normalized
// under inversion and sorted, quotienting out T1/T2). Found traces are
// expanded to elementary moves and replay-verified before being returned, so
// an Equivalent verdict can never be a false positive.

namespace orbfold {

struct NielsenMove {
  enum class Kind { T1, T2, T3 };
  Kind kind = Kind::T1;
  int i = 0;
  int j = 0;  // unused for T1
  bool operator==(const NielsenMove&) const = default;
};

struct FpcOracle {
  FpcGroup group;
  using Elem = FpcWord;
  Elem mul(const Elem& a, const Elem& b) const { return orbfold::mul(group, a, b); }
  Elem inverse(const Elem& a) const { return orbfold::inv(group, a); }
  Elem identity() const { return FpcWord::identity(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_identity(const Elem& a) const { return a.is_identity(); }
  std::size_t norm(const Elem& a) const { return a.letters.size(); }
  std::string key(const Elem& a) const {
    std::ostringstream os;
    os << a.letters.size() << ":";
    for (const FpcLetter& l : a.letters) os << l.factor << "^" << l.exp << ".";
    return os.str();
  }
};

struct Pi1Oracle {
  GraphOfGroups gog;
  VertexId base;
  using Elem = Pi1Element;
  Elem mul(const Elem& a, const Elem& b) const { return pi1_mul(gog, a, b); }
  Elem inverse(const Elem& a) const { return pi1_inv(gog, a); }
  Elem identity() const { return pi1_identity(gog, base); }
  bool eq(const Elem& a, const Elem& b) const { return pi1_eq(gog, a, b); }
  bool is_identity(const Elem& a) const { return pi1_is_identity(a); }
  std::size_t norm(const Elem& a) const {
    std::size_t n = a.path.steps.size() + a.path.a0.letters.size();
    for (const auto& s : a.path.steps) n += s.a.letters.size();
    return n;
  }
  std::string key(const Elem& a) const {
    std::ostringstream os;
    os << a.path.a0.letters.size() << ":";
    for (const FpcLetter& l : a.path.a0.letters) os << l.factor << "^" << l.exp << ".";
    for (const auto& s : a.path.steps) {
      os << "|" << s.edge << "|";
      for (const FpcLetter& l : s.a.letters) os << l.factor << "^" << l.exp << ".";
    }
    return os.str();
  }
};

template <class Oracle>
using Tuple = std::vector<typename Oracle::Elem>;

template <class Oracle>
Tuple<Oracle> apply_move(const Oracle& o, const Tuple<Oracle>& t, const NielsenMove& m) {
  if (m.i < 0 || m.i >= static_cast<int>(t.size())) throw error("nielsen move: index out of range");
  Tuple<Oracle> out = t;
  switch (m.kind) {
    case NielsenMove::Kind::T1:
      out[static_cast<std::size_t>(m.i)] = o.inverse(t[static_cast<std::size_t>(m.i)]);
      break;
    case NielsenMove::Kind::T2:
      if (m.j < 0 || m.j >= static_cast<int>(t.size()) || m.i == m.j)
        throw error("nielsen move: bad swap indices");
      std::swap(out[static_cast<std::size_t>(m.i)], out[static_cast<std::size_t>(m.j)]);
      break;
    case NielsenMove::Kind::T3:
      if (m.j < 0 || m.j >= static_cast<int>(t.size()) || m.i == m.j)
        throw error("nielsen move: bad T3 indices");
      out[static_cast<std::size_t>(m.i)] =
          o.mul(t[static_cast<std::size_t>(m.i)], t[static_cast<std::size_t>(m.j)]);
      break;
  }
  return out;
}

template <class Oracle>
Tuple<Oracle> replay(const Oracle& o, Tuple<Oracle> t, const std::vector<NielsenMove>& trace) {
  for (const NielsenMove& m : trace) t = apply_move(o, t, m);
  return t;
}

struct SearchLimits {
  std::size_t max_norm = 0;  // 0: input norm + 8
  std::size_t max_states = 1000000;
};

struct SearchResult {
  bool found = false;
  std::vector<NielsenMove> trace;
  std::size_t states_explored = 0;
};

namespace detail {

// entry-wise inversion normalization followed by a sort, with the elementary
// moves realizing it
template <class Oracle>
std::vector<NielsenMove> canonize_moves(const Oracle& o, Tuple<Oracle>& t) {
  std::vector<NielsenMove> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    typename Oracle::Elem invd = o.inverse(t[i]);
    if (o.key(invd) < o.key(t[i])) {
      t[i] = invd;
      out.push_back({NielsenMove::Kind::T1, static_cast<int>(i), 0});
    }
  }
  // stable bubble sort by key, recording swaps
  for (std::size_t pass = 0; pass + 1 < t.size(); ++pass)
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
      if (o.key(t[i + 1]) < o.key(t[i])) {
        std::swap(t[i], t[i + 1]);
        out.push_back({NielsenMove::Kind::T2, static_cast<int>(i), static_cast<int>(i + 1)});
      }
  return out;
}

template <class Oracle>
std::string state_key(const Oracle& o, const Tuple<Oracle>& t) {
  std::string k;
  for (const auto& e : t) {
    k += o.key(e);
    k += ";";
  }
  return k;
}

template <class Oracle>
std::size_t tuple_norm(const Oracle& o, const Tuple<Oracle>& t) {
  std::size_t n = 0;
  for (const auto& e : t) n += o.norm(e);
  return n;
}

// macro neighbors in the canonical quotient: replace entry i by
// x_i^eps * x_j^delta; expansions to elementary moves leave residual
// inversions that the following canonization absorbs
struct Macro {
  int i = 0, j = 0;
  int variant = 0;  // 0: x_i x_j, 1: x_i^-1 x_j, 2: x_i x_j^-1, 3: x_i^-1 x_j^-1
};

template <class Oracle>
typename Oracle::Elem macro_result(const Oracle& o, const Tuple<Oracle>& t, const Macro& m) {
  const auto& xi = t[static_cast<std::size_t>(m.i)];
  const auto& xj = t[static_cast<std::size_t>(m.j)];
  switch (m.variant) {
    case 0: return o.mul(xi, xj);
    case 1: return o.mul(o.inverse(xi), xj);
    case 2: return o.mul(xi, o.inverse(xj));
    default: return o.mul(o.inverse(xi), o.inverse(xj));
  }
}

inline std::vector<NielsenMove> macro_expansion(const Macro& m) {
  using K = NielsenMove::Kind;
  switch (m.variant) {
    case 0: return {{K::T3, m.i, m.j}};
    case 1: return {{K::T1, m.i, 0}, {K::T3, m.i, m.j}};
    case 2: return {{K::T1, m.j, 0}, {K::T3, m.i, m.j}, {K::T1, m.j, 0}};
    default: return {{K::T1, m.i, 0}, {K::T1, m.j, 0}, {K::T3, m.i, m.j}, {K::T1, m.j, 0}};
  }
}

template <class Oracle>
std::vector<std::pair<Macro, Tuple<Oracle>>> neighbors(const Oracle& o, const Tuple<Oracle>& t,
                                                       std::size_t max_norm) {
  std::vector<std::pair<Macro, Tuple<Oracle>>> out;
  for (int i = 0; i < static_cast<int>(t.size()); ++i)
    for (int j = 0; j < static_cast<int>(t.size()); ++j) {
      if (i == j) continue;
      for (int variant = 0; variant < 4; ++variant) {
        Macro m{i, j, variant};
        Tuple<Oracle> nt = t;
        nt[static_cast<std::size_t>(i)] = macro_result(o, t, m);
        if (tuple_norm(o, nt) > max_norm) continue;
        canonize_moves(o, nt);
        out.push_back({m, nt});
      }
    }
  return out;
}

// rebuild the elementary trace along a macro chain, verifying by replay
template <class Oracle>
std::vector<NielsenMove> assemble_trace(const Oracle& o, const Tuple<Oracle>& a,
                                        const Tuple<Oracle>& b,
                                        const std::vector<detail::Macro>& chain) {
  Tuple<Oracle> cur = a;
  std::vector<NielsenMove> trace = canonize_moves(o, cur);
  for (const Macro& m : chain) {
    for (const NielsenMove& mv : macro_expansion(m)) {
      trace.push_back(mv);
      cur = apply_move(o, cur, mv);
    }
    for (const NielsenMove& mv : canonize_moves(o, cur)) trace.push_back(mv);
  }
  Tuple<Oracle> cb = b;
  std::vector<NielsenMove> bmoves = canonize_moves(o, cb);
  // T1 and T2 are involutions, so the reverse of the canonization maps back
  for (auto it = bmoves.rbegin(); it != bmoves.rend(); ++it) {
    trace.push_back(*it);
    cur = apply_move(o, cur, *it);
  }
  return trace;
}

}  // namespace detail

// all elementary moves in a fixed order: T1 by index, T2 by (i, j), T3 by (i, j)
inline std::vector<NielsenMove> elementary_moves(std::size_t size) {
  std::vector<NielsenMove> out;
  int n = static_cast<int>(size);
  for (int i = 0; i < n; ++i) out.push_back({NielsenMove::Kind::T1, i, 0});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back({NielsenMove::Kind::T2, i, j});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out.push_back({NielsenMove::Kind::T3, i, j});
  return out;
}

namespace detail {

// exact BFS in elementary-move space; FIFO order with the fixed move
// enumeration yields the lexicographically least trace among the shortest
template <class Oracle>
SearchResult elementary_search(const Oracle& o, const Tuple<Oracle>& a,
                               const Tuple<Oracle>& b, std::size_t max_depth,
                               const SearchLimits& limits) {
  SearchResult res;
  std::string kb = state_key(o, b);
  struct Node {
    Tuple<Oracle> tuple;
    std::vector<NielsenMove> trace;
  };
  std::map<std::string, std::size_t> depth_of;
  std::deque<Node> q;
  q.push_back({a, {}});
  depth_of[state_key(o, a)] = 0;
  if (state_key(o, a) == kb) {
    res.found = true;
    return res;
  }
  while (!q.empty() && depth_of.size() < limits.max_states) {
    Node cur = q.front();
    q.pop_front();
    if (cur.trace.size() >= max_depth) continue;
    for (const NielsenMove& m : elementary_moves(cur.tuple.size())) {
      Tuple<Oracle> nt = apply_move(o, cur.tuple, m);
      if (tuple_norm(o, nt) > limits.max_norm) continue;
      std::string k = state_key(o, nt);
      if (depth_of.count(k)) continue;
      depth_of[k] = cur.trace.size() + 1;
      std::vector<NielsenMove> trace = cur.trace;
      trace.push_back(m);
      if (k == kb) {
        res.found = true;
        res.trace = std::move(trace);
        res.states_explored = depth_of.size();
        return res;
      }
      q.push_back({nt, std::move(trace)});
    }
  }
  res.states_explored = depth_of.size();
  return res;
}

}  // namespace detail

// bidirectional BFS over canonical states; never returns a false positive.
// Shallow instances are resolved exactly first, so short traces stay minimal.
template <class Oracle>
SearchResult equivalent_bounded(const Oracle& o, const Tuple<Oracle>& a, const Tuple<Oracle>& b,
                                SearchLimits limits = {}) {
  SearchResult res;
  if (a.size() != b.size()) return res;
  if (limits.max_norm == 0)
    limits.max_norm = std::max(detail::tuple_norm(o, a), detail::tuple_norm(o, b)) + 8;
  {
    SearchLimits shallow = limits;
    shallow.max_states = std::min<std::size_t>(limits.max_states, 60000);
    SearchResult exact = detail::elementary_search(o, a, b, 4, shallow);
    if (exact.found) return exact;
  }

  Tuple<Oracle> ca = a, cb = b;
  detail::canonize_moves(o, ca);
  detail::canonize_moves(o, cb);
  std::string ka = detail::state_key(o, ca), kb = detail::state_key(o, cb);

  struct Info {
    Tuple<Oracle> tuple;
    std::string parent;
    detail::Macro step;
    bool root = false;
  };
  std::map<std::string, Info> fwd, bwd;
  fwd[ka] = {ca, "", {}, true};
  bwd[kb] = {cb, "", {}, true};
  std::deque<std::string> qf = {ka}, qb = {kb};
  std::size_t explored = 0;
  bool met = ka == kb;

  while (!met && (!qf.empty() || !qb.empty()) &&
         fwd.size() + bwd.size() < limits.max_states) {
    auto expand = [&](std::map<std::string, Info>& self, std::map<std::string, Info>& other,
                      std::deque<std::string>& queue) {
      if (queue.empty()) return;
      std::string cur = queue.front();
      queue.pop_front();
      Tuple<Oracle> t = self.at(cur).tuple;
      for (auto& [macro, nt] : detail::neighbors(o, t, limits.max_norm)) {
        std::string k = detail::state_key(o, nt);
        if (self.count(k)) continue;
        self[k] = {nt, cur, macro, false};
        queue.push_back(k);
        ++explored;
        if (other.count(k)) met = true;
        if (met) return;
      }
    };
    expand(fwd, bwd, qf);
    if (!met) expand(bwd, fwd, qb);
  }
  res.states_explored = explored;
  if (!met) return res;

  // forward re-search inside the union: the canonical neighbor relation is
  // symmetric, so every discovered edge is usable forward
  std::set<std::string> allowed;
  for (const auto& [k, i] : fwd) allowed.insert(k);
  for (const auto& [k, i] : bwd) allowed.insert(k);
  std::map<std::string, std::pair<std::string, detail::Macro>> parent;
  std::deque<std::string> q = {ka};
  std::set<std::string> seen = {ka};
  std::map<std::string, Tuple<Oracle>> tuples;
  tuples[ka] = ca;
  bool reached = ka == kb;
  while (!q.empty() && !reached) {
    std::string cur = q.front();
    q.pop_front();
    for (auto& [macro, nt] : detail::neighbors(o, tuples.at(cur), limits.max_norm)) {
      std::string k = detail::state_key(o, nt);
      if (!allowed.count(k) || seen.count(k)) continue;
      seen.insert(k);
      tuples[k] = nt;
      parent[k] = {cur, macro};
      if (k == kb) {
        reached = true;
        break;
      }
      q.push_back(k);
    }
  }
  if (!reached) return res;  // over-tight bounds can sever the meet; stay sound

  std::vector<detail::Macro> chain;
  for (std::string k = kb; k != ka;) {
    auto& [pk, macro] = parent.at(k);
    chain.push_back(macro);
    k = pk;
  }
  std::reverse(chain.begin(), chain.end());
  std::vector<NielsenMove> trace = detail::assemble_trace(o, a, b, chain);
  // replay verification: exact entrywise equality
  Tuple<Oracle> check = replay(o, a, trace);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!o.eq(check[i], b[i])) throw error("nielsen search produced a non-replaying trace");
  res.found = true;
  res.trace = std::move(trace);
  return res;
}

// BFS toward any tuple containing the identity; the trace ends with the
// identity in the last slot
template <class Oracle>
SearchResult reducible_witness(const Oracle& o, const Tuple<Oracle>& t,
                               SearchLimits limits = {}) {
  SearchResult res;
  if (t.empty()) return res;
  if (limits.max_norm == 0) limits.max_norm = detail::tuple_norm(o, t) + 8;
  auto finish = [&](const Tuple<Oracle>& start, std::vector<NielsenMove> trace) {
    Tuple<Oracle> cur = replay(o, start, trace);
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (o.is_identity(cur[i])) {
        if (i + 1 != cur.size()) {
          NielsenMove swap{NielsenMove::Kind::T2, static_cast<int>(i),
                           static_cast<int>(cur.size()) - 1};
          trace.push_back(swap);
          cur = apply_move(o, cur, swap);
        }
        break;
      }
    res.found = true;
    res.trace = std::move(trace);
    return res;
  };
  for (const auto& e : t)
    if (o.is_identity(e)) return finish(t, {});

  // shallow exact phase: shortest elementary trace to a reducible tuple
  {
    SearchLimits shallow = limits;
    shallow.max_states = std::min<std::size_t>(limits.max_states, 60000);
    struct Node {
      Tuple<Oracle> tuple;
      std::vector<NielsenMove> trace;
    };
    std::set<std::string> seen0 = {detail::state_key(o, t)};
    std::deque<Node> q0;
    q0.push_back({t, {}});
    while (!q0.empty() && seen0.size() < shallow.max_states) {
      Node cur = q0.front();
      q0.pop_front();
      if (cur.trace.size() >= 4) continue;
      for (const NielsenMove& m : elementary_moves(cur.tuple.size())) {
        Tuple<Oracle> nt = apply_move(o, cur.tuple, m);
        if (detail::tuple_norm(o, nt) > shallow.max_norm) continue;
        std::string k = detail::state_key(o, nt);
        if (!seen0.insert(k).second) continue;
        std::vector<NielsenMove> trace = cur.trace;
        trace.push_back(m);
        for (const auto& e : nt)
          if (o.is_identity(e)) return finish(t, trace);
        q0.push_back({nt, std::move(trace)});
      }
    }
  }

  Tuple<Oracle> ct = t;
  detail::canonize_moves(o, ct);
  std::string k0 = detail::state_key(o, ct);
  struct Info {
    Tuple<Oracle> tuple;
    std::string parent;
    detail::Macro step;
  };
  std::map<std::string, Info> seen;
  seen[k0] = {ct, "", {}};
  std::deque<std::string> q = {k0};
  while (!q.empty() && seen.size() < limits.max_states) {
    std::string cur = q.front();
    q.pop_front();
    for (auto& [macro, nt] : detail::neighbors(o, seen.at(cur).tuple, limits.max_norm)) {
      std::string k = detail::state_key(o, nt);
      if (seen.count(k)) continue;
      seen[k] = {nt, cur, macro};
      ++res.states_explored;
      bool hit = false;
      for (const auto& e : nt)
        if (o.is_identity(e)) hit = true;
      if (hit) {
        std::vector<detail::Macro> chain;
        for (std::string kk = k; kk != k0;) {
          chain.push_back(seen.at(kk).step);
          kk = seen.at(kk).parent;
        }
        std::reverse(chain.begin(), chain.end());
        Tuple<Oracle> cur2 = t;
        std::vector<NielsenMove> trace = detail::canonize_moves(o, cur2);
        for (const detail::Macro& m : chain) {
          for (const NielsenMove& mv : detail::macro_expansion(m)) {
            trace.push_back(mv);
            cur2 = apply_move(o, cur2, mv);
          }
          for (const NielsenMove& mv : detail::canonize_moves(o, cur2)) trace.push_back(mv);
        }
        return finish(t, trace);
      }
      q.push_back(k);
    }
  }
  return res;
}

}  // namespace orbfold

#endif

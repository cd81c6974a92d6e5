#include "orbfold/graph.hpp"

#include <algorithm>
#include <deque>

namespace orbfold {

Graph::Graph(std::vector<VertexId> vertices, std::vector<EdgePair> pairs)
    : pairs_(std::move(pairs)) {
  for (auto& v : vertices) {
    if (!vertices_.insert(v).second) throw error("duplicate vertex id: " + v);
  }
  for (const EdgePair& p : pairs_) {
    if (p.id == p.inv) throw error("edge involution must be fixed point free: " + p.id);
    if (!has_vertex(p.from) || !has_vertex(p.to))
      throw error("edge " + p.id + " references unknown vertex");
    if (p.from == p.to) throw error("loops are not allowed: " + p.id);
    if (dir_.count(p.id) || dir_.count(p.inv))
      throw error("duplicate edge id in pair " + p.id);
    dir_[p.id] = Directed{p.from, p.to, p.inv, p.id};
    dir_[p.inv] = Directed{p.to, p.from, p.id, p.id};
  }
}

std::vector<EdgeId> Graph::edges() const {
  std::vector<EdgeId> out;
  out.reserve(dir_.size());
  for (const auto& [id, d] : dir_) out.push_back(id);
  return out;
}

const EdgeId& Graph::inv(const EdgeId& e) const {
  auto it = dir_.find(e);
  if (it == dir_.end()) throw error("unknown edge id: " + e);
  return it->second.inv;
}

const VertexId& Graph::alpha(const EdgeId& e) const {
  auto it = dir_.find(e);
  if (it == dir_.end()) throw error("unknown edge id: " + e);
  return it->second.from;
}

const VertexId& Graph::omega(const EdgeId& e) const {
  auto it = dir_.find(e);
  if (it == dir_.end()) throw error("unknown edge id: " + e);
  return it->second.to;
}

bool Graph::is_positive(const EdgeId& e) const { return pair_of(e) == e; }

const EdgeId& Graph::pair_of(const EdgeId& e) const {
  auto it = dir_.find(e);
  if (it == dir_.end()) throw error("unknown edge id: " + e);
  return it->second.pair;
}

std::vector<EdgeId> Graph::star(const VertexId& v) const {
  if (!has_vertex(v)) throw error("unknown vertex id: " + v);
  std::vector<EdgeId> out;
  for (const auto& [id, d] : dir_)
    if (d.from == v) out.push_back(id);
  return out;
}

std::set<VertexId> Graph::component_of(const VertexId& v) const {
  std::set<VertexId> seen = {v};
  std::deque<VertexId> queue = {v};
  while (!queue.empty()) {
    VertexId cur = queue.front();
    queue.pop_front();
    for (const auto& [id, d] : dir_) {
      if (d.from == cur && !seen.count(d.to)) {
        seen.insert(d.to);
        queue.push_back(d.to);
      }
    }
  }
  return seen;
}

std::size_t Graph::component_count() const {
  std::set<VertexId> left = vertices_;
  std::size_t n = 0;
  while (!left.empty()) {
    auto comp = component_of(*left.begin());
    for (const auto& v : comp) left.erase(v);
    ++n;
  }
  return n;
}

bool Graph::is_connected() const {
  if (vertices_.empty()) return true;
  return component_of(*vertices_.begin()).size() == vertices_.size();
}

std::size_t Graph::first_betti() const {
  return pairs_.size() - vertices_.size() + component_count();
}

std::map<VertexId, EdgeId> Graph::spanning_tree(const VertexId& base) const {
  if (!has_vertex(base)) throw error("unknown vertex id: " + base);
  std::map<VertexId, EdgeId> tree;
  std::set<VertexId> seen = {base};
  std::deque<VertexId> queue = {base};
  while (!queue.empty()) {
    VertexId cur = queue.front();
    queue.pop_front();
    for (const auto& [id, d] : dir_) {
      if (d.from == cur && !seen.count(d.to)) {
        seen.insert(d.to);
        tree[d.to] = id;
        queue.push_back(d.to);
      }
    }
  }
  return tree;
}

}  // namespace orbfold

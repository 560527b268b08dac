#ifndef COXWALL_TREE_HPP
#define COXWALL_TREE_HPP

#include <cstddef>
#include <deque>
#include <limits>
#include <vector>

#include "coxwall/errors.hpp"

namespace coxwall {

using VertexId = std::size_t;
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// An undirected graph expected to be a finite tree, with a designated basepoint.
struct TreeGraph {
  std::vector<std::vector<VertexId>> adj;
  VertexId basepoint = 0;

  std::size_t size() const noexcept { return adj.size(); }

  void add_edge(VertexId a, VertexId b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& n : adj) twice += n.size();
    return twice / 2;
  }

  std::vector<int> distances_from(VertexId source) const {
    std::vector<int> dist(size(), kUnreachable);
    std::deque<VertexId> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (VertexId w : adj[v])
        if (dist[w] == kUnreachable) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
    }
    return dist;
  }

  bool connected() const {
    if (adj.empty()) return true;
    for (int d : distances_from(0))
      if (d == kUnreachable) return false;
    return true;
  }

  bool is_tree() const { return !adj.empty() && connected() && edge_count() + 1 == size(); }

  /// BFS parent towards `root` (root maps to itself).
  std::vector<VertexId> parents_towards(VertexId root) const {
    std::vector<VertexId> parent(size(), static_cast<VertexId>(-1));
    std::deque<VertexId> queue{root};
    parent[root] = root;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (VertexId w : adj[v])
        if (parent[w] == static_cast<VertexId>(-1)) {
          parent[w] = v;
          queue.push_back(w);
        }
    }
    return parent;
  }
};

/// All-pairs BFS distances, row-major.
class DistanceTable {
 public:
  DistanceTable() = default;
  explicit DistanceTable(const TreeGraph& g) : n_(g.size()), d_(n_ * n_) {
    for (VertexId v = 0; v < n_; ++v) {
      const auto row = g.distances_from(v);
      std::copy(row.begin(), row.end(), d_.begin() + static_cast<std::ptrdiff_t>(v * n_));
    }
  }
  int operator()(VertexId a, VertexId b) const { return d_[a * n_ + b]; }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<int> d_;
};

/// Path tree 0 - 1 - ... - (n-1).
inline TreeGraph path_tree(std::size_t n, VertexId basepoint = 0) {
  TreeGraph t;
  t.adj.resize(n);
  for (VertexId v = 0; v + 1 < n; ++v) t.add_edge(v, v + 1);
  t.basepoint = basepoint;
  return t;
}

}  // namespace coxwall

#endif  // COXWALL_TREE_HPP

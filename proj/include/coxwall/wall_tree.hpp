#ifndef COXWALL_WALL_TREE_HPP
#define COXWALL_WALL_TREE_HPP

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "coxwall/orbits.hpp"
#include "coxwall/tree.hpp"
#include "coxwall/union_find.hpp"

namespace coxwall {

struct WallTreeEdge {
  VertexId a;
  VertexId b;
  std::size_t wall;  // catalog index of the wall dual to the deleted Cayley edges
};

/// Quotient of the ball by one wall class: vertices are the components left
/// after deleting every edge dual to a wall of the class, edges join
/// components separated by one such wall. Component 0 contains the identity.
struct WallTree {
  std::size_t label = 0;
  std::vector<VertexId> component_of;           // per ball element
  std::vector<std::vector<ElemIndex>> members;  // ascending, per component
  std::vector<WallTreeEdge> edges;
  TreeGraph graph;

  std::size_t vertex_count() const { return members.size(); }
};

inline WallTree build_wall_tree(const BallAtlas& atlas, const WallOrbitTable& table, std::size_t label) {
  if (label >= table.class_count) throw Error(ErrorCode::InputError, "no wall class " + std::to_string(label));
  const auto& edge_wall = table.catalog.edge_wall;
  auto in_class = [&](std::size_t w) { return w != WallCatalog::npos && table.class_of[w] == label; };

  DisjointSets sets(atlas.size());
  for (ElemIndex g = 0; g < atlas.size(); ++g)
    for (GenIndex i = 0; i < atlas.rank(); ++i) {
      const ElemIndex n = atlas.neighbor(g, i);
      if (n != kOutOfBall && n > g && !in_class(edge_wall[g][i])) sets.unite(g, n);
    }

  WallTree tree;
  tree.label = label;
  tree.component_of = sets.labels();
  tree.members.resize(sets.components());
  for (ElemIndex g = 0; g < atlas.size(); ++g) tree.members[tree.component_of[g]].push_back(g);
  tree.graph.adj.resize(tree.members.size());
  tree.graph.basepoint = tree.component_of[0];

  std::map<std::pair<VertexId, VertexId>, std::size_t> joined;
  for (ElemIndex g = 0; g < atlas.size(); ++g)
    for (GenIndex i = 0; i < atlas.rank(); ++i) {
      const ElemIndex n = atlas.neighbor(g, i);
      if (n == kOutOfBall || n < g || !in_class(edge_wall[g][i])) continue;
      const VertexId a = tree.component_of[g], b = tree.component_of[n];
      const std::size_t wall = edge_wall[g][i];
      if (a == b)
        throw Error(ErrorCode::CycleFound, "class " + std::to_string(label) + ": wall " +
                                               digest_hex(table.catalog.walls[wall].wall.key) +
                                               " does not separate its own edge inside the ball");
      auto [it, fresh] = joined.try_emplace({std::min(a, b), std::max(a, b)}, wall);
      if (!fresh && it->second != wall)
        throw Error(ErrorCode::CycleFound, "class " + std::to_string(label) + ": two walls join components " +
                                               std::to_string(a) + " and " + std::to_string(b));
    }
  for (const auto& [pair, wall] : joined) {
    tree.edges.push_back({pair.first, pair.second, wall});
    tree.graph.add_edge(pair.first, pair.second);
  }
  if (!tree.graph.connected())
    throw Error(ErrorCode::TreeDisconnected, "class " + std::to_string(label) + " quotient graph is disconnected");
  if (tree.graph.edge_count() + 1 != tree.graph.size())
    throw Error(ErrorCode::CycleFound, "class " + std::to_string(label) + " quotient graph has " +
                                           std::to_string(tree.graph.size()) + " vertices and " +
                                           std::to_string(tree.graph.edge_count()) + " edges");
  return tree;
}

inline std::vector<WallTree> build_wall_trees(const BallAtlas& atlas, const WallOrbitTable& table) {
  std::vector<WallTree> trees;
  trees.reserve(table.class_count);
  for (std::size_t h = 0; h < table.class_count; ++h) trees.push_back(build_wall_tree(atlas, table, h));
  return trees;
}

}  // namespace coxwall

#endif  // COXWALL_WALL_TREE_HPP

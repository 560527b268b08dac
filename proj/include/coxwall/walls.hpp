#ifndef COXWALL_WALLS_HPP
#define COXWALL_WALLS_HPP

#include <optional>
#include <unordered_map>
#include <vector>

#include "coxwall/atlas.hpp"

namespace coxwall {

/// A wall, identified by the matrix of its reflection r = w s w^{-1}.
struct Wall {
  ElemMatrix key;
  std::optional<ElemIndex> atlas_index;  // set when r itself lies in the ball
  std::optional<int> length;
};

inline Wall make_wall(const BallAtlas& atlas, ElemMatrix key) {
  Wall w{std::move(key), std::nullopt, std::nullopt};
  if (auto idx = atlas.find(w.key)) {
    w.atlas_index = *idx;
    w.length = atlas.length(*idx);
  }
  return w;
}

/// Reflection of the wall dual to the Cayley edge (g, g s_i).
inline ElemMatrix dual_wall_key(const BallAtlas& atlas, ElemIndex g, GenIndex i) {
  return atlas.representation().conjugate_generator(atlas.key(g), i);
}

/// Walls crossed by the gallery g, g s_{i1}, g s_{i1} s_{i2}, ... spelled by `word`.
inline std::vector<Wall> walls_along(const BallAtlas& atlas, ElemIndex g, const Word& word) {
  const Representation& rep = atlas.representation();
  std::vector<Wall> out;
  out.reserve(word.size());
  ElemMatrix prefix = atlas.key(g);
  for (GenIndex i : word) {
    out.push_back(make_wall(atlas, rep.conjugate_generator(prefix, i)));
    prefix = rep.times_generator(prefix, i);
  }
  return out;
}

/// The d(g, h) walls separating chambers g and h, read off the ShortLex word of
/// g^{-1} h: r_j = g (s_{i1}...s_{i(j-1)}) s_{ij} (s_{i1}...s_{i(j-1)})^{-1} g^{-1}.
inline std::vector<Wall> separating_walls(const WordMetric& metric, ElemIndex g, ElemIndex h) {
  if (g == h) return {};
  const ElemIndex x = metric.quotient_index(g, h);
  return walls_along(metric.ball(), g, metric.wide().word(x));
}

/// Same walls computed from the alternative reduced word of g^{-1} h.
inline std::vector<Wall> separating_walls_alternative(const WordMetric& metric, ElemIndex g, ElemIndex h) {
  if (g == h) return {};
  const ElemIndex x = metric.quotient_index(g, h);
  return walls_along(metric.ball(), g, metric.wide().alternative_word(x));
}

/// A wall dual to at least one edge of the ball, with the first such edge in
/// (element, generator) order and the root w(alpha_i) it reflects in.
struct DualWall {
  Wall wall;
  std::vector<Coeff> root;
  ElemIndex edge_from;
  GenIndex edge_generator;
};

/// Every wall dual to an edge with both endpoints in the ball, in order of first
/// appearance, plus the edge -> wall lookup.
struct WallCatalog {
  std::vector<DualWall> walls;
  std::unordered_map<ElemMatrix, std::size_t, ElemMatrixHash> index;
  std::vector<std::vector<std::size_t>> edge_wall;  // [g][i], or npos when g s_i leaves the ball

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::optional<std::size_t> find(const ElemMatrix& key) const {
    if (auto it = index.find(key); it != index.end()) return it->second;
    return std::nullopt;
  }
};

inline WallCatalog collect_walls(const BallAtlas& atlas) {
  const Representation& rep = atlas.representation();
  WallCatalog cat;
  cat.edge_wall.assign(atlas.size(), std::vector<std::size_t>(atlas.rank(), WallCatalog::npos));
  for (ElemIndex g = 0; g < atlas.size(); ++g)
    for (GenIndex i = 0; i < atlas.rank(); ++i) {
      const ElemIndex n = atlas.neighbor(g, i);
      if (n == kOutOfBall) continue;
      if (n < g) {
        cat.edge_wall[g][i] = cat.edge_wall[n][i];
        continue;
      }
      auto root = rep.root(atlas.key(g), i);
      ElemMatrix key = rep.reflection(root);
      auto [it, fresh] = cat.index.try_emplace(key, cat.walls.size());
      if (fresh) cat.walls.push_back(DualWall{make_wall(atlas, std::move(key)), std::move(root), g, i});
      cat.edge_wall[g][i] = it->second;
    }
  return cat;
}

}  // namespace coxwall

#endif  // COXWALL_WALLS_HPP

#ifndef COXWALL_EMBEDDING_HPP
#define COXWALL_EMBEDDING_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "coxwall/parallel.hpp"
#include "coxwall/wall_tree.hpp"
#include "coxwall/walls.hpp"

namespace coxwall {

/// mu: chamber g -> ([g]_h)_h, a vertex of the product of wall trees with the
/// l1 metric.
class TreeEmbedding {
 public:
  TreeEmbedding(std::vector<WallTree> trees, std::size_t points) : trees_(std::move(trees)), points_(points) {
    distances_.reserve(trees_.size());
    for (const auto& t : trees_) distances_.emplace_back(t.graph);
  }

  std::size_t factor_count() const noexcept { return trees_.size(); }
  std::size_t point_count() const noexcept { return points_; }
  const std::vector<WallTree>& trees() const noexcept { return trees_; }
  const WallTree& tree(std::size_t h) const { return trees_.at(h); }
  const DistanceTable& tree_distances(std::size_t h) const { return distances_.at(h); }

  VertexId coordinate(ElemIndex g, std::size_t h) const { return trees_[h].component_of[g]; }

  std::vector<VertexId> image(ElemIndex g) const {
    std::vector<VertexId> out(trees_.size());
    for (std::size_t h = 0; h < trees_.size(); ++h) out[h] = coordinate(g, h);
    return out;
  }

  int tree_distance(std::size_t h, ElemIndex g1, ElemIndex g2) const {
    return distances_[h](coordinate(g1, h), coordinate(g2, h));
  }

  /// l1 distance between two vertices of the product.
  int l1(const std::vector<VertexId>& a, const std::vector<VertexId>& b) const {
    int s = 0;
    for (std::size_t h = 0; h < trees_.size(); ++h) s += distances_[h](a[h], b[h]);
    return s;
  }

  int l1(ElemIndex g1, ElemIndex g2) const {
    int s = 0;
    for (std::size_t h = 0; h < trees_.size(); ++h) s += tree_distance(h, g1, g2);
    return s;
  }

 private:
  std::vector<WallTree> trees_;
  std::vector<DistanceTable> distances_;
  std::size_t points_;
};

inline TreeEmbedding embed(const BallAtlas& atlas, const WallOrbitTable& table) {
  TreeEmbedding mu(build_wall_trees(atlas, table), atlas.size());
  std::map<std::vector<VertexId>, ElemIndex> seen;
  for (ElemIndex g = 0; g < atlas.size(); ++g) {
    auto [it, fresh] = seen.try_emplace(mu.image(g), g);
    if (!fresh)
      throw Error(ErrorCode::NotInjective,
                  "elements " + std::to_string(it->second) + " and " + std::to_string(g) + " share an image");
  }
  return mu;
}

struct IsometryFailure {
  ElemIndex g;
  ElemIndex h;
  int lhs;  // l1 distance of the images
  int rhs;  // word distance
};

struct ClassCountFailure {
  ElemIndex g;
  ElemIndex h;
  std::size_t tree;
  int tree_distance;
  int wall_count;
};

struct EquivarianceFailure {
  GenIndex generator;
  std::string what;
};

struct EmbeddingReport {
  int margin = 0;
  std::size_t classes = 0;
  std::size_t pairs_checked = 0;
  std::size_t equivariance_samples = 0;
  std::vector<IsometryFailure> isometry_failures;
  std::vector<ClassCountFailure> class_count_failures;
  std::vector<EquivarianceFailure> equivariance_failures;
  /// class_permutation[s][h] = image class of h under conjugation by s, or -1 if no wall of h has its image in the ball.
  std::vector<std::vector<long>> class_permutation;

  bool pass() const {
    return isometry_failures.empty() && class_count_failures.empty() && equivariance_failures.empty();
  }
};

/// Ball elements of length <= R - margin paired with every h of length <= R - margin
/// and d(g, h) <= reach, with g <= h. Found by local BFS, which is complete since
/// every geodesic between such a pair stays in the ball.
inline std::vector<std::pair<ElemIndex, ElemIndex>> interior_pairs(const BallAtlas& atlas, int margin, int reach,
                                                                   ElemIndex begin, ElemIndex end) {
  std::vector<std::pair<ElemIndex, ElemIndex>> out;
  const int limit = atlas.radius() - margin;
  std::map<ElemIndex, int> dist;
  for (ElemIndex g = begin; g < end; ++g) {
    if (atlas.length(g) > limit) continue;
    dist.clear();
    dist[g] = 0;
    std::vector<ElemIndex> frontier{g};
    for (int step = 0; step < reach; ++step) {
      std::vector<ElemIndex> next;
      for (ElemIndex x : frontier)
        for (ElemIndex y : atlas.neighbors(x))
          if (y != kOutOfBall && dist.try_emplace(y, step + 1).second) next.push_back(y);
      frontier = std::move(next);
    }
    for (const auto& [h, d] : dist)
      if (h >= g && atlas.length(h) <= limit) out.emplace_back(g, h);
  }
  return out;
}

namespace detail {

inline void check_equivariance(const WordMetric& metric, const WallOrbitTable& table, const TreeEmbedding& mu,
                               int margin, EmbeddingReport& report) {
  const BallAtlas& atlas = metric.ball();
  const Representation& rep = atlas.representation();
  const auto& walls = table.catalog.walls;
  const int limit = atlas.radius() - margin;
  for (GenIndex s = 0; s < atlas.rank(); ++s) {
    std::vector<long> perm(table.class_count, -1);
    std::vector<long> preimage(table.class_count, -1);
    for (std::size_t w = 0; w < walls.size(); ++w) {
      const auto moved = table.catalog.find(rep.reflection(rep.apply(rep.generator(s), walls[w].root)));
      if (!moved) continue;
      const std::size_t from = table.class_of[w];
      const auto to = static_cast<long>(table.class_of[*moved]);
      if (perm[from] == -1 && preimage[to] == -1) {
        perm[from] = to;
        preimage[to] = static_cast<long>(from);
      } else if (perm[from] != to || preimage[to] != static_cast<long>(from)) {
        report.equivariance_failures.push_back(
            {s, "class relabeling is not a bijection at class " + std::to_string(from) + " -> " + std::to_string(to)});
      }
    }
    // Vertex maps [g]_h -> [s g]_{s(h)} must be well defined and injective.
    std::vector<std::map<VertexId, VertexId>> forward(table.class_count), backward(table.class_count);
    for (ElemIndex g = 0; g < atlas.size(); ++g) {
      if (atlas.length(g) > limit) continue;
      const auto sg = atlas.find(rep.generator_times(s, atlas.key(g)));
      if (!sg) {
        report.equivariance_failures.push_back({s, "s g left the ball for interior g = " + std::to_string(g)});
        continue;
      }
      ++report.equivariance_samples;
      for (std::size_t h = 0; h < table.class_count; ++h) {
        if (perm[h] < 0) continue;
        const VertexId x = mu.coordinate(g, h), y = mu.coordinate(*sg, static_cast<std::size_t>(perm[h]));
        auto [fit, ffresh] = forward[h].try_emplace(x, y);
        auto [bit, bfresh] = backward[h].try_emplace(y, x);
        if (fit->second != y || bit->second != x)
          report.equivariance_failures.push_back(
              {s, "vertex map of class " + std::to_string(h) + " is not well defined at element " + std::to_string(g)});
      }
    }
    // Simplicial: adjacent vertices with known images map to adjacent vertices.
    for (std::size_t h = 0; h < table.class_count; ++h) {
      if (perm[h] < 0) continue;
      const auto& target = mu.tree_distances(static_cast<std::size_t>(perm[h]));
      for (const auto& e : mu.tree(h).edges) {
        auto a = forward[h].find(e.a), b = forward[h].find(e.b);
        if (a != forward[h].end() && b != forward[h].end() && target(a->second, b->second) != 1)
          report.equivariance_failures.push_back(
              {s, "class " + std::to_string(h) + " edge " + std::to_string(e.a) + "-" + std::to_string(e.b) +
                      " does not map to an edge"});
      }
    }
    report.class_permutation.push_back(std::move(perm));
  }
}

}  // namespace detail

/// Checks, for interior pairs at distance <= margin, that the l1 distance of the
/// images equals the word distance and that each tree distance equals the
/// number of separating walls in that class; then checks generator
/// equivariance of the class labels and of the vertex maps.
inline EmbeddingReport verify_embedding(const WordMetric& metric, const WallOrbitTable& table,
                                        const TreeEmbedding& mu, int margin, unsigned workers = 1) {
  const BallAtlas& atlas = metric.ball();
  if (margin < 0 || margin >= atlas.radius())
    throw Error(ErrorCode::MarginTooLarge,
                "margin " + std::to_string(margin) + " must be below the radius " + std::to_string(atlas.radius()));
  EmbeddingReport report;
  report.margin = margin;
  report.classes = table.class_count;

  struct Partial {
    std::size_t pairs = 0;
    std::vector<IsometryFailure> iso;
    std::vector<ClassCountFailure> per_class;
  };
  auto parts = parallel_chunks(atlas.size(), workers, [&](std::size_t begin, std::size_t end) {
    Partial p;
    std::vector<int> counts(table.class_count);
    for (const auto& [g, h] : interior_pairs(atlas, margin, margin, begin, end)) {
      ++p.pairs;
      const int rhs = metric.distance(g, h);
      const int lhs = mu.l1(g, h);
      if (lhs != rhs) p.iso.push_back({g, h, lhs, rhs});
      std::fill(counts.begin(), counts.end(), 0);
      bool missing = false;
      for (const Wall& w : separating_walls(metric, g, h)) {
        if (auto idx = table.catalog.find(w.key)) {
          ++counts[table.class_of[*idx]];
        } else {
          missing = true;
        }
      }
      for (std::size_t c = 0; c < table.class_count; ++c) {
        const int td = mu.tree_distance(c, g, h);
        if (td != counts[c] || missing) p.per_class.push_back({g, h, c, td, counts[c]});
      }
    }
    return p;
  });
  for (auto& p : parts) {
    report.pairs_checked += p.pairs;
    report.isometry_failures.insert(report.isometry_failures.end(), p.iso.begin(), p.iso.end());
    report.class_count_failures.insert(report.class_count_failures.end(), p.per_class.begin(), p.per_class.end());
  }
  detail::check_equivariance(metric, table, mu, margin, report);
  return report;
}

}  // namespace coxwall

#endif  // COXWALL_EMBEDDING_HPP

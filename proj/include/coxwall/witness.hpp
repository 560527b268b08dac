#ifndef COXWALL_WITNESS_HPP
#define COXWALL_WITNESS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxwall/embedding.hpp"
#include "coxwall/measure.hpp"
#include "coxwall/tree.hpp"

namespace coxwall {

/// A family z -> a^n_z of probability measures on a space whose points are
/// ids in [0, universe). `points` lists the points the map is defined on.
struct Witness {
  int n = 0;
  std::size_t k = 1;        // number of tree factors behind the witness
  long support_radius = 0;  // declared: supp(a_z) within distance < support_radius of z
  PointId universe = 0;
  std::vector<PointId> points;  // ascending
  std::vector<ProbMeasure> measures;

  const ProbMeasure& at(PointId z) const {
    auto it = std::lower_bound(points.begin(), points.end(), z);
    if (it == points.end() || *it != z) throw Error(ErrorCode::InputError, "witness undefined at point " + std::to_string(z));
    return measures[static_cast<std::size_t>(it - points.begin())];
  }
};

using PointMetric = std::function<int(PointId, PointId)>;

/// Nearest point of `subset` under `dist`, ties to the smallest id.
class NearestPointRetraction {
 public:
  NearestPointRetraction(std::vector<PointId> subset, PointMetric dist) : subset_(std::move(subset)), dist_(std::move(dist)) {
    if (subset_.empty()) throw Error(ErrorCode::EmptySubset, "retraction onto an empty set");
    std::sort(subset_.begin(), subset_.end());
  }

  PointId operator()(PointId x) {
    if (auto it = cache_.find(x); it != cache_.end()) return it->second;
    PointId best = subset_.front();
    int best_d = dist_(x, best);
    for (PointId y : subset_) {
      const int d = dist_(x, y);
      if (d < best_d) {
        best_d = d;
        best = y;
      }
    }
    cache_.emplace(x, best);
    return best;
  }

 private:
  std::vector<PointId> subset_;
  PointMetric dist_;
  std::unordered_map<PointId, PointId> cache_;
};

/// Uniform measure on the first n+1 vertices of the ray from z through the
/// basepoint and on along a formal ray f_1, f_2, ... glued at the basepoint,
/// pushed back to the real vertices by the nearest-point retraction (every
/// formal vertex retracts to the basepoint).
inline Witness tree_witness(const TreeGraph& tree, int n) {
  if (tree.size() == 0) throw Error(ErrorCode::EmptyTree, "tree witness on an empty tree");
  if (n < 1) throw Error(ErrorCode::InputError, "n must be positive");
  if (!tree.is_tree()) throw Error(ErrorCode::CycleFound, "tree witness needs a connected acyclic graph");
  const PointId real = tree.size();
  const DistanceTable dist(tree);
  const auto parent = tree.parents_towards(tree.basepoint);
  // Formal vertex f_j has id real + j - 1 and lies at distance j from the basepoint.
  auto extended = [&](PointId x, PointId y) {
    if (x < real) return dist(x, y);
    return static_cast<int>(x - real + 1) + dist(tree.basepoint, y);
  };
  std::vector<PointId> real_points(real);
  for (PointId v = 0; v < real; ++v) real_points[v] = v;
  NearestPointRetraction retract(real_points, extended);

  Witness w;
  w.n = n;
  w.k = 1;
  w.support_radius = n + 1;
  w.universe = real;
  w.points = real_points;
  const Rational unit(1, n + 1);
  for (PointId z = 0; z < real; ++z) {
    std::vector<ProbMeasure::Atom> segment;
    PointId cur = z;
    for (int step = 0; step <= n; ++step) {
      segment.emplace_back(cur, unit);
      if (cur < real && cur != tree.basepoint)
        cur = parent[cur];
      else if (cur < real)
        cur = real;  // step onto f_1
      else
        ++cur;
    }
    w.measures.push_back(pushforward(ProbMeasure::from_atoms(std::move(segment)), std::ref(retract)));
  }
  return w;
}

/// Tensor product of witnesses on the l1 product; point ids are mixed radix,
/// first factor fastest.
inline Witness product_witness(const std::vector<Witness>& parts) {
  if (parts.empty()) throw Error(ErrorCode::InputError, "product of no witnesses");
  for (const auto& p : parts)
    if (p.n != parts.front().n) throw Error(ErrorCode::MismatchedN, "factors use different n");
  if (parts.size() == 1) return parts.front();
  Witness out = parts.front();
  for (std::size_t j = 1; j < parts.size(); ++j) {
    const Witness& q = parts[j];
    if (out.universe > (PointId{1} << 40) / std::max<PointId>(q.universe, 1))
      throw Error(ErrorCode::CapExceeded, "product space too large to materialise");
    Witness next;
    next.n = out.n;
    next.k = out.k + q.k;
    next.support_radius = out.support_radius + q.support_radius;
    next.universe = out.universe * q.universe;
    for (std::size_t b = 0; b < q.points.size(); ++b)
      for (std::size_t a = 0; a < out.points.size(); ++a) {
        next.points.push_back(out.points[a] + q.points[b] * out.universe);
        next.measures.push_back(tensor(out.measures[a], q.measures[b], out.universe));
      }
    // points are generated in ascending order when both inputs are ascending.
    out = std::move(next);
  }
  return out;
}

/// Pushes each a_w (w in subset) forward along the nearest-point retraction
/// onto the subset. Declared support radius doubles.
inline Witness retract_witness(const Witness& w, const std::vector<PointId>& subset, PointMetric dist) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "retraction onto an empty set");
  NearestPointRetraction retract(subset, std::move(dist));
  Witness out;
  out.n = w.n;
  out.k = w.k;
  out.support_radius = 2 * w.support_radius;
  out.universe = w.universe;
  out.points = subset;
  std::sort(out.points.begin(), out.points.end());
  for (PointId p : out.points) out.measures.push_back(pushforward(w.at(p), std::ref(retract)));
  return out;
}

/// Largest d(z, y) over points z and support points y.
inline int measured_support_radius(const Witness& w, const PointMetric& dist) {
  int r = 0;
  for (std::size_t i = 0; i < w.points.size(); ++i)
    for (const auto& atom : w.measures[i].atoms()) r = std::max(r, dist(w.points[i], atom.first));
  return r;
}

/// Composite witness for a ball: tree witnesses on every wall tree, their
/// product over classes, retracted onto mu(ball) by the nearest point in the
/// l1 metric. The product is expanded per point rather than materialised.
/// Points are ball element indices.
inline Witness coxeter_witness(const TreeEmbedding& mu, const EmbeddingReport& verified, int n, unsigned workers = 1) {
  if (!verified.isometry_failures.empty() || !verified.class_count_failures.empty())
    throw Error(ErrorCode::EmbeddingUnverified, "isometry check failed; refusing to build a witness");
  const std::size_t k = mu.factor_count();
  std::vector<Witness> factors;
  factors.reserve(k);
  for (const auto& t : mu.trees()) factors.push_back(tree_witness(t.graph, n));

  Witness out;
  out.n = n;
  out.k = k;
  out.support_radius = 2L * static_cast<long>(k) * (n + 1);
  out.universe = mu.point_count();
  for (PointId z = 0; z < mu.point_count(); ++z) out.points.push_back(z);

  std::vector<std::vector<VertexId>> images(mu.point_count());
  for (PointId g = 0; g < mu.point_count(); ++g) images[g] = mu.image(g);

  auto chunks = parallel_chunks(mu.point_count(), workers, [&](std::size_t begin, std::size_t end) {
    std::map<std::vector<VertexId>, PointId> nearest;
    // Ties go to the smaller mixed-radix product id (first factor fastest),
    // matching retract_witness on the materialised product.
    auto before = [](const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
      return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    };
    auto retract = [&](const std::vector<VertexId>& t) {
      if (auto it = nearest.find(t); it != nearest.end()) return it->second;
      PointId best = 0;
      int best_d = mu.l1(t, images[0]);
      for (PointId g = 1; g < images.size() && best_d > 0; ++g) {
        const int d = mu.l1(t, images[g]);
        if (d < best_d || (d == best_d && before(images[g], images[best]))) {
          best_d = d;
          best = g;
        }
      }
      nearest.emplace(t, best);
      return best;
    };
    std::vector<ProbMeasure> local;
    for (PointId z = begin; z < end; ++z) {
      std::vector<const ProbMeasure*> parts(k);
      for (std::size_t h = 0; h < k; ++h) parts[h] = &factors[h].measures[images[z][h]];
      std::vector<ProbMeasure::Atom> atoms;
      std::vector<std::size_t> pick(k, 0);
      std::vector<VertexId> tuple(k);
      while (true) {
        Rational weight = 1;
        for (std::size_t h = 0; h < k; ++h) {
          const auto& atom = parts[h]->atoms()[pick[h]];
          tuple[h] = atom.first;
          weight *= atom.second;
        }
        atoms.emplace_back(retract(tuple), std::move(weight));
        std::size_t h = 0;
        while (h < k && ++pick[h] == parts[h]->support_size()) pick[h++] = 0;
        if (h == k) break;
      }
      local.push_back(ProbMeasure::from_atoms(std::move(atoms)));
    }
    return local;
  });
  for (auto& c : chunks)
    for (auto& m : c) out.measures.push_back(std::move(m));
  return out;
}

struct PointPair {
  PointId a;
  PointId b;
  int distance;
};

struct VariationReport {
  int K = 0;
  int n = 0;
  std::size_t k = 1;
  Rational measured = 0;
  Rational bound = 0;
  std::size_t pairs_checked = 0;
  PointPair worst{0, 0, 0};
  bool pass = false;
};

/// Exact max of ||a_z - a_w||_1 over the given pairs with distance <= K,
/// against the bound 2 K k / (n + 1).
inline VariationReport variation_report(const Witness& w, int K, const std::vector<PointPair>& pairs) {
  if (K < 1) throw Error(ErrorCode::InputError, "K must be at least 1");
  VariationReport r;
  r.K = K;
  r.n = w.n;
  r.k = w.k;
  r.bound = Rational(2 * K * static_cast<long>(w.k), w.n + 1);
  for (const auto& p : pairs) {
    if (p.distance > K) continue;
    ++r.pairs_checked;
    Rational v = l1_distance(w.at(p.a), w.at(p.b));
    if (v > r.measured) {
      r.measured = std::move(v);
      r.worst = p;
    }
  }
  r.pass = r.measured <= r.bound;
  return r;
}

/// Unordered vertex pairs of a tree at distance <= K (including equal pairs).
inline std::vector<PointPair> tree_pairs(const TreeGraph& tree, int K) {
  const DistanceTable dist(tree);
  std::vector<PointPair> out;
  for (PointId a = 0; a < tree.size(); ++a)
    for (PointId b = a; b < tree.size(); ++b)
      if (dist(a, b) <= K) out.push_back({a, b, dist(a, b)});
  return out;
}

/// Interior ball pairs (length <= R - margin) within word distance K.
inline std::vector<PointPair> ball_pairs(const WordMetric& metric, int margin, int K) {
  std::vector<PointPair> out;
  for (const auto& [g, h] : interior_pairs(metric.ball(), margin, K, 0, metric.ball().size())) {
    const int d = metric.distance(g, h);
    if (d <= K) out.push_back({g, h, d});
  }
  return out;
}

}  // namespace coxwall

#endif  // COXWALL_WITNESS_HPP

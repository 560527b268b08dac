#ifndef COXWALL_COVER_HPP
#define COXWALL_COVER_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <set>
#include <vector>

#include "coxwall/embedding.hpp"
#include "coxwall/parabolic.hpp"
#include "coxwall/tree.hpp"
#include "coxwall/witness.hpp"

namespace coxwall {

using PointSet = std::vector<PointId>;  // ascending
using Family = std::vector<PointSet>;

/// Families of subsets of a point space at scale d. Families not listed in
/// `families` are empty; `family_count` is the declared total.
struct Cover {
  int d = 1;
  std::vector<PointId> space;  // ascending
  std::vector<Family> families;
  std::vector<std::vector<int>> labels;  // one tuple per listed family (tree family index per factor)
  BigInt family_count = 0;
  long diameter_bound = 0;
};

/// Two families from the annuli R_{n,1} = {(n-1)d < r <= nd} around the
/// basepoint: each set is the trace on R_{n,1} of a component of
/// R_{n,2} = {(n-2)d < r <= nd}. Odd n go to family 0, even n to family 1.
inline Cover tree_cover(const TreeGraph& tree, int d) {
  if (d < 1) throw Error(ErrorCode::InputError, "scale d must be positive");
  if (tree.size() == 0) throw Error(ErrorCode::EmptyTree, "cover of an empty tree");
  const auto r = tree.distances_from(tree.basepoint);
  int max_r = 0;
  for (int x : r) {
    if (x == kUnreachable) throw Error(ErrorCode::TreeDisconnected, "tree cover needs a connected tree");
    max_r = std::max(max_r, x);
  }
  auto annulus = [&](int n) { return (max_r + d - 1) / d >= n; };
  Cover c;
  c.d = d;
  c.space.resize(tree.size());
  for (PointId v = 0; v < tree.size(); ++v) c.space[v] = v;
  c.families.resize(2);
  c.labels = {{0}, {1}};
  c.family_count = 2;
  c.diameter_bound = 4L * d;
  for (int n = 0; annulus(n); ++n) {
    auto in_wide = [&](VertexId v) { return r[v] > (n - 2) * d && r[v] <= n * d; };
    auto in_thin = [&](VertexId v) { return r[v] > (n - 1) * d && r[v] <= n * d; };
    std::vector<bool> visited(tree.size(), false);
    for (VertexId start = 0; start < tree.size(); ++start) {
      if (visited[start] || !in_wide(start)) continue;
      PointSet trace;
      std::vector<VertexId> stack{start};
      visited[start] = true;
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        if (in_thin(v)) trace.push_back(v);
        for (VertexId w : tree.adj[v])
          if (!visited[w] && in_wide(w)) {
            visited[w] = true;
            stack.push_back(w);
          }
      }
      if (trace.empty()) continue;
      std::sort(trace.begin(), trace.end());
      c.families[n % 2 == 1 ? 0 : 1].push_back(std::move(trace));
    }
  }
  return c;
}

/// Product of covers on the l1 product: one family per choice of a family in
/// each factor, sets are boxes. Points are mixed radix over the factor spaces
/// (first factor fastest), with radix max id + 1.
inline Cover product_cover(const std::vector<Cover>& covers) {
  if (covers.empty()) throw Error(ErrorCode::InputError, "product of no covers");
  for (const auto& c : covers)
    if (c.d != covers.front().d) throw Error(ErrorCode::ScaleMismatch, "factor covers use different d");
  Cover out = covers.front();
  for (std::size_t j = 1; j < covers.size(); ++j) {
    const Cover& q = covers[j];
    const PointId stride = out.space.empty() ? 1 : out.space.back() + 1;
    Cover next;
    next.d = out.d;
    next.family_count = out.family_count * q.family_count;
    next.diameter_bound = out.diameter_bound + q.diameter_bound;
    for (PointId b : q.space)
      for (PointId a : out.space) next.space.push_back(a + b * stride);
    for (std::size_t fb = 0; fb < q.families.size(); ++fb)
      for (std::size_t fa = 0; fa < out.families.size(); ++fa) {
        Family fam;
        for (const auto& sb : q.families[fb])
          for (const auto& sa : out.families[fa]) {
            PointSet box;
            for (PointId b : sb)
              for (PointId a : sa) box.push_back(a + b * stride);
            std::sort(box.begin(), box.end());
            fam.push_back(std::move(box));
          }
        std::vector<int> label = out.labels[fa];
        label.insert(label.end(), q.labels[fb].begin(), q.labels[fb].end());
        next.families.push_back(std::move(fam));
        next.labels.push_back(std::move(label));
      }
    out = std::move(next);
  }
  return out;
}

/// Intersects every set with `subset` and drops empty sets.
inline Cover restrict_cover(const Cover& cover, std::vector<PointId> subset) {
  std::sort(subset.begin(), subset.end());
  Cover out;
  out.d = cover.d;
  out.space = subset;
  out.family_count = cover.family_count;
  out.diameter_bound = cover.diameter_bound;
  out.labels = cover.labels;
  for (const auto& fam : cover.families) {
    Family kept;
    for (const auto& set : fam) {
      PointSet s;
      std::set_intersection(set.begin(), set.end(), subset.begin(), subset.end(), std::back_inserter(s));
      if (!s.empty()) kept.push_back(std::move(s));
    }
    out.families.push_back(std::move(kept));
  }
  return out;
}

/// Tree covers on every wall tree, multiplied and restricted to mu(ball), then
/// pulled back to ball element ids. Only the nonempty families of the 2^k are
/// listed, in lexicographic order of their labels.
inline Cover coxeter_cover(const TreeEmbedding& mu, const EmbeddingReport& verified, int d) {
  if (!verified.isometry_failures.empty() || !verified.class_count_failures.empty())
    throw Error(ErrorCode::EmbeddingUnverified, "isometry check failed; refusing to build a cover");
  const std::size_t k = mu.factor_count();
  // For each tree vertex: (family, set) of the tree cover containing it.
  std::vector<std::vector<std::pair<int, std::size_t>>> where(k);
  for (std::size_t h = 0; h < k; ++h) {
    const Cover tc = tree_cover(mu.tree(h).graph, d);
    where[h].assign(mu.tree(h).vertex_count(), {-1, 0});
    for (std::size_t f = 0; f < tc.families.size(); ++f)
      for (std::size_t s = 0; s < tc.families[f].size(); ++s)
        for (PointId v : tc.families[f][s]) where[h][v] = {static_cast<int>(f), s};
  }
  std::map<std::vector<int>, std::map<std::vector<std::size_t>, PointSet>> grouped;
  for (PointId g = 0; g < mu.point_count(); ++g) {
    std::vector<int> fam(k);
    std::vector<std::size_t> set(k);
    for (std::size_t h = 0; h < k; ++h) std::tie(fam[h], set[h]) = where[h][mu.coordinate(g, h)];
    grouped[fam][set].push_back(g);
  }
  Cover out;
  out.d = d;
  for (PointId g = 0; g < mu.point_count(); ++g) out.space.push_back(g);
  out.family_count = BigInt(1) << k;
  out.diameter_bound = 4L * d * static_cast<long>(k);
  for (auto& [label, sets] : grouped) {
    Family fam;
    for (auto& [key, members] : sets) fam.push_back(std::move(members));
    std::sort(fam.begin(), fam.end());
    out.families.push_back(std::move(fam));
    out.labels.push_back(label);
  }
  return out;
}

struct FamilyReport {
  std::optional<int> min_distance;  // between distinct sets; none with fewer than two sets
  int max_diameter = 0;
  std::size_t sets = 0;
};

struct CoverReport {
  int d = 0;
  long diameter_bound = 0;
  std::vector<FamilyReport> families;
  bool covers = false;
  std::vector<PointId> missing;
  bool disjoint = false;
  bool bounded = false;
  bool strictly_bounded = false;  // every diameter < bound
  bool pass = false;
};

/// Exact sweep: every family d-disjoint, every set of diameter <= bound, union = space.
inline CoverReport verify_cover(const Cover& cover, const PointMetric& dist, int d) {
  CoverReport r;
  r.d = d;
  r.diameter_bound = cover.diameter_bound;
  r.disjoint = true;
  r.bounded = true;
  r.strictly_bounded = true;
  std::set<PointId> seen;
  for (const auto& fam : cover.families) {
    FamilyReport fr;
    fr.sets = fam.size();
    for (std::size_t a = 0; a < fam.size(); ++a) {
      seen.insert(fam[a].begin(), fam[a].end());
      for (std::size_t i = 0; i < fam[a].size(); ++i)
        for (std::size_t j = i + 1; j < fam[a].size(); ++j)
          fr.max_diameter = std::max(fr.max_diameter, dist(fam[a][i], fam[a][j]));
      for (std::size_t b = a + 1; b < fam.size(); ++b)
        for (PointId x : fam[a])
          for (PointId y : fam[b]) {
            const int dxy = dist(x, y);
            if (!fr.min_distance || dxy < *fr.min_distance) fr.min_distance = dxy;
          }
    }
    if (fr.min_distance && *fr.min_distance < d) r.disjoint = false;
    if (fr.max_diameter > cover.diameter_bound) r.bounded = false;
    if (fr.max_diameter >= cover.diameter_bound) r.strictly_bounded = false;
    r.families.push_back(fr);
  }
  for (PointId p : cover.space)
    if (!seen.count(p)) r.missing.push_back(p);
  r.covers = r.missing.empty();
  r.pass = r.covers && r.disjoint && r.bounded;
  return r;
}

}  // namespace coxwall

#endif  // COXWALL_COVER_HPP

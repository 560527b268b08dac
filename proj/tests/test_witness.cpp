#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "coxwall/coxwall.hpp"

using namespace coxwall;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InputError;
}

TreeGraph star(std::size_t leaves) {
  TreeGraph t;
  t.adj.resize(leaves + 1);
  for (VertexId v = 1; v <= leaves; ++v) t.add_edge(0, v);
  return t;
}

/// Complete binary tree with `levels` levels; basepoint chosen by caller.
TreeGraph binary(int levels, VertexId basepoint) {
  TreeGraph t;
  const std::size_t n = (std::size_t{1} << levels) - 1;
  t.adj.resize(n);
  for (VertexId v = 1; v < n; ++v) t.add_edge((v - 1) / 2, v);
  t.basepoint = basepoint;
  return t;
}

/// Path 0..len-1 with basepoint 0: a_z is uniform on z, z-1, ..., z-n with
/// every position <= 0 collapsed onto 0.
ProbMeasure path_witness_oracle(long z, int n) {
  std::map<PointId, Rational> w;
  for (long j = 0; j <= n; ++j) w[static_cast<PointId>(std::max(z - j, 0L))] += Rational(1, n + 1);
  std::vector<ProbMeasure::Atom> atoms(w.begin(), w.end());
  return ProbMeasure::from_atoms(atoms);
}

PointMetric tree_metric(const TreeGraph& t) {
  auto table = std::make_shared<DistanceTable>(t);
  return [table](PointId a, PointId b) { return (*table)(a, b); };
}

}  // namespace

TEST(Measure, BasicsAndL1) {
  const auto p = ProbMeasure::from_atoms({{2, Rational(1, 3)}, {0, Rational(1, 3)}, {2, Rational(1, 3)}});
  EXPECT_TRUE(p.is_probability());
  EXPECT_EQ(p.support_size(), 2u);
  EXPECT_EQ(p.weight(2), Rational(2, 3));
  EXPECT_EQ(l1_distance(p, ProbMeasure::dirac(0)), Rational(4, 3));
  EXPECT_EQ(l1_distance(p, p), 0);
  EXPECT_EQ(to_string(Rational(2, 6)), "1/3");
  EXPECT_EQ(to_string(Rational(2)), "2/1");
}

TEST(TreeWitness, PathOfFourWithNTwo) {
  const TreeGraph path = path_tree(4);
  const Witness w = tree_witness(path, 2);
  EXPECT_EQ(w.support_radius, 3);
  EXPECT_EQ(w.at(3), ProbMeasure::from_atoms({{3, Rational(1, 3)}, {2, Rational(1, 3)}, {1, Rational(1, 3)}}));
  EXPECT_EQ(w.at(0), ProbMeasure::dirac(0));
  EXPECT_EQ(w.at(1), ProbMeasure::from_atoms({{1, Rational(1, 3)}, {0, Rational(2, 3)}}));
  const auto r = variation_report(w, 1, tree_pairs(path, 1));
  EXPECT_EQ(r.measured, Rational(2, 3));
  EXPECT_EQ(r.bound, Rational(2, 3));
  EXPECT_TRUE(r.pass);
}

TEST(TreeWitness, PathMatchesClosedForm) {
  for (int n : {1, 2, 3, 4, 8, 16})
    for (VertexId len : {1u, 2u, 5u, 25u}) {
      const Witness w = tree_witness(path_tree(len), n);
      for (VertexId z = 0; z < len; ++z) EXPECT_EQ(w.at(z), path_witness_oracle(static_cast<long>(z), n)) << n << " " << z;
    }
}

TEST(TreeWitness, VariationBoundOnAssortedTrees) {
  std::vector<TreeGraph> trees{path_tree(25, 12), path_tree(9, 0), star(6), binary(4, 0), binary(4, 9)};
  for (const auto& t : trees)
    for (int n : {1, 2, 3, 4, 8, 16}) {
      const Witness w = tree_witness(t, n);
      const auto dist = tree_metric(t);
      for (const auto& m : w.measures) EXPECT_TRUE(m.is_probability());
      EXPECT_LT(measured_support_radius(w, dist), w.support_radius);
      for (int K : {1, 2, 3}) {
        const auto r = variation_report(w, K, tree_pairs(t, K));
        EXPECT_TRUE(r.pass) << "n=" << n << " K=" << K << " measured " << to_string(r.measured);
        EXPECT_EQ(r.bound, Rational(2 * K, n + 1));
      }
    }
}

TEST(TreeWitness, Errors) {
  EXPECT_EQ(code_of([] { tree_witness(TreeGraph{}, 2); }), ErrorCode::EmptyTree);
  TreeGraph triangle;
  triangle.adj.resize(3);
  triangle.add_edge(0, 1);
  triangle.add_edge(1, 2);
  triangle.add_edge(2, 0);
  EXPECT_EQ(code_of([&] { tree_witness(triangle, 2); }), ErrorCode::CycleFound);
  EXPECT_EQ(code_of([] { variation_report(tree_witness(path_tree(3), 2), 0, {}); }), ErrorCode::InputError);
}

TEST(ProductWitness, TensorOfTwoPaths) {
  const Witness a = tree_witness(path_tree(3), 2);
  const Witness p = product_witness({a, a});
  EXPECT_EQ(p.universe, 9u);
  EXPECT_EQ(p.k, 2u);
  EXPECT_EQ(p.support_radius, 6);
  const ProbMeasure& corner = p.at(2 + 2 * 3);
  EXPECT_EQ(corner.support_size(), 9u);
  for (const auto& [id, weight] : corner.atoms()) EXPECT_EQ(weight, Rational(1, 9));
  EXPECT_EQ(code_of([&] { product_witness({a, tree_witness(path_tree(3), 3)}); }), ErrorCode::MismatchedN);
}

TEST(ProductWitness, VariationIsSubadditive) {
  const TreeGraph t1 = path_tree(5, 2), t2 = star(3);
  for (int n : {1, 2, 4}) {
    const Witness a = tree_witness(t1, n), b = tree_witness(t2, n);
    const Witness p = product_witness({a, b});
    for (PointId x1 = 0; x1 < 5; ++x1)
      for (PointId x2 = 0; x2 < 4; ++x2)
        for (PointId y1 = 0; y1 < 5; ++y1)
          for (PointId y2 = 0; y2 < 4; ++y2)
            EXPECT_LE(l1_distance(p.at(x1 + 5 * x2), p.at(y1 + 5 * y2)),
                      l1_distance(a.at(x1), a.at(y1)) + l1_distance(b.at(x2), b.at(y2)));
  }
}

TEST(Retraction, NearestPointWithTiesToSmallestId) {
  const TreeGraph path = path_tree(3);
  NearestPointRetraction r({2, 0}, tree_metric(path));
  EXPECT_EQ(r(1), 0u);
  EXPECT_EQ(r(2), 2u);
  EXPECT_EQ(code_of([&] { NearestPointRetraction({}, tree_metric(path)); }), ErrorCode::EmptySubset);
}

TEST(Retraction, PushforwardIsNonExpansiveOnAGrid) {
  // All measures on 4 points with weights in thirds, every nonempty subset, on a path and a star.
  std::vector<ProbMeasure> grid;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      for (int c = 0; a + b + c <= 3; ++c)
        grid.push_back(ProbMeasure::from_atoms(
            {{0, Rational(a, 3)}, {1, Rational(b, 3)}, {2, Rational(c, 3)}, {3, Rational(3 - a - b - c, 3)}}));
  ASSERT_EQ(grid.size(), 20u);
  for (const TreeGraph& t : {path_tree(4), star(3)}) {
    const auto dist = tree_metric(t);
    for (unsigned mask = 1; mask < 16; ++mask) {
      std::vector<PointId> subset;
      for (PointId v = 0; v < 4; ++v)
        if (mask >> v & 1) subset.push_back(v);
      NearestPointRetraction r(subset, dist);
      for (const auto& p : grid)
        for (const auto& q : grid)
          EXPECT_LE(l1_distance(pushforward(p, std::ref(r)), pushforward(q, std::ref(r))), l1_distance(p, q));
    }
  }
}

TEST(Retraction, SupportRadiusAtMostDoubles) {
  const TreeGraph t = binary(4, 0);
  const auto dist = tree_metric(t);
  const Witness w = tree_witness(t, 3);
  const Witness r = retract_witness(w, {0, 1, 4, 5, 6, 13}, dist);
  EXPECT_EQ(r.support_radius, 2 * w.support_radius);
  EXPECT_LT(measured_support_radius(r, dist), r.support_radius);
  for (const auto& m : r.measures) EXPECT_TRUE(m.is_probability());
  EXPECT_EQ(code_of([&] { retract_witness(w, {}, dist); }), ErrorCode::EmptySubset);
}

namespace {

struct Stages {
  BallAtlas atlas;
  WordMetric metric;
  WallOrbitTable table;
  TreeEmbedding mu;
  EmbeddingReport report;

  Stages(const CoxeterSystem& sys, int R, int margin = 2)
      : atlas(enumerate_ball(sys, R)),
        metric(atlas),
        table(wall_orbits(atlas, parity_quotient(sys))),
        mu(embed(atlas, table)),
        report(verify_embedding(metric, table, mu, margin)) {}
};

}  // namespace

TEST(CoxeterWitness, EqualsMaterialisedProductThenRetraction) {
  for (const auto& [sys, R] : std::vector<std::pair<CoxeterSystem, int>>{{systems::infinite_dihedral(), 6},
                                                                         {systems::square(), 3}}) {
    const Stages s(sys, R);
    for (int n : {1, 3}) {
      const Witness fused = coxeter_witness(s.mu, s.report, n);
      std::vector<Witness> parts;
      std::vector<std::size_t> radix;
      for (const auto& t : s.mu.trees()) {
        parts.push_back(tree_witness(t.graph, n));
        radix.push_back(t.vertex_count());
      }
      const Witness product = product_witness(parts);
      auto encode = [&](const std::vector<VertexId>& tuple) {
        PointId id = 0, stride = 1;
        for (std::size_t h = 0; h < tuple.size(); ++h) {
          id += tuple[h] * stride;
          stride *= radix[h];
        }
        return id;
      };
      auto decode = [&](PointId id) {
        std::vector<VertexId> tuple(radix.size());
        for (std::size_t h = 0; h < radix.size(); ++h) {
          tuple[h] = id % radix[h];
          id /= radix[h];
        }
        return tuple;
      };
      std::vector<PointId> subset;
      std::map<PointId, ElemIndex> back;
      for (ElemIndex g = 0; g < s.atlas.size(); ++g) {
        subset.push_back(encode(s.mu.image(g)));
        back[subset.back()] = g;
      }
      const Witness materialised =
          retract_witness(product, subset, [&](PointId a, PointId b) { return s.mu.l1(decode(a), decode(b)); });
      for (ElemIndex g = 0; g < s.atlas.size(); ++g) {
        std::vector<ProbMeasure::Atom> atoms;
        for (const auto& [id, weight] : materialised.at(encode(s.mu.image(g))).atoms()) atoms.emplace_back(back.at(id), weight);
        EXPECT_EQ(fused.at(g), ProbMeasure::from_atoms(atoms)) << "g=" << g << " n=" << n;
      }
      EXPECT_EQ(fused.support_radius, materialised.support_radius);
    }
  }
}

TEST(CoxeterWitness, BoundsAndDecayOnInfiniteDihedral) {
  const Stages s(systems::infinite_dihedral(), 12);
  const PointMetric dist = [&](PointId a, PointId b) { return s.metric.distance(a, b); };
  for (int K : {1, 2}) {
    const auto pairs = ball_pairs(s.metric, 2, K);
    Rational previous = 100;
    for (int n : {4, 8, 16}) {
      const Witness w = coxeter_witness(s.mu, s.report, n);
      EXPECT_LE(measured_support_radius(w, dist), w.support_radius);
      const auto r = variation_report(w, K, pairs);
      EXPECT_TRUE(r.pass);
      EXPECT_EQ(r.bound, Rational(2 * K * 4, n + 1));
      EXPECT_LT(r.measured, previous);
      previous = r.measured;
    }
  }
}

TEST(CoxeterWitness, WorkerCountDoesNotMatter) {
  const Stages s(systems::pentagon(), 4);
  EXPECT_EQ(io::witness_json(coxeter_witness(s.mu, s.report, 4, 1)).dump(),
            io::witness_json(coxeter_witness(s.mu, s.report, 4, 3)).dump());
}

TEST(CoxeterWitness, RefusesAnUnverifiedEmbedding) {
  const Stages s(systems::infinite_dihedral(), 4);
  EmbeddingReport bad = s.report;
  bad.isometry_failures.push_back({0, 1, 2, 1});
  EXPECT_EQ(code_of([&] { coxeter_witness(s.mu, bad, 4); }), ErrorCode::EmbeddingUnverified);
}

TEST(CoxeterWitness, JsonUsesRationalStrings) {
  const Stages s(systems::infinite_dihedral(), 3);
  const auto j = io::witness_json(coxeter_witness(s.mu, s.report, 2));
  EXPECT_EQ(j["n"], 2);
  ASSERT_FALSE(j["points"].empty());
  for (const auto& p : j["points"])
    for (const auto& a : p["support"]) EXPECT_TRUE(a["weight"].is_string());
}

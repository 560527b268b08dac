// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "census_oracle.hpp"
#include "coxwall/cli.hpp"
#include "coxwall/coxwall.hpp"
#include "oracles.hpp"

using namespace coxwall;
namespace fs = std::filesystem;

namespace {

/// Collects failed checks with a short reason; the first few are printed.
struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

struct Stages {
  BallAtlas atlas;
  WordMetric metric;
  WallOrbitTable table;
  TreeEmbedding mu;

  Stages(const CoxeterSystem& sys, int R, unsigned workers = 1)
      : atlas(enumerate_ball(sys, R)),
        metric(atlas),
        table(wall_orbits(atlas, parity_quotient(sys), workers)),
        mu(embed(atlas, table)) {}

  PointMetric dist() const {
    return [this](PointId a, PointId b) { return metric.distance(a, b); };
  }
};

struct Example {
  std::string name;
  CoxeterSystem system;
  int radius;
};

std::vector<Example> infinite_examples() {
  return {{"D_inf", systems::infinite_dihedral(), 12}, {"4-cycle", systems::square(), 6}, {"5-cycle", systems::pentagon(), 5}};
}

PointMetric tree_metric(const TreeGraph& t) {
  auto table = std::make_shared<DistanceTable>(t);
  return [table](PointId a, PointId b) { return (*table)(a, b); };
}

/// Connected and acyclic, checked from the adjacency lists alone.
bool is_tree(const TreeGraph& t) {
  if (t.size() == 0) return false;
  std::size_t degree_sum = 0;
  for (const auto& nb : t.adj) degree_sum += nb.size();
  if (degree_sum != 2 * (t.size() - 1)) return false;
  std::vector<bool> seen(t.size(), false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : t.adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == t.size();
}

std::string str(std::size_t x) { return std::to_string(x); }

void word_metric_is_wall_count(Check& c) {
  auto sweep = [&](const std::string& name, const CoxeterSystem& sys, int R) {
    const BallAtlas atlas = enumerate_ball(sys, R);
    const WordMetric metric(atlas);
    std::size_t pairs = 0;
    for (ElemIndex g = 0; g < atlas.size(); ++g)
      for (ElemIndex h = g; h < atlas.size(); ++h, ++pairs)
        if (separating_walls(metric, g, h).size() != static_cast<std::size_t>(metric.distance(g, h))) {
          c.expect(false, name + " pair " + str(g) + "," + str(h));
          return;
        }
    c.note(name + " " + str(pairs) + " pairs");
  };
  for (const auto& e : infinite_examples()) sweep(e.name, e.system, e.radius);
  sweep("A2", systems::dihedral(3), 3);
}

void ball_sizes(Check& c) {
  for (int R = 0; R <= 12; ++R)
    c.expect(enumerate_ball(systems::infinite_dihedral(), R).size() == static_cast<std::size_t>(2 * R + 1),
             "D_inf R=" + std::to_string(R));
  for (int R = 0; R <= 6; ++R)
    c.expect(enumerate_ball(systems::square(), R).size() == static_cast<std::size_t>(oracle::square_ball_size(R)),
             "4-cycle R=" + std::to_string(R));
  for (int R = 3; R <= 6; ++R) c.expect(enumerate_ball(systems::dihedral(3), R).size() == 6, "A2 R=" + std::to_string(R));
}

void wall_trees_are_trees(Check& c) {
  for (const auto& e : infinite_examples()) {
    const Stages s(e.system, e.radius);
    const auto torsion = torsion_probe(s.atlas, parity_quotient(e.system), 12);
    c.expect(torsion.clean(), e.name + " parity kernel torsion");
    for (const auto& t : s.mu.trees()) c.expect(is_tree(t.graph), e.name + " class " + str(t.label));
    c.note(e.name + " " + str(s.mu.factor_count()) + " trees");
  }
  const CoxeterSystem i2_4 = load_system(std::string(COXWALL_DATA_DIR) + "/systems/i2_4.json");
  const BallAtlas atlas = enumerate_ball(i2_4, 4);
  const auto bad = torsion_probe(atlas, load_quotient(i2_4, std::string(COXWALL_DATA_DIR) + "/quotients/i2_4_torsion.json"), 12);
  c.expect(!bad.torsion.empty(), "torsion control not detected");
  bool found_st2 = false;
  for (const auto& w : bad.torsion) found_st2 = found_st2 || (atlas.word(w.element) == Word{0, 1, 0, 1} && w.order == 2);
  c.expect(found_st2, "(st)^2 not among torsion witnesses");
}

void isometry(Check& c) {
  for (const auto& e : infinite_examples()) {
    if (e.name == "5-cycle") continue;
    const Stages s(e.system, e.radius);
    std::set<std::vector<VertexId>> images;
    for (ElemIndex g = 0; g < s.atlas.size(); ++g) images.insert(s.mu.image(g));
    c.expect(images.size() == s.atlas.size(), e.name + " not injective");
    for (int margin : {2, 4}) {
      const auto r = verify_embedding(s.metric, s.table, s.mu, margin);
      c.expect(r.isometry_failures.empty(), e.name + " isometry margin " + std::to_string(margin));
      c.expect(r.class_count_failures.empty(), e.name + " per-class counts margin " + std::to_string(margin));
      c.note(e.name + " margin " + std::to_string(margin) + ": " + str(r.pairs_checked) + " pairs");
    }
  }
}

void equivariance(Check& c) {
  for (const auto& e : infinite_examples()) {
    const Stages s(e.system, e.radius);
    const auto r = verify_embedding(s.metric, s.table, s.mu, 2);
    c.expect(r.equivariance_failures.empty(), e.name + " equivariance");
    c.expect(r.equivariance_samples > 0, e.name + " no samples");
    for (const auto& perm : r.class_permutation) {
      std::set<long> targets;
      std::size_t defined = 0;
      for (long x : perm)
        if (x >= 0) {
          targets.insert(x);
          ++defined;
        }
      c.expect(targets.size() == defined, e.name + " relabeling not injective");
    }
    c.note(e.name + " " + str(r.equivariance_samples) + " samples");
  }
}

void tree_witness_bound(Check& c) {
  std::vector<std::pair<std::string, TreeGraph>> trees{{"line 25", path_tree(25, 12)}, {"line 33", path_tree(33, 0)}};
  const Stages pentagon(systems::pentagon(), 5);
  for (const auto& t : pentagon.mu.trees()) trees.emplace_back("5-cycle class " + str(t.label), t.graph);
  std::size_t checks = 0;
  for (const auto& [name, t] : trees)
    for (int n : {4, 8, 16}) {
      const Witness w = tree_witness(t, n);
      for (int K : {1, 2, 3}) {
        const auto r = variation_report(w, K, tree_pairs(t, K));
        c.expect(r.pass && r.bound == Rational(2 * K, n + 1), name + " n=" + std::to_string(n) + " K=" + std::to_string(K));
        checks += r.pairs_checked;
      }
    }
  const auto eq = variation_report(tree_witness(path_tree(4), 2), 1, tree_pairs(path_tree(4), 1));
  c.expect(eq.measured == Rational(2, 3) && eq.bound == Rational(2, 3), "line n=2 K=1 equality");
  c.note(str(trees.size()) + " trees, " + str(checks) + " pairs, equality " + to_string(eq.measured));
}

void retraction_properties(Check& c) {
  std::vector<ProbMeasure> grid;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      for (int d = 0; a + b + d <= 3; ++d)
        grid.push_back(ProbMeasure::from_atoms(
            {{0, Rational(a, 3)}, {1, Rational(b, 3)}, {2, Rational(d, 3)}, {3, Rational(3 - a - b - d, 3)}}));
  TreeGraph star;
  star.adj.resize(4);
  for (VertexId v = 1; v < 4; ++v) star.add_edge(0, v);
  std::size_t comparisons = 0;
  for (const TreeGraph& t : {path_tree(4), star}) {
    const auto dist = tree_metric(t);
    for (unsigned mask = 1; mask < 16; ++mask) {
      std::vector<PointId> subset;
      for (PointId v = 0; v < 4; ++v)
        if (mask >> v & 1) subset.push_back(v);
      NearestPointRetraction r(subset, dist);
      for (const auto& p : grid)
        for (const auto& q : grid) {
          ++comparisons;
          c.expect(l1_distance(pushforward(p, std::ref(r)), pushforward(q, std::ref(r))) <= l1_distance(p, q),
                   "pushforward expands");
        }
    }
  }
  c.note(str(comparisons) + " grid pairs");
  for (const auto& e : infinite_examples()) {
    if (e.name == "5-cycle") continue;
    const Stages s(e.system, e.radius);
    const auto report = verify_embedding(s.metric, s.table, s.mu, 2);
    for (int n : {4, 8, 16}) {
      const Witness w = coxeter_witness(s.mu, report, n);
      const long product_radius = static_cast<long>(s.mu.factor_count()) * (n + 1);
      c.expect(w.support_radius == 2 * product_radius, e.name + " declared radius");
      const int measured = measured_support_radius(w, s.dist());
      c.expect(measured < w.support_radius, e.name + " support n=" + std::to_string(n));
      c.note(e.name + " n=" + std::to_string(n) + " support " + std::to_string(measured) + " < " +
             std::to_string(w.support_radius));
    }
  }
}

void composite_witnesses(Check& c) {
  for (const auto& e : infinite_examples()) {
    if (e.name == "5-cycle") continue;
    const Stages s(e.system, e.radius);
    const auto report = verify_embedding(s.metric, s.table, s.mu, 2);
    const long k = static_cast<long>(s.mu.factor_count());
    std::vector<Witness> witnesses;
    for (int n : {4, 8, 16}) {
      witnesses.push_back(coxeter_witness(s.mu, report, n));
      bool probabilities = true;
      for (const auto& m : witnesses.back().measures) probabilities = probabilities && m.is_probability();
      c.expect(probabilities, e.name + " not a probability measure");
      c.expect(measured_support_radius(witnesses.back(), s.dist()) < witnesses.back().support_radius,
               e.name + " condition (1)");
    }
    for (int K : {1, 2}) {
      const auto pairs = ball_pairs(s.metric, 2, K);
      std::optional<Rational> previous;
      std::string trace;
      for (std::size_t i = 0; i < witnesses.size(); ++i) {
        const int n = witnesses[i].n;
        const auto r = variation_report(witnesses[i], K, pairs);
        c.expect(r.pass && r.bound == Rational(2 * k * K, n + 1), e.name + " bound n=" + std::to_string(n));
        c.expect(!previous || r.measured < *previous, e.name + " no decay at n=" + std::to_string(n));
        previous = r.measured;
        trace += " " + to_string(r.measured);
      }
      c.note(e.name + " K=" + std::to_string(K) + ":" + trace);
    }
  }
}

void tree_covers(Check& c) {
  std::vector<std::pair<std::string, TreeGraph>> trees{{"line 25", path_tree(25, 12)}, {"line 40", path_tree(40, 3)}};
  for (const auto& e : infinite_examples()) {
    const Stages s(e.system, e.radius);
    for (const auto& t : s.mu.trees()) trees.emplace_back(e.name + " class " + str(t.label), t.graph);
  }
  for (const auto& [name, t] : trees)
    for (int d : {2, 3}) {
      const auto r = verify_cover(tree_cover(t, d), tree_metric(t), d);
      c.expect(r.pass && r.diameter_bound == 4 * d, name + " d=" + std::to_string(d));
    }
  c.note(str(trees.size()) + " trees");
}

void coxeter_covers(Check& c) {
  for (const auto& e : infinite_examples()) {
    const Stages s(e.system, e.radius);
    const auto report = verify_embedding(s.metric, s.table, s.mu, 2);
    const Cover cover = coxeter_cover(s.mu, report, 2);
    c.expect(cover.family_count == BigInt(1) << s.mu.factor_count(), e.name + " family count");
    const auto r = verify_cover(cover, s.dist(), 2);
    c.expect(r.pass, e.name + " cover");
    int diameter = 0;
    for (const auto& f : r.families) diameter = std::max(diameter, f.max_diameter);
    c.note(e.name + " 2^" + str(s.mu.factor_count()) + " families, " + str(cover.families.size()) +
           " nonempty, max diameter " + std::to_string(diameter) + " <= " + std::to_string(r.diameter_bound));
  }
}

void census(Check& c) {
  const BallAtlas dinf = enumerate_ball(systems::infinite_dihedral(), 3);
  const CellCensus a = davis_census(dinf);
  c.expect(a.count(0) == 7 && a.count(1) == 6 && a.count(2) == 0, "D_inf R=3 counts");
  const BallAtlas square = enumerate_ball(systems::square(), 2);
  const CellCensus b = davis_census(square);
  c.expect(b.count(2) == 4, "4-cycle R=2 squares");
  auto nonzero = [](std::map<int, std::size_t> m) {
    std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
    return m;
  };
  c.expect(nonzero(a.cells_by_dimension) == oracle::census_by_coset_scan(dinf), "D_inf coset scan");
  c.expect(nonzero(b.cells_by_dimension) == oracle::census_by_coset_scan(square), "4-cycle coset scan");
}

std::map<std::string, std::string> cli_artifacts(const std::string& system, const std::string& radius,
                                                 const std::string& workers, const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("coxwall_acceptance_" + tag);
  fs::remove_all(dir);
  std::ostringstream out, err;
  const int code = cli::run_command({"verify-all", "--system", std::string(COXWALL_DATA_DIR) + "/systems/" + system,
                                     "--radius", radius, "--workers", workers, "--d", "2,3", "--out", dir.string()},
                                    out, err);
  std::map<std::string, std::string> files;
  files["exit"] = std::to_string(code);
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[e.path().filename().string()] = s.str();
  }
  fs::remove_all(dir);
  return files;
}

void determinism(Check& c) {
  for (const auto& [system, radius] : std::vector<std::pair<std::string, std::string>>{
           {"dinf.json", "12"}, {"square.json", "6"}, {"pentagon.json", "4"}}) {
    const auto first = cli_artifacts(system, radius, "1", "a");
    const auto again = cli_artifacts(system, radius, "1", "b");
    const auto threaded = cli_artifacts(system, radius, "4", "c");
    c.expect(first.at("exit") == "0", system + " verify-all exit " + first.at("exit"));
    c.expect(first == again, system + " rerun differs");
    c.expect(first == threaded, system + " workers 1 vs 4 differ");
    c.note(system + " " + str(first.size() - 1) + " files");
  }
  const Stages one(systems::pentagon(), 5, 1), four(systems::pentagon(), 5, 4);
  c.expect(one.table.class_of == four.table.class_of, "wall classes depend on workers");
  const auto r1 = verify_embedding(one.metric, one.table, one.mu, 2, 1);
  const auto r4 = verify_embedding(four.metric, four.table, four.mu, 2, 4);
  c.expect(io::embedding_report_json(r1).dump() == io::embedding_report_json(r4).dump(), "embedding report differs");
  c.expect(io::witness_json(coxeter_witness(one.mu, r1, 4, 1)).dump() ==
               io::witness_json(coxeter_witness(four.mu, r4, 4, 4)).dump(),
           "witness differs");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"word metric equals separating wall count on every ball pair", word_metric_is_wall_count},
      {"ball sizes match the line, product and finite models", ball_sizes},
      {"wall trees are trees; torsion in the kernel is detected", wall_trees_are_trees},
      {"product of wall trees is isometric on interior pairs", isometry},
      {"generators permute classes and commute with the vertex maps", equivariance},
      {"tree witness variation <= 2K/(n+1), equality 2/3 on the line", tree_witness_bound},
      {"retraction pushforward is non-expansive and at most doubles support", retraction_properties},
      {"composite witnesses meet 2kK/(n+1) and decay in n", composite_witnesses},
      {"tree covers: d-disjoint, diameter <= 4d, exact covering", tree_covers},
      {"composite covers of the three infinite examples at d = 2", coxeter_covers},
      {"Davis census matches the coset scan", census},
      {"byte-identical reruns, independent of worker count", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << " (" << ms << " ms)\n";
    for (const auto& n : c.notes) std::cout << "       " << n << "\n";
    for (std::size_t f = 0; f < c.failures.size() && f < 10; ++f) std::cout << "   !!  " << c.failures[f] << "\n";
    if (c.failures.size() > 10) std::cout << "   !!  ... " << c.failures.size() - 10 << " more\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

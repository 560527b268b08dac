#ifndef COXWALL_CLI_HPP
#define COXWALL_CLI_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coxwall/io.hpp"

namespace coxwall::cli {

enum ExitCode : int {
  kPass = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kInput = 3,
  kInternal = 4,
  kModuleBase = 10,
};

/// InputError maps to 3; every other library error to 10 + its enum position.
inline int exit_code_for(ErrorCode code) {
  if (code == ErrorCode::InputError) return kInput;
  return kModuleBase + static_cast<int>(code);
}

inline std::string exit_code_table() {
  std::ostringstream out;
  out << "Exit codes:\n"
      << "  0   every verification in scope passed\n"
      << "  1   a verification failed (see the emitted reports)\n"
      << "  2   usage error (unknown subcommand or flag, bad value)\n"
      << "  3   InputError (missing or malformed input file)\n"
      << "  4   unexpected internal error\n";
  for (int c = 0; c <= static_cast<int>(ErrorCode::ScaleMismatch); ++c) {
    const auto code = static_cast<ErrorCode>(c);
    if (code == ErrorCode::InputError) continue;
    out << "  " << exit_code_for(code) << (exit_code_for(code) < 100 ? "  " : " ") << " " << to_string(code) << "\n";
  }
  return out.str();
}

struct RunConfig {
  std::string command;
  std::string system_path;
  int radius = 3;
  std::string quotient = "parity";
  int margin = 2;
  std::vector<int> n_values;
  std::vector<int> K_values;
  std::vector<int> d_values;
  std::string out_dir;
  unsigned workers = 1;
  bool include_keys = false;
  bool dot = true;
  std::size_t cap = kDefaultElementCap;
  int order_bound = 12;
};

namespace detail {

/// Lazily built pipeline stages; each stage depends on the previous ones.
class Pipeline {
 public:
  Pipeline(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out), system_(load_system(cfg.system_path)) {}

  const BallAtlas& atlas() {
    if (!atlas_) atlas_ = std::make_unique<BallAtlas>(enumerate_ball(system_, cfg_.radius, cfg_.cap));
    return *atlas_;
  }

  const WordMetric& metric() {
    if (!metric_) metric_ = std::make_unique<WordMetric>(atlas(), cfg_.cap);
    return *metric_;
  }

  const FiniteQuotient& quotient() {
    if (!quotient_)
      quotient_ = std::make_unique<FiniteQuotient>(cfg_.quotient == "parity" ? parity_quotient(system_)
                                                                               : load_quotient(system_, cfg_.quotient));
    return *quotient_;
  }

  const WallOrbitTable& table() {
    if (!table_) table_ = std::make_unique<WallOrbitTable>(wall_orbits(atlas(), quotient(), cfg_.workers));
    return *table_;
  }

  const TreeEmbedding& mu() {
    if (!mu_) mu_ = std::make_unique<TreeEmbedding>(embed(atlas(), table()));
    return *mu_;
  }

  const EmbeddingReport& report() {
    if (!report_)
      report_ = std::make_unique<EmbeddingReport>(verify_embedding(metric(), table(), mu(), cfg_.margin, cfg_.workers));
    return *report_;
  }

  void write(const std::string& name, const std::string& text) {
    if (cfg_.out_dir.empty()) return;
    std::filesystem::create_directories(cfg_.out_dir);
    const auto path = std::filesystem::path(cfg_.out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InputError, "cannot write " + path.string());
    f << text;
  }

  void write(const std::string& name, const nlohmann::json& doc) { write(name, doc.dump(2) + "\n"); }

  std::ostream& out() { return out_; }
  const RunConfig& cfg() const { return cfg_; }

 private:
  RunConfig cfg_;
  std::ostream& out_;
  CoxeterSystem system_;
  std::unique_ptr<BallAtlas> atlas_;
  std::unique_ptr<WordMetric> metric_;
  std::unique_ptr<FiniteQuotient> quotient_;
  std::unique_ptr<WallOrbitTable> table_;
  std::unique_ptr<TreeEmbedding> mu_;
  std::unique_ptr<EmbeddingReport> report_;
};

inline const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

inline bool stage_ball(Pipeline& p, nlohmann::json& summary) {
  const BallAtlas& atlas = p.atlas();
  p.write("atlas.json", io::atlas_json(atlas, p.cfg().include_keys));
  if (p.cfg().dot) p.write("cayley_ball.dot", io::cayley_dot(atlas));
  p.out() << "ball: " << atlas.size() << " elements, max length " << atlas.max_length()
          << (atlas.closed() ? " (group is finite, ball closed)" : "") << "\n";
  summary["ball"] = {{"elements", atlas.size()}, {"max_length", atlas.max_length()}, {"closed", atlas.closed()}};
  return true;
}

inline bool stage_census(Pipeline& p, nlohmann::json& summary) {
  const CellCensus census = davis_census(p.atlas());
  p.write("census.json", io::census_json(census));
  p.out() << "census:";
  for (const auto& [dim, count] : census.cells_by_dimension) p.out() << " dim" << dim << "=" << count;
  p.out() << "\n";
  summary["census"] = io::census_json(census);
  return true;
}

inline bool stage_walls(Pipeline& p, nlohmann::json& summary) {
  const WallOrbitTable& table = p.table();
  const TorsionReport torsion = torsion_probe(p.atlas(), p.quotient(), p.cfg().order_bound);
  p.write("walls.json", io::orbit_table_json(table));
  p.write("torsion.json", io::torsion_json(torsion));
  p.out() << "walls: " << table.wall_count() << " dual to ball edges, " << table.class_count << " classes, kernel "
          << table.kernel.size() << " elements in ball\n";
  p.out() << "torsion probe: " << torsion.torsion.size() << " torsion elements, " << torsion.violations.size()
          << " commutation violations [" << verdict(torsion.clean()) << "]\n";
  summary["walls"] = {{"walls", table.wall_count()}, {"classes", table.class_count}, {"torsion_clean", torsion.clean()}};
  return torsion.clean();
}

inline bool stage_trees(Pipeline& p, nlohmann::json& summary) {
  const TreeEmbedding& mu = p.mu();
  nlohmann::json trees = nlohmann::json::array();
  std::size_t largest = 0;
  bool ok = true;
  for (std::size_t h = 0; h < mu.factor_count(); ++h) {
    const WallTree& t = mu.tree(h);
    ok = ok && t.graph.is_tree();
    largest = std::max(largest, t.vertex_count());
    trees.push_back(io::wall_tree_json(t));
    if (p.cfg().dot) p.write("wall_tree_" + std::to_string(h) + ".dot", io::wall_tree_dot(p.atlas(), p.table(), t));
  }
  p.write("trees.json", trees);
  p.out() << "trees: " << mu.factor_count() << " wall trees, largest " << largest << " vertices [" << verdict(ok)
          << "]\n";
  summary["trees"] = {{"count", mu.factor_count()}, {"largest", largest}, {"pass", ok}};
  return ok;
}

inline bool stage_embed(Pipeline& p, nlohmann::json& summary) {
  const EmbeddingReport& r = p.report();
  p.write("embedding_report.json", io::embedding_report_json(r));
  p.out() << "embed: " << r.pairs_checked << " interior pairs at margin " << r.margin << ", "
          << r.isometry_failures.size() << " isometry failures, " << r.class_count_failures.size()
          << " per-class failures, " << r.equivariance_failures.size() << " equivariance failures ["
          << verdict(r.pass()) << "]\n";
  summary["embed"] = {{"pairs_checked", r.pairs_checked}, {"pass", r.pass()}};
  return r.pass();
}

inline bool stage_witness(Pipeline& p, nlohmann::json& summary) {
  const auto& metric = p.metric();
  const PointMetric dist = [&metric](PointId a, PointId b) { return metric.distance(a, b); };
  std::vector<std::vector<PointPair>> pairs;
  for (int K : p.cfg().K_values) pairs.push_back(ball_pairs(metric, p.cfg().margin, K));
  nlohmann::json reports = nlohmann::json::array();
  bool ok = true;
  for (int n : p.cfg().n_values) {
    const Witness w = coxeter_witness(p.mu(), p.report(), n, p.cfg().workers);
    bool probability = true;
    for (const auto& m : w.measures) probability = probability && m.is_probability();
    const int support = measured_support_radius(w, dist);
    const bool support_ok = probability && support <= w.support_radius;
    ok = ok && support_ok;
    p.write("witness_n" + std::to_string(n) + ".json", io::witness_json(w));
    p.out() << "witness n=" << n << ": support radius " << support << " <= " << w.support_radius << " ["
            << verdict(support_ok) << "]\n";
    for (std::size_t j = 0; j < p.cfg().K_values.size(); ++j) {
      const VariationReport v = variation_report(w, p.cfg().K_values[j], pairs[j]);
      ok = ok && v.pass;
      auto doc = io::variation_json(v);
      doc["support_radius"] = support;
      doc["support_pass"] = support_ok;
      reports.push_back(std::move(doc));
      p.out() << "  K=" << v.K << ": variation " << to_string(v.measured) << " <= " << to_string(v.bound) << " over "
              << v.pairs_checked << " pairs [" << verdict(v.pass) << "]\n";
    }
  }
  p.write("variation.json", reports);
  summary["witness"] = {{"reports", reports}, {"pass", ok}};
  return ok;
}

inline bool stage_cover(Pipeline& p, nlohmann::json& summary) {
  const auto& metric = p.metric();
  const PointMetric dist = [&metric](PointId a, PointId b) { return metric.distance(a, b); };
  nlohmann::json reports = nlohmann::json::array();
  bool ok = true;
  for (int d : p.cfg().d_values) {
    const Cover c = coxeter_cover(p.mu(), p.report(), d);
    const CoverReport r = verify_cover(c, dist, d);
    ok = ok && r.pass;
    p.write("cover_d" + std::to_string(d) + ".json", io::cover_json(c));
    p.write("cover_report_d" + std::to_string(d) + ".json", io::cover_report_json(r));
    reports.push_back(io::cover_report_json(r));
    p.out() << "cover d=" << d << ": " << c.families.size() << " nonempty of " << c.family_count.str()
            << " families, diameter bound " << c.diameter_bound << " [" << verdict(r.pass) << "]\n";
  }
  summary["cover"] = {{"reports", reports}, {"pass", ok}};
  return ok;
}

}  // namespace detail

/// Runs one subcommand; never throws. Artifacts go to cfg.out_dir when set.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    detail::Pipeline p(cfg, out);
    nlohmann::json summary;
    bool ok = true;
    const std::string& c = cfg.command;
    if (c == "ball") ok = detail::stage_ball(p, summary);
    if (c == "census") ok = detail::stage_census(p, summary);
    if (c == "walls") ok = detail::stage_walls(p, summary);
    if (c == "trees") ok = detail::stage_trees(p, summary);
    if (c == "embed") ok = detail::stage_embed(p, summary);
    if (c == "witness") ok = detail::stage_witness(p, summary);
    if (c == "cover") ok = detail::stage_cover(p, summary);
    if (c == "verify-all") {
      for (auto stage : {detail::stage_ball, detail::stage_census, detail::stage_walls, detail::stage_trees,
                         detail::stage_embed, detail::stage_witness, detail::stage_cover})
        ok = stage(p, summary) && ok;
      summary["pass"] = ok;
      p.write("report.json", summary);
    }
    out << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kPass : kVerificationFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

/// Parses argv and runs the selected subcommand.
inline int run_command(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Walls, wall trees, Property A witnesses and asymptotic dimension covers for Coxeter groups", "coxwall"};
  app.footer(exit_code_table());
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--system", cfg.system_path, "Coxeter matrix JSON file {\"rank\": n, \"m\": [[...]]}")->required();
  app.add_option("--radius", cfg.radius, "ball radius")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--quotient", cfg.quotient, "finite quotient: parity or a JSON file {\"images\": [[...]]}")
      ->capture_default_str();
  app.add_option("--margin", cfg.margin, "interior margin for embedding checks")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--n", cfg.n_values, "witness parameters, comma separated (default 4,8,16)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  app.add_option("--K", cfg.K_values, "distance scales for variation checks (default 1,2)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  app.add_option("--d", cfg.d_values, "cover scales (default 2)")->delimiter(',')->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out_dir, "directory for JSON and DOT artifacts");
  app.add_option("--workers", cfg.workers, "worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--include-keys", cfg.include_keys, "write matrix keys into atlas.json");
  app.add_flag("!--no-dot", cfg.dot, "skip DOT exports");
  app.add_option("--cap", cfg.cap, "element cap for ball enumeration")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--order-bound", cfg.order_bound, "largest order tried by the torsion probe")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  const std::vector<std::pair<std::string, std::string>> commands{
      {"ball", "enumerate the ball; atlas.json, cayley_ball.dot"},
      {"census", "Davis complex cell counts; census.json"},
      {"walls", "walls dual to ball edges, orbit classes, torsion probe; walls.json, torsion.json"},
      {"trees", "wall trees; trees.json, wall_tree_<h>.dot"},
      {"embed", "verify the embedding into the product of trees; embedding_report.json"},
      {"witness", "composite witnesses and variation bounds; witness_n<N>.json, variation.json"},
      {"cover", "covers with d-disjoint families; cover_d<D>.json, cover_report_d<D>.json"},
      {"verify-all", "every stage above; report.json"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.n_values.empty()) cfg.n_values = {4, 8, 16};
  if (cfg.K_values.empty()) cfg.K_values = {1, 2};
  if (cfg.d_values.empty()) cfg.d_values = {2};
  return run(cfg, out, err);
}

inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"coxwall"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_command(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace coxwall::cli

#endif  // COXWALL_CLI_HPP

#ifndef COXWALL_IO_HPP
#define COXWALL_IO_HPP

#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "coxwall/cover.hpp"
#include "coxwall/davis.hpp"
#include "coxwall/embedding.hpp"
#include "coxwall/quotient.hpp"
#include "coxwall/witness.hpp"

namespace coxwall::io {

using nlohmann::json;

inline std::string word_label(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (j) s += ' ';
    s += 's' + std::to_string(w[j]);
  }
  return s;
}

inline json matrix_key_json(const BallAtlas& atlas, const ElemMatrix& m) {
  const Representation& rep = atlas.representation();
  json rows = json::array();
  for (int r = 0; r < rep.rank(); ++r) {
    json row = json::array();
    for (int c = 0; c < rep.rank(); ++c) {
      json coeffs = json::array();
      for (Coeff x : rep.entry(m, r, c)) coeffs.push_back(to_decimal(x));
      row.push_back(std::move(coeffs));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// {radius, rank, conductor, elements:[{index, length, word}], adjacency:[[...]]}; -1 marks a neighbour outside the ball.
inline json atlas_json(const BallAtlas& atlas, bool include_keys = false) {
  json elements = json::array(), adjacency = json::array();
  for (ElemIndex g = 0; g < atlas.size(); ++g) {
    json e{{"index", g}, {"length", atlas.length(g)}, {"word", atlas.word(g)}};
    if (include_keys) e["key"] = matrix_key_json(atlas, atlas.key(g));
    elements.push_back(std::move(e));
    json row = json::array();
    for (ElemIndex n : atlas.neighbors(g)) row.push_back(n == kOutOfBall ? -1L : static_cast<long>(n));
    adjacency.push_back(std::move(row));
  }
  return json{{"radius", atlas.radius()},
              {"rank", atlas.rank()},
              {"conductor", atlas.representation().ring().conductor()},
              {"elements", std::move(elements)},
              {"adjacency", std::move(adjacency)}};
}

inline std::string cayley_dot(const BallAtlas& atlas) {
  std::ostringstream out;
  out << "graph cayley_ball {\n";
  for (ElemIndex g = 0; g < atlas.size(); ++g)
    out << "  n" << g << " [label=\"" << word_label(atlas.word(g)) << "\"];\n";
  for (ElemIndex g = 0; g < atlas.size(); ++g)
    for (GenIndex i = 0; i < atlas.rank(); ++i) {
      const ElemIndex n = atlas.neighbor(g, i);
      if (n != kOutOfBall && n > g) out << "  n" << g << " -- n" << n << " [label=\"s" << i << "\"];\n";
    }
  out << "}\n";
  return out.str();
}

inline json census_json(const CellCensus& census) {
  json dims = json::object();
  for (const auto& [dim, count] : census.cells_by_dimension) dims[std::to_string(dim)] = count;
  return json{{"cells_by_dimension", std::move(dims)}, {"spherical_subsets", census.spherical_subsets}};
}

inline json orbit_table_json(const WallOrbitTable& table) {
  json walls = json::array();
  for (std::size_t w = 0; w < table.catalog.walls.size(); ++w) {
    const auto& dw = table.catalog.walls[w];
    walls.push_back(json{{"wall", w},
                         {"digest", digest_hex(dw.wall.key)},
                         {"length", dw.wall.length ? json(*dw.wall.length) : json(nullptr)},
                         {"class", table.class_of[w]},
                         {"dual_edge", json::array({dw.edge_from, dw.edge_generator})}});
  }
  json merges = json::array();
  for (const auto& m : table.merges)
    merges.push_back(json{{"from", m.from}, {"to", m.to}, {"conjugator", m.conjugator}});
  return json{{"radius", table.radius},
              {"classes", table.class_count},
              {"kernel_in_ball", table.kernel},
              {"walls", std::move(walls)},
              {"merges", std::move(merges)},
              {"classes_may_be_finer_than_orbits", true}};
}

inline std::string wall_tree_dot(const BallAtlas& atlas, const WallOrbitTable& table, const WallTree& tree) {
  std::ostringstream out;
  out << "graph wall_tree_" << tree.label << " {\n";
  for (VertexId v = 0; v < tree.vertex_count(); ++v)
    out << "  c" << v << " [label=\"" << tree.members[v].size() << ": " << word_label(atlas.word(tree.members[v].front()))
        << "\"" << (v == tree.graph.basepoint ? ", shape=box" : "") << "];\n";
  for (const auto& e : tree.edges)
    out << "  c" << e.a << " -- c" << e.b << " [label=\"" << digest_hex(table.catalog.walls[e.wall].wall.key).substr(0, 8)
        << "\"];\n";
  out << "}\n";
  return out.str();
}

inline json wall_tree_json(const WallTree& tree) {
  json edges = json::array();
  for (const auto& e : tree.edges) edges.push_back(json{{"a", e.a}, {"b", e.b}, {"wall", e.wall}});
  return json{{"class", tree.label},
              {"vertices", tree.vertex_count()},
              {"basepoint", tree.graph.basepoint},
              {"members", tree.members},
              {"edges", std::move(edges)}};
}

inline json torsion_json(const TorsionReport& r) {
  json torsion = json::array(), violations = json::array();
  for (const auto& t : r.torsion) torsion.push_back(json{{"element", t.element}, {"order", t.order}});
  for (const auto& v : r.violations)
    violations.push_back(json{{"wall", v.wall}, {"conjugator", v.conjugator}, {"order", v.order}});
  return json{{"kernel_in_ball", r.kernel},
              {"order_bound", r.order_bound},
              {"torsion", std::move(torsion)},
              {"crossing_checks", r.crossing_checks},
              {"crossing_commuting", r.crossing_commuting},
              {"crossing_violations", std::move(violations)},
              {"clean", r.clean()}};
}

inline json embedding_report_json(const EmbeddingReport& r) {
  json iso = json::array(), per_class = json::array(), eq = json::array();
  for (const auto& f : r.isometry_failures) iso.push_back(json{{"g", f.g}, {"h", f.h}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  for (const auto& f : r.class_count_failures)
    per_class.push_back(json{{"g", f.g}, {"h", f.h}, {"class", f.tree}, {"tree_distance", f.tree_distance},
                             {"wall_count", f.wall_count}});
  for (const auto& f : r.equivariance_failures) eq.push_back(json{{"generator", f.generator}, {"what", f.what}});
  return json{{"pairs_checked", r.pairs_checked},
              {"isometry_failures", std::move(iso)},
              {"class_count_failures", std::move(per_class)},
              {"equivariance_failures", std::move(eq)},
              {"equivariance_samples", r.equivariance_samples},
              {"class_permutation", r.class_permutation},
              {"classes", r.classes},
              {"margin", r.margin},
              {"pass", r.pass()}};
}

inline json measure_json(const ProbMeasure& m) {
  json support = json::array();
  for (const auto& [p, w] : m.atoms()) support.push_back(json{{"id", p}, {"weight", to_string(w)}});
  return support;
}

inline json witness_json(const Witness& w) {
  json points = json::array();
  for (std::size_t i = 0; i < w.points.size(); ++i)
    points.push_back(json{{"id", w.points[i]}, {"support", measure_json(w.measures[i])}});
  return json{{"n", w.n}, {"k", w.k}, {"support_radius", w.support_radius}, {"points", std::move(points)}};
}

inline json variation_json(const VariationReport& r) {
  return json{{"K", r.K},
              {"n", r.n},
              {"k", r.k},
              {"measured", to_string(r.measured)},
              {"bound", to_string(r.bound)},
              {"pairs_checked", r.pairs_checked},
              {"worst_pair", json::array({r.worst.a, r.worst.b})},
              {"pass", r.pass}};
}

inline json cover_json(const Cover& c) {
  return json{{"d", c.d},
              {"family_count", c.family_count.str()},
              {"diameter_bound", c.diameter_bound},
              {"labels", c.labels},
              {"families", c.families}};
}

inline json cover_report_json(const CoverReport& r) {
  json fams = json::array();
  for (const auto& f : r.families)
    fams.push_back(json{{"min_dist", f.min_distance ? json(*f.min_distance) : json(nullptr)},
                        {"max_diam", f.max_diameter},
                        {"sets", f.sets}});
  return json{{"d", r.d},
              {"diameter_bound", r.diameter_bound},
              {"families", std::move(fams)},
              {"covers", r.covers},
              {"missing", r.missing},
              {"disjoint", r.disjoint},
              {"bounded", r.bounded},
              {"strictly_bounded", r.strictly_bounded},
              {"pass", r.pass}};
}

}  // namespace coxwall::io

#endif  // COXWALL_IO_HPP

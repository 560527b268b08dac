// End-to-end run on the right-angled 4-cycle: ball, walls, trees, embedding,
// one witness and one cover.
#include <iostream>

#include "coxwall/coxwall.hpp"

int main() {
  using namespace coxwall;
  const BallAtlas atlas = enumerate_ball(systems::square(), 4);
  const WordMetric metric(atlas);
  const FiniteQuotient parity = parity_quotient(systems::square());
  const WallOrbitTable table = wall_orbits(atlas, parity);
  const TreeEmbedding mu = embed(atlas, table);
  const EmbeddingReport report = verify_embedding(metric, table, mu, 2);
  std::cout << "ball " << atlas.size() << ", walls " << table.wall_count() << ", classes " << table.class_count
            << ", embedding " << (report.pass() ? "verified" : "FAILED") << "\n";

  const Witness w = coxeter_witness(mu, report, 8);
  const VariationReport v = variation_report(w, 1, ball_pairs(metric, 2, 1));
  std::cout << "variation at K=1, n=8: " << to_string(v.measured) << " (bound " << to_string(v.bound) << ")\n";

  const Cover cover = coxeter_cover(mu, report, 2);
  const CoverReport cr = verify_cover(cover, [&](PointId a, PointId b) { return metric.distance(a, b); }, 2);
  std::cout << "cover d=2: " << cover.families.size() << " families, " << (cr.pass ? "verified" : "FAILED") << "\n";
  return report.pass() && v.pass && cr.pass ? 0 : 1;
}

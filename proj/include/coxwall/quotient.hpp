#ifndef COXWALL_QUOTIENT_HPP
#define COXWALL_QUOTIENT_HPP

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxwall/atlas.hpp"
#include "coxwall/walls.hpp"

namespace coxwall {

/// One-line notation on {0, ..., n-1}.
using Permutation = std::vector<int>;

inline Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(q.size());
  for (std::size_t x = 0; x < q.size(); ++x) r[x] = p[q[x]];
  return r;
}

inline Permutation identity_permutation(std::size_t n) {
  Permutation r(n);
  for (std::size_t x = 0; x < n; ++x) r[x] = static_cast<int>(x);
  return r;
}

inline bool is_identity(const Permutation& p) {
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p[x] != static_cast<int>(x)) return false;
  return true;
}

/// A homomorphism onto a finite permutation group, one image per generator.
/// Its kernel plays the role of the torsion-free normal subgroup whose orbits
/// organise the walls.
class FiniteQuotient {
 public:
  FiniteQuotient(std::string kind, std::vector<Permutation> images)
      : kind_(std::move(kind)), images_(std::move(images)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::vector<Permutation>& images() const noexcept { return images_; }
  std::size_t points() const { return images_.empty() ? 0 : images_[0].size(); }

  /// image(w) = image(s_{i1}) o image(s_{i2}) o ...
  Permutation image(const Word& w) const {
    Permutation p = identity_permutation(points());
    for (GenIndex i : w) p = compose(p, images_.at(i));
    return p;
  }

  /// Order of the image group, by closure (capped).
  std::size_t image_order(std::size_t cap = 1'000'000) const {
    std::set<Permutation> seen{identity_permutation(points())};
    std::vector<Permutation> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (const auto& p : frontier)
        for (const auto& g : images_) {
          auto q = compose(p, g);
          if (seen.insert(q).second) {
            if (seen.size() > cap) throw Error(ErrorCode::CapExceeded, "quotient image too large");
            next.push_back(std::move(q));
          }
        }
      frontier = std::move(next);
    }
    return seen.size();
  }

  /// Ball elements with trivial image, ascending.
  std::vector<ElemIndex> kernel(const BallAtlas& atlas) const {
    std::vector<Permutation> img(atlas.size());
    std::vector<ElemIndex> out;
    img[0] = identity_permutation(points());
    out.push_back(0);
    for (ElemIndex g = 1; g < atlas.size(); ++g) {
      const Word& w = atlas.word(g);
      const ElemIndex parent = atlas.neighbor(g, w.back());
      img[g] = compose(img[parent], images_[w.back()]);
      if (is_identity(img[g])) out.push_back(g);
    }
    return out;
  }

 private:
  std::string kind_;
  std::vector<Permutation> images_;
};

/// (Z/2)^rank, generator i acting as the transposition (2i 2i+1). Only valid for
/// right-angled systems, where the kernel is torsion free.
inline FiniteQuotient parity_quotient(const CoxeterSystem& system) {
  if (!system.right_angled())
    throw Error(ErrorCode::NotRightAngled, "parity quotient needs every off-diagonal entry in {0, 2}");
  const int n = system.rank();
  std::vector<Permutation> images;
  for (int i = 0; i < n; ++i) {
    Permutation p = identity_permutation(2 * static_cast<std::size_t>(n));
    std::swap(p[2 * i], p[2 * i + 1]);
    images.push_back(std::move(p));
  }
  return FiniteQuotient("parity", std::move(images));
}

inline Permutation permutation_power(const Permutation& p, int k) {
  Permutation r = identity_permutation(p.size());
  for (int e = 0; e < k; ++e) r = compose(r, p);
  return r;
}

/// Checks every defining relation on the supplied images.
inline FiniteQuotient custom_quotient(const CoxeterSystem& system, std::vector<Permutation> images) {
  if (static_cast<int>(images.size()) != system.rank())
    throw Error(ErrorCode::InputError, "need one permutation per generator");
  const std::size_t n = images.empty() ? 0 : images[0].size();
  for (const auto& p : images) {
    if (p.size() != n) throw Error(ErrorCode::InputError, "permutations act on different sets");
    std::vector<bool> hit(n, false);
    for (int x : p) {
      if (x < 0 || static_cast<std::size_t>(x) >= n || hit[x])
        throw Error(ErrorCode::InputError, "image is not a permutation of 0..n-1");
      hit[x] = true;
    }
  }
  for (int i = 0; i < system.rank(); ++i)
    for (int j = i; j < system.rank(); ++j) {
      const int m = i == j ? 2 : system(i, j);
      if (m == 0) continue;
      const Permutation base = i == j ? images[i] : compose(images[i], images[j]);
      if (!is_identity(permutation_power(base, i == j ? 2 : m)))
        throw Error(ErrorCode::RelationViolated,
                    "(" + std::to_string(i) + ", " + std::to_string(j) + "): relation of order " + std::to_string(m) +
                        " fails in the image");
    }
  return FiniteQuotient("custom", std::move(images));
}

/// {"images": [[...], ...]}: one 0-based one-line permutation per generator.
inline FiniteQuotient load_quotient(const CoxeterSystem& system, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InputError, "cannot open quotient file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InputError, std::string("malformed quotient JSON: ") + e.what());
  }
  if (!doc.contains("images") || !doc["images"].is_array())
    throw Error(ErrorCode::InputError, "quotient file needs an \"images\" array");
  std::vector<Permutation> images;
  for (const auto& row : doc["images"]) {
    Permutation p;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw Error(ErrorCode::InputError, "permutation entries must be integers");
      p.push_back(x.get<int>());
    }
    images.push_back(std::move(p));
  }
  return custom_quotient(system, std::move(images));
}

struct TorsionWitness {
  ElemIndex element;
  int order;
};

/// A kernel translate of a wall that meets it: r * (k r k^{-1}) has finite order.
struct CrossingViolation {
  std::size_t wall;      // index in the wall catalog
  ElemIndex conjugator;  // kernel element
  int order;             // order of r * (conjugator r conjugator^{-1})
};

struct TorsionReport {
  std::vector<ElemIndex> kernel;
  int order_bound = 0;
  std::vector<TorsionWitness> torsion;
  std::size_t crossing_checks = 0;
  std::size_t crossing_commuting = 0;  // checks where the conjugate wall coincided with r
  std::vector<CrossingViolation> violations;

  bool clean() const { return torsion.empty() && violations.empty(); }
};

namespace detail {

/// Smallest k in [1, bound] with m^k = 1, or 0. Powers are screened modulo a
/// 61-bit prime (a nonzero residue proves m^k != 1), and only surviving
/// candidates are recomputed exactly, so infinite-order elements whose powers
/// outgrow the coefficient range are still handled.
inline int finite_order(const Representation& rep, const ElemMatrix& m, int bound) {
  constexpr Coeff kModulus = (Coeff{1} << 61) - 1;
  const ElemMatrix id = rep.identity();
  const ElemMatrix base = Representation::reduce_mod(m, kModulus);
  ElemMatrix p = base;
  for (int k = 1; k <= bound; ++k) {
    if (p == id) {
      ElemMatrix exact = m;
      for (int j = 1; j < k; ++j) exact = rep.multiply(exact, m);
      if (exact == id) return k;
    }
    if (k < bound) p = rep.multiply_mod(p, base, kModulus);
  }
  return 0;
}

}  // namespace detail

/// Partial, ball-scale certificate that the kernel is torsion free, plus the
/// algebraic consequence used for walls: if r and g r g^{-1} (g in the kernel)
/// generate a finite dihedral group, they must coincide.
inline TorsionReport torsion_probe(const BallAtlas& atlas, const FiniteQuotient& quotient, int order_bound) {
  const Representation& rep = atlas.representation();
  TorsionReport report;
  report.kernel = quotient.kernel(atlas);
  report.order_bound = order_bound;
  for (ElemIndex g : report.kernel) {
    if (g == 0) continue;
    if (int k = detail::finite_order(rep, atlas.key(g), order_bound)) report.torsion.push_back({g, k});
  }
  const WallCatalog catalog = collect_walls(atlas);
  for (std::size_t w = 0; w < catalog.walls.size(); ++w) {
    const ElemMatrix& r = catalog.walls[w].wall.key;
    for (ElemIndex g : report.kernel) {
      if (g == 0) continue;
      ++report.crossing_checks;
      const ElemMatrix moved = rep.multiply(rep.multiply(atlas.key(g), r), rep.inverse_word_matrix(atlas.word(g)));
      if (moved == r) {
        ++report.crossing_commuting;
        continue;
      }
      if (int k = detail::finite_order(rep, rep.multiply(r, moved), order_bound))
        report.violations.push_back({w, g, k});
    }
  }
  return report;
}

}  // namespace coxwall

#endif  // COXWALL_QUOTIENT_HPP

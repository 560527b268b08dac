#ifndef COXWALL_MEASURE_HPP
#define COXWALL_MEASURE_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace coxwall {

using Rational = boost::multiprecision::cpp_rational;
using PointId = std::size_t;

/// "p/q" with q > 0, also for integers ("1/1").
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Finitely supported probability measure, atoms sorted by point id.
class ProbMeasure {
 public:
  using Atom = std::pair<PointId, Rational>;

  ProbMeasure() = default;

  static ProbMeasure dirac(PointId p) {
    ProbMeasure m;
    m.atoms_.emplace_back(p, Rational(1));
    return m;
  }

  /// Builds from arbitrary atoms: merges repeated points, drops zero weights.
  static ProbMeasure from_atoms(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.first < b.first; });
    ProbMeasure m;
    for (auto& [p, w] : atoms) {
      if (!m.atoms_.empty() && m.atoms_.back().first == p)
        m.atoms_.back().second += w;
      else
        m.atoms_.emplace_back(p, std::move(w));
    }
    std::erase_if(m.atoms_, [](const Atom& a) { return a.second == 0; });
    return m;
  }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t support_size() const noexcept { return atoms_.size(); }

  Rational total() const {
    Rational t = 0;
    for (const auto& a : atoms_) t += a.second;
    return t;
  }

  /// Positive weights summing exactly to one.
  bool is_probability() const {
    for (const auto& a : atoms_)
      if (a.second <= 0) return false;
    return total() == 1;
  }

  Rational weight(PointId p) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), p,
                               [](const Atom& a, PointId x) { return a.first < x; });
    return it != atoms_.end() && it->first == p ? it->second : Rational(0);
  }

  friend bool operator==(const ProbMeasure&, const ProbMeasure&) = default;

 private:
  std::vector<Atom> atoms_;
};

/// ||p - q||_1 by a merge over the sorted supports.
inline Rational l1_distance(const ProbMeasure& p, const ProbMeasure& q) {
  Rational sum = 0;
  auto a = p.atoms().begin(), ae = p.atoms().end();
  auto b = q.atoms().begin(), be = q.atoms().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      sum += abs(a->second);
      ++a;
    } else if (a == ae || b->first < a->first) {
      sum += abs(b->second);
      ++b;
    } else {
      sum += abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  return sum;
}

/// Image measure under a point map.
template <class Map>
ProbMeasure pushforward(const ProbMeasure& m, Map&& map) {
  std::vector<ProbMeasure::Atom> atoms;
  atoms.reserve(m.support_size());
  for (const auto& [p, w] : m.atoms()) atoms.emplace_back(map(p), w);
  return ProbMeasure::from_atoms(std::move(atoms));
}

/// Product measure on pairs encoded as a + b * stride.
inline ProbMeasure tensor(const ProbMeasure& p, const ProbMeasure& q, PointId stride) {
  std::vector<ProbMeasure::Atom> atoms;
  atoms.reserve(p.support_size() * q.support_size());
  for (const auto& [x, wx] : p.atoms())
    for (const auto& [y, wy] : q.atoms()) atoms.emplace_back(x + y * stride, wx * wy);
  return ProbMeasure::from_atoms(std::move(atoms));
}

}  // namespace coxwall

#endif  // COXWALL_MEASURE_HPP

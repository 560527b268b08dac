#ifndef COXWALL_DAVIS_HPP
#define COXWALL_DAVIS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "coxwall/atlas.hpp"
#include "coxwall/parabolic.hpp"
#include "coxwall/union_find.hpp"

namespace coxwall {

/// Cells of the Davis complex (cosets g Gamma_S, S spherical) lying entirely in a ball.
struct CellCensus {
  std::map<int, std::size_t> cells_by_dimension;  // |S| -> number of cosets fully inside
  std::vector<std::vector<GenIndex>> spherical_subsets;

  std::size_t count(int dim) const {
    auto it = cells_by_dimension.find(dim);
    return it == cells_by_dimension.end() ? 0 : it->second;
  }
};

/// A coset g Gamma_S is connected through S-edges, so it lies in the ball iff
/// the S-component of g inside the ball has exactly |Gamma_S| elements.
inline CellCensus davis_census(const BallAtlas& atlas) {
  const int rank = atlas.rank();
  if (rank > 24) throw Error(ErrorCode::CapExceeded, "davis census enumerates all generator subsets");
  CellCensus census;
  for (unsigned mask = 0; mask < (1u << rank); ++mask) {
    std::vector<GenIndex> subset;
    for (GenIndex i = 0; i < rank; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    const ParabolicType type = classify_parabolic(atlas.representation().system(), subset);
    if (!type.finite) continue;
    census.spherical_subsets.push_back(subset);
    const int dim = static_cast<int>(subset.size());
    census.cells_by_dimension.try_emplace(dim, 0);
    if (type.order > atlas.size()) continue;
    const auto order = static_cast<std::size_t>(type.order);
    DisjointSets sets(atlas.size());
    for (ElemIndex g = 0; g < atlas.size(); ++g)
      for (GenIndex i : subset)
        if (ElemIndex n = atlas.neighbor(g, i); n != kOutOfBall) sets.unite(g, n);
    for (ElemIndex g = 0; g < atlas.size(); ++g)
      if (sets.find(g) == g && sets.set_size(g) == order) ++census.cells_by_dimension[dim];
  }
  std::sort(census.spherical_subsets.begin(), census.spherical_subsets.end(),
            [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  return census;
}

}  // namespace coxwall

#endif  // COXWALL_DAVIS_HPP

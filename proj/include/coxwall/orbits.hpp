#ifndef COXWALL_ORBITS_HPP
#define COXWALL_ORBITS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "coxwall/parallel.hpp"
#include "coxwall/quotient.hpp"
#include "coxwall/union_find.hpp"
#include "coxwall/walls.hpp"

namespace coxwall {

/// A union of two walls, justified by an explicit kernel element (as a word)
/// conjugating the reflection of `from` to the reflection of `to`.
struct MergeEvidence {
  std::size_t from;
  std::size_t to;
  Word conjugator;
};

/// Walls dual to ball edges, grouped into classes under conjugation by kernel
/// elements. Every merge carries a checked conjugator; classes can still be
/// finer than the true kernel orbits when the ball is too small to show the
/// needed conjugators.
struct WallOrbitTable {
  int radius = 0;
  WallCatalog catalog;
  std::vector<ElemIndex> kernel;
  std::vector<std::size_t> class_of;
  std::size_t class_count = 0;
  std::vector<MergeEvidence> merges;

  std::vector<std::vector<std::size_t>> members() const {
    std::vector<std::vector<std::size_t>> out(class_count);
    for (std::size_t w = 0; w < class_of.size(); ++w) out[class_of[w]].push_back(w);
    return out;
  }

  std::size_t wall_count() const { return catalog.walls.size(); }
};

namespace detail {

inline Word concat_inverse(Word w, const Word& tail) {
  w.insert(w.end(), tail.rbegin(), tail.rend());
  return w;
}

/// Per generator i: a base generator b(i) and a ball element t_i with
/// t_i s_b t_i^{-1} = s_i, plus for each base generator the image in the
/// quotient of the centralizer elements seen in the ball, closed to a group
/// and labelled with words.
struct ConjugationData {
  std::vector<GenIndex> base;
  std::vector<ElemIndex> transporter;
  std::map<GenIndex, std::map<Permutation, Word>> centralizer_image;
};

inline ConjugationData conjugation_data(const BallAtlas& atlas, const FiniteQuotient& quotient) {
  const Representation& rep = atlas.representation();
  const CoxeterSystem& sys = rep.system();
  const int n = atlas.rank();
  DisjointSets odd(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sys(i, j) > 1 && sys(i, j) % 2 == 1) odd.unite(i, j);
  ConjugationData data;
  data.base.assign(n, 0);
  data.transporter.assign(n, 0);
  for (GenIndex i = 0; i < n; ++i) {
    GenIndex b = 0;
    while (!odd.same(b, i)) ++b;
    data.base[i] = i;
    if (b == i) continue;
    const ElemMatrix target = rep.generator(i);
    for (ElemIndex x = 0; x < atlas.size(); ++x)
      if (rep.conjugate_generator(atlas.key(x), b) == target) {
        data.base[i] = b;
        data.transporter[i] = x;
        break;
      }
  }
  for (GenIndex i = 0; i < n; ++i) {
    if (data.base[i] != i) continue;
    const ElemMatrix s = rep.generator(i);
    std::vector<std::pair<Permutation, Word>> gens;
    for (ElemIndex x = 1; x < atlas.size(); ++x)
      if (rep.conjugate_generator(atlas.key(x), i) == s) gens.emplace_back(quotient.image(atlas.word(x)), atlas.word(x));
    auto& group = data.centralizer_image[i];
    group.emplace(identity_permutation(quotient.points()), Word{});
    std::vector<Permutation> frontier{identity_permutation(quotient.points())};
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (const auto& p : frontier)
        for (const auto& [g, w] : gens) {
          Permutation q = compose(p, g);
          if (group.count(q)) continue;
          Word word = group.at(p);
          word.insert(word.end(), w.begin(), w.end());
          group.emplace(q, std::move(word));
          next.push_back(std::move(q));
        }
      frontier = std::move(next);
    }
  }
  return data;
}

inline bool certifies(const Representation& rep, const FiniteQuotient& quotient, const Word& gamma, const ElemMatrix& from,
                      const ElemMatrix& to) {
  if (!is_identity(quotient.image(gamma))) return false;
  try {
    return rep.multiply(rep.multiply(rep.word_matrix(gamma), from), rep.inverse_word_matrix(gamma)) == to;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ArithmeticOverflow) return false;
    throw;
  }
}

}  // namespace detail

/// Two sources of merges, both checked at matrix level before use:
/// kernel elements of the ball acting on the catalog, and conjugators
/// x_b c x_a^{-1} assembled from dual edges x = g t_i and a centralizer element
/// c whose quotient image closes the loop.
inline WallOrbitTable wall_orbits(const BallAtlas& atlas, const FiniteQuotient& quotient, unsigned workers = 1) {
  const Representation& rep = atlas.representation();
  WallOrbitTable table;
  table.radius = atlas.radius();
  table.catalog = collect_walls(atlas);
  table.kernel = quotient.kernel(atlas);
  const auto& walls = table.catalog.walls;
  const auto data = detail::conjugation_data(atlas, quotient);

  // Key of a wall: base generator and the left coset u H of u = q(g t_i).
  std::vector<Word> lift(walls.size());
  std::map<std::pair<GenIndex, Permutation>, std::size_t> first;
  std::vector<std::size_t> anchor(walls.size());
  std::vector<Permutation> image(walls.size());
  for (std::size_t w = 0; w < walls.size(); ++w) {
    const GenIndex i = walls[w].edge_generator;
    const GenIndex b = data.base[i];
    lift[w] = atlas.word(walls[w].edge_from);
    const Word& t = atlas.word(data.transporter[i]);
    lift[w].insert(lift[w].end(), t.begin(), t.end());
    image[w] = quotient.image(lift[w]);
    Permutation key = image[w];
    for (const auto& [h, word] : data.centralizer_image.at(b)) key = std::min(key, compose(image[w], h));
    anchor[w] = first.try_emplace({b, key}, w).first->second;
  }

  auto chunks = parallel_chunks(walls.size(), workers, [&](std::size_t begin, std::size_t end) {
    std::vector<MergeEvidence> found;
    for (std::size_t w = begin; w < end; ++w) {
      for (ElemIndex g : table.kernel) {
        if (g == 0) continue;
        const ElemMatrix moved = rep.reflection(rep.apply(atlas.key(g), walls[w].root));
        if (auto other = table.catalog.find(moved); other && *other != w) found.push_back({w, *other, atlas.word(g)});
      }
      const std::size_t a = anchor[w];
      if (a == w) continue;
      // q(c) = q(x_w)^{-1} q(x_a)
      const auto& group = data.centralizer_image.at(data.base[walls[w].edge_generator]);
      Permutation inv(image[w].size());
      for (std::size_t x = 0; x < inv.size(); ++x) inv[image[w][x]] = static_cast<int>(x);
      const auto c = group.find(compose(inv, image[a]));
      if (c == group.end()) continue;
      Word gamma = lift[w];
      gamma.insert(gamma.end(), c->second.begin(), c->second.end());
      gamma = detail::concat_inverse(std::move(gamma), lift[a]);
      if (detail::certifies(rep, quotient, gamma, walls[a].wall.key, walls[w].wall.key))
        found.push_back({a, w, std::move(gamma)});
    }
    return found;
  });

  DisjointSets sets(walls.size());
  for (const auto& chunk : chunks)
    for (const auto& m : chunk)
      if (sets.unite(m.from, m.to)) table.merges.push_back(m);
  table.class_of = sets.labels();
  table.class_count = sets.components();
  return table;
}

}  // namespace coxwall

#endif  // COXWALL_ORBITS_HPP

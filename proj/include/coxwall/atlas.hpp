#ifndef COXWALL_ATLAS_HPP
#define COXWALL_ATLAS_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxwall/errors.hpp"
#include "coxwall/representation.hpp"

namespace coxwall {

using ElemIndex = std::size_t;
inline constexpr ElemIndex kOutOfBall = static_cast<ElemIndex>(-1);
inline constexpr std::size_t kDefaultElementCap = 1'000'000;

/// The ball B_R(e) of the Cayley graph, enumerated breadth first in ShortLex
/// order. Element 0 is the identity; indices are ShortLex ranks.
class BallAtlas {
 public:
  BallAtlas(std::shared_ptr<const Representation> rep, int radius, std::size_t cap = kDefaultElementCap)
      : rep_(std::move(rep)), radius_(radius) {
    if (radius_ < 0) throw Error(ErrorCode::InputError, "radius must be nonnegative");
    const int rank = rep_->rank();
    push(rep_->identity(), 0, {});
    for (ElemIndex cur = 0; cur < keys_.size(); ++cur) {
      const int len = lengths_[cur];
      adjacency_[cur].assign(rank, kOutOfBall);
      for (GenIndex i = 0; i < rank; ++i) {
        ElemMatrix next = rep_->times_generator(keys_[cur], i);
        if (auto it = index_.find(next); it != index_.end()) {
          adjacency_[cur][i] = it->second;
          continue;
        }
        if (len + 1 > radius_) continue;
        if (keys_.size() >= cap)
          throw Error(ErrorCode::CapExceeded, "ball of radius " + std::to_string(radius_) + " exceeds " +
                                                  std::to_string(cap) + " elements");
        Word w = words_[cur];
        w.push_back(i);
        adjacency_[cur][i] = push(std::move(next), len + 1, std::move(w));
      }
    }
    for (ElemIndex e = 0; e < size(); ++e) max_length_ = std::max(max_length_, lengths_[e]);
  }

  const Representation& representation() const noexcept { return *rep_; }
  std::shared_ptr<const Representation> representation_ptr() const noexcept { return rep_; }
  int rank() const noexcept { return rep_->rank(); }
  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return keys_.size(); }
  int max_length() const noexcept { return max_length_; }

  const ElemMatrix& key(ElemIndex g) const { return keys_.at(g); }
  int length(ElemIndex g) const { return lengths_.at(g); }
  const Word& word(ElemIndex g) const { return words_.at(g); }
  /// Index of g * s_i, or kOutOfBall.
  ElemIndex neighbor(ElemIndex g, GenIndex i) const { return adjacency_.at(g).at(i); }
  const std::vector<ElemIndex>& neighbors(ElemIndex g) const { return adjacency_.at(g); }

  std::optional<ElemIndex> find(const ElemMatrix& m) const {
    if (auto it = index_.find(m); it != index_.end()) return it->second;
    return std::nullopt;
  }

  /// Ball saturated: the whole (finite) group has been enumerated.
  bool closed() const {
    for (const auto& row : adjacency_)
      for (ElemIndex n : row)
        if (n == kOutOfBall) return false;
    return true;
  }

  /// A reduced word for g built from the right by always stripping the
  /// largest descent. Differs from the ShortLex word whenever g has more than
  /// one reduced expression ending differently.
  Word alternative_word(ElemIndex g) const {
    Word rev;
    ElemIndex cur = g;
    while (cur != 0) {
      GenIndex pick = -1;
      for (GenIndex i = rank() - 1; i >= 0; --i) {
        ElemIndex n = neighbor(cur, i);
        if (n != kOutOfBall && lengths_[n] + 1 == lengths_[cur]) {
          pick = i;
          break;
        }
      }
      rev.push_back(pick);
      cur = neighbor(cur, pick);
    }
    return Word(rev.rbegin(), rev.rend());
  }

 private:
  ElemIndex push(ElemMatrix m, int len, Word w) {
    const ElemIndex id = keys_.size();
    index_.emplace(m, id);
    keys_.push_back(std::move(m));
    lengths_.push_back(len);
    words_.push_back(std::move(w));
    adjacency_.emplace_back();
    return id;
  }

  std::shared_ptr<const Representation> rep_;
  int radius_;
  int max_length_ = 0;
  std::vector<ElemMatrix> keys_;
  std::vector<int> lengths_;
  std::vector<Word> words_;
  std::vector<std::vector<ElemIndex>> adjacency_;
  std::unordered_map<ElemMatrix, ElemIndex, ElemMatrixHash> index_;
};

inline BallAtlas enumerate_ball(const CoxeterSystem& system, int radius, std::size_t cap = kDefaultElementCap) {
  return BallAtlas(std::make_shared<const Representation>(system), radius, cap);
}

/// Exact word metric on a ball B_R, backed by a second enumeration of B_{2R}
/// so that d(g, h) = l(g^{-1} h) can be looked up for every pair in B_R.
class WordMetric {
 public:
  WordMetric(const BallAtlas& ball, std::size_t cap = kDefaultElementCap)
      : ball_(&ball), wide_(ball.representation_ptr(), 2 * ball.radius(), cap) {
    inverses_.reserve(ball.size());
    for (ElemIndex g = 0; g < ball.size(); ++g) inverses_.push_back(ball.representation().inverse_word_matrix(ball.word(g)));
  }

  const BallAtlas& ball() const noexcept { return *ball_; }
  const BallAtlas& wide() const noexcept { return wide_; }

  /// Index of g^{-1} h in the wide ball.
  ElemIndex quotient_index(ElemIndex g, ElemIndex h) const {
    check(g);
    check(h);
    auto found = wide_.find(ball_->representation().multiply(inverses_[g], ball_->key(h)));
    if (!found) throw Error(ErrorCode::NotInAtlas, "g^-1 h outside the doubled ball");
    return *found;
  }

  int distance(ElemIndex g, ElemIndex h) const {
    if (g == h) return 0;
    return wide_.length(quotient_index(g, h));
  }

  const ElemMatrix& inverse(ElemIndex g) const { return inverses_.at(g); }

 private:
  void check(ElemIndex g) const {
    if (g >= ball_->size()) throw Error(ErrorCode::NotInAtlas, "element index " + std::to_string(g));
  }

  const BallAtlas* ball_;
  BallAtlas wide_;
  std::vector<ElemMatrix> inverses_;
};

}  // namespace coxwall

#endif  // COXWALL_ATLAS_HPP

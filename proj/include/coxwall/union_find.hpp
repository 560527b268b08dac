#ifndef COXWALL_UNION_FIND_HPP
#define COXWALL_UNION_FIND_HPP

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace coxwall {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns false if x and y were already joined.
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    --components_;
    return true;
  }

  bool same(std::size_t x, std::size_t y) { return find(x) == find(y); }
  std::size_t set_size(std::size_t x) { return size_[find(x)]; }
  std::size_t components() const noexcept { return components_; }

  /// Dense labels 0..components-1, numbered by smallest member.
  std::vector<std::size_t> labels() {
    std::vector<std::size_t> root_label(parent_.size(), static_cast<std::size_t>(-1)), out(parent_.size());
    std::size_t next = 0;
    for (std::size_t x = 0; x < parent_.size(); ++x) {
      const std::size_t r = find(x);
      if (root_label[r] == static_cast<std::size_t>(-1)) root_label[r] = next++;
      out[x] = root_label[r];
    }
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

}  // namespace coxwall

#endif  // COXWALL_UNION_FIND_HPP

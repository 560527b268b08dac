#ifndef COXWALL_PARABOLIC_HPP
#define COXWALL_PARABOLIC_HPP

#include <algorithm>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxwall/system.hpp"

namespace coxwall {

using BigInt = boost::multiprecision::cpp_int;

/// Outcome of classifying a standard parabolic subgroup from its diagram.
struct ParabolicType {
  bool finite = false;
  BigInt order = 0;                     // meaningful when finite
  std::vector<std::string> components;  // e.g. "A3", "I2(5)", "D4"; empty for the trivial group

  friend bool operator==(const ParabolicType&, const ParabolicType&) = default;
};

namespace detail {

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Classifies one connected diagram. Returns false if it is not in the finite list.
inline bool classify_component(const CoxeterSystem& system, const std::vector<GenIndex>& nodes, std::string& name,
                               BigInt& order) {
  const int n = static_cast<int>(nodes.size());
  if (n == 1) {
    name = "A1";
    order = 2;
    return true;
  }
  // Edges of the diagram: m >= 3 or m = 0.
  std::vector<std::vector<int>> nbr(n);
  int edges = 0, heavy = 0, heavy_label = 3;
  int heavy_a = -1, heavy_b = -1;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const int m = system(nodes[a], nodes[b]);
      if (m == 2) continue;
      if (m == 0) return false;
      nbr[a].push_back(b);
      nbr[b].push_back(a);
      ++edges;
      if (m > 3) {
        ++heavy;
        heavy_label = m;
        heavy_a = a;
        heavy_b = b;
      }
    }
  if (n == 2) {
    const int m = system(nodes[0], nodes[1]);
    name = m == 3 ? "A2" : "I2(" + std::to_string(m) + ")";
    order = 2 * m;
    return true;
  }
  if (edges != n - 1) return false;  // connected with a cycle
  if (heavy > 1) return false;
  int max_deg = 0, branch = -1, branches = 0;
  for (int a = 0; a < n; ++a) {
    max_deg = std::max<int>(max_deg, static_cast<int>(nbr[a].size()));
    if (nbr[a].size() >= 3) {
      branch = a;
      ++branches;
    }
  }
  if (max_deg > 3 || branches > 1) return false;

  if (branches == 1) {
    if (heavy != 0) return false;
    // Arm lengths from the branch node.
    std::vector<int> arms;
    for (int start : nbr[branch]) {
      int len = 1, prev = branch, cur = start;
      while (nbr[cur].size() == 2) {
        const int next = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) {
      name = "D" + std::to_string(n);
      order = BigInt(1) << (n - 1);
      order *= factorial(n);
      return true;
    }
    if (arms[0] == 1 && arms[1] == 2) {
      if (arms[2] == 2) { name = "E6"; order = 51840; return true; }
      if (arms[2] == 3) { name = "E7"; order = 2903040; return true; }
      if (arms[2] == 4) { name = "E8"; order = 696729600; return true; }
    }
    return false;
  }

  // A path. Position of each node along it.
  int end = 0;
  while (nbr[end].size() != 1) ++end;
  std::vector<int> pos(n, -1);
  for (int prev = -1, cur = end, i = 0;; ++i) {
    pos[cur] = i;
    int next = -1;
    for (int x : nbr[cur])
      if (x != prev) next = x;
    if (next < 0) break;
    prev = cur;
    cur = next;
  }
  if (heavy == 0) {
    name = "A" + std::to_string(n);
    order = factorial(n + 1);
    return true;
  }
  const int lo = std::min(pos[heavy_a], pos[heavy_b]);
  const bool at_end = lo == 0 || lo == n - 2;
  if (heavy_label == 4) {
    if (at_end) {
      name = "B" + std::to_string(n);
      order = BigInt(1) << n;
      order *= factorial(n);
      return true;
    }
    if (n == 4) {
      name = "F4";
      order = 1152;
      return true;
    }
    return false;
  }
  if (heavy_label == 5 && at_end) {
    if (n == 3) { name = "H3"; order = 120; return true; }
    if (n == 4) { name = "H4"; order = 14400; return true; }
  }
  return false;
}

}  // namespace detail

/// Decides finiteness of the parabolic subgroup generated by `subset` purely
/// from the diagram: each connected component must be one of A_n, B_n, D_n,
/// E_6, E_7, E_8, F_4, H_3, H_4, I_2(m).
inline ParabolicType classify_parabolic(const CoxeterSystem& system, const std::vector<GenIndex>& subset) {
  ParabolicType result{true, 1, {}};
  std::vector<bool> seen(subset.size(), false);
  for (std::size_t s = 0; s < subset.size(); ++s) {
    if (seen[s]) continue;
    std::vector<GenIndex> comp;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      comp.push_back(subset[a]);
      for (std::size_t b = 0; b < subset.size(); ++b)
        if (!seen[b] && system(subset[a], subset[b]) != 2 && subset[a] != subset[b]) {
          seen[b] = true;
          stack.push_back(b);
        }
    }
    std::sort(comp.begin(), comp.end());
    std::string name;
    BigInt order;
    if (!detail::classify_component(system, comp, name, order)) return ParabolicType{false, 0, {}};
    result.order *= order;
    result.components.push_back(std::move(name));
  }
  return result;
}

}  // namespace coxwall

#endif  // COXWALL_PARABOLIC_HPP

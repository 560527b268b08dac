#ifndef COXWALL_SYSTEM_HPP
#define COXWALL_SYSTEM_HPP

#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxwall/errors.hpp"

namespace coxwall {

using GenIndex = int;

/// Presentation data of a Coxeter system. Off-diagonal zero means the two
/// generators satisfy no relation (their product has infinite order).
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;

  /// Validates the invariants: unit diagonal, symmetric, off-diagonal in {0,2,3,...}.
  CoxeterMatrix(int rank, std::vector<std::vector<int>> m) : rank_(rank), m_(std::move(m)) {
    if (rank_ <= 0) throw Error(ErrorCode::RankMismatch, "rank must be positive");
    if (static_cast<int>(m_.size()) != rank_)
      throw Error(ErrorCode::RankMismatch, "matrix has " + std::to_string(m_.size()) + " rows, rank is " +
                                               std::to_string(rank_));
    for (const auto& row : m_)
      if (static_cast<int>(row.size()) != rank_)
        throw Error(ErrorCode::RankMismatch, "matrix row length differs from rank");
    for (int i = 0; i < rank_; ++i) {
      if (m_[i][i] != 1) throw Error(ErrorCode::BadDiagonal, "m[" + std::to_string(i) + "][" + std::to_string(i) + "] != 1");
      for (int j = 0; j < rank_; ++j) {
        if (m_[i][j] != m_[j][i])
          throw Error(ErrorCode::NonSymmetric,
                      "m[" + std::to_string(i) + "][" + std::to_string(j) + "] != m[" + std::to_string(j) + "][" +
                          std::to_string(i) + "]");
        if (i != j && (m_[i][j] < 0 || m_[i][j] == 1))
          throw Error(ErrorCode::BadEntry,
                      "off-diagonal entry m[" + std::to_string(i) + "][" + std::to_string(j) + "] = " +
                          std::to_string(m_[i][j]));
      }
    }
  }

  int rank() const noexcept { return rank_; }
  int operator()(GenIndex i, GenIndex j) const { return m_[i][j]; }
  const std::vector<std::vector<int>>& entries() const noexcept { return m_; }

  /// Every off-diagonal entry is 0 or 2.
  bool right_angled() const {
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        if (i != j && m_[i][j] != 0 && m_[i][j] != 2) return false;
    return true;
  }

  /// Restriction to the generators in `subset`, in the given order.
  CoxeterMatrix restricted(const std::vector<GenIndex>& subset) const {
    const int k = static_cast<int>(subset.size());
    std::vector<std::vector<int>> m(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) m[a][b] = m_[subset[a]][subset[b]];
    return CoxeterMatrix(k, std::move(m));
  }

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  int rank_ = 0;
  std::vector<std::vector<int>> m_;
};

using CoxeterSystem = CoxeterMatrix;

/// Parses {"rank": n, "m": [[...]]}. Integers only.
inline CoxeterSystem parse_system(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("rank") || !doc.contains("m"))
    throw Error(ErrorCode::InputError, "system document needs \"rank\" and \"m\"");
  if (!doc["rank"].is_number_integer()) throw Error(ErrorCode::InputError, "\"rank\" must be an integer");
  const auto& rows = doc["m"];
  if (!rows.is_array()) throw Error(ErrorCode::InputError, "\"m\" must be an array of arrays");
  std::vector<std::vector<int>> m;
  for (const auto& row : rows) {
    if (!row.is_array()) throw Error(ErrorCode::InputError, "\"m\" must be an array of arrays");
    std::vector<int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw Error(ErrorCode::InputError, "matrix entries must be integers");
      r.push_back(x.get<int>());
    }
    m.push_back(std::move(r));
  }
  return CoxeterMatrix(doc["rank"].get<int>(), std::move(m));
}

inline CoxeterSystem parse_system(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InputError, std::string("malformed JSON: ") + e.what());
  }
  return parse_system(doc);
}

inline CoxeterSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InputError, "cannot open system file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_system(text);
}

inline nlohmann::json to_json(const CoxeterSystem& system) {
  return nlohmann::json{{"rank", system.rank()}, {"m", system.entries()}};
}

// Named systems used by the tests and shipped data files.
namespace systems {

inline CoxeterSystem dihedral(int m) { return CoxeterMatrix(2, {{1, m}, {m, 1}}); }

inline CoxeterSystem infinite_dihedral() { return dihedral(0); }

/// Right-angled system on an n-cycle: neighbours commute, everything else is free.
inline CoxeterSystem right_angled_cycle(int n) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    m[i][i] = 1;
    m[i][(i + 1) % n] = 2;
    m[(i + 1) % n][i] = 2;
  }
  return CoxeterMatrix(n, std::move(m));
}

inline CoxeterSystem square() { return right_angled_cycle(4); }
inline CoxeterSystem pentagon() { return right_angled_cycle(5); }

/// Linear diagram with the given consecutive labels (3 = simple bond); all other pairs commute.
inline CoxeterSystem linear(const std::vector<int>& bonds) {
  const int n = static_cast<int>(bonds.size()) + 1;
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = bonds[i];
  return CoxeterMatrix(n, std::move(m));
}

}  // namespace systems

}  // namespace coxwall

#endif  // COXWALL_SYSTEM_HPP

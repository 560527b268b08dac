#ifndef COXWALL_REPRESENTATION_HPP
#define COXWALL_REPRESENTATION_HPP

#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "coxwall/cyclotomic.hpp"
#include "coxwall/system.hpp"

namespace coxwall {

using Word = std::vector<GenIndex>;

/// Image of a group element under the geometric representation, on the root
/// basis alpha_1..alpha_rank. Entry (r, c) occupies coefficients
/// [(r * rank + c) * degree, ... + degree). Two elements are equal iff their
/// coefficient vectors are equal.
struct ElemMatrix {
  std::vector<Coeff> coeffs;

  friend bool operator==(const ElemMatrix&, const ElemMatrix&) = default;
};

/// FNV-1a over the coefficient bytes. Stable across runs and platforms of the same endianness.
inline std::uint64_t digest(const ElemMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Coeff c : m.coeffs) {
    auto u = static_cast<unsigned __int128>(c);
    for (int b = 0; b < 16; ++b) {
      h ^= static_cast<std::uint64_t>(u & 0xff);
      h *= 1099511628211ULL;
      u >>= 8;
    }
  }
  return h;
}

inline std::string digest_hex(const ElemMatrix& m) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest(m)));
  return buf;
}

struct ElemMatrixHash {
  std::size_t operator()(const ElemMatrix& m) const noexcept { return static_cast<std::size_t>(digest(m)); }
};

/// The geometric representation of a Coxeter system over its cyclotomic ring.
/// sigma_i(alpha_j) = alpha_j + c_ij alpha_i for j != i, sigma_i(alpha_i) = -alpha_i,
/// with c_ij = 2cos(pi/m_ij) and c = 2 for m_ij = 0.
class Representation {
 public:
  explicit Representation(CoxeterSystem system)
      : system_(std::move(system)), ring_(cyclotomic_context(system_)), rank_(system_.rank()),
        deg_(ring_.degree()) {
    cos_.resize(static_cast<std::size_t>(rank_) * rank_ * deg_, 0);
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) {
        std::vector<Coeff> c = i == j ? ring_.integer(-2) : ring_.cos_constant(system_(i, j));
        std::copy(c.begin(), c.end(), cos_.begin() + (static_cast<std::size_t>(i) * rank_ + j) * deg_);
      }
    for (int i = 0; i < rank_; ++i) {
      ElemMatrix g = identity();
      for (int j = 0; j < rank_; ++j) {
        auto e = entry(g, i, j);
        if (i == j) {
          e[0] = -1;
        } else {
          const auto c = cos(i, j);
          std::copy(c.begin(), c.end(), e.begin());
        }
      }
      generators_.push_back(std::move(g));
    }
  }

  const CoxeterSystem& system() const noexcept { return system_; }
  const CycloContext& ring() const noexcept { return ring_; }
  int rank() const noexcept { return rank_; }
  int degree() const noexcept { return deg_; }

  ElemMatrix identity() const {
    ElemMatrix m{std::vector<Coeff>(static_cast<std::size_t>(rank_) * rank_ * deg_, 0)};
    for (int i = 0; i < rank_; ++i) entry(m, i, i)[0] = 1;
    return m;
  }

  const ElemMatrix& generator(GenIndex i) const { return generators_.at(i); }

  std::span<Coeff> entry(ElemMatrix& m, int r, int c) const {
    return {m.coeffs.data() + (static_cast<std::size_t>(r) * rank_ + c) * deg_, static_cast<std::size_t>(deg_)};
  }
  std::span<const Coeff> entry(const ElemMatrix& m, int r, int c) const {
    return {m.coeffs.data() + (static_cast<std::size_t>(r) * rank_ + c) * deg_, static_cast<std::size_t>(deg_)};
  }

  ElemMatrix multiply(const ElemMatrix& a, const ElemMatrix& b) const {
    ElemMatrix out{std::vector<Coeff>(a.coeffs.size(), 0)};
    for (int r = 0; r < rank_; ++r)
      for (int k = 0; k < rank_; ++k) {
        const auto x = entry(a, r, k);
        if (is_zero(x)) continue;
        for (int c = 0; c < rank_; ++c) ring_.mul_add(entry(out, r, c), x, entry(b, k, c));
      }
    return out;
  }

  /// Coefficients reduced into [0, modulus).
  static ElemMatrix reduce_mod(const ElemMatrix& m, Coeff modulus) {
    ElemMatrix out = m;
    for (auto& x : out.coeffs) x = (x % modulus + modulus) % modulus;
    return out;
  }

  /// Product of two matrices already reduced mod `modulus`.
  ElemMatrix multiply_mod(const ElemMatrix& a, const ElemMatrix& b, Coeff modulus) const {
    ElemMatrix out{std::vector<Coeff>(a.coeffs.size(), 0)};
    for (int r = 0; r < rank_; ++r)
      for (int k = 0; k < rank_; ++k) {
        const auto x = entry(a, r, k);
        if (is_zero(x)) continue;
        for (int c = 0; c < rank_; ++c) ring_.mul_add_mod(entry(out, r, c), x, entry(b, k, c), modulus);
      }
    return out;
  }

  /// m * sigma_i: column j gains c_ij * column i, column i flips sign.
  ElemMatrix times_generator(const ElemMatrix& m, GenIndex i) const {
    ElemMatrix out = m;
    for (int r = 0; r < rank_; ++r) {
      const auto col_i = entry(m, r, i);
      for (int j = 0; j < rank_; ++j) {
        if (j == i) continue;
        ring_.mul_add(entry(out, r, j), col_i, cos(i, j));
      }
      auto e = entry(out, r, i);
      for (auto& x : e) x = checked::sub(0, x);
    }
    return out;
  }

  /// sigma_i * m: only row i changes.
  ElemMatrix generator_times(GenIndex i, const ElemMatrix& m) const {
    ElemMatrix out = m;
    for (int c = 0; c < rank_; ++c) {
      auto e = entry(out, i, c);
      for (auto& x : e) x = checked::sub(0, x);
      for (int j = 0; j < rank_; ++j) {
        if (j == i) continue;
        ring_.mul_add(e, cos(i, j), entry(m, j, c));
      }
    }
    return out;
  }

  ElemMatrix word_matrix(const Word& w) const {
    ElemMatrix m = identity();
    for (GenIndex i : w) m = times_generator(m, i);
    return m;
  }

  /// Matrix of w^{-1}, from the reversed word.
  ElemMatrix inverse_word_matrix(const Word& w) const {
    ElemMatrix m = identity();
    for (auto it = w.rbegin(); it != w.rend(); ++it) m = times_generator(m, *it);
    return m;
  }

  /// Column `i` of m, i.e. the root m(alpha_i), as rank blocks of `degree` coefficients.
  std::vector<Coeff> root(const ElemMatrix& m, GenIndex i) const {
    std::vector<Coeff> beta(static_cast<std::size_t>(rank_) * deg_);
    for (int r = 0; r < rank_; ++r) {
      const auto e = entry(m, r, i);
      std::copy(e.begin(), e.end(), beta.begin() + static_cast<std::size_t>(r) * deg_);
    }
    return beta;
  }

  /// m * beta for a vector of rank blocks.
  std::vector<Coeff> apply(const ElemMatrix& m, const std::vector<Coeff>& beta) const {
    std::vector<Coeff> out(beta.size(), 0);
    for (int r = 0; r < rank_; ++r) {
      std::span<Coeff> o{out.data() + static_cast<std::size_t>(r) * deg_, static_cast<std::size_t>(deg_)};
      for (int c = 0; c < rank_; ++c) ring_.mul_add(o, entry(m, r, c), block(beta, c));
    }
    return out;
  }

  /// Reflection in the root beta: v -> v - 2B(beta, v) beta, where
  /// 2B(alpha_i, alpha_j) = 2 if i == j and -c_ij otherwise.
  ElemMatrix reflection(const std::vector<Coeff>& beta) const {
    // row[j] = 2B(beta, alpha_j) = sum_i beta_i * 2B(alpha_i, alpha_j) = -sum_i beta_i * cos(i, j)
    std::vector<Coeff> form(static_cast<std::size_t>(rank_) * deg_, 0);
    for (int j = 0; j < rank_; ++j) {
      std::span<Coeff> fj{form.data() + static_cast<std::size_t>(j) * deg_, static_cast<std::size_t>(deg_)};
      for (int i = 0; i < rank_; ++i) ring_.mul_add(fj, block(beta, i), cos(i, j));
    }
    ElemMatrix out = identity();
    // out = I - beta * (2B(beta, .)); the sign of form is already negated above.
    for (int r = 0; r < rank_; ++r)
      for (int c = 0; c < rank_; ++c)
        ring_.mul_add(entry(out, r, c), block(beta, r),
                      std::span<const Coeff>{form.data() + static_cast<std::size_t>(c) * deg_,
                                             static_cast<std::size_t>(deg_)});
    return out;
  }

  /// g * s_i * g^{-1} computed from the root g(alpha_i).
  ElemMatrix conjugate_generator(const ElemMatrix& g, GenIndex i) const { return reflection(root(g, i)); }

  /// c_ij (with c_ii stored as -2, so that -c_ij is 2B(alpha_i, alpha_j) everywhere).
  std::span<const Coeff> cos(int i, int j) const {
    return {cos_.data() + (static_cast<std::size_t>(i) * rank_ + j) * deg_, static_cast<std::size_t>(deg_)};
  }

 private:
  static bool is_zero(std::span<const Coeff> x) {
    for (Coeff c : x)
      if (c != 0) return false;
    return true;
  }
  std::span<const Coeff> block(const std::vector<Coeff>& v, int i) const {
    return {v.data() + static_cast<std::size_t>(i) * deg_, static_cast<std::size_t>(deg_)};
  }

  CoxeterSystem system_;
  CycloContext ring_;
  int rank_;
  int deg_;
  std::vector<Coeff> cos_;
  std::vector<ElemMatrix> generators_;
};

inline ElemMatrix generator_matrix(const Representation& rep, GenIndex i) { return rep.generator(i); }

}  // namespace coxwall

#endif  // COXWALL_REPRESENTATION_HPP

#ifndef COXWALL_CYCLOTOMIC_HPP
#define COXWALL_CYCLOTOMIC_HPP

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "coxwall/errors.hpp"
#include "coxwall/system.hpp"

namespace coxwall {

/// Coefficient type for the exact ring. All arithmetic on it is overflow-checked.
using Coeff = __int128;

namespace checked {

inline Coeff add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::ArithmeticOverflow, "coefficient addition");
  return r;
}

inline Coeff sub(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::ArithmeticOverflow, "coefficient subtraction");
  return r;
}

inline Coeff mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::ArithmeticOverflow, "coefficient product");
  return r;
}

}  // namespace checked

inline std::string to_decimal(Coeff v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // Work with the negative value so the minimum __int128 does not overflow.
  Coeff x = neg ? v : -v;
  std::string digits;
  while (x != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(x % 10)));
    x /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

/// Integer polynomial, coefficients from the constant term upward.
using IntPoly = std::vector<Coeff>;

namespace poly {

inline void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = checked::add(r[i + j], checked::mul(a[i], b[j]));
  trim(r);
  return r;
}

/// Exact division by a monic divisor; throws if the remainder is nonzero.
inline IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  trim(num);
  const std::size_t dn = den.size() - 1;
  if (num.size() - 1 < dn) throw Error(ErrorCode::ArithmeticOverflow, "polynomial division degree");
  IntPoly q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const Coeff c = num[k];
    q[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] = checked::sub(num[k - dn + j], checked::mul(c, den[j]));
  }
  for (std::size_t j = 0; j < dn; ++j)
    if (num[j] != 0) throw Error(ErrorCode::ArithmeticOverflow, "inexact polynomial division");
  trim(q);
  return q;
}

}  // namespace poly

/// N-th cyclotomic polynomial via Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d.
inline IntPoly cyclotomic_polynomial(int n) {
  IntPoly num(static_cast<std::size_t>(n) + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) num = poly::divide_exact(num, cyclotomic_polynomial(d));
  return num;
}

/// Exact arithmetic in Z[x]/(Phi_N), the ring holding every 2cos(pi/m) entry of
/// the geometric representation.
class CycloContext {
 public:
  explicit CycloContext(int conductor) : n_(conductor), phi_(cyclotomic_polynomial(conductor)) {
    deg_ = static_cast<int>(phi_.size()) - 1;
    // x^e mod Phi for deg <= e <= 2 deg - 2.
    IntPoly cur(deg_, 0);
    for (int j = 0; j < deg_; ++j) cur[j] = -phi_[j];
    for (int e = deg_; e <= 2 * deg_ - 2; ++e) {
      high_powers_.push_back(cur);
      cur = shift_reduce(cur);
    }
  }

  int conductor() const noexcept { return n_; }
  int degree() const noexcept { return deg_; }
  const IntPoly& phi() const noexcept { return phi_; }

  /// Canonical residue of x^e.
  std::vector<Coeff> power(long e) const {
    e %= n_;
    if (e < 0) e += n_;
    std::vector<Coeff> cur(deg_, 0);
    cur[0] = 1;
    for (long i = 0; i < e; ++i) cur = shift_reduce(cur);
    return cur;
  }

  std::vector<Coeff> integer(Coeff v) const {
    std::vector<Coeff> r(deg_, 0);
    r[0] = v;
    return r;
  }

  /// 2cos(pi/m), with m = 0 read as the limit value 2.
  std::vector<Coeff> cos_constant(int m) const {
    if (m == 0) return integer(2);
    if (m == 2) return integer(0);
    const long k = n_ / (2 * m);
    auto a = power(k);
    const auto b = power(-k);
    for (int j = 0; j < deg_; ++j) a[j] = checked::add(a[j], b[j]);
    return a;
  }

  /// out += a * b.
  void mul_add(std::span<Coeff> out, std::span<const Coeff> a, std::span<const Coeff> b) const {
    if (deg_ == 1) {
      out[0] = checked::add(out[0], checked::mul(a[0], b[0]));
      return;
    }
    std::vector<Coeff> prod(2 * deg_ - 1, 0);
    for (int i = 0; i < deg_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < deg_; ++j)
        if (b[j] != 0) prod[i + j] = checked::add(prod[i + j], checked::mul(a[i], b[j]));
    }
    for (int j = 0; j < deg_; ++j) out[j] = checked::add(out[j], prod[j]);
    for (int e = deg_; e <= 2 * deg_ - 2; ++e) {
      if (prod[e] == 0) continue;
      const auto& red = high_powers_[e - deg_];
      for (int j = 0; j < deg_; ++j) out[j] = checked::add(out[j], checked::mul(prod[e], red[j]));
    }
  }

  /// out += a * b with every coefficient reduced into [0, modulus); modulus < 2^62.
  void mul_add_mod(std::span<Coeff> out, std::span<const Coeff> a, std::span<const Coeff> b, Coeff modulus) const {
    std::vector<Coeff> prod(2 * deg_ - 1, 0);
    for (int i = 0; i < deg_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < deg_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % modulus;
    }
    for (int j = 0; j < deg_; ++j) out[j] = (out[j] + prod[j]) % modulus;
    for (int e = deg_; e <= 2 * deg_ - 2; ++e) {
      if (prod[e] == 0) continue;
      const auto& red = high_powers_[e - deg_];
      for (int j = 0; j < deg_; ++j) out[j] = ((out[j] + prod[e] * (red[j] % modulus)) % modulus + modulus) % modulus;
    }
  }

  /// Numerical value at zeta = exp(2 pi i / N); used only by tests as an oracle.
  std::complex<double> evaluate(std::span<const Coeff> a) const {
    const double pi = std::acos(-1.0);
    std::complex<double> z = std::polar(1.0, 2.0 * pi / n_), acc = 0, p = 1;
    for (int j = 0; j < deg_; ++j) {
      acc += static_cast<double>(a[j]) * p;
      p *= z;
    }
    return acc;
  }

 private:
  std::vector<Coeff> shift_reduce(const std::vector<Coeff>& v) const {
    std::vector<Coeff> r(deg_, 0);
    const Coeff top = v[deg_ - 1];
    for (int j = deg_ - 1; j > 0; --j) r[j] = v[j - 1];
    if (top != 0)
      for (int j = 0; j < deg_; ++j) r[j] = checked::sub(r[j], checked::mul(top, phi_[j]));
    return r;
  }

  int n_;
  int deg_ = 1;
  IntPoly phi_;
  std::vector<std::vector<Coeff>> high_powers_;
};

/// N = 2 lcm{m_ij >= 3}, or 1 when the system only has labels 0 and 2.
inline int conductor_for(const CoxeterSystem& system) {
  long l = 1;
  bool any = false;
  for (int i = 0; i < system.rank(); ++i)
    for (int j = i + 1; j < system.rank(); ++j)
      if (system(i, j) >= 3) {
        l = std::lcm(l, static_cast<long>(system(i, j)));
        any = true;
        if (l > (1L << 20)) throw Error(ErrorCode::ArithmeticOverflow, "conductor too large");
      }
  return any ? static_cast<int>(2 * l) : 1;
}

inline CycloContext cyclotomic_context(const CoxeterSystem& system) { return CycloContext(conductor_for(system)); }

}  // namespace coxwall

#endif  // COXWALL_CYCLOTOMIC_HPP

#pragma once

// Renormalised theta functions and the elliptic building blocks A^y(x),
// B^y(x) and c(x) of the gl(2|1) dynamical R-matrix.
//
//   theta(z) = prod_{m>=0} (1 - p^m z)(1 - p^{m+1}/z)
//   A^y(x)   = theta(p^{2k}, p^{y-x}) / theta(p^y, p^{2k-x}) * p^{(2k-y)x}
//   B^y(x)   = theta(p^{2k-y}, p^{-x}) / theta(p^{2k-x}, p^{-y}) * p^{2k(x-y)}
//   c(x)     = p^{2kx} theta(p^{2k+x}) / theta(p^x)
//
// All powers p^x use the principal branch exp(x log p) with real log p, so
// p^{x+y} = p^x p^y holds exactly for complex exponents.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>

#include "errors.hpp"

namespace ellqkz {

using cplx = std::complex<double>;

inline constexpr cplx I_unit{0.0, 1.0};

class Nome {
public:
  explicit Nome(double p) : p_(p) {
    if (!(p > 0.0 && p < 1.0)) {
      throw DomainError("nome must satisfy 0 < p < 1, got " + std::to_string(p));
    }
    log_p_ = std::log(p);
  }

  double value() const noexcept { return p_; }
  double log() const noexcept { return log_p_; }

  /// pi*sqrt(-1)/log(p); p raised to it is -1.
  cplx half_period() const noexcept { return std::numbers::pi * I_unit / log_p_; }

private:
  double p_;
  double log_p_;
};

struct EllipticParams {
  Nome nome{0.35};
  cplx kappa{0.27, 0.0};
  double theta_tol = 1e-16;
  double pole_tol = 1e-10;
  int max_factors = 10000;

  double p() const noexcept { return nome.value(); }

  /// q = p^{-kappa}.
  cplx q() const noexcept { return std::exp(-kappa * nome.log()); }

  /// |p^{2 kappa}| must not coincide with |p^m| for an integer m.
  bool kappa_generic(double tol = 1e-8) const noexcept {
    const double two_re_kappa = 2.0 * kappa.real();
    return std::abs(two_re_kappa - std::round(two_re_kappa)) > tol;
  }
};

inline cplx pow_p(const EllipticParams& ep, cplx x) { return std::exp(x * ep.nome.log()); }

/// Number of factor pairs (M + 1) needed so that the dropped factors change
/// the product by a relative amount below theta_tol. Both families of the
/// tail are bounded by p^{M+1} max(|z|, 1/|z|) / (1 - p); the extra factor 4
/// covers the two families and log(1 - u) >= -2|u| for |u| <= 1/2.
inline int theta_factor_count(const EllipticParams& ep, cplx z) {
  const double a = std::abs(z);
  const double big = 4.0 * std::max(a, 1.0 / a) / (1.0 - ep.p());
  const double need = (std::log(ep.theta_tol) - std::log(big)) / ep.nome.log();
  const double m_plus_one = std::max(1.0, std::floor(need) + 1.0);
  if (!std::isfinite(m_plus_one) || m_plus_one > ep.max_factors) {
    throw OverflowError("theta truncation exceeds cap of " + std::to_string(ep.max_factors) +
                        " factors for |z| = " + std::to_string(a));
  }
  return static_cast<int>(m_plus_one);
}

/// The product truncated to `count` factor pairs m = 0, ..., count - 1.
inline cplx theta_truncated(const EllipticParams& ep, cplx z, int count) {
  if (z == cplx{0.0, 0.0}) throw DomainError("theta(z) is undefined at z = 0");
  const double p = ep.p();
  const cplx inv = 1.0 / z;
  cplx prod{1.0, 0.0};
  double pm = 1.0;  // p^m
  for (int m = 0; m < count; ++m) {
    prod *= (1.0 - pm * z) * (1.0 - pm * p * inv);
    pm *= p;
  }
  return prod;
}

inline cplx theta(const EllipticParams& ep, cplx z) {
  if (z == cplx{0.0, 0.0}) throw DomainError("theta(z) is undefined at z = 0");
  return theta_truncated(ep, z, theta_factor_count(ep, z));
}

inline cplx theta_multi(const EllipticParams& ep, std::span<const cplx> zs) {
  cplx prod{1.0, 0.0};
  for (cplx z : zs) prod *= theta(ep, z);
  return prod;
}

inline cplx theta_multi(const EllipticParams& ep, std::initializer_list<cplx> zs) {
  return theta_multi(ep, std::span<const cplx>(zs.begin(), zs.size()));
}

namespace detail {

inline cplx checked_denominator(const EllipticParams& ep, cplx exponent, const char* label,
                                const char* where) {
  const cplx value = theta(ep, pow_p(ep, exponent));
  if (std::abs(value) < ep.pole_tol) throw PoleError(label, where);
  return value;
}

}  // namespace detail

inline cplx coeff_A(const EllipticParams& ep, cplx y, cplx x) {
  const cplx k2 = 2.0 * ep.kappa;
  const cplx den = detail::checked_denominator(ep, y, "theta(p^y)", "A^y(x)") *
                   detail::checked_denominator(ep, k2 - x, "theta(p^{2kappa-x})", "A^y(x)");
  const cplx num = theta(ep, pow_p(ep, k2)) * theta(ep, pow_p(ep, y - x));
  return num / den * pow_p(ep, (k2 - y) * x);
}

inline cplx coeff_B(const EllipticParams& ep, cplx y, cplx x) {
  const cplx k2 = 2.0 * ep.kappa;
  const cplx den = detail::checked_denominator(ep, k2 - x, "theta(p^{2kappa-x})", "B^y(x)") *
                   detail::checked_denominator(ep, -y, "theta(p^{-y})", "B^y(x)");
  const cplx num = theta(ep, pow_p(ep, k2 - y)) * theta(ep, pow_p(ep, -x));
  return num / den * pow_p(ep, k2 * (x - y));
}

inline cplx c_func(const EllipticParams& ep, cplx x) {
  const cplx k2 = 2.0 * ep.kappa;
  const cplx den = detail::checked_denominator(ep, x, "theta(p^x)", "c(x)");
  return pow_p(ep, k2 * x) * theta(ep, pow_p(ep, k2 + x)) / den;
}

/// -c(x)/c(-x), evaluated through theta(p^{-x}) = -p^{-x} theta(p^x) so that
/// the removable singularity at x = 0 disappears:
///   -c(x)/c(-x) = p^{(4k-1)x} theta(p^{2k+x}) / theta(p^{2k-x}).
inline cplx minus_c_ratio(const EllipticParams& ep, cplx x) {
  const cplx k2 = 2.0 * ep.kappa;
  const cplx den = detail::checked_denominator(ep, k2 - x, "theta(p^{2kappa-x})", "-c(x)/c(-x)");
  return pow_p(ep, (2.0 * k2 - 1.0) * x) * theta(ep, pow_p(ep, k2 + x)) / den;
}

/// eps * c(x) / c(eps x) for a sign eps: 1 when eps = +1, -c(x)/c(-x) when eps = -1.
inline cplx signed_c_ratio(const EllipticParams& ep, int eps, cplx x) {
  return eps > 0 ? cplx{1.0, 0.0} : minus_c_ratio(ep, x);
}

}  // namespace ellqkz

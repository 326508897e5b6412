#pragma once

// Seeded random parameter draws that stay a fixed distance away from the
// pole sets of the elliptic building blocks.

#include <cstdint>
#include <random>
#include <vector>

#include "elliptic.hpp"
#include "hecke_spin.hpp"

namespace ellqkz {

/// Distance from v to the nearest point of Z + (2 pi sqrt(-1)/log p) Z.
inline double lattice_distance(cplx v, const EllipticParams& ep) {
  const double period = 2.0 * std::numbers::pi / std::abs(ep.nome.log());
  const double re = v.real() - std::round(v.real());
  const double im = v.imag() - period * std::round(v.imag() / period);
  return std::hypot(re, im);
}

class Sampler {
public:
  explicit Sampler(std::uint64_t seed, double margin = 0.05) : rng_(seed), margin_(margin) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  cplx complex_in(double re, double im) { return {uniform(-re, re), uniform(-im, im)}; }

  /// Spectral parameter x with x and -x away from the poles at 2 kappa + lattice.
  bool spectral_ok(cplx x, const EllipticParams& ep) const {
    const cplx k2 = 2.0 * ep.kappa;
    return lattice_distance(k2 - x, ep) > margin_ && lattice_distance(k2 + x, ep) > margin_ &&
           lattice_distance(x, ep) > margin_;
  }

  /// Dynamical parameters whose differences, shifted by small multiples of
  /// kappa and pi sqrt(-1)/log p, avoid the lattice.
  bool phi_ok(const Phi& phi, const EllipticParams& ep) const {
    const cplx h = ep.nome.half_period();
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (a == b) continue;
        for (int k = -4; k <= 4; ++k)
          for (int m = -2; m <= 2; ++m) {
            const cplx y = phi[a] - phi[b] + static_cast<double>(k) * ep.kappa + static_cast<double>(m) * h;
            if (lattice_distance(y, ep) < margin_) return false;
          }
      }
    return true;
  }

  cplx spectral(const EllipticParams& ep, double re = 0.6, double im = 0.4) {
    for (;;) {
      const cplx x = complex_in(re, im);
      if (spectral_ok(x, ep)) return x;
    }
  }

  /// A pair (x, y) with x, y, x + y all admissible.
  std::pair<cplx, cplx> spectral_pair(const EllipticParams& ep) {
    for (;;) {
      const cplx x = spectral(ep);
      const cplx y = spectral(ep);
      if (spectral_ok(x + y, ep)) return {x, y};
    }
  }

  Phi phi(const EllipticParams& ep) {
    for (;;) {
      Phi out{complex_in(1.0, 0.5), complex_in(1.0, 0.5), complex_in(1.0, 0.5)};
      if (phi_ok(out, ep)) return out;
    }
  }

  /// Point z in C^n with |Re z_i| <= 1, Im z_i in [0, 2 pi/|log p|), all
  /// consecutive and non-consecutive differences admissible.
  std::vector<cplx> point(int n, const EllipticParams& ep) {
    const double period = 2.0 * std::numbers::pi / std::abs(ep.nome.log());
    for (;;) {
      std::vector<cplx> z(n);
      for (auto& v : z) v = {uniform(-1.0, 1.0), uniform(0.0, period)};
      bool ok = true;
      for (int a = 0; a < n && ok; ++a)
        for (int b = 0; b < n && ok; ++b)
          if (a != b) ok = spectral_ok(z[a] - z[b], ep) && transport_ok(z[a] - z[b], ep);
      if (ok) return z;
    }
  }

  /// Point with Im z_i in [-period/4, period/4): differences stay in the
  /// centred fundamental domain, where the gauge factors p^{a x} of the
  /// connection coefficients stay moderate.
  std::vector<cplx> centred_point(int n, const EllipticParams& ep) {
    const double quarter = 0.5 * std::numbers::pi / std::abs(ep.nome.log());
    for (;;) {
      std::vector<cplx> z(n);
      for (auto& v : z) v = {uniform(-1.0, 1.0), uniform(-quarter, quarter)};
      bool ok = true;
      for (int a = 0; a < n && ok; ++a)
        for (int b = 0; b < n && ok; ++b)
          if (a != b) ok = spectral_ok(z[a] - z[b], ep) && transport_ok(z[a] - z[b], ep);
      if (ok) return z;
    }
  }

  std::mt19937_64& engine() noexcept { return rng_; }

private:
  /// Keeps q^{-1} - q p^{d} and its shifts by integers away from zero.
  bool transport_ok(cplx d, const EllipticParams& ep) const {
    for (int m = -3; m <= 3; ++m)
      if (lattice_distance(d + static_cast<double>(m) - 2.0 * ep.kappa, ep) < margin_) return false;
    return true;
  }

  std::mt19937_64 rng_;
  double margin_;
};

}  // namespace ellqkz

#pragma once

// Transport operators C_w(z) of the quantum affine KZ equations for the spin
// representation, w in the extended affine symmetric group S_n x| Z^n.
//
// Generators act on points z in C^n by
//   s_i z     = z with z_i, z_{i+1} swapped,
//   xi z      = (z_n + 1, z_1, ..., z_{n-1}),
//   xi^{-1} z = (z_2, ..., z_n, z_1 - 1),
//   tau(e_j) z = z + e_j,
// and the cocycle is C_{uv}(z) = C_u(z) C_v(u^{-1} z).

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "hecke_spin.hpp"
#include "symgroup.hpp"

namespace ellqkz {

struct AffineLetter {
  enum class Kind { S, Xi, XiInv };
  Kind kind = Kind::S;
  int index = 1;  ///< i for s_i

  static AffineLetter s(int i) { return {Kind::S, i}; }
  static AffineLetter xi() { return {Kind::Xi, 0}; }
  static AffineLetter xi_inv() { return {Kind::XiInv, 0}; }

  AffineLetter inverse() const {
    switch (kind) {
      case Kind::Xi: return xi_inv();
      case Kind::XiInv: return xi();
      default: return *this;
    }
  }

  friend bool operator==(const AffineLetter&, const AffineLetter&) = default;

  std::string to_string() const {
    switch (kind) {
      case Kind::Xi: return "xi";
      case Kind::XiInv: return "xi^-1";
      default: return "s" + std::to_string(index);
    }
  }
};

using AffineWord = std::vector<AffineLetter>;

inline AffineWord inverse_word(const AffineWord& w) {
  AffineWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

/// Concatenation with cancellation of adjacent xi xi^{-1} and s_i s_i pairs.
inline AffineWord concat(const AffineWord& a, const AffineWord& b) {
  AffineWord out = a;
  for (const auto& l : b) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

/// An element z -> (perm(z))_i + shift_i with (perm z)_i = z_{src[i]}: an
/// exact affine map with integer translation part.
struct AffineElement {
  std::vector<int> src;    ///< 0-based source coordinate of each output coordinate
  std::vector<int> shift;

  static AffineElement identity(int n) {
    AffineElement e;
    e.src.resize(n);
    e.shift.assign(n, 0);
    for (int k = 0; k < n; ++k) e.src[k] = k;
    return e;
  }

  static AffineElement letter(int n, const AffineLetter& l) {
    AffineElement e = identity(n);
    switch (l.kind) {
      case AffineLetter::Kind::S:
        std::swap(e.src[l.index - 1], e.src[l.index]);
        break;
      case AffineLetter::Kind::Xi:
        for (int k = 0; k < n; ++k) e.src[k] = (k + n - 1) % n;
        e.shift[0] = 1;
        break;
      case AffineLetter::Kind::XiInv:
        for (int k = 0; k < n; ++k) e.src[k] = (k + 1) % n;
        e.shift[n - 1] = -1;
        break;
    }
    return e;
  }

  static AffineElement translation(int n, int j) {
    AffineElement e = identity(n);
    e.shift[j - 1] = 1;
    return e;
  }

  /// (this o other)(z) = this(other(z)).
  AffineElement compose(const AffineElement& other) const {
    AffineElement e;
    const int n = static_cast<int>(src.size());
    e.src.resize(n);
    e.shift.resize(n);
    for (int k = 0; k < n; ++k) {
      e.src[k] = other.src[src[k]];
      e.shift[k] = other.shift[src[k]] + shift[k];
    }
    return e;
  }

  friend bool operator==(const AffineElement&, const AffineElement&) = default;

  template <class T>
  std::vector<T> apply(const std::vector<T>& z) const {
    std::vector<T> out(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) out[k] = z[src[k]] + static_cast<double>(shift[k]);
    return out;
  }
};

inline AffineElement word_element(int n, const AffineWord& w) {
  AffineElement e = AffineElement::identity(n);
  for (const auto& l : w) e = e.compose(AffineElement::letter(n, l));
  return e;
}

/// tau(e_n) = s_{n-1} ... s_1 xi and tau(e_j) = s_j ... s_{n-1} tau(e_n) s_{n-1} ... s_j.
inline AffineWord translation_word(int n, int j) {
  if (j < 1 || j > n) throw PreconditionError("translation_word: need 1 <= j <= n");
  AffineWord w;
  for (int k = j; k <= n - 1; ++k) w.push_back(AffineLetter::s(k));
  for (int k = n - 1; k >= 1; --k) w.push_back(AffineLetter::s(k));
  w.push_back(AffineLetter::xi());
  for (int k = n - 1; k >= j; --k) w.push_back(AffineLetter::s(k));
  return w;
}

/// The inverse of letter `l` applied to the point z.
inline std::vector<cplx> letter_inverse_action(int n, const AffineLetter& l, const std::vector<cplx>& z) {
  return AffineElement::letter(n, l.inverse()).apply(z);
}

inline ComplexMatrix transport_letter(const SpinRep& rep, const AffineLetter& l, const std::vector<cplx>& z) {
  switch (l.kind) {
    case AffineLetter::Kind::Xi: return rep.zeta();
    case AffineLetter::Kind::XiInv: return rep.zeta_inv();
    default: break;
  }
  const int i = l.index;
  if (i < 1 || i >= rep.n()) throw PreconditionError("transport_letter: s_i needs 1 <= i < n");
  const auto& ep = rep.params().elliptic;
  const cplx q = rep.q();
  const cplx pd = pow_p(ep, z[i - 1] - z[i]);
  const cplx den = 1.0 / q - q * pd;
  if (std::abs(den) < ep.pole_tol * std::max(1.0, std::abs(q * pd))) {
    throw PoleError("q^{-1} - q p^{z_i - z_{i+1}}", "transport_letter");
  }
  return (rep.T_inv(i) - pd * rep.T(i)) / den;
}

/// C_{l1 l2 ... lk}(z) = C_{l1}(z) C_{l2}(l1^{-1} z) C_{l3}(l2^{-1} l1^{-1} z) ...
inline ComplexMatrix transport_word(const SpinRep& rep, const AffineWord& w, std::vector<cplx> z) {
  ComplexMatrix out = ComplexMatrix::Identity(rep.dim(), rep.dim());
  for (const auto& l : w) {
    out *= transport_letter(rep, l, z);
    z = letter_inverse_action(rep.n(), l, z);
  }
  return out;
}

inline ComplexMatrix transport_translation(const SpinRep& rep, int j, const std::vector<cplx>& z) {
  return transport_word(rep, translation_word(rep.n(), j), z);
}

/// C_{tau(e_i)}(z) C_{tau(e_j)}(z - e_i) against C_{tau(e_j)}(z) C_{tau(e_i)}(z - e_j).
inline double flatness_residual(const SpinRep& rep, int i, int j, const std::vector<cplx>& z) {
  auto shifted = [&](int k) {
    std::vector<cplx> out = z;
    out[k - 1] -= 1.0;
    return out;
  };
  const ComplexMatrix lhs = transport_translation(rep, i, z) * transport_translation(rep, j, shifted(i));
  const ComplexMatrix rhs = transport_translation(rep, j, z) * transport_translation(rep, i, shifted(j));
  return relative_residual(lhs, rhs);
}

/// A point with z_k - z_{k+1} = -depth, offset by `base`.
inline std::vector<cplx> asymptotic_point(const std::vector<cplx>& base, double depth) {
  std::vector<cplx> z = base;
  for (std::size_t k = 0; k < z.size(); ++k) z[k] += static_cast<double>(k) * depth;
  return z;
}

/// Distance of C_{tau(e_j)}(z) from pi(Ytilde_j) deep in the asymptotic sector.
inline double braid_limit_residual(const SpinRep& rep, int j, double depth, const std::vector<cplx>& base) {
  const ComplexMatrix c = transport_translation(rep, j, asymptotic_point(base, depth));
  return relative_residual(c, spin_Ytilde(rep, unit_vector(rep.n(), j)));
}

/// Decay rate (log residual per unit depth) between two depths.
inline double braid_limit_slope(const SpinRep& rep, int j, double d1, double d2, const std::vector<cplx>& base) {
  const double r1 = braid_limit_residual(rep, j, d1, base);
  const double r2 = braid_limit_residual(rep, j, d2, base);
  return (std::log(r2) - std::log(r1)) / (d2 - d1);
}

}  // namespace ellqkz

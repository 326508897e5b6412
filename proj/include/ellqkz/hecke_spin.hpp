#pragma once

// The spin representation of the extended affine Hecke algebra H_n(q) on
// V^{(x)n}, V the 3-dimensional vector representation of U_q(gl(2|1)):
//   T_i  -> B acting on legs (i, i+1),
//   zeta -> P_12 P_23 ... P_{n-1,n} D_n,   D(v_j) = p^{-phi_j} v_j,
// together with the Baxterization of B (the Perk-Schultz R-matrix) and the
// commuting families Y_j and Ytilde^lambda.

#include <array>
#include <functional>
#include <vector>

#include "elliptic.hpp"
#include "symgroup.hpp"
#include "tensor.hpp"

namespace ellqkz {

using Phi = std::array<cplx, 3>;

struct VectorModel {
  static constexpr int dim = 3;
  /// Parity of v_1, v_2, v_3 (v_3 is odd).
  static constexpr std::array<int, 3> parity{0, 0, 1};

  /// Weight of v_j in the coordinates (E11, E22, E33) of the Cartan subalgebra.
  static Phi weight(int j) {
    switch (j) {
      case 1: return {1.0, 0.0, 0.0};
      case 2: return {0.0, 1.0, 0.0};
      default: return {0.0, 0.0, -1.0};
    }
  }
};

struct HeckeParams {
  EllipticParams elliptic;
  int n = 2;
  int max_sites = 6;

  HeckeParams() = default;
  HeckeParams(EllipticParams ep, int sites, int cap = 6)
      : elliptic(std::move(ep)), n(sites), max_sites(cap) {
    if (n < 2) throw PreconditionError("spin representation needs n >= 2");
    if (n > max_sites) {
      throw PreconditionError("n = " + std::to_string(n) + " exceeds the site cap " +
                              std::to_string(max_sites));
    }
  }

  cplx q() const { return elliptic.q(); }
  int dim() const { return ipow(3, n); }
};

/// The 9x9 braid matrix in the basis v1v1, v1v2, v1v3, v2v1, ..., v3v3.
inline ComplexMatrix braid_matrix(cplx q) {
  if (q == cplx{}) throw DomainError("braid_matrix: q must be nonzero");
  const cplx d = q - 1.0 / q;
  ComplexMatrix b = ComplexMatrix::Zero(9, 9);
  b(0, 0) = q;
  b(1, 1) = d;
  b(1, 3) = 1.0;
  b(2, 2) = d;
  b(2, 6) = -1.0;
  b(3, 1) = 1.0;
  b(4, 4) = q;
  b(5, 5) = d;
  b(5, 7) = -1.0;
  b(6, 2) = -1.0;
  b(7, 5) = -1.0;
  b(8, 8) = -1.0 / q;
  return b;
}

/// ||(B - q)(B + q^{-1})||_F / ||B||_F^2.
inline double hecke_residual(const ComplexMatrix& b, cplx q) {
  const auto id = ComplexMatrix::Identity(b.rows(), b.cols());
  const ComplexMatrix r = (b - q * id) * (b + (1.0 / q) * id);
  const double scale = b.squaredNorm();
  return scale == 0.0 ? r.norm() : r.norm() / scale;
}

/// Inverse of a matrix satisfying the Hecke relation: B^{-1} = B - q + q^{-1}.
inline ComplexMatrix hecke_inverse(const ComplexMatrix& b, cplx q) {
  return b - (q - 1.0 / q) * ComplexMatrix::Identity(b.rows(), b.cols());
}

/// Graded flip on V (x) V: v_a (x) v_b -> (-1)^{p(a)p(b)} v_b (x) v_a.
inline ComplexMatrix graded_flip() {
  ComplexMatrix pg = ComplexMatrix::Zero(9, 9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      pg(b * 3 + a, a * 3 + b) = (VectorModel::parity[a] && VectorModel::parity[b]) ? -1.0 : 1.0;
  return pg;
}

/// R^B(z) = P (B^{-1} - z B) / (q^{-1} - q z).
inline ComplexMatrix baxterize(const ComplexMatrix& b, cplx q, cplx z, double pole_tol = 1e-10) {
  const cplx den = 1.0 / q - q * z;
  if (std::abs(den) < pole_tol) throw PoleError("q^{-1} - q z", "baxterize");
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(b.rows()))));
  return flip_operator(d) * (hecke_inverse(b, q) - z * b) / den;
}

/// The Perk-Schultz R-matrix written entrywise.
inline ComplexMatrix perk_schultz(cplx z, cplx q, double pole_tol = 1e-10) {
  const cplx den = 1.0 / q - q * z;
  if (std::abs(den) < pole_tol) throw PoleError("q^{-1} - q z", "perk_schultz");
  const cplx a = 1.0;  // printed as (q^{-1} - qz)/(q^{-1} - qz)
  const cplx bz = (1.0 - z) / den;
  const cplx cp = (1.0 / q - q) / den;
  const cplx cm = (1.0 / q - q) * z / den;
  const cplx w = (z / q - q) / den;
  ComplexMatrix r = ComplexMatrix::Zero(9, 9);
  r(0, 0) = a;
  r(1, 1) = bz;
  r(1, 3) = cp;
  r(2, 2) = -bz;
  r(2, 6) = cp;
  r(3, 1) = cm;
  r(3, 3) = bz;
  r(4, 4) = a;
  r(5, 5) = -bz;
  r(5, 7) = cp;
  r(6, 2) = cm;
  r(6, 6) = -bz;
  r(7, 5) = cm;
  r(7, 7) = -bz;
  r(8, 8) = w;
  return r;
}

using RMatrixFamily = std::function<ComplexMatrix(cplx)>;

/// Relative residual of R12(x) R13(xy) R23(y) = R23(y) R13(xy) R12(x) on W^{(x)3}.
inline double qybe_residual(const RMatrixFamily& r, cplx x, cplx y) {
  const ComplexMatrix rx = r(x);
  const ComplexMatrix rxy = r(x * y);
  const ComplexMatrix ry = r(y);
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rx.rows()))));
  const ComplexMatrix r12 = embed_two_site(rx, 1, 2, 3, d);
  const ComplexMatrix r13 = embed_two_site(rxy, 1, 3, 3, d);
  const ComplexMatrix r23 = embed_two_site(ry, 2, 3, 3, d);
  return relative_residual(r12 * r13 * r23, r23 * r13 * r12);
}

inline ComplexMatrix twist_matrix(const EllipticParams& ep, const Phi& phi) {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  for (int j = 0; j < 3; ++j) d(j, j) = pow_p(ep, -phi[j]);
  return d;
}

/// Matrices of the spin representation. Immutable after construction.
class SpinRep {
public:
  SpinRep(HeckeParams params, const Phi& phi) : params_(std::move(params)), phi_(phi) {
    const int n = params_.n;
    const cplx q = params_.q();
    braid_ = braid_matrix(q);
    const ComplexMatrix braid_inv = hecke_inverse(braid_, q);
    for (int i = 1; i < n; ++i) {
      t_.push_back(embed_two_site(braid_, i, i + 1, n, 3));
      t_inv_.push_back(embed_two_site(braid_inv, i, i + 1, n, 3));
    }
    const ComplexMatrix flip = flip_operator(3);
    const ComplexMatrix d = twist_matrix(params_.elliptic, phi_);
    const ComplexMatrix d_inv = d.inverse();  // diagonal
    zeta_ = ComplexMatrix::Identity(dim(), dim());
    for (int i = 1; i < n; ++i) zeta_ = zeta_ * embed_two_site(flip, i, i + 1, n, 3);
    zeta_inv_ = embed_one_site(d_inv, n, n, 3);
    for (int i = n - 1; i >= 1; --i) zeta_inv_ *= embed_two_site(flip, i, i + 1, n, 3);
    zeta_ = zeta_ * embed_one_site(d, n, n, 3);
  }

  const HeckeParams& params() const noexcept { return params_; }
  const Phi& phi() const noexcept { return phi_; }
  int n() const noexcept { return params_.n; }
  int dim() const noexcept { return params_.dim(); }
  cplx q() const { return params_.q(); }

  const ComplexMatrix& braid() const noexcept { return braid_; }
  const ComplexMatrix& T(int i) const { return t_.at(i - 1); }
  const ComplexMatrix& T_inv(int i) const { return t_inv_.at(i - 1); }
  const ComplexMatrix& zeta() const noexcept { return zeta_; }
  const ComplexMatrix& zeta_inv() const noexcept { return zeta_inv_; }

  /// T_w = T_{i_1} ... T_{i_r} for a word (i_1, ..., i_r).
  ComplexMatrix T_word(const Word& word) const {
    ComplexMatrix out = ComplexMatrix::Identity(dim(), dim());
    for (int i : word) out *= T(i);
    return out;
  }

  ComplexMatrix T_word_inverse(const Word& word) const {
    ComplexMatrix out = ComplexMatrix::Identity(dim(), dim());
    for (auto it = word.rbegin(); it != word.rend(); ++it) out *= T_inv(*it);
    return out;
  }

  /// pi(T_w) v without forming the product matrix.
  ComplexVector apply_T_word(const Word& word, ComplexVector v) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = T(*it) * v;
    return v;
  }

private:
  HeckeParams params_;
  Phi phi_;
  ComplexMatrix braid_;
  std::vector<ComplexMatrix> t_;
  std::vector<ComplexMatrix> t_inv_;
  ComplexMatrix zeta_;
  ComplexMatrix zeta_inv_;
};

inline SpinRep spin_generators(const HeckeParams& params, const Phi& phi) {
  return SpinRep(params, phi);
}

/// Y_j = T_{j-1}^{-1} ... T_1^{-1} zeta T_{n-1} ... T_j.
inline ComplexMatrix spin_Y(const SpinRep& rep, int j) {
  const int n = rep.n();
  if (j < 1 || j > n) throw PreconditionError("spin_Y: need 1 <= j <= n");
  ComplexMatrix y = ComplexMatrix::Identity(rep.dim(), rep.dim());
  for (int k = j - 1; k >= 1; --k) y *= rep.T_inv(k);
  y *= rep.zeta();
  for (int k = n - 1; k >= j; --k) y *= rep.T(k);
  return y;
}

/// Y_j^{-1} = T_j^{-1} ... T_{n-1}^{-1} zeta^{-1} T_1 ... T_{j-1}.
inline ComplexMatrix spin_Y_inverse(const SpinRep& rep, int j) {
  const int n = rep.n();
  if (j < 1 || j > n) throw PreconditionError("spin_Y_inverse: need 1 <= j <= n");
  ComplexMatrix y = ComplexMatrix::Identity(rep.dim(), rep.dim());
  for (int k = j; k <= n - 1; ++k) y *= rep.T_inv(k);
  y *= rep.zeta_inv();
  for (int k = 1; k <= j - 1; ++k) y *= rep.T(k);
  return y;
}

/// Y^lambda = Y_1^{lambda_1} ... Y_n^{lambda_n}.
inline ComplexMatrix spin_Y_power(const SpinRep& rep, const std::vector<int>& lambda) {
  if (static_cast<int>(lambda.size()) != rep.n()) throw PreconditionError("lambda must have n entries");
  ComplexMatrix out = ComplexMatrix::Identity(rep.dim(), rep.dim());
  for (int j = 1; j <= rep.n(); ++j) {
    const int e = lambda[j - 1];
    if (e == 0) continue;
    const ComplexMatrix base = e > 0 ? spin_Y(rep, j) : spin_Y_inverse(rep, j);
    for (int k = 0; k < std::abs(e); ++k) out *= base;
  }
  return out;
}

/// Residual of the Bernstein-Zelevinsky cross relation with the denominator
/// cleared on the right:
///   (T_i Y^l - Y^{s_i l} T_i)(1 - Y_i^{-1} Y_{i+1}) - (q - q^{-1})(Y^l - Y^{s_i l}).
inline double bz_residual(const SpinRep& rep, int i, const std::vector<int>& lambda) {
  const int n = rep.n();
  if (i < 1 || i >= n) throw PreconditionError("bz_residual: need 1 <= i < n");
  std::vector<int> swapped = lambda;
  std::swap(swapped[i - 1], swapped[i]);
  const cplx q = rep.q();
  const ComplexMatrix y_l = spin_Y_power(rep, lambda);
  const ComplexMatrix y_sl = spin_Y_power(rep, swapped);
  const ComplexMatrix id = ComplexMatrix::Identity(rep.dim(), rep.dim());
  const ComplexMatrix factor = id - spin_Y_inverse(rep, i) * spin_Y(rep, i + 1);
  const ComplexMatrix lhs = (rep.T(i) * y_l - y_sl * rep.T(i)) * factor;
  const ComplexMatrix rhs = (q - 1.0 / q) * (y_l - y_sl);
  const double scale = std::max({lhs.norm(), rhs.norm(), y_l.norm()});
  return (lhs - rhs).norm() / scale;
}

/// rho = ((n-1)kappa, (n-3)kappa, ..., (1-n)kappa).
inline std::vector<cplx> rho_vector(const EllipticParams& ep, int n) {
  std::vector<cplx> rho(n);
  for (int k = 1; k <= n; ++k) rho[k - 1] = static_cast<double>(n + 1 - 2 * k) * ep.kappa;
  return rho;
}

/// Ytilde^lambda = p^{-(rho, lambda)} T_{w0} Y^{w0 lambda} T_{w0}^{-1}.
inline ComplexMatrix spin_Ytilde(const SpinRep& rep, const std::vector<int>& lambda) {
  const int n = rep.n();
  const auto& ep = rep.params().elliptic;
  const auto rho = rho_vector(ep, n);
  cplx pairing{};
  for (int k = 0; k < n; ++k) pairing += rho[k] * static_cast<double>(lambda[k]);
  const Permutation w0 = Permutation::longest(n);
  const Word w0_word = reduced_word(w0);
  const std::vector<int> w0_lambda = act_on_tuple(w0, lambda);
  return pow_p(ep, -pairing) * rep.T_word(w0_word) * spin_Y_power(rep, w0_lambda) *
         rep.T_word_inverse(w0_word);
}

inline std::vector<int> unit_vector(int n, int j) {
  std::vector<int> e(n, 0);
  e[j - 1] = 1;
  return e;
}

}  // namespace ellqkz

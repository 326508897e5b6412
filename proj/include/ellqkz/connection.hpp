#pragma once

// Connection matrices of the qKZ equations for principal series modules, the
// modified monodromy cocycle on the tensor basis of V^{(x)n}, the dynamical
// R-matrix R(x; phi) and residuals of the dynamical Yang-Baxter equations.
//
// A coset move for the operator label s_i is always s_{n-i}; the flip lives in
// `coset_move_index`.

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <functional>
#include <string>
#include <vector>

#include "elliptic.hpp"
#include "hecke_spin.hpp"
#include "principal_series.hpp"
#include "symgroup.hpp"
#include "tensor.hpp"

namespace ellqkz {

using Point = std::vector<cplx>;

inline int coset_move_index(int n, int i) { return n - i; }

/// (w z)_i = z_{w^{-1}(i)}.
inline Point permute_point(const Permutation& w, const Point& z) { return act_on_tuple(w, z); }

struct ConnectionMatrix {
  PrincipalSeriesSpec spec;
  Permutation w;
  std::vector<Permutation> basis;
  ComplexMatrix entries;
  Point z;
};

namespace detail {

inline int basis_position(const std::vector<Permutation>& basis, const Permutation& w) {
  const auto it = std::lower_bound(basis.begin(), basis.end(), w);
  if (it == basis.end() || *it != w) throw PreconditionError("permutation is not in S_n^I");
  return static_cast<int>(it - basis.begin());
}

template <class F>
cplx entry_guard(F&& f, int row, int col, const char* where) {
  try {
    return f();
  } catch (const PoleError& e) {
    throw PoleError(e.factor(), std::string(where) + " entry (" + std::to_string(row) + "," +
                                    std::to_string(col) + ")");
  }
}

}  // namespace detail

inline ComplexMatrix m_simple_entries(const PrincipalSeriesSpec& spec, const std::vector<Permutation>& basis,
                                      int i, const Point& z, const EllipticParams& ep) {
  const int n = spec.n;
  if (i < 1 || i >= n) throw PreconditionError("m_simple: need 1 <= i < n");
  const int k = coset_move_index(n, i);
  const Permutation s = Permutation::simple(n, k);
  const cplx x = z[i - 1] - z[i];
  const int size = static_cast<int>(basis.size());
  ComplexMatrix m = ComplexMatrix::Zero(size, size);
  for (int col = 0; col < size; ++col) {
    const Permutation& sigma = basis[col];
    const Permutation moved = s * sigma;
    if (is_min_coset_rep(moved, spec.I)) {
      const Permutation inv = sigma.inverse();
      const cplx y = spec.gamma[inv(k) - 1] - spec.gamma[inv(k + 1) - 1];
      const int row = detail::basis_position(basis, moved);
      m(col, col) = detail::entry_guard([&] { return coeff_A(ep, y, x); }, col, col, "m_simple");
      m(row, col) = detail::entry_guard([&] { return coeff_B(ep, y, x); }, row, col, "m_simple");
    } else {
      const int eps = spec.eps.at(sigma_conjugation_index(sigma, i, spec.I));
      m(col, col) =
          detail::entry_guard([&] { return signed_c_ratio(ep, eps, x); }, col, col, "m_simple");
    }
  }
  return m;
}

inline ConnectionMatrix m_simple(const PrincipalSeriesSpec& spec, int i, const Point& z,
                                 const EllipticParams& ep) {
  ConnectionMatrix out;
  out.spec = spec;
  out.w = Permutation::simple(spec.n, i);
  out.basis = min_coset_reps(spec.I);
  out.entries = m_simple_entries(spec, out.basis, i, z, ep);
  out.z = z;
  return out;
}

/// Cocycle product M^{s_{i1}}(z) M^{s_{i2}}(s_{i1} z) M^{s_{i3}}(s_{i2} s_{i1} z) ...
inline ComplexMatrix m_word_entries(const PrincipalSeriesSpec& spec, const std::vector<Permutation>& basis,
                                    const Word& word, Point z, const EllipticParams& ep) {
  const int size = static_cast<int>(basis.size());
  ComplexMatrix out = ComplexMatrix::Identity(size, size);
  for (int i : word) {
    out *= m_simple_entries(spec, basis, i, z, ep);
    std::swap(z[i - 1], z[i]);
  }
  return out;
}

inline ConnectionMatrix m_word(const PrincipalSeriesSpec& spec, const Permutation& w, const Point& z,
                               const EllipticParams& ep, std::optional<Word> word = std::nullopt) {
  ConnectionMatrix out;
  out.spec = spec;
  out.w = w;
  out.basis = min_coset_reps(spec.I);
  const Word letters = word ? *word : reduced_word(w);
  if (word && word_product(spec.n, *word) != w) throw PreconditionError("word does not spell w");
  out.entries = m_word_entries(spec, out.basis, letters, z, ep);
  out.z = z;
  return out;
}

/// The modified monodromy operator for s_i on the tensor basis of V^{(x)n},
/// built directly from the block data of each basis vector.
inline ComplexMatrix modified_monodromy(int n, const Phi& phi, int i, const Point& z,
                                        const EllipticParams& ep) {
  if (i < 1 || i >= n) throw PreconditionError("modified_monodromy: need 1 <= i < n");
  const int dim = ipow(3, n);
  const int k = coset_move_index(n, i);
  const cplx x = z[i - 1] - z[i];
  std::map<BlockLabel, PrincipalSeriesSpec> specs;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const MultiIndex beta = multi_index_of(col, n);
    const int left = beta[k];
    const int right = beta[k + 1];
    if (left == right) {
      m(col, col) = left == 3 ? minus_c_ratio(ep, x) : cplx{1.0, 0.0};
      continue;
    }
    const BlockLabel r = beta.content();
    auto it = specs.find(r);
    if (it == specs.end()) it = specs.emplace(r, block_data(r, phi, ep)).first;
    const auto& gamma = it->second.gamma;
    const Permutation inv = w_alpha(beta).inverse();
    const cplx y = gamma[inv(k) - 1] - gamma[inv(k + 1) - 1];
    std::vector<int> swapped = beta.entries();
    std::swap(swapped[k - 1], swapped[k]);
    const int row = tensor_index_of(MultiIndex(swapped));
    const double sign = ((left == 3) + (right == 3)) % 2 == 0 ? 1.0 : -1.0;
    m(col, col) = coeff_A(ep, y, x);
    m(row, col) = sign * coeff_B(ep, y, x);
  }
  return m;
}

/// Cocycle extension of `modified_monodromy` to a word in the s_i.
inline ComplexMatrix modified_monodromy_word(int n, const Phi& phi, const Word& word, Point z,
                                             const EllipticParams& ep) {
  const int dim = ipow(3, n);
  ComplexMatrix out = ComplexMatrix::Identity(dim, dim);
  for (int i : word) {
    out *= modified_monodromy(n, phi, i, z, ep);
    std::swap(z[i - 1], z[i]);
  }
  return out;
}

/// The same operator assembled from the block connection matrices:
///   M v_beta = sum_alpha (-1)^{eta(w_alpha) + eta(w_beta)} m_{w_alpha, w_beta} v_alpha.
inline ComplexMatrix modified_monodromy_via_blocks(int n, const Phi& phi, const Word& word, const Point& z,
                                                   const EllipticParams& ep) {
  const int dim = ipow(3, n);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& r : block_labels(n)) {
    const Block b = make_block(r, phi, ep);
    const ComplexMatrix m = m_word_entries(b.spec, b.reps, word, z, ep);
    for (int col = 0; col < b.size(); ++col)
      for (int row = 0; row < b.size(); ++row) {
        out(b.tensor_index[row], b.tensor_index[col]) =
            static_cast<double>(b.signs[row] * b.signs[col]) * m(row, col);
      }
  }
  return out;
}

/// R(x; phi) on V (x) V, basis v1v1, v1v2, ..., v3v3.
inline ComplexMatrix dyn_R(cplx x, const Phi& phi, const EllipticParams& ep) {
  ComplexMatrix r = ComplexMatrix::Zero(9, 9);
  for (int a = 0; a < 3; ++a) {
    const int d = a * 3 + a;
    r(d, d) = VectorModel::parity[a] ? minus_c_ratio(ep, x) : cplx{1.0, 0.0};
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      const cplx y = phi[a] - phi[b];
      const int col = a * 3 + b;
      const int row = b * 3 + a;
      const double sign = (VectorModel::parity[a] + VectorModel::parity[b]) % 2 == 0 ? 1.0 : -1.0;
      r(col, col) = coeff_A(ep, y, x);
      r(row, col) = sign * coeff_B(ep, y, x);
    }
  }
  return r;
}

struct DynamicalRMatrix {
  cplx x;
  Phi phi;
  ComplexMatrix entries;

  static DynamicalRMatrix evaluate(cplx x, const Phi& phi, const EllipticParams& ep) {
    return {x, phi, dyn_R(x, phi, ep)};
  }
};

inline Phi operator+(const Phi& a, const Phi& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

inline Phi scaled(const Phi& a, cplx t) { return {t * a[0], t * a[1], t * a[2]}; }

/// Shift vectors indexed by the basis vector v_j carried by a control leg.
using ShiftTable = std::array<Phi, 3>;

enum class ShiftKind { Psi, PhiShift, Xi };

inline std::string to_string(ShiftKind k) {
  switch (k) {
    case ShiftKind::Psi: return "Psi";
    case ShiftKind::PhiShift: return "Phi";
    default: return "Xi";
  }
}

struct ShiftVectorFamily {
  ShiftKind kind = ShiftKind::Xi;

  ShiftTable vectors(cplx a, const EllipticParams& ep) const {
    const cplx h = ep.nome.half_period();
    switch (kind) {
      case ShiftKind::Psi:
        return {Phi{-a, 0.0, -h}, Phi{0.0, -a, -h}, Phi{0.0, 0.0, a}};
      case ShiftKind::PhiShift:
        return {Phi{-a, 0.0, 0.0}, Phi{0.0, -a, 0.0}, Phi{0.0, 0.0, a + h}};
      default:
        return {Phi{-a, 0.0, 0.0}, Phi{0.0, -a, 0.0}, Phi{0.0, 0.0, a}};
    }
  }
};

/// Shifts beta * wt(v_j), the h-weight convention.
inline ShiftTable weight_shifts(cplx beta) {
  ShiftTable t;
  for (int j = 1; j <= 3; ++j) t[j - 1] = scaled(VectorModel::weight(j), beta);
  return t;
}

inline ShiftTable zero_shifts() { return weight_shifts(0.0); }

/// R_{leg, leg+1}(x; phi + shift_j) on the subspace where `control` carries v_j.
inline ComplexMatrix shifted_R_apply(int leg, cplx x, const Phi& phi, const ShiftTable& shifts, int control,
                                     int n, const EllipticParams& ep) {
  if (control == leg || control == leg + 1) {
    throw PreconditionError("shifted_R_apply: control leg must differ from the acted-on legs");
  }
  return embed_controlled_two_site([&](int j) { return dyn_R(x, phi + shifts[j], ep); }, leg, leg + 1,
                                   control, n, 3);
}

/// Braid-form dYBE on V^{(x)3} with R_12 shifted by `s12` (controlled by leg
/// 3) and R_23 shifted by `s23` (controlled by leg 1):
///   R12(x) R23(x+y) R12(y) = R23(y) R12(x+y) R23(x).
inline double dybe_residual_shifts(cplx x, cplx y, const Phi& phi, const ShiftTable& s12, const ShiftTable& s23,
                                   const EllipticParams& ep) {
  auto r12 = [&](cplx t) { return shifted_R_apply(1, t, phi, s12, 3, 3, ep); };
  auto r23 = [&](cplx t) { return shifted_R_apply(2, t, phi, s23, 1, 3, ep); };
  const ComplexMatrix lhs = r12(x) * r23(x + y) * r12(y);
  const ComplexMatrix rhs = r23(y) * r12(x + y) * r23(x);
  return relative_residual(lhs, rhs);
}

inline double dybe_residual(cplx x, cplx y, const Phi& phi, const ShiftVectorFamily& family,
                            const EllipticParams& ep) {
  return dybe_residual_shifts(x, y, phi, family.vectors(-ep.kappa, ep), family.vectors(ep.kappa, ep), ep);
}

inline double unitarity_residual(cplx x, const Phi& phi, const EllipticParams& ep) {
  return relative_residual(ComplexMatrix(dyn_R(x, phi, ep) * dyn_R(-x, phi, ep)),
                           ComplexMatrix(ComplexMatrix::Identity(9, 9)));
}

/// Rcheck_{ab}(x; phi + beta h_c) = P_{ab} R_{ab}(...) on V^{(x)3}.
inline ComplexMatrix felder_factor(int a, int b, int control, cplx x, const Phi& phi, cplx beta,
                                   const EllipticParams& ep) {
  const ComplexMatrix flip = flip_operator(3);
  const ShiftTable shifts = weight_shifts(beta);
  return embed_controlled_two_site([&](int j) { return ComplexMatrix(flip * dyn_R(x, phi + shifts[j], ep)); },
                                   a, b, control, 3, 3);
}

/// Felder form with Rcheck = P R:
///   Rc23(x; +k h1) Rc13(x+y; -k h2) Rc12(y; +k h3)
///     = Rc12(y; -k h3) Rc13(x+y; +k h2) Rc23(x; -k h1).
/// `scrambled` exchanges the h2 and h3 shift coefficients (negative control).
inline double felder_residual(cplx x, cplx y, const Phi& phi, const EllipticParams& ep, bool scrambled = false) {
  const cplx k = ep.kappa;
  const cplx b13 = scrambled ? k : -k;
  const cplx b12 = scrambled ? -k : k;
  const ComplexMatrix lhs = felder_factor(2, 3, 1, x, phi, k, ep) * felder_factor(1, 3, 2, x + y, phi, b13, ep) *
                            felder_factor(1, 2, 3, y, phi, b12, ep);
  const ComplexMatrix rhs = felder_factor(1, 2, 3, y, phi, -b12, ep) * felder_factor(1, 3, 2, x + y, phi, -b13, ep) *
                            felder_factor(2, 3, 1, x, phi, -k, ep);
  return relative_residual(lhs, rhs);
}

/// 4x4 elliptic gl(2) solution in the basis v1v1, v1v2, v2v1, v2v2.
inline ComplexMatrix gl2_fixture(cplx x, cplx y, const EllipticParams& ep) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(3, 3) = 1.0;
  m(1, 1) = coeff_A(ep, y, x);
  m(1, 2) = coeff_B(ep, -y, x);
  m(2, 1) = coeff_B(ep, y, x);
  m(2, 2) = coeff_A(ep, -y, x);
  return m;
}

/// +1 on v1, -1 on v2: the weight of the gl(2) Cartan element E11 - E22.
inline double gl2_weight(int j) { return j == 0 ? 1.0 : -1.0; }

/// Braid-form dYBE residual for the gl(2) fixture on (C^2)^{(x)3}, with the
/// scalar dynamical variable shifted by c12 * w(leg 3) in R12 and by
/// c23 * w(leg 1) in R23.
inline double gl2_dybe_residual(cplx x, cplx x2, cplx y, cplx c12, cplx c23, const EllipticParams& ep) {
  auto r12 = [&](cplx t) {
    return embed_controlled_two_site([&](int j) { return gl2_fixture(t, y + c12 * gl2_weight(j), ep); }, 1, 2, 3,
                                     3, 2);
  };
  auto r23 = [&](cplx t) {
    return embed_controlled_two_site([&](int j) { return gl2_fixture(t, y + c23 * gl2_weight(j), ep); }, 2, 3, 1,
                                     3, 2);
  };
  const ComplexMatrix lhs = r12(x) * r23(x + x2) * r12(x2);
  const ComplexMatrix rhs = r23(x2) * r12(x + x2) * r23(x);
  return relative_residual(lhs, rhs);
}

struct Gl2ShiftResult {
  double c12_over_kappa = 0.0;
  double c23_over_kappa = 0.0;
  double residual = 0.0;
};

/// Scans shifts (c12, c23) in {+-kappa, +-2 kappa}^2 and returns the one with
/// the smallest dYBE residual at the given sample.
inline Gl2ShiftResult gl2_find_shift(cplx x, cplx x2, cplx y, const EllipticParams& ep) {
  Gl2ShiftResult best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (double a : {1.0, -1.0, 2.0, -2.0})
    for (double b : {1.0, -1.0, 2.0, -2.0}) {
      const double r = gl2_dybe_residual(x, x2, y, a * ep.kappa, b * ep.kappa, ep);
      if (r < best.residual) best = {a, b, r};
    }
  return best;
}

}  // namespace ellqkz

#pragma once

// Dense complex matrices on W^{(x)n} with dim W = d. Basis vectors are
// labelled by digit strings (a_1, ..., a_n), a_k in {0, ..., d-1}, leg 1 being
// the most significant digit; for d = 3, n = 2 this is the ordering
// v1v1, v1v2, v1v3, v2v1, ... of the tensor product basis.

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <complex>
#include <functional>
#include <vector>

namespace ellqkz {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline int ipow(int base, int exp) {
  int r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

/// Digit string of basis index `idx`, digits in 0..d-1, leg 1 first.
inline std::vector<int> basis_digits(int idx, int n, int d) {
  std::vector<int> digits(n);
  for (int k = n - 1; k >= 0; --k) {
    digits[k] = idx % d;
    idx /= d;
  }
  return digits;
}

inline int basis_index(const std::vector<int>& digits, int d) {
  int idx = 0;
  for (int a : digits) idx = idx * d + a;
  return idx;
}

/// Embeds `op` (d^2 x d^2, first tensor factor on leg `a`, second on leg `b`,
/// legs 1-based and distinct) into End(W^{(x)n}).
inline ComplexMatrix embed_two_site(const ComplexMatrix& op, int a, int b, int n, int d) {
  assert(a != b && a >= 1 && b >= 1 && a <= n && b <= n);
  const int dim = ipow(d, n);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    std::vector<int> digits = basis_digits(col, n, d);
    const int in_local = digits[a - 1] * d + digits[b - 1];
    for (int out_local = 0; out_local < d * d; ++out_local) {
      const auto coef = op(out_local, in_local);
      if (coef == std::complex<double>{}) continue;
      digits[a - 1] = out_local / d;
      digits[b - 1] = out_local % d;
      out(basis_index(digits, d), col) += coef;
    }
  }
  return out;
}

/// Like embed_two_site, but the local operator depends on the basis digit
/// carried by a third `control` leg: on W^{(c-1)} (x) w_j (x) ... it acts as
/// op_for(j).
inline ComplexMatrix embed_controlled_two_site(const std::function<ComplexMatrix(int)>& op_for,
                                               int a, int b, int control, int n, int d) {
  assert(control != a && control != b);
  std::vector<ComplexMatrix> ops;
  ops.reserve(d);
  for (int j = 0; j < d; ++j) ops.push_back(op_for(j));
  const int dim = ipow(d, n);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    std::vector<int> digits = basis_digits(col, n, d);
    const ComplexMatrix& op = ops[digits[control - 1]];
    const int in_local = digits[a - 1] * d + digits[b - 1];
    for (int out_local = 0; out_local < d * d; ++out_local) {
      const auto coef = op(out_local, in_local);
      if (coef == std::complex<double>{}) continue;
      digits[a - 1] = out_local / d;
      digits[b - 1] = out_local % d;
      out(basis_index(digits, d), col) += coef;
    }
  }
  return out;
}

/// Flip operator P(u (x) v) = v (x) u on W (x) W.
inline ComplexMatrix flip_operator(int d) {
  ComplexMatrix p = ComplexMatrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) p(b * d + a, a * d + b) = 1.0;
  return p;
}

/// Single-site operator on leg `leg` of W^{(x)n}.
inline ComplexMatrix embed_one_site(const ComplexMatrix& op, int leg, int n, int d) {
  const int dim = ipow(d, n);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    std::vector<int> digits = basis_digits(col, n, d);
    const int in_local = digits[leg - 1];
    for (int out_local = 0; out_local < d; ++out_local) {
      const auto coef = op(out_local, in_local);
      if (coef == std::complex<double>{}) continue;
      digits[leg - 1] = out_local;
      out(basis_index(digits, d), col) += coef;
    }
  }
  return out;
}

/// ||a - b||_F / max(||a||_F, ||b||_F); zero when both vanish.
template <class A, class B>
double relative_residual(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const ComplexMatrix ea = a;
  const ComplexMatrix eb = b;
  const double scale = std::max(ea.norm(), eb.norm());
  if (scale == 0.0) return 0.0;
  return (ea - eb).norm() / scale;
}

}  // namespace ellqkz

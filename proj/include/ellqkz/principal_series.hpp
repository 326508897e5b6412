#pragma once

// Principal series data for H_n(q) and the block decomposition of V^{(x)n}.
//
// Each block is labelled by its content r = (r1, r2, r3) and carries a
// parabolic index set I^(r), signs eps^(r) on I^(r) and a spectral vector
// gamma^(r). Spectral values are kept symbolically as
//   phi_a + k * kappa + m * pi sqrt(-1) / log p
// and only evaluated on demand.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hecke_spin.hpp"
#include "symgroup.hpp"

namespace ellqkz {

/// Integer combination sum_a c_a phi_a + k kappa + m pi sqrt(-1)/log p.
struct SymbolicValue {
  std::array<int, 3> phi{0, 0, 0};
  int kappa = 0;
  int pi = 0;

  static SymbolicValue phi_entry(int a, int kappa_coeff, int pi_coeff) {
    SymbolicValue v;
    v.phi[a - 1] = 1;
    v.kappa = kappa_coeff;
    v.pi = pi_coeff;
    return v;
  }

  cplx evaluate(const EllipticParams& ep, const Phi& phi_values) const {
    cplx out = static_cast<double>(kappa) * ep.kappa +
               static_cast<double>(pi) * ep.nome.half_period();
    for (int a = 0; a < 3; ++a) out += static_cast<double>(phi[a]) * phi_values[a];
    return out;
  }

  friend SymbolicValue operator-(const SymbolicValue& a, const SymbolicValue& b) {
    SymbolicValue d;
    for (int k = 0; k < 3; ++k) d.phi[k] = a.phi[k] - b.phi[k];
    d.kappa = a.kappa - b.kappa;
    d.pi = a.pi - b.pi;
    return d;
  }

  friend SymbolicValue operator+(const SymbolicValue& a, const SymbolicValue& b) {
    SymbolicValue s;
    for (int k = 0; k < 3; ++k) s.phi[k] = a.phi[k] + b.phi[k];
    s.kappa = a.kappa + b.kappa;
    s.pi = a.pi + b.pi;
    return s;
  }

  friend bool operator==(const SymbolicValue&, const SymbolicValue&) = default;

  std::string to_string() const {
    std::string s;
    auto term = [&s](int c, const std::string& name) {
      if (c == 0) return;
      if (!s.empty()) s += c > 0 ? " + " : " - ";
      else if (c < 0) s += "-";
      const int a = std::abs(c);
      if (a != 1) s += std::to_string(a) + "*";
      s += name;
    };
    for (int a = 0; a < 3; ++a) term(phi[a], "phi" + std::to_string(a + 1));
    term(kappa, "kappa");
    term(pi, "pi*i/log(p)");
    return s.empty() ? "0" : s;
  }
};

struct PrincipalSeriesSpec {
  int n = 2;
  ParabolicIndex I;
  std::map<int, int> eps;  ///< i in I -> +1 or -1
  std::vector<cplx> gamma;
  std::vector<SymbolicValue> gamma_symbolic;  ///< empty unless built from block data

  /// Largest |gamma_i - gamma_{i+1} - 2 eps_i kappa| over i in I.
  double membership_defect(const EllipticParams& ep) const {
    double worst = 0.0;
    for (int i : I.I) {
      const cplx d = gamma[i - 1] - gamma[i] - 2.0 * static_cast<double>(eps.at(i)) * ep.kappa;
      worst = std::max(worst, std::abs(d));
    }
    return worst;
  }

  void validate(const EllipticParams& ep, double tol = 1e-12) const {
    if (static_cast<int>(gamma.size()) != n) throw PreconditionError("gamma must have n entries");
    if (I.n != n) throw PreconditionError("parabolic index has the wrong rank");
    for (int i : I.I) {
      auto it = eps.find(i);
      if (it == eps.end() || (it->second != 1 && it->second != -1)) {
        throw PreconditionError("eps must assign a sign to every i in I");
      }
    }
    if (membership_defect(ep) > tol) {
      throw PreconditionError("gamma violates gamma_i - gamma_{i+1} = 2 eps_i kappa on I");
    }
  }
};

struct CharacterValues {
  std::map<int, cplx> T;  ///< i in I -> eps_i q^{eps_i}
  std::vector<cplx> Y;    ///< p^{-gamma_j}
};

inline CharacterValues chi_values(const PrincipalSeriesSpec& spec, const EllipticParams& ep) {
  spec.validate(ep);
  const cplx q = ep.q();
  CharacterValues out;
  for (int i : spec.I.I) {
    const int e = spec.eps.at(i);
    const cplx t = e > 0 ? q : -1.0 / q;
    const cplx hecke = (t - q) * (t + 1.0 / q);
    if (std::abs(hecke) > 1e-12 * std::max(1.0, std::norm(q))) {
      throw PreconditionError("character value violates the Hecke relation");
    }
    out.T[i] = t;
  }
  for (const cplx g : spec.gamma) out.Y.push_back(pow_p(ep, -g));
  return out;
}

/// eps^(r)_i = - iff i < r3.
inline std::map<int, int> block_signs(const BlockLabel& r) {
  std::map<int, int> eps;
  for (int i : block_parabolic(r).I) eps[i] = i < r.r3 ? -1 : 1;
  return eps;
}

inline std::vector<SymbolicValue> block_gamma_symbolic(const BlockLabel& r) {
  const int n = r.n();
  std::vector<SymbolicValue> g;
  g.reserve(n);
  for (int i = 1; i <= n; ++i) {
    if (i <= r.r3) {
      g.push_back(SymbolicValue::phi_entry(3, 2 * i - r.r3 - 1, -(n - 1)));
    } else if (i <= r.r3 + r.r2) {
      g.push_back(SymbolicValue::phi_entry(2, r.r2 + 1 - 2 * (i - r.r3), -r.r3));
    } else {
      g.push_back(SymbolicValue::phi_entry(1, r.r1 + 1 - 2 * (i - r.r2 - r.r3), -r.r3));
    }
  }
  return g;
}

inline PrincipalSeriesSpec block_data(const BlockLabel& r, const Phi& phi, const EllipticParams& ep) {
  PrincipalSeriesSpec spec;
  spec.n = r.n();
  spec.I = block_parabolic(r);
  spec.eps = block_signs(r);
  spec.gamma_symbolic = block_gamma_symbolic(r);
  for (const auto& s : spec.gamma_symbolic) spec.gamma.push_back(s.evaluate(ep, phi));
  return spec;
}

/// One principal series block of V^{(x)n}: S_n^I in lexicographic order,
/// paired with alpha = w alpha^(r) and the sign (-1)^{eta(w)}.
struct Block {
  BlockLabel r;
  PrincipalSeriesSpec spec;
  std::vector<Permutation> reps;
  std::vector<MultiIndex> alphas;
  std::vector<int> signs;
  std::vector<int> tensor_index;  ///< position of v_alpha in the tensor basis

  int size() const { return static_cast<int>(reps.size()); }
};

inline int tensor_index_of(const MultiIndex& alpha) {
  std::vector<int> digits;
  for (int a : alpha.entries()) digits.push_back(a - 1);
  return basis_index(digits, 3);
}

inline MultiIndex multi_index_of(int idx, int n) {
  std::vector<int> digits = basis_digits(idx, n, 3);
  for (int& d : digits) d += 1;
  return MultiIndex(std::move(digits));
}

inline Block make_block(const BlockLabel& r, const Phi& phi, const EllipticParams& ep,
                        EtaVariant variant = EtaVariant::ProofConsistent) {
  Block b;
  b.r = r;
  b.spec = block_data(r, phi, ep);
  b.reps = min_coset_reps(b.spec.I);
  const MultiIndex base = block_base_index(r);
  for (const auto& w : b.reps) {
    MultiIndex alpha = act(w, base);
    b.tensor_index.push_back(tensor_index_of(alpha));
    b.alphas.push_back(std::move(alpha));
    b.signs.push_back(eta(w, r, variant) % 2 == 0 ? 1 : -1);
  }
  return b;
}

struct BlockDecomposition {
  int n = 2;
  std::vector<Block> blocks;

  int total_dimension() const {
    int d = 0;
    for (const auto& b : blocks) d += b.size();
    return d;
  }
};

inline BlockDecomposition decompose(int n, const Phi& phi, const EllipticParams& ep) {
  BlockDecomposition out;
  out.n = n;
  for (const auto& r : block_labels(n)) out.blocks.push_back(make_block(r, phi, ep));
  return out;
}

inline ComplexVector tensor_basis_vector(const MultiIndex& alpha) {
  const int dim = ipow(3, alpha.size());
  ComplexVector v = ComplexVector::Zero(dim);
  v(tensor_index_of(alpha)) = 1.0;
  return v;
}

/// Largest deviation of v_{alpha^(r)} from being a joint eigenvector with the
/// character values of block r.
inline double eigen_check(const SpinRep& rep, const BlockLabel& r) {
  if (r.n() != rep.n()) throw PreconditionError("eigen_check: block size differs from n");
  const auto& ep = rep.params().elliptic;
  const PrincipalSeriesSpec spec = block_data(r, rep.phi(), ep);
  const ComplexVector v = tensor_basis_vector(block_base_index(r));
  double worst = 0.0;
  for (int j = 1; j <= rep.n(); ++j) {
    const cplx lambda = pow_p(ep, -spec.gamma[j - 1]);
    const double scale = std::max(1.0, std::abs(lambda));
    worst = std::max(worst, (spin_Y(rep, j) * v - lambda * v).norm() / scale);
  }
  const cplx q = rep.q();
  for (int i : spec.I.I) {
    const cplx t = spec.eps.at(i) > 0 ? q : -1.0 / q;
    worst = std::max(worst, (rep.T(i) * v - t * v).norm() / std::max(1.0, std::abs(t)));
  }
  return worst;
}

/// || pi(T_w) v_{alpha^(r)} - (-1)^{eta(w)} v_{w alpha^(r)} ||.
inline double sign_check(const SpinRep& rep, const BlockLabel& r, const Permutation& w,
                         EtaVariant variant = EtaVariant::ProofConsistent) {
  const int sign = eta(w, r, variant) % 2 == 0 ? 1 : -1;
  const MultiIndex base = block_base_index(r);
  const ComplexVector lhs = rep.apply_T_word(reduced_word(w), tensor_basis_vector(base));
  const ComplexVector rhs = static_cast<double>(sign) * tensor_basis_vector(act(w, base));
  return (lhs - rhs).norm();
}

/// Spectral vector s with Ytilde^lambda v = p^{(s, lambda)} v for the basis
/// vector of block r labelled by sigma: s_j = -(rho_j + gamma_{sigma^{-1}(n+1-j)}).
inline std::vector<cplx> ytilde_weight(const PrincipalSeriesSpec& spec, const Permutation& sigma,
                                       const EllipticParams& ep) {
  const int n = spec.n;
  const auto rho = rho_vector(ep, n);
  const Permutation inv = sigma.inverse();
  std::vector<cplx> s(n);
  for (int j = 1; j <= n; ++j) s[j - 1] = -(rho[j - 1] + spec.gamma[inv(n + 1 - j) - 1]);
  return s;
}

/// Predicted eigenvalues of pi(Ytilde_j), one per (r, sigma), 3^n in total.
inline std::vector<cplx> spectrum_multiset(int n, int j, const Phi& phi, const EllipticParams& ep) {
  if (j < 1 || j > n) throw PreconditionError("spectrum_multiset: need 1 <= j <= n");
  std::vector<cplx> out;
  for (const auto& r : block_labels(n)) {
    const PrincipalSeriesSpec spec = block_data(r, phi, ep);
    for (const auto& sigma : min_coset_reps(spec.I)) {
      out.push_back(pow_p(ep, ytilde_weight(spec, sigma, ep)[j - 1]));
    }
  }
  return out;
}

inline std::vector<cplx> numerical_spectrum(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Greedy nearest-neighbour matching of two multisets of equal size; returns
/// the largest matched distance, relative to max(1, |value|).
inline double multiset_distance(const std::vector<cplx>& predicted, std::vector<cplx> observed) {
  if (predicted.size() != observed.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const cplx v : predicted) {
    auto best = observed.begin();
    double best_d = std::numeric_limits<double>::infinity();
    for (auto it = observed.begin(); it != observed.end(); ++it) {
      const double d = std::abs(*it - v);
      if (d < best_d) {
        best_d = d;
        best = it;
      }
    }
    worst = std::max(worst, best_d / std::max(1.0, std::abs(v)));
    observed.erase(best);
  }
  return worst;
}

struct GenericityIssue {
  std::string kind;
  std::string detail;
};

struct GenericityReport {
  bool q_generic = true;
  bool kappa_generic = true;
  std::vector<GenericityIssue> issues;
  bool ok() const { return q_generic && kappa_generic && issues.empty(); }
};

namespace detail {

/// x = m + k 2 pi sqrt(-1)/log p with integers m, k, |m| <= window.
inline std::optional<int> integer_mod_lattice(cplx x, const EllipticParams& ep, int window, double tol) {
  const double m = std::round(x.real());
  if (std::abs(x.real() - m) > tol || std::abs(m) > window) return std::nullopt;
  const double period = 2.0 * std::numbers::pi / std::abs(ep.nome.log());
  const double k = std::round(x.imag() / period);
  if (std::abs(x.imag() - k * period) > tol) return std::nullopt;
  return static_cast<int>(m);
}

}  // namespace detail

/// Numeric genericity diagnostics for the block decomposition of V^{(x)n}:
/// q^2 != 1, 2 kappa not an integer, the nonresonance conditions for all pairs
/// of Ytilde weights, and absence of theta-function poles in the gamma
/// differences entering the connection matrices.
inline GenericityReport genericity_report(int n, const Phi& phi, const EllipticParams& ep,
                                          int window = 20, double tol = 1e-8) {
  GenericityReport rep;
  const cplx q = ep.q();
  rep.q_generic = std::abs(q * q - 1.0) > tol;
  rep.kappa_generic = ep.kappa_generic(tol);
  if (!rep.q_generic) rep.issues.push_back({"q", "q^2 = 1"});
  if (!rep.kappa_generic) rep.issues.push_back({"kappa", "2 kappa is an integer"});

  struct Weight {
    std::string label;
    std::vector<cplx> s;
  };
  std::vector<Weight> weights;
  for (const auto& r : block_labels(n)) {
    const PrincipalSeriesSpec spec = block_data(r, phi, ep);
    for (const auto& sigma : min_coset_reps(spec.I)) {
      weights.push_back({r.to_string() + sigma.to_string(), ytilde_weight(spec, sigma, ep)});
    }
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) {
        const cplx d = spec.gamma[a - 1] - spec.gamma[b - 1];
        if (detail::integer_mod_lattice(d, ep, window, tol)) {
          rep.issues.push_back({"gamma-pole", "block " + r.to_string() + ": gamma_" +
                                                   std::to_string(a) + " - gamma_" +
                                                   std::to_string(b) + " is an integer"});
        }
      }
  }
  for (std::size_t u = 0; u < weights.size(); ++u)
    for (std::size_t v = 0; v < weights.size(); ++v) {
      if (u == v) continue;
      cplx partial{};
      for (int i = 1; i < n; ++i) {
        partial += weights[v].s[i - 1] - weights[u].s[i - 1];
        const auto m = detail::integer_mod_lattice(partial, ep, window, tol);
        if (m && *m != 0) {
          rep.issues.push_back({"resonance", weights[u].label + " vs " + weights[v].label +
                                                 " at i = " + std::to_string(i) + ", m = " +
                                                 std::to_string(*m)});
        }
      }
    }
  return rep;
}

}  // namespace ellqkz

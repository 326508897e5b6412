#pragma once

#include <gtest/gtest.h>

#include "ellqkz/sampling.hpp"

namespace ellqkz::testing {

inline EllipticParams default_params() { return EllipticParams{}; }

inline EllipticParams params(double p, double kappa) {
  EllipticParams ep;
  ep.nome = Nome(p);
  ep.kappa = kappa;
  return ep;
}

/// Identity of the right size, for residual comparisons.
inline ComplexMatrix eye(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

}  // namespace ellqkz::testing

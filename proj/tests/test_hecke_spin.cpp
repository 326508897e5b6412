#include <Eigen/Eigenvalues>

#include "ellqkz/hecke_spin.hpp"
#include "support.hpp"

using namespace ellqkz;
using ellqkz::testing::default_params;
using ellqkz::testing::eye;

namespace {

cplx random_multiplicative(Sampler& s) { return std::exp(s.complex_in(2.0, 3.0)); }

}  // namespace

TEST(BraidMatrix, HeckeRelation) {
  const cplx q = default_params().q();
  EXPECT_LT(hecke_residual(braid_matrix(q), q), 1e-12);
}

TEST(BraidMatrix, HeckeRelationFailsForWrongQ) {
  const cplx q = default_params().q();
  EXPECT_GT(hecke_residual(braid_matrix(q), 1.1 * q), 1e-3);
}

TEST(BraidMatrix, EigenvaluesAreQAndMinusInverseQ) {
  const cplx q = default_params().q();
  Eigen::ComplexEigenSolver<ComplexMatrix> es(braid_matrix(q));
  int plus = 0, minus = 0;
  for (const cplx ev : es.eigenvalues()) {
    if (std::abs(ev - q) < 1e-10) ++plus;
    else if (std::abs(ev + 1.0 / q) < 1e-10) ++minus;
  }
  EXPECT_EQ(plus + minus, 9);
  // dimensions of the super-symmetric and super-antisymmetric squares of C^{2|1}
  EXPECT_EQ(plus, 5);
  EXPECT_EQ(minus, 4);
}

TEST(BraidMatrix, InverseFormula) {
  const cplx q = default_params().q();
  const ComplexMatrix b = braid_matrix(q);
  EXPECT_LT(relative_residual(b * hecke_inverse(b, q), eye(9)), 1e-14);
}

TEST(BraidMatrix, BraidRelationOnThreeLegs) {
  const cplx q = default_params().q();
  const ComplexMatrix b = braid_matrix(q);
  const ComplexMatrix b12 = embed_two_site(b, 1, 2, 3, 3);
  const ComplexMatrix b23 = embed_two_site(b, 2, 3, 3, 3);
  EXPECT_LT(relative_residual(b12 * b23 * b12, b23 * b12 * b23), 1e-13);
}

TEST(BraidMatrix, GradedFlipIsAnInvolution) {
  EXPECT_LT(relative_residual(graded_flip() * graded_flip(), eye(9)), 1e-15);
}

TEST(Baxterization, EqualsPerkSchultzEntrywise) {
  const cplx q = default_params().q();
  Sampler s(1);
  for (int k = 0; k < 20; ++k) {
    const cplx z = random_multiplicative(s);
    EXPECT_LT(relative_residual(baxterize(braid_matrix(q), q, z), perk_schultz(z, q)), 1e-12);
  }
}

TEST(Baxterization, AtOneIsTheFlip) {
  const cplx q = default_params().q();
  EXPECT_LT(relative_residual(baxterize(braid_matrix(q), q, 1.0), flip_operator(3)), 1e-15);
  EXPECT_LT(relative_residual(perk_schultz(1.0, q), flip_operator(3)), 1e-15);
}

TEST(Baxterization, PoleAtInverseQSquared) {
  const cplx q = default_params().q();
  EXPECT_THROW(baxterize(braid_matrix(q), q, 1.0 / (q * q)), PoleError);
}

TEST(PerkSchultz, QuantumYangBaxter) {
  const cplx q = default_params().q();
  Sampler s(2);
  for (int k = 0; k < 20; ++k) {
    const cplx x = random_multiplicative(s);
    const cplx y = random_multiplicative(s);
    EXPECT_LT(qybe_residual([&](cplx z) { return perk_schultz(z, q); }, x, y), 1e-10);
  }
}

TEST(PerkSchultz, QuantumYangBaxterFailsWithMismatchedQ) {
  const cplx q = default_params().q();
  Sampler s(3);
  // x-dependent deformation of q breaks the equation
  auto broken = [&](cplx z) { return perk_schultz(z, q * (1.0 + 0.1 * z)); };
  EXPECT_GT(qybe_residual(broken, random_multiplicative(s), random_multiplicative(s)), 1e-3);
}

TEST(PerkSchultz, Unitarity) {
  const cplx q = default_params().q();
  const ComplexMatrix flip = flip_operator(3);
  Sampler s(4);
  for (int k = 0; k < 20; ++k) {
    const cplx z = random_multiplicative(s);
    const ComplexMatrix r21 = flip * perk_schultz(z, q) * flip;
    EXPECT_LT(relative_residual(ComplexMatrix(r21.inverse()), perk_schultz(1.0 / z, q)), 1e-10);
  }
}

TEST(PerkSchultz, WeightConservation) {
  const cplx q = default_params().q();
  const ComplexMatrix r = perk_schultz(cplx(0.7, 0.4), q);
  for (int row = 0; row < 9; ++row)
    for (int col = 0; col < 9; ++col) {
      std::multiset<int> in{col / 3, col % 3}, out{row / 3, row % 3};
      if (in != out) EXPECT_EQ(r(row, col), cplx(0.0));
    }
}

TEST(HeckeParams, EnforcesSiteCap) {
  EXPECT_THROW(HeckeParams(default_params(), 7), PreconditionError);
  EXPECT_THROW(HeckeParams(default_params(), 1), PreconditionError);
  EXPECT_NO_THROW(HeckeParams(default_params(), 7, 7));
}

class SpinRelations : public ::testing::TestWithParam<int> {};

TEST_P(SpinRelations, ExtendedAffineHeckeRelations) {
  const int n = GetParam();
  const auto ep = default_params();
  Sampler s(10 + n);
  const SpinRep rep(HeckeParams(ep, n), s.phi(ep));
  const cplx q = rep.q();
  const auto& z = rep.zeta();
  for (int i = 1; i < n; ++i) {
    EXPECT_LT(hecke_residual(rep.T(i), q), 1e-12);
    EXPECT_LT(relative_residual(rep.T(i) * rep.T_inv(i), eye(rep.dim())), 1e-13);
  }
  for (int i = 1; i + 1 < n; ++i) {
    EXPECT_LT(relative_residual(rep.T(i) * rep.T(i + 1) * rep.T(i), rep.T(i + 1) * rep.T(i) * rep.T(i + 1)),
              1e-12);
    EXPECT_LT(relative_residual(z * rep.T(i), rep.T(i + 1) * z), 1e-12);
  }
  for (int i = 1; i < n; ++i)
    for (int j = i + 2; j < n; ++j) EXPECT_LT(relative_residual(rep.T(i) * rep.T(j), rep.T(j) * rep.T(i)), 1e-12);
  EXPECT_LT(relative_residual(z * z * rep.T(n - 1), rep.T(1) * z * z), 1e-12);
  EXPECT_LT(relative_residual(z * rep.zeta_inv(), eye(rep.dim())), 1e-13);

  // zeta^n is central
  ComplexMatrix zn = eye(rep.dim());
  for (int k = 0; k < n; ++k) zn *= z;
  for (int i = 1; i < n; ++i) EXPECT_LT(relative_residual(zn * rep.T(i), rep.T(i) * zn), 1e-12);
}

TEST_P(SpinRelations, BernsteinElementsCommuteAndInvert) {
  const int n = GetParam();
  const auto ep = default_params();
  Sampler s(20 + n);
  const SpinRep rep(HeckeParams(ep, n), s.phi(ep));
  for (int i = 1; i <= n; ++i) {
    EXPECT_LT(relative_residual(spin_Y(rep, i) * spin_Y_inverse(rep, i), eye(rep.dim())), 1e-12);
    for (int j = i + 1; j <= n; ++j) {
      const ComplexMatrix a = spin_Y(rep, i), b = spin_Y(rep, j);
      EXPECT_LT(relative_residual(a * b, b * a), 1e-12);
    }
  }
}

TEST_P(SpinRelations, BernsteinZelevinsky) {
  const int n = GetParam();
  const auto ep = default_params();
  Sampler s(30 + n);
  const SpinRep rep(HeckeParams(ep, n), s.phi(ep));
  for (int t = 0; t < 8; ++t) {
    std::vector<int> lambda(n);
    for (int& v : lambda) v = s.integer(-2, 2);
    for (int i = 1; i < n; ++i) EXPECT_LT(bz_residual(rep, i, lambda), 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Sites, SpinRelations, ::testing::Values(2, 3, 4));

TEST(SpinRep, TwistChangesZetaOnly) {
  const auto ep = default_params();
  const SpinRep a(HeckeParams(ep, 3), Phi{0.1, 0.2, 0.3});
  const SpinRep b(HeckeParams(ep, 3), Phi{0.4, -0.2, 0.9});
  EXPECT_EQ(a.T(1), b.T(1));
  EXPECT_GT(relative_residual(a.zeta(), b.zeta()), 1e-3);
}

TEST(Ytilde, ZeroWeightIsIdentity) {
  const auto ep = default_params();
  const SpinRep rep(HeckeParams(ep, 3), Phi{0.1, 0.2, 0.3});
  EXPECT_LT(relative_residual(spin_Ytilde(rep, {0, 0, 0}), eye(27)), 1e-13);
}

TEST(Ytilde, IsMultiplicativeInTheWeight) {
  const auto ep = default_params();
  const SpinRep rep(HeckeParams(ep, 3), Phi{0.1, 0.2, 0.3});
  const ComplexMatrix lhs = spin_Ytilde(rep, {1, 1, 0});
  const ComplexMatrix rhs = spin_Ytilde(rep, {1, 0, 0}) * spin_Ytilde(rep, {0, 1, 0});
  EXPECT_LT(relative_residual(lhs, rhs), 1e-12);
}

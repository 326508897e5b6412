#include "ellqkz/principal_series.hpp"
#include "support.hpp"

using namespace ellqkz;
using ellqkz::testing::default_params;
using ellqkz::testing::params;

namespace {

SymbolicValue sym(int phi_index, int kappa, int pi) { return SymbolicValue::phi_entry(phi_index, kappa, pi); }

}  // namespace

TEST(BlockData, GammaForContentOneOneOne) {
  const auto g = block_gamma_symbolic({1, 1, 1});
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], sym(3, 0, -2));
  EXPECT_EQ(g[1], sym(2, 0, -1));
  EXPECT_EQ(g[2], sym(1, 0, -1));
  EXPECT_TRUE(block_data({1, 1, 1}, Phi{}, default_params()).I.I.empty());
}

TEST(BlockData, GammaForContentZeroTwoOne) {
  const auto g = block_gamma_symbolic({0, 2, 1});
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], sym(3, 0, -2));
  EXPECT_EQ(g[1], sym(2, 1, -1));
  EXPECT_EQ(g[2], sym(2, -1, -1));
  const auto spec = block_data({0, 2, 1}, Phi{}, default_params());
  EXPECT_EQ(spec.I.I, std::set<int>{2});
  EXPECT_EQ(spec.eps.at(2), 1);
}

TEST(BlockData, DifferenceUsedInTheConnectionCoefficient) {
  // gamma_1 - gamma_2 for (1,1,1) is phi_3 - phi_2 - pi i/log p
  const auto g = block_gamma_symbolic({1, 1, 1});
  SymbolicValue expected;
  expected.phi = {0, -1, 1};
  expected.pi = -1;
  EXPECT_EQ(g[0] - g[1], expected);
  EXPECT_EQ((g[0] - g[1]).to_string(), "-phi2 + phi3 - pi*i/log(p)");
}

TEST(BlockData, SatisfiesMembershipForAllBlocks) {
  const auto ep = default_params();
  Sampler s(1);
  const Phi phi = s.phi(ep);
  for (int n = 2; n <= 6; ++n)
    for (const auto& r : block_labels(n)) {
      const auto spec = block_data(r, phi, ep);
      EXPECT_NO_THROW(spec.validate(ep)) << r.to_string();
      EXPECT_LT(spec.membership_defect(ep), 1e-13);
      for (const auto& [i, e] : spec.eps) EXPECT_EQ(e, i < r.r3 ? -1 : 1);
    }
}

TEST(Spec, ValidateRejectsBadData) {
  const auto ep = default_params();
  PrincipalSeriesSpec spec;
  spec.n = 2;
  spec.I = ParabolicIndex(2, {1});
  spec.eps = {{1, 1}};
  spec.gamma = {0.0, 0.0};
  EXPECT_THROW(spec.validate(ep), PreconditionError);
  spec.gamma = {2.0 * ep.kappa, 0.0};
  EXPECT_NO_THROW(spec.validate(ep));
  spec.eps.clear();
  EXPECT_THROW(spec.validate(ep), PreconditionError);
}

TEST(Spec, CharacterValues) {
  const auto ep = default_params();
  const auto spec = block_data({0, 2, 1}, Phi{0.1, 0.2, 0.3}, ep);
  const auto chi = chi_values(spec, ep);
  EXPECT_LT(std::abs(chi.T.at(2) - ep.q()), 1e-15);
  ASSERT_EQ(chi.Y.size(), 3u);
  for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(chi.Y[j] - pow_p(ep, -spec.gamma[j])), 1e-15);
}

TEST(Decomposition, BlockCounts) {
  const auto ep = default_params();
  const Phi phi{0.1, 0.2, 0.3};
  const auto d2 = decompose(2, phi, ep);
  EXPECT_EQ(d2.blocks.size(), 6u);
  int ones = 0, twos = 0;
  for (const auto& b : d2.blocks) (b.size() == 1 ? ones : twos)++;
  EXPECT_EQ(ones, 3);
  EXPECT_EQ(twos, 3);
  const auto d3 = decompose(3, phi, ep);
  EXPECT_EQ(d3.blocks.size(), 10u);
  EXPECT_EQ(d3.total_dimension(), 27);
}

TEST(Decomposition, TensorIndicesPartitionTheBasis) {
  const auto ep = default_params();
  for (int n = 2; n <= 5; ++n) {
    std::vector<int> hits(ipow(3, n), 0);
    for (const auto& b : decompose(n, Phi{0.1, 0.2, 0.3}, ep).blocks)
      for (int idx : b.tensor_index) hits[idx]++;
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

class BlockOracle : public ::testing::TestWithParam<int> {};

TEST_P(BlockOracle, CyclicVectorIsAJointEigenvector) {
  const int n = GetParam();
  const auto ep = default_params();
  Sampler s(100 + n);
  const SpinRep rep(HeckeParams(ep, n), s.phi(ep));
  for (const auto& r : block_labels(n)) EXPECT_LT(eigen_check(rep, r), 1e-10) << r.to_string();
}

TEST_P(BlockOracle, SignsMatchTheHeckeAction) {
  const int n = GetParam();
  const auto ep = default_params();
  Sampler s(200 + n);
  const SpinRep rep(HeckeParams(ep, n), s.phi(ep));
  for (const auto& r : block_labels(n))
    for (const auto& w : min_coset_reps(block_parabolic(r)))
      EXPECT_LT(sign_check(rep, r, w), 1e-10) << r.to_string() << " " << w.to_string();
}

TEST_P(BlockOracle, PrintedEtaVariantFailsSomewhereWithR3One) {
  const int n = GetParam();
  const auto ep = default_params();
  const SpinRep rep(HeckeParams(ep, n), Phi{0.1, 0.2, 0.3});
  bool failed = false;
  for (const auto& r : block_labels(n)) {
    if (r.r3 != 1) continue;
    for (const auto& w : min_coset_reps(block_parabolic(r)))
      failed |= sign_check(rep, r, w, EtaVariant::AsPrinted) > 1e-10;
  }
  EXPECT_TRUE(failed);
}

INSTANTIATE_TEST_SUITE_P(Sites, BlockOracle, ::testing::Values(2, 3, 4));

TEST(SignCheck, ExampleWithNegativeSign) {
  const auto ep = default_params();
  const SpinRep rep(HeckeParams(ep, 3), Phi{0.1, 0.2, 0.3});
  const BlockLabel r{1, 1, 1};
  const Permutation w({2, 3, 1});
  EXPECT_EQ(eta(w, r), 1);
  EXPECT_LT(sign_check(rep, r, w), 1e-12);
  EXPECT_NEAR(sign_check(rep, r, w, EtaVariant::AsPrinted), 2.0, 1e-12);
}

TEST(Spectrum, MatchesClosedForm) {
  const auto ep = default_params();
  Sampler s(5);
  for (int n = 2; n <= 3; ++n) {
    const Phi phi = s.phi(ep);
    const SpinRep rep(HeckeParams(ep, n), phi);
    for (int j = 1; j <= n; ++j) {
      const auto predicted = spectrum_multiset(n, j, phi, ep);
      EXPECT_EQ(static_cast<int>(predicted.size()), ipow(3, n));
      EXPECT_LT(multiset_distance(predicted, numerical_spectrum(spin_Ytilde(rep, unit_vector(n, j)))), 1e-6);
    }
  }
}

TEST(Spectrum, WrongPredictionIsDetected) {
  const auto ep = default_params();
  const Phi phi{0.1, 0.25, 0.45};
  const SpinRep rep(HeckeParams(ep, 2), phi);
  auto predicted = spectrum_multiset(2, 1, phi, ep);
  predicted[0] *= 1.01;
  EXPECT_GT(multiset_distance(predicted, numerical_spectrum(spin_Ytilde(rep, unit_vector(2, 1)))), 1e-4);
}

TEST(MultisetDistance, GreedyMatching) {
  const std::vector<cplx> a{1.0, 2.0, 3.0};
  EXPECT_EQ(multiset_distance(a, {3.0, 1.0, 2.0}), 0.0);
  EXPECT_NEAR(multiset_distance(a, {3.0, 1.0, 2.5}), 0.25, 1e-15);
  EXPECT_TRUE(std::isinf(multiset_distance(a, {1.0})));
}

TEST(Genericity, DefaultParametersAreGeneric) {
  const auto ep = default_params();
  Sampler s(6);
  EXPECT_TRUE(genericity_report(3, s.phi(ep), ep).ok());
}

TEST(Genericity, KappaZeroIsFlagged) {
  const auto ep = params(0.35, 0.0);
  const auto rep = genericity_report(2, Phi{0.1, 0.2, 0.3}, ep);
  EXPECT_FALSE(rep.ok());
  EXPECT_FALSE(rep.q_generic);
  EXPECT_FALSE(rep.kappa_generic);
}

TEST(Genericity, IntegralPhiDifferenceIsFlagged) {
  const auto ep = default_params();
  const auto rep = genericity_report(2, Phi{0.3, 1.3, 0.7}, ep);
  EXPECT_FALSE(rep.ok());
  bool gamma_issue = false;
  for (const auto& issue : rep.issues) gamma_issue |= issue.kind == "gamma-pole";
  EXPECT_TRUE(gamma_issue);
}

#include "ellqkz/serialize.hpp"
#include "support.hpp"

using namespace ellqkz;
using ellqkz::testing::default_params;

namespace {

bool bit_identical(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(cplx) * a.size()) == 0;
}

}  // namespace

TEST(Json, ComplexRoundTrip) {
  for (const cplx z : {cplx(0.1, -0.3), cplx(1e-300, 5e300), cplx(-0.0, 0.0)}) {
    const cplx back = complex_from_json(json::parse(to_json_value(z).dump()));
    EXPECT_EQ(std::memcmp(&back, &z, sizeof z), 0);
  }
  EXPECT_THROW(complex_from_json(json::array({1.0})), PreconditionError);
}

TEST(Json, DynamicalRRoundTripIsBitIdentical) {
  const auto ep = default_params();
  Sampler s(1);
  for (int t = 0; t < 10; ++t) {
    const auto r = DynamicalRMatrix::evaluate(s.spectral(ep), s.phi(ep), ep);
    const json j = json::parse(to_json_value(r, ep).dump());
    const auto back = dynamical_r_from_json(j);
    EXPECT_TRUE(bit_identical(back.entries, r.entries));
    EXPECT_EQ(back.x, r.x);
    EXPECT_EQ(back.phi, r.phi);
    EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
  }
}

TEST(Json, ConnectionMatrixRoundTrip) {
  const auto ep = default_params();
  Sampler s(2);
  const Phi phi = s.phi(ep);
  for (const auto& r : block_labels(3)) {
    const auto spec = block_data(r, phi, ep);
    const auto m = m_word(spec, Permutation::longest(3), s.centred_point(3, ep), ep);
    const auto back = connection_from_json(json::parse(to_json_value(m, ep).dump()));
    EXPECT_TRUE(bit_identical(back.entries, m.entries));
    EXPECT_EQ(back.basis, m.basis);
    EXPECT_EQ(back.w, m.w);
    EXPECT_EQ(back.z, m.z);
    EXPECT_EQ(back.spec.gamma_symbolic, spec.gamma_symbolic);
    EXPECT_EQ(back.spec.eps, spec.eps);
    EXPECT_EQ(back.spec.I, spec.I);
  }
}

TEST(Json, SymbolicGammaIsExact) {
  const auto g = block_gamma_symbolic({1, 1, 1});
  const json j = to_json_value(g[0]);
  EXPECT_EQ(j.at("pi_over_log_p"), -2);
  EXPECT_EQ(j.at("phi"), json::array({0, 0, 1}));
  EXPECT_EQ(symbolic_from_json(j), g[0]);
}

TEST(Json, RejectsForeignSchemaVersion) {
  const auto ep = default_params();
  json j = to_json_value(DynamicalRMatrix::evaluate(0.1, Phi{0.1, 0.2, 0.3}, ep), ep);
  j["schema_version"] = "0.9";
  EXPECT_THROW(dynamical_r_from_json(j), PreconditionError);
}

TEST(Json, RaggedMatrixRejected) {
  const json j = json::array({json::array({json::array({1.0, 0.0})}), json::array()});
  EXPECT_THROW(matrix_from_json(j), PreconditionError);
}

TEST(Json, ParamsRoundTrip) {
  auto ep = default_params();
  ep.kappa = cplx(0.31, 0.02);
  const auto back = params_from_json(params_json(ep));
  EXPECT_EQ(back.p(), ep.p());
  EXPECT_EQ(back.kappa, ep.kappa);
}

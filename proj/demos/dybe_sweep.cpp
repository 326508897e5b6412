// Prints dynamical Yang-Baxter residuals for each shift family over a few
// random spectral parameters.

#include <cstdio>

#include "ellqkz/connection.hpp"
#include "ellqkz/sampling.hpp"

int main() {
  using namespace ellqkz;
  EllipticParams ep;
  Sampler s(7);
  const Phi phi = s.phi(ep);
  std::printf("p = %.3f, kappa = %.3f\n", ep.p(), ep.kappa.real());
  for (int k = 0; k < 5; ++k) {
    const auto [x, y] = s.spectral_pair(ep);
    std::printf("x = %+.3f%+.3fi  y = %+.3f%+.3fi", x.real(), x.imag(), y.real(), y.imag());
    for (auto kind : {ShiftKind::Psi, ShiftKind::PhiShift, ShiftKind::Xi})
      std::printf("  %s %.1e", to_string(kind).c_str(), dybe_residual(x, y, phi, {kind}, ep));
    std::printf("  felder %.1e\n", felder_residual(x, y, phi, ep));
  }
}

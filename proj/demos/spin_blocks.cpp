// Lists the principal series blocks of the spin representation on V^{(x)n}
// together with the eigenvector and sign residuals of each block.

#include <cstdio>
#include <cstdlib>

#include "ellqkz/principal_series.hpp"
#include "ellqkz/sampling.hpp"

int main(int argc, char** argv) {
  using namespace ellqkz;
  const int n = argc > 1 ? std::atoi(argv[1]) : 3;
  EllipticParams ep;
  Sampler s(11);
  const Phi phi = s.phi(ep);
  const SpinRep rep(HeckeParams(ep, n), phi);
  int total = 0;
  for (const auto& r : block_labels(n)) {
    const Block b = make_block(r, phi, ep);
    double sign = 0.0;
    for (const auto& w : b.reps) sign = std::max(sign, sign_check(rep, r, w));
    std::printf("r = %-9s dim %3d  gamma = ", r.to_string().c_str(), b.size());
    for (const auto& g : b.spec.gamma_symbolic) std::printf("%s  ", g.to_string().c_str());
    std::printf("\n    eigen %.1e  sign %.1e\n", eigen_check(rep, r), sign);
    total += b.size();
  }
  std::printf("total dimension %d = 3^%d\n", total, n);
}

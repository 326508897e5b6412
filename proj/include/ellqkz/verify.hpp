#pragma once

// Verification suites behind `ellqkz verify`. Every check evaluates one
// identity numerically and records a normalised residual.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "connection.hpp"
#include "principal_series.hpp"
#include "qkz.hpp"
#include "sampling.hpp"
#include "serialize.hpp"

namespace ellqkz {

struct RunConfig {
  double p = 0.35;
  cplx kappa{0.27, 0.0};
  std::optional<Phi> phi;
  int n = 3;
  std::uint64_t seed = 20240607;
  double residual_tol = 1e-9;
  double pole_tol = 1e-10;
  double theta_tol = 1e-16;
  int samples = 20;
  int max_sites = 6;
  std::string out;
  std::string format = "table";

  void validate() const {
    if (!(p > 0.0 && p < 1.0)) throw PreconditionError("p must satisfy 0 < p < 1");
    if (n < 2) throw PreconditionError("n must be at least 2");
    if (n > max_sites) throw PreconditionError("n exceeds the site cap");
    if (!(residual_tol > 0.0)) throw PreconditionError("residual tolerance must be positive");
    if (samples < 1) throw PreconditionError("sample count must be positive");
    if (format != "json" && format != "table") throw PreconditionError("format must be json or table");
  }

  EllipticParams elliptic() const {
    EllipticParams ep;
    ep.nome = Nome(p);
    ep.kappa = kappa;
    ep.pole_tol = pole_tol;
    ep.theta_tol = theta_tol;
    return ep;
  }
};

/// Parses "1.5", "-0.2j", "0.3+0.1j", "1e-3-2e-2j".
inline cplx parse_complex(std::string text) {
  std::erase_if(text, [](char c) { return c == ' '; });
  if (text.empty()) throw PreconditionError("empty complex number");
  auto to_double = [](const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw PreconditionError("malformed number '" + s + "'");
    return v;
  };
  try {
    if (text.back() != 'j' && text.back() != 'i') return {to_double(text), 0.0};
    text.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = text.size(); k-- > 1;) {
      if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    auto imag = [&](std::string s) {
      if (s.empty() || s == "+") return 1.0;
      if (s == "-") return -1.0;
      return to_double(s);
    };
    if (split == std::string::npos) return {0.0, imag(text)};
    return {to_double(text.substr(0, split)), imag(text.substr(split))};
  } catch (const std::logic_error&) {
    throw PreconditionError("cannot parse complex number '" + text + "'");
  }
}

inline Phi parse_phi(const std::string& text) {
  std::vector<cplx> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(parse_complex(item));
  if (parts.size() != 3) throw PreconditionError("phi needs three comma-separated values");
  return {parts[0], parts[1], parts[2]};
}

inline std::string format_complex(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "j";
  return os.str();
}

enum class CheckStatus { Pass, Fail, Inconclusive };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "inconclusive";
  }
}

struct CheckRecord {
  std::string id;
  std::string anchor;
  json parameters = json::object();
  double residual = 0.0;
  double tolerance = 0.0;
  bool expect_large = false;  ///< negative control: residual must exceed tolerance
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct Report {
  std::string suite;
  json config = json::object();
  std::vector<CheckRecord> checks;
  std::map<std::string, double> timings_ms;

  int count(CheckStatus s) const {
    int c = 0;
    for (const auto& r : checks) c += r.status == s;
    return c;
  }

  int exit_code() const {
    if (count(CheckStatus::Fail) > 0) return 1;
    if (count(CheckStatus::Inconclusive) > 0) return 2;
    return 0;
  }

  json to_json() const {
    json checks_json = json::array();
    for (const auto& r : checks) {
      checks_json.push_back({{"id", r.id},
                             {"anchor", r.anchor},
                             {"parameters", r.parameters},
                             {"residual", r.residual},
                             {"tolerance", r.tolerance},
                             {"comparison", r.expect_large ? "residual > tolerance" : "residual < tolerance"},
                             {"status", to_string(r.status)},
                             {"detail", r.detail}});
    }
    return {{"schema_version", kSchemaVersion},
            {"type", "verification_report"},
            {"suite", suite},
            {"config", config},
            {"checks", checks_json},
            {"summary",
             {{"passed", count(CheckStatus::Pass)},
              {"failed", count(CheckStatus::Fail)},
              {"inconclusive", count(CheckStatus::Inconclusive)},
              {"exit_code", exit_code()}}},
            {"timings_ms", timings_ms}};
  }

  std::string to_table() const {
    std::ostringstream os;
    os << "suite: " << suite << "\n";
    char line[512];
    std::snprintf(line, sizeof line, "%-38s %-12s %-10s %-13s %s\n", "check", "residual", "tolerance", "status",
                  "identity");
    os << line;
    for (const auto& r : checks) {
      std::snprintf(line, sizeof line, "%-38s %-12.3e %s%-9.1e %-13s %s\n", r.id.c_str(), r.residual,
                    r.expect_large ? ">" : "<", r.tolerance, to_string(r.status).c_str(), r.anchor.c_str());
      os << line;
      if (!r.detail.empty() && r.status != CheckStatus::Pass) os << "    " << r.detail << "\n";
    }
    os << "passed " << count(CheckStatus::Pass) << ", failed " << count(CheckStatus::Fail) << ", inconclusive "
       << count(CheckStatus::Inconclusive) << "\n";
    return os.str();
  }
};

/// Outcome of a single check body.
struct CheckOutcome {
  double residual = 0.0;
  json parameters = json::object();
  std::string detail;
  std::optional<bool> pass;  ///< overrides the tolerance comparison when set

  CheckOutcome(double r, json params = json::object(), std::string text = {}, std::optional<bool> verdict = {})
      : residual(r), parameters(std::move(params)), detail(std::move(text)), pass(verdict) {}
};

class Verifier {
public:
  explicit Verifier(RunConfig cfg) : cfg_(std::move(cfg)), ep_(cfg_.elliptic()), sampler_(cfg_.seed) {
    cfg_.validate();
    phi_ = cfg_.phi ? *cfg_.phi : sampler_.phi(ep_);
  }

  const Phi& phi() const noexcept { return phi_; }
  const EllipticParams& elliptic() const noexcept { return ep_; }

  Report run(const std::string& suite) {
    Report report;
    report.suite = suite;
    report.config = config_json();
    static const std::vector<std::string> all{"elliptic", "hecke", "decomposition", "connection", "dybe", "qkz"};
    if (suite == "all") {
      for (const auto& s : all) run_suite(s, report);
    } else if (std::find(all.begin(), all.end(), suite) != all.end()) {
      run_suite(suite, report);
    } else {
      throw PreconditionError("unknown suite '" + suite + "'");
    }
    return report;
  }

  json config_json() const {
    return {{"p", cfg_.p},
            {"kappa", to_json_value(cfg_.kappa)},
            {"phi", complex_list(phi_)},
            {"n", cfg_.n},
            {"seed", cfg_.seed},
            {"residual_tol", cfg_.residual_tol},
            {"pole_tol", cfg_.pole_tol},
            {"theta_tol", cfg_.theta_tol},
            {"samples", cfg_.samples}};
  }

private:
  using Body = std::function<CheckOutcome()>;

  void check(Report& report, const std::string& id, const std::string& anchor, double tol, const Body& body,
             bool expect_large = false) {
    CheckRecord rec;
    rec.id = id;
    rec.anchor = anchor;
    rec.tolerance = tol;
    rec.expect_large = expect_large;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      CheckOutcome out = body();
      rec.residual = out.residual;
      rec.parameters = std::move(out.parameters);
      rec.detail = std::move(out.detail);
      const bool ok = out.pass ? *out.pass : (expect_large ? out.residual > tol : out.residual < tol);
      rec.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const PoleError& e) {
      rec.status = CheckStatus::Inconclusive;
      rec.detail = e.what();
    } catch (const OverflowError& e) {
      rec.status = CheckStatus::Inconclusive;
      rec.detail = e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    report.timings_ms[id] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    report.checks.push_back(std::move(rec));
  }

  /// Maximum of f over `count` draws; a draw that hits a pole is redrawn up
  /// to five times before the pole error propagates.
  double sweep(int count, const std::function<double(Sampler&)>& f) {
    double worst = 0.0;
    for (int k = 0; k < count; ++k) {
      for (int attempt = 0;; ++attempt) {
        try {
          worst = std::max(worst, f(sampler_));
          break;
        } catch (const PoleError&) {
          if (attempt >= 5) throw;
        }
      }
    }
    return worst;
  }

  bool genericity_guard(Report& report, const std::string& suite, int n) {
    const GenericityReport g = genericity_report(n, phi_, ep_);
    if (g.ok()) return true;
    CheckRecord rec;
    rec.id = suite + ".genericity";
    rec.anchor = "genericity of (p, kappa, phi): q^2 != 1, 2 kappa not integral, nonresonance";
    rec.status = CheckStatus::Inconclusive;
    rec.residual = static_cast<double>(g.issues.size());
    std::ostringstream os;
    os << g.issues.size() << " violation(s)";
    for (std::size_t k = 0; k < std::min<std::size_t>(g.issues.size(), 3); ++k) {
      os << "; " << g.issues[k].kind << ": " << g.issues[k].detail;
    }
    rec.detail = os.str();
    report.checks.push_back(std::move(rec));
    return false;
  }

  void run_suite(const std::string& suite, Report& report) {
    if (suite == "elliptic") return suite_elliptic(report);
    if (!genericity_guard(report, suite, std::min(cfg_.n, 4))) return;
    if (suite == "hecke") return suite_hecke(report);
    if (suite == "decomposition") return suite_decomposition(report);
    if (suite == "connection") return suite_connection(report);
    if (suite == "dybe") return suite_dybe(report);
    if (suite == "qkz") return suite_qkz(report);
  }

  static json pair_json(cplx x, cplx y) { return {{"x", to_json_value(x)}, {"y", to_json_value(y)}}; }

  void suite_elliptic(Report& report) {
    const int samples = cfg_.samples;
    check(report, "elliptic.theta-truncation", "doubling the truncation order changes theta by a relative amount below tol",
          1e-12, [&] {
            EllipticParams loose = ep_;
            loose.theta_tol = 1e-12;
            const double r = sweep(samples, [&](Sampler& s) {
              const cplx z = std::exp(s.complex_in(3.0, 3.0));
              const int m = theta_factor_count(loose, z);
              const cplx fine = theta_truncated(loose, z, 2 * m);
              return std::abs(theta_truncated(loose, z, m) - fine) / std::abs(fine);
            });
            return CheckOutcome{r, {{"theta_tol", 1e-12}}};
          });
    check(report, "elliptic.theta-quasi-periodicity", "theta(pz) = -z^{-1} theta(z) and theta(1/z) = theta(pz)",
          1e-12, [&] {
            const double r = sweep(samples, [&](Sampler& s) {
              const cplx z = std::exp(s.complex_in(1.5, 3.0));
              const cplx tpz = theta(ep_, ep_.p() * z);
              const double a = std::abs(tpz + theta(ep_, z) / z) / std::max(1.0, std::abs(tpz));
              const double b = std::abs(theta(ep_, 1.0 / z) - tpz) / std::max(1.0, std::abs(tpz));
              return std::max(a, b);
            });
            return CheckOutcome{r};
          });
    check(report, "elliptic.AB-at-zero", "A^y(0) = 1 and B^y(0) = 0", 1e-12, [&] {
      const double r = sweep(samples, [&](Sampler& s) {
        const cplx y = s.complex_in(1.0, 0.5);
        if (lattice_distance(y, ep_) < 0.05) return 0.0;
        return std::max(std::abs(coeff_A(ep_, y, 0.0) - 1.0), std::abs(coeff_B(ep_, y, 0.0)));
      });
      return CheckOutcome{r};
    });
    check(report, "elliptic.c-ratio", "closed form of -c(x)/c(-x) against the quotient of c-functions", 1e-11,
          [&] {
            const double r = sweep(samples, [&](Sampler& s) {
              const cplx x = s.spectral(ep_);
              const cplx direct = -c_func(ep_, x) / c_func(ep_, -x);
              return std::abs(minus_c_ratio(ep_, x) - direct) / std::max(1.0, std::abs(direct));
            });
            return CheckOutcome{r};
          });
  }

  void suite_hecke(Report& report) {
    const cplx q = ep_.q();
    const int samples = cfg_.samples;
    const ComplexMatrix b = braid_matrix(q);
    check(report, "hecke.relation", "quadratic Hecke relation (B - q)(B + q^{-1}) = 0", 1e-12,
          [&] { return CheckOutcome{hecke_residual(b, q)}; });
    check(report, "hecke.braid", "braid relation B12 B23 B12 = B23 B12 B23", 1e-12, [&] {
      const ComplexMatrix b12 = embed_two_site(b, 1, 2, 3, 3);
      const ComplexMatrix b23 = embed_two_site(b, 2, 3, 3, 3);
      return CheckOutcome{relative_residual(b12 * b23 * b12, b23 * b12 * b23)};
    });
    check(report, "hecke.baxterization", "Baxterization of B equals the Perk-Schultz R-matrix", 1e-12, [&] {
      const double r = sweep(samples, [&](Sampler& s) {
        const cplx z = std::exp(s.complex_in(2.0, 3.0));
        return relative_residual(baxterize(b, q, z), perk_schultz(z, q));
      });
      return CheckOutcome{r};
    });
    check(report, "hecke.qybe", "quantum Yang-Baxter equation R12(x) R13(xy) R23(y) = R23(y) R13(xy) R12(x)", 1e-10,
          [&] {
            const double r = sweep(samples, [&](Sampler& s) {
              const cplx x = std::exp(s.complex_in(2.0, 3.0));
              const cplx y = std::exp(s.complex_in(2.0, 3.0));
              return qybe_residual([&](cplx z) { return perk_schultz(z, q); }, x, y);
            });
            return CheckOutcome{r};
          });
    check(report, "hecke.r-unitarity", "unitarity R21(z)^{-1} = R(z^{-1})", 1e-10, [&] {
      const ComplexMatrix flip = flip_operator(3);
      const double r = sweep(samples, [&](Sampler& s) {
        const cplx z = std::exp(s.complex_in(2.0, 3.0));
        const ComplexMatrix r21 = flip * perk_schultz(z, q) * flip;
        return relative_residual(ComplexMatrix(r21.inverse()), perk_schultz(1.0 / z, q));
      });
      return CheckOutcome{r};
    });
    check(report, "hecke.r-at-one", "R(1) equals the flip operator", 1e-12,
          [&] { return CheckOutcome{relative_residual(baxterize(b, q, 1.0), flip_operator(3))}; });

    const int n = cfg_.n;
    const SpinRep rep(HeckeParams(ep_, n, cfg_.max_sites), phi_);
    check(report, "hecke.spin-relations", "defining relations of the extended affine Hecke algebra in the spin representation",
          1e-11, [&] {
            double worst = 0.0;
            const auto& z = rep.zeta();
            for (int i = 1; i < n; ++i) worst = std::max(worst, hecke_residual(rep.T(i), q));
            for (int i = 1; i + 1 < n; ++i) {
              worst = std::max(worst, relative_residual(rep.T(i) * rep.T(i + 1) * rep.T(i),
                                                        rep.T(i + 1) * rep.T(i) * rep.T(i + 1)));
              worst = std::max(worst, relative_residual(z * rep.T(i), rep.T(i + 1) * z));
            }
            for (int i = 1; i < n; ++i)
              for (int j = i + 2; j < n; ++j)
                worst = std::max(worst, relative_residual(rep.T(i) * rep.T(j), rep.T(j) * rep.T(i)));
            worst = std::max(worst, relative_residual(z * z * rep.T(n - 1), rep.T(1) * z * z));
            worst = std::max(worst, relative_residual(z * rep.zeta_inv(),
                                                      ComplexMatrix(ComplexMatrix::Identity(rep.dim(), rep.dim()))));
            return CheckOutcome{worst, {{"n", n}}};
          });
    check(report, "hecke.Y-commute", "the Bernstein elements Y_j commute", 1e-11, [&] {
      double worst = 0.0;
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          const ComplexMatrix yi = spin_Y(rep, i);
          const ComplexMatrix yj = spin_Y(rep, j);
          worst = std::max(worst, relative_residual(yi * yj, yj * yi));
        }
      return CheckOutcome{worst, {{"n", n}}};
    });
    check(report, "hecke.bernstein-zelevinsky", "Bernstein-Zelevinsky cross relation", 1e-10, [&] {
      const double r = sweep(samples, [&](Sampler& s) {
        std::vector<int> lambda(n);
        for (int& v : lambda) v = s.integer(-2, 2);
        return bz_residual(rep, s.integer(1, n - 1), lambda);
      });
      return CheckOutcome{r, {{"n", n}}};
    });
  }

  void suite_decomposition(Report& report) {
    const int n = cfg_.n;
    check(report, "decomposition.dimension", "sum over blocks of |S_n^I| equals 3^n", 0.5, [&] {
      double worst = 0.0;
      for (int m = 2; m <= 6; ++m) {
        int total = 0;
        for (const auto& r : block_labels(m)) total += static_cast<int>(min_coset_reps(block_parabolic(r)).size());
        worst = std::max(worst, static_cast<double>(std::abs(total - ipow(3, m))));
      }
      return CheckOutcome{worst, {{"n_max", 6}}};
    });
    check(report, "decomposition.membership", "block spectral data satisfies gamma_i - gamma_{i+1} = 2 eps_i kappa",
          1e-12, [&] {
            double worst = 0.0;
            for (const auto& r : block_labels(n)) worst = std::max(worst, block_data(r, phi_, ep_).membership_defect(ep_));
            return CheckOutcome{worst};
          });
    const SpinRep rep(HeckeParams(ep_, n, cfg_.max_sites), phi_);
    check(report, "decomposition.eigen", "cyclic vector v_alpha(r) is a joint eigenvector with the block character",
          1e-10, [&] {
            double worst = 0.0;
            for (const auto& r : block_labels(n)) worst = std::max(worst, eigen_check(rep, r));
            return CheckOutcome{worst, {{"n", n}}};
          });
    check(report, "decomposition.sign", "pi(T_w) v_alpha(r) = (-1)^eta(w) v_{w alpha(r)} for all coset representatives",
          1e-10, [&] {
            double worst = 0.0;
            for (const auto& r : block_labels(n))
              for (const auto& w : min_coset_reps(block_parabolic(r))) worst = std::max(worst, sign_check(rep, r, w));
            return CheckOutcome{worst, {{"n", n}, {"eta", "pairs j <= r3 < i"}}};
          });
    check(report, "decomposition.eta-printed-variant",
          "counting only pairs j < r3 < i breaks the sign identity for some block with r3 = 1", 1e-10, [&] {
            std::string witness;
            double witness_residual = 0.0;
            for (int m = 2; m <= std::min(n, 4) && witness.empty(); ++m) {
              const SpinRep small(HeckeParams(ep_, m, cfg_.max_sites), phi_);
              for (const auto& r : block_labels(m)) {
                if (r.r3 != 1) continue;
                for (const auto& w : min_coset_reps(block_parabolic(r))) {
                  const double res = sign_check(small, r, w, EtaVariant::AsPrinted);
                  if (res > 1e-10) {
                    witness = "r = " + r.to_string() + ", w = " + w.to_string();
                    witness_residual = res;
                    break;
                  }
                }
                if (!witness.empty()) break;
              }
            }
            return CheckOutcome{witness_residual, {{"witness", witness}}, witness, !witness.empty()};
          },
          true);
    if (n <= 4) {
      check(report, "decomposition.spectrum", "spectrum of pi(Ytilde_j) equals the closed-form prediction", 1e-6,
            [&] {
              double worst = 0.0;
              for (int j = 1; j <= n; ++j) {
                const auto predicted = spectrum_multiset(n, j, phi_, ep_);
                const auto observed = numerical_spectrum(spin_Ytilde(rep, unit_vector(n, j)));
                worst = std::max(worst, multiset_distance(predicted, observed));
              }
              return CheckOutcome{worst, {{"n", n}}};
            });
    }
  }

  void suite_connection(Report& report) {
    const int n = cfg_.n;
    const int samples = std::max(1, cfg_.samples / 2);
    const double tol = cfg_.residual_tol;
    std::vector<PrincipalSeriesSpec> specs;
    for (const auto& r : block_labels(n)) specs.push_back(block_data(r, phi_, ep_));

    check(report, "connection.unitarity", "unitarity M^{s_i}(z) M^{s_i}(s_i z) = 1 for every block", tol, [&] {
      const double r = sweep(samples, [&](Sampler& s) {
        const Point z = s.centred_point(n, ep_);
        double worst = 0.0;
        for (const auto& spec : specs)
          for (int i = 1; i < n; ++i) {
            Point sz = z;
            std::swap(sz[i - 1], sz[i]);
            const ComplexMatrix a = m_simple(spec, i, z, ep_).entries;
            const ComplexMatrix b = m_simple(spec, i, sz, ep_).entries;
            worst = std::max(worst, relative_residual(a * b, ComplexMatrix(ComplexMatrix::Identity(a.rows(), a.cols()))));
          }
        return worst;
      });
      return CheckOutcome{r, {{"n", n}}};
    });
    if (n >= 3) {
      check(report, "connection.braid", "braid relations of the connection matrices for every block", tol, [&] {
        const double r = sweep(samples, [&](Sampler& s) {
          const Point z = s.centred_point(n, ep_);
          double worst = 0.0;
          for (const auto& spec : specs) {
            const auto basis = min_coset_reps(spec.I);
            for (int i = 1; i + 1 < n; ++i) {
              const ComplexMatrix a = m_word_entries(spec, basis, {i, i + 1, i}, z, ep_);
              const ComplexMatrix b = m_word_entries(spec, basis, {i + 1, i, i + 1}, z, ep_);
              worst = std::max(worst, relative_residual(a, b));
            }
          }
          return worst;
        });
        return CheckOutcome{r, {{"n", n}}};
      });
      check(report, "connection.reduced-words", "M^w(z) is the same for every reduced word of w", tol, [&] {
        const auto perms = all_permutations(n);
        const double r = sweep(std::max(1, samples / 2), [&](Sampler& s) {
          const Point z = s.centred_point(n, ep_);
          double worst = 0.0;
          for (const auto& spec : specs) {
            const auto basis = min_coset_reps(spec.I);
            for (const auto& w : perms) {
              const auto words = all_reduced_words(w);
              const ComplexMatrix ref = m_word_entries(spec, basis, words.front(), z, ep_);
              for (std::size_t k = 1; k < words.size(); ++k)
                worst = std::max(worst, relative_residual(ref, m_word_entries(spec, basis, words[k], z, ep_)));
            }
          }
          return worst;
        });
        return CheckOutcome{r, {{"n", n}}};
      });
    }
    check(report, "connection.cocycle", "cocycle M^{ww'}(z) = M^w(z) M^{w'}(w^{-1} z)", tol, [&] {
      const auto perms = all_permutations(n);
      const double r = sweep(samples, [&](Sampler& s) {
        const Point z = s.centred_point(n, ep_);
        const auto& w = perms[s.integer(0, static_cast<int>(perms.size()) - 1)];
        const auto& w2 = perms[s.integer(0, static_cast<int>(perms.size()) - 1)];
        const auto& spec = specs[s.integer(0, static_cast<int>(specs.size()) - 1)];
        const ComplexMatrix lhs = m_word(spec, w * w2, z, ep_).entries;
        const ComplexMatrix rhs =
            m_word(spec, w, z, ep_).entries * m_word(spec, w2, permute_point(w.inverse(), z), ep_).entries;
        return relative_residual(lhs, rhs);
      });
      return CheckOutcome{r, {{"n", n}}};
    });
    check(report, "connection.lemma-n2", "modified monodromy for n = 2 equals R(z1 - z2; phi)", tol, [&] {
      const double r = sweep(samples, [&](Sampler& s) {
        const Point z = s.centred_point(2, ep_);
        return relative_residual(modified_monodromy(2, phi_, 1, z, ep_), dyn_R(z[0] - z[1], phi_, ep_));
      });
      return CheckOutcome{r};
    });
    check(report, "connection.lemma-n3", "modified monodromy for n = 3 equals R23 and R12 with Psi shifts", tol, [&] {
      const ShiftVectorFamily psi{ShiftKind::Psi};
      const double r = sweep(samples, [&](Sampler& s) {
        const Point z = s.centred_point(3, ep_);
        const double a = relative_residual(modified_monodromy(3, phi_, 1, z, ep_),
                                           shifted_R_apply(2, z[0] - z[1], phi_, psi.vectors(ep_.kappa, ep_), 1, 3, ep_));
        const double b = relative_residual(modified_monodromy(3, phi_, 2, z, ep_),
                                           shifted_R_apply(1, z[1] - z[2], phi_, psi.vectors(-ep_.kappa, ep_), 3, 3, ep_));
        return std::max(a, b);
      });
      return CheckOutcome{r};
    });
    check(report, "connection.two-routes", "modified monodromy from block matrices equals the tensor-basis formula",
          tol, [&] {
            const int m = std::min(n, 3);
            const Word word = reduced_word(Permutation::longest(m));
            const double r = sweep(samples, [&](Sampler& s) {
              const Point z = s.centred_point(m, ep_);
              return relative_residual(modified_monodromy_via_blocks(m, phi_, word, z, ep_),
                                       modified_monodromy_word(m, phi_, word, z, ep_));
            });
            return CheckOutcome{r, {{"n", m}}};
          });
    check(report, "connection.gl2-agreement", "gl(2) elliptic solution equals the n = 2 connection matrix with I empty",
          tol, [&] {
            const double r = sweep(samples, [&](Sampler& s) {
              const Point z = s.centred_point(2, ep_);
              PrincipalSeriesSpec spec;
              spec.n = 2;
              spec.I = ParabolicIndex(2, {});
              spec.gamma = {phi_[0], phi_[1]};
              const ComplexMatrix block = m_simple(spec, 1, z, ep_).entries;
              const ComplexMatrix g = gl2_fixture(z[0] - z[1], phi_[0] - phi_[1], ep_);
              return relative_residual(block, g.block(1, 1, 2, 2));
            });
            return CheckOutcome{r};
          });
    check(report, "connection.gl2-unitarity", "unitarity of the gl(2) elliptic solution", tol, [&] {
      const double r = sweep(samples, [&](Sampler& s) {
        const cplx x = s.spectral(ep_);
        const cplx y = phi_[0] - phi_[1];
        return relative_residual(gl2_fixture(x, y, ep_) * gl2_fixture(-x, y, ep_),
                                 ComplexMatrix(ComplexMatrix::Identity(4, 4)));
      });
      return CheckOutcome{r};
    });
  }

  void suite_dybe(Report& report) {
    const int samples = cfg_.samples;
    const double tol = cfg_.residual_tol;
    for (const auto kind : {ShiftKind::Psi, ShiftKind::PhiShift, ShiftKind::Xi}) {
      const std::string name = to_string(kind);
      check(report, "dybe." + name, "braid-form dynamical Yang-Baxter equation with " + name + " shift vectors", tol,
            [&] {
              const double r = sweep(samples, [&](Sampler& s) {
                const auto [x, y] = s.spectral_pair(ep_);
                return dybe_residual(x, y, phi_, {kind}, ep_);
              });
              return CheckOutcome{r};
            });
    }
    check(report, "dybe.h-weight", "braid-form dYBE with shifts phi + kappa h3 and phi - kappa h1", tol, [&] {
      const double r = sweep(samples, [&](Sampler& s) {
        const auto [x, y] = s.spectral_pair(ep_);
        return dybe_residual_shifts(x, y, phi_, weight_shifts(ep_.kappa), weight_shifts(-ep_.kappa), ep_);
      });
      return CheckOutcome{r};
    });
    check(report, "dybe.perturbed-shift", "negative control: shifts scaled by 1.1 violate the dYBE", 1e-3, [&] {
      double smallest = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 5; ++k) {
        const auto [x, y] = sampler_.spectral_pair(ep_);
        smallest = std::min(smallest, dybe_residual_shifts(x, y, phi_, weight_shifts(1.1 * ep_.kappa),
                                                           weight_shifts(-1.1 * ep_.kappa), ep_));
      }
      return CheckOutcome{smallest};
    }, true);
    check(report, "dybe.unitarity", "unitarity R(x; phi) R(-x; phi) = Id", tol, [&] {
      const double r = sweep(samples, [&](Sampler& s) {
        const Phi phi = s.phi(ep_);
        return unitarity_residual(s.spectral(ep_), phi, ep_);
      });
      return CheckOutcome{r};
    });
    check(report, "dybe.identity-at-zero", "R(0; phi) = Id", 1e-12, [&] {
      return CheckOutcome{relative_residual(dyn_R(0.0, phi_, ep_), ComplexMatrix(ComplexMatrix::Identity(9, 9)))};
    });
    check(report, "dybe.phi-translation", "R(x; phi + t(1,1,1)) = R(x; phi)", 1e-12, [&] {
      const double r = sweep(samples, [&](Sampler& s) {
        const cplx x = s.spectral(ep_);
        const cplx t = s.complex_in(1.0, 1.0);
        return relative_residual(dyn_R(x, phi_ + Phi{t, t, t}, ep_), dyn_R(x, phi_, ep_));
      });
      return CheckOutcome{r};
    });
    check(report, "dybe.felder", "Felder form of the dYBE for Rcheck = P R", tol, [&] {
      const double r = sweep(samples, [&](Sampler& s) {
        const auto [x, y] = s.spectral_pair(ep_);
        return felder_residual(x, y, phi_, ep_);
      });
      return CheckOutcome{r};
    });
    check(report, "dybe.felder-scrambled", "negative control: Felder form with h2 and h3 shifts exchanged", 1e-3,
          [&] {
            const auto [x, y] = sampler_.spectral_pair(ep_);
            return CheckOutcome{felder_residual(x, y, phi_, ep_, true)};
          },
          true);
    check(report, "dybe.gl2-shift", "gl(2) solution satisfies the dYBE for the shift found by scanning", tol, [&] {
      const auto [x, y] = sampler_.spectral_pair(ep_);
      const Gl2ShiftResult g = gl2_find_shift(x, y, phi_[0] - phi_[1], ep_);
      std::ostringstream os;
      os << "R12 shifted by " << g.c12_over_kappa << "*kappa*w(leg 3), R23 by " << g.c23_over_kappa
         << "*kappa*w(leg 1)";
      return CheckOutcome{g.residual,
                          {{"c12_over_kappa", g.c12_over_kappa}, {"c23_over_kappa", g.c23_over_kappa}},
                          os.str()};
    });
  }

  void suite_qkz(Report& report) {
    const int n = cfg_.n;
    const int samples = std::max(1, cfg_.samples / 2);
    const SpinRep rep(HeckeParams(ep_, n, cfg_.max_sites), phi_);
    check(report, "qkz.translation-words", "the words for tau(e_j) act on C^n as z -> z + e_j", 0.5, [&] {
      int bad = 0;
      for (int m = 2; m <= 5; ++m)
        for (int j = 1; j <= m; ++j) bad += !(word_element(m, translation_word(m, j)) == AffineElement::translation(m, j));
      return CheckOutcome{static_cast<double>(bad), {{"n_max", 5}}};
    });
    check(report, "qkz.letter", "C_{s_i}(z) equals P_{i,i+1} R^B_{i,i+1}(p^{z_i - z_{i+1}})", 1e-12, [&] {
      const ComplexMatrix b = braid_matrix(ep_.q());
      const double r = sweep(samples, [&](Sampler& s) {
        const Point z = s.point(n, ep_);
        double worst = 0.0;
        for (int i = 1; i < n; ++i) {
          const ComplexMatrix local =
              flip_operator(3) * baxterize(b, ep_.q(), pow_p(ep_, z[i - 1] - z[i]));
          worst = std::max(worst, relative_residual(transport_letter(rep, AffineLetter::s(i), z),
                                                    embed_two_site(local, i, i + 1, n, 3)));
        }
        return worst;
      });
      return CheckOutcome{r, {{"n", n}}};
    });
    check(report, "qkz.flatness", "C_{tau(e_i)}(z) C_{tau(e_j)}(z - e_i) = C_{tau(e_j)}(z) C_{tau(e_i)}(z - e_j)",
          cfg_.residual_tol, [&] {
            const double r = sweep(samples, [&](Sampler& s) {
              const Point z = s.point(n, ep_);
              double worst = 0.0;
              for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) worst = std::max(worst, flatness_residual(rep, i, j, z));
              return worst;
            });
            return CheckOutcome{r, {{"n", n}}};
          });
    check(report, "qkz.flatness-perturbed", "negative control: flatness fails with a wrong argument shift", 1e-3, [&] {
      const Point z = sampler_.point(n, ep_);
      Point shifted = z;
      shifted[0] -= 0.5;
      const ComplexMatrix lhs = transport_translation(rep, 1, z) * transport_translation(rep, 2, shifted);
      Point z2 = z;
      z2[1] -= 1.0;
      const ComplexMatrix rhs = transport_translation(rep, 2, z) * transport_translation(rep, 1, z2);
      return CheckOutcome{relative_residual(lhs, rhs)};
    }, true);
    check(report, "qkz.word-independence", "two words for the same affine element give the same transport operator",
          1e-10, [&] {
            AffineWord a = translation_word(n, 1);
            // s_1 s_1 inserted and xi xi^{-1} appended: same element, different word.
            AffineWord b{AffineLetter::s(1), AffineLetter::s(1)};
            b.insert(b.end(), a.begin(), a.end());
            b.push_back(AffineLetter::xi());
            b.push_back(AffineLetter::xi_inv());
            const double r = sweep(samples, [&](Sampler& s) {
              const Point z = s.point(n, ep_);
              return relative_residual(transport_word(rep, a, z), transport_word(rep, b, z));
            });
            return CheckOutcome{r, {{"n", n}}};
          });
    check(report, "qkz.braid-limit", "C_{tau(e_j)}(z) tends to pi(Ytilde_j) deep in the asymptotic sector", 1e-10,
          [&] {
            const Point base = sampler_.point(n, ep_);
            double worst = 0.0;
            for (int j = 1; j <= n; ++j) worst = std::max(worst, braid_limit_residual(rep, j, 40.0, base));
            return CheckOutcome{worst, {{"depth", 40.0}, {"n", n}}};
          });
    check(report, "qkz.braid-limit-rate", "braid-limit residual decays like p^depth (log-slope within 20%)", 0.2,
          [&] {
            const Point base = sampler_.point(n, ep_);
            double worst = 0.0;
            for (int j = 1; j <= n; ++j) {
              const double slope = braid_limit_slope(rep, j, 6.0, 12.0, base);
              worst = std::max(worst, std::abs(slope / ep_.nome.log() - 1.0));
            }
            return CheckOutcome{worst, {{"depths", {6.0, 12.0}}, {"log_p", ep_.nome.log()}}};
          });
  }

  RunConfig cfg_;
  EllipticParams ep_;
  Sampler sampler_;
  Phi phi_;
};

}  // namespace ellqkz

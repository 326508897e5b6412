// ellqkz: verification sweeps and matrix export.
//
// Exit codes: 0 pass, 1 failed check or pole, 2 inconclusive (parameters not
// generic, pole resampling exhausted), 3 usage or configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ellqkz/commands.hpp"
#include "ellqkz/verify.hpp"

namespace {

using namespace ellqkz;

constexpr int kExitUsage = 3;

struct Options {
  double p = 0.35;
  std::string kappa = "0.27";
  std::string phi;
  int n = 3;
  std::uint64_t seed = 20240607;
  double tol = 1e-9;
  double pole_tol = 1e-10;
  double theta_tol = 1e-16;
  int samples = 20;
  int cap = 6;
  std::string out;
  std::string format = "table";
};

RunConfig make_config(const Options& o) {
  RunConfig cfg;
  cfg.p = o.p;
  cfg.kappa = parse_complex(o.kappa);
  if (!o.phi.empty()) cfg.phi = parse_phi(o.phi);
  cfg.n = o.n;
  cfg.seed = o.seed;
  cfg.residual_tol = o.tol;
  cfg.pole_tol = o.pole_tol;
  cfg.theta_tol = o.theta_tol;
  cfg.samples = o.samples;
  cfg.max_sites = o.cap;
  cfg.out = o.out;
  cfg.format = o.format;
  cfg.validate();
  return cfg;
}

void write_out(const std::string& path, const json& payload) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot open output file '" + path + "'");
  f << payload.dump(2) << "\n";
}

void emit(const Options& o, const json& payload) {
  write_out(o.out, payload);
  if (o.out.empty() || o.format == "json") std::cout << payload.dump(2) << "\n";
}

std::vector<cplx> parse_point(const std::string& text) {
  std::vector<cplx> z;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) z.push_back(parse_complex(item));
  return z;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic dynamical R-matrices and qKZ connection matrices for gl(2|1)"};
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--p", o.p, "elliptic nome, 0 < p < 1")->capture_default_str();
  app.add_option("--kappa", o.kappa, "kappa, complex as re+imj")->capture_default_str();
  app.add_option("--phi", o.phi, "dynamical parameters a,b,c (default: drawn from the seed)");
  app.add_option("--n", o.n, "number of tensor legs")->capture_default_str();
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--tol", o.tol, "residual tolerance")->capture_default_str();
  app.add_option("--pole-tol", o.pole_tol, "relative size below which a denominator counts as a pole");
  app.add_option("--theta-tol", o.theta_tol, "theta product truncation tolerance");
  app.add_option("--samples", o.samples, "random draws per sampled check")->capture_default_str();
  app.add_option("--cap", o.cap, "largest admissible n")->capture_default_str();
  app.add_option("--out", o.out, "write the JSON payload to this file");
  app.add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "elliptic, hecke, decomposition, connection, dybe, qkz or all")
      ->check(CLI::IsMember({"elliptic", "hecke", "decomposition", "connection", "dybe", "qkz", "all"}));

  std::string x_text = "0.3+0.1j";
  auto* rmatrix = app.add_subcommand("rmatrix", "export the 9x9 dynamical R-matrix");
  rmatrix->add_option("--x", x_text, "spectral parameter")->capture_default_str();

  app.add_subcommand("decompose", "block decomposition of the tensor space");

  std::string word_text = "e";
  std::string point_text;
  auto* connection = app.add_subcommand("connection", "connection matrices for a word in the s_i");
  connection->add_option("--word", word_text, "word such as \"s1 s2 s1\" or \"e\"")->capture_default_str();
  connection->add_option("--z", point_text, "point z_1,...,z_n (default: drawn from the seed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const RunConfig cfg = make_config(o);
    if (verify->parsed()) {
      Verifier v(cfg);
      const Report report = v.run(suite);
      write_out(o.out, report.to_json());
      if (o.format == "json") {
        std::cout << report.to_json().dump(2) << "\n";
      } else {
        std::cout << report.to_table();
      }
      return report.exit_code();
    }
    Verifier v(cfg);
    const EllipticParams ep = cfg.elliptic();
    if (rmatrix->parsed()) {
      emit(o, cmd_rmatrix(parse_complex(x_text), v.phi(), ep));
      return 0;
    }
    const GenericityReport g = genericity_report(std::min(cfg.n, 4), v.phi(), ep);
    if (!g.ok()) {
      std::cerr << "parameters are not generic: " << g.issues.front().kind << ": " << g.issues.front().detail
                << "\n";
      return 2;
    }
    if (connection->parsed()) {
      const Word word = parse_word(word_text, cfg.n);
      Point z;
      if (point_text.empty()) {
        Sampler s(cfg.seed + 1);
        z = s.centred_point(cfg.n, ep);
      } else {
        z = parse_point(point_text);
      }
      emit(o, cmd_connection(cfg.n, word, z, v.phi(), ep));
      return 0;
    }
    emit(o, cmd_decompose(cfg.n, v.phi(), ep, cfg.max_sites));
    return 0;
  } catch (const PoleError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  }
}

#include "ellqkz/commands.hpp"

#include <sstream>

#include "ellqkz/hecke_spin.hpp"
#include "ellqkz/principal_series.hpp"

namespace ellqkz {

Word parse_word(const std::string& text, int n) {
  Word word;
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    if (tok == "e") continue;
    std::string digits = (tok[0] == 's' || tok[0] == 'S') ? tok.substr(1) : tok;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw PreconditionError("cannot parse word letter '" + tok + "'");
    }
    const int i = std::stoi(digits);
    if (i < 1 || i >= n) throw PreconditionError("letter '" + tok + "' out of range for n = " + std::to_string(n));
    word.push_back(i);
  }
  return word;
}

json cmd_rmatrix(cplx x, const Phi& phi, const EllipticParams& ep) {
  return to_json_value(DynamicalRMatrix::evaluate(x, phi, ep), ep);
}

json cmd_decompose(int n, const Phi& phi, const EllipticParams& ep, int cap) {
  if (n < 2) throw PreconditionError("decompose needs n >= 2");
  const HeckeParams params(ep, n, cap);
  const SpinRep rep(params, phi);
  json blocks = json::array();
  int total = 0;
  for (const auto& r : block_labels(n)) {
    const Block b = make_block(r, phi, ep);
    json basis = json::array();
    double sign_res = 0.0;
    for (int k = 0; k < b.size(); ++k) {
      sign_res = std::max(sign_res, sign_check(rep, r, b.reps[k]));
      basis.push_back({{"alpha", b.alphas[k].to_string()},
                       {"tensor_index", b.tensor_index[k]},
                       {"w_alpha", b.reps[k].images()},
                       {"sign", b.signs[k]}});
    }
    total += b.size();
    blocks.push_back({{"r", {r.r1, r.r2, r.r3}},
                      {"dimension", b.size()},
                      {"spec", to_json_value(b.spec)},
                      {"basis", basis},
                      {"eigen_residual", eigen_check(rep, r)},
                      {"sign_residual", sign_res}});
  }
  return {{"schema_version", kSchemaVersion},
          {"type", "block_decomposition"},
          {"params", params_json(ep)},
          {"phi", complex_list(phi)},
          {"n", n},
          {"block_count", blocks.size()},
          {"total_dimension", total},
          {"blocks", blocks}};
}

json cmd_connection(int n, const Word& word, const Point& z, const Phi& phi, const EllipticParams& ep) {
  if (n < 2) throw PreconditionError("connection needs n >= 2");
  if (static_cast<int>(z.size()) != n) throw PreconditionError("point z must have n entries");
  const Permutation w = word_product(n, word);
  json blocks = json::array();
  for (const auto& r : block_labels(n)) {
    const PrincipalSeriesSpec spec = block_data(r, phi, ep);
    ConnectionMatrix m;
    m.spec = spec;
    m.w = w;
    m.basis = min_coset_reps(spec.I);
    m.entries = m_word_entries(spec, m.basis, word, z, ep);
    m.z = z;
    json entry = to_json_value(m, ep);
    entry["r"] = {r.r1, r.r2, r.r3};
    blocks.push_back(std::move(entry));
  }
  Word letters;
  for (int i : word) letters.push_back(i);
  return {{"schema_version", kSchemaVersion},
          {"type", "connection_report"},
          {"params", params_json(ep)},
          {"phi", complex_list(phi)},
          {"n", n},
          {"word", letters},
          {"w", w.images()},
          {"z", complex_list(z)},
          {"blocks", blocks},
          {"modified_monodromy", to_json_value(modified_monodromy_word(n, phi, word, z, ep))}};
}

}  // namespace ellqkz

#pragma once

// JSON encoding of the library's matrix types. Complex numbers are [re, im]
// pairs; spectral data that carries pi*i/log(p) terms is stored symbolically.
// The layout is described in docs/json-schema.md.

#include <json.hpp>

#include "connection.hpp"
#include "principal_series.hpp"

namespace ellqkz {

inline constexpr const char* kSchemaVersion = "1.0";

using nlohmann::json;

inline json to_json_value(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw PreconditionError("complex value must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline json to_json_value(const ComplexMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_json_value(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j.at(r).size()) != cols) throw PreconditionError("ragged matrix in JSON");
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(j.at(r).at(c));
  }
  return m;
}

template <class Range>
json complex_list(const Range& values) {
  json out = json::array();
  for (const cplx v : values) out.push_back(to_json_value(v));
  return out;
}

inline std::vector<cplx> complex_list_from_json(const json& j) {
  std::vector<cplx> out;
  for (const auto& v : j) out.push_back(complex_from_json(v));
  return out;
}

inline json to_json_value(const SymbolicValue& s) {
  return {{"phi", s.phi}, {"kappa", s.kappa}, {"pi_over_log_p", s.pi}, {"text", s.to_string()}};
}

inline SymbolicValue symbolic_from_json(const json& j) {
  SymbolicValue s;
  s.phi = j.at("phi").get<std::array<int, 3>>();
  s.kappa = j.at("kappa").get<int>();
  s.pi = j.at("pi_over_log_p").get<int>();
  return s;
}

inline json params_json(const EllipticParams& ep) {
  return {{"p", ep.p()}, {"kappa", to_json_value(ep.kappa)}};
}

inline EllipticParams params_from_json(const json& j) {
  EllipticParams ep;
  ep.nome = Nome(j.at("p").get<double>());
  ep.kappa = complex_from_json(j.at("kappa"));
  return ep;
}

inline json to_json_value(const PrincipalSeriesSpec& spec) {
  json eps = json::object();
  for (const auto& [i, e] : spec.eps) eps[std::to_string(i)] = e;
  json out = {{"n", spec.n},
              {"I", std::vector<int>(spec.I.I.begin(), spec.I.I.end())},
              {"eps", eps},
              {"gamma", complex_list(spec.gamma)}};
  if (!spec.gamma_symbolic.empty()) {
    json sym = json::array();
    for (const auto& s : spec.gamma_symbolic) sym.push_back(to_json_value(s));
    out["gamma_symbolic"] = sym;
  }
  return out;
}

inline PrincipalSeriesSpec spec_from_json(const json& j) {
  PrincipalSeriesSpec spec;
  spec.n = j.at("n").get<int>();
  const auto I = j.at("I").get<std::vector<int>>();
  spec.I = ParabolicIndex(spec.n, std::set<int>(I.begin(), I.end()));
  for (const auto& [key, value] : j.at("eps").items()) spec.eps[std::stoi(key)] = value.get<int>();
  spec.gamma = complex_list_from_json(j.at("gamma"));
  if (j.contains("gamma_symbolic")) {
    for (const auto& s : j.at("gamma_symbolic")) spec.gamma_symbolic.push_back(symbolic_from_json(s));
  }
  return spec;
}

inline json to_json_value(const ConnectionMatrix& m, const EllipticParams& ep) {
  json basis = json::array();
  for (const auto& sigma : m.basis) basis.push_back(sigma.images());
  return {{"schema_version", kSchemaVersion},
          {"type", "connection_matrix"},
          {"params", params_json(ep)},
          {"spec", to_json_value(m.spec)},
          {"w", m.w.images()},
          {"basis_order", "lexicographic one-line notation"},
          {"basis", basis},
          {"z", complex_list(m.z)},
          {"entries", to_json_value(m.entries)}};
}

inline ConnectionMatrix connection_from_json(const json& j) {
  if (j.at("schema_version").get<std::string>() != kSchemaVersion) {
    throw PreconditionError("unsupported schema version");
  }
  ConnectionMatrix m;
  m.spec = spec_from_json(j.at("spec"));
  m.w = Permutation(j.at("w").get<std::vector<int>>());
  for (const auto& b : j.at("basis")) m.basis.emplace_back(b.get<std::vector<int>>());
  m.z = complex_list_from_json(j.at("z"));
  m.entries = matrix_from_json(j.at("entries"));
  return m;
}

inline json to_json_value(const DynamicalRMatrix& r, const EllipticParams& ep) {
  return {{"schema_version", kSchemaVersion},
          {"type", "dynamical_r_matrix"},
          {"params", params_json(ep)},
          {"basis_order", "v1v1, v1v2, v1v3, v2v1, v2v2, v2v3, v3v1, v3v2, v3v3"},
          {"x", to_json_value(r.x)},
          {"phi", complex_list(r.phi)},
          {"entries", to_json_value(r.entries)}};
}

inline DynamicalRMatrix dynamical_r_from_json(const json& j) {
  if (j.at("schema_version").get<std::string>() != kSchemaVersion) {
    throw PreconditionError("unsupported schema version");
  }
  DynamicalRMatrix r;
  r.x = complex_from_json(j.at("x"));
  const auto phi = complex_list_from_json(j.at("phi"));
  if (phi.size() != 3) throw PreconditionError("phi must have three entries");
  r.phi = {phi[0], phi[1], phi[2]};
  r.entries = matrix_from_json(j.at("entries"));
  return r;
}

}  // namespace ellqkz

#pragma once

// JSON payloads for the `rmatrix`, `decompose` and `connection` subcommands.

#include <string>

#include "serialize.hpp"

namespace ellqkz {

/// Parses "e", "s1 s2 s1" or "1 2 1" into a word in s_1..s_{n-1}.
Word parse_word(const std::string& text, int n);

json cmd_rmatrix(cplx x, const Phi& phi, const EllipticParams& ep);

/// Blocks of V^{(x)n} with their spectral data, basis map and residuals.
json cmd_decompose(int n, const Phi& phi, const EllipticParams& ep, int cap = 6);

/// Block connection matrices for `word` and the assembled tensor-basis operator.
json cmd_connection(int n, const Word& word, const Point& z, const Phi& phi, const EllipticParams& ep);

}  // namespace ellqkz

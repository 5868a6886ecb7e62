#pragma once

#include <vector>

#include "cpx/jet.hpp"
#include "cpx/tensor.hpp"

namespace cpx {

/// Truncate a jet to a lower order (drops higher coefficients).
Jet truncated(const Jet& j, int order);
TensorJet truncated(const TensorJet& t, int order);

/// Solve A x = b over the jet ring by Gaussian elimination with pivoting on
/// constant terms. A is row-major k x k, b has k entries. Requires the
/// constant-term matrix to be invertible.
std::vector<Jet> jet_linsolve(std::vector<Jet> A, std::vector<Jet> b, int k);

/// Inverse of a valence-2 jet tensor (as a matrix in its two indices).
TensorJet jet_matrix_inverse(const TensorJet& g);

/// Polynomial substitution: evaluate f at the given replacement jets. Exact
/// when the replacements have vanishing constant term; otherwise f is
/// treated as an exact polynomial (Taylor-shift usage).
Jet substitute(const Jet& f, const std::vector<Jet>& sub);

}  // namespace cpx

#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "cpx/tensor.hpp"

namespace cpx {

/// Symplectic form, compatible metric and derived raised/mixed versions on
/// R^{2n}. Index conventions used throughout the toolkit:
///   J^{ac} J_{bc} = delta^a_b   (raising convention for the inverse form)
///   g_{ab} = J_a{}^c J_{bc},  J_a{}^b = g^{bc} J_{ac},  J_{ab} = J_a{}^c g_{cb}
struct SymplecticData {
    int n = 0;  // dim = 2n
    DenseTensor J_lower, J_upper, g_lower, g_upper, J_mix;

    int dim() const { return 2 * n; }

    /// Darboux block form: J = [[0, I], [-I, 0]], g = identity.
    static SymplecticData standard(int n);

    /// Build the raised tensors from a compatible (g, J) pair.
    static SymplecticData from_gJ(const DenseTensor& g, const DenseTensor& J);

    /// Residuals of the structure relations above (0 for consistent data).
    double consistency_residual() const;
};

/// Contraction of slots (i, j) with the inverse symplectic form.
DenseTensor j_trace(const DenseTensor& t, int i, int j, const SymplecticData& S);

/// n vectors spanning a Lagrangian subspace of R^{2n} (columns).
struct LagrangianFrame {
    Eigen::MatrixXd basis;  // 2n x n

    int n() const { return static_cast<int>(basis.cols()); }
    /// max |J(e_i, e_j)| over the frame; 0 for a genuine Lagrangian frame.
    double isotropy_residual(const SymplecticData& S) const;
};

/// The standard Lagrangian frame span{e_1..e_n}.
LagrangianFrame standard_lagrangian(int n);

/// Frame obtained by pushing the standard one with a seeded random unitary
/// (realised as a symplectic-orthogonal matrix on R^{2n}). Deterministic
/// per seed.
LagrangianFrame random_lagrangian(int n, std::uint64_t seed);

/// Components of psi evaluated on the frame vectors: an n-dimensional
/// valence-k tensor.
DenseTensor restrict_to_lagrangian(const DenseTensor& psi, const LagrangianFrame& F);

/// Max absolute component of restrict_to_lagrangian over `trials` sampled
/// frames.
double vanishes_on_all_lagrangians(const DenseTensor& psi, int trials, std::uint64_t seed,
                                   const SymplecticData& S);

}  // namespace cpx

#pragma once

#include "cpx/symplectic.hpp"
#include "cpx/tensor.hpp"

namespace cpx {

/// Decomposition of a Riemann-symmetric valence-4 tensor into a totally
/// J-trace-free part X, a skew trace-free 2-form part Psi and a scalar part:
///   R = X + Psi_ac J_bd - Psi_bc J_ad - Psi_ad J_bc + Psi_bd J_ac
///         + 2 Psi_ab J_cd + 2 Psi_cd J_ab
///         + L (J_ac J_bd - J_bc J_ad + 2 J_ab J_cd).
struct RiemannDecomposition {
    DenseTensor X;    // Riemann symmetries, all J-traces zero
    DenseTensor Psi;  // skew, J-trace free
    double L = 0.0;
};

DenseTensor psi_insertion_pattern(const DenseTensor& Psi, const SymplecticData& S);
DenseTensor scalar_insertion_pattern(const SymplecticData& S);
DenseTensor riemann_from_parts(const RiemannDecomposition& d, const SymplecticData& S);

RiemannDecomposition decompose_symplectic_riemann(const DenseTensor& R, const SymplecticData& S);

/// Unique splitting of a pair-skew valence-4 tensor T (T = T_[ab][cd], with
/// T_[abc]d lying in the J-insertion span) as
///   T = X + J_c[a rho_b]d - J_d[a rho_b]c - J_cd rho_[ab] + J_ab tau_cd
/// with X pair-skew, X_[abc]d = 0 and J^{ab}-trace free.
struct PairSplit {
    DenseTensor rho;  // valence 2, no symmetry
    DenseTensor tau;  // valence 2, skew
    DenseTensor X;    // valence 4
    double precondition_residual = 0.0;  // distance of T_[abc]d from the insertion span
    double residual = 0.0;               // reconstruction residual
};

DenseTensor rho_insertion_pattern(const DenseTensor& rho, const SymplecticData& S);
DenseTensor tau_insertion_pattern(const DenseTensor& tau, const SymplecticData& S);

/// Solve the splitting at the standard Darboux frame (dim = 2n components).
PairSplit split_insertions(const DenseTensor& T, const SymplecticData& S);

/// Dimensions of the four spaces in the splitting bookkeeping:
///  A  = arbitrary rho_bc,
///  B  = pair-skew tensors modulo J_ab tau_cd,
///  C  = tensors S_abcd = S_[abc]d modulo J_[ab psi_c]d,
///  H  = pair-skew X with X_[abc]d = 0 and J^{ab} X_abcd = 0.
/// Exactness of the splitting is the integer identity B = A + H + C.
struct SplitDims {
    long A = 0, B = 0, C = 0, H = 0;
};
SplitDims split_dimensions(int n);

/// Smallest singular value of the splitting system (uniqueness certificate;
/// a strictly positive value means the homogeneous system has nullity 0).
double split_uniqueness_sigma_min(int n);

}  // namespace cpx

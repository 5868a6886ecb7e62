#pragma once

#include <Eigen/Dense>

#include "cpx/fields.hpp"
#include "cpx/geodesic.hpp"
#include "cpx/pair_split.hpp"

namespace cpx {

/// Jet-valued section of the two-slot bundle Lambda^0 + Lambda^1 on the real
/// model, with `nforms` passenger form indices in front of the slot indices.
struct TracT {
    int nforms = 0;
    TensorJet s;  // valence nforms
    TensorJet m;  // valence nforms + 1
};

/// Three-slot bundle Lambda^0 + Lambda^1 + Lambda^0 on the complex model.
struct TracU {
    int nforms = 0;
    TensorJet s, m, r;  // m carries the extra slot index (last)
};

/// Induced bundle with slots Lambda^1 + Lambda^2 + Lambda^1 (the trace-free
/// part of the second skew power of the three-slot bundle).
struct TracW {
    int nforms = 0;
    TensorJet s;  // valence nforms + 1
    TensorJet m;  // valence nforms + 2, skew in the last two
    TensorJet r;  // valence nforms + 1
};

TracT coupled_deriv(const TracT& x, const GeomJets& geom);
TracU coupled_deriv(const TracU& x, const GeomJets& geom);
TracW coupled_deriv(const TracW& x, const GeomJets& geom);

/// The parallel endomorphism with square -Id on the three-slot bundle and
/// its induced action on the Lambda^2-type bundle (slot-wise, passenger
/// indices untouched).
TracU phi_action(const TracU& x, const GeomJets& geom);
TracW phi_action(const TracW& x, const GeomJets& geom);

/// Eigen-projections of the induced bundle: the square of the induced
/// endomorphism has eigenvalues 0 and -4; plus = kernel part.
TracW splitting_projector(const TracW& x, const GeomJets& geom, bool plus);

// --- pointwise residual checks on seeded random sections ---

double flatness_T_residual(const ChartPoint& p, std::uint64_t seed);
double curvature_U_residual(const ChartPoint& p, std::uint64_t seed);
double curvature_W_residual(const ChartPoint& p, std::uint64_t seed);
double phi_parallel_residual(const ChartPoint& p, std::uint64_t seed);
double skewform_compat_residual(const ChartPoint& p, std::uint64_t seed);
double splitting_commutes_residual(const ChartPoint& p, std::uint64_t seed);

// --- fiber algebra at the standard Darboux frame ---

Eigen::MatrixXd phi_fiber_matrix_U(int n);  // (2n+2) x (2n+2)
Eigen::MatrixXd phi_fiber_matrix_W(int n);  // (4n + n(2n-1)) square
/// Exact annihilation residual of x(x + 4 Id) on the induced square.
double phi_W_spectrum_residual(int n);
/// Gram matrix of the pairing <Phi ., .>; symmetric; signature reported as
/// (positive, negative) counts.
Eigen::MatrixXd phi_pairing_matrix_U(int n);
std::pair<int, int> signature_of(const Eigen::MatrixXd& sym);

// --- parallel transport on the two-slot bundle (real model) ---

/// Transport the full fiber frame along gamma over [0, t_end]; returns the
/// (n+1) x (n+1) matrix in the chart/slot basis at the returning point.
Eigen::MatrixXd transport_T(const Geodesic& g, double t_end, int steps);

/// max |transport(2 pi) - Id| with step halving until two resolutions agree.
double transport_T_holonomy_defect(const Geodesic& g);

/// max |transport(pi) + Id|: a single traversal of the closed geodesic
/// reverses the fiber (the nontrivial deck class acts by -1).
double transport_T_single_loop_defect(const Geodesic& g);

// --- the completion operator on symmetric valence-2 fields ---

struct CompletionResult {
    DenseTensor rho, tau, X;
    double precondition_residual = 0.0;
    double residual = 0.0;
};

/// Pointwise solve: assemble the curvature-corrected derivative tensor of
/// omega and split it into insertions; rho is the completion slot.
CompletionResult rho_completion(const TensorField& omega, const ChartPoint& p);

struct StructureRows {
    DenseTensor row1;       // vanishes identically
    DenseTensor row2;       // equals X + J tau
    DenseTensor row2_X;     // row2 with its fitted J (x) tau part removed
    double split_consistency = 0.0;  // |row2 - X_split - J tau_split|
    double x_formula_residual = 0.0; // |X_split - 2 perp pi (DD omega + g omega)|
};

/// First two rows of the coupled derivative of (omega, mu(omega), rho(omega)).
StructureRows structure_rows(const TensorField& omega, const ChartPoint& p);

/// Third-row shape check (meaningful for n >= 3): residual of the row
/// against the J-multiple form, and of the algebraic constraint that forces
/// it. For n = 2 the constraint is vacuous and the check is skipped upstream.
struct ThirdRowCheck {
    double theta_form_residual = 0.0;  // | row3 - J (x) theta |
    double constraint_residual = 0.0;  // insertion-span defect of the bracket
    double row3_scale = 0.0;
};
ThirdRowCheck third_row_check(const TensorField& omega, const ChartPoint& p);

/// mu slot of the canonical lift: mu_bcd = D_c omega_bd - D_d omega_bc.
TensorJet mu_slot_jets(const TensorField& omega, const ChartPoint& p, int order);

}  // namespace cpx

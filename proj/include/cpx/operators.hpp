#pragma once

#include "cpx/fields.hpp"
#include "cpx/symmetry.hpp"

namespace cpx {

/// The factorised second-order ladder applied to a symmetric valence-l
/// field: for even l the product (D^2 + (l-1)^2 g)(D^2 + (l-3)^2 g) ... (D^2 + g),
/// for odd l the same chain ending in a single derivative, followed by the
/// pair-skewing map. The result is the pair-presentation value at p.
/// On the round real model this operator annihilates exactly the symmetrised
/// derivatives; on the complex model it does so after the trace-free
/// projection below.
DenseTensor nabla_ell_value(const TensorField& omega, const ChartPoint& p);

/// nabla_ell followed by the pointwise J-trace-free projection (complex
/// model only).
DenseTensor nabla_ell_perp_value(const TensorField& omega, const ChartPoint& p);

/// Independent second-order route for valence 2 (no ladder, no pair map):
///   O_abcd = D_[a D_|c| w_b]d - D_[a D_|d| w_b]c + g_c[a w_b]d - g_d[a w_b]c.
/// Equals twice the l = 2 ladder value; the comparison is a two-route test.
DenseTensor nabla2_raw_value(const TensorField& omega, const ChartPoint& p);

/// Elementary symmetric functions of the squared ladder shifts, as exact
/// integers: expanding the factorised product into normal-ordered form, the
/// g-trace coefficient of g D^{l-2} is e_1 and of g^2 D^{l-4} is e_2.
long long ladder_trace_coefficient_e1(int ell);
long long ladder_trace_coefficient_e2(int ell);

/// Exterior derivative of a k-form field (standard normalisation).
TensorField exterior_deriv(const TensorField& omega);

/// d followed by removal of the J-trace: 1-forms to trace-free 2-forms.
TensorField d_perp(const TensorField& omega);

/// The second-order operator on trace-free 2-forms of the complex projective
/// plane: solve mu ^ J = d xi for the unique 1-form mu, return d mu.
TensorField d_perp2(const TensorField& xi);

/// Residual of mu ^ J = d xi for the mu recovered inside d_perp2 at p.
double d_perp2_defect(const TensorField& xi, const ChartPoint& p);

}  // namespace cpx

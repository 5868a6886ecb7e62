#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "cpx/jet_linalg.hpp"
#include "cpx/symplectic.hpp"
#include "cpx/tensor.hpp"

namespace cpx {

enum class Space { CP, RP };

/// A point of CP_n or RP_n in one of the n+1 standard affine charts.
/// CP coordinates pack as (x_1..x_n, y_1..y_n) with w_j = x_j + i y_j, so the
/// complex structure takes the Darboux block form at chart origins.
struct ChartPoint {
    Space space = Space::CP;
    int n = 2;
    int chart = 0;
    std::vector<double> x;

    int mdim() const { return space == Space::CP ? 2 * n : n; }
};

/// Metric data expanded at the point: the metric, its inverse, the complex
/// structure tensors (CP only), and Christoffel symbols, all jet-valued in
/// the chart offsets. g carries jets of `order`; gamma of `order - 1`.
struct GeomJets {
    ChartPoint p;
    int order = 0;
    TensorJet g, g_up;
    TensorJet J_low, J_up, J_mix;  // empty tensors on RP
    TensorJet gamma;               // Gamma^e_{ab} stored as (a, b, e)

    /// R_abcd with jets of order-2, in the convention
    /// (nabla_a nabla_b - nabla_b nabla_a) mu_c = R_abc{}^d mu_d.
    TensorJet riemann_lower() const;
};

GeomJets metric_jets(const ChartPoint& p, int order);

/// Shared cache: repeated evaluation of fields and operators at a point
/// re-uses the same expansion.
std::shared_ptr<const GeomJets> geom_at(const ChartPoint& p, int order);

/// Symplectic data (values) at a CP point.
SymplecticData symplectic_at(const GeomJets& geom);

/// Max componentwise deviation of the curvature computed from Christoffel
/// jets against the constant-coefficient expression in g and J.
double verify_curvature_formula(const ChartPoint& p);

/// Riemann tensor values at the point.
DenseTensor riemann_at(const ChartPoint& p);

// --- charts and lifts ---

/// Unit homogeneous representative (real for RP).
Eigen::VectorXcd homogeneous(const ChartPoint& p);

/// Chart with the largest homogeneous coordinate at z.
int best_chart(const Eigen::VectorXcd& z);

ChartPoint from_homogeneous(Space space, int n, const Eigen::VectorXcd& z);

/// Geodesic distance for the curvature normalisation used here
/// (closed geodesics of length pi): arccos |<z1, z2>|.
double distance(const ChartPoint& a, const ChartPoint& b);

/// The same point presented in another chart.
ChartPoint to_chart(const ChartPoint& p, int new_chart);

/// Jets of the new chart coordinates as functions of offsets in the old
/// chart (for transition Jacobians and transport tests).
std::vector<Jet> transition_jets(const ChartPoint& p, int new_chart, int order);

/// Homogeneous lift with jet entries (linear, unnormalised).
std::vector<CJet> homogeneous_jets(const ChartPoint& p, int order);

/// Chart coordinates (packed real jets) of a homogeneous jet vector; writes
/// the chosen chart to *out_chart (or uses *forced_chart if non-null).
std::vector<Jet> chart_jets_from_homogeneous(const std::vector<CJet>& z, Space space, int n,
                                             int* out_chart, const int* forced_chart = nullptr);

/// g-orthonormal frame at the point; for CP it is adapted so that J takes
/// the standard Darboux block form (columns are the frame vectors).
Eigen::MatrixXd frame_at(const GeomJets& geom);

/// Covariant derivative of a jet-valued covariant tensor; the derivative
/// index is prepended and the jet order drops by one.
TensorJet cov_deriv(const TensorJet& t, const GeomJets& geom);

}  // namespace cpx

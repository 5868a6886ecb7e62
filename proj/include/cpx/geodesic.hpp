#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "cpx/geometry.hpp"

namespace cpx {

/// A closed geodesic presented by great-circle data: gamma(t) = [cos t z + sin t w]
/// with |z| = |w| = 1 and <z, w> = 0 (Hermitian orthogonality encodes the
/// horizontal lift condition on CP_n). As projective points the curve has
/// period pi. RP geodesics carry real data in the same containers.
struct Geodesic {
    Space space = Space::CP;
    int n = 2;
    Eigen::VectorXcd z, w;
};

/// Max violation of the orthonormality/horizontality invariants.
double geodesic_invariant_residual(const Geodesic& g);

/// Point and chart-velocity at parameter t (chart chosen automatically).
std::pair<ChartPoint, std::vector<double>> geodesic_eval(const Geodesic& g, double t);

/// Unit-speed geodesic with gamma(0) = p, gamma'(0) = v (chart components).
Geodesic geodesic_through(const ChartPoint& p, const std::vector<double>& v);

/// Deterministic sample of closed geodesics (normalised Gaussian data).
std::vector<Geodesic> sample_geodesics(Space space, int n, int count, std::uint64_t seed);

/// Push a geodesic with an ambient unitary (isometry action).
Geodesic transform_geodesic(const Eigen::MatrixXcd& U, const Geodesic& g);

/// Independent oracle: integrate the chart geodesic equation from the
/// Christoffel symbols with classical RK4 and return the largest distance
/// to the closed-form curve over `samples` times in [0, t_end].
double geodesic_ode_deviation(const Geodesic& g, double t_end, int steps, int samples);

}  // namespace cpx

#pragma once

#include <cstdint>
#include <vector>

#include "cpx/fields.hpp"
#include "cpx/geodesic.hpp"

#include "json.hpp"

namespace cpx {

/// One row of a transform survey, serialisable as a JSON line.
struct EnergyReport {
    std::uint64_t seed = 0;
    int n = 0;
    int ell = 0;
    int N = 0;
    double energy = 0.0;
    double err_est = 0.0;

    nlohmann::json to_json() const;
};

/// Integral of the field against the unit tangent powers along the closed
/// geodesic: trapezoidal rule with N nodes over one period (spectrally
/// accurate for periodic analytic integrands). Verifies closure before
/// integrating.
double energy(const TensorField& omega, const Geodesic& g, int N);

/// Same integrand over [t0, t1] by composite Gauss-Legendre panels (the
/// closed-loop trapezoid argument does not apply to partial segments).
double energy_segment(const TensorField& omega, const Geodesic& g, double t0, double t1);

/// [X^b ... X^c phi_{b...c}] difference between the segment endpoints.
double endpoint_difference(const TensorField& phi, const Geodesic& g, double t0, double t1);

/// Independent arc-length oracle: integrate |gamma'|_g.
double arc_length(const Geodesic& g, int N);

struct SurveyResult {
    double max_abs_energy = 0.0;
    std::vector<EnergyReport> rows;
};

SurveyResult zero_energy_survey(const TensorField& omega, const std::vector<Geodesic>& gs,
                                int N, std::uint64_t seed_tag);

struct WitnessResult {
    int index = -1;
    double energy = 0.0;
    bool exceeds = false;
};

/// Geodesic of largest |energy| over the sample; honest search, no claim of
/// optimality.
WitnessResult nonpotential_witness(const TensorField& omega, const std::vector<Geodesic>& gs,
                                   int N, double threshold);

}  // namespace cpx

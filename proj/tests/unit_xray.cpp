#include <cmath>

#include "cpx/operators.hpp"
#include "cpx/rng.hpp"
#include "cpx/xray.hpp"
#include "doctest.h"

using namespace cpx;

TEST_CASE("energies of potentials vanish on closed geodesics") {
    for (int ell : {1, 2, 3}) {
        auto omega = make_field(Space::CP, 2, "potential", ell, 900 + ell).field;
        auto gs = sample_geodesics(Space::CP, 2, 4, 17);
        for (const auto& g : gs) CHECK(std::abs(energy(omega, g, 512)) < 1e-10);
    }
}

TEST_CASE("the metric integrates to the geodesic length") {
    auto g2 = metric_field(Space::CP, 2);
    auto gs = sample_geodesics(Space::CP, 2, 6, 5);
    for (const auto& g : gs) {
        CHECK(energy(g2, g, 512) == doctest::Approx(M_PI).epsilon(1e-11));
        CHECK(arc_length(g, 512) == doctest::Approx(M_PI).epsilon(1e-11));
    }
}

TEST_CASE("segment integral equals the endpoint difference") {
    Rng rng(71);
    for (int ell : {1, 2}) {
        auto phi = make_field(Space::CP, 2, "random-trig", ell - 1, 300 + ell).field;
        auto omega = sym_cov_deriv(phi);
        auto gs = sample_geodesics(Space::CP, 2, 3, 23);
        for (const auto& g : gs) {
            double t0 = rng.uniform(0.0, 1.0), t1 = t0 + rng.uniform(0.2, 2.0);
            double lhs = energy_segment(omega, g, t0, t1);
            double rhs = endpoint_difference(phi, g, t0, t1);
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    }
}

TEST_CASE("transform is linear and isometry invariant") {
    Rng rng(73);
    auto w1 = make_field(Space::CP, 2, "random-trig", 2, 31).field;
    auto w2 = make_field(Space::CP, 2, "metric-multiple", 2, 32).field;
    auto combo = sum_fields({scale_field(w1, 1.7), scale_field(w2, -0.4)});
    auto gs = sample_geodesics(Space::CP, 2, 5, 41);
    for (const auto& g : gs) {
        double e = energy(combo, g, 256);
        double parts = 1.7 * energy(w1, g, 256) - 0.4 * energy(w2, g, 256);
        CHECK(e == doctest::Approx(parts).epsilon(1e-12));
    }

    Eigen::MatrixXcd U = haar_su(3, 4711);
    auto pulled = isometry_pullback(U, w1);
    for (const auto& g : gs) {
        Geodesic moved = transform_geodesic(U.adjoint(), g);
        CHECK(energy(pulled, moved, 256) == doctest::Approx(energy(w1, g, 256)).epsilon(1e-9));
    }
}

TEST_CASE("quadrature converges by N = 512") {
    auto omega = make_field(Space::CP, 2, "random-trig", 2, 55).field;
    auto gs = sample_geodesics(Space::CP, 2, 3, 99);
    for (const auto& g : gs) {
        double a = energy(omega, g, 512), b = energy(omega, g, 1024);
        CHECK(std::abs(a - b) < 1e-12);
    }
}

TEST_CASE("witness search and perturbed potentials") {
    auto gs = sample_geodesics(Space::CP, 2, 20, 7);
    auto g2 = metric_field(Space::CP, 2);
    WitnessResult w = nonpotential_witness(g2, gs, 256, 0.1);
    CHECK(w.exceeds);
    CHECK(w.energy == doctest::Approx(M_PI).epsilon(1e-10));

    // potential + eps * g: every energy is eps * pi
    auto pot = make_field(Space::CP, 2, "potential", 2, 77).field;
    const double eps = 1e-3;
    auto pert = sum_fields({pot, scale_field(g2, eps)});
    WitnessResult w2 = nonpotential_witness(pert, gs, 512, 0.5 * eps * M_PI);
    CHECK(w2.exceeds);
    CHECK(w2.energy == doctest::Approx(eps * M_PI).epsilon(1e-6));

    SurveyResult sur = zero_energy_survey(pot, gs, 512, 77);
    CHECK(sur.max_abs_energy < 1e-9);
    for (const auto& row : sur.rows) CHECK(row.err_est < 1e-10);
}

#include <cmath>

#include "cpx/jet.hpp"
#include "cpx/rng.hpp"
#include "doctest.h"

using namespace cpx;

TEST_CASE("jet arithmetic against closed forms") {
    // f(x, y) = sin(x) * exp(y) + x^2 y at (0.3, -0.2)
    const double x0 = 0.3, y0 = -0.2;
    Jet x = Jet::variable(2, 5, 0, x0);
    Jet y = Jet::variable(2, 5, 1, y0);
    Jet f = x.sin() * y.exp() + x * x * y;

    CHECK(f.value() == doctest::Approx(std::sin(x0) * std::exp(y0) + x0 * x0 * y0).epsilon(1e-14));

    // first derivatives
    Jet fx = f.deriv(0), fy = f.deriv(1);
    CHECK(fx.value() == doctest::Approx(std::cos(x0) * std::exp(y0) + 2 * x0 * y0).epsilon(1e-13));
    CHECK(fy.value() == doctest::Approx(std::sin(x0) * std::exp(y0) + x0 * x0).epsilon(1e-13));

    // mixed second derivative
    CHECK(fx.deriv(1).value() == doctest::Approx(std::cos(x0) * std::exp(y0) + 2 * x0).epsilon(1e-12));
}

TEST_CASE("jet reciprocal, log and sqrt") {
    Jet x = Jet::variable(1, 6, 0, 0.7);
    Jet r = (1.0 + x * x).reciprocal();
    CHECK(r.value() == doctest::Approx(1.0 / 1.49).epsilon(1e-14));
    // d/dx 1/(1+x^2) = -2x/(1+x^2)^2
    CHECK(r.deriv(0).value() == doctest::Approx(-1.4 / (1.49 * 1.49)).epsilon(1e-13));

    Jet lg = (1.0 + x * x).log();
    CHECK(lg.deriv(0).value() == doctest::Approx(1.4 / 1.49).epsilon(1e-13));

    Jet sq = (1.0 + x * x).sqrt();
    CHECK(sq.value() == doctest::Approx(std::sqrt(1.49)).epsilon(1e-14));
    CHECK((sq * sq - (1.0 + x * x)).max_abs_coeff() < 1e-13);
}

TEST_CASE("taylor shift consistency") {
    // jets at nearby points agree after polynomial evaluation
    Rng rng(77);
    for (int rep = 0; rep < 5; ++rep) {
        double x0 = rng.uniform(-0.5, 0.5), y0 = rng.uniform(-0.5, 0.5);
        auto make = [&](double a, double b) {
            Jet x = Jet::variable(2, 8, 0, a);
            Jet y = Jet::variable(2, 8, 1, b);
            return (x * y + 0.5 * x).sin() * (1.0 + x * x + y * y).reciprocal();
        };
        Jet f = make(x0, y0);
        double dx = 1e-2, dy = -2e-2;
        Jet g = make(x0 + dx, y0 + dy);
        CHECK(f.eval({dx, dy}) == doctest::Approx(g.value()).epsilon(1e-12));
    }
}

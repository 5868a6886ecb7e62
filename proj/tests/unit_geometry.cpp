#include <cmath>

#include "cpx/embedding.hpp"
#include "cpx/geodesic.hpp"
#include "cpx/geometry.hpp"
#include "cpx/rng.hpp"
#include "cpx/symmetry.hpp"
#include "doctest.h"

using namespace cpx;

namespace {

ChartPoint random_point(Space space, int n, Rng& rng, double scale = 0.6) {
    ChartPoint p;
    p.space = space;
    p.n = n;
    p.chart = 0;
    p.x.assign(space == Space::CP ? 2 * n : n, 0.0);
    for (auto& c : p.x) c = rng.uniform(-scale, scale);
    return p;
}

}  // namespace

TEST_CASE("fubini-study metric at the chart origin") {
    ChartPoint o{Space::CP, 2, 0, std::vector<double>(4, 0.0)};
    GeomJets G = metric_jets(o, 2);
    DenseTensor g = values(G.g), J = values(G.J_low);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            CHECK(g.at({a, b}) == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-14));
            double expect = 0.0;
            if (a < 2 && b == a + 2) expect = 1.0;
            if (a >= 2 && b == a - 2) expect = -1.0;
            CHECK(J.at({a, b}) == doctest::Approx(expect).epsilon(1e-14));
        }
    // Christoffels vanish at the origin
    CHECK(max_abs(values(G.gamma)) < 1e-14);
}

TEST_CASE("structure table relations at random points") {
    Rng rng(5);
    for (int n : {2, 3}) {
        for (int rep = 0; rep < 4; ++rep) {
            ChartPoint p = random_point(Space::CP, n, rng);
            GeomJets G = metric_jets(p, 1);
            SymplecticData S = symplectic_at(G);
            // g_ab = J_a{}^c J_bc and the raising conventions
            CHECK(S.consistency_residual() < 1e-12);
            // the Kahler form is parallel: nabla_a J_bc = dJ - Gamma terms
            const int m = 2 * n;
            DenseTensor gam = values(G.gamma);
            double worst = 0.0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    for (int c = 0; c < m; ++c) {
                        double v = G.J_low.at({b, c}).deriv(a).value();
                        for (int e = 0; e < m; ++e)
                            v -= gam.at({a, b, e}) * S.J_lower.data()[static_cast<std::size_t>(e) * m + c] +
                                 gam.at({a, c, e}) * S.J_lower.data()[static_cast<std::size_t>(b) * m + e];
                        worst = std::max(worst, std::abs(v));
                    }
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("curvature reproduces the constant-coefficient expression") {
    Rng rng(42);
    for (int n : {2, 3}) {
        for (int rep = 0; rep < 3; ++rep) {
            CHECK(verify_curvature_formula(random_point(Space::CP, n, rng)) < 1e-9);
            CHECK(verify_curvature_formula(random_point(Space::RP, n, rng)) < 1e-9);
        }
    }
    // algebraic symmetries hold as computed
    ChartPoint p = random_point(Space::CP, 2, rng);
    DenseTensor R = riemann_at(p);
    CHECK(skew_pair_symmetry_residual(R, 2) < 1e-9);
}

TEST_CASE("chart transitions transport the metric consistently") {
    Rng rng(9);
    for (Space sp : {Space::CP, Space::RP}) {
        ChartPoint p = random_point(sp, 2, rng, 0.8);
        const int m = p.mdim();
        ChartPoint q = to_chart(p, 1);
        CHECK(distance(p, q) < 1e-12);

        std::vector<Jet> tj = transition_jets(p, 1, 1);
        Eigen::MatrixXd Jac(m, m);
        for (int i = 0; i < m; ++i)
            for (int a = 0; a < m; ++a) Jac(i, a) = tj[i].coeffs()[1 + a];

        DenseTensor gp = values(metric_jets(p, 0).g);
        DenseTensor gq = values(metric_jets(q, 0).g);
        // g_p = Jac^T g_q Jac
        double worst = 0.0;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                double v = 0.0;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) v += Jac(i, a) * gq.at({i, j}) * Jac(j, b);
                worst = std::max(worst, std::abs(v - gp.at({a, b})));
            }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("geodesics: invariants, unit speed, closure, reversal") {
    Rng rng(31);
    for (Space sp : {Space::CP, Space::RP}) {
        for (const auto& g : sample_geodesics(sp, 2, 5, 99)) {
            CHECK(geodesic_invariant_residual(g) < 1e-12);
            // closure at t = pi
            auto [p0, v0] = geodesic_eval(g, 0.0);
            auto [p1, v1] = geodesic_eval(g, M_PI);
            CHECK(distance(p0, p1) < 1e-10);
            // unit speed at sample times
            double worst = 0.0;
            for (int k = 0; k < 64; ++k) {
                auto [p, v] = geodesic_eval(g, M_PI * k / 64.0);
                DenseTensor gm = values(metric_jets(p, 0).g);
                double s = 0.0;
                const int m = p.mdim();
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b) s += gm.at({a, b}) * v[a] * v[b];
                worst = std::max(worst, std::abs(std::sqrt(s) - 1.0));
            }
            CHECK(worst < 1e-10);
        }
    }

    // geodesic_through reproduces (p, v); reversal traces the same set
    ChartPoint p = random_point(Space::CP, 2, rng);
    DenseTensor gm = values(metric_jets(p, 0).g);
    std::vector<double> v(4);
    for (auto& c : v) c = rng.normal();
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += gm.at({a, b}) * v[a] * v[b];
    for (auto& c : v) c /= std::sqrt(s);
    Geodesic g = geodesic_through(p, v);
    CHECK(geodesic_invariant_residual(g) < 1e-12);
    auto [q, u] = geodesic_eval(g, 0.0);
    CHECK(distance(p, q) < 1e-12);
    for (int a = 0; a < 4; ++a) CHECK(u[a] == doctest::Approx(v[a]).epsilon(1e-9));

    std::vector<double> vneg = v;
    for (auto& c : vneg) c = -c;
    Geodesic grev = geodesic_through(p, vneg);
    for (int k = 1; k < 8; ++k) {
        double t = 0.37 * k;
        auto [a1, u1] = geodesic_eval(g, t);
        auto [a2, u2] = geodesic_eval(grev, -t);
        CHECK(distance(a1, a2) < 1e-10);
    }

    // real initial data stays inside the standard real locus
    Geodesic greal = sample_geodesics(Space::RP, 2, 1, 7)[0];
    Geodesic gc = greal;
    gc.space = Space::CP;
    for (int k = 0; k < 10; ++k) {
        auto [pt, vt] = geodesic_eval(gc, 0.31 * k);
        for (int i = 0; i < pt.n; ++i) CHECK(std::abs(pt.x[pt.n + i]) < 1e-12);
    }
}

TEST_CASE("geodesic ODE oracle matches the closed form") {
    for (Space sp : {Space::CP, Space::RP}) {
        Geodesic g = sample_geodesics(sp, 2, 1, 4242)[0];
        CHECK(geodesic_ode_deviation(g, M_PI, 3000, 10) < 1e-8);
    }
}

TEST_CASE("model embeddings") {
    Rng rng(17);
    ModelEmbedding e = random_embedding(2, 55);
    CHECK(embedding_unitarity_residual(e) < 1e-12);

    // the Kahler form pulls back to zero; the metric pulls back to the
    // round metric (its curvature is the plain g-wedge expression)
    for (int rep = 0; rep < 5; ++rep) {
        ChartPoint rp = random_point(Space::RP, 2, rng, 0.7);
        ChartPoint im = embed_point(e, rp);
        GeomJets G = metric_jets(im, 0);
        CHECK(max_abs(pullback_at(e, rp, values(G.J_low))) < 1e-12);

        DenseTensor gpull = pullback_at(e, rp, values(G.g));
        // compare against the round metric under the matching identification:
        // both live at rp as valence-2 tensors; the embedding is isometric
        DenseTensor ground = values(metric_jets(rp, 0).g);
        CHECK(max_abs(gpull - ground) < 1e-9);

        // tangent image is Lagrangian: J(d iota X, d iota Y) = 0 checked
        // via the pullback above; curvature pulls back to the real form
        DenseTensor Rpull = pullback_at(e, rp, riemann_at(im));
        DenseTensor F(rp.n, 4, 0.0);
        F.for_each([&](const std::vector<int>& i, std::size_t fl) {
            F[fl] = ground.at({i[0], i[2]}) * ground.at({i[1], i[3]}) -
                    ground.at({i[1], i[2]}) * ground.at({i[0], i[3]});
        });
        CHECK(max_abs(Rpull - F) < 1e-9);
    }

    // embedded geodesics: a geodesic with data in the embedded real locus
    // is the image of an RP geodesic
    Geodesic gr = sample_geodesics(Space::RP, 2, 1, 771)[0];
    Geodesic gc = transform_geodesic(e.U, Geodesic{Space::CP, 2, gr.z, gr.w});
    CHECK(geodesic_invariant_residual(gc) < 1e-12);
    auto [p0, v0] = geodesic_eval(gr, 0.4);
    auto [p1, v1] = geodesic_eval(gc, 0.4);
    CHECK(distance(embed_point(e, p0), p1) < 1e-10);
}

#include <cmath>

#include "cpx/fields.hpp"
#include "cpx/operators.hpp"
#include "cpx/rng.hpp"
#include "cpx/symmetry.hpp"
#include "doctest.h"

using namespace cpx;

namespace {

ChartPoint rand_point(Space space, int n, Rng& rng, double scale = 0.5) {
    ChartPoint p{space, n, 0, {}};
    p.x.assign(space == Space::CP ? 2 * n : n, 0.0);
    for (auto& c : p.x) c = rng.uniform(-scale, scale);
    return p;
}

double field_norm(const TensorField& f, const ChartPoint& p) {
    return max_abs(values(f->eval(p, 0)));
}

}  // namespace

TEST_CASE("scalar fields: jets shift consistently and transform correctly") {
    Rng rng(3);
    auto gen = make_field(Space::CP, 2, "random-trig", 0, 42);
    ChartPoint p = rand_point(Space::CP, 2, rng);

    // Taylor-shift: the jet at p predicts values nearby
    Jet f = eval_scalar(gen.field, p, 6);
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> d(4);
        for (auto& c : d) c = rng.uniform(-1e-2, 1e-2);
        ChartPoint q = p;
        for (int i = 0; i < 4; ++i) q.x[i] += d[i];
        CHECK(f.eval(d) == doctest::Approx(eval_scalar(gen.field, q, 0).value()).epsilon(1e-10));
    }

    // chart independence: the scalar takes the same value in another chart
    ChartPoint p1 = to_chart(p, 1);
    CHECK(eval_scalar(gen.field, p, 0).value() ==
          doctest::Approx(eval_scalar(gen.field, p1, 0).value()).epsilon(1e-12));

    // generator records are reproducible
    auto gen2 = make_field(Space::CP, 2, "random-trig", 0, 42);
    CHECK(gen.record.dump() == gen2.record.dump());
    CHECK(eval_scalar(gen2.field, p, 0).value() ==
          doctest::Approx(eval_scalar(gen.field, p, 0).value()).epsilon(1e-15));
}

TEST_CASE("tensor fields transform with the transition jacobian") {
    Rng rng(7);
    for (Space sp : {Space::CP, Space::RP}) {
        auto gen = make_field(sp, 2, "random-trig", 2, 9);
        ChartPoint p = rand_point(sp, 2, rng, 0.7);
        const int m = p.mdim();
        ChartPoint q = to_chart(p, 1);
        DenseTensor wp = values(gen.field->eval(p, 0));
        DenseTensor wq = values(gen.field->eval(q, 0));
        std::vector<Jet> tj = transition_jets(p, 1, 1);
        Eigen::MatrixXd Jac(m, m);
        for (int i = 0; i < m; ++i)
            for (int a = 0; a < m; ++a) Jac(i, a) = tj[i].coeffs()[1 + a];
        double worst = 0.0;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                double v = 0.0;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) v += Jac(i, a) * wq.at({i, j}) * Jac(j, b);
                worst = std::max(worst, std::abs(v - wp.at({a, b})));
            }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("symmetrised covariant derivative") {
    Rng rng(11);
    auto phi = make_field(Space::CP, 2, "random-trig", 1, 5).field;

    // at the chart origin the Christoffels vanish: equals symmetrised partials
    ChartPoint o{Space::CP, 2, 0, std::vector<double>(4, 0.0)};
    TensorJet pj = phi->eval(o, 1);
    DenseTensor expected(4, 2, 0.0);
    expected.for_each([&](const std::vector<int>& i, std::size_t fl) {
        expected[fl] = pj.at({i[1]}).deriv(i[0]).value();
    });
    expected = expected.symmetrized_all();
    DenseTensor got = values(sym_cov_deriv(phi)->eval(o, 0));
    CHECK(max_abs(got - expected) < 1e-12);

    // hessian of a scalar: the unsymmetrised second covariant derivative is
    // already symmetric
    auto f = make_field(Space::CP, 2, "random-trig", 0, 6).field;
    ChartPoint p = rand_point(Space::CP, 2, rng);
    auto geom = geom_at(p, 2);
    TensorJet hess = cov_deriv(cov_deriv(f->eval(p, 2), *geom), *geom);
    DenseTensor h = values(hess);
    CHECK(max_abs(h - h.permuted({1, 0})) < 1e-11);
}

TEST_CASE("killing forms are in the kernel of the symmetrised derivative") {
    Rng rng(13);
    for (Space sp : {Space::CP, Space::RP}) {
        auto gen = make_field(sp, 2, "killing", 1, 31);
        auto dsym = sym_cov_deriv(gen.field);
        // oracle: the Lie derivative of the metric along the generator
        Eigen::MatrixXcd A;
        {
            Rng r2(31);
            A = random_su_algebra(3, r2.bits());
            if (sp == Space::RP) {
                Eigen::MatrixXd S = A.real();
                A = ((S - S.transpose()) * 0.5).cast<std::complex<double>>();
            }
        }
        for (int rep = 0; rep < 8; ++rep) {
            ChartPoint p = rand_point(sp, 2, rng, 0.8);
            const int m = p.mdim();
            CHECK(field_norm(dsym, p) < 1e-9);

            auto X = generator_vector_jets(sp, 2, A, p, 1);
            auto geom = geom_at(p, 1);
            double worst = 0.0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    double v = 0.0;
                    for (int c = 0; c < m; ++c) {
                        v += X[c].value() * geom->g.at({a, b}).deriv(c).value();
                        v += geom->g.at({c, b}).value() * X[c].deriv(a).value();
                        v += geom->g.at({a, c}).value() * X[c].deriv(b).value();
                    }
                    worst = std::max(worst, std::abs(v));
                }
            CHECK(worst < 1e-9);  // Lie derivative of g vanishes
        }
    }
}

TEST_CASE("ladder operator annihilates potentials on the real model") {
    Rng rng(17);
    for (int n : {2, 3}) {
        for (int ell : {1, 2, 3}) {
            auto omega = make_field(Space::RP, n, "potential", ell, 100 + ell).field;
            double scale = 0.0;
            for (int rep = 0; rep < 4; ++rep) {
                ChartPoint p = rand_point(Space::RP, n, rng, 0.7);
                DenseTensor val = nabla_ell_value(omega, p);
                scale = std::max(scale, field_norm(omega, p));
                CHECK(max_abs(val) < 1e-8 * std::max(1.0, scale));
            }
        }
    }
}

TEST_CASE("two routes to the valence-2 obstruction agree on the real model") {
    Rng rng(19);
    for (int n : {2, 3}) {
        auto omega = make_field(Space::RP, n, "random-trig", 2, 7).field;
        for (int rep = 0; rep < 4; ++rep) {
            ChartPoint p = rand_point(Space::RP, n, rng, 0.6);
            DenseTensor raw = nabla2_raw_value(omega, p);
            DenseTensor lad = nabla_ell_value(omega, p);
            CHECK(max_abs(raw - lad * 2.0) < 1e-10 * std::max(1.0, max_abs(raw)));
        }
    }
    // on the complex model the identity holds after removing J-traces
    auto omega = make_field(Space::CP, 2, "random-trig", 2, 8).field;
    for (int rep = 0; rep < 3; ++rep) {
        ChartPoint p = rand_point(Space::CP, 2, rng, 0.6);
        SymplecticData S = symplectic_at(*geom_at(p, 1));
        DenseTensor raw = nabla2_raw_value(omega, p);
        DenseTensor raw_cls = project_to_class(raw, SymmetryClass::riemann());
        DenseTensor diff = perp_project(raw_cls, SymmetryClass::riemann(), S) -
                           nabla_ell_perp_value(omega, p) * 2.0;
        CHECK(max_abs(diff) < 1e-9 * std::max(1.0, max_abs(raw)));
    }
}

TEST_CASE("ladder trace coefficients in exact integers") {
    auto c1 = [](long long l) { return (l - 1) * l * (l + 1) / 6; };
    auto c2 = [](long long l) {
        return (l - 3) * (l - 2) * (l - 1) * l * (l + 1) * (5 * l + 7) / 360;
    };
    for (int ell : {2, 3, 5}) {
        CHECK(ladder_trace_coefficient_e1(ell) == c1(ell));
        CHECK(ladder_trace_coefficient_e2(ell) == c2(ell));
    }
    CHECK(ladder_trace_coefficient_e1(5) == 20);
    CHECK(ladder_trace_coefficient_e2(5) == 64);
}

TEST_CASE("complex-model operator annihilates potentials after projection") {
    Rng rng(23);
    for (int ell : {1, 2, 3}) {
        auto omega = make_field(Space::CP, 2, "potential", ell, 50 + ell).field;
        for (int rep = 0; rep < 3; ++rep) {
            ChartPoint p = rand_point(Space::CP, 2, rng, 0.6);
            DenseTensor raw = nabla_ell_value(omega, p);
            DenseTensor perp = nabla_ell_perp_value(omega, p);
            // relative: the unprojected value is generically nonzero
            double denom = std::max(1.0, max_abs(raw));
            CHECK(max_abs(perp) / denom < 1e-7);
        }
    }
}

TEST_CASE("the metric is not in the kernel of the projected operator") {
    auto g = metric_field(Space::CP, 2);
    ChartPoint o{Space::CP, 2, 0, std::vector<double>(4, 0.0)};
    DenseTensor val = nabla_ell_perp_value(g, o);

    // pointwise oracle: nabla g = 0, so the ladder reduces to the algebraic
    // insertion g_(tu g_ab) followed by pair skewing and trace removal,
    // computable by plain linear algebra at the adapted frame
    SymplecticData S = SymplecticData::standard(2);
    DenseTensor gg(4, 4, 0.0);
    gg.for_each([&](const std::vector<int>& i, std::size_t fl) {
        gg[fl] = S.g_lower.data()[static_cast<std::size_t>(i[0]) * 4 + i[1]] *
                 S.g_lower.data()[static_cast<std::size_t>(i[2]) * 4 + i[3]];
    });
    DenseTensor oracle = perp_project(skew_pair_map(gg, 2), SymmetryClass::riemann(), S);
    CHECK(max_abs(oracle) > 0.1);
    CHECK(max_abs(val - oracle) < 1e-9);
    // frozen witness value used by the acceptance suite: the largest
    // component of the projected insertion is exactly 1/2 at the frame
    CHECK(max_abs(oracle) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("pullback along model embeddings intertwines the two operators") {
    Rng rng(29);
    ModelEmbedding e = random_embedding(2, 123);
    for (int ell : {1, 2}) {
        auto omega = make_field(Space::CP, 2, "random-trig", ell, 400 + ell).field;
        auto pulled = embedding_pullback(e, omega);
        for (int rep = 0; rep < 2; ++rep) {
            ChartPoint x = rand_point(Space::RP, 2, rng, 0.6);
            ChartPoint im = embed_point(e, x);
            DenseTensor big = nabla_ell_perp_value(omega, im);
            DenseTensor lhs = pullback_at(e, x, big);
            DenseTensor rhs = nabla_ell_value(pulled, x);
            CHECK(max_abs(lhs - rhs) < 1e-8 * std::max(1.0, max_abs(rhs)));
        }
    }
}

TEST_CASE("d-perp complex and the second-order operator") {
    Rng rng(37);
    auto omega = make_field(Space::CP, 2, "random-trig", 1, 77).field;

    // d_perp of an exact form vanishes
    auto f = make_field(Space::CP, 2, "random-trig", 0, 78).field;
    auto df = differential(f);
    for (int rep = 0; rep < 3; ++rep) {
        ChartPoint p = rand_point(Space::CP, 2, rng, 0.6);
        CHECK(field_norm(d_perp(df), p) < 1e-10);
    }

    // xi = theta J is annihilated by the second-order operator
    auto theta = make_field(Space::CP, 2, "random-trig", 0, 79).field;
    {
        auto xiJ = sum_fields({scale_field(kahler_form_field(2), 0.0),  // typed zero
                               kahler_form_field(2)});
        // theta * J via a sym-product is wrong (J is skew); build directly
        // using the catalogue scalar-times node through make_field is not
        // exposed; multiply by hand:
        struct ThetaJ final : TensorFieldNode {
            TensorField th;
            TensorJet eval(const ChartPoint& p, int order) const override {
                Jet t = th->eval(p, order).data()[0];
                TensorJet J = geom_at(p, order)->J_low;
                for (auto& c : J.data()) c = c * t;
                return J;
            }
            nlohmann::json describe() const override { return {{"node", "theta-J"}}; }
        };
        auto tj = std::make_shared<ThetaJ>();
        tj->th = theta;
        tj->space = Space::CP;
        tj->n = 2;
        tj->valence = 2;
        TensorField xi = tj;
        for (int rep = 0; rep < 3; ++rep) {
            ChartPoint p = rand_point(Space::CP, 2, rng, 0.5);
            CHECK(field_norm(d_perp2(xi), p) < 1e-9);
            CHECK(d_perp2_defect(xi, p) < 1e-10);
        }
        (void)xiJ;
    }

    // the complex property d_perp2 ∘ d_perp = 0 and the defining equation
    auto xi2 = d_perp(omega);
    for (int rep = 0; rep < 3; ++rep) {
        ChartPoint p = rand_point(Space::CP, 2, rng, 0.5);
        CHECK(d_perp2_defect(xi2, p) < 1e-10);
        CHECK(field_norm(d_perp2(xi2), p) < 1e-8);
    }

    // local kernel structure: omega = d phi + theta0 * alpha with d alpha = J
    // near the chart origin; then d omega - theta0 J = 0 and d_perp omega = 0
    auto alpha = local_symplectic_primitive(2, 12);
    const double theta0 = 0.7;
    auto om_loc = sum_fields({differential(f), scale_field(alpha, theta0)});
    for (int rep = 0; rep < 3; ++rep) {
        ChartPoint p = rand_point(Space::CP, 2, rng, 0.05);
        TensorJet dom = exterior_deriv(om_loc)->eval(p, 0);
        DenseTensor J = values(geom_at(p, 0)->J_low);
        CHECK(max_abs(values(dom) - J * theta0) < 1e-9);
        CHECK(field_norm(d_perp(om_loc), p) < 1e-9);
    }
}

TEST_CASE("operators are natural under the isometry action") {
    Rng rng(41);
    Eigen::MatrixXcd U = haar_su(3, 999);
    auto omega = make_field(Space::CP, 2, "random-trig", 1, 55).field;
    auto lhs = isometry_pullback(U, d_perp(omega));
    auto rhs = d_perp(isometry_pullback(U, omega));
    for (int rep = 0; rep < 3; ++rep) {
        ChartPoint p = rand_point(Space::CP, 2, rng, 0.5);
        DenseTensor a = values(lhs->eval(p, 0));
        DenseTensor b = values(rhs->eval(p, 0));
        CHECK(max_abs(a - b) < 1e-8 * std::max(1.0, max_abs(a)));
    }
}

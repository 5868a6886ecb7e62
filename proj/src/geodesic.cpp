#include "cpx/geodesic.hpp"

#include <cmath>

#include "cpx/rng.hpp"

namespace cpx {

double geodesic_invariant_residual(const Geodesic& g) {
    double r = std::abs(g.z.norm() - 1.0);
    r = std::max(r, std::abs(g.w.norm() - 1.0));
    r = std::max(r, std::abs(g.w.dot(g.z)));
    if (g.space == Space::RP) {
        r = std::max(r, g.z.imag().norm());
        r = std::max(r, g.w.imag().norm());
    }
    return r;
}

std::pair<ChartPoint, std::vector<double>> geodesic_eval(const Geodesic& g, double t) {
    const int n = g.n;
    Eigen::VectorXcd zeta = std::cos(t) * g.z + std::sin(t) * g.w;
    Eigen::VectorXcd dzeta = -std::sin(t) * g.z + std::cos(t) * g.w;
    const int c = best_chart(zeta);

    ChartPoint p;
    p.space = g.space;
    p.n = n;
    p.chart = c;
    p.x.assign(g.space == Space::CP ? 2 * n : n, 0.0);
    std::vector<double> v(p.x.size(), 0.0);
    int s = 0;
    for (int j = 0; j <= n; ++j) {
        if (j == c) continue;
        std::complex<double> w = zeta[j] / zeta[c];
        std::complex<double> dw = (dzeta[j] * zeta[c] - zeta[j] * dzeta[c]) / (zeta[c] * zeta[c]);
        p.x[s] = w.real();
        v[s] = dw.real();
        if (g.space == Space::CP) {
            p.x[n + s] = w.imag();
            v[n + s] = dw.imag();
        }
        ++s;
    }
    return {p, v};
}

Geodesic geodesic_through(const ChartPoint& p, const std::vector<double>& v) {
    const int n = p.n;
    Eigen::VectorXcd lift(n + 1), dlift(n + 1);
    int s = 0;
    for (int j = 0; j <= n; ++j) {
        if (j == p.chart) {
            lift[j] = 1.0;
            dlift[j] = 0.0;
        } else {
            if (p.space == Space::CP) {
                lift[j] = std::complex<double>(p.x[s], p.x[n + s]);
                dlift[j] = std::complex<double>(v[s], v[n + s]);
            } else {
                lift[j] = p.x[s];
                dlift[j] = v[s];
            }
            ++s;
        }
    }
    const double nl = lift.norm();
    Eigen::VectorXcd z = lift / nl;
    Eigen::VectorXcd W = dlift / nl;
    W -= z.dot(W) * z;  // remove the full complex vertical direction
    const double nw = W.norm();
    if (nw < 1e-14) throw std::invalid_argument("geodesic_through: zero tangent");
    Geodesic g;
    g.space = p.space;
    g.n = n;
    g.z = z;
    g.w = W / nw;
    return g;
}

std::vector<Geodesic> sample_geodesics(Space space, int n, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Geodesic> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Eigen::VectorXcd z(n + 1), w(n + 1);
        for (int j = 0; j <= n; ++j) {
            if (space == Space::CP) {
                z[j] = rng.cnormal();
                w[j] = rng.cnormal();
            } else {
                z[j] = rng.normal();
                w[j] = rng.normal();
            }
        }
        z /= z.norm();
        w -= z.dot(w) * z;
        w /= w.norm();
        Geodesic g;
        g.space = space;
        g.n = n;
        g.z = z;
        g.w = w;
        out.push_back(std::move(g));
    }
    return out;
}

Geodesic transform_geodesic(const Eigen::MatrixXcd& U, const Geodesic& g) {
    Geodesic h = g;
    h.z = U * g.z;
    h.w = U * g.w;
    return h;
}

double geodesic_ode_deviation(const Geodesic& g, double t_end, int steps, int samples) {
    // state: chart point + chart velocity; x'' = -Gamma(x)(x', x')
    auto [p0, v0] = geodesic_eval(g, 0.0);
    ChartPoint p = p0;
    std::vector<double> x = p0.x, v = v0;
    const int m = p.mdim();

    auto accel = [&](const std::vector<double>& xx, const std::vector<double>& vv,
                     std::vector<double>& out) {
        ChartPoint q = p;
        q.x = xx;
        GeomJets G = metric_jets(q, 1);
        DenseTensor gam = values(G.gamma);
        out.assign(m, 0.0);
        for (int e = 0; e < m; ++e) {
            double acc = 0.0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) acc += gam.at({a, b, e}) * vv[a] * vv[b];
            out[e] = -acc;
        }
    };

    const double h = t_end / steps;
    double worst = 0.0;
    const int check_every = std::max(1, steps / samples);
    std::vector<double> k1(m), k2(m), k3(m), k4(m), a1(m), a2(m), a3(m), a4(m), xt(m), vt(m);
    for (int s = 0; s < steps; ++s) {
        // if the point drifts towards a chart boundary, re-chart
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        if (r2 > 4.0) {
            ChartPoint q = p;
            q.x = x;
            Eigen::VectorXcd z = homogeneous(q);
            int nc = best_chart(z);
            if (nc != p.chart) {
                // transport velocity through the transition Jacobian
                std::vector<Jet> tj = transition_jets(q, nc, 1);
                std::vector<double> nx(m), nv(m, 0.0);
                for (int i = 0; i < m; ++i) {
                    nx[i] = tj[i].value();
                    for (int a = 0; a < m; ++a) nv[i] += tj[i].coeffs()[1 + a] * v[a];
                }
                p.chart = nc;
                x = nx;
                v = nv;
            }
        }

        auto rk_stage = [&](const std::vector<double>& xs, const std::vector<double>& vs,
                            std::vector<double>& kx, std::vector<double>& ka) {
            kx = vs;
            accel(xs, vs, ka);
        };
        rk_stage(x, v, k1, a1);
        for (int i = 0; i < m; ++i) {
            xt[i] = x[i] + 0.5 * h * k1[i];
            vt[i] = v[i] + 0.5 * h * a1[i];
        }
        rk_stage(xt, vt, k2, a2);
        for (int i = 0; i < m; ++i) {
            xt[i] = x[i] + 0.5 * h * k2[i];
            vt[i] = v[i] + 0.5 * h * a2[i];
        }
        rk_stage(xt, vt, k3, a3);
        for (int i = 0; i < m; ++i) {
            xt[i] = x[i] + h * k3[i];
            vt[i] = v[i] + h * a3[i];
        }
        rk_stage(xt, vt, k4, a4);
        for (int i = 0; i < m; ++i) {
            x[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            v[i] += h / 6.0 * (a1[i] + 2 * a2[i] + 2 * a3[i] + a4[i]);
        }

        if ((s + 1) % check_every == 0 || s + 1 == steps) {
            ChartPoint q = p;
            q.x = x;
            auto [pf, vf] = geodesic_eval(g, (s + 1) * h);
            worst = std::max(worst, distance(q, pf));
        }
    }
    return worst;
}

}  // namespace cpx

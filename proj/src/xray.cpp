#include "cpx/xray.hpp"

#include <cmath>
#include <stdexcept>

namespace cpx {

nlohmann::json EnergyReport::to_json() const {
    return {{"seed", seed}, {"n", n}, {"ell", ell}, {"N", N},
            {"energy", energy}, {"err_est", err_est}};
}

namespace {

double integrand(const TensorField& omega, const Geodesic& g, double t) {
    auto [p, v] = geodesic_eval(g, t);
    DenseTensor w = values(omega->eval(p, 0));
    const int k = w.valence();
    double acc = 0.0;
    w.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        double term = w[fl];
        if (term == 0.0) return;
        for (int s = 0; s < k; ++s) term *= v[idx[s]];
        acc += term;
    });
    return acc;
}

/// 16-point Gauss-Legendre nodes/weights on [-1, 1], computed by Newton
/// iteration on the Legendre polynomial.
struct GaussRule {
    std::vector<double> x, w;
    GaussRule() {
        const int N = 16;
        x.resize(N);
        w.resize(N);
        for (int i = 0; i < N; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (N + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= N; ++k) {
                    double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = N * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= N; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = N * (t * p1 - p0) / (t * t - 1.0);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

const GaussRule& gauss16() {
    static GaussRule rule;
    return rule;
}

}  // namespace

double energy(const TensorField& omega, const Geodesic& g, int N) {
    if (N < 4) throw std::invalid_argument("energy: N too small");
    auto [p0, v0] = geodesic_eval(g, 0.0);
    auto [p1, v1] = geodesic_eval(g, M_PI);
    if (distance(p0, p1) > 1e-9)
        throw std::runtime_error("energy: geodesic fails to close at the expected period");
    double acc = 0.0;
    for (int k = 0; k < N; ++k) acc += integrand(omega, g, M_PI * k / N);
    return acc * M_PI / N;
}

double energy_segment(const TensorField& omega, const Geodesic& g, double t0, double t1) {
    const auto& rule = gauss16();
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(t1 - t0) / 0.35)));
    double acc = 0.0;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double a = t0 + (t1 - t0) * pnl / panels;
        const double b = t0 + (t1 - t0) * (pnl + 1) / panels;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double t = 0.5 * (a + b) + 0.5 * (b - a) * rule.x[i];
            acc += 0.5 * (b - a) * rule.w[i] * integrand(omega, g, t);
        }
    }
    return acc;
}

double endpoint_difference(const TensorField& phi, const Geodesic& g, double t0, double t1) {
    auto value_at = [&](double t) {
        auto [p, v] = geodesic_eval(g, t);
        DenseTensor w = values(phi->eval(p, 0));
        const int k = w.valence();
        double acc = 0.0;
        w.for_each([&](const std::vector<int>& idx, std::size_t fl) {
            double term = w[fl];
            if (term == 0.0) return;
            for (int s = 0; s < k; ++s) term *= v[idx[s]];
            acc += term;
        });
        return acc;
    };
    return value_at(t1) - value_at(t0);
}

double arc_length(const Geodesic& g, int N) {
    double acc = 0.0;
    for (int k = 0; k < N; ++k) {
        const double t = M_PI * k / N;
        auto [p, v] = geodesic_eval(g, t);
        DenseTensor gm = values(geom_at(p, 0)->g);
        double s = 0.0;
        const int m = p.mdim();
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) s += gm.at({a, b}) * v[a] * v[b];
        acc += std::sqrt(s);
    }
    return acc * M_PI / N;
}

SurveyResult zero_energy_survey(const TensorField& omega, const std::vector<Geodesic>& gs,
                                int N, std::uint64_t seed_tag) {
    SurveyResult out;
    for (const auto& g : gs) {
        EnergyReport row;
        row.seed = seed_tag;
        row.n = g.n;
        row.ell = omega->valence;
        row.N = N;
        row.energy = energy(omega, g, N);
        row.err_est = std::abs(row.energy - energy(omega, g, 2 * N));
        out.rows.push_back(row);
        out.max_abs_energy = std::max(out.max_abs_energy, std::abs(row.energy));
    }
    return out;
}

WitnessResult nonpotential_witness(const TensorField& omega, const std::vector<Geodesic>& gs,
                                   int N, double threshold) {
    WitnessResult out;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        double e = energy(omega, gs[i], N);
        if (std::abs(e) > std::abs(out.energy) || out.index < 0) {
            out.index = static_cast<int>(i);
            out.energy = e;
        }
    }
    out.exceeds = std::abs(out.energy) > threshold;
    return out;
}

}  // namespace cpx

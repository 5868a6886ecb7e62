#include "cpx/operators.hpp"

#include <numeric>

#include "cpx/jet_linalg.hpp"

namespace cpx {

namespace {

std::vector<int> ladder_shifts(int ell) {
    // squared shifts of the second-order factors, applied right to left
    std::vector<int> ps;
    for (int q = (ell % 2 == 0) ? 1 : 2; q <= ell - 1; q += 2) ps.push_back(q);
    return ps;
}

TensorJet exterior_deriv_jets(const TensorJet& om, int m) {
    const int k = om.valence();
    const int ro = om.data()[0].order() - 1;
    TensorJet out(m, k + 1, Jet::constant(m, ro, 0.0));
    std::vector<int> src(k);
    out.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        Jet acc = Jet::constant(m, ro, 0.0);
        for (int drop = 0; drop <= k; ++drop) {
            int t = 0;
            for (int s = 0; s <= k; ++s)
                if (s != drop) src[t++] = idx[s];
            Jet term = om.at(src).deriv(idx[drop]);
            acc += (drop % 2 == 0) ? term : -term;
        }
        out[fl] = acc;
    });
    return out;
}

}  // namespace

DenseTensor nabla_ell_value(const TensorField& omega, const ChartPoint& p) {
    const int ell = omega->valence;
    const int m = p.mdim();
    auto geom = geom_at(p, ell + 1);
    TensorJet cur = omega->eval(p, ell);
    int firstk = 0;
    if (ell % 2 == 1) {
        cur = cov_deriv(cur, *geom);
        firstk = 1;
    }
    for (int q : ladder_shifts(ell)) {
        TensorJet d2 = cov_deriv(cov_deriv(cur, *geom), *geom);
        const int ro = d2.data()[0].order();
        TensorJet gterm = outer(truncated(geom->g, ro), truncated(cur, ro));
        d2 += gterm * static_cast<double>(q * q);
        std::vector<int> symslots(firstk + 2);
        std::iota(symslots.begin(), symslots.end(), 0);
        cur = d2.symmetrized(symslots);
        firstk += 2;
    }
    return skew_pair_map(values(cur), ell);
}

DenseTensor nabla_ell_perp_value(const TensorField& omega, const ChartPoint& p) {
    if (p.space != Space::CP) throw std::invalid_argument("nabla_ell_perp_value: CP only");
    DenseTensor T = nabla_ell_value(omega, p);
    SymplecticData S = symplectic_at(*geom_at(p, 1));
    return perp_project(T, SymmetryClass::skew_pairs(omega->valence), S);
}

DenseTensor nabla2_raw_value(const TensorField& omega, const ChartPoint& p) {
    const int m = p.mdim();
    auto geom = geom_at(p, 3);
    TensorJet om = omega->eval(p, 2);
    DenseTensor w = values(om);
    DenseTensor dd = values(cov_deriv(cov_deriv(om, *geom), *geom));  // (u, t, b, d)
    DenseTensor g = values(geom->g);
    DenseTensor O(m, 4, 0.0);
    O.for_each([&](const std::vector<int>& i, std::size_t fl) {
        const int a = i[0], b = i[1], c = i[2], d = i[3];
        double v = 0.5 * (dd.at({a, c, b, d}) - dd.at({b, c, a, d}));
        v -= 0.5 * (dd.at({a, d, b, c}) - dd.at({b, d, a, c}));
        v += 0.5 * (g.at({c, a}) * w.at({b, d}) - g.at({c, b}) * w.at({a, d}));
        v -= 0.5 * (g.at({d, a}) * w.at({b, c}) - g.at({d, b}) * w.at({a, c}));
        O[fl] = v;
    });
    return O;
}

long long ladder_trace_coefficient_e1(int ell) {
    long long e1 = 0;
    for (int q : ladder_shifts(ell)) e1 += static_cast<long long>(q) * q;
    return e1;
}

long long ladder_trace_coefficient_e2(int ell) {
    auto ps = ladder_shifts(ell);
    long long e2 = 0;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            e2 += static_cast<long long>(ps[i]) * ps[i] * ps[j] * ps[j];
    return e2;
}

namespace {

struct ExteriorDerivField final : TensorFieldNode {
    TensorField base;
    TensorJet eval(const ChartPoint& p, int order) const override {
        return exterior_deriv_jets(base->eval(p, order + 1), p.mdim());
    }
    nlohmann::json describe() const override {
        return {{"node", "exterior-d"}, {"base", base->describe()}};
    }
};

struct DPerpField final : TensorFieldNode {
    TensorField base;  // 1-form
    TensorJet eval(const ChartPoint& p, int order) const override {
        const int m = p.mdim();
        auto geom = geom_at(p, order + 1);
        TensorJet dxi = exterior_deriv_jets(base->eval(p, order + 1), m);
        TensorJet Jup = truncated(geom->J_up, order);
        TensorJet Jlow = truncated(geom->J_low, order);
        Jet tr = Jet::constant(m, order, 0.0);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) tr += Jup.at({a, b}) * dxi.at({a, b});
        tr *= 1.0 / (2.0 * n);
        TensorJet out = dxi;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) out.at({a, b}) -= Jlow.at({a, b}) * tr;
        return out;
    }
    nlohmann::json describe() const override {
        return {{"node", "d-perp"}, {"base", base->describe()}};
    }
};

/// mu from mu ^ J = d xi on the complex projective plane (m = 4).
TensorJet solve_mu(const TensorJet& dxi, const TensorJet& Jlow, int m, int order) {
    // rows: strictly increasing triples (a<b<c); the map mu -> mu ^ J is
    //   (mu ^ J)_abc = mu_a J_bc - mu_b J_ac + mu_c J_ab
    std::vector<std::array<int, 3>> rows;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) rows.push_back({a, b, c});
    const int k = static_cast<int>(rows.size());
    if (k != m) throw std::logic_error("solve_mu: expects dim 4");
    std::vector<Jet> A(static_cast<std::size_t>(k) * k, Jet::constant(m, order, 0.0));
    std::vector<Jet> rhs(static_cast<std::size_t>(k), Jet::constant(m, order, 0.0));
    for (int r = 0; r < k; ++r) {
        auto [a, b, c] = rows[r];
        for (int e = 0; e < m; ++e) {
            Jet coef = Jet::constant(m, order, 0.0);
            if (e == a) coef += Jlow.at({b, c});
            if (e == b) coef -= Jlow.at({a, c});
            if (e == c) coef += Jlow.at({a, b});
            A[static_cast<std::size_t>(r) * k + e] = coef;
        }
        rhs[r] = dxi.at({a, b, c});
    }
    auto x = jet_linsolve(std::move(A), std::move(rhs), k);
    TensorJet mu(m, 1, Jet::constant(m, order, 0.0));
    for (int e = 0; e < m; ++e) mu.at({e}) = x[e];
    return mu;
}

struct DPerp2Field final : TensorFieldNode {
    TensorField base;  // trace-free 2-form on the complex projective plane
    TensorJet eval(const ChartPoint& p, int order) const override {
        const int m = p.mdim();
        if (m != 4) throw std::invalid_argument("d_perp2: defined for n = 2 only");
        auto geom = geom_at(p, order + 2);
        TensorJet dxi = exterior_deriv_jets(base->eval(p, order + 2), m);  // order+1
        TensorJet Jlow = truncated(geom->J_low, order + 1);
        TensorJet mu = solve_mu(dxi, Jlow, m, order + 1);
        return exterior_deriv_jets(mu, m);  // order
    }
    nlohmann::json describe() const override {
        return {{"node", "d-perp2"}, {"base", base->describe()}};
    }
};

}  // namespace

TensorField exterior_deriv(const TensorField& omega) {
    auto node = std::make_shared<ExteriorDerivField>();
    node->base = omega;
    node->space = omega->space;
    node->n = omega->n;
    node->valence = omega->valence + 1;
    return node;
}

TensorField d_perp(const TensorField& omega) {
    if (omega->valence != 1) throw std::invalid_argument("d_perp: expects a 1-form");
    auto node = std::make_shared<DPerpField>();
    node->base = omega;
    node->space = omega->space;
    node->n = omega->n;
    node->valence = 2;
    return node;
}

TensorField d_perp2(const TensorField& xi) {
    if (xi->valence != 2) throw std::invalid_argument("d_perp2: expects a 2-form");
    auto node = std::make_shared<DPerp2Field>();
    node->base = xi;
    node->space = xi->space;
    node->n = xi->n;
    node->valence = 2;
    return node;
}

double d_perp2_defect(const TensorField& xi, const ChartPoint& p) {
    const int m = p.mdim();
    auto geom = geom_at(p, 2);
    TensorJet dxi = exterior_deriv_jets(xi->eval(p, 2), m);  // order 1
    TensorJet Jlow = truncated(geom->J_low, 1);
    TensorJet mu = solve_mu(dxi, Jlow, m, 1);
    // residual of mu ^ J = d xi
    double worst = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                double v = mu.at({a}).value() * Jlow.at({b, c}).value() -
                           mu.at({b}).value() * Jlow.at({a, c}).value() +
                           mu.at({c}).value() * Jlow.at({a, b}).value() -
                           dxi.at({a, b, c}).value();
                worst = std::max(worst, std::abs(v));
            }
    return worst;
}

}  // namespace cpx

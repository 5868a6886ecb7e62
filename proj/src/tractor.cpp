#include "cpx/tractor.hpp"

#include <array>
#include <cmath>

#include "cpx/operators.hpp"
#include "cpx/rng.hpp"
#include "cpx/symmetry.hpp"

namespace cpx {

namespace {

int jet_order(const TensorJet& t) { return t.data()[0].order(); }

/// move the last slot index of m to the front: out(a, B) = m(B, a)
TensorJet slot_to_front(const TensorJet& m) {
    const int k = m.valence();
    std::vector<int> p(k);
    for (int s = 0; s < k - 1; ++s) p[s] = s + 1;
    p[k - 1] = 0;
    return m.permuted(p);
}

}  // namespace

TracT coupled_deriv(const TracT& x, const GeomJets& geom) {
    const int ro = jet_order(x.s) - 1;
    TracT out;
    out.nforms = x.nforms + 1;
    TensorJet mlow = truncated(x.m, ro), slow = truncated(x.s, ro);
    TensorJet g = truncated(geom.g, ro);

    out.s = cov_deriv(x.s, geom) - slot_to_front(mlow);
    // m'(a, B, c) = (Dm)(a, B, c) + g(a, c) s(B)
    TensorJet mp = cov_deriv(x.m, geom);
    const int m = mp.dim();
    std::vector<int> bidx(x.nforms);
    mp.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int a = idx[0];
        const int c = idx[static_cast<std::size_t>(x.nforms) + 1];
        for (int s = 0; s < x.nforms; ++s) bidx[s] = idx[s + 1];
        mp[fl] += g.at({a, c}) * slow.at(bidx);
    });
    (void)m;
    out.m = mp;
    return out;
}

TracU coupled_deriv(const TracU& x, const GeomJets& geom) {
    const int ro = jet_order(x.s) - 1;
    const int m = x.s.dim();
    TracU out;
    out.nforms = x.nforms + 1;
    TensorJet slow = truncated(x.s, ro), mlowt = truncated(x.m, ro), rlow = truncated(x.r, ro);
    TensorJet g = truncated(geom.g, ro), J = truncated(geom.J_low, ro),
              Jx = truncated(geom.J_mix, ro);

    out.s = cov_deriv(x.s, geom) - slot_to_front(mlowt);

    TensorJet mp = cov_deriv(x.m, geom);
    std::vector<int> bidx(x.nforms);
    mp.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int a = idx[0];
        const int c = idx[static_cast<std::size_t>(x.nforms) + 1];
        for (int s = 0; s < x.nforms; ++s) bidx[s] = idx[s + 1];
        mp[fl] += g.at({a, c}) * slow.at(bidx) + J.at({a, c}) * rlow.at(bidx);
    });
    out.m = mp;

    TensorJet rp = cov_deriv(x.r, geom);
    std::vector<int> midx(x.nforms + 1);
    rp.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int a = idx[0];
        for (int s = 0; s < x.nforms; ++s) midx[s] = idx[s + 1];
        Jet acc = rp[fl];
        for (int c = 0; c < m; ++c) {
            midx[x.nforms] = c;
            acc -= Jx.at({a, c}) * mlowt.at(midx);
        }
        rp[fl] = acc;
    });
    out.r = rp;
    return out;
}

TracW coupled_deriv(const TracW& x, const GeomJets& geom) {
    const int ro = jet_order(x.s) - 1;
    const int m = x.s.dim();
    const int nf = x.nforms;
    TracW out;
    out.nforms = nf + 1;
    TensorJet slow = truncated(x.s, ro), mlowt = truncated(x.m, ro), rlow = truncated(x.r, ro);
    TensorJet g = truncated(geom.g, ro), J = truncated(geom.J_low, ro),
              Jx = truncated(geom.J_mix, ro);

    // s'(a, B, b) = (Ds)(a, B, b) - m(B, a, b)
    TensorJet sp = cov_deriv(x.s, geom);
    std::vector<int> mi(static_cast<std::size_t>(nf) + 2);
    sp.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int a = idx[0];
        const int b = idx[static_cast<std::size_t>(nf) + 1];
        for (int s = 0; s < nf; ++s) mi[s] = idx[s + 1];
        mi[nf] = a;
        mi[nf + 1] = b;
        sp[fl] -= mlowt.at(mi);
    });
    out.s = sp;

    // m'(a, B, b, c) = (Dm) + g_ab s_Bc - g_ac s_Bb + J_ab r_Bc - J_ac r_Bb
    //                  - J_bc r_Ba + J_bc J_a{}^d s_Bd
    TensorJet mp = cov_deriv(x.m, geom);
    std::vector<int> si(static_cast<std::size_t>(nf) + 1);
    mp.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int a = idx[0];
        const int b = idx[static_cast<std::size_t>(nf) + 1];
        const int c = idx[static_cast<std::size_t>(nf) + 2];
        for (int s = 0; s < nf; ++s) si[s] = idx[s + 1];
        Jet acc = mp[fl];
        si[nf] = c;
        acc += g.at({a, b}) * slow.at(si) + J.at({a, b}) * rlow.at(si);
        si[nf] = b;
        acc -= g.at({a, c}) * slow.at(si) + J.at({a, c}) * rlow.at(si);
        si[nf] = a;
        acc -= J.at({b, c}) * rlow.at(si);
        for (int d = 0; d < m; ++d) {
            si[nf] = d;
            acc += J.at({b, c}) * Jx.at({a, d}) * slow.at(si);
        }
        mp[fl] = acc;
    });
    out.m = mp;

    // r'(a, B, b) = (Dr) + J_a{}^d m_Bbd
    TensorJet rp = cov_deriv(x.r, geom);
    rp.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int a = idx[0];
        const int b = idx[static_cast<std::size_t>(nf) + 1];
        for (int s = 0; s < nf; ++s) mi[s] = idx[s + 1];
        mi[nf] = b;
        Jet acc = rp[fl];
        for (int d = 0; d < m; ++d) {
            mi[nf + 1] = d;
            acc += Jx.at({a, d}) * mlowt.at(mi);
        }
        rp[fl] = acc;
    });
    out.r = rp;
    return out;
}

TracU phi_action(const TracU& x, const GeomJets& geom) {
    const int ro = jet_order(x.s);
    const int m = x.s.dim();
    TensorJet Jx = truncated(geom.J_mix, ro);
    TracU out;
    out.nforms = x.nforms;
    out.s = x.r;
    out.r = -x.s;
    TensorJet mp = x.m;
    std::vector<int> mi(static_cast<std::size_t>(x.nforms) + 1);
    mp.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int c = idx[static_cast<std::size_t>(x.nforms)];
        for (int s = 0; s < x.nforms; ++s) mi[s] = idx[s];
        Jet acc = x.m[fl] * 0.0;
        for (int d = 0; d < m; ++d) {
            mi[x.nforms] = d;
            acc += Jx.at({c, d}) * x.m.at(mi);
        }
        mp[fl] = acc;
    });
    out.m = mp;
    return out;
}

TracW phi_action(const TracW& x, const GeomJets& geom) {
    const int ro = jet_order(x.s);
    const int m = x.s.dim();
    const int nf = x.nforms;
    TensorJet Jx = truncated(geom.J_mix, ro);
    TracW out;
    out.nforms = nf;
    out.s = x.s;
    out.m = x.m;
    out.r = x.r;
    std::vector<int> ii(static_cast<std::size_t>(nf) + 2);
    out.s.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int b = idx[static_cast<std::size_t>(nf)];
        for (int s = 0; s < nf; ++s) ii[s] = idx[s];
        Jet acc = x.r[fl];  // rho_c ...
        for (int e = 0; e < m; ++e) {
            ii[nf] = e;
            acc += Jx.at({b, e}) * x.s.at(std::vector<int>(ii.begin(), ii.begin() + nf + 1));
        }
        out.s[fl] = acc;
    });
    out.m.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int b = idx[static_cast<std::size_t>(nf)];
        const int c = idx[static_cast<std::size_t>(nf) + 1];
        for (int s = 0; s < nf; ++s) ii[s] = idx[s];
        Jet acc = x.m[fl] * 0.0;
        for (int e = 0; e < m; ++e) {
            ii[nf] = e;
            ii[nf + 1] = c;
            acc += Jx.at({b, e}) * x.m.at(ii);
            ii[nf] = b;
            ii[nf + 1] = e;
            acc += Jx.at({c, e}) * x.m.at(ii);
        }
        out.m[fl] = acc;
    });
    out.r.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int b = idx[static_cast<std::size_t>(nf)];
        for (int s = 0; s < nf; ++s) ii[s] = idx[s];
        Jet acc = -x.s[fl];
        for (int e = 0; e < m; ++e) {
            ii[nf] = e;
            acc += Jx.at({b, e}) * x.r.at(std::vector<int>(ii.begin(), ii.begin() + nf + 1));
        }
        out.r[fl] = acc;
    });
    return out;
}

TracW splitting_projector(const TracW& x, const GeomJets& geom, bool plus) {
    const int ro = jet_order(x.s);
    const int m = x.s.dim();
    const int nf = x.nforms;
    TensorJet Jx = truncated(geom.J_mix, ro);
    // Q: (sigma, mu, rho) -> (J rho, JJ mu, -J sigma); projectors (Id +- Q)/2
    TracW q;
    q.nforms = nf;
    q.s = x.s;
    q.m = x.m;
    q.r = x.r;
    std::vector<int> ii(static_cast<std::size_t>(nf) + 2);
    q.s.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int b = idx[static_cast<std::size_t>(nf)];
        for (int s = 0; s < nf; ++s) ii[s] = idx[s];
        Jet acc = x.s[fl] * 0.0;
        for (int e = 0; e < m; ++e) {
            ii[nf] = e;
            acc += Jx.at({b, e}) * x.r.at(std::vector<int>(ii.begin(), ii.begin() + nf + 1));
        }
        q.s[fl] = acc;
    });
    q.m.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int b = idx[static_cast<std::size_t>(nf)];
        const int c = idx[static_cast<std::size_t>(nf) + 1];
        for (int s = 0; s < nf; ++s) ii[s] = idx[s];
        Jet acc = x.m[fl] * 0.0;
        for (int e = 0; e < m; ++e)
            for (int f = 0; f < m; ++f) {
                ii[nf] = e;
                ii[nf + 1] = f;
                acc += Jx.at({b, e}) * Jx.at({c, f}) * x.m.at(ii);
            }
        q.m[fl] = acc;
    });
    q.r.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int b = idx[static_cast<std::size_t>(nf)];
        for (int s = 0; s < nf; ++s) ii[s] = idx[s];
        Jet acc = x.r[fl] * 0.0;
        for (int e = 0; e < m; ++e) {
            ii[nf] = e;
            acc -= Jx.at({b, e}) * x.s.at(std::vector<int>(ii.begin(), ii.begin() + nf + 1));
        }
        q.r[fl] = acc;
    });
    const double sg = plus ? 1.0 : -1.0;
    TracW out;
    out.nforms = nf;
    out.s = (x.s + q.s * sg) * 0.5;
    out.m = (x.m + q.m * sg) * 0.5;
    out.r = (x.r + q.r * sg) * 0.5;
    return out;
}

// --- residual checks ---

namespace {

TracU random_U_section(int n, std::uint64_t seed, const ChartPoint& p, int order) {
    TracU x;
    x.nforms = 0;
    x.s = make_field(Space::CP, n, "random-trig", 0, seed).field->eval(p, order);
    x.m = make_field(Space::CP, n, "random-trig", 1, seed + 1).field->eval(p, order);
    x.r = make_field(Space::CP, n, "random-trig", 0, seed + 2).field->eval(p, order);
    return x;
}

TracW random_W_section(int n, std::uint64_t seed, const ChartPoint& p, int order) {
    TracW x;
    x.nforms = 0;
    x.s = make_field(Space::CP, n, "random-trig", 1, seed).field->eval(p, order);
    auto two_form = exterior_deriv(make_field(Space::CP, n, "random-trig", 1, seed + 1).field);
    TensorJet mu = two_form->eval(p, order);
    // add a trace direction so the slot is a generic 2-form
    TensorJet J = truncated(geom_at(p, order)->J_low, order);
    Jet th = eval_scalar(make_field(Space::CP, n, "random-trig", 0, seed + 2).field, p, order);
    for (std::size_t k = 0; k < mu.size(); ++k) mu[k] += J[k] * th;
    x.m = mu;
    x.r = make_field(Space::CP, n, "random-trig", 1, seed + 3).field->eval(p, order);
    return x;
}

double commutator_residual_U(const TracU& x, const GeomJets& geom) {
    TracU d1 = coupled_deriv(x, geom);
    TracU d2 = coupled_deriv(d1, geom);
    TracU phx = phi_action(x, geom);
    const int m = x.s.dim();
    DenseTensor s2 = values(d2.s), m2 = values(d2.m), r2 = values(d2.r);
    DenseTensor ps = values(phx.s), pm = values(phx.m), pr = values(phx.r);
    DenseTensor J = values(geom.J_low);
    double worst = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            worst = std::max(worst,
                             std::abs(s2.at({a, b}) - s2.at({b, a}) - 2.0 * J.at({a, b}) * ps[0]));
            worst = std::max(worst,
                             std::abs(r2.at({a, b}) - r2.at({b, a}) - 2.0 * J.at({a, b}) * pr[0]));
            for (int c = 0; c < m; ++c)
                worst = std::max(worst, std::abs(m2.at({a, b, c}) - m2.at({b, a, c}) -
                                                 2.0 * J.at({a, b}) * pm.at({c})));
        }
    return worst;
}

}  // namespace

double flatness_T_residual(const ChartPoint& p, std::uint64_t seed) {
    auto geom = geom_at(p, 3);
    TracT x;
    x.nforms = 0;
    x.s = make_field(Space::RP, p.n, "random-trig", 0, seed).field->eval(p, 2);
    x.m = make_field(Space::RP, p.n, "random-trig", 1, seed + 1).field->eval(p, 2);
    TracT d2 = coupled_deriv(coupled_deriv(x, *geom), *geom);
    DenseTensor s2 = values(d2.s), m2 = values(d2.m);
    const int m = p.mdim();
    double worst = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            worst = std::max(worst, std::abs(s2.at({a, b}) - s2.at({b, a})));
            for (int c = 0; c < m; ++c)
                worst = std::max(worst, std::abs(m2.at({a, b, c}) - m2.at({b, a, c})));
        }
    return worst;
}

double curvature_U_residual(const ChartPoint& p, std::uint64_t seed) {
    auto geom = geom_at(p, 3);
    return commutator_residual_U(random_U_section(p.n, seed, p, 2), *geom);
}

double curvature_W_residual(const ChartPoint& p, std::uint64_t seed) {
    auto geom = geom_at(p, 3);
    TracW x = random_W_section(p.n, seed, p, 2);
    TracW d2 = coupled_deriv(coupled_deriv(x, *geom), *geom);
    TracW phx = phi_action(x, *geom);
    const int m = p.mdim();
    DenseTensor s2 = values(d2.s), m2 = values(d2.m), r2 = values(d2.r);
    DenseTensor ps = values(phx.s), pm = values(phx.m), pr = values(phx.r);
    DenseTensor J = values(geom->J_low);
    double worst = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                worst = std::max(worst, std::abs(s2.at({a, b, c}) - s2.at({b, a, c}) -
                                                 2.0 * J.at({a, b}) * ps.at({c})));
                worst = std::max(worst, std::abs(r2.at({a, b, c}) - r2.at({b, a, c}) -
                                                 2.0 * J.at({a, b}) * pr.at({c})));
                for (int d = 0; d < m; ++d)
                    worst = std::max(worst, std::abs(m2.at({a, b, c, d}) - m2.at({b, a, c, d}) -
                                                     2.0 * J.at({a, b}) * pm.at({c, d})));
            }
    return worst;
}

double phi_parallel_residual(const ChartPoint& p, std::uint64_t seed) {
    auto geom = geom_at(p, 2);
    TracU x = random_U_section(p.n, seed, p, 1);
    TracU a = coupled_deriv(phi_action(x, *geom), *geom);
    TracU b = phi_action(coupled_deriv(x, *geom), *geom);
    double worst = 0.0;
    worst = std::max(worst, max_abs(values(a.s) - values(b.s)));
    worst = std::max(worst, max_abs(values(a.m) - values(b.m)));
    worst = std::max(worst, max_abs(values(a.r) - values(b.r)));
    return worst;
}

double skewform_compat_residual(const ChartPoint& p, std::uint64_t seed) {
    auto geom = geom_at(p, 2);
    TracU x = random_U_section(p.n, seed, p, 1);
    TracU y = random_U_section(p.n, seed + 100, p, 1);
    const int m = p.mdim();
    TensorJet Jup = truncated(geom->J_up, 1);
    auto pairing = [&](const TracU& A, const TracU& B) {
        Jet acc = A.s.data()[0] * B.r.data()[0] - A.r.data()[0] * B.s.data()[0];
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) acc += Jup.at({a, b}) * A.m.at({a}) * B.m.at({b});
        return acc;
    };
    Jet f = pairing(x, y);
    TracU dx = coupled_deriv(x, *geom), dy = coupled_deriv(y, *geom);
    // slotwise pairing with the derivative index as passenger
    double worst = 0.0;
    DenseTensor Jupv = values(geom->J_up);
    for (int a = 0; a < m; ++a) {
        double lhs = f.deriv(a).value();
        double rhs = values(dx.s).at({a}) * y.r.data()[0].value() -
                     values(dx.r).at({a}) * y.s.data()[0].value() +
                     x.s.data()[0].value() * values(dy.r).at({a}) -
                     x.r.data()[0].value() * values(dy.s).at({a});
        for (int u = 0; u < m; ++u)
            for (int v = 0; v < m; ++v)
                rhs += Jupv.at({u, v}) * (values(dx.m).at({a, u}) * y.m.at({v}).value() +
                                          x.m.at({u}).value() * values(dy.m).at({a, v}));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double splitting_commutes_residual(const ChartPoint& p, std::uint64_t seed) {
    auto geom = geom_at(p, 2);
    TracW x = random_W_section(p.n, seed, p, 1);
    double worst = 0.0;
    for (bool plus : {true, false}) {
        TracW a = coupled_deriv(splitting_projector(x, *geom, plus), *geom);
        TracW b = splitting_projector(coupled_deriv(x, *geom), *geom, plus);
        worst = std::max(worst, max_abs(values(a.s) - values(b.s)));
        worst = std::max(worst, max_abs(values(a.m) - values(b.m)));
        worst = std::max(worst, max_abs(values(a.r) - values(b.r)));
    }
    // idempotence and completeness of the projectors (pointwise algebra)
    TracW pp = splitting_projector(splitting_projector(x, *geom, true), *geom, true);
    TracW pm = splitting_projector(x, *geom, true);
    worst = std::max(worst, max_abs(values(pp.s) - values(pm.s)));
    worst = std::max(worst, max_abs(values(pp.m) - values(pm.m)));
    TracW sum_check = splitting_projector(x, *geom, false);
    worst = std::max(worst, max_abs(values(pm.s) + values(sum_check.s) - values(x.s)));
    worst = std::max(worst, max_abs(values(pm.m) + values(sum_check.m) - values(x.m)));
    worst = std::max(worst, max_abs(values(pm.r) + values(sum_check.r) - values(x.r)));
    return worst;
}

// --- fiber matrices ---

Eigen::MatrixXd phi_fiber_matrix_U(int n) {
    const int m = 2 * n;
    const int dim = m + 2;
    SymplecticData S = SymplecticData::standard(n);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
    // ordering: (sigma, mu_0..mu_{m-1}, rho); Phi = (rho, J_c{}^d mu_d, -sigma)
    M(0, dim - 1) = 1.0;
    M(dim - 1, 0) = -1.0;
    for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
            M(1 + c, 1 + d) = S.J_mix.data()[static_cast<std::size_t>(c) * m + d];
    return M;
}

Eigen::MatrixXd phi_fiber_matrix_W(int n) {
    const int m = 2 * n;
    SymplecticData S = SymplecticData::standard(n);
    auto Jx = [&](int a, int b) { return S.J_mix.data()[static_cast<std::size_t>(a) * m + b]; };
    // coordinates: sigma_b (m), mu_{bc} b<c (m(m-1)/2), rho_b (m)
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
    const int P = static_cast<int>(pairs.size());
    const int dim = 2 * m + P;
    auto mu_full = [&](const Eigen::VectorXd& v, int a, int b) -> double {
        if (a == b) return 0.0;
        for (int k = 0; k < P; ++k) {
            if (pairs[k].first == std::min(a, b) && pairs[k].second == std::max(a, b))
                return a < b ? v[m + k] : -v[m + k];
        }
        return 0.0;
    };
    Eigen::MatrixXd M(dim, dim);
    for (int col = 0; col < dim; ++col) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim), out = Eigen::VectorXd::Zero(dim);
        e[col] = 1.0;
        // sigma'_b = rho_b + J_b{}^e sigma_e
        for (int b = 0; b < m; ++b) {
            double acc = e[m + P + b];
            for (int ee = 0; ee < m; ++ee) acc += Jx(b, ee) * e[ee];
            out[b] = acc;
        }
        // mu'_{bc} = J_b{}^e mu_ec + J_c{}^e mu_be
        for (int k = 0; k < P; ++k) {
            auto [b, c] = pairs[k];
            double acc = 0.0;
            for (int ee = 0; ee < m; ++ee)
                acc += Jx(b, ee) * mu_full(e, ee, c) + Jx(c, ee) * mu_full(e, b, ee);
            out[m + k] = acc;
        }
        // rho'_b = -sigma_b + J_b{}^e rho_e
        for (int b = 0; b < m; ++b) {
            double acc = -e[b];
            for (int ee = 0; ee < m; ++ee) acc += Jx(b, ee) * e[m + P + ee];
            out[m + P + b] = acc;
        }
        M.col(col) = out;
    }
    return M;
}

double phi_W_spectrum_residual(int n) {
    Eigen::MatrixXd M = phi_fiber_matrix_W(n);
    Eigen::MatrixXd M2 = M * M;
    Eigen::MatrixXd Z = M2 * (M2 + 4.0 * Eigen::MatrixXd::Identity(M.rows(), M.cols()));
    return Z.cwiseAbs().maxCoeff();
}

Eigen::MatrixXd phi_pairing_matrix_U(int n) {
    const int m = 2 * n;
    const int dim = m + 2;
    SymplecticData S = SymplecticData::standard(n);
    Eigen::MatrixXd Phi = phi_fiber_matrix_U(n);
    // pairing <A, B> = sigma_A rho_B - rho_A sigma_B + J^{ab} mu_A mu_B
    Eigen::MatrixXd Om = Eigen::MatrixXd::Zero(dim, dim);
    Om(0, dim - 1) = 1.0;
    Om(dim - 1, 0) = -1.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            Om(1 + a, 1 + b) = S.J_upper.data()[static_cast<std::size_t>(a) * m + b];
    // G(i, j) = <Phi e_i, e_j> = (Phi e_i)^T Om^T ... careful: <x, y> = x^T Om y
    Eigen::MatrixXd G(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) G(i, j) = (Phi.col(i)).dot(Om * Eigen::VectorXd::Unit(dim, j));
    return G;
}

std::pair<int, int> signature_of(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    int pos = 0, neg = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()[i] > 1e-10) ++pos;
        if (es.eigenvalues()[i] < -1e-10) ++neg;
    }
    return {pos, neg};
}

// --- transport ---

Eigen::MatrixXd transport_T(const Geodesic& g, double t_end, int steps) {
    const int n = g.n;
    const int fib = n + 1;
    // state columns: (sigma, mu_1..mu_n) per fiber basis vector
    Eigen::MatrixXd Y = Eigen::MatrixXd::Identity(fib, fib);
    auto [p0, v0] = geodesic_eval(g, 0.0);
    int chart = p0.chart;

    auto rhs = [&](double t, int in_chart, const Eigen::MatrixXd& y, Eigen::MatrixXd& out) {
        auto [pt, vt] = geodesic_eval(g, t);
        if (pt.chart != in_chart) pt = to_chart(pt, in_chart);
        // velocity in `in_chart`: recompute via transition if needed
        auto [pt2, vraw] = geodesic_eval(g, t);
        std::vector<double> v = vraw;
        if (pt2.chart != in_chart) {
            std::vector<Jet> tj = transition_jets(pt2, in_chart, 1);
            std::vector<double> vv(static_cast<std::size_t>(n), 0.0);
            for (int i = 0; i < n; ++i) {
                vv[i] = 0.0;
                for (int a = 0; a < n; ++a) vv[i] += tj[i].coeffs()[1 + a] * vraw[a];
            }
            v = vv;
        }
        GeomJets G = metric_jets(pt, 1);
        DenseTensor gam = values(G.gamma), gm = values(G.g);
        out = Eigen::MatrixXd::Zero(fib, fib);
        for (int col = 0; col < fib; ++col) {
            const double sg = y(0, col);
            // sigma' = v^a mu_a
            double sp = 0.0;
            for (int a = 0; a < n; ++a) sp += v[a] * y(1 + a, col);
            out(0, col) = sp;
            // mu_b' = v^a Gamma^c_{ab} mu_c - v^a g_ab sigma
            for (int b = 0; b < n; ++b) {
                double acc = 0.0;
                for (int a = 0; a < n; ++a) {
                    for (int c = 0; c < n; ++c) acc += v[a] * gam.at({a, b, c}) * y(1 + c, col);
                    acc -= v[a] * gm.at({a, b}) * sg;
                }
                out(1 + b, col) = acc;
            }
        }
    };

    const double h = t_end / steps;
    Eigen::MatrixXd k1, k2, k3, k4;
    for (int s = 0; s < steps; ++s) {
        const double t = s * h;
        // re-chart if the geodesic midpoint prefers another chart
        auto [pm, vm] = geodesic_eval(g, t + 0.5 * h);
        if (pm.chart != chart) {
            // convert mu rows through the Jacobian d(old)/d(new)
            auto [pc, vc] = geodesic_eval(g, t);
            ChartPoint in_new = to_chart(pc, pm.chart);
            std::vector<Jet> tj = transition_jets(in_new, chart, 1);  // old as fn of new
            Eigen::MatrixXd Jac(n, n);
            for (int i = 0; i < n; ++i)
                for (int a = 0; a < n; ++a) Jac(i, a) = tj[i].coeffs()[1 + a];
            // mu_new_i = mu_old_a * d old_a / d new_i
            Eigen::MatrixXd C = Eigen::MatrixXd::Identity(fib, fib);
            C.block(1, 1, n, n) = Jac.transpose();
            Y = C * Y;
            chart = pm.chart;
        }
        rhs(t, chart, Y, k1);
        rhs(t + 0.5 * h, chart, Y + 0.5 * h * k1, k2);
        rhs(t + 0.5 * h, chart, Y + 0.5 * h * k2, k3);
        rhs(t + h, chart, Y + h * k3, k4);
        Y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    // convert back to the starting chart if needed
    auto [pe, ve] = geodesic_eval(g, t_end);
    if (chart != p0.chart) {
        ChartPoint back = to_chart(pe, p0.chart);
        std::vector<Jet> tj = transition_jets(back, chart, 1);
        Eigen::MatrixXd Jac(n, n);
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < n; ++a) Jac(i, a) = tj[i].coeffs()[1 + a];
        Eigen::MatrixXd C = Eigen::MatrixXd::Identity(fib, fib);
        C.block(1, 1, n, n) = Jac.transpose();
        Y = C * Y;
    }
    return Y;
}

double transport_T_holonomy_defect(const Geodesic& g) {
    const int fib = g.n + 1;
    int steps = 1600;
    Eigen::MatrixXd prev = transport_T(g, 2.0 * M_PI, steps);
    for (int it = 0; it < 4; ++it) {
        steps *= 2;
        Eigen::MatrixXd cur = transport_T(g, 2.0 * M_PI, steps);
        if ((cur - prev).cwiseAbs().maxCoeff() < 1e-9) {
            return (cur - Eigen::MatrixXd::Identity(fib, fib)).cwiseAbs().maxCoeff();
        }
        prev = cur;
    }
    return (prev - Eigen::MatrixXd::Identity(fib, fib)).cwiseAbs().maxCoeff();
}

double transport_T_single_loop_defect(const Geodesic& g) {
    const int fib = g.n + 1;
    Eigen::MatrixXd Y = transport_T(g, M_PI, 3200);
    return (Y + Eigen::MatrixXd::Identity(fib, fib)).cwiseAbs().maxCoeff();
}

// --- completion operator ---

TensorJet mu_slot_jets(const TensorField& omega, const ChartPoint& p, int order) {
    auto geom = geom_at(p, order + 2);
    TensorJet om = omega->eval(p, order + 1);
    TensorJet cd = cov_deriv(om, *geom);  // (c, b, d) = D_c omega_bd
    const int m = p.mdim();
    TensorJet mu(m, 3, Jet::constant(m, cd.data()[0].order(), 0.0));
    mu.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int b = idx[0], c = idx[1], d = idx[2];
        mu[fl] = cd.at({c, b, d}) - cd.at({d, b, c});
    });
    return mu;
}

namespace {

DenseTensor assemble_T_tensor(const TensorField& omega, const ChartPoint& p) {
    auto geom = geom_at(p, 3);
    const int m = p.mdim();
    TensorJet mu = mu_slot_jets(omega, p, 1);
    TensorJet cdmu = cov_deriv(mu, *geom);  // (a, b, c, d) = D_a mu_bcd
    DenseTensor dmu = values(cdmu);
    DenseTensor w = values(omega->eval(p, 0));
    DenseTensor g = values(geom->g), J = values(geom->J_low), Jx = values(geom->J_mix);
    DenseTensor T(m, 4, 0.0);
    T.for_each([&](const std::vector<int>& i, std::size_t fl) {
        const int a = i[0], b = i[1], c = i[2], d = i[3];
        double v = 0.5 * (dmu.at({a, b, c, d}) - dmu.at({b, a, c, d}));
        v += 0.5 * (g.at({c, a}) * w.at({b, d}) - g.at({c, b}) * w.at({a, d}));
        v -= 0.5 * (g.at({d, a}) * w.at({b, c}) - g.at({d, b}) * w.at({a, c}));
        double je = 0.0;
        for (int e = 0; e < m; ++e)
            je += 0.5 * (Jx.at({a, e}) * w.at({b, e}) - Jx.at({b, e}) * w.at({a, e}));
        v += J.at({c, d}) * je;
        T[fl] = v;
    });
    return T;
}

}  // namespace

CompletionResult rho_completion(const TensorField& omega, const ChartPoint& p) {
    auto geom = geom_at(p, 3);
    SymplecticData Sp = symplectic_at(*geom);
    Eigen::MatrixXd F = darboux_frame(Sp);
    DenseTensor T = assemble_T_tensor(omega, p);
    DenseTensor Tf = to_frame(T, F);
    SymplecticData S0 = SymplecticData::standard(p.n);
    PairSplit sp = split_insertions(Tf, S0);
    CompletionResult out;
    out.rho = from_frame(sp.rho, F);
    out.tau = from_frame(sp.tau, F);
    out.X = from_frame(sp.X, F);
    out.precondition_residual = sp.precondition_residual;
    out.residual = sp.residual;
    return out;
}

StructureRows structure_rows(const TensorField& omega, const ChartPoint& p) {
    auto geom = geom_at(p, 4);
    const int m = p.mdim();
    TensorJet om = omega->eval(p, 2);
    TensorJet cdom = cov_deriv(om, *geom);     // (a, b, c) = D_a w_bc
    TensorJet mu = mu_slot_jets(omega, p, 1);  // (b, c, d), order 1
    TensorJet cdmu = cov_deriv(mu, *geom);     // (a, b, c, d)
    CompletionResult comp = rho_completion(omega, p);

    DenseTensor w = values(om), dm = values(cdom), M = values(mu), dM = values(cdmu);
    const DenseTensor& R = comp.rho;
    DenseTensor g = values(geom->g), J = values(geom->J_low), Jx = values(geom->J_mix);
    SymplecticData Sp = symplectic_at(*geom);

    StructureRows out;
    out.row1 = DenseTensor(m, 3, 0.0);
    out.row1.for_each([&](const std::vector<int>& i, std::size_t fl) {
        const int a = i[0], b = i[1], c = i[2];
        out.row1[fl] = 0.5 * (dm.at({a, b, c}) - dm.at({b, a, c})) +
                       0.5 * (M.at({a, b, c}) - M.at({b, a, c}));
    });

    out.row2 = DenseTensor(m, 4, 0.0);
    out.row2.for_each([&](const std::vector<int>& i, std::size_t fl) {
        const int a = i[0], b = i[1], c = i[2], d = i[3];
        double v = 0.5 * (dM.at({a, b, c, d}) - dM.at({b, a, c, d}));
        v += 0.5 * (g.at({c, a}) * w.at({b, d}) - g.at({c, b}) * w.at({a, d}));
        v -= 0.5 * (g.at({d, a}) * w.at({b, c}) - g.at({d, b}) * w.at({a, c}));
        v -= 0.5 * (J.at({c, a}) * R.at({b, d}) - J.at({c, b}) * R.at({a, d}));
        v += 0.5 * (J.at({d, a}) * R.at({b, c}) - J.at({d, b}) * R.at({a, c}));
        v += J.at({c, d}) * 0.5 * (R.at({a, b}) - R.at({b, a}));
        double je = 0.0;
        for (int e = 0; e < m; ++e)
            je += 0.5 * (Jx.at({a, e}) * w.at({b, e}) - Jx.at({b, e}) * w.at({a, e}));
        v += J.at({c, d}) * je;
        out.row2[fl] = v;
    });

    // remove the best J (x) tau part to expose the obstruction component
    {
        std::vector<DenseTensor> cols;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                DenseTensor tau(m, 2, 0.0);
                tau.data()[static_cast<std::size_t>(a) * m + b] = 1.0;
                tau.data()[static_cast<std::size_t>(b) * m + a] = -1.0;
                cols.push_back(tau_insertion_pattern(tau, Sp));
            }
        Eigen::MatrixXd Mfit(static_cast<Eigen::Index>(out.row2.size()),
                             static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c)
            Mfit.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Eigen::VectorXd>(
                cols[c].data().data(), static_cast<Eigen::Index>(cols[c].size()));
        Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(
            out.row2.data().data(), static_cast<Eigen::Index>(out.row2.size()));
        Eigen::VectorXd fit = Mfit.colPivHouseholderQr().solve(rhs);
        Eigen::VectorXd rem = rhs - Mfit * fit;
        out.row2_X = DenseTensor(m, 4, 0.0);
        for (std::size_t k = 0; k < out.row2_X.size(); ++k)
            out.row2_X[k] = rem[static_cast<Eigen::Index>(k)];
    }

    out.split_consistency =
        max_abs(out.row2 - comp.X - tau_insertion_pattern(comp.tau, Sp));

    DenseTensor Xf = nabla_ell_perp_value(omega, p) * 2.0;
    out.x_formula_residual = max_abs(comp.X - Xf);
    return out;
}

namespace {

/// jet-valued assembly of the splitting system for first-order sensitivities
struct JetSplitSystem {
    int m = 0;
    int ncols = 0;
    std::vector<int> pair_a, pair_b;  // tau / W pair bookkeeping
    Eigen::MatrixXd A0;
    std::vector<Eigen::MatrixXd> Ak;
    Eigen::VectorXd b0;
    std::vector<Eigen::VectorXd> bk;
};

JetSplitSystem build_jet_split_system(const TensorField& omega, const ChartPoint& p) {
    auto geom = geom_at(p, 4);
    const int m = p.mdim();
    const int nvars = m;

    // T with order-1 jets
    TensorJet mu = mu_slot_jets(omega, p, 2);
    TensorJet cdmu = cov_deriv(mu, *geom);  // order 1
    TensorJet omj = truncated(omega->eval(p, 1), 1);
    TensorJet g = truncated(geom->g, 1), J = truncated(geom->J_low, 1),
              Jx = truncated(geom->J_mix, 1), Jup = truncated(geom->J_up, 1);
    TensorJet T(m, 4, Jet::constant(nvars, 1, 0.0));
    T.for_each([&](const std::vector<int>& i, std::size_t fl) {
        const int a = i[0], b = i[1], c = i[2], d = i[3];
        Jet v = (cdmu.at({a, b, c, d}) - cdmu.at({b, a, c, d})) * 0.5;
        v += (g.at({c, a}) * omj.at({b, d}) - g.at({c, b}) * omj.at({a, d})) * 0.5;
        v -= (g.at({d, a}) * omj.at({b, c}) - g.at({d, b}) * omj.at({a, c})) * 0.5;
        Jet je = Jet::constant(nvars, 1, 0.0);
        for (int e = 0; e < m; ++e)
            je += (Jx.at({a, e}) * omj.at({b, e}) - Jx.at({b, e}) * omj.at({a, e})) * 0.5;
        v += J.at({c, d}) * je;
        T[fl] = v;
    });

    // unknowns: rho (m^2), tau (pairs), X (pair x pair coordinates)
    JetSplitSystem sys;
    sys.m = m;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
    const int P = static_cast<int>(pairs.size());
    const int nrho = m * m, ntau = P, nX = P * P;
    sys.ncols = nrho + ntau + nX;

    const std::size_t t4 = DenseTensor::pow_size(m, 4);
    // rows: reconstruction (m^4), three-cycle constraint (C(m,3) * m), traces (m^2)
    std::vector<std::array<int, 4>> triples;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c)
                for (int d = 0; d < m; ++d) triples.push_back({a, b, c, d});
    const std::size_t nrows = t4 + triples.size() + static_cast<std::size_t>(m) * m;

    sys.A0 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nrows), sys.ncols);
    sys.Ak.assign(nvars, sys.A0);
    sys.b0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nrows));
    sys.bk.assign(nvars, sys.b0);

    auto put = [&](std::size_t row, int col, const Jet& val) {
        sys.A0(static_cast<Eigen::Index>(row), col) += val.value();
        for (int k = 0; k < nvars; ++k)
            sys.Ak[k](static_cast<Eigen::Index>(row), col) += val.coeffs()[1 + k];
    };

    // W basis value at a full index (a,b,c,d) for pair-pair column (pq, rs)
    auto wval = [&](int a, int b, int c, int d, int pq, int rs) -> double {
        auto [pa, pb] = pairs[pq];
        auto [ra, rb] = pairs[rs];
        double s1 = (a == pa && b == pb) ? 1.0 : (a == pb && b == pa) ? -1.0 : 0.0;
        double s2 = (c == ra && d == rb) ? 1.0 : (c == rb && d == ra) ? -1.0 : 0.0;
        return s1 * s2;
    };

    // reconstruction rows
    std::size_t row = 0;
    std::vector<int> idx(4);
    for (std::size_t fl = 0; fl < t4; ++fl, ++row) {
        std::size_t rem = fl;
        for (int s = 3; s >= 0; --s) {
            idx[s] = static_cast<int>(rem % m);
            rem /= m;
        }
        const int a = idx[0], b = idx[1], c = idx[2], d = idx[3];
        // rho columns: pattern J_c[a rho_b]d - J_d[a rho_b]c - J_cd rho_[ab]
        for (int e = 0; e < m; ++e)
            for (int f = 0; f < m; ++f) {
                Jet coef = Jet::constant(nvars, 1, 0.0);
                if (b == e && d == f) coef += J.at({c, a}) * 0.5;
                if (a == e && d == f) coef -= J.at({c, b}) * 0.5;
                if (b == e && c == f) coef -= J.at({d, a}) * 0.5;
                if (a == e && c == f) coef += J.at({d, b}) * 0.5;
                if (a == e && b == f) coef -= J.at({c, d}) * 0.5;
                if (b == e && a == f) coef += J.at({c, d}) * 0.5;
                if (coef.max_abs_coeff() != 0.0) put(row, e * m + f, coef);
            }
        // tau columns: J_ab tau_cd
        for (int t = 0; t < P; ++t) {
            auto [e, f] = pairs[t];
            if (c == e && d == f) put(row, nrho + t, J.at({a, b}));
            if (c == f && d == e) put(row, nrho + t, -J.at({a, b}));
        }
        // X columns (constants)
        for (int pq = 0; pq < P; ++pq)
            for (int rs = 0; rs < P; ++rs) {
                double v = wval(a, b, c, d, pq, rs);
                if (v != 0.0)
                    sys.A0(static_cast<Eigen::Index>(row), nrho + ntau + pq * P + rs) += v;
            }
        // rhs
        sys.b0[static_cast<Eigen::Index>(row)] = T[fl].value();
        for (int k = 0; k < nvars; ++k)
            sys.bk[k][static_cast<Eigen::Index>(row)] = T[fl].coeffs()[1 + k];
    }

    // three-cycle rows on X (constants): X_[abc]d = 0
    for (const auto& tr : triples) {
        const int a = tr[0], b = tr[1], c = tr[2], d = tr[3];
        const int perms[6][3] = {{a, b, c}, {b, c, a}, {c, a, b}, {b, a, c}, {a, c, b}, {c, b, a}};
        const double sg[6] = {1, 1, 1, -1, -1, -1};
        for (int pq = 0; pq < P; ++pq)
            for (int rs = 0; rs < P; ++rs) {
                double acc = 0.0;
                for (int q = 0; q < 6; ++q)
                    acc += sg[q] * wval(perms[q][0], perms[q][1], perms[q][2], d, pq, rs);
                if (acc != 0.0)
                    sys.A0(static_cast<Eigen::Index>(row), nrho + ntau + pq * P + rs) +=
                        acc / 6.0;
            }
        ++row;
    }

    // trace rows on X: J^{ab}(x) X_abcd = 0
    for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
            for (int pq = 0; pq < P; ++pq) {
                auto [a, b] = pairs[pq];
                // J^{ab} contracted against the skew pair (a<b) gives 2 J^{ab}
                for (int rs = 0; rs < P; ++rs) {
                    double v = wval(a, b, c, d, pq, rs);
                    if (v != 0.0) put(row, nrho + ntau + pq * P + rs, Jup.at({a, b}) * (2.0 * v));
                }
            }
            ++row;
        }

    for (const auto& pr : pairs) {
        sys.pair_a.push_back(pr.first);
        sys.pair_b.push_back(pr.second);
    }
    return sys;
}

}  // namespace

ThirdRowCheck third_row_check(const TensorField& omega, const ChartPoint& p) {
    auto geom = geom_at(p, 4);
    const int m = p.mdim();
    ThirdRowCheck out;

    // rho with first-order jets via sensitivities of the normal equations
    JetSplitSystem sys = build_jet_split_system(omega, p);
    Eigen::MatrixXd N = sys.A0.transpose() * sys.A0;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(N);
    Eigen::VectorXd u0 = ldlt.solve(sys.A0.transpose() * sys.b0);
    Eigen::VectorXd r0 = sys.b0 - sys.A0 * u0;
    TensorJet rho(m, 2, Jet::constant(m, 1, 0.0));
    for (int e = 0; e < m; ++e)
        for (int f = 0; f < m; ++f) rho.at({e, f}) = Jet::constant(m, 1, u0[e * m + f]);
    for (int k = 0; k < m; ++k) {
        Eigen::VectorXd uk = ldlt.solve(sys.Ak[k].transpose() * r0 +
                                        sys.A0.transpose() * (sys.bk[k] - sys.Ak[k] * u0));
        for (int e = 0; e < m; ++e)
            for (int f = 0; f < m; ++f) rho.at({e, f}).coeffs()[1 + k] = uk[e * m + f];
    }

    // row3_{abc} = D_[a rho_b]c + J_[a^e mu_b]ce
    TensorJet mu = mu_slot_jets(omega, p, 1);
    DenseTensor M = values(mu);
    DenseTensor dR = values(cov_deriv(rho, *geom));
    DenseTensor Jx = values(geom->J_mix), J = values(geom->J_low);
    DenseTensor row3(m, 3, 0.0);
    row3.for_each([&](const std::vector<int>& i, std::size_t fl) {
        const int a = i[0], b = i[1], c = i[2];
        double v = 0.5 * (dR.at({a, b, c}) - dR.at({b, a, c}));
        for (int e = 0; e < m; ++e)
            v += 0.5 * (Jx.at({a, e}) * M.at({b, c, e}) - Jx.at({b, e}) * M.at({a, c, e}));
        row3[fl] = v;
    });
    out.row3_scale = max_abs(row3);

    // fit row3 = J_ab theta_c
    {
        Eigen::MatrixXd A(static_cast<Eigen::Index>(row3.size()), m);
        A.setZero();
        row3.for_each([&](const std::vector<int>& i, std::size_t fl) {
            A(static_cast<Eigen::Index>(fl), i[2]) = J.at({i[0], i[1]});
        });
        Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(
            row3.data().data(), static_cast<Eigen::Index>(row3.size()));
        Eigen::VectorXd th = A.colPivHouseholderQr().solve(rhs);
        out.theta_form_residual = (A * th - rhs).lpNorm<Eigen::Infinity>();
    }

    // bracket constraint: -J_d[a P_bc]e + J_e[a P_bc]d - J_de P_[abc] must lie
    // in the span of J_[ab psi_c]de
    {
        auto anti3 = [&](const DenseTensor& t) { return t.antisymmetrized({0, 1, 2}); };
        DenseTensor T1(m, 5, 0.0), T2(m, 5, 0.0), T3(m, 5, 0.0);
        T1.for_each([&](const std::vector<int>& i, std::size_t fl) {
            T1[fl] = J.at({i[3], i[0]}) * row3.at({i[1], i[2], i[4]});
        });
        T2.for_each([&](const std::vector<int>& i, std::size_t fl) {
            T2[fl] = J.at({i[4], i[0]}) * row3.at({i[1], i[2], i[3]});
        });
        T3.for_each([&](const std::vector<int>& i, std::size_t fl) {
            T3[fl] = J.at({i[3], i[4]}) * row3.at({i[0], i[1], i[2]});
        });
        DenseTensor lhs = anti3(T1) * -1.0 + anti3(T2) - anti3(T3);

        // candidate span J_[ab psi_c]de over psi with (d e) skew
        std::vector<Eigen::VectorXd> cols;
        for (int c0 = 0; c0 < m; ++c0)
            for (int d0 = 0; d0 < m; ++d0)
                for (int e0 = d0 + 1; e0 < m; ++e0) {
                    DenseTensor cand(m, 5, 0.0);
                    cand.for_each([&](const std::vector<int>& i, std::size_t fl) {
                        double psi = 0.0;
                        if (i[2] == c0 && i[3] == d0 && i[4] == e0) psi = 1.0;
                        if (i[2] == c0 && i[3] == e0 && i[4] == d0) psi = -1.0;
                        cand[fl] = J.at({i[0], i[1]}) * psi;
                    });
                    cand = anti3(cand);
                    cols.push_back(Eigen::Map<const Eigen::VectorXd>(
                        cand.data().data(), static_cast<Eigen::Index>(cand.size())));
                }
        Eigen::MatrixXd A(static_cast<Eigen::Index>(lhs.size()),
                          static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) A.col(static_cast<Eigen::Index>(c)) = cols[c];
        Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(
            lhs.data().data(), static_cast<Eigen::Index>(lhs.size()));
        Eigen::VectorXd fit = A.colPivHouseholderQr().solve(rhs);
        out.constraint_residual = (A * fit - rhs).lpNorm<Eigen::Infinity>();
    }
    return out;
}

}  // namespace cpx

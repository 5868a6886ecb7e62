#include "cpx/geometry.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "cpx/symmetry.hpp"

namespace cpx {

namespace {

///  h_{jk} = [(1+u) delta_jk - conj(w_j) w_k] / (1+u)^2  for the complex
///  projective chart; the real metric blocks are A = Re h, B = Im h:
///  g = [[A, B], [-B, A]],  J = [[-B, A], [-A, -B]].
void fubini_study_blocks(const ChartPoint& p, int order, std::vector<Jet>& A,
                         std::vector<Jet>& B) {
    const int n = p.n;
    const int m = 2 * n;
    std::vector<CJet> w(n);
    for (int j = 0; j < n; ++j)
        w[j] = {Jet::variable(m, order, j, p.x[j]), Jet::variable(m, order, n + j, p.x[n + j])};
    Jet u = Jet::constant(m, order, 0.0);
    for (int j = 0; j < n; ++j) u += w[j].norm2();
    Jet s = u + 1.0;
    Jet inv_s2 = (s * s).reciprocal();
    A.assign(static_cast<std::size_t>(n) * n, u * 0.0);
    B.assign(static_cast<std::size_t>(n) * n, u * 0.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            CJet h = w[j].conj() * w[k] * -1.0;
            if (j == k) h.re += s;
            h = {h.re * inv_s2, h.im * inv_s2};
            A[static_cast<std::size_t>(j) * n + k] = h.re;
            B[static_cast<std::size_t>(j) * n + k] = h.im;
        }
}

}  // namespace

GeomJets metric_jets(const ChartPoint& p, int order) {
    GeomJets G;
    G.p = p;
    G.order = order;
    const int m = p.mdim();
    Jet zero = Jet::constant(m, order, 0.0);

    if (p.space == Space::CP) {
        const int n = p.n;
        std::vector<Jet> A, B;
        fubini_study_blocks(p, order, A, B);
        G.g = TensorJet(m, 2, zero);
        G.J_low = TensorJet(m, 2, zero);
        auto a = [&](int j, int k) { return A[static_cast<std::size_t>(j) * n + k]; };
        auto b = [&](int j, int k) { return B[static_cast<std::size_t>(j) * n + k]; };
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                G.g.at({j, k}) = a(j, k);
                G.g.at({j, n + k}) = b(j, k);
                G.g.at({n + j, k}) = -b(j, k);
                G.g.at({n + j, n + k}) = a(j, k);
                G.J_low.at({j, k}) = -b(j, k);
                G.J_low.at({j, n + k}) = a(j, k);
                G.J_low.at({n + j, k}) = -a(j, k);
                G.J_low.at({n + j, n + k}) = -b(j, k);
            }
    } else {
        G.g = TensorJet(m, 2, zero);
        std::vector<Jet> x(m);
        for (int j = 0; j < m; ++j) x[j] = Jet::variable(m, order, j, p.x[j]);
        Jet u = zero;
        for (int j = 0; j < m; ++j) u += x[j] * x[j];
        Jet s = u + 1.0;
        Jet inv_s2 = (s * s).reciprocal();
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                Jet h = x[j] * x[k] * -1.0;
                if (j == k) h += s;
                G.g.at({j, k}) = h * inv_s2;
            }
    }

    G.g_up = jet_matrix_inverse(G.g);
    if (p.space == Space::CP) {
        const int mm = m;
        G.J_up = TensorJet(mm, 2, zero);
        G.J_mix = TensorJet(mm, 2, zero);
        for (int a = 0; a < mm; ++a)
            for (int bb = 0; bb < mm; ++bb) {
                Jet ju = zero, jx = zero;
                for (int c = 0; c < mm; ++c) {
                    jx += G.J_low.at({a, c}) * G.g_up.at({bb, c});
                    for (int d = 0; d < mm; ++d)
                        ju += G.g_up.at({a, c}) * G.g_up.at({bb, d}) * G.J_low.at({c, d});
                }
                G.J_up.at({a, bb}) = ju;
                G.J_mix.at({a, bb}) = jx;
            }
    }

    // Christoffels at order-1
    const int om1 = order > 0 ? order - 1 : 0;
    TensorJet dg(m, 3, Jet::constant(m, om1, 0.0));
    for (int d = 0; d < m; ++d)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) dg.at({d, a, b}) = G.g.at({a, b}).deriv(d);
    TensorJet gu1 = truncated(G.g_up, om1);
    G.gamma = TensorJet(m, 3, Jet::constant(m, om1, 0.0));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int e = 0; e < m; ++e) {
                Jet s2 = Jet::constant(m, om1, 0.0);
                for (int c = 0; c < m; ++c)
                    s2 += gu1.at({e, c}) * (dg.at({a, b, c}) + dg.at({b, a, c}) - dg.at({c, a, b}));
                G.gamma.at({a, b, e}) = s2 * 0.5;
            }
    return G;
}

TensorJet GeomJets::riemann_lower() const {
    const int m = p.mdim();
    const int om2 = order >= 2 ? order - 2 : 0;
    Jet zero = Jet::constant(m, om2, 0.0);
    TensorJet dG(m, 4, zero);  // (d, a, b, e) = partial_d Gamma^e_{ab}
    for (int d = 0; d < m; ++d)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int e = 0; e < m; ++e) dG.at({d, a, b, e}) = gamma.at({a, b, e}).deriv(d);
    TensorJet gm = truncated(gamma, om2);
    TensorJet gl = truncated(g, om2);

    TensorJet Rmixed(m, 4, zero);  // (a, b, c, f) = R_abc{}^f
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int f = 0; f < m; ++f) {
                    Jet acc = dG.at({b, a, c, f}) - dG.at({a, b, c, f});
                    for (int e = 0; e < m; ++e)
                        acc += gm.at({a, c, e}) * gm.at({b, e, f}) -
                               gm.at({b, c, e}) * gm.at({a, e, f});
                    Rmixed.at({a, b, c, f}) = acc;
                }
    TensorJet R(m, 4, zero);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int d = 0; d < m; ++d) {
                    Jet acc = zero;
                    for (int f = 0; f < m; ++f) acc += Rmixed.at({a, b, c, f}) * gl.at({f, d});
                    R.at({a, b, c, d}) = acc;
                }
    return R;
}

std::shared_ptr<const GeomJets> geom_at(const ChartPoint& p, int order) {
    struct Key {
        int space, n, chart, order;
        std::vector<double> x;
        bool operator<(const Key& o) const {
            return std::tie(space, n, chart, order, x) < std::tie(o.space, o.n, o.chart, o.order, o.x);
        }
    };
    static std::map<Key, std::shared_ptr<const GeomJets>> cache;
    static std::mutex mtx;
    Key key{static_cast<int>(p.space), p.n, p.chart, order, p.x};
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (cache.size() > 4096) cache.clear();
    auto sp = std::make_shared<const GeomJets>(metric_jets(p, order));
    cache.emplace(std::move(key), sp);
    return sp;
}

SymplecticData symplectic_at(const GeomJets& geom) {
    if (geom.p.space != Space::CP) throw std::logic_error("symplectic_at: CP only");
    return SymplecticData::from_gJ(values(geom.g), values(geom.J_low));
}

DenseTensor riemann_at(const ChartPoint& p) {
    return values(metric_jets(p, 2).riemann_lower());
}

double verify_curvature_formula(const ChartPoint& p) {
    GeomJets G = metric_jets(p, 2);
    DenseTensor R = values(G.riemann_lower());
    DenseTensor g = values(G.g);
    const int m = p.mdim();
    DenseTensor F(m, 4, 0.0);
    if (p.space == Space::RP) {
        F.for_each([&](const std::vector<int>& i, std::size_t fl) {
            const int a = i[0], b = i[1], c = i[2], d = i[3];
            F[fl] = g.at({a, c}) * g.at({b, d}) - g.at({b, c}) * g.at({a, d});
        });
    } else {
        DenseTensor J = values(G.J_low);
        F.for_each([&](const std::vector<int>& i, std::size_t fl) {
            const int a = i[0], b = i[1], c = i[2], d = i[3];
            F[fl] = g.at({a, c}) * g.at({b, d}) - g.at({b, c}) * g.at({a, d}) +
                    J.at({a, c}) * J.at({b, d}) - J.at({b, c}) * J.at({a, d}) +
                    2.0 * J.at({a, b}) * J.at({c, d});
        });
    }
    return max_abs(R - F);
}

Eigen::VectorXcd homogeneous(const ChartPoint& p) {
    const int n = p.n;
    Eigen::VectorXcd z(n + 1);
    int t = 0;
    for (int j = 0; j <= n; ++j) {
        if (j == p.chart) {
            z[j] = 1.0;
        } else {
            if (p.space == Space::CP)
                z[j] = std::complex<double>(p.x[t], p.x[n + t]);
            else
                z[j] = p.x[t];
            ++t;
        }
    }
    return z / z.norm();
}

int best_chart(const Eigen::VectorXcd& z) {
    int c = 0;
    for (int j = 1; j < z.size(); ++j)
        if (std::abs(z[j]) > std::abs(z[c])) c = j;
    return c;
}

ChartPoint from_homogeneous(Space space, int n, const Eigen::VectorXcd& z) {
    ChartPoint p;
    p.space = space;
    p.n = n;
    p.chart = best_chart(z);
    p.x.assign(space == Space::CP ? 2 * n : n, 0.0);
    int t = 0;
    for (int j = 0; j <= n; ++j) {
        if (j == p.chart) continue;
        std::complex<double> w = z[j] / z[p.chart];
        p.x[t] = w.real();
        if (space == Space::CP) p.x[n + t] = w.imag();
        ++t;
    }
    return p;
}

double distance(const ChartPoint& a, const ChartPoint& b) {
    Eigen::VectorXcd za = homogeneous(a), zb = homogeneous(b);
    std::complex<double> ip = za.dot(zb);  // Eigen dot conjugates the first argument
    // angle via the orthogonal component: well conditioned near zero
    Eigen::VectorXcd perp = zb - ip * za;
    return std::atan2(perp.norm(), std::abs(ip));
}

std::vector<CJet> homogeneous_jets(const ChartPoint& p, int order) {
    const int n = p.n;
    const int m = p.mdim();
    std::vector<CJet> z(static_cast<std::size_t>(n) + 1);
    int t = 0;
    for (int j = 0; j <= n; ++j) {
        if (j == p.chart) {
            z[j] = CJet::constant(m, order, 1.0, 0.0);
        } else {
            if (p.space == Space::CP)
                z[j] = {Jet::variable(m, order, t, p.x[t]),
                        Jet::variable(m, order, n + t, p.x[n + t])};
            else
                z[j] = {Jet::variable(m, order, t, p.x[t]), Jet::constant(m, order, 0.0)};
            ++t;
        }
    }
    return z;
}

std::vector<Jet> chart_jets_from_homogeneous(const std::vector<CJet>& z, Space space, int n,
                                             int* out_chart, const int* forced_chart) {
    int c = 0;
    if (forced_chart) {
        c = *forced_chart;
    } else {
        double best = -1.0;
        for (int j = 0; j <= n; ++j) {
            double v = std::hypot(z[j].re.value(), z[j].im.value());
            if (v > best) {
                best = v;
                c = j;
            }
        }
    }
    if (out_chart) *out_chart = c;
    if (std::hypot(z[c].re.value(), z[c].im.value()) < 1e-12)
        throw std::runtime_error("chart_jets_from_homogeneous: point invisible in chart");

    std::vector<Jet> out(space == Space::CP ? 2 * n : n, z[0].re * 0.0);
    int t = 0;
    for (int j = 0; j <= n; ++j) {
        if (j == c) continue;
        CJet w = z[j] / z[c];
        out[t] = w.re;
        if (space == Space::CP) out[n + t] = w.im;
        ++t;
    }
    return out;
}

ChartPoint to_chart(const ChartPoint& p, int new_chart) {
    Eigen::VectorXcd z = homogeneous(p);
    ChartPoint q;
    q.space = p.space;
    q.n = p.n;
    q.chart = new_chart;
    q.x.assign(p.mdim(), 0.0);
    if (std::abs(z[new_chart]) < 1e-12) throw std::runtime_error("to_chart: invisible point");
    int t = 0;
    for (int j = 0; j <= p.n; ++j) {
        if (j == new_chart) continue;
        std::complex<double> w = z[j] / z[new_chart];
        q.x[t] = w.real();
        if (p.space == Space::CP) q.x[p.n + t] = w.imag();
        ++t;
    }
    return q;
}

std::vector<Jet> transition_jets(const ChartPoint& p, int new_chart, int order) {
    auto z = homogeneous_jets(p, order);
    int c = new_chart;
    return chart_jets_from_homogeneous(z, p.space, p.n, nullptr, &c);
}

TensorJet cov_deriv(const TensorJet& t, const GeomJets& geom) {
    const int m = t.dim();
    const int k = t.valence();
    const int r = t.data()[0].order();
    if (r < 1) throw std::logic_error("cov_deriv: insufficient jet order");
    const int ro = r - 1;
    if (geom.gamma.data()[0].order() < ro)
        throw std::logic_error("cov_deriv: geometry jets too shallow");
    TensorJet gam = truncated(geom.gamma, ro);
    TensorJet tlow = truncated(t, ro);
    TensorJet out(m, k + 1, Jet::constant(m, ro, 0.0));
    std::vector<int> src(k);
    out.for_each([&](const std::vector<int>& idx, std::size_t fl) {
        const int a = idx[0];
        for (int s = 0; s < k; ++s) src[s] = idx[s + 1];
        Jet acc = t.at(src).deriv(a);
        for (int s = 0; s < k; ++s) {
            const int keep = src[s];
            for (int e = 0; e < m; ++e) {
                src[s] = e;
                acc -= gam.at({a, keep, e}) * tlow.at(src);
            }
            src[s] = keep;
        }
        out[fl] = acc;
    });
    return out;
}

Eigen::MatrixXd frame_at(const GeomJets& geom) {
    const int m = geom.p.mdim();
    if (geom.p.space == Space::CP) return darboux_frame(symplectic_at(geom));
    // plain g-orthonormalisation
    DenseTensor gv = values(geom.g);
    Eigen::MatrixXd g(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) g(a, b) = gv.at({a, b});
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    Eigen::MatrixXd L = llt.matrixL();
    return L.transpose().inverse();  // columns F_i with F^T g F = I
}

}  // namespace cpx

#include "cpx/symplectic.hpp"

#include <complex>

#include "cpx/rng.hpp"

namespace cpx {

SymplecticData SymplecticData::standard(int n) {
    const int m = 2 * n;
    DenseTensor g(m, 2, 0.0), J(m, 2, 0.0);
    for (int i = 0; i < m; ++i) g.data()[static_cast<std::size_t>(i) * m + i] = 1.0;
    for (int i = 0; i < n; ++i) {
        J.data()[static_cast<std::size_t>(i) * m + (n + i)] = 1.0;
        J.data()[static_cast<std::size_t>(n + i) * m + i] = -1.0;
    }
    return from_gJ(g, J);
}

SymplecticData SymplecticData::from_gJ(const DenseTensor& g, const DenseTensor& J) {
    const int m = g.dim();
    SymplecticData S;
    S.n = m / 2;
    S.g_lower = g;
    S.J_lower = J;

    Eigen::MatrixXd gm(m, m), Jm(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            gm(a, b) = g.data()[static_cast<std::size_t>(a) * m + b];
            Jm(a, b) = J.data()[static_cast<std::size_t>(a) * m + b];
        }
    Eigen::MatrixXd gu = gm.inverse();
    Eigen::MatrixXd Ju = gu * Jm * gu.transpose();  // J^{ab} = g^{ac} g^{bd} J_{cd}
    Eigen::MatrixXd Jx = Jm * gu.transpose();       // J_a{}^b = g^{bc} J_{ac}

    S.g_upper = DenseTensor(m, 2, 0.0);
    S.J_upper = DenseTensor(m, 2, 0.0);
    S.J_mix = DenseTensor(m, 2, 0.0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            S.g_upper.data()[static_cast<std::size_t>(a) * m + b] = gu(a, b);
            S.J_upper.data()[static_cast<std::size_t>(a) * m + b] = Ju(a, b);
            S.J_mix.data()[static_cast<std::size_t>(a) * m + b] = Jx(a, b);
        }
    return S;
}

double SymplecticData::consistency_residual() const {
    const int m = dim();
    double r = 0.0;
    auto JL = [&](int a, int b) { return J_lower.data()[static_cast<std::size_t>(a) * m + b]; };
    auto JU = [&](int a, int b) { return J_upper.data()[static_cast<std::size_t>(a) * m + b]; };
    auto JX = [&](int a, int b) { return J_mix.data()[static_cast<std::size_t>(a) * m + b]; };
    auto G = [&](int a, int b) { return g_lower.data()[static_cast<std::size_t>(a) * m + b]; };
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            double d1 = 0.0, d2 = 0.0;
            for (int c = 0; c < m; ++c) {
                d1 += JU(a, c) * JL(b, c);  // J^{ac} J_{bc} = delta
                d2 += JX(a, c) * JL(b, c);  // J_a{}^c J_{bc} = g_ab
            }
            r = std::max(r, std::abs(d1 - (a == b ? 1.0 : 0.0)));
            r = std::max(r, std::abs(d2 - G(a, b)));
            r = std::max(r, std::abs(JL(a, b) + JL(b, a)));
        }
    return r;
}

DenseTensor j_trace(const DenseTensor& t, int i, int j, const SymplecticData& S) {
    if (i == j || i < 0 || j < 0 || i >= t.valence() || j >= t.valence())
        throw std::out_of_range("j_trace: bad slots");
    return t.traced(i, j, S.J_upper);
}

double LagrangianFrame::isotropy_residual(const SymplecticData& S) const {
    const int m = static_cast<int>(basis.rows());
    double r = 0.0;
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) {
            double s = 0.0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    s += basis(a, i) * basis(b, j) *
                         S.J_lower.data()[static_cast<std::size_t>(a) * m + b];
            r = std::max(r, std::abs(s));
        }
    return r;
}

LagrangianFrame standard_lagrangian(int n) {
    LagrangianFrame F;
    F.basis = Eigen::MatrixXd::Zero(2 * n, n);
    for (int i = 0; i < n; ++i) F.basis(i, i) = 1.0;
    return F;
}

namespace {

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
    Eigen::MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rng.cnormal();
    // Gram-Schmidt columns
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) A.col(j) -= A.col(k).dot(A.col(j)) * A.col(k);
        A.col(j) /= A.col(j).norm();
    }
    return A;
}

}  // namespace

LagrangianFrame random_lagrangian(int n, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXcd U = haar_unitary(n, rng);
    // U = A + iB acts on R^{2n} (packing x_1..x_n, y_1..y_n) as [[A,-B],[B,A]];
    // the frame is the image of span{e_1..e_n}.
    LagrangianFrame F;
    F.basis = Eigen::MatrixXd(2 * n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            F.basis(i, j) = U(i, j).real();
            F.basis(n + i, j) = U(i, j).imag();
        }
    return F;
}

DenseTensor restrict_to_lagrangian(const DenseTensor& psi, const LagrangianFrame& F) {
    const int m = psi.dim();
    const int n = F.n();
    const int k = psi.valence();
    // contract slots one at a time; intermediate shape [n]^s x [m]^{k-s}
    std::vector<double> cur = psi.data();
    for (int s = 0; s < k; ++s) {
        const std::size_t lead = DenseTensor::pow_size(n, s);
        const std::size_t tail = DenseTensor::pow_size(m, k - s - 1);
        std::vector<double> next(lead * n * tail, 0.0);
        for (std::size_t L = 0; L < lead; ++L)
            for (int i = 0; i < n; ++i)
                for (int a = 0; a < m; ++a) {
                    const double f = F.basis(a, i);
                    if (f == 0.0) continue;
                    const std::size_t src = (L * m + a) * tail;
                    const std::size_t dst = (L * n + i) * tail;
                    for (std::size_t T = 0; T < tail; ++T) next[dst + T] += f * cur[src + T];
                }
        cur = std::move(next);
    }
    DenseTensor r(n, k, 0.0);
    r.data() = std::move(cur);
    return r;
}

double vanishes_on_all_lagrangians(const DenseTensor& psi, int trials, std::uint64_t seed,
                                   const SymplecticData& S) {
    Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        LagrangianFrame F = random_lagrangian(S.n, rng.bits());
        worst = std::max(worst, max_abs(restrict_to_lagrangian(psi, F)));
    }
    return worst;
}

}  // namespace cpx

#include "cpx/embedding.hpp"

#include <cmath>

#include "cpx/rng.hpp"

namespace cpx {

double embedding_unitarity_residual(const ModelEmbedding& e) {
    const int d = e.n() + 1;
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(d, d);
    double r = (e.U.adjoint() * e.U - I).cwiseAbs().maxCoeff();
    return r + std::abs(e.U.determinant() - std::complex<double>(1.0, 0.0));
}

ModelEmbedding standard_embedding(int n) {
    ModelEmbedding e;
    e.U = Eigen::MatrixXcd::Identity(n + 1, n + 1);
    return e;
}

Eigen::MatrixXcd haar_su(int dim, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXcd A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) A(i, j) = rng.cnormal();
    for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < j; ++k) A.col(j) -= A.col(k).dot(A.col(j)) * A.col(k);
        A.col(j) /= A.col(j).norm();
    }
    std::complex<double> det = A.determinant();
    A *= std::polar(1.0, -std::arg(det) / dim);
    return A;
}

Eigen::MatrixXcd random_su_algebra(int dim, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXcd A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) A(i, j) = rng.cnormal();
    Eigen::MatrixXcd H = (A - A.adjoint()) * 0.5;  // anti-Hermitian
    std::complex<double> tr = H.trace() / static_cast<double>(dim);
    for (int i = 0; i < dim; ++i) H(i, i) -= tr;
    return H;
}

ModelEmbedding random_embedding(int n, std::uint64_t seed) {
    ModelEmbedding e;
    e.U = haar_su(n + 1, seed);
    return e;
}

ChartPoint embed_point(const ModelEmbedding& e, const ChartPoint& rp) {
    if (rp.space != Space::RP) throw std::invalid_argument("embed_point: expects an RP point");
    Eigen::VectorXcd z = e.U * homogeneous(rp);
    return from_homogeneous(Space::CP, rp.n, z);
}

std::vector<Jet> embedding_chart_jets(const ModelEmbedding& e, const ChartPoint& rp, int order,
                                      int* out_chart) {
    const int n = rp.n;
    auto lift = homogeneous_jets(rp, order);  // n+1 CJets in n real vars
    std::vector<CJet> img(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        CJet acc = CJet::constant(n, order, 0.0, 0.0);
        for (int j = 0; j <= n; ++j) {
            const std::complex<double> u = e.U(i, j);
            acc = acc + CJet{lift[j].re * u.real() - lift[j].im * u.imag(),
                             lift[j].re * u.imag() + lift[j].im * u.real()};
        }
        img[i] = acc;
    }
    return chart_jets_from_homogeneous(img, Space::CP, n, out_chart);
}

Eigen::MatrixXd embedding_jacobian(const ModelEmbedding& e, const ChartPoint& rp, int* out_chart) {
    const int n = rp.n;
    auto jets = embedding_chart_jets(e, rp, 1, out_chart);
    Eigen::MatrixXd Jac(2 * n, n);
    for (int a = 0; a < 2 * n; ++a)
        for (int i = 0; i < n; ++i) Jac(a, i) = jets[a].coeffs()[1 + i];
    return Jac;
}

DenseTensor pullback_at(const ModelEmbedding& e, const ChartPoint& rp, const DenseTensor& t) {
    int chart = 0;
    Eigen::MatrixXd Jac = embedding_jacobian(e, rp, &chart);
    const int n = rp.n;
    const int m = 2 * n;
    const int k = t.valence();
    std::vector<double> cur = t.data();
    for (int s = 0; s < k; ++s) {
        const std::size_t lead = DenseTensor::pow_size(n, s);
        const std::size_t tail = DenseTensor::pow_size(m, k - s - 1);
        std::vector<double> next(lead * n * tail, 0.0);
        for (std::size_t L = 0; L < lead; ++L)
            for (int i = 0; i < n; ++i)
                for (int a = 0; a < m; ++a) {
                    const double f = Jac(a, i);
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

ChartPoint act_point(const Eigen::MatrixXcd& U, const ChartPoint& p) {
    return from_homogeneous(p.space, p.n, U * homogeneous(p));
}

std::vector<Jet> isometry_chart_jets(const Eigen::MatrixXcd& U, const ChartPoint& p, int order,
                                     int* out_chart) {
    const int n = p.n;
    auto lift = homogeneous_jets(p, order);
    std::vector<CJet> img(static_cast<std::size_t>(n) + 1);
    const int m = p.mdim();
    for (int i = 0; i <= n; ++i) {
        CJet acc = CJet::constant(m, order, 0.0, 0.0);
        for (int j = 0; j <= n; ++j) {
            const std::complex<double> u = U(i, j);
            acc = acc + CJet{lift[j].re * u.real() - lift[j].im * u.imag(),
                             lift[j].re * u.imag() + lift[j].im * u.real()};
        }
        img[i] = acc;
    }
    return chart_jets_from_homogeneous(img, p.space, n, out_chart);
}

}  // namespace cpx

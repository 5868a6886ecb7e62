#include "cpx/pair_split.hpp"

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <mutex>

#include "cpx/symmetry.hpp"

namespace cpx {

namespace {

double J(const SymplecticData& S, int a, int b) {
    return S.J_lower.data()[static_cast<std::size_t>(a) * S.dim() + b];
}

Eigen::VectorXd flat(const DenseTensor& t) {
    return Eigen::Map<const Eigen::VectorXd>(t.data().data(), static_cast<Eigen::Index>(t.size()));
}

DenseTensor unflat(const Eigen::VectorXd& v, int dim, int valence) {
    DenseTensor t(dim, valence, 0.0);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = v[static_cast<Eigen::Index>(k)];
    return t;
}

}  // namespace

DenseTensor psi_insertion_pattern(const DenseTensor& Psi, const SymplecticData& S) {
    const int m = S.dim();
    DenseTensor r(m, 4, 0.0);
    auto P = [&](int a, int b) { return Psi.data()[static_cast<std::size_t>(a) * m + b]; };
    r.for_each([&](const std::vector<int>& i, std::size_t fl) {
        const int a = i[0], b = i[1], c = i[2], d = i[3];
        r[fl] = P(a, c) * J(S, b, d) - P(b, c) * J(S, a, d) - P(a, d) * J(S, b, c) +
                P(b, d) * J(S, a, c) + 2.0 * P(a, b) * J(S, c, d) + 2.0 * P(c, d) * J(S, a, b);
    });
    return r;
}

DenseTensor scalar_insertion_pattern(const SymplecticData& S) {
    const int m = S.dim();
    DenseTensor r(m, 4, 0.0);
    r.for_each([&](const std::vector<int>& i, std::size_t fl) {
        const int a = i[0], b = i[1], c = i[2], d = i[3];
        r[fl] = J(S, a, c) * J(S, b, d) - J(S, b, c) * J(S, a, d) + 2.0 * J(S, a, b) * J(S, c, d);
    });
    return r;
}

DenseTensor riemann_from_parts(const RiemannDecomposition& d, const SymplecticData& S) {
    return d.X + psi_insertion_pattern(d.Psi, S) + scalar_insertion_pattern(S) * d.L;
}

RiemannDecomposition decompose_symplectic_riemann(const DenseTensor& R, const SymplecticData& S) {
    const int m = S.dim();
    if (R.valence() != 4 || R.dim() != m)
        throw std::invalid_argument("decompose_symplectic_riemann: bad shape");
    if (skew_pair_symmetry_residual(R, 2) > 1e-8 * std::max(1.0, max_abs(R)))
        throw std::invalid_argument("decompose_symplectic_riemann: input lacks Riemann symmetries");

    RiemannDecomposition out;
    out.X = perp_project(R, SymmetryClass::riemann(), S);
    DenseTensor rem = R - out.X;

    // solve rem = psi_pattern(Psi) + L * scalar_pattern in least squares;
    // the pair (Psi, L) is made unique by removing the J-trace of Psi
    std::vector<DenseTensor> cols;
    std::vector<std::pair<int, int>> skew_idx;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            DenseTensor Psi(m, 2, 0.0);
            Psi.data()[static_cast<std::size_t>(a) * m + b] = 1.0;
            Psi.data()[static_cast<std::size_t>(b) * m + a] = -1.0;
            cols.push_back(psi_insertion_pattern(Psi, S));
            skew_idx.emplace_back(a, b);
        }
    cols.push_back(scalar_insertion_pattern(S));

    Eigen::MatrixXd M(static_cast<Eigen::Index>(rem.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) M.col(static_cast<Eigen::Index>(c)) = flat(cols[c]);
    Eigen::VectorXd sol = M.colPivHouseholderQr().solve(flat(rem));

    DenseTensor Psi(m, 2, 0.0);
    for (std::size_t c = 0; c < skew_idx.size(); ++c) {
        auto [a, b] = skew_idx[c];
        Psi.data()[static_cast<std::size_t>(a) * m + b] += sol[static_cast<Eigen::Index>(c)];
        Psi.data()[static_cast<std::size_t>(b) * m + a] -= sol[static_cast<Eigen::Index>(c)];
    }
    double L = sol[static_cast<Eigen::Index>(cols.size() - 1)];

    // canonicalise: push the J-trace part of Psi into L
    double lambda = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            lambda += S.J_upper.data()[static_cast<std::size_t>(a) * m + b] *
                      Psi.data()[static_cast<std::size_t>(a) * m + b];
    lambda /= 2.0 * S.n;
    Psi -= S.J_lower * lambda;
    L += 2.0 * lambda;

    out.Psi = Psi;
    out.L = L;
    return out;
}

DenseTensor rho_insertion_pattern(const DenseTensor& rho, const SymplecticData& S) {
    const int m = S.dim();
    DenseTensor r(m, 4, 0.0);
    auto R = [&](int a, int b) { return rho.data()[static_cast<std::size_t>(a) * m + b]; };
    r.for_each([&](const std::vector<int>& i, std::size_t fl) {
        const int a = i[0], b = i[1], c = i[2], d = i[3];
        r[fl] = 0.5 * (J(S, c, a) * R(b, d) - J(S, c, b) * R(a, d))    // J_c[a rho_b]d
                - 0.5 * (J(S, d, a) * R(b, c) - J(S, d, b) * R(a, c))  // - J_d[a rho_b]c
                - J(S, c, d) * 0.5 * (R(a, b) - R(b, a));              // - J_cd rho_[ab]
    });
    return r;
}

DenseTensor tau_insertion_pattern(const DenseTensor& tau, const SymplecticData& S) {
    const int m = S.dim();
    DenseTensor r(m, 4, 0.0);
    r.for_each([&](const std::vector<int>& i, std::size_t fl) {
        r[fl] = J(S, i[0], i[1]) * tau.data()[static_cast<std::size_t>(i[2]) * m + i[3]];
    });
    return r;
}

namespace {

/// Cached standard-frame machinery for the splitting at half-dimension n.
struct SplitCache {
    int m;
    std::vector<DenseTensor> rho_cols, tau_cols, H_basis;
    std::vector<DenseTensor> bianchi_ins_cols;  // J_[ab psi_c]d for psi basis
    Eigen::MatrixXd M;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> M_qr;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> precond_qr;
    Eigen::MatrixXd precond_M;
    double sigma_min = 0.0;
    SplitDims dims;
};

const SplitCache& split_cache(int n) {
    static std::map<int, std::unique_ptr<SplitCache>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;

    auto C = std::make_unique<SplitCache>();
    const int m = 2 * n;
    C->m = m;
    SymplecticData S = SymplecticData::standard(n);

    // rho columns
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            DenseTensor rho(m, 2, 0.0);
            rho.data()[static_cast<std::size_t>(a) * m + b] = 1.0;
            C->rho_cols.push_back(rho_insertion_pattern(rho, S));
        }
    // tau columns (skew basis)
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            DenseTensor tau(m, 2, 0.0);
            tau.data()[static_cast<std::size_t>(a) * m + b] = 1.0;
            tau.data()[static_cast<std::size_t>(b) * m + a] = -1.0;
            C->tau_cols.push_back(tau_insertion_pattern(tau, S));
        }

    // pair-skew basis of W = Lambda^2 x Lambda^2
    std::vector<DenseTensor> Wbasis;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int d = c + 1; d < m; ++d) {
                    DenseTensor w(m, 4, 0.0);
                    auto set = [&](int p, int q, int r, int s, double v) {
                        w.data()[((static_cast<std::size_t>(p) * m + q) * m + r) * m + s] = v;
                    };
                    set(a, b, c, d, 1.0);
                    set(b, a, c, d, -1.0);
                    set(a, b, d, c, -1.0);
                    set(b, a, d, c, 1.0);
                    Wbasis.push_back(w);
                }

    // constraints on W defining H: vanishing 3-cycle part and J-trace
    const std::size_t t4 = DenseTensor::pow_size(m, 4);
    const std::size_t t2 = DenseTensor::pow_size(m, 2);
    Eigen::MatrixXd constraints(static_cast<Eigen::Index>(t4 + t2),
                                static_cast<Eigen::Index>(Wbasis.size()));
    for (std::size_t c = 0; c < Wbasis.size(); ++c) {
        DenseTensor b3 = Wbasis[c].antisymmetrized({0, 1, 2});
        DenseTensor tr = j_trace(Wbasis[c], 0, 1, S);
        Eigen::VectorXd col(static_cast<Eigen::Index>(t4 + t2));
        col.head(static_cast<Eigen::Index>(t4)) = flat(b3);
        col.tail(static_cast<Eigen::Index>(t2)) = flat(tr);
        constraints.col(static_cast<Eigen::Index>(c)) = col;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(constraints);
    lu.setThreshold(1e-10);
    Eigen::MatrixXd null = lu.kernel();  // coefficients over Wbasis
    for (Eigen::Index k = 0; k < null.cols(); ++k) {
        DenseTensor h(m, 4, 0.0);
        for (std::size_t c = 0; c < Wbasis.size(); ++c)
            h += Wbasis[c] * null(static_cast<Eigen::Index>(c), k);
        C->H_basis.push_back(h * (1.0 / std::sqrt(dot(h, h))));
    }

    // dimensions of the bookkeeping spaces
    C->dims.A = static_cast<long>(m) * m;
    {
        Eigen::MatrixXd Mtau(static_cast<Eigen::Index>(t4),
                             static_cast<Eigen::Index>(C->tau_cols.size()));
        for (std::size_t c = 0; c < C->tau_cols.size(); ++c)
            Mtau.col(static_cast<Eigen::Index>(c)) = flat(C->tau_cols[c]);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Mtau);
        qr.setThreshold(1e-10);
        C->dims.B = static_cast<long>(Wbasis.size()) - qr.rank();
    }
    {
        // C-space: tensors S_abcd determined by their [abc]-skew part, modulo
        // the J_[ab psi_c]d span
        std::vector<DenseTensor> ins;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                DenseTensor psi(m, 2, 0.0);
                psi.data()[static_cast<std::size_t>(a) * m + b] = 1.0;
                ins.push_back(psi.inserted2(0, 1, S.J_lower).antisymmetrized({0, 1, 2}));
            }
        Eigen::MatrixXd Mi(static_cast<Eigen::Index>(t4), static_cast<Eigen::Index>(ins.size()));
        for (std::size_t c = 0; c < ins.size(); ++c)
            Mi.col(static_cast<Eigen::Index>(c)) = flat(ins[c]);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Mi);
        qr.setThreshold(1e-10);
        long dimS3 = static_cast<long>(m) * m * (m - 1) * (m - 2) / 6;
        C->dims.C = dimS3 - qr.rank();
        C->precond_M = Mi;
        C->precond_qr.compute(Mi);
        C->bianchi_ins_cols = std::move(ins);
    }
    C->dims.H = static_cast<long>(C->H_basis.size());

    // assembled solve matrix
    const std::size_t ncols = C->rho_cols.size() + C->tau_cols.size() + C->H_basis.size();
    C->M = Eigen::MatrixXd(static_cast<Eigen::Index>(t4), static_cast<Eigen::Index>(ncols));
    Eigen::Index cc = 0;
    for (const auto& t : C->rho_cols) C->M.col(cc++) = flat(t);
    for (const auto& t : C->tau_cols) C->M.col(cc++) = flat(t);
    for (const auto& t : C->H_basis) C->M.col(cc++) = flat(t);
    C->M_qr.compute(C->M);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C->M);
    C->sigma_min = svd.singularValues()(svd.singularValues().size() - 1);

    return *cache.emplace(n, std::move(C)).first->second;
}

}  // namespace

PairSplit split_insertions(const DenseTensor& T, const SymplecticData& S) {
    const int m = S.dim();
    const int n = S.n;
    const SplitCache& C = split_cache(n);
    if (m != C.m) throw std::invalid_argument("split_insertions: dimension mismatch");

    PairSplit out;
    // precondition: T_[abc]d lies in the insertion span
    DenseTensor A3 = T.antisymmetrized({0, 1, 2});
    Eigen::VectorXd b3 = flat(A3);
    Eigen::VectorXd fit = C.precond_qr.solve(b3);
    out.precondition_residual = (C.precond_M * fit - b3).lpNorm<Eigen::Infinity>();

    Eigen::VectorXd rhs = flat(T);
    Eigen::VectorXd sol = C.M_qr.solve(rhs);
    out.residual = (C.M * sol - rhs).lpNorm<Eigen::Infinity>();

    Eigen::Index off = 0;
    out.rho = DenseTensor(m, 2, 0.0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) out.rho.data()[static_cast<std::size_t>(a) * m + b] = sol[off++];
    out.tau = DenseTensor(m, 2, 0.0);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            out.tau.data()[static_cast<std::size_t>(a) * m + b] += sol[off];
            out.tau.data()[static_cast<std::size_t>(b) * m + a] -= sol[off];
            ++off;
        }
    out.X = DenseTensor(m, 4, 0.0);
    for (const auto& h : C.H_basis) out.X += h * sol[off++];
    return out;
}

SplitDims split_dimensions(int n) { return split_cache(n).dims; }

double split_uniqueness_sigma_min(int n) { return split_cache(n).sigma_min; }

}  // namespace cpx

#include "cpx/symmetry.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "cpx/rng.hpp"

namespace cpx {

std::string SymmetryClass::name() const {
    switch (kind) {
        case KForm: return "form-" + std::to_string(param);
        case Symmetric: return "sym-" + std::to_string(param);
        default: return "skewpairs-" + std::to_string(param);
    }
}

namespace {

// permuted(p) semantics: slot s of the input reads output position p[s]

std::vector<int> pairs_to_groups_perm(int ell) {
    // input in pair order (p a q b ...): pair-u first element lands at group
    // position u, second element at position ell+u
    std::vector<int> p(2 * ell);
    for (int u = 0; u < ell; ++u) {
        p[2 * u] = u;
        p[2 * u + 1] = ell + u;
    }
    return p;
}

std::vector<int> groups_to_pairs_perm(int ell) {
    // input in group order (p q .. r a b .. c): group-1 entry u lands at pair
    // position 2u, group-2 entry u at 2u+1
    std::vector<int> p(2 * ell);
    for (int u = 0; u < ell; ++u) {
        p[u] = 2 * u;
        p[ell + u] = 2 * u + 1;
    }
    return p;
}

template <typename T>
Tensor<T> pairs_to_groups_impl(const Tensor<T>& t, int ell) {
    return t.permuted(pairs_to_groups_perm(ell));
}

template <typename T>
Tensor<T> groups_to_pairs_impl(const Tensor<T>& T_, int ell) {
    return T_.permuted(groups_to_pairs_perm(ell));
}

template <typename T>
Tensor<T> skew_pair_map_impl(const Tensor<T>& T_, int ell) {
    auto r = groups_to_pairs_impl(T_, ell);
    for (int u = 0; u < ell; ++u) r = r.antisymmetrized({2 * u, 2 * u + 1});
    return r;
}

}  // namespace

DenseTensor pairs_to_groups(const DenseTensor& t, int ell) { return pairs_to_groups_impl(t, ell); }
DenseTensor groups_to_pairs(const DenseTensor& T, int ell) { return groups_to_pairs_impl(T, ell); }
TensorJet pairs_to_groups(const TensorJet& t, int ell) { return pairs_to_groups_impl(t, ell); }
TensorJet groups_to_pairs(const TensorJet& T, int ell) { return groups_to_pairs_impl(T, ell); }
DenseTensor skew_pair_map(const DenseTensor& T, int ell) { return skew_pair_map_impl(T, ell); }
TensorJet skew_pair_map(const TensorJet& T, int ell) { return skew_pair_map_impl(T, ell); }

double skew_pair_symmetry_residual(const DenseTensor& R, int ell) {
    double r = 0.0;
    // pair skewness
    for (int u = 0; u < ell; ++u) {
        std::vector<int> p(2 * ell);
        for (int s = 0; s < 2 * ell; ++s) p[s] = s;
        std::swap(p[2 * u], p[2 * u + 1]);
        r = std::max(r, max_abs(R + R.permuted(p)));
    }
    // symmetry under exchanging the first two pairs (representative check)
    if (ell >= 2) {
        std::vector<int> p(2 * ell);
        for (int s = 0; s < 2 * ell; ++s) p[s] = s;
        std::swap(p[0], p[2]);
        std::swap(p[1], p[3]);
        r = std::max(r, max_abs(R - R.permuted(p)));
    }
    // cycle identity over the first three indices
    if (ell >= 2) r = std::max(r, max_abs(R.antisymmetrized({0, 1, 2})));
    return r;
}

DenseTensor project_to_class(const DenseTensor& t, const SymmetryClass& cls) {
    switch (cls.kind) {
        case SymmetryClass::KForm: return t.antisymmetrized_all();
        case SymmetryClass::Symmetric: return t.symmetrized_all();
        case SymmetryClass::SkewPairs: break;
    }
    const int ell = cls.param;
    auto composite = [&](const DenseTensor& x) {
        auto T = pairs_to_groups(x, ell);
        std::vector<int> g1(ell), g2(ell);
        for (int u = 0; u < ell; ++u) {
            g1[u] = u;
            g2[u] = ell + u;
        }
        return skew_pair_map(T.symmetrized(g1).symmetrized(g2), ell);
    };
    // The composite restricted to the class is a multiple of the identity
    // (the class is irreducible and occurs once); normalise by a probe.
    static std::map<std::pair<int, int>, double> scale_cache;
    static std::mutex mtx;
    double c;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_pair(cls.param, t.dim());
        auto it = scale_cache.find(key);
        if (it == scale_cache.end()) {
            Rng rng(1234u + static_cast<unsigned>(ell));
            DenseTensor probe(t.dim(), 2 * ell, 0.0);
            for (auto& v : probe.data()) v = rng.normal();
            DenseTensor y = composite(probe);  // lies in the class
            DenseTensor yy = composite(y);
            c = dot(yy, y) / dot(y, y);
            scale_cache.emplace(key, c);
        } else {
            c = it->second;
        }
    }
    return composite(t) * (1.0 / c);
}

namespace {

DenseTensor unit_tensor(int dim, int valence, std::size_t flat) {
    DenseTensor t(dim, valence, 0.0);
    t[flat] = 1.0;
    return t;
}

}  // namespace

PerpProjector::PerpProjector(const SymmetryClass& cls, int dim)
    : cls_(cls), dim_(dim), S_(SymplecticData::standard(dim / 2)) {
    const int k = cls.valence();
    // span of in-class J-insertions, collected by modified Gram-Schmidt
    const std::size_t lower = DenseTensor::pow_size(dim, k - 2);
    std::vector<Eigen::VectorXd> flat_basis;
    if (k >= 2) {
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                for (std::size_t I = 0; I < lower; ++I) {
                    DenseTensor cand = project_to_class(
                        unit_tensor(dim_, k - 2, I).inserted2(i, j, S_.J_lower), cls_);
                    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(
                        cand.data().data(), static_cast<Eigen::Index>(cand.size()));
                    const double orig = v.norm();
                    if (orig < 1e-14) continue;
                    for (const auto& b : flat_basis) v -= b.dot(v) * b;
                    for (const auto& b : flat_basis) v -= b.dot(v) * b;  // re-orthogonalise
                    if (v.norm() > 1e-10 * orig) {
                        v /= v.norm();
                        flat_basis.push_back(v);
                        DenseTensor bt(dim_, k, 0.0);
                        for (std::size_t q = 0; q < bt.size(); ++q) bt[q] = v[static_cast<Eigen::Index>(q)];
                        sbasis_.push_back(bt);
                    }
                }
                if (cls_.kind == SymmetryClass::KForm || cls_.kind == SymmetryClass::Symmetric)
                    goto done;  // projector is slot-blind; one position spans it all
            }
    }
done:
    const std::size_t trace_rows = stacked_traces(DenseTensor(dim_, k, 0.0)).size();
    trace_of_sbasis_ = Eigen::MatrixXd(static_cast<Eigen::Index>(trace_rows),
                                       static_cast<Eigen::Index>(sbasis_.size()));
    for (std::size_t c = 0; c < sbasis_.size(); ++c) {
        auto tr = stacked_traces(sbasis_[c]);
        for (std::size_t r = 0; r < tr.size(); ++r)
            trace_of_sbasis_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = tr[r];
    }
    solver_.compute(trace_of_sbasis_);
}

std::vector<double> PerpProjector::stacked_traces(const DenseTensor& psi) const {
    std::vector<double> out;
    const int k = psi.valence();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            DenseTensor tr = psi.traced(i, j, S_.J_upper);
            out.insert(out.end(), tr.data().begin(), tr.data().end());
        }
    return out;
}

DenseTensor PerpProjector::apply(const DenseTensor& psi) const {
    if (sbasis_.empty()) return psi;
    auto tr = stacked_traces(psi);
    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(tr.data(), static_cast<Eigen::Index>(tr.size()));
    Eigen::VectorXd alpha = solver_.solve(b);
    DenseTensor r = psi;
    for (std::size_t c = 0; c < sbasis_.size(); ++c)
        r -= sbasis_[c] * alpha[static_cast<Eigen::Index>(c)];
    // the split must be exact; failure signals a misdeclared symmetry class
    const double res = trace_residual(r);
    const double scale = std::max(1.0, max_abs(psi));
    if (res > 1e-8 * scale)
        throw std::runtime_error("perp_project: traces do not split off (class misdeclared?)");
    return r;
}

double PerpProjector::trace_residual(const DenseTensor& psi) const {
    double m = 0.0;
    for (double v : stacked_traces(psi)) m = std::max(m, std::abs(v));
    return m;
}

const PerpProjector& PerpProjector::get(const SymmetryClass& cls, int dim) {
    static std::map<std::pair<SymmetryClass, int>, std::unique_ptr<PerpProjector>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(cls, dim);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<PerpProjector>(new PerpProjector(cls, dim))).first;
    return *it->second;
}

Eigen::MatrixXd darboux_frame(const SymplecticData& S) {
    const int m = S.dim();
    const int n = S.n;
    Eigen::MatrixXd g(m, m), Jx(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            g(a, b) = S.g_lower.data()[static_cast<std::size_t>(a) * m + b];
            Jx(a, b) = S.J_mix.data()[static_cast<std::size_t>(a) * m + b];
        }
    // complex structure as an endomorphism: (i v)^b = J_a{}^b v^a, i.e. Jx^T
    Eigen::MatrixXd Jend = Jx.transpose();
    std::vector<Eigen::VectorXd> u;  // complex-orthonormal half frame
    auto gdot = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        return x.dot(g * y);
    };
    for (int trial = 0; trial < m && static_cast<int>(u.size()) < n; ++trial) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
        v[trial] = 1.0;
        for (const auto& w : u) {
            Eigen::VectorXd jw = Jend * w;
            v -= gdot(w, v) * w + gdot(jw, v) * jw;
        }
        if (gdot(v, v) > 1e-8) u.push_back(v / std::sqrt(gdot(v, v)));
    }
    if (static_cast<int>(u.size()) != n) throw std::runtime_error("darboux_frame: degenerate data");
    Eigen::MatrixXd F(m, m);
    for (int i = 0; i < n; ++i) {
        F.col(i) = u[i];
        F.col(n + i) = Jend * u[i];
    }
    return F;
}

DenseTensor to_frame(const DenseTensor& t, const Eigen::MatrixXd& F) {
    const int m = t.dim();
    DenseTensor Ft(m, 2, 0.0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) Ft.data()[static_cast<std::size_t>(a) * m + b] = F(b, a);
    DenseTensor r = t;
    for (int s = 0; s < t.valence(); ++s) r = r.apply_matrix_to_slot(s, Ft);
    return r;
}

DenseTensor from_frame(const DenseTensor& t, const Eigen::MatrixXd& F) {
    Eigen::MatrixXd Fi = F.inverse();
    const int m = t.dim();
    DenseTensor Ft(m, 2, 0.0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) Ft.data()[static_cast<std::size_t>(a) * m + b] = Fi(b, a);
    DenseTensor r = t;
    for (int s = 0; s < t.valence(); ++s) r = r.apply_matrix_to_slot(s, Ft);
    return r;
}

DenseTensor perp_project(const DenseTensor& psi, const SymmetryClass& cls,
                         const SymplecticData& S) {
    Eigen::MatrixXd F = darboux_frame(S);
    DenseTensor pf = to_frame(psi, F);
    DenseTensor qf = PerpProjector::get(cls, psi.dim()).apply(pf);
    return from_frame(qf, F);
}

}  // namespace cpx

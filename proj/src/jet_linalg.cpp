#include "cpx/jet_linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace cpx {

Jet truncated(const Jet& j, int order) {
    if (order >= j.order()) return j;
    Jet r(j.nvars(), order);
    const auto& rl = r.layout();
    for (int k = 0; k < rl.size(); ++k) r.coeffs()[k] = j.coeffs()[k];
    // graded layout: the first size(order) coefficients coincide
    return r;
}

TensorJet truncated(const TensorJet& t, int order) {
    TensorJet r(t.dim(), t.valence(), truncated(t.data()[0], order));
    for (std::size_t k = 0; k < t.size(); ++k) r[k] = truncated(t[k], order);
    return r;
}

std::vector<Jet> jet_linsolve(std::vector<Jet> A, std::vector<Jet> b, int k) {
    auto at = [&](int i, int j) -> Jet& { return A[static_cast<std::size_t>(i) * k + j]; };
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    for (int col = 0; col < k; ++col) {
        int piv = col;
        double best = std::abs(at(col, col).value());
        for (int r = col + 1; r < k; ++r)
            if (std::abs(at(r, col).value()) > best) {
                best = std::abs(at(r, col).value());
                piv = r;
            }
        if (best == 0.0) throw std::runtime_error("jet_linsolve: singular constant term");
        if (piv != col) {
            for (int j = 0; j < k; ++j) std::swap(at(piv, j), at(col, j));
            std::swap(b[piv], b[col]);
        }
        Jet inv = at(col, col).reciprocal();
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            Jet f = at(r, col) * inv;
            for (int j = col; j < k; ++j) at(r, j) -= f * at(col, j);
            b[r] -= f * b[col];
        }
    }
    std::vector<Jet> x(static_cast<std::size_t>(k), b[0] * 0.0);
    for (int i = 0; i < k; ++i) x[i] = b[i] * at(i, i).reciprocal();
    return x;
}

TensorJet jet_matrix_inverse(const TensorJet& g) {
    const int m = g.dim();
    // Gauss-Jordan on [A | I]
    std::vector<Jet> A = g.data();
    Jet zero = g.data()[0] * 0.0;
    std::vector<Jet> inv(static_cast<std::size_t>(m) * m, zero);
    for (int i = 0; i < m; ++i)
        inv[static_cast<std::size_t>(i) * m + i] = zero + 1.0;

    auto at = [&](std::vector<Jet>& M, int i, int j) -> Jet& {
        return M[static_cast<std::size_t>(i) * m + j];
    };
    for (int col = 0; col < m; ++col) {
        int piv = col;
        double best = std::abs(at(A, col, col).value());
        for (int r = col + 1; r < m; ++r)
            if (std::abs(at(A, r, col).value()) > best) {
                best = std::abs(at(A, r, col).value());
                piv = r;
            }
        if (best == 0.0) throw std::runtime_error("jet_matrix_inverse: singular constant term");
        if (piv != col)
            for (int j = 0; j < m; ++j) {
                std::swap(at(A, piv, j), at(A, col, j));
                std::swap(at(inv, piv, j), at(inv, col, j));
            }
        Jet ip = at(A, col, col).reciprocal();
        for (int j = 0; j < m; ++j) {
            at(A, col, j) *= ip;
            at(inv, col, j) *= ip;
        }
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            Jet f = at(A, r, col);
            if (f.max_abs_coeff() == 0.0) continue;
            for (int j = 0; j < m; ++j) {
                at(A, r, j) -= f * at(A, col, j);
                at(inv, r, j) -= f * at(inv, col, j);
            }
        }
    }
    TensorJet r(m, 2, zero);
    r.data() = std::move(inv);
    return r;
}

Jet substitute(const Jet& f, const std::vector<Jet>& sub) {
    if (static_cast<int>(sub.size()) != f.nvars())
        throw std::invalid_argument("substitute: wrong replacement count");
    const int out_vars = sub[0].nvars();
    const int out_order = sub[0].order();
    Jet acc(out_vars, out_order);
    // memoised powers of each replacement
    std::vector<std::vector<Jet>> pw(sub.size());
    for (std::size_t v = 0; v < sub.size(); ++v) pw[v].push_back(Jet::constant(out_vars, out_order, 1.0));
    const auto& lay = f.layout();
    for (int k = 0; k < lay.size(); ++k) {
        const double c = f.coeffs()[k];
        if (c == 0.0) continue;
        Jet term = Jet::constant(out_vars, out_order, c);
        for (int v = 0; v < f.nvars(); ++v) {
            const int e = lay.mons[k][v];
            while (static_cast<int>(pw[v].size()) <= e) pw[v].push_back(pw[v].back() * sub[v]);
            if (e > 0) term = term * pw[v][e];
        }
        acc += term;
    }
    return acc;
}

}  // namespace cpx

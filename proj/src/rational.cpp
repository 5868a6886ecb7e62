#include "cpx/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace cpx {

RatMat RatMat::operator*(const RatMat& o) const {
    RatMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Rat& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols; ++j) {
                const Rat& w = o.at(k, j);
                if (w != 0) r.at(i, j) += v * w;
            }
        }
    return r;
}

RatMat RatMat::operator-(const RatMat& o) const {
    RatMat r(rows, cols);
    for (std::size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] - o.a[k];
    return r;
}

RatMat RatMat::operator+(const RatMat& o) const {
    RatMat r(rows, cols);
    for (std::size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] + o.a[k];
    return r;
}

RatMat RatMat::scaled(const Rat& s) const {
    RatMat r(rows, cols);
    for (std::size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] * s;
    return r;
}

bool RatMat::is_zero() const {
    for (const auto& v : a)
        if (v != 0) return false;
    return true;
}

namespace {

/// sparse row representation for elimination
using SRow = std::map<int, Rat>;

long sparse_rank(std::vector<SRow> rowsv, int ncols) {
    long rank = 0;
    std::vector<bool> done_col(static_cast<std::size_t>(ncols), false);
    while (true) {
        // pick the sparsest nonempty row, then its simplest column
        int best = -1;
        std::size_t best_nnz = SIZE_MAX;
        for (std::size_t r = 0; r < rowsv.size(); ++r) {
            if (rowsv[r].empty()) continue;
            if (rowsv[r].size() < best_nnz) {
                best_nnz = rowsv[r].size();
                best = static_cast<int>(r);
            }
        }
        if (best < 0) break;
        SRow piv = std::move(rowsv[best]);
        rowsv[best].clear();
        const int pcol = piv.begin()->first;
        const Rat pval = piv.begin()->second;
        ++rank;
        done_col[static_cast<std::size_t>(pcol)] = true;
        for (auto& row : rowsv) {
            auto it = row.find(pcol);
            if (it == row.end()) continue;
            Rat f = it->second / pval;
            row.erase(it);
            for (const auto& [c, v] : piv) {
                if (c == pcol) continue;
                Rat& tgt = row[c];
                tgt -= f * v;
                if (tgt == 0) row.erase(c);
            }
        }
    }
    return rank;
}

}  // namespace

long rat_rank(const RatMat& M) {
    std::vector<SRow> rowsv(static_cast<std::size_t>(M.rows));
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j)
            if (M.at(i, j) != 0) rowsv[static_cast<std::size_t>(i)][j] = M.at(i, j);
    return sparse_rank(std::move(rowsv), M.cols);
}

NullspaceBasis rat_nullspace(const RatMat& M) {
    // dense RREF
    RatMat R = M;
    std::vector<int> pivot_col;
    int lead = 0;
    for (int r = 0; r < R.rows && lead < R.cols; ++r) {
        int pr = -1;
        while (lead < R.cols) {
            for (int i = r; i < R.rows; ++i)
                if (R.at(i, lead) != 0) {
                    pr = i;
                    break;
                }
            if (pr >= 0) break;
            ++lead;
        }
        if (lead >= R.cols) break;
        if (pr != r)
            for (int j = 0; j < R.cols; ++j) std::swap(R.at(pr, j), R.at(r, j));
        Rat pv = R.at(r, lead);
        for (int j = 0; j < R.cols; ++j) R.at(r, j) /= pv;
        for (int i = 0; i < R.rows; ++i) {
            if (i == r || R.at(i, lead) == 0) continue;
            Rat f = R.at(i, lead);
            for (int j = 0; j < R.cols; ++j) R.at(i, j) -= f * R.at(r, j);
        }
        pivot_col.push_back(lead);
        ++lead;
    }

    NullspaceBasis out;
    out.ambient = M.cols;
    std::vector<bool> is_pivot(static_cast<std::size_t>(M.cols), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int c = 0; c < M.cols; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        std::vector<Rat> v(static_cast<std::size_t>(M.cols));
        v[static_cast<std::size_t>(c)] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[static_cast<std::size_t>(pivot_col[r])] = -R.at(static_cast<int>(r), c);
        out.basis.push_back(std::move(v));
        out.free_cols.push_back(c);
    }
    return out;
}

std::vector<Rat> NullspaceBasis::coords_of(const std::vector<Rat>& v) const {
    std::vector<Rat> c(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k)
        c[k] = v[static_cast<std::size_t>(free_cols[k])];
    // exact membership check
    std::vector<Rat> rec(static_cast<std::size_t>(ambient));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (c[k] == 0) continue;
        for (int j = 0; j < ambient; ++j)
            rec[static_cast<std::size_t>(j)] += c[k] * basis[k][static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < ambient; ++j)
        if (rec[static_cast<std::size_t>(j)] != v[static_cast<std::size_t>(j)])
            throw std::runtime_error("NullspaceBasis: vector outside the subspace");
    return c;
}

bool NullspaceBasis::contains(const std::vector<Rat>& v) const {
    try {
        coords_of(v);
        return true;
    } catch (const std::runtime_error&) {
        return false;
    }
}

RatMat rat_inverse(const RatMat& M) {
    if (M.rows != M.cols) throw std::invalid_argument("rat_inverse: not square");
    const int d = M.rows;
    RatMat A = M, I = RatMat::identity(d);
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int r = col; r < d; ++r)
            if (A.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::runtime_error("rat_inverse: singular");
        if (piv != col)
            for (int j = 0; j < d; ++j) {
                std::swap(A.at(piv, j), A.at(col, j));
                std::swap(I.at(piv, j), I.at(col, j));
            }
        Rat pv = A.at(col, col);
        for (int j = 0; j < d; ++j) {
            A.at(col, j) /= pv;
            I.at(col, j) /= pv;
        }
        for (int r = 0; r < d; ++r) {
            if (r == col || A.at(r, col) == 0) continue;
            Rat f = A.at(r, col);
            for (int j = 0; j < d; ++j) {
                A.at(r, j) -= f * A.at(col, j);
                I.at(r, j) -= f * I.at(col, j);
            }
        }
    }
    return I;
}

}  // namespace cpx

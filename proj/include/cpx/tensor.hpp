#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cpx/jet.hpp"

namespace cpx {

/// Dense covariant tensor over R^m with entries of type T (double for
/// pointwise values, Jet for fields expanded at a point). Indices are all
/// lower; raising happens explicitly through matrices.
template <typename T>
class Tensor {
public:
    Tensor() = default;
    Tensor(int dim, int valence, const T& zero)
        : dim_(dim), valence_(valence), data_(pow_size(dim, valence), zero) {}

    static std::size_t pow_size(int dim, int valence) {
        std::size_t s = 1;
        for (int k = 0; k < valence; ++k) s *= static_cast<std::size_t>(dim);
        return s;
    }

    int dim() const { return dim_; }
    int valence() const { return valence_; }
    std::size_t size() const { return data_.size(); }
    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    T zero_like() const {
        assert(!data_.empty());
        return data_[0] * 0.0;
    }

    std::size_t flat(const std::vector<int>& idx) const {
        std::size_t f = 0;
        for (int s = 0; s < valence_; ++s) f = f * dim_ + static_cast<std::size_t>(idx[s]);
        return f;
    }

    const T& at(const std::vector<int>& idx) const { return data_[flat(idx)]; }
    T& at(const std::vector<int>& idx) { return data_[flat(idx)]; }
    const T& operator[](std::size_t f) const { return data_[f]; }
    T& operator[](std::size_t f) { return data_[f]; }

    /// Visit every multi-index.
    template <typename F>
    void for_each(F&& f) const {
        std::vector<int> idx(valence_, 0);
        for (std::size_t fl = 0; fl < data_.size(); ++fl) {
            f(idx, fl);
            for (int s = valence_ - 1; s >= 0; --s) {
                if (++idx[s] < dim_) break;
                idx[s] = 0;
            }
        }
    }

    Tensor& operator+=(const Tensor& o) {
        assert(same_shape(o));
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Tensor& operator-=(const Tensor& o) {
        assert(same_shape(o));
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Tensor& operator*=(double s) {
        for (auto& v : data_) v *= s;
        return *this;
    }
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(Tensor a, double s) { return a *= s; }
    friend Tensor operator*(double s, Tensor a) { return a *= s; }
    friend Tensor operator-(Tensor a) { return a *= -1.0; }

    bool same_shape(const Tensor& o) const { return dim_ == o.dim_ && valence_ == o.valence_; }

    /// r(i_0..i_{k-1}) = t(i_{p[0]}, ..., i_{p[k-1]}).
    Tensor permuted(const std::vector<int>& p) const {
        Tensor r(dim_, valence_, zero_like());
        std::vector<int> src(valence_);
        r.for_each([&](const std::vector<int>& idx, std::size_t fl) {
            for (int s = 0; s < valence_; ++s) src[s] = idx[p[s]];
            r.data_[fl] = at(src);
        });
        return r;
    }

    /// Average over all permutations of the given slots (idempotent).
    Tensor symmetrized(const std::vector<int>& slots) const { return sym_impl(slots, false); }
    /// Signed average over all permutations of the given slots (idempotent).
    Tensor antisymmetrized(const std::vector<int>& slots) const { return sym_impl(slots, true); }

    Tensor symmetrized_all() const {
        std::vector<int> s(valence_);
        std::iota(s.begin(), s.end(), 0);
        return symmetrized(s);
    }
    Tensor antisymmetrized_all() const {
        std::vector<int> s(valence_);
        std::iota(s.begin(), s.end(), 0);
        return antisymmetrized(s);
    }

    /// r(.., c, ..) = sum_e M(c,e) t(.., e, ..) with M given row-major dim x dim.
    template <typename M>
    Tensor apply_matrix_to_slot(int slot, const Tensor<M>& mat) const {
        assert(mat.valence() == 2 && mat.dim() == dim_);
        Tensor r(dim_, valence_, zero_like());
        std::vector<int> src(valence_);
        r.for_each([&](const std::vector<int>& idx, std::size_t fl) {
            src = idx;
            auto acc = r.zero_like();
            for (int e = 0; e < dim_; ++e) {
                src[slot] = e;
                acc += at(src) * mat.data()[static_cast<std::size_t>(idx[slot]) * dim_ + e];
            }
            r.data_[fl] = acc;
        });
        return r;
    }

    /// Contract slots i<j with the bilinear form B: result valence k-2.
    template <typename M>
    Tensor traced(int i, int j, const Tensor<M>& B) const {
        assert(i != j && valence_ >= 2);
        if (i > j) std::swap(i, j);
        Tensor r(dim_, valence_ - 2, zero_like());
        std::vector<int> src(valence_);
        r.for_each([&](const std::vector<int>& idx, std::size_t fl) {
            int t = 0;
            for (int s = 0; s < valence_; ++s) {
                if (s == i || s == j) continue;
                src[s] = idx[t++];
            }
            auto acc = r.zero_like();
            for (int a = 0; a < dim_; ++a)
                for (int b = 0; b < dim_; ++b) {
                    src[i] = a;
                    src[j] = b;
                    acc += at(src) * B.data()[static_cast<std::size_t>(a) * dim_ + b];
                }
            r.data_[fl] = acc;
        });
        return r;
    }

    /// Place the 2-form B at slots i<j of the result, this tensor on the rest.
    Tensor inserted2(int i, int j, const Tensor<double>& B) const {
        assert(i < j);
        Tensor r(dim_, valence_ + 2, zero_like());
        std::vector<int> rest(valence_);
        r.for_each([&](const std::vector<int>& idx, std::size_t fl) {
            int t = 0;
            for (int s = 0; s < valence_ + 2; ++s) {
                if (s == i || s == j) continue;
                rest[t++] = idx[s];
            }
            r.data()[fl] = at(rest) * B.data()[static_cast<std::size_t>(idx[i]) * dim_ + idx[j]];
        });
        return r;
    }

    friend Tensor outer(const Tensor& a, const Tensor& b) {
        Tensor r(a.dim_, a.valence_ + b.valence_, a.zero_like());
        std::vector<int> ia(a.valence_), ib(b.valence_);
        r.for_each([&](const std::vector<int>& idx, std::size_t fl) {
            for (int s = 0; s < a.valence_; ++s) ia[s] = idx[s];
            for (int s = 0; s < b.valence_; ++s) ib[s] = idx[a.valence_ + s];
            r.data_[fl] = a.at(ia) * b.at(ib);
        });
        return r;
    }

private:
    Tensor sym_impl(std::vector<int> slots, bool signs) const {
        std::sort(slots.begin(), slots.end());
        for (int s : slots)
            if (s < 0 || s >= valence_) throw std::out_of_range("Tensor: slot out of range");
        // enumerate permutations of the slot set once
        std::vector<std::vector<int>> perms;
        std::vector<double> sign;
        std::vector<int> perm(slots.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            double sg = 1.0;
            if (signs) {
                int inv = 0;
                for (std::size_t u = 0; u < perm.size(); ++u)
                    for (std::size_t v = u + 1; v < perm.size(); ++v)
                        if (perm[u] > perm[v]) ++inv;
                sg = (inv % 2 == 0) ? 1.0 : -1.0;
            }
            perms.push_back(perm);
            sign.push_back(sg);
        } while (std::next_permutation(perm.begin(), perm.end()));

        Tensor r(dim_, valence_, zero_like());
        const double w = 1.0 / static_cast<double>(perms.size());
        std::vector<int> src(valence_);
        r.for_each([&](const std::vector<int>& idx, std::size_t fl) {
            auto acc = zero_like();
            for (std::size_t q = 0; q < perms.size(); ++q) {
                src = idx;
                for (std::size_t u = 0; u < slots.size(); ++u)
                    src[slots[u]] = idx[slots[perms[q][u]]];
                acc += at(src) * sign[q];
            }
            r.data_[fl] = acc * w;
        });
        return r;
    }

    int dim_ = 0;
    int valence_ = 0;
    std::vector<T> data_;
};

using DenseTensor = Tensor<double>;
using TensorJet = Tensor<Jet>;

inline double max_abs(const DenseTensor& t) {
    double m = 0.0;
    for (double v : t.data()) m = std::max(m, std::abs(v));
    return m;
}

inline double frobenius(const DenseTensor& t) {
    double s = 0.0;
    for (double v : t.data()) s += v * v;
    return std::sqrt(s);
}

inline double dot(const DenseTensor& a, const DenseTensor& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

/// Constant-term extraction: Tensor<Jet> -> Tensor<double>.
inline DenseTensor values(const TensorJet& t) {
    DenseTensor r(t.dim(), t.valence(), 0.0);
    for (std::size_t k = 0; k < t.size(); ++k) r[k] = t[k].value();
    return r;
}

/// Promote a numeric tensor to constant jets.
inline TensorJet as_jets(const DenseTensor& t, int nvars, int order) {
    TensorJet r(t.dim(), t.valence(), Jet::constant(nvars, order, 0.0));
    for (std::size_t k = 0; k < t.size(); ++k) r[k] = Jet::constant(nvars, order, t[k]);
    return r;
}

}  // namespace cpx

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

namespace cpx {

using Rat = boost::multiprecision::cpp_rational;

/// Dense exact-rational matrix, row-major.
struct RatMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    RatMat() = default;
    RatMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    Rat& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static RatMat identity(int d) {
        RatMat I(d, d);
        for (int i = 0; i < d; ++i) I.at(i, i) = 1;
        return I;
    }
    RatMat operator*(const RatMat& o) const;
    RatMat operator-(const RatMat& o) const;
    RatMat operator+(const RatMat& o) const;
    RatMat scaled(const Rat& s) const;
    bool is_zero() const;
};

/// Exact rank by sparse fraction-free-ish elimination (rationals with
/// sparsity-guided pivoting).
long rat_rank(const RatMat& M);

/// Exact nullspace basis in reduced form: each vector has entry 1 at its own
/// free column and 0 at the other free columns, so coordinates in the span
/// are read off at the free columns.
struct NullspaceBasis {
    int ambient = 0;
    std::vector<std::vector<Rat>> basis;  // ambient-length vectors
    std::vector<int> free_cols;           // one per basis vector

    int dim() const { return static_cast<int>(basis.size()); }
    /// exact coordinates if v lies in the span; throws otherwise
    std::vector<Rat> coords_of(const std::vector<Rat>& v) const;
    bool contains(const std::vector<Rat>& v) const;
};

NullspaceBasis rat_nullspace(const RatMat& M);

/// Exact inverse (throws if singular).
RatMat rat_inverse(const RatMat& M);

}  // namespace cpx

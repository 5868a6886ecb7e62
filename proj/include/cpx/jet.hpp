#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <vector>

namespace cpx {

/// Shared layout data for truncated Taylor expansions in `nvars` variables
/// up to total degree `order`: the monomial list, position lookup and the
/// product table. Instances are cached per (nvars, order).
struct JetLayout {
    int nvars = 0;
    int order = 0;
    std::vector<std::vector<std::uint8_t>> mons;  // graded-lex monomials
    std::vector<int> degree_offset;               // first index of each degree
    std::vector<std::int32_t> prod;               // mons[i]+mons[j] -> index, -1 if truncated

    int size() const { return static_cast<int>(mons.size()); }
    int find(const std::vector<std::uint8_t>& m) const;

    static const JetLayout& get(int nvars, int order);
};

/// Truncated multivariate Taylor expansion of a scalar at a point. The
/// variables are offsets from the expansion point, so value() is the
/// constant coefficient. Arithmetic is exact to the stored order.
class Jet {
public:
    Jet() = default;
    Jet(int nvars, int order)
        : layout_(&JetLayout::get(nvars, order)), c_(layout_->size(), 0.0) {}

    static Jet constant(int nvars, int order, double v) {
        Jet j(nvars, order);
        j.c_[0] = v;
        return j;
    }
    /// Taylor expansion of the i-th coordinate about base value `x0`.
    static Jet variable(int nvars, int order, int i, double x0) {
        Jet j(nvars, order);
        j.c_[0] = x0;
        if (order >= 1) j.c_[1 + i] = 1.0;
        return j;
    }

    int nvars() const { return layout_ ? layout_->nvars : 0; }
    int order() const { return layout_ ? layout_->order : 0; }
    double value() const { return c_.empty() ? 0.0 : c_[0]; }
    const std::vector<double>& coeffs() const { return c_; }
    std::vector<double>& coeffs() { return c_; }
    const JetLayout& layout() const { return *layout_; }

    double coeff(const std::vector<std::uint8_t>& mon) const {
        int k = layout_->find(mon);
        return k < 0 ? 0.0 : c_[k];
    }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator+(Jet a, double s) { a.c_[0] += s; return a; }
    friend Jet operator+(double s, Jet a) { a.c_[0] += s; return a; }
    friend Jet operator-(Jet a, double s) { a.c_[0] -= s; return a; }
    friend Jet operator-(double s, const Jet& a) { Jet r = -a; r.c_[0] += s; return r; }

    Jet operator*(const Jet& o) const;
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    /// Multiplicative inverse; requires a nonzero constant term.
    Jet reciprocal() const;
    friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }
    friend Jet operator/(double s, const Jet& b) { return b.reciprocal() * s; }
    friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }

    /// Partial derivative; the result carries order-1 (one fewer exact digit
    /// of Taylor data, never a silent truncation).
    Jet deriv(int i) const;

    /// Composition with an analytic function given by its derivatives at
    /// value(): f(u) = sum f_k/k! (u - u0)^k.
    Jet apply_analytic(const std::function<double(int, double)>& dk) const;

    Jet sin() const;
    Jet cos() const;
    Jet exp() const;
    Jet log() const;   // requires positive constant term
    Jet sqrt() const;  // requires positive constant term

    /// Evaluate the truncated polynomial at an offset from the base point.
    double eval(const std::vector<double>& delta) const;

    double max_abs_coeff() const;

private:
    const JetLayout* layout_ = nullptr;
    std::vector<double> c_;
};

/// Complex-valued jet built from two real jets.
struct CJet {
    Jet re, im;

    CJet() = default;
    CJet(Jet r, Jet i) : re(std::move(r)), im(std::move(i)) {}
    static CJet constant(int nvars, int order, double r, double i) {
        return {Jet::constant(nvars, order, r), Jet::constant(nvars, order, i)};
    }

    CJet conj() const { return {re, -im}; }
    friend CJet operator+(const CJet& a, const CJet& b) { return {a.re + b.re, a.im + b.im}; }
    friend CJet operator-(const CJet& a, const CJet& b) { return {a.re - b.re, a.im - b.im}; }
    friend CJet operator*(const CJet& a, const CJet& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CJet operator*(const CJet& a, double s) { return {a.re * s, a.im * s}; }
    Jet norm2() const { return re * re + im * im; }
    friend CJet operator/(const CJet& a, const Jet& d) {
        Jet r = d.reciprocal();
        return {a.re * r, a.im * r};
    }
    friend CJet operator/(const CJet& a, const CJet& b) {
        Jet r = b.norm2().reciprocal();
        CJet num = a * b.conj();
        return {num.re * r, num.im * r};
    }
};

}  // namespace cpx

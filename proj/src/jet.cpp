#include "cpx/jet.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cpx {

namespace {

void enumerate_monomials(int nvars, int order, std::vector<std::vector<std::uint8_t>>& out,
                         std::vector<int>& degree_offset) {
    degree_offset.assign(order + 2, 0);
    std::vector<std::uint8_t> mon(nvars, 0);
    for (int d = 0; d <= order; ++d) {
        degree_offset[d] = static_cast<int>(out.size());
        // all monomials of total degree d in lex order
        std::function<void(int, int)> rec = [&](int var, int left) {
            if (var == nvars - 1) {
                mon[var] = static_cast<std::uint8_t>(left);
                out.push_back(mon);
                return;
            }
            for (int k = left; k >= 0; --k) {
                mon[var] = static_cast<std::uint8_t>(k);
                rec(var + 1, left - k);
            }
        };
        if (nvars == 0) {
            if (d == 0) out.push_back({});
        } else {
            rec(0, d);
        }
    }
    degree_offset[order + 1] = static_cast<int>(out.size());
}

}  // namespace

int JetLayout::find(const std::vector<std::uint8_t>& m) const {
    int deg = 0;
    for (auto v : m) deg += v;
    if (deg > order) return -1;
    for (int k = degree_offset[deg]; k < degree_offset[deg + 1]; ++k)
        if (mons[k] == m) return k;
    return -1;
}

const JetLayout& JetLayout::get(int nvars, int order) {
    static std::map<std::pair<int, int>, JetLayout> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(nvars, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    JetLayout lay;
    lay.nvars = nvars;
    lay.order = order;
    enumerate_monomials(nvars, order, lay.mons, lay.degree_offset);
    const int n = lay.size();
    lay.prod.assign(static_cast<std::size_t>(n) * n, -1);
    std::vector<std::uint8_t> sum(nvars);
    for (int i = 0; i < n; ++i) {
        int di = 0;
        for (auto v : lay.mons[i]) di += v;
        for (int j = 0; j < n; ++j) {
            int dj = 0;
            for (auto v : lay.mons[j]) dj += v;
            if (di + dj > order) continue;
            for (int v = 0; v < nvars; ++v)
                sum[v] = static_cast<std::uint8_t>(lay.mons[i][v] + lay.mons[j][v]);
            lay.prod[static_cast<std::size_t>(i) * n + j] = lay.find(sum);
        }
    }
    return cache.emplace(key, std::move(lay)).first->second;
}

Jet& Jet::operator+=(const Jet& o) {
    assert(layout_ == o.layout_ || (nvars() == o.nvars() && order() == o.order()));
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    assert(nvars() == o.nvars() && order() == o.order());
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

Jet Jet::operator*(const Jet& o) const {
    assert(nvars() == o.nvars() && order() == o.order());
    Jet r(nvars(), order());
    const int n = layout_->size();
    const std::int32_t* tab = layout_->prod.data();
    for (int i = 0; i < n; ++i) {
        const double a = c_[i];
        if (a == 0.0) continue;
        const std::int32_t* row = tab + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const std::int32_t k = row[j];
            if (k >= 0) r.c_[k] += a * o.c_[j];
        }
    }
    return r;
}

Jet Jet::reciprocal() const {
    const double u0 = value();
    if (u0 == 0.0) throw std::domain_error("Jet::reciprocal: zero constant term");
    // 1/(u0 + v) = (1/u0) sum (-v/u0)^k
    Jet v = *this;
    v.c_[0] = 0.0;
    Jet acc = Jet::constant(nvars(), order(), 1.0 / u0);
    Jet pw = Jet::constant(nvars(), order(), 1.0);
    for (int k = 1; k <= order(); ++k) {
        pw = pw * v;
        acc += pw * (std::pow(-1.0, k) / std::pow(u0, k + 1));
    }
    return acc;
}

Jet Jet::deriv(int i) const {
    const int ord = order() > 0 ? order() - 1 : 0;
    Jet r(nvars(), ord);
    const auto& rl = r.layout();
    std::vector<std::uint8_t> up;
    for (int k = 0; k < rl.size(); ++k) {
        up = rl.mons[k];
        up[i] = static_cast<std::uint8_t>(up[i] + 1);
        int src = layout_->find(up);
        if (src >= 0) r.c_[k] = c_[src] * static_cast<double>(up[i]);
    }
    return r;
}

Jet Jet::apply_analytic(const std::function<double(int, double)>& dk) const {
    const double u0 = value();
    Jet v = *this;
    v.coeffs()[0] = 0.0;
    // Horner on the nilpotent part
    double fact = 1.0;
    for (int k = 1; k <= order(); ++k) fact *= k;
    Jet acc = Jet::constant(nvars(), order(), dk(order(), u0) / fact);
    for (int k = order() - 1; k >= 0; --k) {
        fact = 1.0;
        for (int j = 1; j <= k; ++j) fact *= j;
        acc = acc * v + Jet::constant(nvars(), order(), dk(k, u0) / fact);
    }
    return acc;
}

Jet Jet::sin() const {
    return apply_analytic([](int k, double u) {
        switch (k % 4) {
            case 0: return std::sin(u);
            case 1: return std::cos(u);
            case 2: return -std::sin(u);
            default: return -std::cos(u);
        }
    });
}

Jet Jet::cos() const {
    return apply_analytic([](int k, double u) {
        switch (k % 4) {
            case 0: return std::cos(u);
            case 1: return -std::sin(u);
            case 2: return -std::cos(u);
            default: return std::sin(u);
        }
    });
}

Jet Jet::exp() const {
    return apply_analytic([](int, double u) { return std::exp(u); });
}

Jet Jet::log() const {
    if (value() <= 0.0) throw std::domain_error("Jet::log: non-positive constant term");
    return apply_analytic([](int k, double u) {
        if (k == 0) return std::log(u);
        double d = std::pow(-1.0, k - 1) / std::pow(u, k);
        for (int j = 1; j < k; ++j) d *= j;
        return d;
    });
}

Jet Jet::sqrt() const {
    if (value() <= 0.0) throw std::domain_error("Jet::sqrt: non-positive constant term");
    return apply_analytic([](int k, double u) {
        double c = 1.0, p = 0.5;
        for (int j = 0; j < k; ++j) {
            c *= p;
            p -= 1.0;
        }
        return c * std::pow(u, 0.5 - k);
    });
}

double Jet::eval(const std::vector<double>& delta) const {
    double s = 0.0;
    for (int k = 0; k < layout_->size(); ++k) {
        double term = c_[k];
        if (term == 0.0) continue;
        const auto& m = layout_->mons[k];
        for (int v = 0; v < nvars(); ++v)
            for (int p = 0; p < m[v]; ++p) term *= delta[v];
        s += term;
    }
    return s;
}

double Jet::max_abs_coeff() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace cpx

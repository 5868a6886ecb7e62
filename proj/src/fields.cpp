#include "cpx/fields.hpp"

#include <cmath>

#include "cpx/jet_linalg.hpp"
#include "cpx/rng.hpp"

namespace cpx {

using nlohmann::json;

Jet eval_scalar(const TensorField& f, const ChartPoint& p, int order) {
    if (f->valence != 0) throw std::invalid_argument("eval_scalar: valence != 0");
    return f->eval(p, order).data()[0];
}

namespace {

json matrix_to_json(const Eigen::MatrixXcd& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back({M(i, j).real(), M(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

struct QuadraticScalar final : TensorFieldNode {
    Eigen::MatrixXcd M;

    TensorJet eval(const ChartPoint& p, int order) const override {
        auto z = homogeneous_jets(p, order);  // unnormalised lift
        const int d = n + 1;
        Jet num = z[0].re * 0.0, den = num;
        for (int i = 0; i < d; ++i) den += z[i].norm2();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                // Re( conj(z_i) M_ij z_j ); hermiticity keeps the sum real
                CJet t = z[i].conj() * z[j];
                num += t.re * M(i, j).real() - t.im * M(i, j).imag();
            }
        TensorJet out(p.mdim(), 0, num * den.reciprocal());
        return out;
    }
    json describe() const override {
        return {{"node", "quadratic"}, {"M", matrix_to_json(M)}};
    }
};

struct ConstantScalar final : TensorFieldNode {
    double c = 0.0;
    TensorJet eval(const ChartPoint& p, int order) const override {
        return TensorJet(p.mdim(), 0, Jet::constant(p.mdim(), order, c));
    }
    json describe() const override { return {{"node", "const"}, {"value", c}}; }
};

struct SumField final : TensorFieldNode {
    std::vector<TensorField> parts;
    TensorJet eval(const ChartPoint& p, int order) const override {
        TensorJet acc = parts[0]->eval(p, order);
        for (std::size_t i = 1; i < parts.size(); ++i) acc += parts[i]->eval(p, order);
        return acc;
    }
    json describe() const override {
        json arr = json::array();
        for (const auto& f : parts) arr.push_back(f->describe());
        return {{"node", "sum"}, {"parts", arr}};
    }
};

struct ScaleField final : TensorFieldNode {
    TensorField base;
    double s = 1.0;
    TensorJet eval(const ChartPoint& p, int order) const override {
        return base->eval(p, order) * s;
    }
    json describe() const override {
        return {{"node", "scale"}, {"s", s}, {"base", base->describe()}};
    }
};

struct ProductScalar final : TensorFieldNode {
    TensorField a, b;
    TensorJet eval(const ChartPoint& p, int order) const override {
        return TensorJet(p.mdim(), 0,
                         a->eval(p, order).data()[0] * b->eval(p, order).data()[0]);
    }
    json describe() const override {
        return {{"node", "product"}, {"a", a->describe()}, {"b", b->describe()}};
    }
};

struct TrigScalar final : TensorFieldNode {
    TensorField base;
    double freq = 1.0, phase = 0.0;
    bool use_sin = false;
    TensorJet eval(const ChartPoint& p, int order) const override {
        Jet u = base->eval(p, order).data()[0] * freq + phase;
        return TensorJet(p.mdim(), 0, use_sin ? u.sin() : u.cos());
    }
    json describe() const override {
        return {{"node", use_sin ? "sin" : "cos"},
                {"freq", freq},
                {"phase", phase},
                {"base", base->describe()}};
    }
};

struct DifferentialField final : TensorFieldNode {
    TensorField base;
    TensorJet eval(const ChartPoint& p, int order) const override {
        Jet f = base->eval(p, order + 1).data()[0];
        const int m = p.mdim();
        TensorJet out(m, 1, Jet::constant(m, order, 0.0));
        for (int a = 0; a < m; ++a) out.at({a}) = f.deriv(a);
        return out;
    }
    json describe() const override { return {{"node", "d"}, {"base", base->describe()}}; }
};

struct SymProductField final : TensorFieldNode {
    TensorField coeff;
    std::vector<TensorField> forms;
    TensorJet eval(const ChartPoint& p, int order) const override {
        TensorJet acc(p.mdim(), 0, coeff->eval(p, order).data()[0]);
        for (const auto& f : forms) acc = outer(acc, f->eval(p, order));
        return acc.symmetrized_all();
    }
    json describe() const override {
        json arr = json::array();
        for (const auto& f : forms) arr.push_back(f->describe());
        return {{"node", "sym-product"}, {"coeff", coeff->describe()}, {"forms", arr}};
    }
};

struct ScalarTimes final : TensorFieldNode {
    TensorField scalar, tensor;
    TensorJet eval(const ChartPoint& p, int order) const override {
        Jet s = scalar->eval(p, order).data()[0];
        TensorJet t = tensor->eval(p, order);
        for (auto& c : t.data()) c = c * s;
        return t;
    }
    json describe() const override {
        return {{"node", "scalar-times"},
                {"scalar", scalar->describe()},
                {"tensor", tensor->describe()}};
    }
};

struct MetricFieldNode final : TensorFieldNode {
    TensorJet eval(const ChartPoint& p, int order) const override {
        return geom_at(p, order)->g;
    }
    json describe() const override { return {{"node", "metric"}}; }
};

struct KahlerFieldNode final : TensorFieldNode {
    TensorJet eval(const ChartPoint& p, int order) const override {
        return geom_at(p, order)->J_low;
    }
    json describe() const override { return {{"node", "kahler-form"}}; }
};

struct KillingForm final : TensorFieldNode {
    Eigen::MatrixXcd A;
    TensorJet eval(const ChartPoint& p, int order) const override {
        auto X = generator_vector_jets(space, n, A, p, order);
        auto geom = geom_at(p, order);
        const int m = p.mdim();
        TensorJet out(m, 1, Jet::constant(m, order, 0.0));
        for (int a = 0; a < m; ++a) {
            Jet acc = Jet::constant(m, order, 0.0);
            for (int b = 0; b < m; ++b) acc += geom->g.at({a, b}) * X[b];
            out.at({a}) = acc;
        }
        return out;
    }
    json describe() const override { return {{"node", "killing"}, {"A", matrix_to_json(A)}}; }
};

struct CovDerivField final : TensorFieldNode {
    TensorField base;
    TensorJet eval(const ChartPoint& p, int order) const override {
        TensorJet b = base->eval(p, order + 1);
        auto geom = geom_at(p, order + 1);
        return cov_deriv(b, *geom).symmetrized_all();
    }
    json describe() const override {
        return {{"node", "sym-cov-deriv"}, {"base", base->describe()}};
    }
};

/// shared pullback logic for maps given by chart jets
TensorJet pullback_eval(const TensorField& base, const std::vector<Jet>& map_jets,
                        const ChartPoint& image, int order, int out_vars) {
    const int M = static_cast<int>(map_jets.size());  // target chart dimension
    // offsets with vanishing constant term for substitution
    std::vector<Jet> subs(map_jets.size());
    for (std::size_t i = 0; i < map_jets.size(); ++i) {
        subs[i] = truncated(map_jets[i], order);
        subs[i].coeffs()[0] = 0.0;
    }
    TensorJet comp = base->eval(image, order);
    const int k = comp.valence();
    const Jet zero = Jet::constant(out_vars, order, 0.0);

    // substitute the map into every component
    std::vector<Jet> cur(comp.size(), zero);
    for (std::size_t f = 0; f < comp.size(); ++f) cur[f] = substitute(comp[f], subs);

    // Jacobian jets d(map)^b / d x^i
    std::vector<Jet> jac(static_cast<std::size_t>(M) * out_vars, zero);
    for (int b = 0; b < M; ++b)
        for (int i = 0; i < out_vars; ++i)
            jac[static_cast<std::size_t>(b) * out_vars + i] = map_jets[b].deriv(i);

    // successively contract each slot; intermediates have mixed shape
    for (int s = 0; s < k; ++s) {
        const std::size_t lead = Tensor<double>::pow_size(out_vars, s);
        const std::size_t tail = Tensor<double>::pow_size(M, k - s - 1);
        std::vector<Jet> buf(lead * static_cast<std::size_t>(out_vars) * tail, zero);
        for (std::size_t L = 0; L < lead; ++L)
            for (int b = 0; b < M; ++b)
                for (int i = 0; i < out_vars; ++i) {
                    const Jet& jbi = jac[static_cast<std::size_t>(b) * out_vars + i];
                    const std::size_t src = (L * M + b) * tail;
                    const std::size_t dst = (L * static_cast<std::size_t>(out_vars) + i) * tail;
                    for (std::size_t T = 0; T < tail; ++T) buf[dst + T] += jbi * cur[src + T];
                }
        cur = std::move(buf);
    }
    TensorJet out(out_vars, k, zero);
    out.data() = std::move(cur);
    return out;
}

struct IsometryPullback final : TensorFieldNode {
    Eigen::MatrixXcd U;
    TensorField base;
    TensorJet eval(const ChartPoint& p, int order) const override {
        int chart = 0;
        auto mj = isometry_chart_jets(U, p, order + 1, &chart);
        ChartPoint q;
        q.space = space;
        q.n = n;
        q.chart = chart;
        q.x.resize(mj.size());
        for (std::size_t i = 0; i < mj.size(); ++i) q.x[i] = mj[i].value();
        return pullback_eval(base, mj, q, order, p.mdim());
    }
    json describe() const override {
        return {{"node", "isometry-pullback"}, {"U", matrix_to_json(U)}, {"base", base->describe()}};
    }
};

struct EmbeddingPullback final : TensorFieldNode {
    ModelEmbedding emb;
    TensorField base;
    TensorJet eval(const ChartPoint& p, int order) const override {
        int chart = 0;
        auto mj = embedding_chart_jets(emb, p, order + 1, &chart);
        ChartPoint q;
        q.space = Space::CP;
        q.n = n;
        q.chart = chart;
        q.x.resize(mj.size());
        for (std::size_t i = 0; i < mj.size(); ++i) q.x[i] = mj[i].value();
        return pullback_eval(base, mj, q, order, p.mdim());
    }
    json describe() const override {
        return {{"node", "embedding-pullback"},
                {"U", matrix_to_json(emb.U)},
                {"base", base->describe()}};
    }
};

struct LocalPrimitive final : TensorFieldNode {
    int taylor_order = 10;
    TensorJet eval(const ChartPoint& p, int order) const override {
        const int m = p.mdim();
        if (p.chart != 0) throw std::invalid_argument("local primitive: chart 0 only");
        // alpha_a(x) = sum_b x^b int_0^1 t J_{ba}(t x) dt (radial homotopy);
        // assemble once as a polynomial at the chart origin
        ChartPoint origin = p;
        origin.x.assign(m, 0.0);
        auto geom = geom_at(origin, taylor_order);
        std::vector<Jet> alpha(m, Jet::constant(m, taylor_order, 0.0));
        const JetLayout& lay = alpha[0].layout();
        for (int a = 0; a < m; ++a) {
            Jet acc = Jet::constant(m, taylor_order, 0.0);
            for (int b = 0; b < m; ++b) {
                const Jet& Jba = geom->J_low.at({b, a});
                // each monomial x^beta of J_ba contributes x^beta x^b / (|beta| + 2)
                for (int k = 0; k < lay.size(); ++k) {
                    const double c = Jba.coeffs()[k];
                    if (c == 0.0) continue;
                    int deg = 0;
                    for (auto v : lay.mons[k]) deg += v;
                    auto mon = lay.mons[k];
                    mon[b] = static_cast<std::uint8_t>(mon[b] + 1);
                    int pos = lay.find(mon);
                    if (pos >= 0) acc.coeffs()[pos] += c / (deg + 2.0);
                }
            }
            alpha[a] = acc;
        }
        // Taylor-shift to p: substitute x = p + delta
        std::vector<Jet> shift(m);
        for (int v = 0; v < m; ++v) shift[v] = Jet::variable(m, order, v, p.x[v]);
        TensorJet out(m, 1, Jet::constant(m, order, 0.0));
        for (int a = 0; a < m; ++a) out.at({a}) = substitute(alpha[a], shift);
        return out;
    }
    json describe() const override {
        return {{"node", "local-symplectic-primitive"}, {"order", taylor_order}};
    }
};

template <typename NodeT>
TensorField finish(std::shared_ptr<NodeT> node, Space space, int n, int valence) {
    node->space = space;
    node->n = n;
    node->valence = valence;
    return node;
}

}  // namespace

TensorField quadratic_scalar(Space space, int n, const Eigen::MatrixXcd& M) {
    auto node = std::make_shared<QuadraticScalar>();
    node->M = M;
    return finish(node, space, n, 0);
}

TensorField constant_scalar(Space space, int n, double c) {
    auto node = std::make_shared<ConstantScalar>();
    node->c = c;
    return finish(node, space, n, 0);
}

TensorField sum_fields(const std::vector<TensorField>& fs) {
    auto node = std::make_shared<SumField>();
    node->parts = fs;
    return finish(node, fs[0]->space, fs[0]->n, fs[0]->valence);
}

TensorField scale_field(const TensorField& f, double s) {
    auto node = std::make_shared<ScaleField>();
    node->base = f;
    node->s = s;
    return finish(node, f->space, f->n, f->valence);
}

TensorField multiply_scalars(const TensorField& a, const TensorField& b) {
    auto node = std::make_shared<ProductScalar>();
    node->a = a;
    node->b = b;
    return finish(node, a->space, a->n, 0);
}

TensorField trig_of(const TensorField& base, double freq, double phase, bool use_sin) {
    auto node = std::make_shared<TrigScalar>();
    node->base = base;
    node->freq = freq;
    node->phase = phase;
    node->use_sin = use_sin;
    return finish(node, base->space, base->n, 0);
}

TensorField differential(const TensorField& scalar) {
    auto node = std::make_shared<DifferentialField>();
    node->base = scalar;
    return finish(node, scalar->space, scalar->n, 1);
}

TensorField sym_product(const TensorField& coeff, const std::vector<TensorField>& one_forms) {
    auto node = std::make_shared<SymProductField>();
    node->coeff = coeff;
    node->forms = one_forms;
    return finish(node, coeff->space, coeff->n, static_cast<int>(one_forms.size()));
}

TensorField metric_field(Space space, int n) {
    return finish(std::make_shared<MetricFieldNode>(), space, n, 2);
}

TensorField kahler_form_field(int n) {
    return finish(std::make_shared<KahlerFieldNode>(), Space::CP, n, 2);
}

TensorField killing_one_form(Space space, int n, const Eigen::MatrixXcd& A) {
    auto node = std::make_shared<KillingForm>();
    node->A = A;
    return finish(node, space, n, 1);
}

TensorField sym_cov_deriv(const TensorField& f) {
    auto node = std::make_shared<CovDerivField>();
    node->base = f;
    return finish(node, f->space, f->n, f->valence + 1);
}

TensorField isometry_pullback(const Eigen::MatrixXcd& U, const TensorField& f) {
    auto node = std::make_shared<IsometryPullback>();
    node->U = U;
    node->base = f;
    return finish(node, f->space, f->n, f->valence);
}

TensorField embedding_pullback(const ModelEmbedding& e, const TensorField& f) {
    auto node = std::make_shared<EmbeddingPullback>();
    node->emb = e;
    node->base = f;
    return finish(node, Space::RP, f->n, f->valence);
}

TensorField local_symplectic_primitive(int n, int taylor_order) {
    auto node = std::make_shared<LocalPrimitive>();
    node->taylor_order = taylor_order;
    return finish(node, Space::CP, n, 1);
}

std::vector<Jet> generator_vector_jets(Space space, int n, const Eigen::MatrixXcd& A,
                                       const ChartPoint& p, int order) {
    const int m = p.mdim();
    auto z = homogeneous_jets(p, order);  // unnormalised, z_chart = 1
    // velocity of w_j = z_j / z_c under zdot = A z with z_c pinned to 1:
    // u_j = (A z)_j - w_j (A z)_c
    std::vector<CJet> Az(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        CJet acc = CJet::constant(m, order, 0.0, 0.0);
        for (int j = 0; j <= n; ++j) {
            const std::complex<double> u = A(i, j);
            acc = acc + CJet{z[j].re * u.real() - z[j].im * u.imag(),
                             z[j].re * u.imag() + z[j].im * u.real()};
        }
        Az[i] = acc;
    }
    std::vector<Jet> X(m, Jet::constant(m, order, 0.0));
    int t = 0;
    for (int j = 0; j <= n; ++j) {
        if (j == p.chart) continue;
        CJet u = Az[j] - z[j] * Az[p.chart];
        X[t] = u.re;
        if (space == Space::CP) X[n + t] = u.im;
        ++t;
    }
    return X;
}

GeneratedField make_field(Space space, int n, const std::string& kind, int valence,
                          std::uint64_t seed) {
    Rng rng(seed);
    const int d = n + 1;
    GeneratedField out;
    out.record = {{"kind", kind}, {"space", space == Space::CP ? "CP" : "RP"},
                  {"n", n},       {"valence", valence},
                  {"seed", seed}};

    auto random_hermitian = [&]() {
        Eigen::MatrixXcd M(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) M(i, j) = rng.cnormal();
        if (space == Space::RP) M = M.real().cast<std::complex<double>>();
        Eigen::MatrixXcd H = (M + M.adjoint()) * 0.5;
        return Eigen::MatrixXcd(H / H.norm());
    };
    auto random_scalar = [&](bool with_trig) {
        std::vector<TensorField> parts;
        for (int k = 0; k < 2; ++k) {
            TensorField q = quadratic_scalar(space, n, random_hermitian());
            if (with_trig)
                q = trig_of(q, rng.uniform(0.5, 2.5), rng.uniform(0.0, 6.28), rng.bits() & 1);
            parts.push_back(scale_field(q, rng.uniform(-1.0, 1.0)));
        }
        return sum_fields(parts);
    };
    auto random_sym_field = [&](int p, bool with_trig) -> TensorField {
        if (p == 0) return random_scalar(with_trig);
        std::vector<TensorField> terms;
        for (int k = 0; k < 2; ++k) {
            std::vector<TensorField> forms;
            for (int s = 0; s < p; ++s) forms.push_back(differential(random_scalar(with_trig)));
            terms.push_back(sym_product(random_scalar(with_trig), forms));
        }
        return sum_fields(terms);
    };

    if (kind == "homogeneous-hermitian") {
        out.field = random_sym_field(valence, false);
    } else if (kind == "random-trig") {
        out.field = random_sym_field(valence, true);
    } else if (kind == "metric-multiple") {
        if (valence != 2) throw std::invalid_argument("metric-multiple: valence 2 only");
        auto node = std::make_shared<ScalarTimes>();
        node->scalar = random_scalar(false);
        node->tensor = metric_field(space, n);
        out.field = finish(node, space, n, 2);
    } else if (kind == "killing") {
        if (valence != 1) throw std::invalid_argument("killing: valence 1 only");
        Eigen::MatrixXcd A = random_su_algebra(d, rng.bits());
        if (space == Space::RP) {
            // real rotation generator: the real part of an anti-Hermitian
            // matrix is antisymmetric
            Eigen::MatrixXd S = A.real();
            A = ((S - S.transpose()) * 0.5).cast<std::complex<double>>();
        }
        out.field = killing_one_form(space, n, A);
    } else if (kind == "potential") {
        TensorField phi = random_sym_field(valence - 1, true);
        out.field = sym_cov_deriv(phi);
        out.record["potential-of"] = phi->describe();
    } else {
        throw std::invalid_argument("make_field: unknown kind " + kind);
    }
    if (!out.field) throw std::logic_error("make_field: construction failed");
    out.record["description"] = out.field->describe();
    return out;
}

}  // namespace cpx

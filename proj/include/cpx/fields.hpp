#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "cpx/embedding.hpp"
#include "cpx/geometry.hpp"

#include "json.hpp"

namespace cpx {

/// A covariant tensor field given by jet-evaluable chart components. All
/// catalogue fields are built from homogeneous U(1)-invariant data, so they
/// are globally defined by construction; chart consistency is a consequence
/// and is covered by tests rather than assumed.
class TensorFieldNode {
public:
    Space space = Space::CP;
    int n = 2;
    int valence = 0;

    virtual ~TensorFieldNode() = default;
    virtual TensorJet eval(const ChartPoint& p, int order) const = 0;
    virtual nlohmann::json describe() const = 0;
};

using TensorField = std::shared_ptr<const TensorFieldNode>;

/// Scalar evaluation shortcut (valence-0 fields).
Jet eval_scalar(const TensorField& f, const ChartPoint& p, int order);

// --- catalogue constructors ---

/// (z^dag M z) / |z|^2 for Hermitian M on CP, (x^T S x)/|x|^2 for symmetric
/// S on RP; the basic globally defined scalar.
TensorField quadratic_scalar(Space space, int n, const Eigen::MatrixXcd& M);

TensorField constant_scalar(Space space, int n, double c);
TensorField sum_fields(const std::vector<TensorField>& fs);
TensorField scale_field(const TensorField& f, double s);
TensorField multiply_scalars(const TensorField& a, const TensorField& b);
TensorField trig_of(const TensorField& base, double freq, double phase, bool use_sin);

/// Exterior differential of a scalar (valence 1).
TensorField differential(const TensorField& scalar);

/// coeff * sym(omega_1 (x) ... (x) omega_p) for valence-1 factors.
TensorField sym_product(const TensorField& coeff, const std::vector<TensorField>& one_forms);

TensorField metric_field(Space space, int n);
TensorField kahler_form_field(int n);

/// Killing 1-form of the isometry generator A (anti-Hermitian traceless on
/// CP, antisymmetric on RP).
TensorField killing_one_form(Space space, int n, const Eigen::MatrixXcd& A);

/// Symmetrised covariant derivative (valence p -> p+1).
TensorField sym_cov_deriv(const TensorField& f);

/// Pullback along the isometry [z] -> [U z].
TensorField isometry_pullback(const Eigen::MatrixXcd& U, const TensorField& f);

/// Pullback of a CP field along a model embedding (gives an RP field).
TensorField embedding_pullback(const ModelEmbedding& e, const TensorField& f);

/// Chart-local 1-form with d(alpha) = J near the origin of chart 0, built by
/// the radial homotopy formula from a high-order expansion of J. Only valid
/// near the chart origin (|x| small compared to 1); used by kernel-structure
/// tests.
TensorField local_symplectic_primitive(int n, int taylor_order);

/// Chart velocity jets of the one-parameter isometry group generated by A.
std::vector<Jet> generator_vector_jets(Space space, int n, const Eigen::MatrixXcd& A,
                                       const ChartPoint& p, int order);

// --- seeded generator catalogue ---

struct GeneratedField {
    TensorField field;
    nlohmann::json record;  // kind + parameters + seed; reproducible
};

/// kinds: "homogeneous-hermitian", "random-trig", "metric-multiple",
/// "killing", "potential".
GeneratedField make_field(Space space, int n, const std::string& kind, int valence,
                          std::uint64_t seed);

}  // namespace cpx

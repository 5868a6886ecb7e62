#pragma once

#include <string>

#include "cpx/symplectic.hpp"
#include "cpx/tensor.hpp"

namespace cpx {

/// Tensor symmetry classes the toolkit supports. SkewPairs(l) is the class
/// of valence-2l tensors with l skew index pairs, symmetric in the pairs and
/// killed by antisymmetrisation over any three indices; l = 2 is the Riemann
/// class. Classes are declared by the caller, never inferred.
struct SymmetryClass {
    enum Kind { KForm, Symmetric, SkewPairs };
    Kind kind = KForm;
    int param = 1;  // k for forms, p for symmetric, l for skew pairs

    int valence() const { return kind == SkewPairs ? 2 * param : param; }
    std::string name() const;

    static SymmetryClass form(int k) { return {KForm, k}; }
    static SymmetryClass symmetric(int p) { return {Symmetric, p}; }
    static SymmetryClass skew_pairs(int l) { return {SkewPairs, l}; }
    static SymmetryClass riemann() { return {SkewPairs, 2}; }

    bool operator<(const SymmetryClass& o) const {
        return kind != o.kind ? kind < o.kind : param < o.param;
    }
};

/// Regroup a tensor between the two presentations of the SkewPairs class:
/// pair order (p a q b ... r c) versus two-group order (p q ... r a b ... c).
DenseTensor pairs_to_groups(const DenseTensor& t, int ell);
DenseTensor groups_to_pairs(const DenseTensor& T, int ell);
TensorJet pairs_to_groups(const TensorJet& t, int ell);
TensorJet groups_to_pairs(const TensorJet& T, int ell);

/// The pair-skewing homomorphism: takes T symmetric within two groups of
/// l indices, re-orders to pairs and antisymmetrises each pair (averaging
/// convention, total weight 1/2^l). For l = 1 this is half the exterior
/// product. Output uses the pair presentation.
DenseTensor skew_pair_map(const DenseTensor& T, int ell);
TensorJet skew_pair_map(const TensorJet& T, int ell);

/// Residuals of the pair-class symmetries for a claimed SkewPairs tensor:
/// pair skewness, pair exchange symmetry and the three-index cycle identity.
double skew_pair_symmetry_residual(const DenseTensor& R, int ell);

/// Projection of an arbitrary valence-matching tensor onto the class.
DenseTensor project_to_class(const DenseTensor& t, const SymmetryClass& cls);

/// Totally trace-free part with respect to the symplectic form: the
/// component of psi in the joint kernel of all J-traces, taken along the
/// span of all J-insertions inside the class. Built once per (class, dim)
/// by explicit linear algebra on the standard Darboux frame and applied to
/// arbitrary symplectic data through an adapted frame.
class PerpProjector {
public:
    static const PerpProjector& get(const SymmetryClass& cls, int dim);

    /// psi must lie in the class (standard Darboux frame components).
    DenseTensor apply(const DenseTensor& psi) const;

    /// Stacked J-traces of psi (standard frame), for diagnostics.
    double trace_residual(const DenseTensor& psi) const;

    int insertion_rank() const { return static_cast<int>(sbasis_.size()); }

private:
    PerpProjector(const SymmetryClass& cls, int dim);

    std::vector<double> stacked_traces(const DenseTensor& psi) const;

    SymmetryClass cls_;
    int dim_ = 0;
    SymplecticData S_;
    std::vector<DenseTensor> sbasis_;          // orthonormal basis of the insertion span
    Eigen::MatrixXd trace_of_sbasis_;          // stacked traces of the basis
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> solver_;
};

/// Trace-free part for explicit symplectic data (g, J at a point): conjugates
/// the cached standard-frame projector by a Darboux frame for S.
DenseTensor perp_project(const DenseTensor& psi, const SymmetryClass& cls,
                         const SymplecticData& S);

/// Darboux frame for compatible (g, J): columns F satisfy F^T g F = I and
/// put J into the standard block form.
Eigen::MatrixXd darboux_frame(const SymplecticData& S);

/// Covariant transform of tensor components into / out of a frame.
DenseTensor to_frame(const DenseTensor& t, const Eigen::MatrixXd& F);
DenseTensor from_frame(const DenseTensor& t, const Eigen::MatrixXd& F);

}  // namespace cpx

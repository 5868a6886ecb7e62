#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "cpx/geometry.hpp"

namespace cpx {

/// A totally geodesic copy of RP_n inside CP_n: the standard real locus
/// moved by a special unitary matrix.
struct ModelEmbedding {
    Eigen::MatrixXcd U;  // (n+1) x (n+1), special unitary
    int n() const { return static_cast<int>(U.rows()) - 1; }
};

/// || U^dag U - I || + |det U - 1|.
double embedding_unitarity_residual(const ModelEmbedding& e);

ModelEmbedding standard_embedding(int n);
ModelEmbedding random_embedding(int n, std::uint64_t seed);

/// Haar-ish special unitary / random traceless anti-Hermitian matrix.
Eigen::MatrixXcd haar_su(int dim, std::uint64_t seed);
Eigen::MatrixXcd random_su_algebra(int dim, std::uint64_t seed);

/// The image point of a real projective point.
ChartPoint embed_point(const ModelEmbedding& e, const ChartPoint& rp);

/// Jets of the CP chart coordinates of the embedding as functions of RP
/// chart offsets; the chosen CP chart is written to *out_chart.
std::vector<Jet> embedding_chart_jets(const ModelEmbedding& e, const ChartPoint& rp, int order,
                                      int* out_chart);

/// d(iota): 2n x n Jacobian in chart coordinates at the point.
Eigen::MatrixXd embedding_jacobian(const ModelEmbedding& e, const ChartPoint& rp, int* out_chart);

/// Pullback of a covariant tensor at the image point to RP components.
DenseTensor pullback_at(const ModelEmbedding& e, const ChartPoint& rp, const DenseTensor& t);

/// Action of an ambient unitary on points, with chart jets for pullbacks.
ChartPoint act_point(const Eigen::MatrixXcd& U, const ChartPoint& p);
std::vector<Jet> isometry_chart_jets(const Eigen::MatrixXcd& U, const ChartPoint& p, int order,
                                     int* out_chart);

}  // namespace cpx

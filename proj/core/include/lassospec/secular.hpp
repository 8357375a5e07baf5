#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lassospec/metric_graph.hpp"

namespace lassospec {

enum class RowKind { continuity, kirchhoff, dirichlet };

/// The vertex-condition system at spectral parameter k (lambda = k^2) over
/// the per-edge trigonometric coefficients (a_e, b_e), where the restriction
/// to edge e is f_e(x) = a_e cos(kx) + b_e sin(kx) on [0, len_e], x measured
/// from the `from` endpoint. The system is square of size 2|E|; its null
/// space is isomorphic to the eigenspace at lambda = k^2.
struct SecularSystem {
    double k = 0.0;
    Eigen::MatrixXd matrix;
    std::vector<RowKind> row_kinds;
    std::vector<std::string> column_edges;  ///< edge id for column pair (2i, 2i+1)
};

/// Builds the row-normalized secular system. Derivative rows carry the k
/// factor divided out, so conditioning is uniform in k; rows are scaled to
/// unit max-norm, except that rows whose raw max-norm falls below 0.5 are
/// left as they are. (Those are vanishing loop conditions; rescaling them
/// would erase the rank drop that encodes the eigenvalue.)
SecularSystem assemble_secular_system(const MetricGraph& g, double k);

/// Singular values of the assembled system, descending.
Eigen::VectorXd secular_singular_values(const MetricGraph& g, double k);

/// Smallest singular value of the normalized system; zero exactly at
/// eigenvalues of the Laplacian.
double sigma_min(const MetricGraph& g, double k);

}  // namespace lassospec

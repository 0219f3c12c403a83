#pragma once

#include <Eigen/Dense>

// Chebyshev-Gauss-Lobatto collocation operators on [-1,1]: nodes,
// differentiation matrices, Clenshaw-Curtis quadrature weights, Lagrange
// interpolation between grids, and the low-pass filter used to smooth random
// chromosomes. Everything is built once and shared immutably.

namespace sma {

/// CGL nodes cos(pi*i/N), i = 0..N, strictly decreasing from 1 to -1.
Eigen::VectorXd cgl_nodes(int order);

/// Collocation differentiation matrix on the CGL grid of the given order.
/// Exact (to round-off) for polynomials of degree <= order.
Eigen::MatrixXd diff_matrix(int order);

/// Clenshaw-Curtis weights: sum_i w_i f(x_i) integrates f over [-1,1],
/// exactly for polynomials of degree <= order.
Eigen::VectorXd quad_weights(int order);

/// Lagrange cardinal-function matrix: entry (i,j) is the j-th cardinal
/// polynomial of the source grid evaluated at eval_points[i]. Multiplying a
/// vector of nodal values interpolates it to the eval points.
Eigen::MatrixXd cardinal_matrix(const Eigen::VectorXd& source_nodes,
                                const Eigen::VectorXd& eval_points);

struct SpectralOperators {
    int order = 0;
    Eigen::VectorXd nodes;  // order+1 CGL nodes, descending
    Eigen::MatrixXd diff;   // (order+1) x (order+1)
    Eigen::VectorXd quad;   // order+1 nonnegative weights, sum = 2
};

SpectralOperators make_operators(int order);

struct FilterPair {
    int order_fine = 0;
    int order_sparse = 0;
    Eigen::MatrixXd restrict_to_sparse;  // (s+1) x (f+1), least-squares fit
    Eigen::MatrixXd prolong_to_fine;     // (f+1) x (s+1), interpolation
    Eigen::MatrixXd filter;              // prolong * restrict, oblique projection
};

/// Smoothing filter between CGL grids: prolong is plain Chebyshev
/// interpolation sparse -> fine; restrict is its least-squares pseudo-inverse
/// (computed via a QR factorization, not normal equations). The product
/// projects fine-grid data onto the sparse polynomial space, stripping
/// high-frequency content. Requires 1 <= order_sparse < order_fine.
FilterPair filter_pair(int order_fine, int order_sparse);

/// Tensor-product Chebyshev interpolation of a (m_from+1)^2 nodal field onto
/// the CGL grid of order m_to. Exact for polynomial fields of degree m_from.
Eigen::MatrixXd grid_transfer_2d(const Eigen::MatrixXd& field, int order_from,
                                 int order_to);

}  // namespace sma

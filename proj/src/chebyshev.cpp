#include "sma/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sma {

namespace {
constexpr double kPi = std::numbers::pi;

void require_order(int order) {
    if (order < 1) throw std::invalid_argument("chebyshev: order must be >= 1");
}
}  // namespace

Eigen::VectorXd cgl_nodes(int order) {
    require_order(order);
    Eigen::VectorXd x(order + 1);
    for (int i = 0; i <= order; ++i)
        x(i) = std::cos(kPi * static_cast<double>(i) / static_cast<double>(order));
    x(0) = 1.0;
    x(order) = -1.0;
    if (order % 2 == 0) x(order / 2) = 0.0;
    return x;
}

Eigen::MatrixXd diff_matrix(int order) {
    require_order(order);
    const int n = order;
    const Eigen::VectorXd x = cgl_nodes(n);
    Eigen::MatrixXd d(n + 1, n + 1);

    auto c = [n](int i) { return (i == 0 || i == n) ? 2.0 : 1.0; };

    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            d(i, j) = (c(i) / c(j)) * sign / (x(i) - x(j));
        }
    }
    const double corner = (2.0 * n * n + 1.0) / 6.0;
    d(0, 0) = corner;
    d(n, n) = -corner;
    for (int i = 1; i < n; ++i) d(i, i) = -x(i) / (2.0 * (1.0 - x(i) * x(i)));
    return d;
}

Eigen::VectorXd quad_weights(int order) {
    require_order(order);
    const int n = order;
    Eigen::VectorXd w(n + 1);

    // Clenshaw-Curtis on the CGL grid, assembled from the cosine expansion of
    // the integrand; exact through degree n.
    const double end = (n % 2 == 0) ? 1.0 / (static_cast<double>(n) * n - 1.0)
                                    : 1.0 / (static_cast<double>(n) * n);
    w(0) = end;
    w(n) = end;
    for (int i = 1; i < n; ++i) {
        const double theta = kPi * static_cast<double>(i) / static_cast<double>(n);
        double v = 1.0;
        const int kmax = (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2;
        for (int k = 1; k <= kmax; ++k)
            v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * static_cast<double>(k) * k - 1.0);
        if (n % 2 == 0)
            v -= std::cos(static_cast<double>(n) * theta) /
                 (static_cast<double>(n) * n - 1.0);
        w(i) = 2.0 * v / static_cast<double>(n);
    }
    return w;
}

Eigen::MatrixXd cardinal_matrix(const Eigen::VectorXd& source_nodes,
                                const Eigen::VectorXd& eval_points) {
    const Eigen::Index m = source_nodes.size();
    if (m < 1) throw std::invalid_argument("cardinal_matrix: empty source grid");

    // Barycentric weights; fails loudly on coincident nodes.
    Eigen::VectorXd lambda = Eigen::VectorXd::Ones(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = 0; k < m; ++k) {
            if (k == j) continue;
            const double diff = source_nodes(j) - source_nodes(k);
            if (diff == 0.0)
                throw std::invalid_argument("cardinal_matrix: duplicate source nodes");
            lambda(j) /= diff;
        }
    }

    Eigen::MatrixXd out(eval_points.size(), m);
    for (Eigen::Index i = 0; i < eval_points.size(); ++i) {
        const double xe = eval_points(i);
        Eigen::Index hit = -1;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (xe == source_nodes(j)) {
                hit = j;
                break;
            }
        }
        if (hit >= 0) {
            out.row(i).setZero();
            out(i, hit) = 1.0;
            continue;
        }
        double denom = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            out(i, j) = lambda(j) / (xe - source_nodes(j));
            denom += out(i, j);
        }
        out.row(i) /= denom;
    }
    return out;
}

SpectralOperators make_operators(int order) {
    SpectralOperators ops;
    ops.order = order;
    ops.nodes = cgl_nodes(order);
    ops.diff = diff_matrix(order);
    ops.quad = quad_weights(order);
    return ops;
}

FilterPair filter_pair(int order_fine, int order_sparse) {
    if (order_sparse < 1 || order_sparse >= order_fine)
        throw std::invalid_argument("filter_pair: need 1 <= order_sparse < order_fine");

    FilterPair f;
    f.order_fine = order_fine;
    f.order_sparse = order_sparse;

    const Eigen::VectorXd fine = cgl_nodes(order_fine);
    const Eigen::VectorXd sparse = cgl_nodes(order_sparse);

    f.prolong_to_fine = cardinal_matrix(sparse, fine);

    // Least-squares restriction through a QR factorization of the
    // prolongation, applied to the identity columnwise.
    const Eigen::Index nf = fine.size();
    f.restrict_to_sparse = f.prolong_to_fine.colPivHouseholderQr().solve(
        Eigen::MatrixXd::Identity(nf, nf));

    f.filter = f.prolong_to_fine * f.restrict_to_sparse;
    return f;
}

Eigen::MatrixXd grid_transfer_2d(const Eigen::MatrixXd& field, int order_from,
                                 int order_to) {
    if (field.rows() != order_from + 1 || field.cols() != order_from + 1)
        throw std::invalid_argument("grid_transfer_2d: field shape mismatch");
    if (order_from == order_to) return field;
    const Eigen::MatrixXd t =
        cardinal_matrix(cgl_nodes(order_from), cgl_nodes(order_to));
    return t * field * t.transpose();
}

}  // namespace sma

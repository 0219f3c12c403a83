#include "sma/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace sma {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_square(const Eigen::MatrixXd& m, int order, const char* what) {
    if (m.rows() != order + 1 || m.cols() != order + 1)
        throw std::invalid_argument(std::string(what) + ": field shape mismatch");
}
}  // namespace

StrainFields strains_2d(const Field2D& field, const Domain2D& dom,
                        const SpectralOperators& ops) {
    require_square(field.u1, dom.order, "strains_2d");
    require_square(field.u2, dom.order, "strains_2d");

    const Eigen::MatrixXd& d = ops.diff;
    const double sx = dom.scale_x();
    const double sy = dom.scale_y();

    // First index runs over x nodes, second over y nodes: d/dx acts from the
    // left, d/dy from the right.
    const Eigen::MatrixXd h11 = sx * (d * field.u1);
    const Eigen::MatrixXd h22 = sy * (field.u2 * d.transpose());
    const Eigen::MatrixXd du1dy = sy * (field.u1 * d.transpose());
    const Eigen::MatrixXd du2dx = sx * (d * field.u2);

    StrainFields s;
    s.e1 = (h11 + h22) * kInvSqrt2;
    s.e2 = (h11 - h22) * kInvSqrt2;
    s.e3 = 0.5 * (du1dy + du2dx);
    return s;
}

double bulk_energy_2d(const Field2D& field, const Domain2D& dom,
                      const SpectralOperators& ops, const LoadCase& load,
                      const ThermalState& thermal, const MaterialParams& p) {
    const StrainFields s = strains_2d(field, dom, ops);
    const int n = dom.order;
    const double jac = dom.jacobian();

    double w = 0.0;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double density = full_density_2d(s.e1(i, j), s.e2(i, j),
                                                   s.e3(i, j), thermal.delta_theta, p) -
                                   load.fx * field.u1(i, j) - load.fy * field.u2(i, j);
            w += ops.quad(i) * ops.quad(j) * density;
        }
    }
    return jac * w;
}

Eigen::VectorXd strain_1d(const Eigen::VectorXd& u, const Domain1D& dom,
                          const SpectralOperators& ops) {
    if (u.size() != dom.order + 1)
        throw std::invalid_argument("strain_1d: field shape mismatch");
    return dom.scale() * (ops.diff * u);
}

double bulk_energy_1d(const Eigen::VectorXd& u, const Domain1D& dom,
                      const SpectralOperators& ops, double load,
                      const ThermalState& thermal, const MaterialParams& p) {
    const Eigen::VectorXd eps = strain_1d(u, dom, ops);
    const double jac = dom.jacobian();
    double w = 0.0;
    for (int i = 0; i <= dom.order; ++i)
        w += ops.quad(i) *
             (landau_density(eps(i), thermal.delta_theta, p) - load * u(i));
    return jac * w;
}

Eigen::VectorXd energy_gradient_1d(const Eigen::VectorXd& u, const Domain1D& dom,
                                   const SpectralOperators& ops, double load,
                                   const ThermalState& thermal,
                                   const MaterialParams& p) {
    const Eigen::VectorXd eps = strain_1d(u, dom, ops);
    const int n = dom.order;
    const double jac = dom.jacobian();

    Eigen::VectorXd weighted(n + 1);
    for (int i = 0; i <= n; ++i)
        weighted(i) = ops.quad(i) *
                      landau_density_derivative(eps(i), thermal.delta_theta, p);

    Eigen::VectorXd full = jac * dom.scale() * (ops.diff.transpose() * weighted);
    full -= (jac * load) * ops.quad;
    return pack_1d(full);
}

Eigen::VectorXd energy_gradient_2d(const Field2D& field, const Domain2D& dom,
                                   const SpectralOperators& ops,
                                   const LoadCase& load,
                                   const ThermalState& thermal,
                                   const MaterialParams& p) {
    const StrainFields s = strains_2d(field, dom, ops);
    const int n = dom.order;
    const double jac = dom.jacobian();
    const double sx = dom.scale_x();
    const double sy = dom.scale_y();

    // Pointwise density derivatives against the strain-tensor components,
    // folded with the quadrature weights.
    Eigen::MatrixXd g11(n + 1, n + 1), g22(n + 1, n + 1), g12(n + 1, n + 1);
    Eigen::MatrixXd area(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double p1 = p.a1 * s.e1(i, j);
            const double p2 =
                landau_density_derivative(s.e2(i, j), thermal.delta_theta, p);
            const double p3 = p.a3 * s.e3(i, j);
            const double a = jac * ops.quad(i) * ops.quad(j);
            area(i, j) = a;
            g11(i, j) = a * (p1 + p2) * kInvSqrt2;
            g22(i, j) = a * (p1 - p2) * kInvSqrt2;
            g12(i, j) = a * p3;
        }
    }

    const Eigen::MatrixXd& d = ops.diff;
    Field2D grad;
    grad.u1 = sx * (d.transpose() * g11) + 0.5 * sy * (g12 * d) - load.fx * area;
    grad.u2 = 0.5 * sx * (d.transpose() * g12) + sy * (g22 * d) - load.fy * area;
    return pack_2d(grad);
}

Eigen::VectorXd pack_1d(const Eigen::VectorXd& full) {
    if (full.size() < 3) throw std::invalid_argument("pack_1d: field too small");
    return full.segment(1, full.size() - 2);
}

Eigen::VectorXd unpack_1d(const Eigen::VectorXd& interior, int order) {
    if (interior.size() != order - 1)
        throw std::invalid_argument("unpack_1d: size mismatch");
    Eigen::VectorXd full = Eigen::VectorXd::Zero(order + 1);
    full.segment(1, order - 1) = interior;
    return full;
}

Eigen::VectorXd pack_2d(const Field2D& field) {
    const int n = static_cast<int>(field.u1.rows()) - 1;
    require_square(field.u1, n, "pack_2d");
    require_square(field.u2, n, "pack_2d");
    const int m = n - 1;
    Eigen::VectorXd x(2 * m * m);
    int idx = 0;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) x(idx++) = field.u1(i, j);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) x(idx++) = field.u2(i, j);
    return x;
}

Field2D unpack_2d(const Eigen::VectorXd& interior, int order) {
    const int m = order - 1;
    if (interior.size() != 2 * m * m)
        throw std::invalid_argument("unpack_2d: size mismatch");
    Field2D f;
    f.u1 = Eigen::MatrixXd::Zero(order + 1, order + 1);
    f.u2 = Eigen::MatrixXd::Zero(order + 1, order + 1);
    int idx = 0;
    for (int i = 1; i < order; ++i)
        for (int j = 1; j < order; ++j) f.u1(i, j) = interior(idx++);
    for (int i = 1; i < order; ++i)
        for (int j = 1; j < order; ++j) f.u2(i, j) = interior(idx++);
    return f;
}

WireProblem::WireProblem(Domain1D dom, double load, ThermalState thermal,
                         MaterialParams p)
    : dom_(dom), ops_(make_operators(dom.order)), load_(load),
      thermal_(thermal), params_(p) {}

double WireProblem::energy(const Eigen::VectorXd& x) const {
    return bulk_energy_1d(unpack_1d(x, dom_.order), dom_, ops_, load_, thermal_,
                          params_);
}

Eigen::VectorXd WireProblem::gradient(const Eigen::VectorXd& x) const {
    return energy_gradient_1d(unpack_1d(x, dom_.order), dom_, ops_, load_,
                              thermal_, params_);
}

Eigen::VectorXd WireProblem::smooth(const Eigen::VectorXd& x,
                                    const FilterPair& filter) const {
    if (filter.order_fine != dom_.order)
        throw std::invalid_argument("WireProblem::smooth: filter size mismatch");
    Eigen::VectorXd full = filter.filter * unpack_1d(x, dom_.order);
    full(0) = 0.0;
    full(dom_.order) = 0.0;
    return pack_1d(full);
}

PatchProblem::PatchProblem(Domain2D dom, LoadCase load, ThermalState thermal,
                           MaterialParams p)
    : dom_(dom), ops_(make_operators(dom.order)), load_(load),
      thermal_(thermal), params_(p) {}

double PatchProblem::energy(const Eigen::VectorXd& x) const {
    return bulk_energy_2d(unpack_2d(x, dom_.order), dom_, ops_, load_, thermal_,
                          params_);
}

Eigen::VectorXd PatchProblem::gradient(const Eigen::VectorXd& x) const {
    return energy_gradient_2d(unpack_2d(x, dom_.order), dom_, ops_, load_,
                              thermal_, params_);
}

Eigen::VectorXd PatchProblem::smooth(const Eigen::VectorXd& x,
                                     const FilterPair& filter) const {
    if (filter.order_fine != dom_.order)
        throw std::invalid_argument("PatchProblem::smooth: filter size mismatch");
    Field2D f = unpack_2d(x, dom_.order);
    const int n = dom_.order;
    for (Eigen::MatrixXd* u : {&f.u1, &f.u2}) {
        *u = filter.filter * (*u) * filter.filter.transpose();
        u->row(0).setZero();
        u->row(n).setZero();
        u->col(0).setZero();
        u->col(n).setZero();
    }
    return pack_2d(f);
}

}  // namespace sma

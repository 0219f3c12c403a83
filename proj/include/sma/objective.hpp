#pragma once

#include <Eigen/Dense>

#include "sma/chebyshev.hpp"
#include "sma/material.hpp"

// Discretized bulk-energy objectives for clamped 1D wires and 2D patches on
// mapped physical domains, with analytic gradients with respect to the
// interior nodal displacements.

namespace sma {

struct Domain1D {
    double x_left = 0.0;   // [cm]
    double x_right = 1.0;  // [cm]
    int order = 14;        // N (N+1 nodes)

    double scale() const { return 2.0 / (x_right - x_left); }    // dref/dx [1/cm]
    double jacobian() const { return (x_right - x_left) / 2.0; }  // dx/dref [cm]
};

struct Domain2D {
    double x_left = -1.0, x_right = 1.0;   // [cm]
    double y_bottom = -1.0, y_top = 1.0;   // [cm]
    int order = 8;

    double scale_x() const { return 2.0 / (x_right - x_left); }
    double scale_y() const { return 2.0 / (y_top - y_bottom); }
    double jacobian() const { return (x_right - x_left) * (y_top - y_bottom) / 4.0; }
};

struct LoadCase {
    double fx = 0.0;  // body force density [g/(ms^2 cm^2)]
    double fy = 0.0;  // unused in 1D
};

// Nodal displacement grids; entry (i,j) lives at node (x_i, y_j), with both
// node vectors descending. Clamped fields carry exact zeros on the boundary.
struct Field2D {
    Eigen::MatrixXd u1;  // u_x [cm]
    Eigen::MatrixXd u2;  // u_y [cm]
};

struct StrainFields {
    Eigen::MatrixXd e1;  // dilatational
    Eigen::MatrixXd e2;  // deviatoric (order parameter)
    Eigen::MatrixXd e3;  // shear
};

/// Symmetry-adapted strains of a displacement field: e1 = (h11+h22)/sqrt(2),
/// e2 = (h11-h22)/sqrt(2), e3 = h12, with h the Cauchy-Lagrangian strain of
/// the Chebyshev interpolant mapped to the physical domain.
StrainFields strains_2d(const Field2D& field, const Domain2D& dom,
                        const SpectralOperators& ops);

/// Quadrature of full_density_2d(e1,e2,e3) - fx*u1 - fy*u2 over the patch.
double bulk_energy_2d(const Field2D& field, const Domain2D& dom,
                      const SpectralOperators& ops, const LoadCase& load,
                      const ThermalState& thermal, const MaterialParams& p);

/// 1D strain eps = scale * D u at the nodes.
Eigen::VectorXd strain_1d(const Eigen::VectorXd& u, const Domain1D& dom,
                          const SpectralOperators& ops);

/// Quadrature of landau_density(eps) - f*u over the wire.
double bulk_energy_1d(const Eigen::VectorXd& u, const Domain1D& dom,
                      const SpectralOperators& ops, double load,
                      const ThermalState& thermal, const MaterialParams& p);

// Analytic gradients with respect to the packed interior unknowns, via the
// chain rule through the differentiation matrices and quadrature weights.
Eigen::VectorXd energy_gradient_1d(const Eigen::VectorXd& u, const Domain1D& dom,
                                   const SpectralOperators& ops, double load,
                                   const ThermalState& thermal,
                                   const MaterialParams& p);
Eigen::VectorXd energy_gradient_2d(const Field2D& field, const Domain2D& dom,
                                   const SpectralOperators& ops,
                                   const LoadCase& load,
                                   const ThermalState& thermal,
                                   const MaterialParams& p);

// Bijection between clamped fields and flat unknown vectors. 1D: the N-1
// interior values in node order. 2D: u1 interior values in row-major node
// order (x index outer, y index inner), then u2 likewise; length 2(N-1)^2.
// unpack writes exact zeros on the boundary.
Eigen::VectorXd pack_1d(const Eigen::VectorXd& full);
Eigen::VectorXd unpack_1d(const Eigen::VectorXd& interior, int order);
Eigen::VectorXd pack_2d(const Field2D& field);
Field2D unpack_2d(const Eigen::VectorXd& interior, int order);

/// Objective seen by the optimizers: energy and gradient as functions of the
/// packed interior vector, plus the chromosome-smoothing embed/filter/repack.
/// Implementations are immutable after construction and safe to share.
class EnergyProblem {
public:
    virtual ~EnergyProblem() = default;
    virtual int unknown_count() const = 0;
    virtual int grid_order() const = 0;
    virtual double energy(const Eigen::VectorXd& x) const = 0;
    virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;
    /// Embed to the full grid with boundary zeros, apply the filter (tensor
    /// product in 2D), re-clamp the boundary, repack.
    virtual Eigen::VectorXd smooth(const Eigen::VectorXd& x,
                                   const FilterPair& filter) const = 0;
};

class WireProblem final : public EnergyProblem {
public:
    WireProblem(Domain1D dom, double load, ThermalState thermal, MaterialParams p);

    int unknown_count() const override { return dom_.order - 1; }
    int grid_order() const override { return dom_.order; }
    double energy(const Eigen::VectorXd& x) const override;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
    Eigen::VectorXd smooth(const Eigen::VectorXd& x,
                           const FilterPair& filter) const override;

    const Domain1D& domain() const { return dom_; }
    const SpectralOperators& ops() const { return ops_; }
    double load() const { return load_; }
    const ThermalState& thermal() const { return thermal_; }
    const MaterialParams& params() const { return params_; }

private:
    Domain1D dom_;
    SpectralOperators ops_;
    double load_;
    ThermalState thermal_;
    MaterialParams params_;
};

class PatchProblem final : public EnergyProblem {
public:
    PatchProblem(Domain2D dom, LoadCase load, ThermalState thermal, MaterialParams p);

    int unknown_count() const override {
        const int m = dom_.order - 1;
        return 2 * m * m;
    }
    int grid_order() const override { return dom_.order; }
    double energy(const Eigen::VectorXd& x) const override;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
    Eigen::VectorXd smooth(const Eigen::VectorXd& x,
                           const FilterPair& filter) const override;

    const Domain2D& domain() const { return dom_; }
    const SpectralOperators& ops() const { return ops_; }
    const LoadCase& load() const { return load_; }
    const ThermalState& thermal() const { return thermal_; }
    const MaterialParams& params() const { return params_; }

private:
    Domain2D dom_;
    SpectralOperators ops_;
    LoadCase load_;
    ThermalState thermal_;
    MaterialParams params_;
};

}  // namespace sma

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sma/objective.hpp"

// Quasi-Newton refinement of the GA estimate: BFGS Hessian approximation,
// symmetric linear solves for the descent direction, a fixed relaxation step
// instead of a line search, and step-norm termination.

namespace sma {

struct BfgsConfig {
    double relaxation = 0.1;       // fixed step factor in (0,1]
    double tolerance = 1e-6;       // step-norm termination threshold [cm]
    int max_iterations = 20000;
    double curvature_guard = 1e-12;  // skip update when y's <= guard*|s||y|
};

struct BfgsState {
    Eigen::VectorXd x;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hessian_approx;  // symmetric B_k
    int iteration = 0;
    double last_step_norm = 0.0;
};

/// Solves B d = -grad by LDLT. A solve that fails to produce a finite descent
/// direction resets hessian_approx to the identity and returns -grad.
Eigen::VectorXd descent_direction(BfgsState& state);

/// Rank-two BFGS update with the actual step s: B - (Bs)(Bs)'/(s'Bs) + yy'/(y's).
/// Returns B unchanged when the curvature y's fails the guard, so the secant
/// condition B_next s = y holds exactly whenever the update is applied.
Eigen::MatrixXd bfgs_update(const Eigen::MatrixXd& B, const Eigen::VectorXd& s,
                            const Eigen::VectorXd& y, double guard);

struct BfgsResult {
    Eigen::VectorXd x;                // lowest-energy iterate seen
    double energy = 0.0;
    std::vector<double> step_norms;   // one entry per iteration
    bool converged = false;
    int iterations = 0;
    int energy_increase_accepts = 0;  // steps accepted uphill after one halving
};

/// Iterates x <- x + relaxation * d from B0 = I until the step norm falls to
/// the tolerance or iterations run out. A step that raises the energy is
/// halved once; if it still raises it, it is accepted and counted.
/// Throws std::runtime_error on non-finite energies.
BfgsResult refine(const EnergyProblem& problem, const Eigen::VectorXd& x0,
                  const BfgsConfig& cfg);

}  // namespace sma

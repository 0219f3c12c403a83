#include "sma/bfgs.hpp"

#include <cmath>
#include <stdexcept>

namespace sma {

Eigen::VectorXd descent_direction(BfgsState& state) {
    const Eigen::VectorXd rhs = -state.grad;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(state.hessian_approx);
    if (ldlt.info() == Eigen::Success) {
        Eigen::VectorXd d = ldlt.solve(rhs);
        if (d.allFinite() && state.grad.dot(d) < 0.0) return d;
    }
    // Degenerate approximation: fall back to steepest descent.
    state.hessian_approx =
        Eigen::MatrixXd::Identity(state.x.size(), state.x.size());
    return rhs;
}

Eigen::MatrixXd bfgs_update(const Eigen::MatrixXd& B, const Eigen::VectorXd& s,
                            const Eigen::VectorXd& y, double guard) {
    const double ys = y.dot(s);
    if (ys <= guard * s.norm() * y.norm()) return B;

    const Eigen::VectorXd bs = B * s;
    const double sbs = s.dot(bs);
    if (sbs <= 0.0) return B;

    Eigen::MatrixXd next =
        B - (bs * bs.transpose()) / sbs + (y * y.transpose()) / ys;
    // Symmetrize so round-off cannot accumulate over long runs.
    next = 0.5 * (next + next.transpose()).eval();
    return next;
}

BfgsResult refine(const EnergyProblem& problem, const Eigen::VectorXd& x0,
                  const BfgsConfig& cfg) {
    if (!(cfg.relaxation > 0.0 && cfg.relaxation <= 1.0))
        throw std::invalid_argument("refine: relaxation must be in (0,1]");
    if (!(cfg.tolerance > 0.0))
        throw std::invalid_argument("refine: tolerance must be positive");

    BfgsState state;
    state.x = x0;
    state.grad = problem.gradient(x0);
    state.hessian_approx = Eigen::MatrixXd::Identity(x0.size(), x0.size());

    double energy = problem.energy(x0);
    if (!std::isfinite(energy))
        throw std::runtime_error("refine: non-finite energy at start");

    BfgsResult result;
    result.x = x0;
    result.energy = energy;

    for (int it = 0; it < cfg.max_iterations; ++it) {
        const Eigen::VectorXd d = descent_direction(state);
        Eigen::VectorXd s = cfg.relaxation * d;

        // Early iterations run with B far from the true curvature, so the
        // trial step can overshoot into the steep sextic tails; halve until
        // the energy stops increasing (a bounded budget), then accept.
        double next_energy = problem.energy(state.x + s);
        for (int halvings = 0;
             halvings < 60 && !(next_energy <= energy + 1e-12); ++halvings) {
            s *= 0.5;
            next_energy = problem.energy(state.x + s);
        }
        if (next_energy > energy + 1e-12) ++result.energy_increase_accepts;
        if (!std::isfinite(next_energy))
            throw std::runtime_error("refine: non-finite energy");

        const Eigen::VectorXd x_next = state.x + s;
        const Eigen::VectorXd grad_next = problem.gradient(x_next);
        const Eigen::VectorXd y = grad_next - state.grad;
        state.hessian_approx =
            bfgs_update(state.hessian_approx, s, y, cfg.curvature_guard);

        state.x = x_next;
        state.grad = grad_next;
        energy = next_energy;
        state.last_step_norm = s.norm();
        state.iteration = it + 1;
        result.step_norms.push_back(state.last_step_norm);

        if (energy < result.energy) {
            result.energy = energy;
            result.x = state.x;
        }
        if (state.last_step_norm <= cfg.tolerance) {
            result.converged = true;
            break;
        }
    }
    result.iterations = state.iteration;
    return result;
}

}  // namespace sma

#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "sma/bfgs.hpp"
#include "sma/ga.hpp"

using namespace sma;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Strictly convex quadratic 0.5 x'Ax - b'x used as a transparent objective.
class QuadraticProblem final : public EnergyProblem {
public:
    QuadraticProblem(MatrixXd a, VectorXd b) : a_(std::move(a)), b_(std::move(b)) {}
    int unknown_count() const override { return static_cast<int>(b_.size()); }
    int grid_order() const override { return unknown_count() + 1; }
    double energy(const VectorXd& x) const override {
        return 0.5 * x.dot(a_ * x) - b_.dot(x);
    }
    VectorXd gradient(const VectorXd& x) const override { return a_ * x - b_; }
    VectorXd smooth(const VectorXd& x, const FilterPair&) const override {
        return x;
    }
    const MatrixXd& matrix() const { return a_; }

private:
    MatrixXd a_;
    VectorXd b_;
};

MatrixXd random_spd(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
    return m * m.transpose() + 0.5 * MatrixXd::Identity(n, n);
}

const MaterialParams kParams = default_params();
const ThermalState kThermal = make_thermal_state(210.0, kParams);

}  // namespace

TEST_SUITE_BEGIN("bfgs");

TEST_CASE("descent direction") {
    SUBCASE("identity approximation gives steepest descent") {
        BfgsState st;
        st.x = VectorXd::Zero(2);
        st.grad = VectorXd(2);
        st.grad << 1, 2;
        st.hessian_approx = MatrixXd::Identity(2, 2);
        const VectorXd d = descent_direction(st);
        CHECK(d(0) == doctest::Approx(-1.0));
        CHECK(d(1) == doctest::Approx(-2.0));
    }
    SUBCASE("diagonal solve") {
        BfgsState st;
        st.x = VectorXd::Zero(2);
        st.grad = VectorXd(2);
        st.grad << 2, 4;
        st.hessian_approx = MatrixXd::Zero(2, 2);
        st.hessian_approx(0, 0) = 2.0;
        st.hessian_approx(1, 1) = 4.0;
        const VectorXd d = descent_direction(st);
        CHECK(d(0) == doctest::Approx(-1.0));
        CHECK(d(1) == doctest::Approx(-1.0));
    }
    SUBCASE("positive definite approximations always give descent") {
        for (int n : {3, 8, 15}) {
            BfgsState st;
            st.x = VectorXd::Zero(n);
            st.hessian_approx = random_spd(n, 77 + n);
            std::mt19937_64 rng(n);
            std::normal_distribution<double> gauss;
            st.grad = VectorXd::NullaryExpr(n, [&](Eigen::Index) { return gauss(rng); });
            const VectorXd d = descent_direction(st);
            CHECK(st.grad.dot(d) < 0.0);
        }
    }
    SUBCASE("singular approximation falls back to steepest descent") {
        BfgsState st;
        st.x = VectorXd::Zero(2);
        st.grad = VectorXd(2);
        st.grad << 1, 1;
        st.hessian_approx = MatrixXd::Zero(2, 2);  // singular
        const VectorXd d = descent_direction(st);
        CHECK(d(0) == doctest::Approx(-1.0));
        CHECK(d(1) == doctest::Approx(-1.0));
        CHECK(st.hessian_approx == MatrixXd::Identity(2, 2));
    }
}

TEST_CASE("bfgs update") {
    SUBCASE("secant-satisfying pair leaves B unchanged") {
        const MatrixXd b = random_spd(4, 5);
        VectorXd s(4);
        s << 1, -2, 0.5, 0.25;
        const VectorXd y = b * s;
        const MatrixXd next = bfgs_update(b, s, y, 1e-12);
        CHECK((next - b).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((next * s - y).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("hand-evaluated rank-two update") {
        const MatrixXd b = MatrixXd::Identity(2, 2);
        VectorXd s(2), y(2);
        s << 1, 0;
        y << 2, 0;
        const MatrixXd next = bfgs_update(b, s, y, 1e-12);
        CHECK(next(0, 0) == doctest::Approx(2.0));
        CHECK(next(1, 1) == doctest::Approx(1.0));
        CHECK(next(0, 1) == doctest::Approx(0.0));
        CHECK(next(1, 0) == doctest::Approx(0.0));
    }
    SUBCASE("negative curvature skips the update") {
        const MatrixXd b = MatrixXd::Identity(2, 2);
        VectorXd s(2), y(2);
        s << 1, 0;
        y << -1, 0;
        CHECK((bfgs_update(b, s, y, 1e-12) - b).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("secant condition holds after random updates") {
        std::mt19937_64 rng(31);
        std::normal_distribution<double> gauss;
        MatrixXd b = random_spd(10, 3);
        for (int trial = 0; trial < 50; ++trial) {
            VectorXd s(10), y(10);
            for (int i = 0; i < 10; ++i) {
                s(i) = gauss(rng);
                y(i) = gauss(rng);
            }
            if (y.dot(s) <= 1e-8 * s.norm() * y.norm()) continue;
            b = bfgs_update(b, s, y, 1e-12);
            const double rel = (b * s - y).norm() / y.norm();
            CHECK(rel < 1e-10);
        }
    }
    SUBCASE("symmetry is preserved over a thousand updates") {
        std::mt19937_64 rng(17);
        std::normal_distribution<double> gauss;
        MatrixXd b = MatrixXd::Identity(6, 6);
        for (int trial = 0; trial < 1000; ++trial) {
            VectorXd s(6), y(6);
            for (int i = 0; i < 6; ++i) {
                s(i) = gauss(rng);
                y(i) = gauss(rng);
            }
            b = bfgs_update(b, s, y, 1e-12);
        }
        CHECK((b - b.transpose()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("refine") {
    SUBCASE("unit relaxation solves an isotropic quadratic immediately") {
        QuadraticProblem prob(MatrixXd::Identity(2, 2), VectorXd::Zero(2));
        BfgsConfig cfg;
        cfg.relaxation = 1.0;
        VectorXd x0(2);
        x0 << 1, 1;
        const BfgsResult res = refine(prob, x0, cfg);
        CHECK(res.converged);
        CHECK(res.iterations <= 3);
        CHECK(res.x.norm() < 1e-6);
    }
    SUBCASE("an already-optimal start terminates at once") {
        QuadraticProblem prob(random_spd(5, 9), VectorXd::Zero(5));
        BfgsConfig cfg;
        cfg.relaxation = 0.5;
        const BfgsResult res = refine(prob, VectorXd::Zero(5), cfg);
        CHECK(res.converged);
        CHECK(res.iterations <= 2);
        CHECK(res.x.norm() < 1e-9);
    }
    SUBCASE("energy never ends above the start") {
        const WireProblem wire(Domain1D{0, 1, 14}, 500.0, kThermal, kParams);
        Rng rng(99);
        VectorXd x0(13);
        for (int i = 0; i < 13; ++i) x0(i) = rng.uniform(-0.1, 0.1);
        BfgsConfig cfg;
        cfg.relaxation = 0.1;
        const BfgsResult res = refine(wire, x0, cfg);
        CHECK(res.energy <= wire.energy(x0) + 1e-12);
        CHECK(res.energy == doctest::Approx(wire.energy(res.x)).epsilon(1e-12));
    }
    SUBCASE("step-norm termination honors the tolerance") {
        const WireProblem wire(Domain1D{0, 1, 14}, 500.0, kThermal, kParams);
        Rng rng(4);
        VectorXd x0(13);
        for (int i = 0; i < 13; ++i) x0(i) = rng.uniform(-0.05, 0.05);
        BfgsConfig cfg;
        cfg.relaxation = 0.02;
        cfg.tolerance = 1e-6;
        const BfgsResult res = refine(wire, x0, cfg);
        REQUIRE(res.converged);
        REQUIRE_FALSE(res.step_norms.empty());
        CHECK(res.step_norms.back() <= 1e-6);
        for (std::size_t i = 0; i + 1 < res.step_norms.size(); ++i)
            CHECK(res.step_norms[i] > 1e-6);
    }
    SUBCASE("invalid configuration is rejected") {
        QuadraticProblem prob(MatrixXd::Identity(2, 2), VectorXd::Zero(2));
        BfgsConfig bad;
        bad.relaxation = 0.0;
        CHECK_THROWS_AS(refine(prob, VectorXd::Ones(2), bad), std::invalid_argument);
        bad.relaxation = 0.5;
        bad.tolerance = 0.0;
        CHECK_THROWS_AS(refine(prob, VectorXd::Ones(2), bad), std::invalid_argument);
    }
}

TEST_CASE("quadratic termination with exact steps") {
    // Drive the update primitives with an exact line search; BFGS then
    // terminates on strictly convex quadratics within n+1 iterations.
    for (const int n : {2, 5, 12, 20}) {
        QuadraticProblem prob(random_spd(n, 100 + n), VectorXd::Ones(n));
        BfgsState st;
        std::mt19937_64 rng(n);
        std::normal_distribution<double> gauss;
        st.x = VectorXd::NullaryExpr(n, [&](Eigen::Index) { return gauss(rng); });
        st.grad = prob.gradient(st.x);
        st.hessian_approx = MatrixXd::Identity(n, n);
        const double g0 = st.grad.norm();

        int used = 0;
        for (int it = 0; it < n + 1 && st.grad.norm() > 1e-9 * g0; ++it) {
            const VectorXd d = descent_direction(st);
            const double alpha =
                -st.grad.dot(d) / d.dot(prob.matrix() * d);  // exact line search
            const VectorXd s = alpha * d;
            const VectorXd grad_next = prob.gradient(st.x + s);
            st.hessian_approx =
                bfgs_update(st.hessian_approx, s, grad_next - st.grad, 1e-14);
            st.x += s;
            st.grad = grad_next;
            ++used;
        }
        CHECK(st.grad.norm() <= 1e-9 * g0);
        CHECK(used <= n + 1);
    }
}

TEST_SUITE_END();

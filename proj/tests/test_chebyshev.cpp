#include <stdexcept>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sma/chebyshev.hpp"

using namespace sma;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Chebyshev coefficients of nodal data on the CGL grid of order n, by the
// discrete cosine sum with halved end terms. Test-only transform used as an
// independent oracle for the filter's frequency content.
VectorXd cheb_coeffs(const VectorXd& values) {
    const int n = static_cast<int>(values.size()) - 1;
    VectorXd a(n + 1);
    for (int k = 0; k <= n; ++k) {
        double sum = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double term =
                values(j) * std::cos(std::numbers::pi * k * j / n);
            sum += (j == 0 || j == n) ? 0.5 * term : term;
        }
        const double ck = (k == 0 || k == n) ? 2.0 : 1.0;
        a(k) = 2.0 * sum / (ck * n);
    }
    return a;
}

double monomial_integral(int k) { return (k % 2 == 0) ? 2.0 / (k + 1) : 0.0; }

}  // namespace

TEST_SUITE_BEGIN("chebyshev");

TEST_CASE("cgl nodes") {
    SUBCASE("n=1") {
        const VectorXd x = cgl_nodes(1);
        CHECK(x(0) == 1.0);
        CHECK(x(1) == -1.0);
    }
    SUBCASE("n=2") {
        const VectorXd x = cgl_nodes(2);
        CHECK(x(0) == 1.0);
        CHECK(x(1) == 0.0);
        CHECK(x(2) == -1.0);
    }
    SUBCASE("n=4 hits the quarter angles") {
        const VectorXd x = cgl_nodes(4);
        CHECK(x(1) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
        CHECK(x(2) == 0.0);
        CHECK(x(3) == doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-15));
    }
    SUBCASE("strictly decreasing") {
        const VectorXd x = cgl_nodes(17);
        for (int i = 0; i < 17; ++i) CHECK(x(i) > x(i + 1));
    }
    CHECK_THROWS_AS(cgl_nodes(0), std::invalid_argument);
}

TEST_CASE("differentiation matrix") {
    SUBCASE("n=1 exact entries") {
        const MatrixXd d = diff_matrix(1);
        CHECK(d(0, 0) == 0.5);
        CHECK(d(0, 1) == -0.5);
        CHECK(d(1, 0) == 0.5);
        CHECK(d(1, 1) == -0.5);
        const VectorXd fx = cgl_nodes(1);  // samples of f(x)=x
        const VectorXd dfx = d * fx;
        CHECK(dfx(0) == doctest::Approx(1.0));
        CHECK(dfx(1) == doctest::Approx(1.0));
    }
    SUBCASE("corner entries match the closed form exactly") {
        for (const int n : {4, 8, 15}) {
            const MatrixXd d = diff_matrix(n);
            const double corner = (2.0 * n * n + 1.0) / 6.0;
            CHECK(d(0, 0) == corner);
            CHECK(d(n, n) == -corner);
        }
    }
    SUBCASE("derivative of a constant vanishes") {
        for (const int n : {2, 8, 16, 32, 64}) {
            const VectorXd row_sums = diff_matrix(n).rowwise().sum();
            CHECK(row_sums.cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SUBCASE("cubic derivative at n=8") {
        const VectorXd x = cgl_nodes(8);
        const VectorXd f = x.array().cube();
        const VectorXd df = diff_matrix(8) * f;
        for (int i = 0; i <= 8; ++i) CHECK(std::abs(df(i) - 3.0 * x(i) * x(i)) < 1e-10);
    }
    CHECK_THROWS_AS(diff_matrix(0), std::invalid_argument);
}

TEST_CASE("quadrature weights") {
    SUBCASE("n=2 is Simpson") {
        const VectorXd w = quad_weights(2);
        CHECK(w(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(w(1) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
        CHECK(w(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("weights sum to the interval length") {
        CHECK(quad_weights(15).sum() == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("x^2 over [-1,1]") {
        const VectorXd w = quad_weights(8);
        const VectorXd x = cgl_nodes(8);
        CHECK((w.array() * x.array().square()).sum() ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("positive for n up to 64") {
        for (int n = 1; n <= 64; ++n) CHECK(quad_weights(n).minCoeff() > 0.0);
    }
    CHECK_THROWS_AS(quad_weights(-3), std::invalid_argument);
}

TEST_CASE("spectral exactness for monomials") {
    for (const int n : {4, 8, 15}) {
        const VectorXd x = cgl_nodes(n);
        const MatrixXd d = diff_matrix(n);
        const VectorXd w = quad_weights(n);
        for (int k = 0; k <= n; ++k) {
            const VectorXd f = x.array().pow(k);
            const VectorXd df = d * f;
            double quad = 0.0;
            for (int i = 0; i <= n; ++i) quad += w(i) * f(i);
            CHECK(std::abs(quad - monomial_integral(k)) < 1e-9);
            for (int i = 0; i <= n; ++i) {
                const double exact = (k == 0) ? 0.0 : k * std::pow(x(i), k - 1);
                CHECK(std::abs(df(i) - exact) < 1e-9);
            }
        }
    }
}

TEST_CASE("cardinal matrix") {
    const VectorXd src = cgl_nodes(5);

    SUBCASE("identity on the source grid") {
        const MatrixXd c = cardinal_matrix(src, src);
        CHECK((c - MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("rows reproduce constants") {
        VectorXd pts(4);
        pts << 0.9, 0.3, -0.123, -0.77;
        const MatrixXd c = cardinal_matrix(src, pts);
        const VectorXd sums = c.rowwise().sum();
        for (int i = 0; i < 4; ++i) CHECK(sums(i) == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("polynomial reproduction 5 -> 11 nodes") {
        const VectorXd coarse = cgl_nodes(4);
        const VectorXd fine = cgl_nodes(10);
        const MatrixXd c = cardinal_matrix(coarse, fine);
        const VectorXd f = coarse.array().square();
        const VectorXd ff = c * f;
        for (int i = 0; i <= 10; ++i)
            CHECK(std::abs(ff(i) - fine(i) * fine(i)) < 1e-10);
    }
    SUBCASE("duplicate nodes rejected") {
        VectorXd bad(3);
        bad << 0.5, 0.5, -0.5;
        CHECK_THROWS_AS(cardinal_matrix(bad, src), std::invalid_argument);
    }
}

TEST_CASE("filter pair") {
    const FilterPair f = filter_pair(15, 7);

    SUBCASE("in-range polynomial passes through") {
        const VectorXd x = cgl_nodes(15);
        const VectorXd p = 0.3 * x.array().cube() - 0.1 * x.array() + 0.05;
        const VectorXd filtered = f.filter * p;
        CHECK((filtered - p).cwiseAbs().maxCoeff() < 1e-8);
    }
    SUBCASE("idempotent") {
        CHECK((f.filter * f.filter - f.filter).cwiseAbs().maxCoeff() < 1e-8);
    }
    SUBCASE("restriction is a left inverse of prolongation") {
        const MatrixXd rp = f.restrict_to_sparse * f.prolong_to_fine;
        CHECK((rp - MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-8);
    }
    SUBCASE("alternating noise loses its high-order content") {
        VectorXd noise(16);
        for (int i = 0; i < 16; ++i) noise(i) = (i % 2 == 0) ? 0.1 : -0.1;
        const VectorXd raw = cheb_coeffs(noise);
        const VectorXd smoothed = cheb_coeffs(f.filter * noise);
        double raw_high = 0.0, smooth_high = 0.0;
        for (int k = 8; k <= 15; ++k) {
            raw_high = std::max(raw_high, std::abs(raw(k)));
            smooth_high = std::max(smooth_high, std::abs(smoothed(k)));
        }
        CHECK(raw_high > 10.0 * smooth_high);
    }
    CHECK_THROWS_AS(filter_pair(7, 7), std::invalid_argument);
    CHECK_THROWS_AS(filter_pair(7, 9), std::invalid_argument);
}

TEST_CASE("2D grid transfer") {
    SUBCASE("identity for equal orders") {
        MatrixXd field = MatrixXd::Random(9, 9);
        CHECK((grid_transfer_2d(field, 8, 8) - field).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("bilinear field transfers exactly") {
        const VectorXd x8 = cgl_nodes(8);
        MatrixXd f(9, 9);
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j <= 8; ++j) f(i, j) = x8(i) * x8(j);
        const MatrixXd g = grid_transfer_2d(f, 8, 14);
        const VectorXd x14 = cgl_nodes(14);
        for (int i = 0; i <= 14; ++i)
            for (int j = 0; j <= 14; ++j)
                CHECK(std::abs(g(i, j) - x14(i) * x14(j)) < 1e-10);
    }
    SUBCASE("zero-boundary polynomial keeps a zero boundary") {
        const VectorXd x8 = cgl_nodes(8);
        MatrixXd f(9, 9);
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j <= 8; ++j)
                f(i, j) = (1.0 - x8(i) * x8(i)) * (1.0 - x8(j) * x8(j));
        const MatrixXd g = grid_transfer_2d(f, 8, 12);
        for (int i = 0; i <= 12; ++i) {
            CHECK(std::abs(g(0, i)) < 1e-10);
            CHECK(std::abs(g(12, i)) < 1e-10);
            CHECK(std::abs(g(i, 0)) < 1e-10);
            CHECK(std::abs(g(i, 12)) < 1e-10);
        }
    }
    SUBCASE("shape mismatch rejected") {
        CHECK_THROWS_AS(grid_transfer_2d(MatrixXd::Zero(5, 5), 8, 14),
                        std::invalid_argument);
    }
}

TEST_SUITE_END();

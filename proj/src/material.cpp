#include "sma/material.hpp"

#include <cmath>
#include <stdexcept>

namespace sma {

MaterialParams default_params() {
    MaterialParams p;
    p.a2 = 480.0;
    p.a4 = 6.0e6;
    p.a6 = 4.5e8;
    p.a1 = 2.0 * p.a2;
    p.a3 = p.a2;
    p.theta0 = 208.0;
    p.cv = 3.1274;
    p.rho = 11.1;
    p.k = 1.9e-2;
    return p;
}

ThermalState make_thermal_state(double theta, const MaterialParams& p) {
    return ThermalState{theta, theta - p.theta0};
}

double landau_density(double e2, double dtheta, const MaterialParams& p) {
    const double z = e2 * e2;
    return z * (0.5 * p.a2 * dtheta + z * (-0.25 * p.a4 + z * (p.a6 / 6.0)));
}

double landau_density_derivative(double e2, double dtheta, const MaterialParams& p) {
    const double z = e2 * e2;
    return e2 * (p.a2 * dtheta + z * (-p.a4 + z * p.a6));
}

std::optional<MartensiteWells> martensite_wells(double dtheta, const MaterialParams& p) {
    // Stationary strains solve a6 z^2 - a4 z + a2*dtheta = 0 in z = e2^2; the
    // larger root is the minimum pair, the smaller one the barrier.
    const double disc = p.a4 * p.a4 - 4.0 * p.a6 * p.a2 * dtheta;
    if (disc < 0.0) return std::nullopt;
    const double z = (p.a4 + std::sqrt(disc)) / (2.0 * p.a6);
    const double e = std::sqrt(z);
    return MartensiteWells{e, -e};
}

double full_density_2d(double e1, double e2, double e3, double dtheta,
                       const MaterialParams& p) {
    return 0.5 * p.a1 * e1 * e1 + 0.5 * p.a3 * e3 * e3 +
           landau_density(e2, dtheta, p);
}

double thermal_offset(double theta, const MaterialParams& p) {
    if (!(theta > 0.0))
        throw std::domain_error("thermal_offset: nonpositive temperature");
    return -p.cv * theta * std::log(theta);
}

}  // namespace sma

#pragma once

#include <optional>

// Landau free-energy densities for the square-to-rectangular transformation
// in Au-Cu-Zn, plus the closed-form martensite well locations. All quantities
// live in a consistent (g, ms, cm, K) unit system; no conversions happen here.

namespace sma {

struct MaterialParams {
    double a1;      // dilatational stiffness [g/(ms^2 cm)]
    double a2;      // deviatoric coefficient, per Kelvin [g/(ms^2 cm K)]
    double a3;      // shear stiffness [g/(ms^2 cm)]
    double a4;      // quartic well coefficient [g/(ms^2 cm)]
    double a6;      // sextic well coefficient [g/(ms^2 cm)]
    double theta0;  // transformation temperature [K]
    double cv;      // specific heat [g/(ms^2 cm K)]  (reporting only)
    double rho;     // density [g/cm^3]               (unused by the static problem)
    double k;       // conductivity [cm g/(ms^3 K)]   (unused by the static problem)
};

/// Au-Cu-Zn parameter set with a1 = 2*a2 and a3 = a2.
MaterialParams default_params();

struct ThermalState {
    double theta;        // temperature [K]
    double delta_theta;  // theta - theta0 [K]
};

ThermalState make_thermal_state(double theta, const MaterialParams& p);

/// Sextic double-well density (a2/2)*dtheta*e2^2 - (a4/4)*e2^4 + (a6/6)*e2^6.
double landau_density(double e2, double dtheta, const MaterialParams& p);

/// d/de2 of landau_density: a2*dtheta*e2 - a4*e2^3 + a6*e2^5.
double landau_density_derivative(double e2, double dtheta, const MaterialParams& p);

struct MartensiteWells {
    double plus;   // +e*
    double minus;  // -e*
};

/// Strains of the two martensite minima, e* = sqrt((a4 + sqrt(a4^2 - 4 a6 a2 dtheta)) / (2 a6)).
/// Empty when the discriminant is negative (pure austenite regime).
std::optional<MartensiteWells> martensite_wells(double dtheta, const MaterialParams& p);

/// Local 2D density (a1/2)e1^2 + (a3/2)e3^2 + landau_density(e2).
double full_density_2d(double e1, double e2, double e3, double dtheta,
                       const MaterialParams& p);

/// Thermal contribution -cv*theta*ln(theta). Reporting only: at fixed
/// temperature it shifts the bulk energy by a constant and is never part of
/// the minimization objective. Throws std::domain_error for theta <= 0.
double thermal_offset(double theta, const MaterialParams& p);

}  // namespace sma

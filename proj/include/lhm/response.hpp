#pragma once

#include <complex>

#include "lhm/master_equation.hpp"
#include "lhm/system_params.hpp"

namespace lhm {

/// CODATA 2018 values in SI units.
struct PhysicalConstants {
    double eps0 = 8.8541878128e-12;   // F/m
    double mu0 = 1.25663706212e-6;    // H/m
    double hbar = 1.054571817e-34;    // J s
    double c = 299792458.0;           // m/s
};

inline constexpr PhysicalConstants kCodata{};

struct Permittivity {
    complex chi_e;
    complex eps_r;
};

/// Smallest admissible |1 - N gamma / 3| before the local-field map is
/// treated as singular.
inline constexpr double kPoleGuard = 1e-14;

/// Microscopic electric polarizability 2 d24^2 rho_42 / (eps0 hbar Omega_p), m^3.
/// Omega_p is converted to s^-1 with gamma_scale.
complex electric_polarizability(const DensityMatrix& rho, const SystemParams& params,
                                const PhysicalConstants& k = kCodata);

/// Microscopic magnetic polarizability, m^3.
///
/// 2 mu0 mu23 rho_23 / B_p with the probe magnetic field eliminated through
/// B_p = E_p / c and E_p = hbar Omega_p / d24.
complex magnetic_polarizability(const DensityMatrix& rho, const SystemParams& params,
                                const PhysicalConstants& k = kCodata);

/// Local-field corrected susceptibility chi = N gamma / (1 - N gamma / 3)
/// and eps_r = 1 + chi. Throws PoleError at the Clausius-Mossotti pole.
Permittivity permittivity(complex gamma_e, double density_n);

/// mu_r = (1 + 2 N gamma / 3) / (1 - N gamma / 3). Throws PoleError at the pole.
complex permeability(complex gamma_m, double density_n);

/// Inverse of permeability(): gamma_m = ((mu_r - 1) / (2/3 + mu_r / 3)) / N.
complex magnetic_polarizability_from_permeability(complex mu_r, double density_n);

/// Principal square root with a negative-zero imaginary part read as +0,
/// so that the branch cut is approached from above.
complex principal_sqrt(complex z);

/// Refractive index with n^2 = eps_r mu_r.
///
/// When both real parts are negative the root is -sqrt(eps_r mu_r); otherwise
/// it is sqrt(eps_r) sqrt(mu_r), principal branch per factor. The two rules
/// coincide in the double-negative quadrant whenever both imaginary parts
/// share a sign.
complex refractive_index(complex eps_r, complex mu_r);

/// A = 2 pi Im n. Negative values mean gain.
double absorption_coefficient(complex n);

}  // namespace lhm

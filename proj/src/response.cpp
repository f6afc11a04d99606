#include "lhm/response.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lhm/errors.hpp"

namespace lhm {
namespace {

double probe_rate(const SystemParams& p)
{
    const double rate = p.omega_p * p.gamma_scale;
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw InvalidParams("probe Rabi frequency must be positive to normalize the response");
    }
    return rate;
}

void check_pole(complex n_gamma, const char* what)
{
    const complex denom = 1.0 - n_gamma / 3.0;
    if (std::abs(denom) < kPoleGuard || !std::isfinite(std::abs(denom))) {
        std::ostringstream msg;
        msg << what << " Clausius-Mossotti pole at N*gamma = " << n_gamma;
        throw PoleError(msg.str(), n_gamma);
    }
}

}  // namespace

complex electric_polarizability(const DensityMatrix& rho, const SystemParams& p,
                                const PhysicalConstants& k)
{
    const double omega = probe_rate(p);
    return 2.0 * p.d24 * p.d24 * rho(4, 2) / (k.eps0 * k.hbar * omega);
}

complex magnetic_polarizability(const DensityMatrix& rho, const SystemParams& p,
                                const PhysicalConstants& k)
{
    const double omega = probe_rate(p);
    return 2.0 * k.mu0 * p.mu23 * rho(2, 3) * k.c * p.d24 / (k.hbar * omega);
}

Permittivity permittivity(complex gamma_e, double density_n)
{
    const complex x = density_n * gamma_e;
    check_pole(x, "electric");
    const complex chi = x / (1.0 - x / 3.0);
    return {chi, 1.0 + chi};
}

complex permeability(complex gamma_m, double density_n)
{
    const complex x = density_n * gamma_m;
    check_pole(x, "magnetic");
    return (1.0 + 2.0 * x / 3.0) / (1.0 - x / 3.0);
}

complex magnetic_polarizability_from_permeability(complex mu_r, double density_n)
{
    if (!(density_n > 0.0)) {
        throw InvalidParams("density must be positive to invert the permeability");
    }
    return (mu_r - 1.0) / (2.0 / 3.0 + mu_r / 3.0) / density_n;
}

complex principal_sqrt(complex z)
{
    if (z.imag() == 0.0) {
        z = complex(z.real(), 0.0);
    }
    return std::sqrt(z);
}

complex refractive_index(complex eps_r, complex mu_r)
{
    if (eps_r.real() < 0.0 && mu_r.real() < 0.0) {
        return -principal_sqrt(eps_r * mu_r);
    }
    return principal_sqrt(eps_r) * principal_sqrt(mu_r);
}

double absorption_coefficient(complex n)
{
    return 2.0 * std::numbers::pi * n.imag();
}

}  // namespace lhm

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lhm/system_params.hpp"

namespace lhm {

/// Outcome of one embedded invariant check.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Valid parameters with rates in [0, 0.05], Rabi frequencies in [0, 5]
/// (probe strictly positive) and detunings in [-5, 5].
SystemParams random_params(std::mt19937_64& rng);

/// Trace conservation on 100 random parameter sets plus the element-wise
/// comparison against the written-out equations of motion; < 5 s.
CheckResult check_generator_validity(std::uint64_t seed = 1);

/// Residual, Hermiticity, trace and positivity of every steady state on the
/// canonical 401-point sweep; < 2 s.
CheckResult check_steady_state_quality();

/// Runge-Kutta integration from the ground state to t = 5.6e4 / gamma
/// against the linear solve at delta_p in {-2, 0, 2}.
CheckResult check_oracle_equivalence();

/// Vacuum limits, the hand case N gamma = 6, and the permeability round trip
/// on 1e4 random inputs.
CheckResult check_clausius_mossotti(std::uint64_t seed = 2);

/// n^2 = eps mu on 1e4 random pairs, Re n < 0 on the double-negative set,
/// n(-5, -5) = -5.
CheckResult check_branch_rule(std::uint64_t seed = 3);

/// Probe detunings at which level 4 is resonant with a dressed state of the
/// probe-free driven 1-2-3 system.
std::vector<double> probe_resonances(const SystemParams& params);

/// True within 0.05 gamma of any probe resonance.
bool near_probe_resonance(const SystemParams& params, double delta_p);

/// rho_24 / omega_p at omega_p = 1e-4 and 1e-3 agree within 1% over the
/// canonical grid, away from the probe resonances.
CheckResult check_weak_probe_linearity();

/// All of the above, in order.
std::vector<CheckResult> run_selfcheck();

}  // namespace lhm

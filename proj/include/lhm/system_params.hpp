#pragma once

#include <array>
#include <map>
#include <utility>

namespace lhm {

/// Atomic level label, 1..4.
using Level = int;

/// Incoherent population transfer from level `from` into level `to`.
struct DecayChannel {
    Level from;
    Level to;
    auto operator<=>(const DecayChannel&) const = default;
};

/// Unordered level pair identifying a coherence; stored with lo < hi.
struct LevelPair {
    Level lo;
    Level hi;
    auto operator<=>(const LevelPair&) const = default;
};

/// Builds a normalized pair regardless of argument order.
constexpr LevelPair level_pair(Level a, Level b)
{
    return a < b ? LevelPair{a, b} : LevelPair{b, a};
}

/// The seven population-transfer channels of the four-level scheme, in the
/// order of their rate symbols gamma_14, gamma_13, gamma_12, gamma_24,
/// gamma_23, gamma_34, gamma_21.
///
/// gamma_ab normally denotes transfer b -> a (gamma_14 rho_44 feeds rho_11).
/// gamma_34 is the exception: it drains level 3 into level 4.
inline constexpr std::array<DecayChannel, 7> kDecayChannels{{
    {4, 1}, {3, 1}, {2, 1}, {4, 2}, {3, 2}, {3, 4}, {1, 2},
}};

/// The six coherence pairs carrying a phenomenological dephasing rate.
inline constexpr std::array<LevelPair, 6> kDephasingPairs{{
    {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4},
}};

/// Physical inputs of the four-level vapor.
///
/// Rabi frequencies, detunings and rates are dimensionless multiples of the
/// rate unit `gamma_scale` (s^-1). SI quantities enter only through the
/// dipole moments, the density and the probe carrier frequency.
struct SystemParams {
    double omega_p = 0.0;
    double omega_s = 0.0;
    double omega_c = 0.0;

    double delta_p = 0.0;
    double delta_s = 0.0;
    double delta_c = 0.0;

    double gamma_scale = 1.0;  // s^-1

    std::map<DecayChannel, double> decay;
    std::map<LevelPair, double> dephasing;

    double d24 = 0.0;           // C m
    double mu23 = 0.0;          // J/T
    double density_n = 0.0;     // m^-3
    double omega_probe0 = 0.0;  // rad/s

    /// Rate of a decay channel; throws InvalidParams when absent.
    double decay_rate(Level from, Level to) const;

    /// Dephasing rate of the coherence between a and b; throws when absent.
    double dephasing_rate(Level a, Level b) const;

    /// Sum of the rates leaving `level`.
    double population_loss(Level level) const;
};

/// Throws InvalidParams unless every invariant of SystemParams holds.
/// With `require_probe` the probe Rabi frequency must also be > 0, which
/// the response formulas need but the master equation does not.
void validate(const SystemParams& params, bool require_probe = false);

/// Canonical operating point, with defaults for the probe Rabi frequency,
/// dipole moments and carrier frequency.
SystemParams canonical_params();

/// Copy of `params` with every rate, Rabi frequency and detuning set to zero.
SystemParams zeroed(SystemParams params);

}  // namespace lhm

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "lhm/sweep.hpp"
#include "lhm/system_params.hpp"

namespace lhm {

/// Every key a configuration file may carry.
inline constexpr std::array<std::string_view, 26> kConfigKeys{
    "omega_p",  "omega_s",  "omega_c",   "delta_s",   "delta_c",      "gamma_scale",
    "gamma_14", "gamma_13", "gamma_12",  "gamma_24",  "gamma_23",     "gamma_34",
    "gamma_21", "Gamma_12", "Gamma_13",  "Gamma_14",  "Gamma_23",     "Gamma_24",
    "Gamma_34", "d24",      "mu23",      "density_n", "omega_probe0", "sweep_from",
    "sweep_to", "sweep_step",
};

struct Config {
    SystemParams params;
    SweepGrid grid;
    std::vector<std::string> defaulted_keys;  // keys filled from the canonical set
};

/// The canonical operating point and the default 401-point grid.
Config default_config();

/// Parses `key = value` lines; `#` starts a comment. Missing keys take the
/// canonical default (each one logged). Throws InputError on a malformed
/// line (with its number), an unknown or repeated key, or a non-finite
/// value, and InvalidParams when the result violates a parameter invariant.
Config parse_config(std::string_view text);

/// Renders every key with a round-trip exact value, grouped and commented.
std::string render_config(const SystemParams& params, const SweepGrid& grid);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_shortest(double value);

/// Parses a complete decimal token (scientific notation accepted); returns
/// false on trailing garbage or an empty token.
bool parse_double(std::string_view text, double& value);

}  // namespace lhm

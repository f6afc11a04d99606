#include "lhm/system_params.hpp"

#include <cmath>
#include <string>

#include "lhm/errors.hpp"

namespace lhm {
namespace {

void require_non_negative(double value, const char* name)
{
    if (!std::isfinite(value)) {
        throw InvalidParams(std::string(name) + " is not finite");
    }
    if (value < 0.0) {
        throw InvalidParams(std::string(name) + " is negative");
    }
}

void require_finite(double value, const char* name)
{
    if (!std::isfinite(value)) {
        throw InvalidParams(std::string(name) + " is not finite");
    }
}

std::string channel_name(DecayChannel ch)
{
    return "decay " + std::to_string(ch.from) + "->" + std::to_string(ch.to);
}

std::string pair_name(LevelPair p)
{
    return "dephasing " + std::to_string(p.lo) + "-" + std::to_string(p.hi);
}

}  // namespace

double SystemParams::decay_rate(Level from, Level to) const
{
    auto it = decay.find({from, to});
    if (it == decay.end()) {
        throw InvalidParams("missing " + channel_name({from, to}));
    }
    return it->second;
}

double SystemParams::dephasing_rate(Level a, Level b) const
{
    auto it = dephasing.find(level_pair(a, b));
    if (it == dephasing.end()) {
        throw InvalidParams("missing " + pair_name(level_pair(a, b)));
    }
    return it->second;
}

double SystemParams::population_loss(Level level) const
{
    double total = 0.0;
    for (const auto& [ch, rate] : decay) {
        if (ch.from == level) {
            total += rate;
        }
    }
    return total;
}

void validate(const SystemParams& p, bool require_probe)
{
    require_non_negative(p.omega_p, "omega_p");
    require_non_negative(p.omega_s, "omega_s");
    require_non_negative(p.omega_c, "omega_c");
    require_finite(p.delta_p, "delta_p");
    require_finite(p.delta_s, "delta_s");
    require_finite(p.delta_c, "delta_c");
    require_non_negative(p.gamma_scale, "gamma_scale");
    require_non_negative(p.d24, "d24");
    require_non_negative(p.mu23, "mu23");
    require_non_negative(p.density_n, "density_n");
    require_non_negative(p.omega_probe0, "omega_probe0");

    for (DecayChannel ch : kDecayChannels) {
        auto it = p.decay.find(ch);
        if (it == p.decay.end()) {
            throw InvalidParams("missing " + channel_name(ch));
        }
        require_non_negative(it->second, channel_name(ch).c_str());
    }
    if (p.decay.size() != kDecayChannels.size()) {
        throw InvalidParams("decay map holds channels outside the four-level scheme");
    }
    for (LevelPair pair : kDephasingPairs) {
        auto it = p.dephasing.find(pair);
        if (it == p.dephasing.end()) {
            throw InvalidParams("missing " + pair_name(pair));
        }
        require_non_negative(it->second, pair_name(pair).c_str());
    }
    if (p.dephasing.size() != kDephasingPairs.size()) {
        throw InvalidParams("dephasing map holds pairs outside the four-level scheme");
    }
    if (require_probe && !(p.omega_p > 0.0)) {
        throw InvalidParams("omega_p must be > 0 for the optical response");
    }
}

SystemParams canonical_params()
{
    SystemParams p;
    p.omega_p = 0.01;
    p.omega_s = 3.80;
    p.omega_c = 1.80;
    p.delta_p = 0.0;
    p.delta_s = 0.0001;
    p.delta_c = 0.0;
    p.gamma_scale = 1.0e10;

    constexpr double slow = 0.00018;
    p.decay = {
        {{4, 1}, slow},
        {{3, 1}, slow},
        {{2, 1}, slow},
        {{4, 2}, slow},
        {{3, 2}, slow},
        {{3, 4}, 0.0076},
        {{1, 2}, slow},
    };
    p.dephasing = {
        {{1, 2}, 0.0001},
        {{1, 3}, 0.0001},
        {{1, 4}, 0.0001},
        {{2, 3}, 0.005},
        {{2, 4}, 0.006},
        {{3, 4}, 0.01},
    };

    p.d24 = 1.0e-29;
    p.mu23 = 9.2740100783e-24;  // Bohr magneton
    p.density_n = 5.0e24;
    p.omega_probe0 = 2.4e15;
    return p;
}

SystemParams zeroed(SystemParams p)
{
    p.omega_p = p.omega_s = p.omega_c = 0.0;
    p.delta_p = p.delta_s = p.delta_c = 0.0;
    for (auto& [ch, rate] : p.decay) {
        rate = 0.0;
    }
    for (auto& [pair, rate] : p.dephasing) {
        rate = 0.0;
    }
    return p;
}

}  // namespace lhm

#include "lhm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "lhm/errors.hpp"
#include "lhm/log.hpp"

namespace lhm {
namespace {

std::string_view trim(std::string_view s)
{
    constexpr std::string_view ws = " \t\r\n\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

// Field addressed by a config key, or nullptr for an unknown key.
double* field(std::string_view key, SystemParams& p, SweepGrid& g)
{
    if (key == "omega_p") return &p.omega_p;
    if (key == "omega_s") return &p.omega_s;
    if (key == "omega_c") return &p.omega_c;
    if (key == "delta_s") return &p.delta_s;
    if (key == "delta_c") return &p.delta_c;
    if (key == "gamma_scale") return &p.gamma_scale;
    if (key == "gamma_14") return &p.decay[{4, 1}];
    if (key == "gamma_13") return &p.decay[{3, 1}];
    if (key == "gamma_12") return &p.decay[{2, 1}];
    if (key == "gamma_24") return &p.decay[{4, 2}];
    if (key == "gamma_23") return &p.decay[{3, 2}];
    if (key == "gamma_34") return &p.decay[{3, 4}];
    if (key == "gamma_21") return &p.decay[{1, 2}];
    if (key == "Gamma_12") return &p.dephasing[{1, 2}];
    if (key == "Gamma_13") return &p.dephasing[{1, 3}];
    if (key == "Gamma_14") return &p.dephasing[{1, 4}];
    if (key == "Gamma_23") return &p.dephasing[{2, 3}];
    if (key == "Gamma_24") return &p.dephasing[{2, 4}];
    if (key == "Gamma_34") return &p.dephasing[{3, 4}];
    if (key == "d24") return &p.d24;
    if (key == "mu23") return &p.mu23;
    if (key == "density_n") return &p.density_n;
    if (key == "omega_probe0") return &p.omega_probe0;
    if (key == "sweep_from") return &g.from_delta;
    if (key == "sweep_to") return &g.to_delta;
    if (key == "sweep_step") return &g.step;
    return nullptr;
}

}  // namespace

std::string format_shortest(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

bool parse_double(std::string_view text, double& value)
{
    if (text.empty()) {
        return false;
    }
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

Config default_config()
{
    return Config{canonical_params(), SweepGrid{}, {}};
}

Config parse_config(std::string_view text)
{
    Config cfg = default_config();
    std::set<std::string, std::less<>> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InputError("config line " + std::to_string(line_no) +
                             ": expected 'key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view raw = trim(line.substr(eq + 1));
        double* target = field(key, cfg.params, cfg.grid);
        if (target == nullptr) {
            throw InputError("config line " + std::to_string(line_no) + ": unknown key '" +
                             std::string(key) + "'");
        }
        if (!seen.insert(std::string(key)).second) {
            throw InputError("config line " + std::to_string(line_no) + ": key '" +
                             std::string(key) + "' given twice");
        }
        double value = 0.0;
        if (!parse_double(raw, value)) {
            throw InputError("config line " + std::to_string(line_no) + ": '" +
                             std::string(raw) + "' is not a number");
        }
        if (!std::isfinite(value)) {
            throw InputError("config line " + std::to_string(line_no) + ": value of '" +
                             std::string(key) + "' is not finite");
        }
        *target = value;
    }

    for (std::string_view key : kConfigKeys) {
        if (seen.find(key) == seen.end()) {
            cfg.defaulted_keys.emplace_back(key);
            SystemParams p = canonical_params();
            SweepGrid g;
            log(LogLevel::info,
                "config: '" + std::string(key) + "' not set, using " + format_shortest(*field(key, p, g)));
        }
    }
    validate(cfg.params);
    validate(cfg.grid);
    return cfg;
}

std::string render_config(const SystemParams& params, const SweepGrid& grid)
{
    SystemParams p = params;
    SweepGrid g = grid;
    auto v = [&](std::string_view key) { return format_shortest(*field(key, p, g)); };

    std::ostringstream out;
    out << "# Four-level vapor configuration. Rates, Rabi frequencies and detunings\n"
           "# are in units of gamma_scale (s^-1).\n\n"
           "# Rabi frequencies of probe (2-4), signal (2-3) and coupling (1-3) fields\n";
    out << "omega_p = " << v("omega_p") << '\n';
    out << "omega_s = " << v("omega_s") << '\n';
    out << "omega_c = " << v("omega_c") << "\n\n";
    out << "# Signal and coupling detunings (the probe detuning is swept)\n";
    out << "delta_s = " << v("delta_s") << '\n';
    out << "delta_c = " << v("delta_c") << "\n\n";
    out << "gamma_scale = " << v("gamma_scale") << "\n\n";
    out << "# Population transfer rates. gamma_ab moves population b -> a, except\n"
           "# gamma_34 which moves 3 -> 4. The reversed labels gamma_41, gamma_42,\n"
           "# gamma_32 map to gamma_14, gamma_24, gamma_23 here; gamma_12 = gamma_21\n"
           "# models two-way mixing of the lower levels.\n";
    for (std::string_view key :
         {"gamma_14", "gamma_13", "gamma_12", "gamma_24", "gamma_23", "gamma_34", "gamma_21"}) {
        out << key << " = " << v(key) << '\n';
    }
    out << "\n# Dephasing of each coherence, added to half the population loss of both\n"
           "# levels. Reversed labels Gamma_21, Gamma_41, Gamma_42, Gamma_32 map to\n"
           "# Gamma_12, Gamma_14, Gamma_24, Gamma_23.\n";
    for (std::string_view key :
         {"Gamma_12", "Gamma_13", "Gamma_14", "Gamma_23", "Gamma_24", "Gamma_34"}) {
        out << key << " = " << v(key) << '\n';
    }
    out << "\n# Electric dipole (C m), magnetic dipole (J/T), number density (m^-3),\n"
           "# probe carrier angular frequency (rad/s)\n";
    out << "d24 = " << v("d24") << '\n';
    out << "mu23 = " << v("mu23") << '\n';
    out << "density_n = " << v("density_n") << '\n';
    out << "omega_probe0 = " << v("omega_probe0") << "\n\n";
    out << "# Probe detuning grid\n";
    out << "sweep_from = " << v("sweep_from") << '\n';
    out << "sweep_to = " << v("sweep_to") << '\n';
    out << "sweep_step = " << v("sweep_step") << '\n';
    return out.str();
}

}  // namespace lhm

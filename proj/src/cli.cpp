#include "lhm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lhm/checks.hpp"
#include "lhm/config.hpp"
#include "lhm/csv.hpp"
#include "lhm/errors.hpp"
#include "lhm/svg.hpp"
#include "lhm/sweep.hpp"

namespace lhm {
namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw InputError("failed writing '" + path + "'");
    }
}

std::string complex_text(complex z)
{
    return format_shortest(z.real()) + " " + format_shortest(z.imag());
}

int run_steady(const std::string& config_path, std::optional<double> delta_p, std::ostream& out)
{
    const Config cfg = parse_config(read_file(config_path));
    SystemParams p = cfg.params;
    p.delta_p = delta_p.value_or(0.0);

    const GeneratorMatrix l = build_generator(p);
    const DensityMatrix rho = steady_state(l);

    out << "delta_p = " << format_shortest(p.delta_p) << '\n';
    for (Level r = 1; r <= 4; ++r) {
        for (Level c = 1; c <= 4; ++c) {
            out << "rho_" << r << c << " = " << complex_text(rho(r, c)) << '\n';
        }
    }
    out << "residual = " << format_shortest((l.matrix() * rho.to_vector()).cwiseAbs().maxCoeff())
        << '\n';
    out << "hermiticity_error = " << format_shortest(rho.hermiticity_error()) << '\n';
    out << "trace_error = " << format_shortest(rho.trace_error()) << '\n';
    out << "min_eigenvalue = " << format_shortest(rho.min_eigenvalue()) << '\n';

    validate(p, true);
    const complex ge = electric_polarizability(rho, p);
    const complex gm = magnetic_polarizability(rho, p);
    const Permittivity e = permittivity(ge, p.density_n);
    const complex mu = permeability(gm, p.density_n);
    const complex n = refractive_index(e.eps_r, mu);
    out << "gamma_e = " << complex_text(ge) << '\n';
    out << "gamma_m = " << complex_text(gm) << '\n';
    out << "chi_e = " << complex_text(e.chi_e) << '\n';
    out << "eps_r = " << complex_text(e.eps_r) << '\n';
    out << "mu_r = " << complex_text(mu) << '\n';
    out << "n = " << complex_text(n) << '\n';
    out << "absorption_a = " << format_shortest(absorption_coefficient(n)) << '\n';
    return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& out_path,
              const std::string& svg_path, std::optional<double> from, std::optional<double> to,
              std::optional<double> step, std::ostream& out)
{
    const Config cfg = parse_config(read_file(config_path));
    SweepGrid grid = cfg.grid;
    grid.from_delta = from.value_or(grid.from_delta);
    grid.to_delta = to.value_or(grid.to_delta);
    grid.step = step.value_or(grid.step);
    validate(grid);

    ResponseTable table = sweep_detuning(cfg.params, grid);
    table = group_index(std::move(table), cfg.params.omega_probe0, cfg.params.gamma_scale);
    write_file(out_path, emit_csv(table));
    if (!svg_path.empty()) {
        write_file(svg_path, emit_svg(table, {"re_eps", "re_mu"}));
    }

    const auto flagged = std::count_if(table.rows().begin(), table.rows().end(),
                                       [](const auto& r) { return r.flag != RowFlag::none; });
    out << "wrote " << table.size() << " rows to " << out_path;
    if (flagged > 0) {
        out << " (" << flagged << " flagged)";
    }
    out << '\n';
    return kExitOk;
}

int run_bands(const std::string& in_path, const std::string& predicate_name, std::ostream& out)
{
    const BandPredicate predicate = band_predicate_from_string(predicate_name);
    const ResponseTable table = parse_csv(read_file(in_path));
    const auto bands = find_bands(table, predicate);
    if (bands.empty()) {
        out << "no " << to_string(predicate) << " bands\n";
    }
    for (const Band& b : bands) {
        out << '[' << format_shortest(b.lo) << ", " << format_shortest(b.hi) << "]\n";
    }
    return kExitOk;
}

int run_calibrate(const std::string& config_path, const std::string& out_path,
                  const CalibrationTargets& targets, std::ostream& out)
{
    const Config cfg = parse_config(read_file(config_path));
    const CalibrationResult res = calibrate_dipoles(cfg.params, cfg.grid, targets);
    write_file(out_path, render_config(res.params, cfg.grid));
    out << "statistic = " << to_string(targets.statistic) << '\n';
    out << "d24_factor = " << format_shortest(res.audit.d24_factor) << '\n';
    out << "mu23_factor = " << format_shortest(res.audit.mu23_factor) << '\n';
    out << "electric_statistic = " << format_shortest(res.audit.electric_statistic) << '\n';
    out << "magnetic_statistic = " << format_shortest(res.audit.magnetic_statistic) << '\n';
    out << "d24 = " << format_shortest(res.params.d24) << '\n';
    out << "mu23 = " << format_shortest(res.params.mu23) << '\n';
    return kExitOk;
}

int run_selfcheck(std::ostream& out)
{
    bool all = true;
    for (const CheckResult& r : lhm::run_selfcheck()) {
        all = all && r.pass;
        out << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.seconds << " s): " << r.detail
            << '\n';
    }
    return all ? kExitOk : kExitNumerical;
}

}  // namespace

const char* cli_grammar()
{
    return "usage:\n"
           "  lhm steady    --config F [--delta-p X]\n"
           "  lhm sweep     --config F --out T.csv [--svg P.svg] [--from A --to B --step S]\n"
           "  lhm bands     --in T.csv --predicate NAME\n"
           "                NAME: double_negative | gain | negative_eps | negative_mu\n"
           "  lhm calibrate --config F --out F2 [--electric-target LO HI]\n"
           "                [--magnetic-target LO HI] [--statistic floor|peak]\n"
           "  lhm selfcheck\n";
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Four-level coherent vapor: steady state and optical response", "lhm"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_path;
    std::string svg_path;
    std::string in_path;
    std::string predicate;
    std::optional<double> delta_p;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<double> step;

    auto* steady = app.add_subcommand("steady", "steady state and response at one detuning");
    steady->add_option("--config", config_path, "configuration file")->required();
    steady->add_option("--delta-p", delta_p, "probe detuning in units of gamma");

    auto* sweep = app.add_subcommand("sweep", "probe-detuning sweep to CSV");
    sweep->add_option("--config", config_path, "configuration file")->required();
    sweep->add_option("--out", out_path, "output CSV")->required();
    sweep->add_option("--svg", svg_path, "optional chart of Re eps and Re mu");
    sweep->add_option("--from", from, "first detuning");
    sweep->add_option("--to", to, "last detuning");
    sweep->add_option("--step", step, "detuning step");

    auto* bands = app.add_subcommand("bands", "detuning intervals where a predicate holds");
    bands->add_option("--in", in_path, "sweep CSV")->required();
    bands->add_option("--predicate", predicate, "double_negative|gain|negative_eps|negative_mu")
        ->required();

    auto* calibrate = app.add_subcommand("calibrate", "rescale dipole moments");
    calibrate->add_option("--config", config_path, "configuration file")->required();
    calibrate->add_option("--out", out_path, "updated configuration file")->required();
    std::vector<double> electric_target;
    std::vector<double> magnetic_target;
    std::string statistic = "floor";
    calibrate->add_option("--electric-target", electric_target, "range for |N gamma_e| (default 4 8)")
        ->expected(2);
    calibrate->add_option("--magnetic-target", magnetic_target, "range for |N gamma_m| (default 4 8)")
        ->expected(2);
    calibrate->add_option("--statistic", statistic, "summary of |N gamma| over the sweep")
        ->check(CLI::IsMember({"floor", "peak"}));

    auto* selfcheck = app.add_subcommand("selfcheck", "run the embedded invariant suite");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help() << cli_grammar();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All) << cli_grammar();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << cli_grammar();
        return kExitUsage;
    }

    try {
        if (*steady) {
            return run_steady(config_path, delta_p, out);
        }
        if (*sweep) {
            return run_sweep(config_path, out_path, svg_path, from, to, step, out);
        }
        if (*bands) {
            return run_bands(in_path, predicate, out);
        }
        if (*calibrate) {
            CalibrationTargets targets;
            if (!electric_target.empty()) {
                targets.electric = {electric_target[0], electric_target[1]};
            }
            if (!magnetic_target.empty()) {
                targets.magnetic = {magnetic_target[0], magnetic_target[1]};
            }
            targets.statistic =
                statistic == "peak" ? CalibrationStatistic::peak : CalibrationStatistic::floor;
            return run_calibrate(config_path, out_path, targets, out);
        }
        if (*selfcheck) {
            return run_selfcheck(out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidParams& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    err << "error: no subcommand\n" << cli_grammar();
    return kExitUsage;
}

}  // namespace lhm

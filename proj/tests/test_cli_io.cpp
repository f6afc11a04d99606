#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "lhm/checks.hpp"
#include "lhm/cli.hpp"
#include "lhm/config.hpp"
#include "lhm/csv.hpp"
#include "lhm/errors.hpp"
#include "lhm/log.hpp"
#include "lhm/svg.hpp"

using namespace lhm;
namespace fs = std::filesystem;

namespace {

struct QuietLog {
    QuietLog() { set_log_sink([](LogLevel, std::string_view) {}); }
} quiet;

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "lhm_cli_io_test";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write_text(const std::string& name, const std::string& text)
{
    const fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

std::string read_text(const fs::path& p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string input_error(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

OpticalResponse row(double dp, double eps)
{
    OpticalResponse r;
    r.delta_p = dp;
    r.eps_r = {eps, 0.25 * eps};
    r.chi_e = r.eps_r - 1.0;
    r.mu_r = {-eps, 0.1};
    r.n = {0.5 - eps, -0.01};
    r.absorption_a = -0.0628;
    r.group_index = 3.0 + dp;
    return r;
}

ResponseTable three_rows()
{
    return ResponseTable({row(-1.0, 0.3), row(0.0, -0.7), row(1.0, 1.0 / 3.0)});
}

std::size_t line_count(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("config: empty text gives the canonical configuration")
{
    const Config c = parse_config("");
    CHECK(c.defaulted_keys.size() == kConfigKeys.size());
    const Config d = default_config();
    CHECK(render_config(c.params, c.grid) == render_config(d.params, d.grid));
    CHECK(c.grid.point_count() == 401);
}

TEST_CASE("config: overrides, comments and blank lines")
{
    const Config c = parse_config("# comment\n\n  omega_c = 2.5   # trailing\nsweep_step=0.05\n");
    CHECK(c.params.omega_c == 2.5);
    CHECK(c.params.omega_s == 3.8);
    CHECK(c.grid.step == 0.05);
    CHECK(c.defaulted_keys.size() == kConfigKeys.size() - 2);
}

TEST_CASE("config: errors carry the line number")
{
    CHECK(input_error("omega_q = 1\n").find("line 1") != std::string::npos);
    CHECK(input_error("omega_q = 1\n").find("omega_q") != std::string::npos);
    CHECK(input_error("# a\n\nomega_c 2.5\n").find("line 3") != std::string::npos);
    CHECK(input_error("omega_c = 1\nomega_c = 2\n").find("line 2") != std::string::npos);
    CHECK(input_error("omega_c = 2.5x\n").find("line 1") != std::string::npos);
    CHECK(input_error("omega_c =\n").find("line 1") != std::string::npos);
    for (const char* bad : {"nan", "inf", "-inf", "1e400"}) {
        CHECK(!input_error(std::string("omega_c = ") + bad + "\n").empty());
    }
    CHECK_THROWS_AS(parse_config("gamma_14 = -1\n"), InvalidParams);
    CHECK_THROWS_AS(parse_config("omega_p = -0.5\n"), InvalidParams);
    CHECK_THROWS_AS(parse_config("sweep_step = 20\n"), InputError);
}

TEST_CASE("config: render and parse are inverse")
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        const SystemParams p = random_params(rng);
        const SweepGrid g{-3.0, 2.5, 0.01};
        const std::string text = render_config(p, g);
        const Config c = parse_config(text);
        CHECK(c.defaulted_keys.empty());
        CHECK(render_config(c.params, c.grid) == text);
        CHECK(c.params.omega_p == p.omega_p);
        CHECK(c.params.decay == p.decay);
        CHECK(c.params.dephasing == p.dephasing);
        CHECK(c.params.mu23 == p.mu23);
    }
}

TEST_CASE("config: shortest formatting round-trips")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-300.0, 300.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::pow(10.0, u(rng)) * (i % 2 ? 1.0 : -1.0);
        double back = 0.0;
        REQUIRE(parse_double(format_shortest(x), back));
        CHECK(back == x);
    }
    double v = 0.0;
    CHECK_FALSE(parse_double("", v));
    CHECK_FALSE(parse_double("1.0.0", v));
    CHECK_FALSE(parse_double("2 3", v));
}

TEST_CASE("csv: header and one line per row")
{
    const std::string csv = emit_csv(three_rows());
    CHECK(line_count(csv) == 4);
    CHECK(csv.substr(0, csv.find('\n')) == kCsvHeader);
}

TEST_CASE("csv: round trip is bit exact")
{
    const ResponseTable t = three_rows();
    const ResponseTable back = parse_csv(emit_csv(t));
    REQUIRE(back.size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(back[i].delta_p == t[i].delta_p);
        CHECK(back[i].eps_r == t[i].eps_r);
        CHECK(back[i].mu_r == t[i].mu_r);
        CHECK(back[i].n == t[i].n);
        CHECK(back[i].absorption_a == t[i].absorption_a);
        CHECK(back[i].group_index == t[i].group_index);
        CHECK(back[i].chi_e == back[i].eps_r - 1.0);
    }
    CHECK(emit_csv(back) == emit_csv(t));
}

TEST_CASE("csv: flagged rows")
{
    std::vector<OpticalResponse> rows{row(-1.0, 0.3), row(0.0, 0.5), row(1.0, 0.7)};
    rows[1].flag = RowFlag::electric_pole;
    rows[1].eps_r = rows[1].chi_e = rows[1].n = {NAN, NAN};
    rows[1].absorption_a = NAN;
    rows[1].group_index.reset();
    const std::string csv = emit_csv(ResponseTable(rows));
    CHECK(csv.substr(0, csv.find('\n')) == std::string(kCsvHeader) + ",flag");
    CHECK(csv.find(",nan,") != std::string::npos);
    CHECK(csv.find(std::string(to_string(RowFlag::electric_pole))) != std::string::npos);
    const ResponseTable back = parse_csv(csv);
    CHECK(back[1].flag == RowFlag::electric_pole);
    CHECK(std::isnan(back[1].eps_r.real()));
    CHECK_FALSE(back[1].group_index.has_value());
    CHECK(back[0].flag == RowFlag::none);
}

TEST_CASE("csv: malformed input")
{
    CHECK_THROWS_AS(parse_csv(""), InputError);
    CHECK_THROWS_AS(parse_csv("a,b\n1,2\n"), InputError);
    CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\n1,2,3\n"), InputError);
    CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\n0,1,0,1,0,1,0,0,x\n"), InputError);
}

TEST_CASE("svg: structure")
{
    const std::string svg = emit_svg(three_rows(), {"re_eps", "re_mu"});
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("class=\"zero-line\"") != std::string::npos);
    const std::regex entry("class=\"legend-entry\"");
    CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), entry), std::sregex_iterator()) == 2);
    CHECK(svg.find("data-column=\"re_eps\"") != std::string::npos);
    CHECK(svg.find("data-column=\"re_mu\"") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
    CHECK_THROWS_AS(emit_svg(three_rows(), {"re_chi"}), InputError);
    CHECK_THROWS_AS(emit_svg(three_rows(), {}), InputError);
}

TEST_CASE("svg: constant column renders finite coordinates")
{
    std::vector<OpticalResponse> rows{row(-1.0, 2.0), row(0.0, 2.0), row(1.0, 2.0)};
    const std::string svg = emit_svg(ResponseTable(rows), {"re_eps"});
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(svg.find("inf") == std::string::npos);
}

TEST_CASE("svg: points sit on the side of the zero line given by their sign")
{
    std::vector<OpticalResponse> rows;
    for (int i = -6; i <= 6; ++i) rows.push_back(row(0.5 * i, std::sin(0.9 * i) + 0.05));
    const ResponseTable t(rows);
    const std::string svg = emit_svg(t, {"re_eps"});
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, std::regex("class=\"zero-line\"[^>]*y1=\"([^\"]+)\"")));
    const double zero_y = std::stod(m[1]);
    REQUIRE(std::regex_search(svg, m, std::regex("data-column=\"re_eps\"[^>]*points=\"([^\"]+)\"")));
    std::istringstream pts(m[1]);
    std::string pair;
    std::size_t i = 0;
    while (pts >> pair) {
        const double y = std::stod(pair.substr(pair.find(',') + 1));
        CHECK((t[i].eps_r.real() < 0.0) == (y > zero_y));
        ++i;
    }
    CHECK(i == t.size());
}

TEST_CASE("cli: usage errors exit 1 with a message")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {}, {"frobnicate"}, {"sweep"}, {"steady", "--config"}, {"bands", "--in", "x.csv"},
             {"steady", "--config", "/nonexistent/lhm.conf"}, {"sweep", "--config", "a", "--out"}}) {
        const Run r = run(args);
        CHECK(r.code == kExitUsage);
        CHECK(r.err.find("error") != std::string::npos);
    }
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("cli: steady, sweep, bands and calibrate")
{
    const fs::path cfg = write_text("empty.conf", "");
    const Run steady = run({"steady", "--config", cfg.string(), "--delta-p", "1.5"});
    REQUIRE(steady.code == kExitOk);
    CHECK(steady.out.find("delta_p = 1.5\n") != std::string::npos);
    CHECK(steady.out.find("rho_24 = ") != std::string::npos);
    CHECK(steady.out.find("eps_r = ") != std::string::npos);
    CHECK(steady.out.find("absorption_a = ") != std::string::npos);

    const fs::path csv = scratch("sweep.csv");
    const fs::path svg = scratch("sweep.svg");
    const Run sweep = run({"sweep", "--config", cfg.string(), "--out", csv.string(), "--svg", svg.string()});
    REQUIRE(sweep.code == kExitOk);
    const std::string table = read_text(csv);
    CHECK(line_count(table) == 402);
    CHECK(read_text(svg).find("data-column=\"re_mu\"") != std::string::npos);

    const Run eps = run({"bands", "--in", csv.string(), "--predicate", "negative_eps"});
    CHECK(eps.code == kExitOk);
    CHECK(eps.out == "[-5, 5]\n");
    const Run dn = run({"bands", "--in", csv.string(), "--predicate", "double_negative"});
    CHECK(dn.code == kExitOk);
    CHECK(dn.out == "no double_negative bands\n");
    CHECK(run({"bands", "--in", csv.string(), "--predicate", "nope"}).code == kExitUsage);

    const Run narrow = run({"sweep", "--config", cfg.string(), "--out", csv.string(), "--from",
                            "-1", "--to", "1", "--step", "0.5"});
    CHECK(narrow.code == kExitOk);
    CHECK(line_count(read_text(csv)) == 6);

    const fs::path cal = scratch("cal.conf");
    const Run calibrate = run({"calibrate", "--config", cfg.string(), "--out", cal.string(),
                               "--magnetic-target", "1e-4", "1e-3"});
    CHECK(calibrate.code == kExitOk);
    CHECK(calibrate.out.find("d24_factor = 1\n") != std::string::npos);
    CHECK(parse_config(read_text(cal)).defaulted_keys.empty());
    const Run unattainable = run({"calibrate", "--config", cfg.string(), "--out", cal.string()});
    CHECK(unattainable.code == kExitNumerical);
    CHECK(unattainable.err.find("unattainable") != std::string::npos);
}

TEST_CASE("cli: degenerate steady state exits 2")
{
    std::string text;
    for (std::string_view key : kConfigKeys) {
        if (key.starts_with("gamma_") || key.starts_with("Gamma_")) {
            text += std::string(key) + " = 0\n";
        }
    }
    const fs::path cfg = write_text("degenerate.conf", text);
    const Run r = run({"steady", "--config", cfg.string()});
    CHECK(r.code == kExitNumerical);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("cli: random argument lists never escape")
{
    const std::vector<std::string> vocab = {"steady", "sweep", "bands", "calibrate", "--config",
                                            "--out", "--from", "--step", "--predicate", "gain",
                                            "-1", "nan", "", "--", "x"};
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
        std::vector<std::string> args;
        for (int k = 0; k < static_cast<int>(rng() % 6); ++k) args.push_back(vocab[rng() % vocab.size()]);
        Run r{};
        CHECK_NOTHROW(r = run(args));
        CHECK(r.code == kExitUsage);
    }
}

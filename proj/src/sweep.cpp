#include "lhm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "lhm/errors.hpp"

namespace lhm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const complex kComplexNaN{kNaN, kNaN};

// Runs fn(i) for i in [0, count) on a few worker threads. The first
// exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn)
{
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    if (workers == 1 || count < 16) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += workers) {
                        fn(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

// With no probe field the normalization is 0/0; a vanishing coherence then
// means there is simply no probe response.
bool no_probe_response(const SystemParams& p, complex coherence)
{
    return p.omega_p == 0.0 && coherence == complex(0.0, 0.0);
}

std::vector<complex> index_values(const ResponseTable& table)
{
    std::vector<complex> n;
    n.reserve(table.size());
    for (const auto& row : table.rows()) {
        n.push_back(row.n);
    }
    return n;
}

// dn/d(delta_p): central differences inside, second-order one-sided at the ends.
std::vector<complex> derivative(const std::vector<complex>& f, double h)
{
    const std::size_t m = f.size();
    std::vector<complex> d(m);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[m - 1] = (3.0 * f[m - 1] - 4.0 * f[m - 2] + f[m - 3]) / (2.0 * h);
    return d;
}

double summarize(const std::vector<double>& values, CalibrationStatistic statistic)
{
    if (values.empty()) {
        return 0.0;
    }
    return statistic == CalibrationStatistic::floor
               ? *std::min_element(values.begin(), values.end())
               : *std::max_element(values.begin(), values.end());
}

void check_target(const TargetRange& t, const char* name)
{
    if (!(t.lo > 0.0) || !(t.hi > t.lo) || !std::isfinite(t.hi)) {
        std::ostringstream msg;
        msg << name << " calibration target [" << t.lo << ", " << t.hi
            << "] must be positive with lo < hi";
        throw InputError(msg.str());
    }
}

struct BisectionOutcome {
    double factor;
    double achieved;
    int iterations;
};

// Finds f in [1e-3, 1e3] with value(f) inside the target; value must be
// non-decreasing in f.
BisectionOutcome bisect_factor(const std::function<double(double)>& value,
                               const TargetRange& target, const char* name)
{
    constexpr double kMinFactor = 1e-3;
    constexpr double kMaxFactor = 1e3;
    constexpr int kMaxIterations = 60;

    auto inside = [&target](double v) { return v >= target.lo && v <= target.hi; };

    const double at_one = value(1.0);
    if (inside(at_one)) {
        return {1.0, at_one, 0};
    }
    const double at_min = value(kMinFactor);
    const double at_max = value(kMaxFactor);
    if (at_max < target.lo || at_min > target.hi) {
        std::ostringstream msg;
        msg << name << " target [" << target.lo << ", " << target.hi
            << "] unattainable: factor range [1e-3, 1e3] gives " << at_min << " .. " << at_max
            << " (at factor 1: " << at_one << ")";
        throw Error(msg.str());
    }

    double lo = at_one < target.lo ? 1.0 : kMinFactor;
    double hi = at_one < target.lo ? kMaxFactor : 1.0;
    for (int it = 1; it <= kMaxIterations; ++it) {
        const double mid = std::sqrt(lo * hi);
        const double v = value(mid);
        if (inside(v)) {
            return {mid, v, it};
        }
        (v < target.lo ? lo : hi) = mid;
    }
    std::ostringstream msg;
    msg << name << " calibration did not converge in " << kMaxIterations << " iterations";
    throw Error(msg.str());
}

}  // namespace

std::size_t SweepGrid::point_count() const
{
    const double q = (to_delta - from_delta) / step;
    const double rounded = std::round(q);
    const double whole = std::abs(q - rounded) <= 1e-9 * std::max(1.0, std::abs(q))
                             ? rounded
                             : std::floor(q);
    return static_cast<std::size_t>(whole) + 1;
}

void validate(const SweepGrid& g)
{
    if (!std::isfinite(g.from_delta) || !std::isfinite(g.to_delta) || !std::isfinite(g.step)) {
        throw InputError("sweep grid bounds must be finite");
    }
    if (!(g.step > 0.0)) {
        throw InputError("sweep step must be positive");
    }
    if (!(g.from_delta < g.to_delta)) {
        throw InputError("sweep_from must be smaller than sweep_to");
    }
    if ((g.to_delta - g.from_delta) / g.step > 1e8) {
        throw InputError("sweep grid has more than 1e8 points");
    }
    if (g.point_count() < 3) {
        throw InputError("sweep grid needs at least 3 points for central differences");
    }
}

std::string_view to_string(RowFlag flag)
{
    switch (flag) {
    case RowFlag::none:
        return "ok";
    case RowFlag::electric_pole:
        return "electric_pole";
    case RowFlag::magnetic_pole:
        return "magnetic_pole";
    case RowFlag::degenerate:
        return "degenerate";
    }
    return "ok";
}

std::optional<RowFlag> row_flag_from_string(std::string_view text)
{
    for (RowFlag f : {RowFlag::none, RowFlag::electric_pole, RowFlag::magnetic_pole,
                      RowFlag::degenerate}) {
        if (to_string(f) == text) {
            return f;
        }
    }
    return std::nullopt;
}

OpticalResponse response_from_state(const DensityMatrix& rho, const SystemParams& p,
                                    const PhysicalConstants& k)
{
    OpticalResponse row;
    row.delta_p = p.delta_p;
    row.gamma_e = no_probe_response(p, rho(4, 2)) ? complex{} : electric_polarizability(rho, p, k);
    row.gamma_m = no_probe_response(p, rho(2, 3)) ? complex{} : magnetic_polarizability(rho, p, k);

    bool eps_ok = true;
    bool mu_ok = true;
    try {
        const Permittivity e = permittivity(row.gamma_e, p.density_n);
        row.chi_e = e.chi_e;
        row.eps_r = e.eps_r;
    } catch (const PoleError& err) {
        eps_ok = false;
        row.flag = RowFlag::electric_pole;
        row.diagnostic = err.what();
        row.chi_e = row.eps_r = kComplexNaN;
    }
    try {
        row.mu_r = permeability(row.gamma_m, p.density_n);
    } catch (const PoleError& err) {
        mu_ok = false;
        if (row.flag == RowFlag::none) {
            row.flag = RowFlag::magnetic_pole;
            row.diagnostic = err.what();
        } else {
            row.diagnostic += "; ";
            row.diagnostic += err.what();
        }
        row.mu_r = kComplexNaN;
    }

    if (eps_ok && mu_ok) {
        row.n = refractive_index(row.eps_r, row.mu_r);
        row.absorption_a = absorption_coefficient(row.n);
    } else {
        row.n = kComplexNaN;
        row.absorption_a = kNaN;
    }
    return row;
}

OpticalResponse evaluate_point(const SystemParams& p, const PhysicalConstants& k)
{
    DensityMatrix rho;
    try {
        rho = steady_state(build_generator(p));
    } catch (const DegenerateSteadyState& err) {
        OpticalResponse row;
        row.delta_p = p.delta_p;
        row.gamma_e = row.gamma_m = row.chi_e = row.eps_r = row.mu_r = row.n = kComplexNaN;
        row.absorption_a = kNaN;
        row.flag = RowFlag::degenerate;
        row.diagnostic = err.what();
        return row;
    }
    return response_from_state(rho, p, k);
}

ResponseTable::ResponseTable(std::vector<OpticalResponse> rows) : rows_(std::move(rows))
{
    std::stable_sort(rows_.begin(), rows_.end(),
                     [](const auto& a, const auto& b) { return a.delta_p < b.delta_p; });
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!std::isfinite(rows_[i].delta_p)) {
            throw InputError("table row has a non-finite detuning");
        }
        if (i > 0 && !(rows_[i].delta_p > rows_[i - 1].delta_p)) {
            std::ostringstream msg;
            msg << "duplicate detuning " << rows_[i].delta_p << " in response table";
            throw InputError(msg.str());
        }
    }
    if (rows_.size() >= 2) {
        (void)uniform_step();
    }
}

bool ResponseTable::any_flagged() const
{
    return std::any_of(rows_.begin(), rows_.end(),
                       [](const auto& r) { return r.flag != RowFlag::none; });
}

double ResponseTable::uniform_step() const
{
    if (rows_.size() < 2) {
        throw InputError("a table with fewer than two rows has no step");
    }
    const double h =
        (rows_.back().delta_p - rows_.front().delta_p) / static_cast<double>(rows_.size() - 1);
    // Spacing is compared relative to the grid's magnitude scale, which is
    // what bounds the rounding of from + i * step.
    const double scale = std::max({std::abs(h), std::abs(rows_.front().delta_p),
                                   std::abs(rows_.back().delta_p)});
    for (std::size_t i = 1; i < rows_.size(); ++i) {
        const double spacing = rows_[i].delta_p - rows_[i - 1].delta_p;
        if (std::abs(spacing - h) > 1e-12 * scale) {
            std::ostringstream msg;
            msg << "non-uniform grid: spacing " << spacing << " at row " << i << " vs " << h;
            throw InputError(msg.str());
        }
    }
    return h;
}

std::vector<DensityMatrix> sweep_states(const SystemParams& params, const SweepGrid& grid)
{
    validate(params);
    validate(grid);
    std::vector<DensityMatrix> states(grid.point_count());
    parallel_for(states.size(), [&](std::size_t i) {
        SystemParams p = params;
        p.delta_p = grid.at(i);
        states[i] = steady_state(build_generator(p));
    });
    return states;
}

ResponseTable sweep_detuning(const SystemParams& params, const SweepGrid& grid,
                             const PhysicalConstants& k)
{
    validate(params);
    validate(grid);
    std::vector<OpticalResponse> rows(grid.point_count());
    parallel_for(rows.size(), [&](std::size_t i) {
        SystemParams p = params;
        p.delta_p = grid.at(i);
        rows[i] = evaluate_point(p, k);
    });
    return ResponseTable(std::move(rows));
}

std::vector<double> index_slope(const ResponseTable& table)
{
    if (table.size() < 3) {
        throw InputError("index slope needs at least 3 rows");
    }
    const auto d = derivative(index_values(table), table.uniform_step());
    std::vector<double> out(d.size());
    std::transform(d.begin(), d.end(), out.begin(), [](complex z) { return z.real(); });
    return out;
}

ResponseTable group_index(ResponseTable table, double omega_probe0, double gamma_scale)
{
    if (table.size() < 3) {
        throw InputError("group index needs at least 3 rows");
    }
    const double h = table.uniform_step();
    const auto dn = derivative(index_values(table), h);
    auto& rows = table.mutable_rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double omega = omega_probe0 + rows[i].delta_p * gamma_scale;
        const complex dn_domega = dn[i] / gamma_scale;
        rows[i].group_index = (rows[i].n + omega * dn_domega).real();
    }
    return table;
}

BandPredicate band_predicate_from_string(std::string_view name)
{
    for (BandPredicate p : {BandPredicate::double_negative, BandPredicate::gain,
                            BandPredicate::negative_eps, BandPredicate::negative_mu}) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw InputError("unknown predicate '" + std::string(name) +
                     "'; valid names: double_negative, gain, negative_eps, negative_mu");
}

std::string_view to_string(BandPredicate predicate)
{
    switch (predicate) {
    case BandPredicate::double_negative:
        return "double_negative";
    case BandPredicate::gain:
        return "gain";
    case BandPredicate::negative_eps:
        return "negative_eps";
    case BandPredicate::negative_mu:
        return "negative_mu";
    }
    return "";
}

bool satisfies(const OpticalResponse& row, BandPredicate predicate)
{
    switch (predicate) {
    case BandPredicate::double_negative:
        return row.eps_r.real() < 0.0 && row.mu_r.real() < 0.0;
    case BandPredicate::gain:
        return row.absorption_a < 0.0;
    case BandPredicate::negative_eps:
        return row.eps_r.real() < 0.0;
    case BandPredicate::negative_mu:
        return row.mu_r.real() < 0.0;
    }
    return false;
}

std::vector<Band> find_bands(const ResponseTable& table, BandPredicate predicate)
{
    std::vector<Band> bands;
    const auto& rows = table.rows();
    std::size_t i = 0;
    while (i < rows.size()) {
        if (!satisfies(rows[i], predicate)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < rows.size() && satisfies(rows[j + 1], predicate)) {
            ++j;
        }
        bands.push_back({rows[i].delta_p, rows[j].delta_p});
        i = j + 1;
    }
    return bands;
}

std::string_view to_string(CalibrationStatistic statistic)
{
    return statistic == CalibrationStatistic::floor ? "floor" : "peak";
}

std::pair<double, double> polarization_statistics(std::span<const DensityMatrix> states,
                                                  const SystemParams& p,
                                                  CalibrationStatistic statistic,
                                                  const PhysicalConstants& k)
{
    std::vector<double> e;
    std::vector<double> m;
    e.reserve(states.size());
    m.reserve(states.size());
    for (const auto& rho : states) {
        e.push_back(std::abs(p.density_n * electric_polarizability(rho, p, k)));
        m.push_back(std::abs(p.density_n * magnetic_polarizability(rho, p, k)));
    }
    return {summarize(e, statistic), summarize(m, statistic)};
}

CalibrationResult calibrate_dipoles(const SystemParams& params, const SweepGrid& grid,
                                    const CalibrationTargets& targets,
                                    const PhysicalConstants& k)
{
    check_target(targets.electric, "electric");
    check_target(targets.magnetic, "magnetic");
    validate(params, true);

    const auto states = sweep_states(params, grid);
    CalibrationResult result{params, {}};

    const auto electric = bisect_factor(
        [&](double f) {
            SystemParams trial = params;
            trial.d24 = params.d24 * f;
            return polarization_statistics(states, trial, targets.statistic, k).first;
        },
        targets.electric, "electric");
    result.params.d24 = params.d24 * electric.factor;

    const auto magnetic = bisect_factor(
        [&](double f) {
            SystemParams trial = result.params;
            trial.mu23 = params.mu23 * f;
            return polarization_statistics(states, trial, targets.statistic, k).second;
        },
        targets.magnetic, "magnetic");
    result.params.mu23 = params.mu23 * magnetic.factor;

    result.audit.d24_factor = electric.factor;
    result.audit.mu23_factor = magnetic.factor;
    result.audit.electric_statistic = electric.achieved;
    result.audit.magnetic_statistic = magnetic.achieved;
    result.audit.electric_iterations = electric.iterations;
    result.audit.magnetic_iterations = magnetic.iterations;
    return result;
}

}  // namespace lhm

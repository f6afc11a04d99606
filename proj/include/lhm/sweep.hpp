#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lhm/master_equation.hpp"
#include "lhm/response.hpp"
#include "lhm/system_params.hpp"

namespace lhm {

/// Uniform probe-detuning grid in units of gamma.
struct SweepGrid {
    double from_delta = -5.0;
    double to_delta = 5.0;
    double step = 0.025;

    /// floor((to - from) / step) + 1, robust against rounding of the quotient.
    std::size_t point_count() const;
    double at(std::size_t i) const { return from_delta + static_cast<double>(i) * step; }
};

/// Throws InputError unless from < to, step > 0 and there are >= 3 points.
void validate(const SweepGrid& grid);

/// Why a row carries no optical values.
enum class RowFlag { none, electric_pole, magnetic_pole, degenerate };

std::string_view to_string(RowFlag flag);
std::optional<RowFlag> row_flag_from_string(std::string_view text);

/// Optical response at one probe detuning.
struct OpticalResponse {
    double delta_p = 0.0;
    complex gamma_e{};
    complex gamma_m{};
    complex chi_e{};
    complex eps_r{};
    complex mu_r{};
    complex n{};
    double absorption_a = 0.0;
    std::optional<double> group_index;

    RowFlag flag = RowFlag::none;
    std::string diagnostic;
};

/// Full single-point pipeline: steady state, polarizabilities, local-field
/// correction, index and absorption. Pole and degeneracy failures become a
/// flagged row with NaN in the affected fields.
OpticalResponse evaluate_point(const SystemParams& params, const PhysicalConstants& k = kCodata);

/// Same as evaluate_point starting from an already solved steady state.
OpticalResponse response_from_state(const DensityMatrix& rho, const SystemParams& params,
                                    const PhysicalConstants& k = kCodata);

/// Rows ordered by strictly increasing, uniformly spaced detuning.
class ResponseTable {
public:
    ResponseTable() = default;

    /// Sorts by delta_p and checks the table invariants; throws InputError.
    explicit ResponseTable(std::vector<OpticalResponse> rows);

    const std::vector<OpticalResponse>& rows() const { return rows_; }
    std::vector<OpticalResponse>& mutable_rows() { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }
    const OpticalResponse& operator[](std::size_t i) const { return rows_[i]; }

    bool any_flagged() const;

    /// Grid spacing; throws InputError if the spacing is not uniform to 1e-12 relative.
    double uniform_step() const;

private:
    std::vector<OpticalResponse> rows_;
};

/// Evaluates every grid point (concurrently) and assembles the table in grid order.
ResponseTable sweep_detuning(const SystemParams& params, const SweepGrid& grid,
                             const PhysicalConstants& k = kCodata);

/// Steady states for every grid point, in grid order. Throws on degeneracy.
std::vector<DensityMatrix> sweep_states(const SystemParams& params, const SweepGrid& grid);

/// Fills group_index = Re[n + omega dn/domega] with omega = omega_probe0 +
/// delta_p gamma_scale. Central differences inside, second-order one-sided
/// differences at the two ends.
ResponseTable group_index(ResponseTable table, double omega_probe0, double gamma_scale);

/// Re(dn/d delta_p) on the table grid with the same stencils as group_index.
std::vector<double> index_slope(const ResponseTable& table);

/// Closed detuning interval [lo, hi] on the grid.
struct Band {
    double lo;
    double hi;
    bool operator==(const Band&) const = default;
};

enum class BandPredicate { double_negative, gain, negative_eps, negative_mu };

/// Parses a predicate name; throws InputError listing the valid names.
BandPredicate band_predicate_from_string(std::string_view name);
std::string_view to_string(BandPredicate predicate);

bool satisfies(const OpticalResponse& row, BandPredicate predicate);

/// Maximal runs of consecutive rows that satisfy `predicate`.
std::vector<Band> find_bands(const ResponseTable& table, BandPredicate predicate);

/// How calibration summarizes |N gamma| over the sweep.
enum class CalibrationStatistic {
    floor,  // smallest |N gamma| on the grid
    peak,   // largest |N gamma| on the grid
};

std::string_view to_string(CalibrationStatistic statistic);

struct TargetRange {
    double lo;
    double hi;
};

struct CalibrationTargets {
    TargetRange electric{4.0, 8.0};
    TargetRange magnetic{4.0, 8.0};
    CalibrationStatistic statistic = CalibrationStatistic::floor;
};

struct CalibrationAudit {
    double d24_factor = 1.0;
    double mu23_factor = 1.0;
    double electric_statistic = 0.0;  // achieved |N gamma_e| summary
    double magnetic_statistic = 0.0;  // achieved |N gamma_m| summary
    int electric_iterations = 0;
    int magnetic_iterations = 0;
};

struct CalibrationResult {
    SystemParams params;
    CalibrationAudit audit;
};

/// Summary of |N gamma_e| and |N gamma_m| over the given steady states.
std::pair<double, double> polarization_statistics(std::span<const DensityMatrix> states,
                                                  const SystemParams& params,
                                                  CalibrationStatistic statistic,
                                                  const PhysicalConstants& k = kCodata);

/// Rescales d24, then mu23, by bisection on a multiplicative factor in
/// [1e-3, 1e3] until the statistics of |N gamma_e| and |N gamma_m| fall inside
/// their targets. Throws InputError for empty or unordered targets and
/// Error when a target is unreachable within the factor bounds.
CalibrationResult calibrate_dipoles(const SystemParams& params, const SweepGrid& grid,
                                    const CalibrationTargets& targets = {},
                                    const PhysicalConstants& k = kCodata);

}  // namespace lhm

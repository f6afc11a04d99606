#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lhm/sweep.hpp"

namespace lhm {

/// Plottable table columns, named as in the CSV header.
inline constexpr std::string_view kPlotColumns[] = {
    "re_eps", "im_eps", "re_mu", "im_mu", "re_n", "im_n", "absorption_a", "group_index",
};

/// Value of a named column for one row (NaN when absent).
double column_value(const OpticalResponse& row, std::string_view column);

/// Self-contained SVG line chart over probe detuning: one polyline per
/// column, labeled ticks at integer detunings, a rendered zero line and a
/// legend. Non-finite samples are left out of the polylines. Throws
/// InputError for unknown or missing column names.
std::string emit_svg(const ResponseTable& table, const std::vector<std::string>& columns);

}  // namespace lhm

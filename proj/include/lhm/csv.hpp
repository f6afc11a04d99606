#pragma once

#include <string>
#include <string_view>

#include "lhm/sweep.hpp"

namespace lhm {

inline constexpr std::string_view kCsvHeader =
    "delta_p,re_eps,im_eps,re_mu,im_mu,re_n,im_n,absorption_a,group_index";

/// One line per row, 17 significant digits, `nan` for values a flagged row
/// does not have. A trailing `flag` column appears when any row is flagged.
std::string emit_csv(const ResponseTable& table);

/// Inverse of emit_csv for the emitted columns. Polarizabilities are not
/// part of the format and come back as NaN; chi_e is rebuilt as eps_r - 1.
ResponseTable parse_csv(std::string_view text);

}  // namespace lhm

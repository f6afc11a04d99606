#include "lhm/csv.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

#include "lhm/config.hpp"
#include "lhm/errors.hpp"

namespace lhm {
namespace {

void append_number(std::string& out, double v)
{
    if (std::isnan(v)) {
        out += "nan";
        return;
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.append(buf, res.ptr);
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto p = line.find(sep, start);
        parts.push_back(line.substr(start, p == std::string_view::npos ? std::string_view::npos
                                                                        : p - start));
        if (p == std::string_view::npos) {
            break;
        }
        start = p + 1;
    }
    return parts;
}

double parse_cell(std::string_view cell, std::size_t line_no)
{
    if (cell == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double v = 0.0;
    if (!parse_double(cell, v)) {
        throw InputError("csv line " + std::to_string(line_no) + ": '" + std::string(cell) +
                         "' is not a number");
    }
    return v;
}

}  // namespace

std::string emit_csv(const ResponseTable& table)
{
    const bool with_flag = table.any_flagged();
    std::string out(kCsvHeader);
    if (with_flag) {
        out += ",flag";
    }
    out += '\n';
    for (const auto& r : table.rows()) {
        const double values[] = {r.delta_p,  r.eps_r.real(), r.eps_r.imag(),
                                 r.mu_r.real(), r.mu_r.imag(), r.n.real(),
                                 r.n.imag(),  r.absorption_a,
                                 r.group_index.value_or(std::numeric_limits<double>::quiet_NaN())};
        bool first = true;
        for (double v : values) {
            if (!first) {
                out += ',';
            }
            first = false;
            append_number(out, v);
        }
        if (with_flag) {
            out += ',';
            out += to_string(r.flag);
        }
        out += '\n';
    }
    return out;
}

ResponseTable parse_csv(std::string_view text)
{
    std::vector<std::string_view> lines = split(text, '\n');
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    for (auto& l : lines) {
        if (!l.empty() && l.back() == '\r') {
            l.remove_suffix(1);
        }
    }
    if (lines.empty()) {
        throw InputError("csv is empty");
    }
    bool with_flag = false;
    if (lines.front() == std::string(kCsvHeader) + ",flag") {
        with_flag = true;
    } else if (lines.front() != kCsvHeader) {
        throw InputError("csv header must be '" + std::string(kCsvHeader) + "'");
    }
    const std::size_t columns = with_flag ? 10 : 9;

    std::vector<OpticalResponse> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i], ',');
        if (cells.size() != columns) {
            throw InputError("csv line " + std::to_string(i + 1) + ": expected " +
                             std::to_string(columns) + " fields, found " +
                             std::to_string(cells.size()));
        }
        double v[9];
        for (std::size_t c = 0; c < 9; ++c) {
            v[c] = parse_cell(cells[c], i + 1);
        }
        OpticalResponse r;
        r.delta_p = v[0];
        r.eps_r = {v[1], v[2]};
        r.mu_r = {v[3], v[4]};
        r.n = {v[5], v[6]};
        r.absorption_a = v[7];
        if (!std::isnan(v[8])) {
            r.group_index = v[8];
        }
        r.chi_e = r.eps_r - 1.0;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        r.gamma_e = r.gamma_m = {nan, nan};
        if (with_flag) {
            const auto flag = row_flag_from_string(cells[9]);
            if (!flag) {
                throw InputError("csv line " + std::to_string(i + 1) + ": unknown flag '" +
                                 std::string(cells[9]) + "'");
            }
            r.flag = *flag;
        }
        rows.push_back(r);
    }
    return ResponseTable(std::move(rows));
}

}  // namespace lhm

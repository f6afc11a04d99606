#include "lhm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lhm/config.hpp"
#include "lhm/errors.hpp"

namespace lhm {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

// Round-ish tick spacing covering `span` with about `target` intervals.
double nice_step(double span, int target)
{
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            return m * mag;
        }
    }
    return 10.0 * mag;
}

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

}  // namespace

double column_value(const OpticalResponse& r, std::string_view column)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (column == "re_eps") return r.eps_r.real();
    if (column == "im_eps") return r.eps_r.imag();
    if (column == "re_mu") return r.mu_r.real();
    if (column == "im_mu") return r.mu_r.imag();
    if (column == "re_n") return r.n.real();
    if (column == "im_n") return r.n.imag();
    if (column == "absorption_a") return r.absorption_a;
    if (column == "group_index") return r.group_index.value_or(nan);
    throw InputError("unknown column '" + std::string(column) +
                     "'; valid: re_eps, im_eps, re_mu, im_mu, re_n, im_n, absorption_a, "
                     "group_index");
}

std::string emit_svg(const ResponseTable& table, const std::vector<std::string>& columns)
{
    if (columns.empty()) {
        throw InputError("no columns requested for the chart");
    }
    if (table.size() < 2) {
        throw InputError("a chart needs at least two rows");
    }
    for (const auto& c : columns) {
        (void)column_value(table[0], c);
    }

    const double x0 = table.rows().front().delta_p;
    const double x1 = table.rows().back().delta_p;
    double y0 = 0.0;
    double y1 = 0.0;
    for (const auto& c : columns) {
        for (const auto& r : table.rows()) {
            const double v = column_value(r, c);
            if (std::isfinite(v)) {
                y0 = std::min(y0, v);
                y1 = std::max(y1, v);
            }
        }
    }
    if (y1 - y0 <= 0.0) {
        y0 -= 1.0;
        y1 += 1.0;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * plot_w; };
    auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * plot_h; };

    std::ostringstream svg;
    svg.precision(10);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<rect class=\"frame\" x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

    svg << "<g class=\"x-ticks\" font-size=\"12\" text-anchor=\"middle\">\n";
    for (double t = std::ceil(x0); t <= std::floor(x1); t += 1.0) {
        const double x = px(t);
        svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << fmt(x)
            << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>";
        svg << "<text x=\"" << fmt(x) << "\" y=\"" << kTop + plot_h + 20 << "\">"
            << fmt(t) << "</text>\n";
    }
    svg << "</g>\n";

    const double ystep = nice_step(y1 - y0, 6);
    svg << "<g class=\"y-ticks\" font-size=\"12\" text-anchor=\"end\">\n";
    for (double t = std::ceil(y0 / ystep) * ystep; t <= y1; t += ystep) {
        const double y = py(t);
        const double label = std::abs(t) < 1e-9 * ystep ? 0.0 : t;
        svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(y) << "\" x2=\"" << kLeft
            << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(y + 4) << "\">" << fmt(label)
            << "</text>\n";
    }
    svg << "</g>\n";

    svg << "<line class=\"zero-line\" x1=\"" << kLeft << "\" y1=\"" << py(0.0) << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << py(0.0)
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";

    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
        << "\" font-size=\"14\" text-anchor=\"middle\">probe detuning / gamma</text>\n";

    for (std::size_t c = 0; c < columns.size(); ++c) {
        const char* color = kColors[c % std::size(kColors)];
        svg << "<polyline data-column=\"" << columns[c] << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& r : table.rows()) {
            const double v = column_value(r, columns[c]);
            if (!std::isfinite(v)) {
                continue;
            }
            svg << (first ? "" : " ") << px(r.delta_p) << ',' << py(v);
            first = false;
        }
        svg << "\"/>\n";
    }

    svg << "<g class=\"legend\" font-size=\"13\">\n";
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const double y = kTop + 15 + 20.0 * static_cast<double>(c);
        const double x = kLeft + plot_w + 15;
        svg << "<g class=\"legend-entry\"><line x1=\"" << x << "\" y1=\"" << y << "\" x2=\""
            << x + 25 << "\" y2=\"" << y << "\" stroke=\"" << kColors[c % std::size(kColors)]
            << "\" stroke-width=\"2\"/><text x=\"" << x + 32 << "\" y=\"" << y + 4 << "\">"
            << columns[c] << "</text></g>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace lhm

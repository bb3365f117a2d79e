#include "swe1d/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "swe1d/csv.hpp"
#include "swe1d/errors.hpp"

namespace swe1d {

std::vector<ProfileSeries> parse_run_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) throw config_error("run CSV: empty file");
    const auto header = split_csv_line(line);
    const bool with_exact = header.size() == 6;
    if (!(header.size() == 4 || with_exact) || header[0] != "t" || header[1] != "x")
        throw config_error("run CSV: expected header t,x,A,Q[,A_exact,Q_exact]");

    std::vector<ProfileSeries> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != header.size())
            throw config_error("run CSV: wrong field count on line " + std::to_string(lineno));
        double v[6] = {0, 0, 0, 0, 0, 0};
        for (std::size_t k = 0; k < f.size(); ++k) {
            try {
                v[k] = std::stod(f[k]);
            } catch (const std::exception&) {
                throw config_error("run CSV: bad number on line " + std::to_string(lineno));
            }
        }
        if (out.empty() || v[0] != out.back().t) {
            out.emplace_back();
            out.back().t = v[0];
            out.back().has_exact = with_exact;
        }
        ProfileSeries& s = out.back();
        s.x.push_back(v[1]);
        s.A.push_back(v[2]);
        s.Q.push_back(v[3]);
        if (with_exact) {
            s.A_exact.push_back(v[4]);
            s.Q_exact.push_back(v[5]);
        }
    }
    if (out.empty()) throw config_error("run CSV: no data rows");
    return out;
}

namespace {

struct Extent {
    double lo, hi;
};

Extent value_extent(const std::vector<const std::vector<double>*>& arrays) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto* a : arrays) {
        for (double v : *a) {
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (first) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-300) {  // flat series: open a symmetric band
        const double pad = (std::fabs(hi) > 0.0) ? 0.1 * std::fabs(hi) : 1.0;
        lo -= pad;
        hi += pad;
    }
    return {lo, hi};
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// One panel: frame, 5 ticks per axis, data polyline, optional exact polyline.
void append_panel(std::string& svg, double ox, double oy, double w, double h,
                  const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>* y_exact, const std::string& y_label) {
    const Extent ex = value_extent({&x});
    std::vector<const std::vector<double>*> ys = {&y};
    if (y_exact) ys.push_back(y_exact);
    const Extent ey = value_extent(ys);

    auto map_x = [&](double v) { return ox + (v - ex.lo) / (ex.hi - ex.lo) * w; };
    auto map_y = [&](double v) { return oy + h - (v - ey.lo) / (ey.hi - ey.lo) * h; };

    svg += "<rect x='" + px(ox) + "' y='" + px(oy) + "' width='" + px(w) + "' height='" + px(h) +
           "' fill='none' stroke='#333' stroke-width='1'/>\n";

    for (int k = 0; k <= 4; ++k) {
        const double fx = ex.lo + k * (ex.hi - ex.lo) / 4.0;
        const double fy = ey.lo + k * (ey.hi - ey.lo) / 4.0;
        const double gx = map_x(fx);
        const double gy = map_y(fy);
        svg += "<line x1='" + px(gx) + "' y1='" + px(oy + h) + "' x2='" + px(gx) + "' y2='" +
               px(oy + h + 5) + "' stroke='#333'/>\n";
        svg += "<text x='" + px(gx) + "' y='" + px(oy + h + 18) +
               "' font-size='11' text-anchor='middle'>" + tick_label(fx) + "</text>\n";
        svg += "<line x1='" + px(ox - 5) + "' y1='" + px(gy) + "' x2='" + px(ox) + "' y2='" +
               px(gy) + "' stroke='#333'/>\n";
        svg += "<text x='" + px(ox - 8) + "' y='" + px(gy + 4) +
               "' font-size='11' text-anchor='end'>" + tick_label(fy) + "</text>\n";
    }

    svg += "<text x='" + px(ox + w / 2) + "' y='" + px(oy + h + 34) +
           "' font-size='12' text-anchor='middle'>x (m)</text>\n";
    svg += "<text x='" + px(ox - 52) + "' y='" + px(oy + h / 2) +
           "' font-size='12' text-anchor='middle' transform='rotate(-90 " + px(ox - 52) + " " +
           px(oy + h / 2) + ")'>" + y_label + "</text>\n";

    auto polyline = [&](const std::vector<double>& ydata, const char* style) {
        svg += "<polyline fill='none' ";
        svg += style;
        svg += " points='";
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) svg += " ";
            svg += px(map_x(x[i])) + "," + px(map_y(ydata[i]));
        }
        svg += "'/>\n";
    };
    if (y_exact)
        polyline(*y_exact, "stroke='#d95f02' stroke-width='1.5' stroke-dasharray='6 3'");
    polyline(y, "stroke='#1b6ca8' stroke-width='1.5'");
}

}  // namespace

std::string profile_svg(const ProfileSeries& s) {
    if (s.x.empty()) throw config_error("profile plot: empty series");
    const double W = 960, H = 680;
    std::string svg = "<svg xmlns='http://www.w3.org/2000/svg' width='960' height='680' "
                      "viewBox='0 0 960 680'>\n";
    svg += "<rect x='0' y='0' width='960' height='680' fill='white'/>\n";
    svg += "<text x='480' y='26' font-size='15' text-anchor='middle'>t = " + format_g17(s.t) +
           " s</text>\n";
    if (s.has_exact) {
        svg += "<line x1='620' y1='40' x2='660' y2='40' stroke='#1b6ca8' stroke-width='1.5'/>"
               "<text x='666' y='44' font-size='11'>numeric</text>\n";
        svg += "<line x1='740' y1='40' x2='780' y2='40' stroke='#d95f02' stroke-width='1.5' "
               "stroke-dasharray='6 3'/><text x='786' y='44' font-size='11'>exact</text>\n";
    }

    const double margin_l = 90, margin_r = 30;
    const double panel_w = W - margin_l - margin_r;
    append_panel(svg, margin_l, 60, panel_w, 250, s.x, s.A, s.has_exact ? &s.A_exact : nullptr,
                 "A (m^2)");
    append_panel(svg, margin_l, 390, panel_w, 250, s.x, s.Q, s.has_exact ? &s.Q_exact : nullptr,
                 "Q (m^3/s)");
    svg += "</svg>\n";
    return svg;
}

}  // namespace swe1d

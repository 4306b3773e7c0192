#include "eit4/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <tuple>

namespace eit4 {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fixed(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else if (c == '&')
            out += "&amp;";
        else
            out += c;
    }
    return out;
}

// Rounded tick spacing giving roughly `target` intervals.
double nice_step(double span, int target)
{
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    const double nice = frac < 1.5 ? 1.0 : frac < 3.0 ? 2.0 : frac < 7.0 ? 5.0 : 10.0;
    return nice * mag;
}

std::pair<double, double> padded_range(double lo, double hi)
{
    if (!(lo < hi)) {
        const double pad = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
        return {lo - pad, hi + pad};
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

} // namespace

void write_svg_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<Series>& series)
{
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                continue;
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = y_lo = 0.0;
        x_hi = y_hi = 1.0;
    }
    if (!(x_lo < x_hi))
        std::tie(x_lo, x_hi) = padded_range(x_lo, x_hi);
    std::tie(y_lo, y_hi) = padded_range(y_lo, y_hi);

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto sy = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * ph; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(title) << "</text>\n";

    // ticks and grid
    const double xs = nice_step(x_hi - x_lo, 6);
    for (double t = std::ceil(x_lo / xs) * xs; t <= x_hi + 1e-9 * xs; t += xs) {
        const double v = std::abs(t) < 1e-9 * xs ? 0.0 : t;
        out << "<line x1=\"" << fixed(sx(v)) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(sx(v)) << "\" y2=\""
            << fixed(kTop + ph) << "\" stroke=\"#e0e0e0\"/>\n";
        out << "<text x=\"" << fixed(sx(v)) << "\" y=\"" << fixed(kTop + ph + 16)
            << "\" text-anchor=\"middle\">" << tick_label(v) << "</text>\n";
    }
    const double ys = nice_step(y_hi - y_lo, 5);
    for (double t = std::ceil(y_lo / ys) * ys; t <= y_hi + 1e-9 * ys; t += ys) {
        const double v = std::abs(t) < 1e-9 * ys ? 0.0 : t;
        out << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(sy(v)) << "\" x2=\"" << fixed(kLeft + pw)
            << "\" y2=\"" << fixed(sy(v)) << "\" stroke=\"#e0e0e0\"/>\n";
        out << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(sy(v) + 4) << "\" text-anchor=\"end\">"
            << tick_label(v) << "</text>\n";
    }
    out << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(pw) << "\" height=\""
        << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"" << fixed(kHeight - 18) << "\" text-anchor=\"middle\">"
        << escape(x_label) << "</text>\n";
    out << "<text transform=\"translate(18 " << fixed(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(y_label) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* colour = kColours[k % std::size(kColours)];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
        if (s.dashed)
            out << " stroke-dasharray=\"6 4\"";
        out << " points=\"";
        bool first = true;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                continue;
            out << (first ? "" : " ") << fixed(sx(s.x[i])) << ',' << fixed(sy(s.y[i]));
            first = false;
        }
        out << "\"/>\n";

        const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
        const double lx = kLeft + pw + 12;
        out << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 28) << "\" y2=\""
            << fixed(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
        if (s.dashed)
            out << " stroke-dasharray=\"6 4\"";
        out << "/>\n";
        out << "<text x=\"" << fixed(lx + 34) << "\" y=\"" << fixed(ly + 4) << "\">" << escape(s.label)
            << "</text>\n";
    }
    out << "</svg>\n";
}

void write_spectrum_svg(std::ostream& out, const ScenarioConfig& sc, const std::vector<SusceptibilityPoint>& points)
{
    const bool anisotropy = sc.plot == PlotQuantity::delta_chi;
    Series im{anisotropy ? "Im delta chi" : "Im chi(psi)", {}, {}, false};
    Series re{anisotropy ? "Re delta chi" : "Re chi(psi)", {}, {}, true};
    for (const auto& p : points) {
        const complex v = anisotropy ? p.delta_chi : p.chi_psi;
        im.x.push_back(p.delta);
        im.y.push_back(v.imag());
        re.x.push_back(p.delta);
        re.y.push_back(v.real());
    }
    char title[160];
    std::snprintf(title, sizeof title, "%s  Omega_c=%g  Omega_r=%g  psi=%.4g", sc.preset.empty() ? "spectrum" : sc.preset.c_str(),
                  sc.omega_c, sc.omega_r, sc.psi);
    write_svg_chart(out, title, "Delta / Gamma", anisotropy ? "delta chi / lambda" : "chi / lambda", {im, re});
}

} // namespace eit4

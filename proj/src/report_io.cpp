#include "eit4/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace eit4 {

std::string format_real(real value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

namespace {

const char* plot_name(PlotQuantity q) { return q == PlotQuantity::delta_chi ? "delta_chi" : "chi_psi"; }

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char esc[8];
                std::snprintf(esc, sizeof esc, "\\u%04x", static_cast<unsigned>(c));
                out += esc;
            } else {
                out += c;
            }
        }
    }
    return out + "\"";
}

// JSON has no literal for inf/nan
std::string num(real v) { return std::isfinite(v) ? format_real(v) : "null"; }

std::string complex_pair(complex z) { return "[" + num(z.real()) + ", " + num(z.imag()) + "]"; }

// Minimal streaming writer: tracks whether a separator is needed at each depth.
class JsonWriter
{
public:
    explicit JsonWriter(std::ostream& out) : out_(out) {}

    void begin_object(const std::string& key = {}) { open(key, '{'); }
    void end_object() { close('}'); }
    void begin_array(const std::string& key = {}) { open(key, '['); }
    void end_array() { close(']'); }

    void raw(const std::string& key, const std::string& literal)
    {
        prefix(key);
        out_ << literal;
    }
    void value(const std::string& key, real v) { raw(key, num(v)); }
    void value(const std::string& key, complex z) { raw(key, complex_pair(z)); }
    void value(const std::string& key, const std::string& s) { raw(key, quoted(s)); }
    void value(const std::string& key, const char* s) { raw(key, quoted(s)); }
    void value(const std::string& key, bool b) { raw(key, b ? "true" : "false"); }
    void value(const std::string& key, int v) { raw(key, std::to_string(v)); }
    void value(const std::string& key, std::size_t v) { raw(key, std::to_string(v)); }
    void null(const std::string& key) { raw(key, "null"); }

    void finish() { out_ << '\n'; }

private:
    void prefix(const std::string& key)
    {
        if (!first_.empty()) {
            if (!first_.back())
                out_ << ',';
            first_.back() = false;
            out_ << '\n' << std::string(2 * first_.size(), ' ');
        }
        if (!key.empty())
            out_ << quoted(key) << ": ";
    }
    void open(const std::string& key, char bracket)
    {
        prefix(key);
        out_ << bracket;
        first_.push_back(true);
    }
    void close(char bracket)
    {
        const bool empty = first_.back();
        first_.pop_back();
        if (!empty)
            out_ << '\n' << std::string(2 * first_.size(), ' ');
        out_ << bracket;
    }

    std::ostream& out_;
    std::vector<bool> first_;
};

void write_config(JsonWriter& w, const ScenarioConfig& sc)
{
    const auto [lo, hi] = sc.delta_range();
    w.begin_object("config");
    w.value("preset", sc.preset);
    w.value("omega_c", sc.omega_c);
    w.value("omega_r", sc.omega_r);
    w.value("psi", sc.psi);
    w.value("gamma_ratio", sc.gamma_ratio);
    w.value("delta_min", lo);
    w.value("delta_max", hi);
    w.value("delta_points", sc.delta_points);
    w.value("plot", plot_name(sc.plot));
    w.end_object();
}

void write_matrix(JsonWriter& w, const std::string& key, const Matrix5& m)
{
    w.begin_array(key);
    for (int r = 0; r < kLevels; ++r) {
        std::string row = "[";
        for (int c = 0; c < kLevels; ++c)
            row += (c ? ", " : "") + complex_pair(m(r, c));
        w.raw({}, row + "]");
    }
    w.end_array();
}

} // namespace

void write_spectrum_csv(std::ostream& out, const std::vector<SusceptibilityPoint>& points)
{
    out << "delta,re_chi_x,im_chi_x,re_chi_y,im_chi_y,re_chi_psi,im_chi_psi,re_delta_chi,im_delta_chi,f_abs,n_eff\n";
    for (const auto& p : points) {
        out << format_real(p.delta) << ',' << format_real(p.chi_x.real()) << ',' << format_real(p.chi_x.imag()) << ','
            << format_real(p.chi_y.real()) << ',' << format_real(p.chi_y.imag()) << ','
            << format_real(p.chi_psi.real()) << ',' << format_real(p.chi_psi.imag()) << ','
            << format_real(p.delta_chi.real()) << ',' << format_real(p.delta_chi.imag()) << ','
            << format_real(p.f_abs) << ',' << format_real(p.n_eff) << '\n';
    }
}

void write_spectrum_json(std::ostream& out, const ScenarioConfig& sc, const std::vector<SusceptibilityPoint>& points)
{
    JsonWriter w(out);
    w.begin_object();
    write_config(w, sc);
    w.begin_array("points");
    for (const auto& p : points) {
        w.begin_object();
        w.value("delta", p.delta);
        w.value("chi_x", p.chi_x);
        w.value("chi_y", p.chi_y);
        w.value("chi_psi", p.chi_psi);
        w.value("delta_chi", p.delta_chi);
        w.value("f_abs", p.f_abs);
        w.value("n_eff", p.n_eff);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    w.finish();
}

void write_darkstates_json(std::ostream& out, const ScenarioConfig& sc, const DarkStateScan& scan)
{
    JsonWriter w(out);
    w.begin_object();
    write_config(w, sc);
    w.value("probe_amp", sc.probe_amp);
    w.begin_array("points");
    for (std::size_t i = 0; i < scan.deltas.size(); ++i) {
        const DarkStateReport& rep = scan.reports[i];
        w.begin_object();
        w.value("delta", scan.deltas[i]);
        w.value("raman", rep.count(DarkKind::raman));
        w.value("non_raman", rep.count(DarkKind::non_raman));
        w.begin_array("states");
        for (const auto& s : rep.records) {
            if (s.kind == DarkKind::bright)
                continue;
            w.begin_object();
            w.value("kind", to_string(s.kind));
            w.value("eigenvalue", s.eigenvalue);
            w.value("excited_overlap", s.excited_overlap);
            w.begin_array("vector");
            for (int k = 0; k < kLevels; ++k)
                w.raw({}, complex_pair(s.eigenvector(k)));
            w.end_array();
            w.end_object();
        }
        w.end_array();
        w.begin_array("warnings");
        for (const auto& msg : rep.warnings)
            w.value({}, msg);
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    w.finish();
}

void write_angle_scan_csv(std::ostream& out, const AngleScan& scan)
{
    out << "psi,im_chi_psi\n";
    for (std::size_t i = 0; i < scan.psi.size(); ++i)
        out << format_real(scan.psi[i]) << ',' << format_real(scan.im_chi[i]) << '\n';
}

void write_angle_scan_json(std::ostream& out, const ScenarioConfig& sc, const AngleScan& scan)
{
    JsonWriter w(out);
    w.begin_object();
    write_config(w, sc);
    w.value("chi_x", scan.components.chi_x);
    w.value("chi_y", scan.components.chi_y);
    w.value("analytic_sin2", scan.analytic_sin2);
    if (scan.analytic_root)
        w.value("analytic_root", *scan.analytic_root);
    else
        w.null("analytic_root");
    if (scan.numeric_root)
        w.value("numeric_root", *scan.numeric_root);
    else
        w.null("numeric_root");
    if (scan.relative_difference)
        w.value("relative_difference", *scan.relative_difference);
    else
        w.null("relative_difference");
    w.value("message", scan.message);
    w.begin_array("points");
    for (std::size_t i = 0; i < scan.psi.size(); ++i) {
        w.begin_object();
        w.value("psi", scan.psi[i]);
        w.value("im_chi_psi", scan.im_chi[i]);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    w.finish();
}

void write_steady_json(std::ostream& out, const ScenarioConfig& sc, const SteadyComparison& steady)
{
    JsonWriter w(out);
    w.begin_object();
    write_config(w, sc);
    w.value("max_difference", steady.max_difference);
    w.value("min_eigenvalue", steady.min_eigenvalue);
    w.value("warning", steady.warning);
    write_matrix(w, "numeric", steady.numeric);
    write_matrix(w, "analytic", steady.analytic);
    w.end_object();
    w.finish();
}

} // namespace eit4

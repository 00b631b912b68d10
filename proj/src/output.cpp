#include "pairgen/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "pairgen/errors.hpp"

namespace pairgen::output {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"};

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fixed(double v, int digits = 2) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

void write_header(std::ostream& os, const Metadata& meta) {
    for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
}

// 1, 2 or 5 times a power of ten, giving about `target` intervals.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) return m * mag;
    }
    return 10.0 * mag;
}

std::string tick_label(double v) {
    if (std::abs(v) < 1e-12) return "0";
    std::string s = format_number(v);
    return s.size() > 8 ? fixed(v, 3) : s;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void write_spectrum_csv(const std::filesystem::path& path, const SpectrumRecord& record, const Metadata& meta) {
    record.validate();
    std::ostringstream os;
    write_header(os, meta);
    os << "p_par,f,basis,t\n";
    const std::string basis = basis_name(record.basis);
    const std::string t = format_number(record.t);
    for (std::size_t i = 0; i < record.p_grid.size(); ++i) {
        os << format_number(record.p_grid[i]) << ',' << format_number(record.f_values[i]) << ',' << basis << ','
           << t << '\n';
    }
    write_text(path, os.str());
}

void write_series_csv(const std::filesystem::path& path, const std::vector<DistributionSample>& series,
                      const Metadata& meta) {
    std::ostringstream os;
    write_header(os, meta);
    os << "t,f,basis\n";
    for (const DistributionSample& s : series) {
        os << format_number(s.t) << ',' << format_number(s.f) << ',' << basis_name(s.basis) << '\n';
    }
    write_text(path, os.str());
}

void write_svg(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<Line>& lines) {
    constexpr double W = 760, H = 480, L = 80, R = 170, T = 40, B = 60;
    const double pw = W - L - R, ph = H - T - B;
    auto usable = [&](double y) { return std::isfinite(y) && (!spec.log_y || y > 0.0); };

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const Line& l : lines) {
        for (std::size_t i = 0; i < std::min(l.x.size(), l.y.size()); ++i) {
            if (!std::isfinite(l.x[i]) || !usable(l.y[i])) continue;
            const double y = spec.log_y ? std::log10(l.y[i]) : l.y[i];
            x0 = std::min(x0, l.x[i]);
            x1 = std::max(x1, l.x[i]);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (!(x1 >= x0)) x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (spec.log_y) {
        // Keep the plot readable when a spectrum spans tens of decades.
        y0 = std::max(y0, y1 - 30.0);
        y0 = std::floor(y0);
        y1 = std::ceil(y1);
    }
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return T + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
       << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << L + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
       << escape_xml(spec.title) << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xs = nice_step(x1 - x0, 8);
    for (double x = std::ceil(x0 / xs) * xs; x <= x1 + 1e-9 * xs; x += xs) {
        os << "<line x1=\"" << fixed(sx(x)) << "\" y1=\"" << T + ph << "\" x2=\"" << fixed(sx(x)) << "\" y2=\""
           << T + ph + 5 << "\" stroke=\"black\"/>";
        os << "<text x=\"" << fixed(sx(x)) << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">"
           << tick_label(x) << "</text>\n";
    }
    const double ys = spec.log_y ? std::max(1.0, std::ceil((y1 - y0) / 10.0)) : nice_step(y1 - y0, 6);
    for (double y = std::ceil(y0 / ys) * ys; y <= y1 + 1e-9 * ys; y += ys) {
        const std::string label = spec.log_y ? "1e" + std::to_string(static_cast<int>(std::lround(y))) : tick_label(y);
        os << "<line x1=\"" << L - 5 << "\" y1=\"" << fixed(sy(y)) << "\" x2=\"" << L + pw << "\" y2=\""
           << fixed(sy(y)) << "\" stroke=\"#dddddd\"/>";
        os << "<text x=\"" << L - 8 << "\" y=\"" << fixed(sy(y) + 4) << "\" text-anchor=\"end\">" << label
           << "</text>\n";
    }
    os << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\">"
       << escape_xml(spec.x_label) << "</text>\n";
    os << "<text transform=\"translate(20," << T + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape_xml(spec.y_label) << "</text>\n";

    for (std::size_t k = 0; k < lines.size(); ++k) {
        const Line& l = lines[k];
        const char* color = kPalette[k % std::size(kPalette)];
        std::string pts;
        auto flush = [&] {
            if (!pts.empty()) {
                os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.3\" points=\"" << pts
                   << "\"/>\n";
            }
            pts.clear();
        };
        for (std::size_t i = 0; i < std::min(l.x.size(), l.y.size()); ++i) {
            if (!std::isfinite(l.x[i]) || !usable(l.y[i])) {
                flush();
                continue;
            }
            const double y = std::max(spec.log_y ? std::log10(l.y[i]) : l.y[i], y0);
            pts += fixed(sx(l.x[i])) + "," + fixed(sy(y)) + " ";
        }
        flush();
        const double ly = T + 14 + 18 * static_cast<double>(k);
        os << "<line x1=\"" << L + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 36 << "\" y2=\"" << ly
           << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
        os << "<text x=\"" << L + pw + 42 << "\" y=\"" << ly + 4 << "\">" << escape_xml(l.label) << "</text>\n";
    }
    os << "</svg>\n";
    write_text(path, os.str());
}

}  // namespace pairgen::output

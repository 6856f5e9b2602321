#include "supercon/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "supercon/errors.hpp"

namespace supercon {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

void CsvTable::add_row(std::span<const double> values) {
    if (values.size() != columns_) throw DomainError("CsvTable: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_double(values[i]);
    }
    body_ += '\n';
}

void CsvTable::add_row(long long label, std::span<const double> values) {
    if (values.size() + 1 != columns_) throw DomainError("CsvTable: column count mismatch");
    body_ += std::to_string(label);
    for (double v : values) {
        body_ += ',';
        body_ += format_double(v);
    }
    body_ += '\n';
}

std::string CsvTable::str() const { return body_; }

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string loglog_svg(std::string_view title, std::string_view x_label, std::string_view y_label,
                       std::span<const PlotSeries> series) {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
            xmin = std::min(xmin, std::log10(s.x[i]));
            xmax = std::max(xmax, std::log10(s.x[i]));
            ymin = std::min(ymin, std::log10(s.y[i]));
            ymax = std::max(ymax, std::log10(s.y[i]));
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = ymin = 0.0;
        xmax = ymax = 1.0;
    }
    // whole decades on both axes
    xmin = std::floor(xmin);
    xmax = std::max(std::ceil(xmax), xmin + 1.0);
    ymin = std::floor(ymin);
    ymax = std::max(std::ceil(ymax), ymin + 1.0);

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double lx) { return kLeft + (lx - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double ly) { return kTop + (ymax - ly) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(title) << "</text>\n";
    os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\""
       << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double d = xmin; d <= xmax + 1e-9; d += 1.0) {
        os << "<line x1=\"" << num(px(d)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(px(d)) << "\" y2=\""
           << num(kTop + ph) << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << num(px(d)) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">1e"
           << static_cast<int>(d) << "</text>\n";
    }
    for (double d = ymin; d <= ymax + 1e-9; d += 1.0) {
        os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(d)) << "\" x2=\"" << num(kLeft + pw) << "\" y2=\""
           << num(py(d)) << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(d) + 4) << "\" text-anchor=\"end\">1e"
           << static_cast<int>(d) << "</text>\n";
    }
    os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 16) << "\" text-anchor=\"middle\">"
       << escape(x_label) << "</text>\n";
    os << "<text x=\"20\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
       << num(kTop + ph / 2) << ")\">" << escape(y_label) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kColors[k % std::size(kColors)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
            if (!first) os << ' ';
            os << num(px(std::log10(s.x[i]))) << ',' << num(py(std::log10(s.y[i])));
            first = false;
        }
        os << "\"/>\n";
        const double ly = kTop + 16.0 + 18.0 * static_cast<double>(k);
        os << "<line x1=\"" << num(kLeft + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(kLeft + pw + 32)
           << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << num(kLeft + pw + 38) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.name)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace supercon

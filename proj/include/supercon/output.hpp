#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace supercon {

/// 17 significant digits,
/// '.' separator, independent of the global locale. NaN prints as "nan".
std::string format_double(double v);

/// Writes to a sibling temporary file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Comma-separated table with LF line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::span<const double> values);
    /// First column an integer label.
    void add_row(long long label, std::span<const double> values);
    std::string str() const;

private:
    std::size_t columns_;
    std::string body_;
};

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Log-log line plot, one polyline per series; non-positive values are skipped.
std::string loglog_svg(std::string_view title, std::string_view x_label, std::string_view y_label,
                       std::span<const PlotSeries> series);

}  // namespace supercon

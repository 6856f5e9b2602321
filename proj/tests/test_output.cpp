#include <doctest.h>

#include <clocale>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <locale>
#include <sstream>

#include "supercon/errors.hpp"
#include "supercon/output.hpp"

using namespace supercon;
namespace fs = std::filesystem;

TEST_CASE("doubles print with 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5e-10) == "-2.5000000000000002e-10");
    CHECK(format_double(NAN) == "nan");
    for (double v : {M_PI, 1.0 / 3.0, 6.02e23, -1e-300}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("formatting ignores the global locale") {
    const char* previous = std::setlocale(LC_ALL, nullptr);
    const std::string saved = previous ? previous : "C";
    if (std::setlocale(LC_ALL, "de_DE.UTF-8")) {
        CHECK(format_double(0.5) == "0.5");
    }
    std::setlocale(LC_ALL, saved.c_str());
}

TEST_CASE("csv table") {
    CsvTable t({"N", "h", "e"});
    const double row[] = {0.25, 1e-3};
    t.add_row(11, row);
    const double full[] = {1.0, 2.0, 3.0};
    t.add_row(full);
    CHECK(t.str() == "N,h,e\n11,0.25,0.001\n1,2,3\n");
    CHECK_THROWS_AS(t.add_row(7, full), DomainError);
}

TEST_CASE("atomic write replaces the target and leaves no temporary") {
    const fs::path dir = fs::temp_directory_path() / "supercon_output_test";
    fs::remove_all(dir);
    const fs::path target = dir / "nested" / "table.csv";
    write_file_atomic(target, "a\n");
    write_file_atomic(target, "b,c\n");
    std::ifstream in(target);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "b,c\n");
    int files = 0;
    for (const auto& entry : fs::directory_iterator(target.parent_path())) {
        (void)entry;
        ++files;
    }
    CHECK(files == 1);
    fs::remove_all(dir);
}

TEST_CASE("log-log svg has one polyline per series") {
    const PlotSeries a{"rms_global", {0.1, 0.05, 0.025}, {1e-4, 1e-5, 1e-6}};
    const PlotSeries b{"with <zero>", {0.1, 0.05}, {0.0, 1e-3}};
    const PlotSeries all[] = {a, b};
    const std::string svg = loglog_svg("rates", "h", "error", all);
    CHECK(svg.rfind("<svg", 0) == 0);
    std::size_t count = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++count;
    CHECK(count == 2);
    CHECK(svg.find("&lt;zero&gt;") != std::string::npos);
    CHECK(svg.find("1e-6") != std::string::npos);
}

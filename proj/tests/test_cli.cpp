#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "supercon/errors.hpp"

using namespace supercon;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = app::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("supercon_cli_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("kernel grammar") {
    const KernelSpec k = app::parse_kernel("matern:m=2");
    CHECK(k == KernelSpec(2, 1, 1.0));
    CHECK(app::parse_kernel("matern:m=2,amp=paper") == KernelSpec::paper_normalized(2));
    CHECK(app::parse_kernel("matern:m=3,d=2,amp=unit") == KernelSpec(3, 2));
    CHECK_THROWS_AS(app::parse_kernel("gauss:m=2"), DomainError);
    CHECK_THROWS_AS(app::parse_kernel("matern:d=1"), DomainError);
    CHECK_THROWS_AS(app::parse_kernel("matern:m=2,amp=big"), DomainError);
    CHECK_THROWS_AS(app::parse_kernel("matern:m=2x"), DomainError);
    CHECK_THROWS_AS(app::parse_kernel("matern:m=1,d=2"), DomainError);
}

TEST_CASE("rates writes the table, plot and error profile") {
    const fs::path dir = scratch("rates");
    const Run r = run({"rates", "--kernel", "matern:m=2", "--C", "1.2", "--margin", "0.4", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("global=") != std::string::npos);
    const std::string csv = slurp(dir / "rates.csv");
    CHECK(csv.rfind("N,h,rms_global,rms_interior,native_err\n11,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(fs::exists(dir / "rates.svg"));
    const std::string profile = slurp(dir / "error_N161.csv");
    CHECK(profile.rfind("x,error\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("rates with a single level still writes the table") {
    const fs::path dir = scratch("single");
    const Run r = run({"rates", "--nodes", "5", "--out", dir.string()});
    CHECK(r.code == app::kNumericalError);
    CHECK(r.err.find("two usable levels") != std::string::npos);
    CHECK(fs::exists(dir / "rates.csv"));
    fs::remove_all(dir);
}

TEST_CASE("rates output is byte-identical across runs") {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    REQUIRE(run({"rates", "--C", "0.8", "--margin", "0.2", "--out", a.string()}).code == 0);
    REQUIRE(run({"rates", "--C", "0.8", "--margin", "0.2", "--out", b.string()}).code == 0);
    CHECK(slurp(a / "rates.csv") == slurp(b / "rates.csv"));
    CHECK(slurp(a / "error_N161.csv") == slurp(b / "error_N161.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("config errors exit with 2") {
    CHECK(run({"rates", "--bogus"}).code == app::kConfigError);
    CHECK(run({"rates", "--kernel", "matern:m=x"}).code == app::kConfigError);
    CHECK(run({"rates", "--margin", "2.0"}).code == app::kConfigError);
    CHECK(run({"rates", "--nodes", "11,21", "--grid", "50"}).code == app::kConfigError);
    CHECK(run({}).code == app::kConfigError);
    CHECK(run({"nonsense"}).code == app::kConfigError);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("conditioning failure exits with 3 and names N") {
    const fs::path dir = scratch("cond");
    const Run r = run({"rates", "--C", "1e-7", "--margin", "0", "--nodes", "3,11", "--out", dir.string()});
    CHECK(r.code == app::kNumericalError);
    CHECK(r.err.find("N=3") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("interp writes values and coefficients") {
    const fs::path dir = scratch("interp");
    const Run r = run({"interp", "--nodes", "41", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(slurp(dir / "interp.csv").rfind("x,s,f,error\n", 0) == 0);
    CHECK(slurp(dir / "coefficients.csv").rfind("x,coefficient,coefficient_over_h\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("mercer outputs") {
    const fs::path dir = scratch("mercer");
    const Run r = run({"mercer", "--kernel", "matern:m=1", "--domain", "-1,1", "--modes", "5", "--quad", "200",
                       "--out", dir.string()});
    REQUIRE(r.code == 0);
    std::istringstream evals(slurp(dir / "eigenvalues.csv"));
    std::string line;
    std::getline(evals, line);
    CHECK(line == "n,kappa");
    double prev = INFINITY;
    int rows = 0;
    while (std::getline(evals, line)) {
        const double kappa = std::stod(line.substr(line.find(',') + 1));
        if (rows == 0) CHECK(std::abs(kappa - 1.1493) < 1e-3);
        CHECK(kappa > 0.0);
        CHECK(kappa <= prev);
        prev = kappa;
        ++rows;
    }
    CHECK(rows == 5);

    std::istringstream gram(slurp(dir / "hk_gram.csv"));
    std::getline(gram, line);
    CHECK(line == "j,l,value");
    while (std::getline(gram, line)) {
        int j = 0;
        int l = 0;
        double v = 0.0;
        char c1 = 0;
        char c2 = 0;
        std::istringstream ls(line);
        ls >> j >> c1 >> l >> c2 >> v;
        if (j != l) CHECK(std::abs(v) < 1e-6);
        if (j == l) CHECK(std::abs(v - 1.0) < 1e-6);
    }
    CHECK(fs::exists(dir / "eigenfunctions.csv"));
    CHECK(fs::exists(dir / "extension.csv"));
    CHECK(run({"mercer", "--domain=-1,1", "--modes", "3", "--out", dir.string()}).code == 0);
    CHECK(run({"mercer", "--kernel", "matern:m=4", "--domain", "-0.01,0.01", "--quad", "60", "--modes", "60",
               "--out", dir.string()})
              .code == app::kNumericalError);
    fs::remove_all(dir);
}

TEST_CASE("bc-check reports both residual sets") {
    const Run outside = run({"bc-check", "--a", "-1.2", "--b", "1.2"});
    CHECK(outside.code == 0);
    CHECK(outside.out.find("two-constraint residuals") != std::string::npos);
    CHECK(outside.out.find("equality-chain residuals") != std::string::npos);
    CHECK(outside.out.find("f+f'(b)=7.079e-01") != std::string::npos);
    const Run inside = run({"bc-check", "--a", "-0.5", "--b", "0.5"});
    CHECK(inside.code == 0);
}

TEST_CASE("seqmodel passes and is vacuous with zero trials") {
    const Run r = run({"seqmodel"});
    CHECK(r.code == 0);
    CHECK(r.out.find("standard 1000/1000, superconvergence 1000/1000") != std::string::npos);
    CHECK(run({"seqmodel", "--trials", "0"}).code == 0);
}

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "supercon/closed_forms.hpp"
#include "supercon/errors.hpp"
#include "supercon/mercer.hpp"

using namespace supercon;

namespace {

// Leading eigenvalue of e^{-|x-y|} on [-1,1]: cos(wx) with w tan w = 1,
// kappa = 2 / (1 + w^2). Bisection on (0, pi/2).
double leading_exponential_eigenvalue() {
    double lo = 0.0;
    double hi = M_PI / 2 - 1e-12;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid * std::tan(mid) < 1.0 ? lo : hi) = mid;
    }
    const double w = 0.5 * (lo + hi);
    return 2.0 / (1.0 + w * w);
}

const MercerSystem& exp_system() {
    static const MercerSystem sys = nystrom_eig(KernelSpec(1), -1.0, 1.0, 200, 10);
    return sys;
}

}  // namespace

TEST_CASE("leading eigenvalue matches the transcendental oracle") {
    const double oracle = leading_exponential_eigenvalue();
    CHECK(oracle == doctest::Approx(1.1493).epsilon(1e-4));
    CHECK(std::abs(exp_system().eigenvalue(0) - oracle) < 1e-3);
}

TEST_CASE("leading eigenvalue converges monotonically in the rule size") {
    const double oracle = leading_exponential_eigenvalue();
    double prev = INFINITY;
    for (std::size_t q : {50u, 100u, 200u}) {
        const double err = std::abs(nystrom_eig(KernelSpec(1), -1.0, 1.0, q, 3).eigenvalue(0) - oracle);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("eigenvalues positive, nonincreasing, trace equals |Omega| K(0)") {
    const MercerSystem& sys = exp_system();
    for (std::size_t n = 0; n < sys.modes(); ++n) {
        CHECK(sys.eigenvalue(n) > 0.0);
        if (n) CHECK(sys.eigenvalue(n) <= sys.eigenvalue(n - 1));
    }
    const double trace = std::accumulate(sys.spectrum().begin(), sys.spectrum().end(), 0.0);
    CHECK(std::abs(trace - 2.0) < 1e-6);
}

TEST_CASE("samples are discretely orthonormal with the sign convention") {
    const MercerSystem& sys = exp_system();
    const auto& w = sys.rule().weights;
    for (std::size_t j = 0; j < sys.modes(); ++j) {
        CHECK(sys.samples()(0, j) >= 0.0);
        for (std::size_t k = 0; k < sys.modes(); ++k) {
            double s = 0.0;
            for (std::size_t q = 0; q < w.size(); ++q) s += w[q] * sys.samples()(q, j) * sys.samples()(q, k);
            CHECK(std::abs(s - (j == k ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("too many modes for a rough rule") {
    CHECK_THROWS_AS(nystrom_eig(KernelSpec(1), 1.0, -1.0, 10, 2), DomainError);
    CHECK_THROWS_AS(nystrom_eig(KernelSpec(1), -1.0, 1.0, 10, 11), DomainError);
    // smooth kernel on a tiny interval: the discrete spectrum hits roundoff quickly
    CHECK_THROWS_AS(nystrom_eig(KernelSpec(4), -0.01, 0.01, 60, 60), TruncationError);
}

TEST_CASE("extension reproduces the samples on the rule nodes") {
    const MercerSystem& sys = exp_system();
    for (std::size_t n : {0u, 3u, 9u}) {
        for (std::size_t q : {0u, 57u, 199u}) {
            CHECK(std::abs(eigen_extend(sys, n, sys.rule().nodes[q]) - sys.samples()(q, n)) < 1e-8);
        }
    }
}

TEST_CASE("extension decays outside the domain") {
    const MercerSystem& sys = exp_system();
    for (std::size_t n = 0; n < 5; ++n) {
        const double bound = (2.0 / sys.eigenvalue(n)) * kernel_eval(sys.kernel(), 10.0) *
                             sys.samples().col(n).cwiseAbs().maxCoeff();
        CHECK(std::abs(eigen_extend(sys, n, 11.0)) <= bound);
    }
}

TEST_CASE("extension inherits the parity of the mode") {
    const MercerSystem& sys = exp_system();
    for (std::size_t n = 0; n < 4; ++n) {
        const double parity = (n % 2 == 0) ? 1.0 : -1.0;
        for (double x : {0.3, 1.4, 2.5}) {
            CHECK(eigen_extend(sys, n, -x) == doctest::Approx(parity * eigen_extend(sys, n, x)).epsilon(1e-9));
        }
    }
    const std::vector<double> xs{-2.0, 0.0, 2.0};
    const std::vector<double> many = eigen_extend(sys, 0, xs);
    CHECK(many[0] == doctest::Approx(eigen_extend(sys, 0, -2.0)));
}

TEST_CASE("native-space Gram of the extended eigenfunctions") {
    const MercerSystem& sys = exp_system();
    CHECK(hk_gram_extended(sys, 0, 0) == doctest::Approx(1.0 / sys.eigenvalue(0)).epsilon(1e-10));
    CHECK(std::abs(hk_gram_extended(sys, 0, 1)) < 1e-8);
    for (std::size_t j = 0; j < 5; ++j) {
        for (std::size_t l = 0; l < 5; ++l) {
            const double g = hk_gram_extended(sys, j, l);
            CHECK(std::abs(g - hk_gram_extended(sys, l, j)) <= 1e-12 * std::max(1.0, std::abs(g)));
            const double expected = (j == l) ? 1.0 / sys.eigenvalue(l) : 0.0;
            CHECK(std::abs(g - expected) <= 1e-6 * (1.0 / sys.eigenvalue(l)));
        }
    }
}

TEST_CASE("multiplier operators") {
    const MercerSystem& sys = exp_system();
    const std::vector<double> e1{1.0};
    const std::vector<double> k1 = apply_multiplier(sys, e1, +1);
    for (std::size_t q = 0; q < k1.size(); ++q) CHECK(k1[q] == doctest::Approx(sys.eigenvalue(0) * sys.samples()(q, 0)));

    const std::vector<double> c{0.3, -1.0, 0.5, 2.0};
    const std::vector<double> forward = apply_multiplier(sys, c, +1);
    const std::vector<double> roundtrip = apply_multiplier(sys, expansion_coefficients(sys, forward), -1);
    const std::vector<double> plain = [&] {
        std::vector<double> out(sys.rule().size(), 0.0);
        for (std::size_t n = 0; n < c.size(); ++n)
            for (std::size_t q = 0; q < out.size(); ++q) out[q] += c[n] * sys.samples()(q, n);
        return out;
    }();
    for (std::size_t q = 0; q < plain.size(); ++q) CHECK(std::abs(roundtrip[q] - plain[q]) < 1e-10);

    CHECK_THROWS_AS(apply_multiplier(sys, c, 0), DomainError);
}

TEST_CASE("integral operator on the constant function matches direct convolution") {
    const MercerSystem sys = nystrom_eig(KernelSpec(1), -1.0, 1.0, 200, 40);
    const auto& rule = sys.rule();
    const std::vector<double> ones(rule.size(), 1.0);
    const std::vector<double> c = expansion_coefficients(sys, ones);
    const std::vector<double> img = apply_multiplier(sys, c, +1);

    // Cauchy-Schwarz: |I(1 - P1)(y_q)| <= |K(y_q - .)|_L2 * |1 - P1|_L2
    double residual_sq = 2.0;
    for (double cn : c) residual_sq -= cn * cn;
    const double tail = std::sqrt(std::max(residual_sq, 0.0));
    for (std::size_t q = 0; q < rule.size(); ++q) {
        double kq = 0.0;
        for (std::size_t p = 0; p < rule.size(); ++p) {
            const double v = kernel_eval(sys.kernel(), std::abs(rule.nodes[q] - rule.nodes[p]));
            kq += rule.weights[p] * v * v;
        }
        const double direct = convolve_with_indicator(sys.kernel(), -1.0, 1.0, rule.nodes[q]);
        CHECK(std::abs(img[q] - direct) <= std::sqrt(kq) * tail + 1e-9);
    }
    CHECK(tail < 0.2);
}

TEST_CASE("extension of the constant mode input agrees with closed-form convolution") {
    const MercerSystem sys = nystrom_eig(KernelSpec(1), -1.0, 1.0, 200, 200);
    const std::vector<double> ones(sys.rule().size(), 1.0);
    // all modes: I^Omega of the constant is the convolution with chi_Omega
    const std::vector<double> c = expansion_coefficients(sys, ones);
    for (double x : {-2.5, -1.3, 1.7, 3.0}) {
        double sum = 0.0;
        for (std::size_t n = 0; n < c.size(); ++n) sum += c[n] * sys.eigenvalue(n) * eigen_extend(sys, n, x);
        CHECK(sum == doctest::Approx(convolve_with_indicator(sys.kernel(), -1.0, 1.0, x)).epsilon(1e-9));
    }
}

TEST_CASE("extending a kernel translate improves with more modes") {
    const KernelSpec k(1);
    const double x0 = 0.25;
    double prev_a = INFINITY;
    double prev_b = INFINITY;
    for (std::size_t modes : {5u, 10u, 20u}) {
        const MercerSystem sys = nystrom_eig(k, -1.0, 1.0, 200, modes);
        std::vector<double> samples;
        for (double y : sys.rule().nodes) samples.push_back(kernel_eval(k, std::abs(y - x0)));
        const double ea = std::abs(extend_function(sys, samples, 1.5) - kernel_eval(k, 1.25));
        const double eb = std::abs(extend_function(sys, samples, 2.0) - kernel_eval(k, 1.75));
        CHECK(ea < prev_a);
        CHECK(eb < prev_b);
        prev_a = ea;
        prev_b = eb;
    }
}

TEST_CASE("extension of a mode's own samples is the extended mode") {
    const MercerSystem& sys = exp_system();
    std::vector<double> s(sys.rule().size());
    for (std::size_t q = 0; q < s.size(); ++q) s[q] = sys.samples()(q, 0);
    for (double x : {-1.7, 0.2, 2.2}) CHECK(extend_function(sys, s, x) == doctest::Approx(eigen_extend(sys, 0, x)).epsilon(1e-10));
}

TEST_CASE("truncated reconstruction residual is nonincreasing in the mode count") {
    const MercerSystem sys = nystrom_eig(KernelSpec(2), -1.0, 1.0, 120, 30);
    const auto& w = sys.rule().weights;
    std::vector<double> g;
    for (double y : sys.rule().nodes) g.push_back(std::sin(3.0 * y) + y * y);
    const std::vector<double> c = expansion_coefficients(sys, g);
    double prev = INFINITY;
    for (std::size_t m = 0; m <= c.size(); ++m) {
        double res = 0.0;
        for (std::size_t q = 0; q < g.size(); ++q) {
            double rec = 0.0;
            for (std::size_t n = 0; n < m; ++n) rec += c[n] * sys.samples()(q, n);
            res += w[q] * (g[q] - rec) * (g[q] - rec);
        }
        CHECK(res <= prev + 1e-14);
        prev = res;
    }
}

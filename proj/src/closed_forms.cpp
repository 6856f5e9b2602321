#include "supercon/closed_forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "supercon/errors.hpp"
#include "supercon/quadrature.hpp"

namespace supercon {

namespace {

// e^{s x + c} (p x + q); d/dx maps (p, q) -> (s p, s q + p).
struct ExpLinear {
    double s, c, p, q;

    double eval(double x, int order) const {
        double pp = p;
        double qq = q;
        for (int i = 0; i < order; ++i) {
            const double np = s * pp;
            const double nq = s * qq + pp;
            pp = np;
            qq = nq;
        }
        return std::exp(s * x + c) * (pp * x + qq);
    }
};

struct BranchForm {
    std::array<ExpLinear, 2> terms;
    double constant;

    double eval(double x, int order) const {
        double v = terms[0].eval(x, order) + terms[1].eval(x, order);
        if (order == 0) v += constant;
        return v;
    }
};

constexpr BranchForm kLeft{{{{1, -1, 1, -3}, {1, 1, -1, 1}}}, 0.0};
constexpr BranchForm kMiddle{{{{1, -1, 1, -3}, {-1, -1, -1, -3}}}, 4.0};
constexpr BranchForm kRight{{{{-1, 1, 1, 1}, {-1, -1, -1, -3}}}, 0.0};

void check_order(int order) {
    if (order < 0 || order > 3) throw UnsupportedError("f_exact: derivative order must be 0..3");
}

}  // namespace

double f_branch(Branch branch, double x, int order) {
    check_order(order);
    switch (branch) {
        case Branch::Left: return kLeft.eval(x, order);
        case Branch::Middle: return kMiddle.eval(x, order);
        case Branch::Right: return kRight.eval(x, order);
    }
    return 0.0;
}

double f_exact(double x, int order) {
    check_order(order);
    if (x <= -1.0) return kLeft.eval(x, order);
    if (x >= 1.0) return kRight.eval(x, order);
    return kMiddle.eval(x, order);
}

double convolve_with_indicator(const KernelSpec& k, double a, double b, double x) {
    if (!(a < b)) throw DomainError("convolve_with_indicator: need a < b");
    auto integrand = [&](double y) { return kernel_eval(k, std::abs(x - y)); };
    const AdaptiveOptions opts{1e-12, 40};
    // the kernel has a kink at y = x
    if (x > a && x < b) {
        return integrate_adaptive(integrand, a, x, opts) + integrate_adaptive(integrand, x, b, opts);
    }
    return integrate_adaptive(integrand, a, b, opts);
}

double f_native_norm_sq() { return 2.0 * (1.0 + 5.0 * std::exp(-2.0)); }

double BcResiduals::max_abs() const {
    return std::max({std::abs(left_value), std::abs(left_slope), std::abs(right_value), std::abs(right_slope)});
}

BcResiduals bc_residuals(const Differentiable& g, double a, double b) {
    const double ga[4] = {g(a, 0), g(a, 1), g(a, 2), g(a, 3)};
    const double gb[4] = {g(b, 0), g(b, 1), g(b, 2), g(b, 3)};
    return {ga[0] - 2.0 * ga[1] + ga[2], ga[1] - 2.0 * ga[2] + ga[3], gb[0] + 2.0 * gb[1] + gb[2],
            gb[1] + 2.0 * gb[2] + gb[3]};
}

double ChainResiduals::max_abs() const {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) m = std::max({m, std::abs(left[i]), std::abs(right[i])});
    return m;
}

ChainResiduals chain_residuals(const Differentiable& g, double a, double b) {
    ChainResiduals r{};
    for (int i = 0; i < 3; ++i) {
        r.left[i] = g(a, i) - g(a, i + 1);
        r.right[i] = g(b, i) + g(b, i + 1);
    }
    return r;
}

}  // namespace supercon

#include "supercon/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "supercon/errors.hpp"

namespace supercon {

namespace {

struct LegendrePair {
    double value;
    double derivative;
};

LegendrePair legendre(std::size_t n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
    if (n == 0) throw DomainError("gauss_legendre: n must be positive");
    if (!(a < b)) throw DomainError("gauss_legendre: need a < b");

    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);

    // Newton on P_n from the standard asymptotic guess; roots come in +- pairs.
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        LegendrePair p{};
        for (int iter = 0; iter < 100; ++iter) {
            p = legendre(n, x);
            const double dx = p.value / p.derivative;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        p = legendre(n, x);
        const double w = 2.0 / ((1.0 - x * x) * p.derivative * p.derivative);

        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = mid;
    return rule;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
    double value;
    double error;
};

Estimate kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double fsum = f(c - dx) + f(c + dx);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    return {kronrod * h, std::abs((kronrod - gauss) * h)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
             int max_depth) {
    const Estimate est = kronrod15(f, a, b);
    if (est.error <= tol || std::abs(b - a) < 1e-15 * (1.0 + std::abs(a))) return est.value;
    if (depth >= max_depth) {
        throw AccuracyError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
    }
    const double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, m, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opts) {
    if (a == b) return 0.0;
    if (a > b) return -integrate_adaptive(f, b, a, opts);
    return adapt(f, a, b, opts.abs_tol, 0, opts.max_depth);
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             const AdaptiveOptions& opts) {
    auto g = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double s = 1.0 - t;
        const double v = f(a + t / s);
        return std::isfinite(v) ? v / (s * s) : 0.0;
    };
    return integrate_adaptive(g, 0.0, 1.0, opts);
}

}  // namespace supercon

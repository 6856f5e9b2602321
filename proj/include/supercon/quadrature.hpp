#pragma once

#include <functional>
#include <vector>

namespace supercon {

/// Nodes and positive weights on [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double b = 0.0;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss–Legendre rule mapped to [a, b], nodes ascending.
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

struct AdaptiveOptions {
    double abs_tol = 1e-12;
    int max_depth = 40;
};

/// Adaptive Gauss–Kronrod (7/15) integration of f over [a, b].
/// Throws AccuracyError if some subinterval is still unresolved at max_depth.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opts = {});

/// Integral of f over [a, inf) via t -> a + t/(1-t).
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             const AdaptiveOptions& opts = {});

}  // namespace supercon

#pragma once

#include <functional>

#include "supercon/kernel.hpp"

namespace supercon {

/// f = K * chi_[-1,1] for the unit-amplitude m = 2 kernel (1+r)e^{-r}:
///   x <= -1 : e^{x-1}(x-3) + e^{x+1}(1-x)
///   |x| <= 1: e^{x-1}(x-3) - e^{-1-x}(x+3) + 4
///   x >= 1  : e^{1-x}(1+x) - e^{-1-x}(x+3)
/// f is C^3 with a jump in the fourth derivative at +-1.
double f_exact(double x, int order = 0);

/// Which closed-form branch to evaluate, for checking continuity at the breakpoints.
enum class Branch { Left, Middle, Right };
double f_branch(Branch branch, double x, int order);

/// Integral of K(|x - y|) over y in [a, b], adaptive to 1e-12 absolute.
double convolve_with_indicator(const KernelSpec& k, double a, double b, double x);

/// |f|_K^2 = integral over [-1,1]^2 of (1+|x-y|)e^{-|x-y|} = 2(1 + 5e^{-2}).
double f_native_norm_sq();

/// g(x, order) returns the order-th derivative at x, order in 0..3.
using Differentiable = std::function<double(double, int)>;

/// C^3 matching of g to the decaying solutions of (Id - D^2)^2 g = 0:
/// span{e^x, xe^x} left of a and span{e^-x, xe^-x} right of b.
struct BcResiduals {
    double left_value;   // g - 2g' + g''    at a
    double left_slope;   // g' - 2g'' + g''' at a
    double right_value;  // g + 2g' + g''    at b
    double right_slope;  // g' + 2g'' + g''' at b

    double max_abs() const;
};

BcResiduals bc_residuals(const Differentiable& g, double a, double b);

/// Residuals of the equality chains g(a)=g'(a)=g''(a)=g'''(a) and
/// g(b)=-g'(b)=g''(b)=-g'''(b), taken as consecutive differences.
struct ChainResiduals {
    double left[3];   // g-g', g'-g'', g''-g''' at a
    double right[3];  // g+g', g'+g'', g''+g''' at b

    double max_abs() const;
};

ChainResiduals chain_residuals(const Differentiable& g, double a, double b);

}  // namespace supercon

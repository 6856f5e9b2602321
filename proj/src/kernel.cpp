#include "supercon/kernel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "supercon/errors.hpp"
#include "supercon/quadrature.hpp"

namespace supercon {

KernelSpec::KernelSpec(int m, int d, double amplitude) : m_(m), d_(d), amplitude_(amplitude) {
    if (m < 1 || d < 1) throw DomainError("KernelSpec: m and d must be positive");
    if (2 * m <= d) throw DomainError("KernelSpec: need 2m > d for pointwise evaluation");
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw DomainError("KernelSpec: amplitude must be positive and finite");
    }
}

KernelSpec KernelSpec::paper_normalized(int m, int d) {
    return KernelSpec(m, d, std::sqrt(std::numbers::pi / 2.0));
}

std::string KernelSpec::to_string() const {
    std::ostringstream os;
    os << "matern:m=" << m_ << ",d=" << d_ << ",amp=" << amplitude_;
    return os.str();
}

namespace {

bool has_closed_form(const KernelSpec& k) { return k.d() == 1 && (k.m() == 1 || k.m() == 2); }

double closed_form_profile(int m, double r) {
    return m == 1 ? std::exp(-r) : (1.0 + r) * std::exp(-r);
}

void check_radius(double r) {
    if (!std::isfinite(r) || r < 0.0) throw DomainError("kernel_eval: r must be finite and >= 0");
}

}  // namespace

double bessel_profile(const KernelSpec& k, double r) {
    check_radius(r);
    const double nu = k.bessel_order();
    // r^nu K_nu(r) -> Gamma(nu) 2^{nu-1} as r -> 0 (nu > 0)
    const double limit = std::tgamma(nu) * std::pow(2.0, nu - 1.0);
    if (r == 0.0) return 1.0;
    if (r > 700.0) return 0.0;
    return std::pow(r, nu) * std::cyl_bessel_k(nu, r) / limit;
}

double kernel_eval(const KernelSpec& k, double r) {
    check_radius(r);
    if (has_closed_form(k)) return k.amplitude() * closed_form_profile(k.m(), r);
    return k.amplitude() * bessel_profile(k, r);
}

TranslateDerivative kernel_translate_deriv(const KernelSpec& k, double x, int order) {
    if (k.m() != 2 || k.d() != 1) {
        throw UnsupportedError("kernel_translate_deriv: only m = 2, d = 1 is implemented");
    }
    if (order < 0 || order > 3) throw UnsupportedError("kernel_translate_deriv: order must be 0..3");
    if (!std::isfinite(x)) throw DomainError("kernel_translate_deriv: x must be finite");

    // Derivatives of (1+r)e^{-r} for r > 0; x < 0 picks up sign(x)^order.
    const double r = std::abs(x);
    const double e = std::exp(-r);
    double radial = 0.0;
    switch (order) {
        case 0: radial = (1.0 + r) * e; break;
        case 1: radial = -r * e; break;
        case 2: radial = (r - 1.0) * e; break;
        case 3: radial = (2.0 - r) * e; break;
    }
    const double sign = (x < 0.0 && order % 2 == 1) ? -1.0 : 1.0;
    return {k.amplitude() * sign * radial, x == 0.0 && order == 3};
}

double fourier_symbol(const KernelSpec& k, double omega) {
    return std::pow(1.0 + omega * omega, -k.m());
}

KernelSpec convolution_root(const KernelSpec& k) {
    if (k.m() % 2 != 0) throw NoRootError("convolution_root: m must be even");
    const int half = k.m() / 2;
    if (2 * half <= k.d()) throw NoRootError("convolution_root: root would violate 2m > d");
    return KernelSpec(half, k.d(), k.amplitude());
}

double tail_energy(const KernelSpec& k, double R) {
    if (!(R >= 0.0) || !std::isfinite(R)) throw DomainError("tail_energy: R must be finite and >= 0");
    if (k.d() != 1) throw UnsupportedError("tail_energy: only d = 1 is implemented");

    const double amp2 = k.amplitude() * k.amplitude();
    if (k.m() == 1) return amp2 * std::exp(-2.0 * R);
    if (k.m() == 2) {
        const double u = 1.0 + R;
        return amp2 * std::exp(-2.0 * R) * (u * u + u + 0.5);
    }
    auto sq = [&](double r) {
        const double v = bessel_profile(k, r);
        return v * v;
    };
    return 2.0 * amp2 * integrate_to_infinity(sq, R);
}

double boundary_layer_width(const KernelSpec& k, double v_norm, double tol) {
    if (!(tol > 0.0)) throw DomainError("boundary_layer_width: tol must be positive");
    if (v_norm < 0.0) throw DomainError("boundary_layer_width: v_norm must be >= 0");

    const double target = tol * tol;
    auto ok = [&](double R) { return v_norm * v_norm * tail_energy(k, R) <= target; };
    if (ok(0.0)) return 0.0;

    double lo = 0.0;
    double hi = 1.0;
    while (!ok(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw DomainError("boundary_layer_width: no width below 1e6");
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace supercon

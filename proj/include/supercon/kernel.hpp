#pragma once

#include <string>

namespace supercon {

/// Whittle–Matérn radial kernel of Sobolev index m on R^d.
///
/// The radial profile is normalized to 1 at r = 0, so for d = 1 it is e^{-r}
/// (m = 1) and (1+r)e^{-r} (m = 2). Other (m, d) use the modified Bessel
/// profile r^nu K_nu(r) with nu = m - d/2, divided by its limit at 0.
/// The length scale is fixed to 1.
class KernelSpec {
public:
    /// Throws DomainError unless 2m > d and amplitude > 0.
    KernelSpec(int m, int d = 1, double amplitude = 1.0);

    /// Amplitude sqrt(pi/2), matching the textbook reproducing kernels of W_2^m(R).
    static KernelSpec paper_normalized(int m, int d = 1);

    int m() const noexcept { return m_; }
    int d() const noexcept { return d_; }
    double amplitude() const noexcept { return amplitude_; }

    KernelSpec with_amplitude(double amplitude) const { return KernelSpec(m_, d_, amplitude); }

    /// nu = m - d/2.
    double bessel_order() const noexcept { return m_ - 0.5 * d_; }

    std::string to_string() const;

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

private:
    int m_;
    int d_;
    double amplitude_;
};

/// amplitude * phi_{m,d}(r). Throws DomainError for r < 0 or non-finite r.
double kernel_eval(const KernelSpec& k, double r);

/// Normalized Bessel profile, regardless of whether a closed form exists.
/// Exposed so the closed forms can be cross-checked.
double bessel_profile(const KernelSpec& k, double r);

/// Derivative of a one-sided quantity: at x = 0 and order 3 the
/// right-sided limit is returned and `one_sided` is set.
struct TranslateDerivative {
    double value;
    bool one_sided;
};

/// order-th derivative of x -> kernel_eval(k, |x|). Only m = 2, d = 1,
/// order 0..3. Throws UnsupportedError otherwise.
TranslateDerivative kernel_translate_deriv(const KernelSpec& k, double x, int order);

/// (1 + omega^2)^{-m}, no transform constants.
double fourier_symbol(const KernelSpec& k, double omega);

/// Kernel with index m/2, whose symbol squares to that of k.
/// Throws NoRootError for odd m or when m/2 leaves the pointwise family.
KernelSpec convolution_root(const KernelSpec& k);

/// Integral of K(y)^2 over |y| >= R (d = 1 only).
double tail_energy(const KernelSpec& k, double R);

/// Smallest R with v_norm^2 * tail_energy(k, R) <= tol^2.
double boundary_layer_width(const KernelSpec& k, double v_norm, double tol);

}  // namespace supercon

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "supercon/kernel.hpp"
#include "supercon/quadrature.hpp"

namespace supercon {

/// Nyström approximation of the Mercer eigensystem of K on [a, b].
///
/// Mode indices are zero-based: mode 0 carries the largest eigenvalue.
/// Eigenfunction samples are discretely L2-orthonormal under the rule
/// weights and satisfy the sign convention phi_n(first node) >= 0.
class MercerSystem {
public:
    MercerSystem(KernelSpec kernel, QuadratureRule rule, std::vector<double> eigenvalues,
                 Eigen::MatrixXd samples, std::vector<double> spectrum);

    const KernelSpec& kernel() const noexcept { return kernel_; }
    const QuadratureRule& rule() const noexcept { return rule_; }
    std::size_t modes() const noexcept { return eigenvalues_.size(); }
    double a() const noexcept { return rule_.a; }
    double b() const noexcept { return rule_.b; }

    /// Leading eigenvalues, nonincreasing and positive.
    std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
    double eigenvalue(std::size_t n) const { return eigenvalues_.at(n); }

    /// Column n holds phi_n at the rule nodes.
    const Eigen::MatrixXd& samples() const noexcept { return samples_; }

    /// Every discrete eigenvalue, descending (may include roundoff negatives).
    std::span<const double> spectrum() const noexcept { return spectrum_; }

private:
    KernelSpec kernel_;
    QuadratureRule rule_;
    std::vector<double> eigenvalues_;
    Eigen::MatrixXd samples_;
    std::vector<double> spectrum_;
};

/// Eigendecomposition of W^{1/2} A W^{1/2} on a Gauss–Legendre rule.
/// Throws TruncationError if any of the first n_modes eigenvalues is <= 0.
MercerSystem nystrom_eig(const KernelSpec& k, double a, double b, std::size_t rule_size,
                         std::size_t n_modes);

/// phi^E_n(x) = (1/kappa_n) sum_q w_q K(|x - y_q|) phi_n(y_q).
double eigen_extend(const MercerSystem& sys, std::size_t n, double x);

/// phi^E_n on many points, processed in parallel.
std::vector<double> eigen_extend(const MercerSystem& sys, std::size_t n, std::span<const double> xs);

/// (phi^E_j, phi^E_l)_K from the double integral of phi_j K phi_l over the domain.
/// Equals delta_jl / kappa_l.
double hk_gram_extended(const MercerSystem& sys, std::size_t j, std::size_t l);

/// Samples at the rule nodes of sum_n kappa_n^p c_n phi_n, p = +1 (I) or -1 (D).
std::vector<double> apply_multiplier(const MercerSystem& sys, std::span<const double> coeffs, int p);

/// c_n = sum_q w_q samples_q phi_n(y_q).
std::vector<double> expansion_coefficients(const MercerSystem& sys, std::span<const double> samples);

/// sum_n c_n phi^E_n(x) with c the expansion coefficients of samples.
double extend_function(const MercerSystem& sys, std::span<const double> samples, double x);

}  // namespace supercon

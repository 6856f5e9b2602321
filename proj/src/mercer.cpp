#include "supercon/mercer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "supercon/errors.hpp"

namespace supercon {

MercerSystem::MercerSystem(KernelSpec kernel, QuadratureRule rule, std::vector<double> eigenvalues,
                           Eigen::MatrixXd samples, std::vector<double> spectrum)
    : kernel_(kernel),
      rule_(std::move(rule)),
      eigenvalues_(std::move(eigenvalues)),
      samples_(std::move(samples)),
      spectrum_(std::move(spectrum)) {}

MercerSystem nystrom_eig(const KernelSpec& k, double a, double b, std::size_t rule_size,
                         std::size_t n_modes) {
    if (!(a < b)) throw DomainError("nystrom_eig: need a < b");
    if (n_modes == 0 || n_modes > rule_size) throw DomainError("nystrom_eig: need 1 <= n_modes <= rule_size");

    QuadratureRule rule = gauss_legendre(rule_size, a, b);
    const Eigen::Index q = static_cast<Eigen::Index>(rule_size);
    Eigen::VectorXd sqrt_w(q);
    for (Eigen::Index i = 0; i < q; ++i) sqrt_w(i) = std::sqrt(rule.weights[i]);

    Eigen::MatrixXd bmat(q, q);
#pragma omp parallel for schedule(dynamic, 16)
    for (Eigen::Index i = 0; i < q; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = sqrt_w(i) * kernel_eval(k, std::abs(rule.nodes[i] - rule.nodes[j])) * sqrt_w(j);
            bmat(i, j) = v;
            bmat(j, i) = v;
        }
    }

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(bmat);
    if (solver.info() != Eigen::Success) throw Error("nystrom_eig: eigensolver failed");

    // Eigen returns ascending order.
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const Eigen::MatrixXd& evecs = solver.eigenvectors();
    std::vector<double> spectrum(rule_size);
    for (Eigen::Index i = 0; i < q; ++i) spectrum[i] = evals(q - 1 - i);

    std::vector<double> kappa(n_modes);
    Eigen::MatrixXd samples(q, static_cast<Eigen::Index>(n_modes));
    for (std::size_t n = 0; n < n_modes; ++n) {
        kappa[n] = spectrum[n];
        if (!(kappa[n] > 0.0)) {
            throw TruncationError("nystrom_eig: eigenvalue " + std::to_string(n + 1) +
                                  " is not positive; request fewer modes");
        }
        Eigen::VectorXd phi = evecs.col(q - 1 - static_cast<Eigen::Index>(n)).cwiseQuotient(sqrt_w);
        if (phi(0) < 0.0) phi = -phi;
        samples.col(static_cast<Eigen::Index>(n)) = phi;
    }
    return MercerSystem(k, std::move(rule), std::move(kappa), std::move(samples), std::move(spectrum));
}

double eigen_extend(const MercerSystem& sys, std::size_t n, double x) {
    if (n >= sys.modes()) throw DomainError("eigen_extend: mode index out of range");
    const auto& rule = sys.rule();
    const auto phi = sys.samples().col(static_cast<Eigen::Index>(n));
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        sum += rule.weights[q] * kernel_eval(sys.kernel(), std::abs(x - rule.nodes[q])) * phi(static_cast<Eigen::Index>(q));
    }
    return sum / sys.eigenvalue(n);
}

std::vector<double> eigen_extend(const MercerSystem& sys, std::size_t n, std::span<const double> xs) {
    if (n >= sys.modes()) throw DomainError("eigen_extend: mode index out of range");
    std::vector<double> out(xs.size());
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = eigen_extend(sys, n, xs[i]);
    return out;
}

double hk_gram_extended(const MercerSystem& sys, std::size_t j, std::size_t l) {
    if (j >= sys.modes() || l >= sys.modes()) throw DomainError("hk_gram_extended: mode index out of range");
    const auto& rule = sys.rule();
    const auto phi_j = sys.samples().col(static_cast<Eigen::Index>(j));
    const auto phi_l = sys.samples().col(static_cast<Eigen::Index>(l));
    const std::size_t q = rule.size();
    double total = 0.0;
    for (std::size_t p = 0; p < q; ++p) {
        double inner = 0.0;
        for (std::size_t r = 0; r < q; ++r) {
            inner += rule.weights[r] * kernel_eval(sys.kernel(), std::abs(rule.nodes[p] - rule.nodes[r])) *
                     phi_l(static_cast<Eigen::Index>(r));
        }
        total += rule.weights[p] * phi_j(static_cast<Eigen::Index>(p)) * inner;
    }
    return total / (sys.eigenvalue(j) * sys.eigenvalue(l));
}

std::vector<double> apply_multiplier(const MercerSystem& sys, std::span<const double> coeffs, int p) {
    if (p != 1 && p != -1) throw DomainError("apply_multiplier: p must be +1 or -1");
    if (coeffs.size() > sys.modes()) throw DomainError("apply_multiplier: more coefficients than modes");
    const Eigen::Index q = static_cast<Eigen::Index>(sys.rule().size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(q);
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        const double scale = p == 1 ? sys.eigenvalue(n) : 1.0 / sys.eigenvalue(n);
        out += scale * coeffs[n] * sys.samples().col(static_cast<Eigen::Index>(n));
    }
    return {out.begin(), out.end()};
}

std::vector<double> expansion_coefficients(const MercerSystem& sys, std::span<const double> samples) {
    const auto& rule = sys.rule();
    if (samples.size() != rule.size()) throw DomainError("expansion_coefficients: one sample per rule node required");
    std::vector<double> c(sys.modes(), 0.0);
    for (std::size_t n = 0; n < sys.modes(); ++n) {
        const auto phi = sys.samples().col(static_cast<Eigen::Index>(n));
        for (std::size_t q = 0; q < rule.size(); ++q) c[n] += rule.weights[q] * samples[q] * phi(static_cast<Eigen::Index>(q));
    }
    return c;
}

double extend_function(const MercerSystem& sys, std::span<const double> samples, double x) {
    const std::vector<double> c = expansion_coefficients(sys, samples);
    double sum = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) sum += c[n] * eigen_extend(sys, n, x);
    return sum;
}

}  // namespace supercon

#include "supercon/interp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "supercon/cholesky.hpp"
#include "supercon/errors.hpp"

namespace supercon {

NodeSet::NodeSet(std::vector<double> points, double half_width)
    : points_(std::move(points)), half_width_(half_width) {
    if (!(half_width > 0.0)) throw DomainError("NodeSet: half width must be positive");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i]) || std::abs(points_[i]) > half_width * (1.0 + 1e-15)) {
            throw DomainError("NodeSet: node outside [-C, C]");
        }
        if (i > 0 && !(points_[i] > points_[i - 1])) {
            throw DomainError("NodeSet: nodes must be strictly increasing");
        }
    }
}

double NodeSet::spacing() const noexcept {
    double gap = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i) gap = std::max(gap, points_[i] - points_[i - 1]);
    return gap;
}

double NodeSet::fill_distance() const noexcept {
    if (points_.empty()) return 2.0 * half_width_;
    double h = std::max(points_.front() + half_width_, half_width_ - points_.back());
    return std::max(h, 0.5 * spacing());
}

Interpolant::Interpolant(KernelSpec kernel, NodeSet nodes, std::vector<double> values,
                         std::vector<double> coefficients, std::vector<std::string> warnings)
    : kernel_(kernel),
      nodes_(std::move(nodes)),
      values_(std::move(values)),
      coefficients_(std::move(coefficients)),
      warnings_(std::move(warnings)) {}

double Interpolant::operator()(double x) const {
    const auto pts = nodes_.points();
    double s = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) s += coefficients_[j] * kernel_eval(kernel_, std::abs(x - pts[j]));
    return s;
}

namespace {

template <bool Parallel>
Eigen::MatrixXd gram_impl(const KernelSpec& k, const NodeSet& nodes) {
    const auto pts = nodes.points();
    const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXd a(n, n);
    const double diag = kernel_eval(k, 0.0);
#pragma omp parallel for schedule(dynamic, 16) if (Parallel && n > 64)
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, i) = diag;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = kernel_eval(k, std::abs(pts[i] - pts[j]));
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    return a;
}

template <bool Parallel>
std::vector<double> evaluate_impl(const Interpolant& s, std::span<const double> points) {
    std::vector<double> out(points.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static) if (Parallel && n > 256)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = s(points[i]);
    return out;
}

template <bool Parallel>
Interpolant interpolate_impl(const KernelSpec& k, const NodeSet& nodes, std::span<const double> values,
                             const InterpOptions& opts) {
    if (values.size() != nodes.size()) throw DomainError("interpolate: one value per node required");
    std::vector<double> vals(values.begin(), values.end());
    if (nodes.empty()) return Interpolant(k, nodes, std::move(vals), {});

    Eigen::MatrixXd a = gram_impl<Parallel>(k, nodes);
    const double k0 = kernel_eval(k, 0.0);
    const double floor = 1e-13 * k0;
    auto factor = [&](const Eigen::MatrixXd& m) {
        if constexpr (Parallel) {
            return cholesky_factor(m, floor);
        } else {
            return serial::cholesky_factor(m, floor);
        }
    };

    std::vector<std::string> warnings;
    std::optional<CholeskyFactor> chol;
    try {
        chol.emplace(factor(a));
    } catch (const ConditioningError& e) {
        if (!opts.jitter) throw;
        const double jitter = 1e-12 * k0;
        a.diagonal().array() += jitter;
        warnings.push_back("jitter " + std::to_string(jitter) + " added to Gram diagonal after pivot " +
                           std::to_string(e.pivot_index()) + " failed");
        chol.emplace(factor(a));
    }

    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    const Eigen::VectorXd coef = chol->solve(rhs);
    return Interpolant(k, nodes, std::move(vals), std::vector<double>(coef.begin(), coef.end()),
                       std::move(warnings));
}

}  // namespace

Eigen::MatrixXd assemble_gram(const KernelSpec& k, const NodeSet& nodes) { return gram_impl<true>(k, nodes); }

std::vector<double> evaluate(const Interpolant& s, std::span<const double> points) {
    return evaluate_impl<true>(s, points);
}

Interpolant interpolate(const KernelSpec& k, const NodeSet& nodes, std::span<const double> values,
                        const InterpOptions& opts) {
    return interpolate_impl<true>(k, nodes, values, opts);
}

double native_norm_sq(const Interpolant& s) {
    const auto a = s.coefficients();
    const auto v = s.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * v[i];
    return std::max(sum, 0.0);
}

double native_error_norm(double f_norm_sq, const Interpolant& s) {
    const double s_sq = native_norm_sq(s);
    if (f_norm_sq < s_sq - 1e-9) {
        throw InconsistencyError("native_error_norm: f_norm_sq " + std::to_string(f_norm_sq) +
                                 " below interpolant norm " + std::to_string(s_sq));
    }
    return std::sqrt(std::max(0.0, f_norm_sq - s_sq));
}

namespace serial {

Eigen::MatrixXd assemble_gram(const KernelSpec& k, const NodeSet& nodes) { return gram_impl<false>(k, nodes); }

std::vector<double> evaluate(const Interpolant& s, std::span<const double> points) {
    return evaluate_impl<false>(s, points);
}

Interpolant interpolate(const KernelSpec& k, const NodeSet& nodes, std::span<const double> values,
                        const InterpOptions& opts) {
    return interpolate_impl<false>(k, nodes, values, opts);
}

}  // namespace serial

}  // namespace supercon

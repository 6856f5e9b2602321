#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "supercon/kernel.hpp"

namespace supercon {

/// Strictly increasing nodes inside the domain [-C, C].
class NodeSet {
public:
    NodeSet() = default;
    /// Throws DomainError unless points are strictly increasing and within [-C, C].
    NodeSet(std::vector<double> points, double half_width);

    std::span<const double> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    double half_width() const noexcept { return half_width_; }

    /// Largest gap between consecutive nodes; 2C/(N-1) for equidistant nodes.
    double spacing() const noexcept;
    /// max over [-C, C] of the distance to the nearest node.
    double fill_distance() const noexcept;

private:
    std::vector<double> points_;
    double half_width_ = 0.0;
};

struct InterpOptions {
    /// On factorization failure, retry once with 1e-12 K(0) added to the diagonal.
    bool jitter = false;
};

/// Norm-minimal interpolant s(x) = sum_j a_j K(|x - x_j|).
class Interpolant {
public:
    Interpolant(KernelSpec kernel, NodeSet nodes, std::vector<double> values,
                std::vector<double> coefficients, std::vector<std::string> warnings = {});

    const KernelSpec& kernel() const noexcept { return kernel_; }
    const NodeSet& nodes() const noexcept { return nodes_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> coefficients() const noexcept { return coefficients_; }
    /// Non-fatal solver notes, e.g. that diagonal jitter was applied.
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    double operator()(double x) const;

private:
    KernelSpec kernel_;
    NodeSet nodes_;
    std::vector<double> values_;
    std::vector<double> coefficients_;
    std::vector<std::string> warnings_;
};

/// A_ij = K(|x_i - x_j|), rows filled in parallel.
Eigen::MatrixXd assemble_gram(const KernelSpec& k, const NodeSet& nodes);

/// Solves A a = values by unpivoted Cholesky with floor 1e-13 K(0).
/// Throws ConditioningError (carrying the pivot index) when the floor is hit.
Interpolant interpolate(const KernelSpec& k, const NodeSet& nodes, std::span<const double> values,
                        const InterpOptions& opts = {});

/// s at every point, points processed in parallel.
std::vector<double> evaluate(const Interpolant& s, std::span<const double> points);

/// a^T A a, computed as a^T values.
double native_norm_sq(const Interpolant& s);

/// sqrt(f_norm_sq - |s|_K^2) by Pythagoras. Throws InconsistencyError when
/// f_norm_sq falls short of |s|_K^2 by more than 1e-9.
double native_error_norm(double f_norm_sq, const Interpolant& s);

namespace serial {
Eigen::MatrixXd assemble_gram(const KernelSpec& k, const NodeSet& nodes);
std::vector<double> evaluate(const Interpolant& s, std::span<const double> points);
Interpolant interpolate(const KernelSpec& k, const NodeSet& nodes, std::span<const double> values,
                        const InterpOptions& opts = {});
}  // namespace serial

}  // namespace supercon

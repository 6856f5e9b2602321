#pragma once

#include <Eigen/Dense>

namespace supercon {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Lower factor L of an unpivoted A = L L^T.
class CholeskyFactor {
public:
    explicit CholeskyFactor(RowMatrix lower) : lower_(std::move(lower)) {}

    const RowMatrix& lower() const noexcept { return lower_; }
    Eigen::Index size() const noexcept { return lower_.rows(); }

    /// Forward then backward substitution.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

private:
    RowMatrix lower_;
};

/// Factorizes a symmetric matrix, reading only its lower triangle.
/// A pivot d_j = A_jj - |L_j,0:j|^2 with d_j <= floor throws ConditioningError
/// carrying j. Rows below each pivot are computed in parallel.
CholeskyFactor cholesky_factor(const Eigen::MatrixXd& a, double floor);

namespace serial {
CholeskyFactor cholesky_factor(const Eigen::MatrixXd& a, double floor);
}  // namespace serial

}  // namespace supercon

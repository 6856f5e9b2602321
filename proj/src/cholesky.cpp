#include "supercon/cholesky.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "supercon/errors.hpp"

namespace supercon {

namespace {

double pivot_or_throw(const Eigen::MatrixXd& a, const RowMatrix& l, Eigen::Index j, double floor) {
    const double d = a(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > floor)) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "cholesky: pivot %ld = %.3e at or below conditioning floor %.3e",
                      static_cast<long>(j), d, floor);
        throw ConditioningError(static_cast<std::size_t>(j), d, msg);
    }
    return std::sqrt(d);
}

// Same arithmetic as the parallel loop body, so both paths agree bitwise.
inline double below_pivot(const Eigen::MatrixXd& a, const RowMatrix& l, Eigen::Index i,
                          Eigen::Index j, double ljj) {
    return (a(i, j) - l.row(j).head(j).dot(l.row(i).head(j))) / ljj;
}

}  // namespace

Eigen::VectorXd CholeskyFactor::solve(const Eigen::VectorXd& rhs) const {
    const Eigen::Index n = size();
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        y(i) = (rhs(i) - lower_.row(i).head(i).dot(y.head(i))) / lower_(i, i);
    }
    Eigen::VectorXd x(n);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        double s = y(i);
        for (Eigen::Index k = i + 1; k < n; ++k) s -= lower_(k, i) * x(k);
        x(i) = s / lower_(i, i);
    }
    return x;
}

CholeskyFactor cholesky_factor(const Eigen::MatrixXd& a, double floor) {
    const Eigen::Index n = a.rows();
    RowMatrix l = RowMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double ljj = pivot_or_throw(a, l, j, floor);
        l(j, j) = ljj;
#pragma omp parallel for schedule(static) if (n - j > 64)
        for (Eigen::Index i = j + 1; i < n; ++i) {
            l(i, j) = below_pivot(a, l, i, j, ljj);
        }
    }
    return CholeskyFactor(std::move(l));
}

namespace serial {

CholeskyFactor cholesky_factor(const Eigen::MatrixXd& a, double floor) {
    const Eigen::Index n = a.rows();
    RowMatrix l = RowMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double ljj = pivot_or_throw(a, l, j, floor);
        l(j, j) = ljj;
        for (Eigen::Index i = j + 1; i < n; ++i) l(i, j) = below_pivot(a, l, i, j, ljj);
    }
    return CholeskyFactor(std::move(l));
}

}  // namespace serial

}  // namespace supercon

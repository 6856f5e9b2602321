#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace supercon {

/// Diagonal model space: H_K = { f : sum f_n^2 / kappa_n < inf } with
/// H_0 = l2 and the coordinate basis orthogonal in both.
class WeightedSeqSpace {
public:
    /// Throws DomainError unless all weights are positive and nonincreasing.
    explicit WeightedSeqSpace(std::vector<double> kappa);

    /// kappa_n = n^-4, n = 1..M.
    static WeightedSeqSpace sobolev_like(std::size_t m = 64);
    /// kappa_n = 2^-n, n = 1..M.
    static WeightedSeqSpace analytic_like(std::size_t m = 64);

    std::size_t size() const noexcept { return kappa_.size(); }
    std::span<const double> kappa() const noexcept { return kappa_; }

    double l2_norm(std::span<const double> f) const;
    double native_norm(std::span<const double> f) const;

private:
    std::vector<double> kappa_;
};

/// Membership mask for a subset of coordinates.
struct IndexSubset {
    std::vector<bool> contains;

    static IndexSubset all(std::size_t m) { return {std::vector<bool>(m, true)}; }
    static IndexSubset none(std::size_t m) { return {std::vector<bool>(m, false)}; }
};

/// Zeroes coordinates outside S: the H_K-orthogonal projection onto span{e_n : n in S}.
std::vector<double> seq_project(const WeightedSeqSpace& space, std::span<const double> f, const IndexSubset& s);

struct BoundCheck {
    double lhs;  // |f - Pf|_l2
    double eps;  // max over n not in S of sqrt(kappa_n)
    double rhs;
    bool holds;  // lhs <= rhs + 1e-12

    double slack() const noexcept { return rhs - lhs; }
    /// lhs / rhs, or 0 when both vanish.
    double ratio() const noexcept { return rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0); }
};

/// lhs <= eps |f - Pf|_K.
BoundCheck verify_standard_bound(const WeightedSeqSpace& space, std::span<const double> f, const IndexSubset& s);

/// lhs <= eps^2 |v_f|_l2 with v_f = f ./ kappa.
BoundCheck verify_superconvergence(const WeightedSeqSpace& space, std::span<const double> f,
                                   const IndexSubset& s);

struct TrialReport {
    std::size_t trials = 0;
    std::size_t standard_pass = 0;
    std::size_t super_pass = 0;
    double min_slack = INFINITY;
    double max_ratio_standard = 0.0;
    double max_ratio_super = 0.0;
    /// Description of the first violation, if any.
    std::optional<std::string> counterexample;

    bool all_pass() const noexcept { return standard_pass == trials && super_pass == trials; }
};

/// Seeded random (f, S) pairs. Trial t draws from its own generator seeded
/// from (seed, t), so trials are independent of evaluation order.
TrialReport run_trials(const WeightedSeqSpace& space, std::size_t trials, std::uint64_t seed);

/// f = e_j for the excluded index j of largest weight; both bounds hold with equality.
struct ExtremalCase {
    BoundCheck standard;
    BoundCheck super;
};
ExtremalCase extremal_case(const WeightedSeqSpace& space, std::size_t j);

}  // namespace supercon

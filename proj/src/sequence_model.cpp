#include "supercon/sequence_model.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "supercon/errors.hpp"

namespace supercon {

WeightedSeqSpace::WeightedSeqSpace(std::vector<double> kappa) : kappa_(std::move(kappa)) {
    for (std::size_t n = 0; n < kappa_.size(); ++n) {
        if (!(kappa_[n] > 0.0)) throw DomainError("WeightedSeqSpace: weights must be positive");
        if (n > 0 && kappa_[n] > kappa_[n - 1]) throw DomainError("WeightedSeqSpace: weights must be nonincreasing");
    }
}

WeightedSeqSpace WeightedSeqSpace::sobolev_like(std::size_t m) {
    std::vector<double> k(m);
    for (std::size_t n = 0; n < m; ++n) k[n] = std::pow(static_cast<double>(n + 1), -4.0);
    return WeightedSeqSpace(std::move(k));
}

WeightedSeqSpace WeightedSeqSpace::analytic_like(std::size_t m) {
    std::vector<double> k(m);
    for (std::size_t n = 0; n < m; ++n) k[n] = std::ldexp(1.0, -static_cast<int>(n + 1));
    return WeightedSeqSpace(std::move(k));
}

double WeightedSeqSpace::l2_norm(std::span<const double> f) const {
    double s = 0.0;
    for (double v : f) s += v * v;
    return std::sqrt(s);
}

double WeightedSeqSpace::native_norm(std::span<const double> f) const {
    double s = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) s += f[n] * f[n] / kappa_[n];
    return std::sqrt(s);
}

namespace {

void check_sizes(const WeightedSeqSpace& space, std::span<const double> f, const IndexSubset& s) {
    if (f.size() != space.size() || s.contains.size() != space.size()) {
        throw DomainError("sequence model: vector and subset must have length M");
    }
}

struct Residual {
    std::vector<double> r;
    double eps;
};

Residual residual(const WeightedSeqSpace& space, std::span<const double> f, const IndexSubset& s) {
    check_sizes(space, f, s);
    Residual out{std::vector<double>(f.size(), 0.0), 0.0};
    for (std::size_t n = 0; n < f.size(); ++n) {
        if (s.contains[n]) continue;
        out.r[n] = f[n];
        out.eps = std::max(out.eps, std::sqrt(space.kappa()[n]));
    }
    return out;
}

}  // namespace

std::vector<double> seq_project(const WeightedSeqSpace& space, std::span<const double> f, const IndexSubset& s) {
    check_sizes(space, f, s);
    std::vector<double> out(f.begin(), f.end());
    for (std::size_t n = 0; n < out.size(); ++n) {
        if (!s.contains[n]) out[n] = 0.0;
    }
    return out;
}

BoundCheck verify_standard_bound(const WeightedSeqSpace& space, std::span<const double> f, const IndexSubset& s) {
    const Residual res = residual(space, f, s);
    const double lhs = space.l2_norm(res.r);
    const double rhs = res.eps * space.native_norm(res.r);
    return {lhs, res.eps, rhs, lhs <= rhs + 1e-12};
}

BoundCheck verify_superconvergence(const WeightedSeqSpace& space, std::span<const double> f,
                                   const IndexSubset& s) {
    const Residual res = residual(space, f, s);
    std::vector<double> v(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) v[n] = f[n] / space.kappa()[n];
    const double lhs = space.l2_norm(res.r);
    const double rhs = res.eps * res.eps * space.l2_norm(v);
    return {lhs, res.eps, rhs, lhs <= rhs + 1e-12};
}

TrialReport run_trials(const WeightedSeqSpace& space, std::size_t trials, std::uint64_t seed) {
    TrialReport report;
    report.trials = trials;
    const std::size_t m = space.size();
    for (std::size_t t = 0; t < trials; ++t) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss;
        std::uniform_real_distribution<double> unit;

        // f_n = kappa_n^alpha g_n: alpha >= 1 keeps v_f in l2 with room to spare.
        const double alpha = 1.0 + unit(rng);
        const double keep = unit(rng);
        std::vector<double> f(m);
        IndexSubset s = IndexSubset::none(m);
        for (std::size_t n = 0; n < m; ++n) {
            f[n] = std::pow(space.kappa()[n], alpha) * gauss(rng);
            s.contains[n] = unit(rng) < keep;
        }

        const BoundCheck std_check = verify_standard_bound(space, f, s);
        const BoundCheck sup_check = verify_superconvergence(space, f, s);
        report.standard_pass += std_check.holds;
        report.super_pass += sup_check.holds;
        report.min_slack = std::min({report.min_slack, std_check.slack(), sup_check.slack()});
        report.max_ratio_standard = std::max(report.max_ratio_standard, std_check.ratio());
        report.max_ratio_super = std::max(report.max_ratio_super, sup_check.ratio());
        if ((!std_check.holds || !sup_check.holds) && !report.counterexample) {
            std::ostringstream os;
            os.precision(17);
            os << "trial " << t << ": standard lhs=" << std_check.lhs << " rhs=" << std_check.rhs
               << ", super lhs=" << sup_check.lhs << " rhs=" << sup_check.rhs;
            report.counterexample = os.str();
        }
    }
    return report;
}

ExtremalCase extremal_case(const WeightedSeqSpace& space, std::size_t j) {
    const std::size_t m = space.size();
    if (j >= m) throw DomainError("extremal_case: index out of range");
    // Excluding exactly {j, ..., M-1} makes kappa_j the largest excluded weight.
    IndexSubset s = IndexSubset::all(m);
    for (std::size_t n = j; n < m; ++n) s.contains[n] = false;
    std::vector<double> f(m, 0.0);
    f[j] = 1.0;
    return {verify_standard_bound(space, f, s), verify_superconvergence(space, f, s)};
}

}  // namespace supercon

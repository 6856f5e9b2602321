#include "supercon/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>

#include "supercon/errors.hpp"

namespace supercon {

NodeSet equidistant_nodes(double half_width, std::size_t n) {
    if (n < 2) throw DomainError("equidistant_nodes: need N >= 2");
    if (!(half_width > 0.0)) throw DomainError("equidistant_nodes: C must be positive");
    std::vector<double> pts(n);
    const double step = 2.0 * half_width / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) pts[i] = -half_width + step * static_cast<double>(i);
    pts.back() = half_width;
    return NodeSet(std::move(pts), half_width);
}

std::vector<double> uniform_grid(double half_width, std::size_t n) {
    if (n < 2) throw DomainError("uniform_grid: need at least 2 points");
    const NodeSet pts = equidistant_nodes(half_width, n);
    return {pts.points().begin(), pts.points().end()};
}

double rms_error(const RealFunction& reference, const Interpolant& s, std::span<const double> grid) {
    if (grid.empty()) throw DomainError("rms_error: empty grid");
    const std::vector<double> sv = evaluate(s, grid);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double e = sv[i] - reference(grid[i]);
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(grid.size()));
}

namespace {

double ls_slope(std::span<const std::pair<double, double>> pts) {
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxy / sxx;
}

// Pairs (log x, log e) ordered coarse to fine; keeps the finest window.
double windowed_fit(std::vector<std::pair<double, double>> usable, bool full_ladder) {
    if (usable.size() < 2) throw InsufficientDataError("rate fit needs at least two usable levels");
    const std::size_t levels = usable.size();
    const std::size_t keep = full_ladder ? levels : std::min(levels, (levels + 1) / 2 + 1);
    std::vector<std::pair<double, double>> tail(usable.end() - static_cast<std::ptrdiff_t>(keep), usable.end());
    return ls_slope(tail);
}

std::vector<std::pair<double, double>> usable_pairs(std::span<const double> x, std::span<const double> e) {
    if (x.size() != e.size()) throw DomainError("rate fit: length mismatch");
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !std::isfinite(e[i]) || e[i] < kFitFloor) continue;
        out.emplace_back(std::log(x[i]), std::log(e[i]));
    }
    return out;
}

}  // namespace

double fit_rate(std::span<const double> h, std::span<const double> e, bool full_ladder) {
    auto pts = usable_pairs(h, e);
    std::ranges::sort(pts, [](const auto& p, const auto& q) { return p.first > q.first; });
    return windowed_fit(std::move(pts), full_ladder);
}

double fit_decay_exponent(std::span<const double> n, std::span<const double> e, bool full_ladder) {
    auto pts = usable_pairs(n, e);
    std::ranges::sort(pts, [](const auto& p, const auto& q) { return p.first < q.first; });
    return windowed_fit(std::move(pts), full_ladder);
}

void validate(const RateStudyConfig& c) {
    if (!(c.half_width > 0.0)) throw DomainError("rate study: C must be positive");
    if (!(c.interior_margin >= 0.0) || !(c.interior_margin < c.half_width)) {
        throw DomainError("rate study: need 0 <= margin < C");
    }
    if (c.node_counts.empty()) throw DomainError("rate study: empty node ladder");
    for (std::size_t i = 0; i < c.node_counts.size(); ++i) {
        if (c.node_counts[i] < 2) throw DomainError("rate study: node counts must be >= 2");
        if (i > 0 && c.node_counts[i] <= c.node_counts[i - 1]) {
            throw DomainError("rate study: node counts must be increasing");
        }
    }
    if (c.grid_size < 10 * c.node_counts.back()) {
        throw DomainError("rate study: grid size must be at least 10x the largest node count");
    }
}

namespace {

template <bool Parallel>
RateRow compute_row(const RateStudyConfig& c, const RealFunction& reference, std::optional<double> f_norm_sq,
                    std::size_t n, std::span<const double> grid, std::span<const double> exact) {
    const NodeSet nodes = equidistant_nodes(c.half_width, n);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = reference(nodes.points()[i]);

    const InterpOptions opts{c.jitter};
    const Interpolant s = Parallel ? interpolate(c.kernel, nodes, values, opts)
                                   : serial::interpolate(c.kernel, nodes, values, opts);
    const std::vector<double> sv = Parallel ? evaluate(s, grid) : serial::evaluate(s, grid);

    const double inner = c.half_width - c.interior_margin;
    double sum_all = 0.0;
    double sum_in = 0.0;
    double max_all = 0.0;
    double max_in = 0.0;
    std::size_t count_in = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double e = sv[i] - exact[i];
        sum_all += e * e;
        max_all = std::max(max_all, std::abs(e));
        if (std::abs(grid[i]) <= inner + 1e-12) {
            sum_in += e * e;
            max_in = std::max(max_in, std::abs(e));
            ++count_in;
        }
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return RateRow{n,
                   nodes.spacing(),
                   std::sqrt(sum_all / static_cast<double>(grid.size())),
                   count_in ? std::sqrt(sum_in / static_cast<double>(count_in)) : nan,
                   max_all,
                   count_in ? max_in : nan,
                   f_norm_sq ? native_error_norm(*f_norm_sq, s) : nan};
}

template <typename T>
std::optional<T> try_fit(auto&& fn) {
    try {
        return fn();
    } catch (const InsufficientDataError&) {
        return std::nullopt;
    }
}

void attach_rates(RateStudy& study) {
    std::vector<double> h;
    std::vector<double> eg;
    std::vector<double> ei;
    for (const auto& r : study.rows) {
        h.push_back(r.h);
        eg.push_back(r.rms_global);
        ei.push_back(r.rms_interior);
    }
    study.global_rate = try_fit<double>([&] { return fit_rate(h, eg); });
    study.interior_rate = try_fit<double>([&] { return fit_rate(h, ei); });
    study.global_rate_full = try_fit<double>([&] { return fit_rate(h, eg, true); });
    study.interior_rate_full = try_fit<double>([&] { return fit_rate(h, ei, true); });
}

template <bool Parallel>
RateStudy rate_study_impl(const RateStudyConfig& c, const RealFunction& reference, std::optional<double> f_norm_sq) {
    validate(c);
    const std::vector<double> grid = uniform_grid(c.half_width, c.grid_size);
    std::vector<double> exact(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) exact[i] = reference(grid[i]);

    const std::size_t levels = c.node_counts.size();
    std::vector<RateRow> rows(levels);
    std::vector<std::exception_ptr> failures(levels);

    // Largest N first so the expensive rows start early.
#pragma omp parallel for schedule(dynamic, 1) if (Parallel)
    for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(levels) - 1; k >= 0; --k) {
        try {
            rows[k] = compute_row<Parallel>(c, reference, f_norm_sq, c.node_counts[k], grid, exact);
        } catch (...) {
            failures[k] = std::current_exception();
        }
    }

    for (std::size_t k = 0; k < levels; ++k) {
        if (!failures[k]) continue;
        try {
            std::rethrow_exception(failures[k]);
        } catch (const ConditioningError& e) {
            throw ConditioningError(e.pivot_index(), e.pivot(),
                                    "N=" + std::to_string(c.node_counts[k]) + ": " + e.what());
        }
    }

    RateStudy study{c, std::move(rows), {}, {}, {}, {}};
    attach_rates(study);
    return study;
}

}  // namespace

RateStudy run_rate_study(const RateStudyConfig& config, const RealFunction& reference,
                         std::optional<double> f_norm_sq) {
    return rate_study_impl<true>(config, reference, f_norm_sq);
}

std::vector<double> error_profile(const RateStudyConfig& c, const RealFunction& reference, std::size_t n,
                                  std::span<const double> grid) {
    const NodeSet nodes = equidistant_nodes(c.half_width, n);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = reference(nodes.points()[i]);
    const Interpolant s = interpolate(c.kernel, nodes, values, InterpOptions{c.jitter});
    std::vector<double> e = evaluate(s, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) e[i] -= reference(grid[i]);
    return e;
}

double native_error_floor(double f_norm_sq) {
    return std::sqrt(16.0 * std::numeric_limits<double>::epsilon() * std::max(f_norm_sq, 0.0));
}

NativeDecay native_decay_study(const RateStudyConfig& config, const RealFunction& reference, double f_norm_sq) {
    NativeDecay out{run_rate_study(config, reference, f_norm_sq), std::nullopt, false};
    const double floor = native_error_floor(f_norm_sq);
    std::vector<double> n;
    std::vector<double> e;
    for (const auto& r : out.study.rows) {
        n.push_back(static_cast<double>(r.n));
        e.push_back(r.native_err < floor ? 0.0 : r.native_err);
    }
    out.degenerate = std::ranges::all_of(e, [](double v) { return v < kFitFloor; });
    if (!out.degenerate) out.exponent = try_fit<double>([&] { return fit_decay_exponent(n, e); });
    return out;
}

double bad_part_sup_bound(const KernelSpec& k, double v_outside_norm, double R) {
    if (v_outside_norm < 0.0) throw DomainError("bad_part_sup_bound: norm must be >= 0");
    return v_outside_norm * std::sqrt(tail_energy(k, R));
}

namespace serial {

RateStudy run_rate_study(const RateStudyConfig& config, const RealFunction& reference,
                         std::optional<double> f_norm_sq) {
    return rate_study_impl<false>(config, reference, f_norm_sq);
}

}  // namespace serial

}  // namespace supercon

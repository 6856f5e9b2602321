#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "supercon/interp.hpp"
#include "supercon/kernel.hpp"

namespace supercon {

using RealFunction = std::function<double(double)>;

/// N equidistant nodes on [-C, C], endpoints included. Throws DomainError for N < 2.
NodeSet equidistant_nodes(double half_width, std::size_t n);

/// n equispaced points on [-C, C].
std::vector<double> uniform_grid(double half_width, std::size_t n);

/// sqrt(mean((s - reference)^2)) over the grid.
double rms_error(const RealFunction& reference, const Interpolant& s, std::span<const double> grid);

/// Errors below this are treated as roundoff and left out of fits.
inline constexpr double kFitFloor = 1e-13;

/// Least-squares slope of log e against log h over the finest ceil(L/2)+1
/// of the L usable levels (L = all usable when full_ladder is set).
/// Throws InsufficientDataError with fewer than two usable pairs.
double fit_rate(std::span<const double> h, std::span<const double> e, bool full_ladder = false);

/// Slope of log e against log N, over the largest ceil(L/2)+1 usable N.
double fit_decay_exponent(std::span<const double> n, std::span<const double> e, bool full_ladder = false);

struct RateStudyConfig {
    KernelSpec kernel{2};
    double half_width = 1.2;
    std::vector<std::size_t> node_counts{11, 21, 41, 81, 161};
    double interior_margin = 0.4;
    std::size_t grid_size = 2001;
    bool jitter = false;
};

struct RateRow {
    std::size_t n;
    double h;
    double rms_global;
    double rms_interior;
    double max_global;
    double max_interior;
    /// NaN when no native norm of the reference is supplied.
    double native_err;
};

struct RateStudy {
    RateStudyConfig config;
    std::vector<RateRow> rows;
    /// Empty when the fit has too few usable levels.
    std::optional<double> global_rate;
    std::optional<double> interior_rate;
    std::optional<double> global_rate_full;
    std::optional<double> interior_rate_full;
};

/// Validates config: increasing node counts >= 2, 0 <= margin < C,
/// grid_size >= 10 * max N.
void validate(const RateStudyConfig& config);

/// One interpolation per node count, rows computed in parallel and
/// assembled by ascending N. ConditioningError is rethrown naming N.
RateStudy run_rate_study(const RateStudyConfig& config, const RealFunction& reference,
                         std::optional<double> f_norm_sq = std::nullopt);

/// Pointwise error s - reference on the grid for the given node count.
std::vector<double> error_profile(const RateStudyConfig& config, const RealFunction& reference, std::size_t n,
                                  std::span<const double> grid);

struct NativeDecay {
    RateStudy study;
    /// Slope of log |f - s|_K against log N; empty when degenerate.
    std::optional<double> exponent;
    /// Every native error sits below the fit floor.
    bool degenerate = false;
};

/// sqrt(16 eps f_norm_sq): below this the Pythagoras difference is roundoff.
double native_error_floor(double f_norm_sq);

/// Native errors under native_error_floor count as zero; degenerate when all do.
NativeDecay native_decay_study(const RateStudyConfig& config, const RealFunction& reference, double f_norm_sq);

/// v_outside_norm * sqrt(tail_energy(k, R)): bounds |K * v| at points at
/// distance >= R from the support of v.
double bad_part_sup_bound(const KernelSpec& k, double v_outside_norm, double R);

namespace serial {
RateStudy run_rate_study(const RateStudyConfig& config, const RealFunction& reference,
                         std::optional<double> f_norm_sq = std::nullopt);
}  // namespace serial

}  // namespace supercon

#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "supercon/closed_forms.hpp"
#include "supercon/errors.hpp"
#include "supercon/experiments.hpp"
#include "supercon/mercer.hpp"
#include "supercon/output.hpp"
#include "supercon/sequence_model.hpp"

namespace supercon::app {

namespace fs = std::filesystem;

KernelSpec parse_kernel(const std::string& text) {
    const std::string prefix = "matern:";
    if (text.rfind(prefix, 0) != 0) throw DomainError("kernel spec must start with 'matern:'");
    int m = 0;
    int d = 1;
    bool paper = false;
    bool have_m = false;
    std::stringstream fields(text.substr(prefix.size()));
    std::string field;
    while (std::getline(fields, field, ',')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw DomainError("kernel spec field '" + field + "' lacks '='");
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        auto to_int = [&](const std::string& v) {
            std::size_t used = 0;
            int out = 0;
            try {
                out = std::stoi(v, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != v.size()) throw DomainError("kernel spec: '" + v + "' is not an integer");
            return out;
        };
        if (key == "m") {
            m = to_int(value);
            have_m = true;
        } else if (key == "d") {
            d = to_int(value);
        } else if (key == "amp") {
            if (value == "paper") {
                paper = true;
            } else if (value != "unit") {
                throw DomainError("kernel spec: amp must be 'paper' or 'unit'");
            }
        } else {
            throw DomainError("kernel spec: unknown field '" + key + "'");
        }
    }
    if (!have_m) throw DomainError("kernel spec: m is required");
    return paper ? KernelSpec::paper_normalized(m, d) : KernelSpec(m, d);
}

namespace {

std::string fixed(double v, int digits = 4) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

std::string sci(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

std::string rate_text(const std::optional<double>& r) { return r ? fixed(*r) : std::string("n/a"); }

struct Common {
    std::string out_dir = "./out";
    std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

struct RatesArgs {
    Common common;
    std::string kernel = "matern:m=2";
    double half_width = 1.2;
    double margin = 0.4;
    std::vector<std::size_t> nodes{11, 21, 41, 81, 161};
    std::size_t grid = 0;
    bool jitter = false;
};

std::size_t default_grid(std::size_t max_n) { return std::max<std::size_t>(2001, 10 * max_n + 1); }

/// Native norm of f_exact in the space of k when known in closed form.
std::optional<double> reference_norm_sq(const KernelSpec& k) {
    if (k.m() == 2 && k.d() == 1) return f_native_norm_sq() / k.amplitude();
    return std::nullopt;
}

int cmd_rates(const RatesArgs& a, std::ostream& out, std::ostream& err) {
    RateStudyConfig config;
    config.kernel = parse_kernel(a.kernel);
    config.half_width = a.half_width;
    config.interior_margin = a.margin;
    config.node_counts = a.nodes;
    std::ranges::sort(config.node_counts);
    config.grid_size = a.grid ? a.grid : default_grid(config.node_counts.back());
    config.jitter = a.jitter;
    validate(config);

    const RealFunction reference = [](double x) { return f_exact(x); };
    const std::optional<double> f_norm_sq = reference_norm_sq(config.kernel);
    const RateStudy study = run_rate_study(config, reference, f_norm_sq);

    const fs::path dir(a.common.out_dir);
    CsvTable table({"N", "h", "rms_global", "rms_interior", "native_err"});
    PlotSeries global{"rms_global", {}, {}};
    PlotSeries interior{"rms_interior", {}, {}};
    PlotSeries native{"native_err", {}, {}};
    for (const auto& r : study.rows) {
        const double vals[] = {r.h, r.rms_global, r.rms_interior, r.native_err};
        table.add_row(static_cast<long long>(r.n), vals);
        for (auto* s : {&global, &interior, &native}) s->x.push_back(r.h);
        global.y.push_back(r.rms_global);
        interior.y.push_back(r.rms_interior);
        native.y.push_back(r.native_err);
    }
    write_file_atomic(dir / "rates.csv", table.str());
    std::vector<PlotSeries> series{global, interior};
    if (f_norm_sq) series.push_back(native);
    write_file_atomic(dir / "rates.svg",
                      loglog_svg("Interpolation error on [-" + fixed(a.half_width, 2) + ", " + fixed(a.half_width, 2) + "]",
                                 "h", "error", series));

    const std::size_t n_max = config.node_counts.back();
    const std::vector<double> grid = uniform_grid(config.half_width, config.grid_size);
    const std::vector<double> errors = error_profile(config, reference, n_max, grid);
    CsvTable profile({"x", "error"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double vals[] = {grid[i], errors[i]};
        profile.add_row(vals);
    }
    write_file_atomic(dir / ("error_N" + std::to_string(n_max) + ".csv"), profile.str());

    if (!study.global_rate || !study.interior_rate) {
        err << "error: rate fit needs at least two usable levels (table written to " << (dir / "rates.csv").string()
            << ")\n";
        return kNumericalError;
    }

    out << "rates kernel=" << config.kernel.to_string() << " C=" << fixed(a.half_width, 3)
        << " margin=" << fixed(a.margin, 3) << ": global=" << rate_text(study.global_rate)
        << " interior=" << rate_text(study.interior_rate) << " (full ladder: global=" << rate_text(study.global_rate_full)
        << " interior=" << rate_text(study.interior_rate_full) << ")";
    if (f_norm_sq) {
        std::vector<double> n;
        std::vector<double> e;
        const double floor = native_error_floor(*f_norm_sq);
        for (const auto& r : study.rows) {
            n.push_back(static_cast<double>(r.n));
            e.push_back(r.native_err < floor ? 0.0 : r.native_err);
        }
        std::optional<double> decay;
        try {
            decay = fit_decay_exponent(n, e);
        } catch (const InsufficientDataError&) {
        }
        out << " native_decay=" << rate_text(decay);
    }
    out << "\n";
    return kOk;
}

struct InterpArgs {
    Common common;
    std::string kernel = "matern:m=2";
    double half_width = 1.2;
    std::size_t nodes = 41;
    std::size_t grid = 0;
    bool jitter = false;
};

int cmd_interp(const InterpArgs& a, std::ostream& out, std::ostream& err) {
    const KernelSpec k = parse_kernel(a.kernel);
    const NodeSet nodes = equidistant_nodes(a.half_width, a.nodes);
    std::vector<double> values;
    for (double x : nodes.points()) values.push_back(f_exact(x));
    const Interpolant s = interpolate(k, nodes, values, InterpOptions{a.jitter});
    for (const auto& w : s.warnings()) err << "warning: " << w << "\n";

    const std::vector<double> grid = uniform_grid(a.half_width, a.grid ? a.grid : default_grid(a.nodes));
    const std::vector<double> sv = evaluate(s, grid);
    CsvTable table({"x", "s", "f", "error"});
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double f = f_exact(grid[i]);
        const double vals[] = {grid[i], sv[i], f, sv[i] - f};
        table.add_row(vals);
        sum += (sv[i] - f) * (sv[i] - f);
    }
    const double h = nodes.spacing();
    CsvTable coef({"x", "coefficient", "coefficient_over_h"});
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double vals[] = {nodes.points()[j], s.coefficients()[j], s.coefficients()[j] / h};
        coef.add_row(vals);
    }
    const fs::path dir(a.common.out_dir);
    write_file_atomic(dir / "interp.csv", table.str());
    write_file_atomic(dir / "coefficients.csv", coef.str());

    out << "interp N=" << a.nodes << " h=" << sci(h) << " rms=" << sci(std::sqrt(sum / grid.size()))
        << " native_norm_sq=" << fixed(native_norm_sq(s), 10);
    if (const auto fn = reference_norm_sq(k)) out << " native_err=" << sci(native_error_norm(*fn, s));
    out << "\n";
    return kOk;
}

struct MercerArgs {
    Common common;
    std::string kernel = "matern:m=1";
    std::vector<double> domain{-1.0, 1.0};
    std::size_t modes = 10;
    std::size_t quad = 200;
};

int cmd_mercer(const MercerArgs& a, std::ostream& out, std::ostream&) {
    if (a.domain.size() != 2 || !(a.domain[0] < a.domain[1])) throw DomainError("--domain needs a,b with a < b");
    const KernelSpec k = parse_kernel(a.kernel);
    const MercerSystem sys = nystrom_eig(k, a.domain[0], a.domain[1], a.quad, a.modes);
    const std::size_t modes = sys.modes();

    CsvTable evals({"n", "kappa"});
    for (std::size_t n = 0; n < modes; ++n) {
        const double v[] = {sys.eigenvalue(n)};
        evals.add_row(static_cast<long long>(n + 1), v);
    }

    std::vector<std::string> header{"x"};
    for (std::size_t n = 0; n < modes; ++n) header.push_back("phi_" + std::to_string(n + 1));
    CsvTable samples(header);
    for (std::size_t q = 0; q < sys.rule().size(); ++q) {
        std::vector<double> row{sys.rule().nodes[q]};
        for (std::size_t n = 0; n < modes; ++n) row.push_back(sys.samples()(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(n)));
        samples.add_row(row);
    }

    CsvTable gram({"j", "l", "value"});
    double max_dev = 0.0;
    for (std::size_t j = 0; j < modes; ++j) {
        for (std::size_t l = 0; l < modes; ++l) {
            const double v = sys.eigenvalue(l) * hk_gram_extended(sys, j, l);
            max_dev = std::max(max_dev, std::abs(v - (j == l ? 1.0 : 0.0)));
            const double row[] = {static_cast<double>(l + 1), v};
            gram.add_row(static_cast<long long>(j + 1), row);
        }
    }

    const double width = a.domain[1] - a.domain[0];
    const std::vector<double> xs = [&] {
        std::vector<double> g(401);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = a.domain[0] - width + 3.0 * width * i / (g.size() - 1);
        return g;
    }();
    std::vector<std::string> ext_header{"x"};
    for (std::size_t n = 0; n < modes; ++n) ext_header.push_back("phiE_" + std::to_string(n + 1));
    std::vector<std::vector<double>> columns;
    for (std::size_t n = 0; n < modes; ++n) columns.push_back(eigen_extend(sys, n, xs));
    CsvTable ext(ext_header);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<double> row{xs[i]};
        for (const auto& c : columns) row.push_back(c[i]);
        ext.add_row(row);
    }

    const fs::path dir(a.common.out_dir);
    write_file_atomic(dir / "eigenvalues.csv", evals.str());
    write_file_atomic(dir / "eigenfunctions.csv", samples.str());
    write_file_atomic(dir / "hk_gram.csv", gram.str());
    write_file_atomic(dir / "extension.csv", ext.str());

    double trace = 0.0;
    for (double v : sys.spectrum()) trace += v;
    out << "mercer kernel=" << k.to_string() << " kappa_1=" << fixed(sys.eigenvalue(0), 6)
        << " trace=" << fixed(trace, 10) << " max|kappa_l (phiE_j,phiE_l)_K - delta|=" << sci(max_dev) << "\n";
    return kOk;
}

struct BcArgs {
    double a = -1.2;
    double b = 1.2;
};

int cmd_bc_check(const BcArgs& args, std::ostream& out, std::ostream&) {
    const Differentiable g = [](double x, int order) { return f_exact(x, order); };
    const BcResiduals r = bc_residuals(g, args.a, args.b);
    const ChainResiduals c = chain_residuals(g, args.a, args.b);
    out << "bc-check a=" << fixed(args.a, 4) << " b=" << fixed(args.b, 4) << "\n";
    out << "two-constraint residuals: f-2f'+f''(a)=" << sci(r.left_value) << " f'-2f''+f'''(a)=" << sci(r.left_slope)
        << " f+2f'+f''(b)=" << sci(r.right_value) << " f'+2f''+f'''(b)=" << sci(r.right_slope)
        << " max=" << sci(r.max_abs()) << "\n";
    out << "equality-chain residuals: f-f'(a)=" << sci(c.left[0]) << " f'-f''(a)=" << sci(c.left[1])
        << " f''-f'''(a)=" << sci(c.left[2]) << " f+f'(b)=" << sci(c.right[0]) << " f'+f''(b)=" << sci(c.right[1])
        << " f''+f'''(b)=" << sci(c.right[2]) << " max=" << sci(c.max_abs()) << "\n";
    return kOk;
}

struct SeqArgs {
    Common common;
    std::size_t trials = 1000;
    std::size_t m = 64;
};

int cmd_seqmodel(const SeqArgs& a, std::ostream& out, std::ostream& err) {
    bool ok = true;
    const std::pair<const char*, WeightedSeqSpace> presets[] = {
        {"sobolev", WeightedSeqSpace::sobolev_like(a.m)},
        {"analytic", WeightedSeqSpace::analytic_like(a.m)},
    };
    for (const auto& [name, space] : presets) {
        const TrialReport r = run_trials(space, a.trials, a.common.seed);
        const ExtremalCase ex = extremal_case(space, space.size() / 2);
        out << "seqmodel " << name << " M=" << a.m << ": standard " << r.standard_pass << "/" << r.trials
            << ", superconvergence " << r.super_pass << "/" << r.trials
            << ", sharpest ratio standard=" << fixed(r.max_ratio_standard, 12)
            << " super=" << fixed(r.max_ratio_super, 12) << ", extremal ratio standard=" << fixed(ex.standard.ratio(), 15)
            << " super=" << fixed(ex.super.ratio(), 15) << "\n";
        if (!r.all_pass()) {
            err << "violation (" << name << "): " << r.counterexample.value_or("?") << "\n";
            ok = false;
        }
        if (std::abs(ex.standard.ratio() - 1.0) > 1e-12 || std::abs(ex.super.ratio() - 1.0) > 1e-12) {
            err << "extremal case (" << name << ") is not sharp\n";
            ok = false;
        }
    }
    return ok ? kOk : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App cli{"Kernel interpolation superconvergence experiments", "supercon"};
    cli.require_subcommand(1);

    RatesArgs rates;
    auto* rates_cmd = cli.add_subcommand("rates", "Global and interior convergence rates for f = K * chi[-1,1]");
    add_common(rates_cmd, rates.common);
    rates_cmd->add_option("--kernel", rates.kernel, "matern:m=<int>[,d=<int>][,amp=paper|unit]")->capture_default_str();
    rates_cmd->add_option("--C", rates.half_width, "Domain half width")->capture_default_str();
    rates_cmd->add_option("--margin", rates.margin, "Interior margin")->capture_default_str();
    rates_cmd->add_option("--nodes", rates.nodes, "Node ladder")->delimiter(',');
    rates_cmd->add_option("--grid", rates.grid, "Evaluation grid size (default max(2001, 10 N + 1))");
    rates_cmd->add_flag("--jitter", rates.jitter, "Retry failed factorizations with diagonal jitter");

    InterpArgs interp;
    auto* interp_cmd = cli.add_subcommand("interp", "Single interpolation of f = K * chi[-1,1]");
    add_common(interp_cmd, interp.common);
    interp_cmd->add_option("--kernel", interp.kernel)->capture_default_str();
    interp_cmd->add_option("--C", interp.half_width)->capture_default_str();
    interp_cmd->add_option("--nodes", interp.nodes, "Number of equidistant nodes")->capture_default_str();
    interp_cmd->add_option("--grid", interp.grid);
    interp_cmd->add_flag("--jitter", interp.jitter);

    MercerArgs mercer;
    auto* mercer_cmd = cli.add_subcommand("mercer", "Nystrom eigensystem, extensions and native-space Gram");
    add_common(mercer_cmd, mercer.common);
    mercer_cmd->add_option("--kernel", mercer.kernel)->capture_default_str();
    mercer_cmd->add_option("--domain", mercer.domain, "a,b")->delimiter(',')->expected(2);
    mercer_cmd->add_option("--modes", mercer.modes)->capture_default_str();
    mercer_cmd->add_option("--quad", mercer.quad, "Gauss-Legendre rule size")->capture_default_str();

    BcArgs bc;
    Common bc_common;
    auto* bc_cmd = cli.add_subcommand("bc-check", "Boundary-condition residuals of f at a and b");
    add_common(bc_cmd, bc_common);
    bc_cmd->add_option("--a", bc.a)->capture_default_str();
    bc_cmd->add_option("--b", bc.b)->capture_default_str();

    SeqArgs seq;
    auto* seq_cmd = cli.add_subcommand("seqmodel", "Randomized check of the sequence-space bounds");
    add_common(seq_cmd, seq.common);
    seq_cmd->add_option("--trials", seq.trials)->capture_default_str();
    seq_cmd->add_option("--M", seq.m, "Sequence length")->capture_default_str();

    std::vector<std::string> storage{"supercon"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        cli.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*rates_cmd) return cmd_rates(rates, out, err);
        if (*interp_cmd) return cmd_interp(interp, out, err);
        if (*mercer_cmd) return cmd_mercer(mercer, out, err);
        if (*bc_cmd) return cmd_bc_check(bc, out, err);
        if (*seq_cmd) return cmd_seqmodel(seq, out, err);
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ConditioningError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const AccuracyError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const TruncationError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const InsufficientDataError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumericalError;
    }
    return kConfigError;
}

}  // namespace supercon::app

// Command-line front end: subcommand dispatch, config resolution, CSV
// artifact emission. Every run writes a manifest.cfg with the fully resolved
// configuration; re-running a subcommand from that manifest reproduces the
// CSV artifacts byte for byte.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "supou/config.hpp"
#include "supou/csv.hpp"
#include "supou/errors.hpp"
#include "supou/growth_lab.hpp"
#include "supou/kernels.hpp"
#include "supou/measures.hpp"
#include "supou/parallel.hpp"
#include "supou/pathsim.hpp"
#include "supou/tail_analytics.hpp"

namespace fs = std::filesystem;
using namespace supou;

namespace {

// Everything the flags can override; counts track what was actually given.
struct CliArgs {
    std::string config_path;
    std::string levy_kind;
    double gamma = 1.0, c = 1.0, z0 = 1.0;
    std::string pi_kind;
    double alpha = 2.0, a = 1.0, b = 2.0, x0 = 1.0, big_m = 10.0;
    double eps = 0.0;
    double prune_tol = 1e-12;
    double horizon = 0.0;
    double burn_in = 0.0;
    bool burn_auto = false;
    std::uint64_t seed = 42;
    int replicates = 32;
    int threads = 0;
    std::string output_dir;
    std::string normalizer;
    double fparam = 1.0;
    double rmin = 1.0, rmax = 1e6;
    int points = 40;
    double integral_k = 1.0;
    std::string integral_side;
    double integral_tmax = 1e12;
    std::vector<double> m_grid;
    std::vector<double> betas;
    int path_points = 1000;
};

struct OptionRefs {
    CLI::Option* levy = nullptr;
    CLI::Option* gamma = nullptr;
    CLI::Option* c = nullptr;
    CLI::Option* z0 = nullptr;
    CLI::Option* pi = nullptr;
    CLI::Option* alpha = nullptr;
    CLI::Option* a = nullptr;
    CLI::Option* b = nullptr;
    CLI::Option* x0 = nullptr;
    CLI::Option* big_m = nullptr;
    CLI::Option* eps = nullptr;
    CLI::Option* prune_tol = nullptr;
    CLI::Option* horizon = nullptr;
    CLI::Option* burn_in = nullptr;
    CLI::Option* burn_auto = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* replicates = nullptr;
    CLI::Option* threads = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* normalizer = nullptr;
    CLI::Option* fparam = nullptr;
    CLI::Option* rmin = nullptr;
    CLI::Option* rmax = nullptr;
    CLI::Option* points = nullptr;
    CLI::Option* integral_k = nullptr;
    CLI::Option* integral_side = nullptr;
    CLI::Option* integral_tmax = nullptr;
    CLI::Option* m_grid = nullptr;
    CLI::Option* betas = nullptr;
    CLI::Option* path_points = nullptr;
};

OptionRefs add_common_options(CLI::App* cmd, CliArgs& args) {
    OptionRefs refs;
    cmd->add_option("--config", args.config_path, "configuration file (key = value lines)");
    refs.levy = cmd->add_option("--levy", args.levy_kind,
                                "jump measure: pareto | exponential | dirac | bounded_infinite "
                                "| slowly_varying");
    refs.gamma = cmd->add_option("--gamma", args.gamma, "pareto tail index");
    refs.c = cmd->add_option("--c", args.c, "exponential rate");
    refs.z0 = cmd->add_option("--z0", args.z0, "dirac atom location");
    refs.pi = cmd->add_option("--pi", args.pi_kind,
                              "mixing measure: gamma | uniform | point_mass | "
                              "inverse_first_moment");
    refs.alpha = cmd->add_option("--alpha", args.alpha, "gamma mixing shape");
    refs.a = cmd->add_option("--a", args.a, "uniform mixing lower endpoint");
    refs.b = cmd->add_option("--b", args.b, "uniform mixing upper endpoint");
    refs.x0 = cmd->add_option("--x0", args.x0, "point mass location");
    refs.big_m = cmd->add_option("--M", args.big_m, "inverse_first_moment truncation");
    refs.eps = cmd->add_option("--eps", args.eps, "small-jump truncation level");
    refs.prune_tol = cmd->add_option("--prune-tol", args.prune_tol, "active-set prune threshold");
    refs.seed = cmd->add_option("--seed", args.seed, "master seed");
    refs.threads = cmd->add_option("--threads", args.threads, "worker threads (0 = auto)");
    refs.out = cmd->add_option("--out", args.output_dir, "output directory");
    return refs;
}

void apply_common_overrides(RunConfig& config, const CliArgs& args, const OptionRefs& refs) {
    if (refs.levy->count() > 0) {
        if (args.levy_kind == "pareto") {
            config.levy = LevyMeasureSpec::pareto(args.gamma);
        } else if (args.levy_kind == "exponential") {
            config.levy = LevyMeasureSpec::exponential(args.c);
        } else if (args.levy_kind == "dirac") {
            config.levy = LevyMeasureSpec::dirac(args.z0);
        } else if (args.levy_kind == "bounded_infinite") {
            config.levy = LevyMeasureSpec::bounded_infinite();
        } else if (args.levy_kind == "slowly_varying") {
            config.levy = LevyMeasureSpec::slowly_varying();
        } else {
            throw ConfigError("--levy: unknown kind '" + args.levy_kind + "'");
        }
    }
    if (refs.pi->count() > 0) {
        if (args.pi_kind == "gamma") {
            config.pi = MixingMeasureSpec::gamma_shape(args.alpha);
        } else if (args.pi_kind == "uniform") {
            config.pi = MixingMeasureSpec::uniform(args.a, args.b);
        } else if (args.pi_kind == "point_mass") {
            config.pi = MixingMeasureSpec::point_mass(args.x0);
        } else if (args.pi_kind == "inverse_first_moment") {
            config.pi = MixingMeasureSpec::inverse_first_moment(args.big_m);
        } else {
            throw ConfigError("--pi: unknown kind '" + args.pi_kind + "'");
        }
    }
    if (refs.eps->count() > 0) {
        if (!(args.eps >= 0.0)) throw ConfigError("eps: must be >= 0");
        config.eps = args.eps;
    }
    if (refs.prune_tol->count() > 0) config.prune_tol = args.prune_tol;
    if (refs.seed->count() > 0) config.seed = args.seed;
    if (refs.threads->count() > 0) config.threads = args.threads;
    if (refs.out->count() > 0) config.output_dir = args.output_dir;
}

RunConfig load_config(const CliArgs& args, const OptionRefs& refs, const std::string& command) {
    RunConfig config;
    if (!args.config_path.empty()) config = parse_config(args.config_path);
    apply_common_overrides(config, args, refs);
    config.command = command;
    return config;
}

const LevyMeasureSpec& need_levy(const RunConfig& config) {
    if (!config.levy) throw ConfigError("levy.kind: required (config key or --levy)");
    return *config.levy;
}

const MixingMeasureSpec& need_pi(const RunConfig& config) {
    if (!config.pi) throw ConfigError("pi.kind: required (config key or --pi)");
    return *config.pi;
}

double need_horizon(const RunConfig& config) {
    if (!config.horizon) throw ConfigError("window.T: required (config key or --T)");
    return *config.horizon;
}

NormalizerSpec need_normalizer(const RunConfig& config) {
    if (!config.normalizer) {
        throw ConfigError("normalizer.family: required (config key or --normalizer)");
    }
    return *config.normalizer;
}

fs::path prepare_output(const RunConfig& config) {
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    return dir;
}

void write_manifest(const fs::path& dir, const RunConfig& resolved,
                    const std::vector<std::string>& notes = {}) {
    std::ofstream out(dir / "manifest.cfg", std::ios::binary);
    if (!out) throw NumericError("cannot write manifest in " + dir.string());
    out << "# supou manifest: re-run with `supou " << resolved.command
        << " --config manifest.cfg`\n";
    for (const auto& note : notes) out << "# " << note << "\n";
    out << emit_config(resolved);
}

double resolve_burn_in(const RunConfig& config, double eps) {
    if (config.burn_in) return *config.burn_in;
    return auto_burn_in(need_levy(config), need_pi(config), eps).burn_in;
}

// --- subcommand bodies ------------------------------------------------------

int run_validate(const RunConfig& config) {
    validate_existence(config);
    const auto& levy = need_levy(config);
    const auto& pi = need_pi(config);
    std::cout << "config ok\n";
    std::cout << "  levy: " << levy.description
              << "  log-moment = " << csv_double(log_moment(levy).value) << "\n";
    std::cout << "  pi:   " << pi.description
              << "  m_-1 = " << csv_double(pi_moment(pi, -1).value)
              << "  m_0 = "
              << (pi_moment(pi, 0).finite ? csv_double(pi_moment(pi, 0).value) : "inf") << "\n";
    const double eps = resolve_eps(config);
    std::cout << "  eps = " << csv_double(eps)
              << "  truncation bias = " << csv_double(truncation_bias(levy, pi, eps)) << "\n";
    return 0;
}

int run_simulate(RunConfig config) {
    validate_existence(config);
    const auto& levy = need_levy(config);
    const auto& pi = need_pi(config);
    const double horizon = need_horizon(config);
    const double eps = resolve_eps(config);
    const double burn = resolve_burn_in(config, eps);

    const SamplePath path =
        generate_atoms(levy, pi, burn, horizon, eps, config.seed, 0, config.prune_tol);

    std::vector<double> grid(config.path_points);
    for (int i = 0; i < config.path_points; ++i) {
        grid[i] = horizon * static_cast<double>(i) / (config.path_points - 1);
    }
    const PathValues values = evaluate_path(path, grid);

    config.eps = eps;
    config.burn_in = burn;
    const fs::path dir = prepare_output(config);
    const double z_star = std::isfinite(jump_mean_above(levy, eps))
                              ? std::numeric_limits<double>::infinity()
                              : 10.0 * std::max(1.0, eps);
    const double burn_bound = burn_in_bound(pi, levy, eps, burn, 0.0, z_star).total();
    write_manifest(dir, config,
                   {"achieved burn_in_bound = " + csv_double(burn_bound),
                    "truncation_bias = " + csv_double(truncation_bias(levy, pi, eps))});

    CsvWriter atoms(dir / "atoms.csv");
    atoms.header({"tau", "xi", "zeta"});
    for (const auto& atom : path.atoms) {
        atoms.row_doubles({atom.tau, atom.xi, atom.zeta});
    }
    CsvWriter path_csv(dir / "path.csv");
    path_csv.header({"t", "X"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        path_csv.row_doubles({grid[i], values.values[i]});
    }

    std::cout << "atoms: " << path.atoms.size() << "\n";
    std::cout << "prune error bound: " << csv_double(values.prune_error_bound) << "\n";
    std::cout << "burn-in B = " << csv_double(burn)
              << " (bound " << csv_double(burn_bound) << ")\n";
    std::cout << "wrote " << (dir / "atoms.csv").string() << ", "
              << (dir / "path.csv").string() << "\n";
    return 0;
}

int run_tails(RunConfig config) {
    const auto& levy = need_levy(config);
    const auto grid = geometric_grid(config.grid_rmin, config.grid_rmax, config.grid_points);
    const TailTable table = eta_lambda_ratio_scan(levy, grid);
    // the dominated-variation diagnostic needs >= 4 decades regardless of
    // the table grid
    const DomVarIndex index =
        domvar_index(levy, geometric_grid(config.grid_rmin, config.grid_rmin * 1e6, 60));

    const fs::path dir = prepare_output(config);
    write_manifest(dir, config);
    CsvWriter csv(dir / "tails.csv");
    csv.header({"r", "lambda_bar", "eta_bar", "ratio"});
    for (std::size_t i = 0; i < table.r.size(); ++i) {
        csv.row_doubles({table.r[i], table.lambda_bar[i], table.eta_bar[i], table.ratio[i]});
    }

    std::cout << "tail table: " << table.r.size() << " levels in [" << csv_double(grid.front())
              << ", " << csv_double(grid.back()) << "]\n";
    std::cout << "dominated variation: " << (index.is_dominated ? "yes" : "no")
              << ", decay condition: " << (index.growth_condition_holds ? "yes" : "no")
              << ", doubling ratio sup = " << csv_double(index.ratio_sup) << "\n";
    std::cout << "wrote " << (dir / "tails.csv").string() << "\n";
    return 0;
}

int run_moments(RunConfig config) {
    validate_existence(config);
    const auto& levy = need_levy(config);
    const auto& pi = need_pi(config);
    const double eps = resolve_eps(config);
    std::vector<double> betas = config.moment_betas;
    if (betas.empty()) betas = {0.5, 1.0, 2.0};

    config.eps = eps;
    config.moment_betas = betas;
    const fs::path dir = prepare_output(config);
    write_manifest(dir, config);

    CsvWriter csv(dir / "moments.csv");
    csv.header({"name", "param", "finite", "value"});
    auto moment_row = [&](const std::string& name, double param, const Moment& m) {
        csv.row({name, csv_double(param), m.finite ? "1" : "0",
                 m.finite ? csv_double(m.value) : ""});
    };
    moment_row("pi.m0", 0.0, pi_moment(pi, 0));
    moment_row("pi.m_minus_1", -1.0, pi_moment(pi, -1));
    moment_row("levy.log_moment", 0.0, log_moment(levy));
    const double mean_above = jump_mean_above(levy, eps);
    moment_row("levy.mean_above_eps", eps, {std::isfinite(mean_above), mean_above});
    moment_row("truncation_bias", eps, {true, truncation_bias(levy, pi, eps)});
    for (const double beta : betas) {
        const bool finite = moment_classifier(levy, beta) == Finiteness::Finite;
        csv.row({"marginal_moment", csv_double(beta), finite ? "1" : "0", ""});
    }

    std::cout << "moment table for " << levy.description << " / " << pi.description << "\n";
    for (const double beta : betas) {
        std::cout << "  E X^" << csv_double(beta) << ": "
                  << (moment_classifier(levy, beta) == Finiteness::Finite ? "finite"
                                                                          : "infinite")
                  << "\n";
    }
    std::cout << "wrote " << (dir / "moments.csv").string() << "\n";
    return 0;
}

int run_integral_test(RunConfig config) {
    const auto& levy = need_levy(config);
    const NormalizerSpec f = need_normalizer(config);

    const auto analytic = integral_test(levy, f, config.integral_k, config.integral_side);
    const auto probe =
        integral_probe(levy, f, config.integral_k, config.integral_side, config.integral_tmax);
    const auto numeric = integral_probe_verdict(probe);

    const fs::path dir = prepare_output(config);
    write_manifest(dir, config);
    CsvWriter csv(dir / "integral_probe.csv");
    csv.header({"t_upper", "partial_integral"});
    for (const auto& point : probe) {
        csv.row_doubles({point.t_upper, point.partial_integral});
    }

    const char* side = config.integral_side == IntegralSide::Lower ? "lower" : "upper";
    std::cout << "integral test (" << side << ", K = " << csv_double(config.integral_k)
              << "): " << (analytic == IntegralVerdict::Diverges ? "diverges" : "converges")
              << "\n";
    std::cout << "numeric probe to t = " << csv_double(probe.back().t_upper) << ": "
              << (numeric == IntegralVerdict::Diverges ? "diverges" : "converges")
              << " (partial integral " << csv_double(probe.back().partial_integral) << ")\n";
    std::cout << "wrote " << (dir / "integral_probe.csv").string() << "\n";
    return 0;
}

int run_growth(RunConfig config) {
    validate_existence(config);
    const auto& levy = need_levy(config);
    const auto& pi = need_pi(config);
    const double horizon = need_horizon(config);
    const NormalizerSpec f = need_normalizer(config);
    const double eps = resolve_eps(config);
    const int threads = resolve_thread_count(config.threads);

    const GrowthReport report =
        empirical_limsup(levy, pi, f, horizon, config.replicates, config.seed, eps, threads,
                         config.burn_in);

    config.eps = eps;
    config.burn_in = report.burn_in;
    const fs::path dir = prepare_output(config);
    write_manifest(dir, config,
                   {"achieved burn_in_bound = " + csv_double(report.burn_in_bound_achieved)});

    CsvWriter blocks(dir / "growth_blocks.csv");
    blocks.header({"replicate", "j", "block_start", "block_max_ratio", "running_max"});
    for (const auto& rep : report.replicates) {
        for (const auto& block : rep.blocks) {
            blocks.row({std::to_string(rep.replicate), std::to_string(block.j),
                        csv_double(block.block_start), csv_double(block.block_max_ratio),
                        csv_double(block.running_max)});
        }
    }
    CsvWriter summary(dir / "growth_summary.csv");
    summary.header({"replicate", "verdict", "terminal_running_max", "prune_error_bound"});
    for (const auto& rep : report.replicates) {
        summary.row({std::to_string(rep.replicate), trend_name(rep.verdict),
                     csv_double(rep.terminal_running_max), csv_double(rep.prune_error_bound)});
    }

    int diverging = 0, vanishing = 0, bounded = 0;
    for (const auto& rep : report.replicates) {
        if (rep.verdict == TrendVerdict::Diverging) ++diverging;
        if (rep.verdict == TrendVerdict::Vanishing) ++vanishing;
        if (rep.verdict == TrendVerdict::BoundedAway) ++bounded;
    }
    std::cout << "verdict: " << trend_name(report.aggregate_verdict) << " (diverging "
              << diverging << ", vanishing " << vanishing << ", bounded-away " << bounded
              << " of " << report.replicates.size() << ")\n";
    std::cout << "blocks j = " << report.j0 << ".." << report.j_last
              << ", burn-in B = " << csv_double(report.burn_in) << " (bound "
              << csv_double(report.burn_in_bound_achieved) << ")\n";
    std::cout << "terminal running max of X/f: median " << csv_double(report.median_terminal)
              << ", range [" << csv_double(report.min_terminal) << ", "
              << csv_double(report.max_terminal) << "]\n";
    std::cout << "wrote " << (dir / "growth_blocks.csv").string() << ", "
              << (dir / "growth_summary.csv").string() << "\n";
    return 0;
}

int run_largexi(RunConfig config) {
    const auto& levy = need_levy(config);
    if (!log_moment(levy).finite) {
        throw ConfigError("existence condition (i) violated: the jump measure " +
                          levy.description + " has an infinite log-moment above 1");
    }
    const double eps = resolve_eps(config);
    const int threads = resolve_thread_count(config.threads);
    std::vector<double> m_grid = config.largexi_m_grid;
    if (m_grid.empty()) {
        m_grid = {std::exp(1.0), std::exp(4.0), std::exp(16.0), std::exp(64.0)};
    }

    const LargeXiTable table =
        largexi_experiment(levy, m_grid, config.replicates, config.seed, eps, threads);

    config.eps = eps;
    config.largexi_m_grid = m_grid;
    const fs::path dir = prepare_output(config);
    write_manifest(dir, config);
    CsvWriter csv(dir / "largexi.csv");
    csv.header({"M", "median_sup", "mean_atoms_in_unit", "expected_atoms_in_unit"});
    for (const auto& row : table.rows) {
        csv.row_doubles(
            {row.truncation, row.median_sup, row.mean_atoms_in_unit, row.expected_atoms_in_unit});
    }

    if (table.bounded_support_warning) {
        std::cout << "warning: bounded jump support; the sup over [0,1] saturates at the "
                     "support end rather than growing without bound\n";
    }
    for (const auto& row : table.rows) {
        std::cout << "M = " << csv_double(row.truncation)
                  << ": median sup = " << csv_double(row.median_sup) << "\n";
    }
    std::cout << "wrote " << (dir / "largexi.csv").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"supOU process simulation and tail/growth analysis"};
    app.require_subcommand(1);

    CliArgs args;
    int exit_code = 0;

    auto wire = [&](CLI::App* cmd, auto body) {
        auto refs = std::make_shared<OptionRefs>(add_common_options(cmd, args));
        cmd->callback([&, refs, body, cmd] {
            RunConfig config = load_config(args, *refs, cmd->get_name());
            exit_code = body(std::move(config), *refs);
        });
        return refs;
    };

    // simulate
    {
        auto* cmd = app.add_subcommand("simulate", "draw atoms and evaluate one sample path");
        auto refs = wire(cmd, [&](RunConfig config, const OptionRefs& r) {
            if (r.horizon->count() > 0) config.horizon = args.horizon;
            if (r.burn_in->count() > 0) config.burn_in = args.burn_in;
            if (r.burn_auto->count() > 0) config.burn_in.reset();
            if (r.path_points->count() > 0) config.path_points = args.path_points;
            return run_simulate(std::move(config));
        });
        refs->horizon = cmd->add_option("--T", args.horizon, "simulation horizon");
        refs->burn_in = cmd->add_option("--B", args.burn_in, "burn-in window length");
        refs->burn_auto = cmd->add_flag("--auto-B", args.burn_auto,
                                        "bisect the burn-in to a 1e-3 bound");
        refs->path_points = cmd->add_option("--grid-points", args.path_points,
                                            "evaluation grid size");
    }
    // tails
    {
        auto* cmd = app.add_subcommand("tails", "tail table: lambda_bar, eta_bar, ratio");
        auto refs = wire(cmd, [&](RunConfig config, const OptionRefs& r) {
            if (r.rmin->count() > 0) config.grid_rmin = args.rmin;
            if (r.rmax->count() > 0) config.grid_rmax = args.rmax;
            if (r.points->count() > 0) config.grid_points = args.points;
            return run_tails(std::move(config));
        });
        refs->rmin = cmd->add_option("--rmin", args.rmin, "grid start (>= 1)");
        refs->rmax = cmd->add_option("--rmax", args.rmax, "grid end");
        refs->points = cmd->add_option("--points", args.points, "grid size");
    }
    // moments
    {
        auto* cmd = app.add_subcommand("moments", "moment functionals and classifications");
        auto refs = wire(cmd, [&](RunConfig config, const OptionRefs& r) {
            if (r.betas->count() > 0) config.moment_betas = args.betas;
            return run_moments(std::move(config));
        });
        refs->betas = cmd->add_option("--beta", args.betas, "moment exponents to classify")
                          ->delimiter(',');
    }
    // integral-test
    {
        auto* cmd = app.add_subcommand("integral-test",
                                       "divergence classification of the growth integral");
        auto refs = wire(cmd, [&](RunConfig config, const OptionRefs& r) {
            if (r.normalizer->count() > 0) {
                if (args.normalizer == "power") {
                    config.normalizer = NormalizerSpec::power(args.fparam);
                } else if (args.normalizer == "log") {
                    config.normalizer = NormalizerSpec::log_t(args.fparam);
                } else if (args.normalizer == "log_over_loglog") {
                    config.normalizer = NormalizerSpec::log_over_loglog(args.fparam);
                } else {
                    throw ConfigError("--normalizer: unknown family '" + args.normalizer + "'");
                }
            }
            if (r.integral_k->count() > 0) config.integral_k = args.integral_k;
            if (r.integral_side->count() > 0) {
                if (args.integral_side == "lower") {
                    config.integral_side = IntegralSide::Lower;
                } else if (args.integral_side == "upper") {
                    config.integral_side = IntegralSide::Upper;
                } else {
                    throw ConfigError("--side: expected lower | upper");
                }
            }
            if (r.integral_tmax->count() > 0) config.integral_tmax = args.integral_tmax;
            return run_integral_test(std::move(config));
        });
        refs->normalizer = cmd->add_option("--normalizer", args.normalizer,
                                           "power | log | log_over_loglog");
        refs->fparam = cmd->add_option("--fparam", args.fparam, "normalizer parameter");
        refs->integral_k = cmd->add_option("--K", args.integral_k, "level constant");
        refs->integral_side = cmd->add_option("--side", args.integral_side, "lower | upper");
        refs->integral_tmax = cmd->add_option("--tmax", args.integral_tmax,
                                              "numeric probe horizon");
    }
    // growth
    {
        auto* cmd = app.add_subcommand("growth", "block-maxima limsup experiment");
        auto refs = wire(cmd, [&](RunConfig config, const OptionRefs& r) {
            if (r.horizon->count() > 0) config.horizon = args.horizon;
            if (r.burn_in->count() > 0) config.burn_in = args.burn_in;
            if (r.burn_auto->count() > 0) config.burn_in.reset();
            if (r.replicates->count() > 0) config.replicates = args.replicates;
            if (r.normalizer->count() > 0) {
                if (args.normalizer == "power") {
                    config.normalizer = NormalizerSpec::power(args.fparam);
                } else if (args.normalizer == "log") {
                    config.normalizer = NormalizerSpec::log_t(args.fparam);
                } else if (args.normalizer == "log_over_loglog") {
                    config.normalizer = NormalizerSpec::log_over_loglog(args.fparam);
                } else {
                    throw ConfigError("--normalizer: unknown family '" + args.normalizer + "'");
                }
            }
            return run_growth(std::move(config));
        });
        refs->horizon = cmd->add_option("--T", args.horizon, "simulation horizon");
        refs->burn_in = cmd->add_option("--B", args.burn_in, "burn-in window length");
        refs->burn_auto = cmd->add_flag("--auto-B", args.burn_auto,
                                        "bisect the burn-in to a 1e-3 bound");
        refs->replicates = cmd->add_option("--replicates", args.replicates, "replicate count");
        refs->normalizer = cmd->add_option("--normalizer", args.normalizer,
                                           "power | log | log_over_loglog");
        refs->fparam = cmd->add_option("--fparam", args.fparam, "normalizer parameter");
    }
    // largexi-demo
    {
        auto* cmd = app.add_subcommand("largexi-demo",
                                       "sup over [0,1] against the mixing-mass truncation M");
        auto refs = wire(cmd, [&](RunConfig config, const OptionRefs& r) {
            if (r.m_grid->count() > 0) config.largexi_m_grid = args.m_grid;
            if (r.replicates->count() > 0) config.replicates = args.replicates;
            return run_largexi(std::move(config));
        });
        refs->m_grid = cmd->add_option("--m-grid", args.m_grid, "truncation levels")
                           ->delimiter(',');
        refs->replicates = cmd->add_option("--replicates", args.replicates, "replicate count");
    }
    // validate
    {
        auto* cmd = app.add_subcommand("validate", "check the existence conditions of a config");
        wire(cmd, [&](RunConfig config, const OptionRefs&) { return run_validate(config); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return 64;
    } catch (const ConfigError& e) {
        std::cerr << "config rejected: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config rejected: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config rejected: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}

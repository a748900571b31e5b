#include "supou/growth_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "supou/errors.hpp"
#include "supou/parallel.hpp"
#include "supou/tail_analytics.hpp"
#include "quad.hpp"

namespace supou {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTrendTol = 0.05;
constexpr double kRatioLogFloor = 1e-300;
constexpr double kBurnInTarget = 1e-3;
constexpr double kBurnInCap = 1e6;

double median_of(std::vector<double> values) {
    if (values.empty()) return kNaN;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

NormalizerSpec NormalizerSpec::power(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("power normalizer needs exponent a > 0");
    return {NormalizerFamily::Power, a, 1.0};
}

NormalizerSpec NormalizerSpec::log_t(double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("log normalizer needs kappa > 0");
    // domain starts at e^2, like the iterated-log family: block maxima taken
    // while f is still near its prefactor scale measure start-up transients,
    // not growth
    return {NormalizerFamily::Log, kappa, std::exp(2.0)};
}

NormalizerSpec NormalizerSpec::log_over_loglog(double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("normalizer needs kappa > 0");
    return {NormalizerFamily::LogOverLogLog, kappa, std::exp(2.0)};
}

double NormalizerSpec::operator()(double t) const {
    if (!(t >= t0)) throw std::domain_error("normalizer evaluated below its domain start t0");
    switch (family) {
        case NormalizerFamily::Power:
            return std::pow(t, param);
        case NormalizerFamily::Log:
            return param * std::log(t);
        case NormalizerFamily::LogOverLogLog: {
            const double lt = std::log(t);
            return param * lt / std::log(lt);
        }
    }
    throw std::logic_error("unknown normalizer family");
}

double NormalizerSpec::monotone_from() const {
    switch (family) {
        case NormalizerFamily::Power:
        case NormalizerFamily::Log:
            return t0;
        case NormalizerFamily::LogOverLogLog:
            return std::max(t0, std::exp(std::exp(1.0)));
    }
    throw std::logic_error("unknown normalizer family");
}

IntegralVerdict integral_test(const LevyMeasureSpec& levy, const NormalizerSpec& f, double K,
                              [[maybe_unused]] IntegralSide side) {
    if (!(K > 0.0)) throw std::domain_error("integral_test requires K > 0");
    switch (levy.kind) {
        case LevyKind::Pareto:
            if (f.family == NormalizerFamily::Power) {
                // lambda_bar(K t^a) ~ K^-g t^-ag: diverges iff a*g <= 1;
                // eta_bar is the same order (Lemma-type sandwich), so the
                // upper side obeys the same rule
                return f.param * levy.param <= 1.0 ? IntegralVerdict::Diverges
                                                   : IntegralVerdict::Converges;
            }
            return IntegralVerdict::Diverges;  // power tail vs log growth
        case LevyKind::Exponential:
            switch (f.family) {
                case NormalizerFamily::Power:
                    return IntegralVerdict::Converges;
                case NormalizerFamily::Log:
                    // e^{-c K kappa log t} = t^{-cK kappa}; eta_bar = E1 is
                    // dominated by lambda_bar, same exponent rule
                    return levy.param * K * f.param <= 1.0 ? IntegralVerdict::Diverges
                                                           : IntegralVerdict::Converges;
                case NormalizerFamily::LogOverLogLog:
                    // exponent c K kappa / loglog t -> 0: eventually above 1/t
                    return IntegralVerdict::Diverges;
            }
            throw std::logic_error("unknown normalizer family");
        case LevyKind::Dirac:
        case LevyKind::BoundedInfinite:
            // f unbounded, tail support bounded: integrand eventually zero
            return IntegralVerdict::Converges;
        case LevyKind::SlowlyVarying:
            // lambda_bar(K f(t)) ~ (log f(t))^-2: never integrable against dt
            return IntegralVerdict::Diverges;
    }
    throw std::logic_error("unknown catalog kind");
}

std::vector<ProbePoint> integral_probe(const LevyMeasureSpec& levy, const NormalizerSpec& f,
                                       double K, IntegralSide side, double t_max) {
    if (!(K > 0.0)) throw std::domain_error("integral_probe requires K > 0");
    if (!(t_max > f.t0 * 10.0)) throw std::domain_error("integral_probe horizon too short");
    auto integrand = [&](double t) {
        const double level = K * f(t);
        double g = lambda_tail(levy, level);
        if (side == IntegralSide::Upper) g += eta_bar(levy, level);
        return g;
    };
    std::vector<ProbePoint> probe;
    double lower = f.t0;
    double partial = 0.0;
    for (double edge = 10.0; edge <= t_max * 1.000001; edge *= 10.0) {
        if (edge <= lower) continue;
        partial += quad::integrate(integrand, lower, edge, 1e-8);
        probe.push_back({edge, partial});
        lower = edge;
    }
    return probe;
}

IntegralVerdict integral_probe_verdict(const std::vector<ProbePoint>& probe) {
    if (probe.size() < 3) throw std::domain_error("probe needs at least 3 decades");
    const double first_increment = probe[0].partial_integral;
    const double last_increment =
        probe.back().partial_integral - probe[probe.size() - 2].partial_integral;
    if (first_increment <= 0.0) return IntegralVerdict::Converges;
    return last_increment >= 0.1 * first_increment ? IntegralVerdict::Diverges
                                                   : IntegralVerdict::Converges;
}

GrowthClassification classify_growth(const LevyMeasureSpec& levy) {
    switch (levy.kind) {
        case LevyKind::Pareto:
            return {GrowthRegime::HeavyDichotomy, NormalizerFamily::Power, 1.0 / levy.param, 0.0,
                    kInf};
        case LevyKind::SlowlyVarying:
            // every power normalizer diverges
            return {GrowthRegime::HeavyDichotomy, NormalizerFamily::Power, kInf, 0.0, kInf};
        case LevyKind::Exponential:
            return {GrowthRegime::ExponentialTail, NormalizerFamily::Log, kNaN,
                    1.0 / levy.param, 2.0 / levy.param};
        case LevyKind::Dirac:
            return {GrowthRegime::BoundedJumps, NormalizerFamily::LogOverLogLog, kNaN, 1.0, 2.0};
        case LevyKind::BoundedInfinite:
            return {GrowthRegime::BoundedJumps, NormalizerFamily::LogOverLogLog, kNaN, 0.0, kInf};
    }
    throw std::logic_error("unknown catalog kind");
}

const char* trend_name(TrendVerdict v) {
    switch (v) {
        case TrendVerdict::Diverging: return "diverging";
        case TrendVerdict::Vanishing: return "vanishing";
        case TrendVerdict::BoundedAway: return "bounded-away";
    }
    return "unknown";
}

double theil_sen_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("theil_sen_slope needs matched series of length >= 2");
    }
    std::vector<double> slopes;
    slopes.reserve(x.size() * (x.size() - 1) / 2);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (x[j] != x[i]) slopes.push_back((y[j] - y[i]) / (x[j] - x[i]));
        }
    }
    if (slopes.empty()) throw std::invalid_argument("theil_sen_slope: degenerate abscissae");
    return median_of(std::move(slopes));
}

namespace {

TrendVerdict verdict_from_blocks(const std::vector<BlockRecord>& blocks) {
    std::vector<double> js, logs;
    js.reserve(blocks.size());
    logs.reserve(blocks.size());
    for (const auto& b : blocks) {
        js.push_back(static_cast<double>(b.j));
        logs.push_back(std::log(std::max(b.block_max_ratio, kRatioLogFloor)));
    }
    const double slope = theil_sen_slope(js, logs);
    if (slope < -kTrendTol) return TrendVerdict::Vanishing;
    if (slope > kTrendTol) return TrendVerdict::Diverging;
    return TrendVerdict::BoundedAway;
}

ReplicateGrowth grow_one_replicate(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi,
                                   const NormalizerSpec& f, double burn_in, double horizon,
                                   double eps, std::uint64_t seed, std::uint64_t replicate,
                                   int j0, int j_last) {
    const SamplePath path = generate_atoms(levy, pi, burn_in, horizon, eps, seed, replicate);
    ActiveSweep sweep(path);

    ReplicateGrowth result;
    result.replicate = replicate;
    result.blocks.reserve(j_last - j0 + 1);

    auto it = std::upper_bound(path.atoms.begin(), path.atoms.end(), std::ldexp(1.0, j0),
                               [](double t, const Atom& a) { return t < a.tau; });
    double running = 0.0;
    for (int j = j0; j <= j_last; ++j) {
        const double start = std::ldexp(1.0, j);
        const double end = std::ldexp(1.0, j + 1);
        double block_max = sweep.value_at(start) / f(start);
        while (it != path.atoms.end() && it->tau <= end) {
            block_max = std::max(block_max, sweep.value_at(it->tau) / f(it->tau));
            ++it;
        }
        running = std::max(running, block_max);
        result.blocks.push_back({j, start, block_max, running});
    }
    result.verdict = verdict_from_blocks(result.blocks);
    result.terminal_running_max = running;
    result.prune_error_bound = sweep.prune_error_bound();
    return result;
}

}  // namespace

GrowthReport empirical_limsup(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi,
                              const NormalizerSpec& f, double horizon, int replicates,
                              std::uint64_t seed, double eps, int threads,
                              std::optional<double> burn_in_override) {
    if (replicates < 1) throw std::invalid_argument("empirical_limsup needs replicates >= 1");
    if (!pi_moment(pi, 0).finite) {
        throw ConfigError("m_0(pi) is infinite: the block-maxima estimator does not apply; "
                          "run the largexi experiment instead");
    }

    const double first_usable = std::max(f.t0, f.monotone_from());
    int j0 = 0;
    while (std::ldexp(1.0, j0) < first_usable) ++j0;
    if (!(horizon >= std::ldexp(1.0, j0 + 4))) {
        throw std::invalid_argument("horizon too short: need T >= 2^(j0+4) for >= 5 dyadic edges");
    }
    int j_last = j0;
    while (std::ldexp(1.0, j_last + 2) <= horizon) ++j_last;  // last block [2^j, 2^{j+1}]

    AutoBurnIn burn;
    if (burn_in_override) {
        burn.burn_in = *burn_in_override;
        const double z_star = std::isfinite(jump_mean_above(levy, eps))
                                  ? std::numeric_limits<double>::infinity()
                                  : 10.0 * std::max(1.0, eps);
        burn.achieved_bound =
            burn_in_bound(pi, levy, eps, burn.burn_in, 0.0, z_star).total();
    } else {
        burn = auto_burn_in(levy, pi, eps, kBurnInTarget, kBurnInCap);
    }

    GrowthReport report;
    report.f = f;
    report.j0 = j0;
    report.j_last = j_last;
    report.burn_in = burn.burn_in;
    report.burn_in_bound_achieved = burn.achieved_bound;
    report.replicates.resize(replicates);

    parallel_for(static_cast<std::size_t>(replicates), threads, [&](std::size_t r) {
        report.replicates[r] = grow_one_replicate(levy, pi, f, burn.burn_in, horizon, eps, seed,
                                                  static_cast<std::uint64_t>(r), j0, j_last);
    });

    int count_div = 0, count_van = 0, count_bound = 0;
    std::vector<double> terminals;
    terminals.reserve(replicates);
    for (const auto& rep : report.replicates) {
        switch (rep.verdict) {
            case TrendVerdict::Diverging: ++count_div; break;
            case TrendVerdict::Vanishing: ++count_van; break;
            case TrendVerdict::BoundedAway: ++count_bound; break;
        }
        terminals.push_back(rep.terminal_running_max);
    }
    if (count_div > count_van && count_div > count_bound) {
        report.aggregate_verdict = TrendVerdict::Diverging;
    } else if (count_van > count_div && count_van > count_bound) {
        report.aggregate_verdict = TrendVerdict::Vanishing;
    } else {
        report.aggregate_verdict = TrendVerdict::BoundedAway;
    }
    report.min_terminal = *std::min_element(terminals.begin(), terminals.end());
    report.max_terminal = *std::max_element(terminals.begin(), terminals.end());
    report.median_terminal = median_of(std::move(terminals));
    return report;
}

LargeXiTable largexi_experiment(const LevyMeasureSpec& levy, const std::vector<double>& m_grid,
                                int replicates, std::uint64_t seed, double eps, int threads) {
    if (m_grid.empty()) throw std::invalid_argument("largexi_experiment needs a truncation grid");
    for (std::size_t i = 1; i < m_grid.size(); ++i) {
        if (!(m_grid[i] > m_grid[i - 1])) {
            throw std::invalid_argument("truncation grid must be strictly increasing");
        }
    }
    if (replicates < 1) throw std::invalid_argument("largexi_experiment needs replicates >= 1");

    LargeXiTable table;
    table.bounded_support_warning = std::isfinite(support_sup(levy));
    table.rows.resize(m_grid.size());

    const double tail_eps = lambda_mass_above(levy, eps);
    for (std::size_t m_index = 0; m_index < m_grid.size(); ++m_index) {
        const MixingMeasureSpec pi = MixingMeasureSpec::inverse_first_moment(m_grid[m_index]);
        const AutoBurnIn burn = auto_burn_in(levy, pi, eps, kBurnInTarget, kBurnInCap);

        std::vector<double> sups(replicates);
        std::vector<double> atom_counts(replicates);
        parallel_for(static_cast<std::size_t>(replicates), threads, [&](std::size_t r) {
            const std::uint64_t stream = m_index * static_cast<std::uint64_t>(replicates) + r;
            const SamplePath path =
                generate_atoms(levy, pi, burn.burn_in, 1.0, eps, seed, stream);
            sups[r] = path_sup(path, 0.0, 1.0);
            const auto begin =
                std::lower_bound(path.atoms.begin(), path.atoms.end(), 0.0,
                                 [](const Atom& a, double t) { return a.tau < t; });
            atom_counts[r] = static_cast<double>(std::distance(begin, path.atoms.end()));
        });

        LargeXiRow& row = table.rows[m_index];
        row.truncation = m_grid[m_index];
        row.median_sup = median_of(sups);
        double mean = 0.0;
        for (const double c : atom_counts) mean += c;
        row.mean_atoms_in_unit = mean / replicates;
        row.expected_atoms_in_unit = std::log(m_grid[m_index]) * tail_eps;
    }
    return table;
}

}  // namespace supou

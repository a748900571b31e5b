#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "supou/measures.hpp"
#include "supou/pathsim.hpp"

namespace supou {

enum class NormalizerFamily { Power, Log, LogOverLogLog };

// Normalizing function f for the growth ratio X(t)/f(t).
struct NormalizerSpec {
    NormalizerFamily family = NormalizerFamily::Power;
    double param = 1.0;  // exponent a, or prefactor kappa
    double t0 = 1.0;     // domain start

    static NormalizerSpec power(double a);
    static NormalizerSpec log_t(double kappa);
    static NormalizerSpec log_over_loglog(double kappa);

    double operator()(double t) const;

    // Smallest t from which X(t)/f(t) is guaranteed decreasing between
    // arrivals (f nondecreasing there); log t / log log t only turns
    // increasing past e^e.
    double monotone_from() const;

    bool operator==(const NormalizerSpec&) const = default;
};

enum class IntegralSide { Lower, Upper };
enum class IntegralVerdict { Diverges, Converges };

// Analytic divergence classification of
//   lower: integral of lambda_bar(K f(t)) dt
//   upper: integral of lambda_bar(K f(t)) + eta_bar(K f(t)) dt.
// Exact for the closed catalog; on it the eta term never flips a verdict, so
// both sides obey the same rule.
IntegralVerdict integral_test(const LevyMeasureSpec& levy, const NormalizerSpec& f, double K,
                              IntegralSide side);

// Numeric cross-check: partial integrals accumulated to decade edges up to
// t_max (default 1e12).
struct ProbePoint {
    double t_upper = 0.0;
    double partial_integral = 0.0;
};

std::vector<ProbePoint> integral_probe(const LevyMeasureSpec& levy, const NormalizerSpec& f,
                                       double K, IntegralSide side, double t_max = 1e12);

// Trend read of a probe: diverges when the last decade still contributes on
// the order of the first one. A heuristic for clear-cut cases; near the
// regime boundary only the analytic test decides.
IntegralVerdict integral_probe_verdict(const std::vector<ProbePoint>& probe);

enum class GrowthRegime { HeavyDichotomy, ExponentialTail, BoundedJumps };

// Growth-regime summary per catalog member. critical_exponent applies to the
// heavy regime (power normalizer; +inf when every power diverges); band is
// the proven limsup interval where the theory pins one. For Dirac jumps the
// lower endpoint 1 stands for sup of e^{-epsilon} over admissible epsilon;
// it requires the mixing measure to charge (0, epsilon) for each epsilon.
struct GrowthClassification {
    GrowthRegime regime = GrowthRegime::HeavyDichotomy;
    NormalizerFamily normalizer = NormalizerFamily::Power;
    double critical_exponent = 0.0;
    double band_lo = 0.0;
    double band_hi = 0.0;
};

GrowthClassification classify_growth(const LevyMeasureSpec& levy);

enum class TrendVerdict { Diverging, Vanishing, BoundedAway };
const char* trend_name(TrendVerdict v);

// Median of pairwise slopes; robust to single extreme blocks.
double theil_sen_slope(const std::vector<double>& x, const std::vector<double>& y);

struct BlockRecord {
    int j = 0;
    double block_start = 0.0;
    double block_max_ratio = 0.0;
    double running_max = 0.0;
};

struct ReplicateGrowth {
    std::uint64_t replicate = 0;
    std::vector<BlockRecord> blocks;
    TrendVerdict verdict = TrendVerdict::BoundedAway;
    double terminal_running_max = 0.0;
    double prune_error_bound = 0.0;
};

struct GrowthReport {
    NormalizerSpec f;
    int j0 = 0;
    int j_last = 0;
    double burn_in = 0.0;
    double burn_in_bound_achieved = 0.0;
    std::vector<ReplicateGrowth> replicates;
    TrendVerdict aggregate_verdict = TrendVerdict::BoundedAway;
    double median_terminal = 0.0;
    double min_terminal = 0.0;
    double max_terminal = 0.0;
};

// Block-maxima limsup estimator: per replicate, the exact sup of X(t)/f(t)
// over each dyadic block [2^j, 2^{j+1}] (evaluated at the block start and at
// every arrival epoch inside, which is exact because the ratio decreases
// between arrivals), then a Theil-Sen trend verdict on log block maxima with
// tolerance 0.05. The burn-in is bisected to a bound of 1e-3 unless an
// explicit override is given.
GrowthReport empirical_limsup(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi,
                              const NormalizerSpec& f, double horizon, int replicates,
                              std::uint64_t seed, double eps, int threads = 1,
                              std::optional<double> burn_in_override = std::nullopt);

// Sweep of the truncation M of the inverse-first-moment mixing measure:
// median of sup over [0,1] of X against M. With unbounded jumps the medians
// must grow without bound as M does.
struct LargeXiRow {
    double truncation = 0.0;       // M
    double median_sup = 0.0;       // median over replicates of sup over [0,1]
    double mean_atoms_in_unit = 0.0;
    double expected_atoms_in_unit = 0.0;  // log(M) * lambda_bar(eps)
};

struct LargeXiTable {
    std::vector<LargeXiRow> rows;
    bool bounded_support_warning = false;
};

LargeXiTable largexi_experiment(const LevyMeasureSpec& levy, const std::vector<double>& m_grid,
                                int replicates, std::uint64_t seed, double eps, int threads = 1);

}  // namespace supou

#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "supou/kernels.hpp"
#include "supou/measures.hpp"

namespace supou {

// One point of the driving Poisson random measure: arrival time, decay rate,
// jump size.
struct Atom {
    double tau = 0.0;
    double xi = 1.0;
    double zeta = 1.0;
};

// Atoms on the window [-B, T], sorted by arrival time, plus the metadata
// needed to reproduce and evaluate the path. Immutable after generation.
struct SamplePath {
    std::vector<Atom> atoms;
    double burn_in = 0.0;  // B >= 0; atoms start at -B
    double horizon = 0.0;  // T > 0
    double eps = 0.0;      // small-jump truncation level; every zeta > eps
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    double prune_tol = 1e-12;
};

// Draws the Poisson atom set: count ~ Poisson(m_0(pi) * (T+B) * lambda_bar(eps)),
// arrivals uniform on [-B, T], decay rates from pi / m_0(pi), jump sizes from
// lambda restricted to (eps, inf). Bit-reproducible given (seed, stream).
SamplePath generate_atoms(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi,
                          double burn_in, double horizon, double eps, std::uint64_t seed,
                          std::uint64_t stream = 0, double prune_tol = 1e-12);

// Forward sweep over nondecreasing query times. Atoms enter the active set at
// their arrival time and leave once their contribution drops below prune_tol;
// the accumulated sum at each query therefore misses at most
// prune_tol * pruned_count().
class ActiveSweep {
  public:
    explicit ActiveSweep(const SamplePath& path);

    // X(t); t must be >= any previous query (and >= -B).
    double value_at(double t);

    std::size_t pruned_count() const { return pruned_; }
    double prune_error_bound() const { return static_cast<double>(pruned_) * path_->prune_tol; }
    std::size_t active_size() const { return tau_.size(); }

  private:
    const SamplePath* path_;
    kernels::DecaySumFn kernel_;
    std::size_t next_atom_ = 0;
    std::size_t pruned_ = 0;
    double last_t_ = -std::numeric_limits<double>::infinity();
    std::vector<double> tau_, xi_, zeta_;
    std::vector<std::uint8_t> mask_;
};

struct PathValues {
    std::vector<double> values;
    std::size_t pruned_count = 0;
    double prune_error_bound = 0.0;
};

// X(t_i) for sorted query times in [0, T]. Throws std::invalid_argument on an
// unsorted or out-of-window grid.
PathValues evaluate_path(const SamplePath& path, std::span<const double> times);

// Exact supremum of X over [u, v]: the path only increases at arrival times
// and decays in between, so the sup is attained at u or at an arrival epoch
// in (u, v].
double path_sup(const SamplePath& path, double u, double v, double* prune_bound = nullptr);

// Error of starting the moving average at -B instead of -infinity.
//
// When the truncated jump law has a finite mean the `mean_part` is the exact
// expected omitted contribution at time t:
//     m_1(lambda restricted to (eps,inf)) * integral of x^-1 e^{-x(t+B)} pi(dx).
// For infinite-mean jump laws the caller supplies a cap z_star; the result is
// then the exact mean over jumps of size <= z_star plus, in big_jump_count,
// the expected number of pre-window jumps above z_star whose contribution at
// time t still exceeds prune_tol (the count is finite exactly because of the
// log-moment and m_-1 existence conditions).
struct BurnInBound {
    bool exact = true;
    double mean_part = 0.0;
    double big_jump_count = 0.0;
    double total() const { return mean_part + big_jump_count; }
};

BurnInBound burn_in_bound(const MixingMeasureSpec& pi, const LevyMeasureSpec& levy, double eps,
                          double burn_in, double t,
                          double z_star = std::numeric_limits<double>::infinity(),
                          double prune_tol = 1e-12);

// Stationary mean of the omitted small-jump moving average:
// m_-1(pi) * integral of z lambda(dz) over (0, eps].
double truncation_bias(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi, double eps);

// Bisects the burn-in length until burn_in_bound(t = 0) <= target, capped.
struct AutoBurnIn {
    double burn_in = 0.0;
    double achieved_bound = 0.0;
    bool capped = false;
};

AutoBurnIn auto_burn_in(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi, double eps,
                        double target = 1e-3, double cap = 1e6);

}  // namespace supou

#include "supou/pathsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "supou/errors.hpp"
#include "quad.hpp"

namespace supou {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Expected number of pre-window jumps above z_star whose contribution at time
// t still exceeds tol, for a fixed decay rate x:
//   (1/x) * [ L(z0) - (log tol + x s) * lambda_bar(z0) ],
// where s = t + B, z0 = max(z_star, tol * e^{x s}) and L(a) is the partial
// log-moment of lambda above a.
double big_jump_count_at_rate(const LevyMeasureSpec& levy, double z_star, double tol, double s,
                              double x) {
    const double log_w = std::log(tol) + x * s;
    double z0 = z_star;
    if (log_w > std::log(z_star)) {
        if (log_w > 700.0) return 0.0;  // cutoff beyond any catalog support weight
        z0 = std::exp(log_w);
    }
    const double tail = lambda_tail(levy, z0);
    if (tail == 0.0) return 0.0;
    const double partial = log_partial_moment(levy, std::max(z0, 1.0));
    const double count = (partial - (std::log(tol) + x * s) * tail) / x;
    return count > 0.0 ? count : 0.0;
}

double integrate_big_jump_count(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi,
                                double z_star, double tol, double s) {
    auto count_at = [&](double x) { return big_jump_count_at_rate(levy, z_star, tol, s, x); };
    switch (pi.kind) {
        case MixingKind::PointMass:
            return count_at(pi.a);
        case MixingKind::Uniform:
            return quad::integrate([&](double x) { return count_at(x) / (pi.b - pi.a); }, pi.a,
                                   pi.b, 1e-8) *
                   (pi.b - pi.a);
        case MixingKind::Gamma: {
            const double alpha = pi.a;
            const double norm = std::tgamma(alpha);
            return quad::integrate(
                [&](double x) {
                    return count_at(x) * std::pow(x, alpha - 1.0) * std::exp(-x) / norm;
                },
                0.0, kInf, 1e-8);
        }
        case MixingKind::InverseFirstMoment: {
            const double m = pi.a;
            if (std::isinf(m)) {
                throw ConfigError("burn-in bound needs a truncated mixing spec (finite M)");
            }
            return quad::integrate([&](double x) { return count_at(x) / x; }, 1.0, m, 1e-8);
        }
    }
    throw std::logic_error("unknown mixing kind");
}

}  // namespace

SamplePath generate_atoms(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi,
                          double burn_in, double horizon, double eps, std::uint64_t seed,
                          std::uint64_t stream, double prune_tol) {
    if (!(burn_in >= 0.0)) throw std::invalid_argument("burn-in B must be >= 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon T must be > 0");
    if (!(prune_tol >= 0.0)) throw std::invalid_argument("prune_tol must be >= 0");

    const Moment mass = pi_moment(pi, 0);
    if (!mass.finite) {
        throw ConfigError("m_0(pi) is infinite; atoms are not generable on a window. "
                          "Use a truncated mixing spec (finite M).");
    }
    const double tail_eps = lambda_mass_above(levy, eps);
    if (tail_eps == 0.0) {
        throw ConfigError("no jumps above truncation: lambda_bar(eps) = 0");
    }
    if (std::isinf(tail_eps)) {
        throw ConfigError("lambda_bar(eps) is infinite; raise the truncation level eps");
    }

    RngStream rng(seed, stream);
    const double window = horizon + burn_in;
    const double mean_count = mass.value * window * tail_eps;
    const std::uint64_t count = rng.next_poisson(mean_count);

    SamplePath path;
    path.burn_in = burn_in;
    path.horizon = horizon;
    path.eps = eps;
    path.seed = seed;
    path.stream = stream;
    path.prune_tol = prune_tol;
    path.atoms.resize(count);
    for (auto& atom : path.atoms) {
        atom.tau = -burn_in + window * rng.next_double();
        atom.xi = pi_sample(pi, rng);
        atom.zeta = sample_jump(levy, eps, rng);
    }
    std::sort(path.atoms.begin(), path.atoms.end(), [](const Atom& a, const Atom& b) {
        return std::tie(a.tau, a.xi, a.zeta) < std::tie(b.tau, b.xi, b.zeta);
    });
    return path;
}

ActiveSweep::ActiveSweep(const SamplePath& path)
    : path_(&path), kernel_(kernels::decay_sum()) {}

double ActiveSweep::value_at(double t) {
    if (t < last_t_) {
        throw std::invalid_argument("ActiveSweep queries must be nondecreasing");
    }
    last_t_ = t;

    const auto& atoms = path_->atoms;
    while (next_atom_ < atoms.size() && atoms[next_atom_].tau <= t) {
        tau_.push_back(atoms[next_atom_].tau);
        xi_.push_back(atoms[next_atom_].xi);
        zeta_.push_back(atoms[next_atom_].zeta);
        ++next_atom_;
    }
    mask_.resize(tau_.size());

    const double sum =
        kernel_(tau_.data(), xi_.data(), zeta_.data(), tau_.size(), t, path_->prune_tol,
                mask_.data());

    // compact, keeping order (stable two-pointer)
    std::size_t kept = 0;
    for (std::size_t i = 0; i < tau_.size(); ++i) {
        if (!mask_[i]) {
            tau_[kept] = tau_[i];
            xi_[kept] = xi_[i];
            zeta_[kept] = zeta_[i];
            ++kept;
        }
    }
    pruned_ += tau_.size() - kept;
    tau_.resize(kept);
    xi_.resize(kept);
    zeta_.resize(kept);
    return sum;
}

PathValues evaluate_path(const SamplePath& path, std::span<const double> times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && times[i] < times[i - 1]) {
            throw std::invalid_argument("query times must be sorted ascending");
        }
        if (times[i] < 0.0 || times[i] > path.horizon) {
            throw std::invalid_argument("query times must lie in [0, T]");
        }
    }
    PathValues out;
    out.values.reserve(times.size());
    ActiveSweep sweep(path);
    for (const double t : times) {
        out.values.push_back(sweep.value_at(t));
    }
    out.pruned_count = sweep.pruned_count();
    out.prune_error_bound = sweep.prune_error_bound();
    return out;
}

double path_sup(const SamplePath& path, double u, double v, double* prune_bound) {
    if (!(u < v)) throw std::invalid_argument("path_sup requires u < v");
    if (u < 0.0 || v > path.horizon) {
        throw std::invalid_argument("path_sup interval must lie in [0, T]");
    }
    ActiveSweep sweep(path);
    double sup = sweep.value_at(u);
    const auto begin = std::upper_bound(path.atoms.begin(), path.atoms.end(), u,
                                        [](double t, const Atom& a) { return t < a.tau; });
    for (auto it = begin; it != path.atoms.end() && it->tau <= v; ++it) {
        sup = std::max(sup, sweep.value_at(it->tau));
    }
    if (prune_bound != nullptr) *prune_bound = sweep.prune_error_bound();
    return sup;
}

BurnInBound burn_in_bound(const MixingMeasureSpec& pi, const LevyMeasureSpec& levy, double eps,
                          double burn_in, double t, double z_star, double prune_tol) {
    if (!(t >= 0.0)) throw std::domain_error("burn_in_bound requires t >= 0");
    if (!(burn_in >= 0.0)) throw std::domain_error("burn_in_bound requires B >= 0");
    const double s = t + burn_in;
    const double decay_integral = pi_exp_decay_integral(pi, s);

    BurnInBound bound;
    const double mean_above = jump_mean_above(levy, eps);
    if (std::isfinite(mean_above)) {
        bound.exact = true;
        bound.mean_part = mean_above * decay_integral;
        return bound;
    }
    if (!std::isfinite(z_star)) {
        throw std::domain_error("infinite-mean jump law: burn_in_bound needs a cap z_star");
    }
    if (!(z_star > std::max(eps, 1.0))) {
        throw std::domain_error("cap z_star must exceed max(eps, 1)");
    }
    bound.exact = false;
    bound.mean_part = jump_mean_between(levy, eps, z_star) * decay_integral;
    bound.big_jump_count = integrate_big_jump_count(levy, pi, z_star, prune_tol, s);
    return bound;
}

double truncation_bias(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi, double eps) {
    if (!(eps >= 0.0)) throw std::domain_error("eps must be >= 0");
    if (eps == 0.0) return 0.0;
    const Moment inv = pi_moment(pi, -1);
    if (!inv.finite) return kInf;
    const double small = eps <= 1.0
                             ? small_jump_mean(levy, eps)
                             : small_jump_mean(levy, 1.0) + jump_mean_between(levy, 1.0, eps);
    return inv.value * small;
}

AutoBurnIn auto_burn_in(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi, double eps,
                        double target, double cap) {
    if (!(target > 0.0)) throw std::domain_error("auto_burn_in target must be > 0");
    const double z_star =
        std::isfinite(jump_mean_above(levy, eps)) ? kInf : 10.0 * std::max(1.0, eps);
    auto bound_at = [&](double b) { return burn_in_bound(pi, levy, eps, b, 0.0, z_star).total(); };

    double hi = 1.0;
    double bound_hi = bound_at(hi);
    while (bound_hi > target && hi < cap) {
        hi = std::min(hi * 2.0, cap);
        bound_hi = bound_at(hi);
    }
    if (bound_hi > target) {
        return {cap, bound_hi, true};
    }
    double lo = hi / 2.0;
    if (hi == 1.0 || bound_at(lo) <= target) {
        // already satisfied at the smallest probe; tighten toward 0
        lo = 0.0;
    }
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (bound_at(mid) <= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {hi, bound_at(hi), false};
}

}  // namespace supou

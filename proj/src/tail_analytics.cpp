#include "supou/tail_analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/expint.hpp>

#include "supou/errors.hpp"
#include "quad.hpp"

namespace supou {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRatioFloor = 1e-300;
const double kE = std::exp(1.0);

double exp_int_e1(double x) {
    if (x > 745.0) return 0.0;
    return boost::math::expint(1, x);
}

}  // namespace

double eta_bar(const LevyMeasureSpec& levy, double r) {
    if (!(r > 0.0)) throw std::domain_error("eta_bar requires r > 0");
    switch (levy.kind) {
        case LevyKind::Pareto: {
            const double g = levy.param;
            if (r >= 1.0) return std::pow(r, -g) / g;
            return std::log(1.0 / r) + 1.0 / g;
        }
        case LevyKind::Exponential:
            return exp_int_e1(levy.param * r);
        case LevyKind::Dirac:
            return r < levy.param ? std::log(levy.param / r) : 0.0;
        case LevyKind::BoundedInfinite: {
            if (r >= 1.0) return 0.0;
            const double lr = std::log(r);
            return 0.5 * lr * lr;
        }
        case LevyKind::SlowlyVarying:
            if (r >= kE) return 1.0 / std::log(r);
            return std::log(kE / r) + 1.0;
    }
    throw std::logic_error("unknown catalog kind");
}

double eta_bar_quad(const LevyMeasureSpec& levy, double r) {
    if (!(r > 0.0)) throw std::domain_error("eta_bar requires r > 0");
    const double zmax = support_sup(levy);
    if (r >= zmax) return 0.0;

    // integration in u: lambda_bar(r e^u)
    auto integrand = [&](double u) { return lambda_tail(levy, r * std::exp(u)); };

    if (std::isfinite(zmax)) {
        const double u_end = std::log(zmax / r);
        return quad::integrate(integrand, 0.0, u_end, 1e-8);
    }

    // cutoff where the integrand has decayed to 1e-16 of its initial value,
    // then append the analytic tail. The cutoff is capped where r e^u would
    // overflow (the slowly varying member only reaches the decay criterion
    // astronomically late); the appended tails are exact from any cutoff.
    const double head = lambda_tail(levy, r);
    const double u_cap = 690.0 - std::log(r);
    double u_cut = 1.0;
    while (integrand(u_cut) >= 1e-16 * head && 2.0 * u_cut <= u_cap) {
        u_cut *= 2.0;
    }
    const double body = quad::integrate(integrand, 0.0, u_cut, 1e-8);

    const double z_cut = r * std::exp(u_cut);
    double tail = 0.0;
    switch (levy.kind) {
        case LevyKind::Pareto:
            tail = std::pow(z_cut, -levy.param) / levy.param;  // z_cut >= 1 here
            break;
        case LevyKind::Exponential:
            tail = exp_int_e1(levy.param * z_cut);
            break;
        case LevyKind::SlowlyVarying:
            tail = 1.0 / std::log(z_cut);
            break;
        default:
            break;
    }
    return body + tail;
}

std::vector<double> geometric_grid(double rmin, double rmax, int points) {
    if (!(rmin > 0.0 && rmax > rmin)) throw std::domain_error("grid requires 0 < rmin < rmax");
    if (points < 2) throw std::domain_error("grid needs at least 2 points");
    std::vector<double> grid(points);
    const double step = std::log(rmax / rmin) / (points - 1);
    for (int i = 0; i < points; ++i) {
        grid[i] = rmin * std::exp(step * i);
    }
    grid.back() = rmax;
    return grid;
}

TailTable eta_lambda_ratio_scan(const LevyMeasureSpec& levy, const std::vector<double>& r_grid) {
    if (r_grid.empty() || r_grid.front() < 1.0) {
        throw std::domain_error("ratio scan requires a grid with r_min >= 1");
    }
    TailTable table;
    table.r = r_grid;
    table.lambda_bar.reserve(r_grid.size());
    table.eta_bar.reserve(r_grid.size());
    table.ratio.reserve(r_grid.size());
    for (const double r : r_grid) {
        const double lb = lambda_tail(levy, r);
        const double eb = eta_bar(levy, r);
        table.lambda_bar.push_back(lb);
        table.eta_bar.push_back(eb);
        table.ratio.push_back(lb >= kRatioFloor ? eb / lb : kNaN);
    }
    return table;
}

DomVarIndex domvar_index(const LevyMeasureSpec& levy, const std::vector<double>& r_grid) {
    if (r_grid.size() < 2 || !(r_grid.back() >= 1e4 * r_grid.front())) {
        throw std::domain_error("domvar_index requires a grid spanning >= 4 decades");
    }
    DomVarIndex index;
    double ratio_sup = kNaN;
    for (const double x : r_grid) {
        const double num = lambda_tail(levy, x);
        if (num <= 0.0) continue;
        const double den = lambda_tail(levy, 2.0 * x);
        const double ratio = den > 0.0 ? num / den : kInf;
        if (std::isnan(ratio_sup) || ratio > ratio_sup) ratio_sup = ratio;
    }
    index.ratio_sup = ratio_sup;
    switch (levy.kind) {
        case LevyKind::Pareto:
            index.is_dominated = true;
            index.growth_condition_holds = true;
            break;
        case LevyKind::Exponential:
            index.is_dominated = false;
            index.growth_condition_holds = true;
            break;
        case LevyKind::Dirac:
        case LevyKind::BoundedInfinite:
            index.is_dominated = false;
            index.growth_condition_holds = true;  // tail eventually zero
            break;
        case LevyKind::SlowlyVarying:
            index.is_dominated = true;
            index.growth_condition_holds = false;  // lambda_bar(cr)/lambda_bar(r) -> 1
            break;
    }
    return index;
}

Finiteness moment_classifier(const LevyMeasureSpec& levy, double beta) {
    if (!(beta > 0.0)) throw std::domain_error("moment_classifier requires beta > 0");
    switch (levy.kind) {
        case LevyKind::Pareto:
            return beta < levy.param ? Finiteness::Finite : Finiteness::Infinite;
        case LevyKind::Exponential:
        case LevyKind::Dirac:
        case LevyKind::BoundedInfinite:
            return Finiteness::Finite;
        case LevyKind::SlowlyVarying:
            return Finiteness::Infinite;
    }
    throw std::logic_error("unknown catalog kind");
}

Finiteness exp_moment_classifier(const LevyMeasureSpec& levy, double a) {
    if (!(a > 0.0)) throw std::domain_error("exp_moment_classifier requires a > 0");
    switch (levy.kind) {
        case LevyKind::Exponential:
            return a < levy.param ? Finiteness::Finite : Finiteness::Infinite;
        case LevyKind::Dirac:
        case LevyKind::BoundedInfinite:
            return Finiteness::Finite;
        case LevyKind::Pareto:
        case LevyKind::SlowlyVarying:
            return Finiteness::Infinite;
    }
    throw std::logic_error("unknown catalog kind");
}

double mgf_log(const LevyMeasureSpec& levy, double s) {
    if (!(s >= 0.0)) throw std::domain_error("mgf_log requires s >= 0");
    const bool bounded_unit = (levy.kind == LevyKind::Dirac && levy.param <= 1.0) ||
                              levy.kind == LevyKind::BoundedInfinite;
    if (!bounded_unit) {
        throw std::domain_error("mgf_log is defined for Dirac(z0 <= 1) or BoundedInfinite only");
    }
    if (s == 0.0) return 0.0;
    if (levy.kind == LevyKind::Dirac) {
        // integral of (e^y - 1)/y over (0, s z0)
        return quad::integrate(
            [](double y) { return y == 0.0 ? 1.0 : std::expm1(y) / y; }, 0.0, s * levy.param,
            1e-8);
    }
    // BoundedInfinite, after z = e^{-v}: integral of v expm1(s e^{-v}) dv over (0, inf)
    return quad::integrate([s](double v) { return v * std::expm1(s * std::exp(-v)); }, 0.0, kInf,
                           1e-8);
}

double chernoff_tail_bound(const LevyMeasureSpec& levy, double d, double s) {
    if (!(d > 0.0)) throw std::domain_error("chernoff_tail_bound requires d > 0");
    if (!(s >= 0.0)) throw std::domain_error("chernoff_tail_bound requires s >= 0");
    return std::exp(mgf_log(levy, s) - s * d);
}

double sup_tail_prediction(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi, double T,
                           double r) {
    if (levy.kind != LevyKind::Pareto) {
        throw std::domain_error("sup_tail_prediction requires a regularly varying (Pareto) tail");
    }
    if (!(T >= 0.0)) throw std::domain_error("sup_tail_prediction requires T >= 0");
    if (!pi_moment(pi, 0).finite) {
        throw std::domain_error("sup_tail_prediction requires m_0(pi) < inf");
    }
    const Moment inv = pi_moment(pi, -1);
    if (!inv.finite) {
        throw std::domain_error("sup_tail_prediction requires m_-1(pi) < inf");
    }
    return (T + inv.value / levy.param) * lambda_tail(levy, r);
}

}  // namespace supou

#include "supou/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/expint.hpp>

#include "supou/errors.hpp"
#include "quad.hpp"

namespace supou {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kE = std::exp(1.0);

// E1(x) = integral of e^-t / t over (x, inf), x > 0
double exp_int_e1(double x) {
    if (x <= 0.0) throw std::domain_error("E1 requires x > 0");
    if (x > 745.0) return 0.0;  // below double underflow anyway
    return boost::math::expint(1, x);
}

[[noreturn]] void unknown_kind() { throw std::logic_error("unknown catalog kind"); }

}  // namespace

LevyMeasureSpec LevyMeasureSpec::pareto(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("Pareto tail index must be > 0");
    LevyMeasureSpec s{LevyKind::Pareto, gamma, "pareto(gamma=" + std::to_string(gamma) + ")"};
#ifndef NDEBUG
    verify_catalog_integrability(s);
#endif
    return s;
}

LevyMeasureSpec LevyMeasureSpec::exponential(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("Exponential rate must be > 0");
    LevyMeasureSpec s{LevyKind::Exponential, c, "exponential(c=" + std::to_string(c) + ")"};
#ifndef NDEBUG
    verify_catalog_integrability(s);
#endif
    return s;
}

LevyMeasureSpec LevyMeasureSpec::dirac(double z0) {
    if (!(z0 > 0.0)) throw std::invalid_argument("Dirac atom location must be > 0");
    LevyMeasureSpec s{LevyKind::Dirac, z0, "dirac(z0=" + std::to_string(z0) + ")"};
    return s;
}

LevyMeasureSpec LevyMeasureSpec::bounded_infinite() {
    LevyMeasureSpec s{LevyKind::BoundedInfinite, 0.0, "bounded_infinite"};
#ifndef NDEBUG
    verify_catalog_integrability(s);
#endif
    return s;
}

LevyMeasureSpec LevyMeasureSpec::slowly_varying() {
    LevyMeasureSpec s{LevyKind::SlowlyVarying, 0.0, "slowly_varying"};
#ifndef NDEBUG
    verify_catalog_integrability(s);
#endif
    return s;
}

MixingMeasureSpec MixingMeasureSpec::gamma_shape(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("Gamma shape must be > 0");
    return {MixingKind::Gamma, alpha, 0.0, "gamma(alpha=" + std::to_string(alpha) + ")"};
}

MixingMeasureSpec MixingMeasureSpec::uniform(double a, double b) {
    if (!(0.0 < a && a < b)) throw std::invalid_argument("Uniform requires 0 < a < b");
    return {MixingKind::Uniform, a, b,
            "uniform(" + std::to_string(a) + "," + std::to_string(b) + ")"};
}

MixingMeasureSpec MixingMeasureSpec::point_mass(double x0) {
    if (!(x0 > 0.0)) throw std::invalid_argument("PointMass location must be > 0");
    return {MixingKind::PointMass, x0, 0.0, "point_mass(x0=" + std::to_string(x0) + ")"};
}

MixingMeasureSpec MixingMeasureSpec::inverse_first_moment(double m) {
    if (!(m > 1.0)) throw std::invalid_argument("InverseFirstMoment truncation must be > 1");
    return {MixingKind::InverseFirstMoment, m, 0.0,
            std::isinf(m) ? std::string("inverse_first_moment(M=inf)")
                          : "inverse_first_moment(M=" + std::to_string(m) + ")"};
}

double lambda_tail(const LevyMeasureSpec& levy, double z) {
    if (!(z > 0.0)) throw std::domain_error("lambda_tail requires z > 0");
    switch (levy.kind) {
        case LevyKind::Pareto:
            return std::min(1.0, std::pow(z, -levy.param));
        case LevyKind::Exponential:
            return std::exp(-levy.param * z);
        case LevyKind::Dirac:
            return z < levy.param ? 1.0 : 0.0;
        case LevyKind::BoundedInfinite:
            return z < 1.0 ? std::log(1.0 / z) : 0.0;
        case LevyKind::SlowlyVarying: {
            if (z < kE) return 1.0;
            const double lz = std::log(z);
            return 1.0 / (lz * lz);
        }
    }
    unknown_kind();
}

double lambda_mass_above(const LevyMeasureSpec& levy, double eps) {
    if (eps < 0.0) throw std::domain_error("eps must be >= 0");
    if (eps > 0.0) return lambda_tail(levy, eps);
    return levy.kind == LevyKind::BoundedInfinite ? kInf : 1.0;
}

double jump_quantile(const LevyMeasureSpec& levy, double eps, double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile requires u in (0,1)");
    const double tail_eps = lambda_mass_above(levy, eps);
    if (tail_eps == 0.0) {
        throw std::domain_error("empty restriction: lambda has no mass above eps");
    }
    if (std::isinf(tail_eps)) {
        throw std::domain_error("restriction (eps, inf) has infinite mass; eps too small");
    }
    // Heavy-tailed branches work in log space, capped at the double range:
    // a draw that would overflow (probability ~1e-6 per draw for the slowly
    // varying member) is truncated to e^709 instead of producing inf, which
    // would poison the decay kernel with inf * 0.
    constexpr double kLogCap = 709.0;
    switch (levy.kind) {
        case LevyKind::Pareto: {
            const double base = std::max(eps, 1.0);
            return std::exp(std::min(std::log(base) - std::log(u) / levy.param, kLogCap));
        }
        case LevyKind::Exponential:
            return eps - std::log(u) / levy.param;
        case LevyKind::Dirac:
            return levy.param;
        case LevyKind::BoundedInfinite:
            // tail log(1/z), restricted mass log(1/eps): z = eps^u
            return std::pow(eps, u);
        case LevyKind::SlowlyVarying: {
            const double base = std::max(eps, kE);
            return std::exp(std::min(std::log(base) / std::sqrt(u), kLogCap));
        }
    }
    unknown_kind();
}

double sample_jump(const LevyMeasureSpec& levy, double eps, RngStream& rng) {
    return jump_quantile(levy, eps, rng.next_double());
}

double small_jump_mean(const LevyMeasureSpec& levy, double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::domain_error("small_jump_mean requires 0 < eps <= 1");
    switch (levy.kind) {
        case LevyKind::Pareto:
            return 0.0;  // support (1, inf)
        case LevyKind::Exponential: {
            const double c = levy.param;
            return (1.0 - std::exp(-c * eps) * (1.0 + c * eps)) / c;
        }
        case LevyKind::Dirac:
            return levy.param <= eps ? levy.param : 0.0;
        case LevyKind::BoundedInfinite:
            return eps;  // z * (1/z) dz
        case LevyKind::SlowlyVarying:
            return 0.0;  // support [e, inf)
    }
    unknown_kind();
}

double jump_mean_above(const LevyMeasureSpec& levy, double eps) {
    if (eps < 0.0) throw std::domain_error("eps must be >= 0");
    switch (levy.kind) {
        case LevyKind::Pareto: {
            const double g = levy.param;
            if (g <= 1.0) return kInf;
            const double base = std::max(eps, 1.0);
            return g / (g - 1.0) * std::pow(base, 1.0 - g);
        }
        case LevyKind::Exponential: {
            const double c = levy.param;
            return std::exp(-c * eps) * (eps + 1.0 / c);
        }
        case LevyKind::Dirac:
            return levy.param > eps ? levy.param : 0.0;
        case LevyKind::BoundedInfinite:
            return eps < 1.0 ? 1.0 - eps : 0.0;
        case LevyKind::SlowlyVarying:
            // z * 2 (log z)^-3 z^-1 ~ (log z)^-3: not integrable
            return kInf;
    }
    unknown_kind();
}

double jump_mean_between(const LevyMeasureSpec& levy, double eps, double zcap) {
    if (!(zcap > eps)) throw std::domain_error("jump_mean_between requires zcap > eps");
    switch (levy.kind) {
        case LevyKind::Pareto: {
            const double g = levy.param;
            const double lo = std::max(eps, 1.0);
            if (zcap <= lo) return 0.0;
            if (g == 1.0) return std::log(zcap / lo);
            return g / (g - 1.0) * (std::pow(lo, 1.0 - g) - std::pow(zcap, 1.0 - g));
        }
        case LevyKind::Exponential: {
            const double c = levy.param;
            auto antiderivative = [c](double z) { return -std::exp(-c * z) * (z + 1.0 / c); };
            return antiderivative(zcap) - antiderivative(eps);
        }
        case LevyKind::Dirac:
            return (levy.param > eps && levy.param <= zcap) ? levy.param : 0.0;
        case LevyKind::BoundedInfinite: {
            const double hi = std::min(zcap, 1.0);
            return hi > eps ? hi - eps : 0.0;
        }
        case LevyKind::SlowlyVarying: {
            const double lo = std::max(eps, kE);
            if (zcap <= lo) return 0.0;
            // integral of 2 (log z)^-3 dz has no elementary form; quadrature
            return quad::integrate(
                [](double z) {
                    const double lz = std::log(z);
                    return 2.0 / (lz * lz * lz);
                },
                lo, zcap, 1e-10);
        }
    }
    unknown_kind();
}

Moment log_moment(const LevyMeasureSpec& levy) {
    switch (levy.kind) {
        case LevyKind::Pareto:
            return {true, 1.0 / levy.param};
        case LevyKind::Exponential:
            // by parts: E1(c)
            return {true, exp_int_e1(levy.param)};
        case LevyKind::Dirac:
            return {true, levy.param >= 1.0 ? std::log(levy.param) : 0.0};
        case LevyKind::BoundedInfinite:
            return {true, 0.0};  // no mass above 1
        case LevyKind::SlowlyVarying:
            // 2 * integral of w^-2 over [1, inf) after w = log z
            return {true, 2.0};
    }
    unknown_kind();
}

double log_partial_moment(const LevyMeasureSpec& levy, double a) {
    if (!(a >= 1.0)) throw std::domain_error("log_partial_moment requires a >= 1");
    switch (levy.kind) {
        case LevyKind::Pareto: {
            const double g = levy.param;
            const double lo = std::max(a, 1.0);
            return std::pow(lo, -g) * (std::log(lo) + 1.0 / g);
        }
        case LevyKind::Exponential: {
            // by parts: log(a) e^{-ca} + E1(ca)
            const double c = levy.param;
            return std::log(a) * std::exp(-c * a) + exp_int_e1(c * a);
        }
        case LevyKind::Dirac:
            return levy.param > a ? std::log(levy.param) : 0.0;
        case LevyKind::BoundedInfinite:
            return 0.0;
        case LevyKind::SlowlyVarying: {
            const double lo = std::max(a, kE);
            // substitute w = log z: 2 * integral of w^-2 over [log lo, inf)
            return 2.0 / std::log(lo);
        }
    }
    unknown_kind();
}

double support_sup(const LevyMeasureSpec& levy) {
    switch (levy.kind) {
        case LevyKind::Pareto:
        case LevyKind::Exponential:
        case LevyKind::SlowlyVarying:
            return kInf;
        case LevyKind::Dirac:
            return levy.param;
        case LevyKind::BoundedInfinite:
            return 1.0;
    }
    unknown_kind();
}

Moment pi_moment(const MixingMeasureSpec& pi, int p) {
    if (p != -1 && p != 0) throw std::domain_error("pi_moment supports p in {-1, 0}");
    switch (pi.kind) {
        case MixingKind::Gamma: {
            if (p == 0) return {true, 1.0};
            if (pi.a <= 1.0) return {false, kInf};
            return {true, 1.0 / (pi.a - 1.0)};  // Gamma(alpha-1)/Gamma(alpha)
        }
        case MixingKind::Uniform: {
            if (p == 0) return {true, 1.0};
            return {true, std::log(pi.b / pi.a) / (pi.b - pi.a)};
        }
        case MixingKind::PointMass:
            return p == 0 ? Moment{true, 1.0} : Moment{true, 1.0 / pi.a};
        case MixingKind::InverseFirstMoment: {
            if (p == 0) {
                if (std::isinf(pi.a)) return {false, kInf};
                return {true, std::log(pi.a)};
            }
            return {true, std::isinf(pi.a) ? 1.0 : 1.0 - 1.0 / pi.a};
        }
    }
    unknown_kind();
}

double pi_sample(const MixingMeasureSpec& pi, RngStream& rng) {
    switch (pi.kind) {
        case MixingKind::Gamma:
            if (pi.a < 1.0) {
                throw ConfigError("gamma mixing with alpha < 1 is not samplable here "
                                  "(and fails the m_-1 existence condition)");
            }
            return rng.next_gamma(pi.a);
        case MixingKind::Uniform:
            return pi.a + (pi.b - pi.a) * rng.next_double();
        case MixingKind::PointMass:
            return pi.a;
        case MixingKind::InverseFirstMoment: {
            if (std::isinf(pi.a)) {
                throw ConfigError("pi has infinite total mass; use a truncated "
                                  "inverse_first_moment spec (finite M)");
            }
            // inverse CDF of density x^-1 / log M on (1, M)
            return std::exp(rng.next_double() * std::log(pi.a));
        }
    }
    unknown_kind();
}

double pi_exp_decay_integral(const MixingMeasureSpec& pi, double s) {
    if (s < 0.0) throw std::domain_error("pi_exp_decay_integral requires s >= 0");
    if (s == 0.0) {
        const Moment m = pi_moment(pi, -1);
        return m.finite ? m.value : kInf;
    }
    switch (pi.kind) {
        case MixingKind::Gamma: {
            const double alpha = pi.a;
            if (alpha <= 1.0) return kInf;
            return std::pow(1.0 + s, 1.0 - alpha) / (alpha - 1.0);
        }
        case MixingKind::Uniform:
            return (exp_int_e1(pi.a * s) - exp_int_e1(pi.b * s)) / (pi.b - pi.a);
        case MixingKind::PointMass:
            return std::exp(-pi.a * s) / pi.a;
        case MixingKind::InverseFirstMoment: {
            const double m = pi.a;
            if (std::isinf(m)) return std::exp(-s) - s * exp_int_e1(s);
            // integral of x^-2 e^{-sx} over (1, M), by parts
            return std::exp(-s) - std::exp(-m * s) / m - s * (exp_int_e1(s) - exp_int_e1(m * s));
        }
    }
    unknown_kind();
}

void verify_catalog_integrability(const LevyMeasureSpec& levy) {
    auto check = [](double v, const char* what) {
        if (!std::isfinite(v) || v < 0.0) {
            throw NumericError(std::string("integrability check failed: ") + what);
        }
    };
    switch (levy.kind) {
        case LevyKind::Pareto: {
            const double g = levy.param;
            check(quad::integrate([g](double z) { return g * std::pow(z, -g - 1.0); }, 1.0,
                                  kInf, 1e-10),
                  "(1 ^ z^2) integral, pareto");
            break;
        }
        case LevyKind::Exponential: {
            const double c = levy.param;
            check(quad::integrate(
                      [c](double z) { return std::min(1.0, z * z) * c * std::exp(-c * z); }, 0.0,
                      kInf, 1e-10),
                  "(1 ^ z^2) integral, exponential");
            break;
        }
        case LevyKind::Dirac:
            check(std::min(1.0, levy.param * levy.param), "dirac atom");
            break;
        case LevyKind::BoundedInfinite:
            check(quad::integrate([](double z) { return z; }, 0.0, 1.0, 1e-10),
                  "(1 ^ z^2) integral, bounded_infinite");
            break;
        case LevyKind::SlowlyVarying:
            check(quad::integrate(
                      [](double z) {
                          const double lz = std::log(z);
                          return 2.0 / (lz * lz * lz * z);
                      },
                      kE, kInf, 1e-10),
                  "(1 ^ z^2) integral, slowly_varying");
            break;
    }
    // standing no-centering assumption: small jumps have finite mean
    const double m = small_jump_mean(levy, 1.0);
    if (!std::isfinite(m) || m < 0.0) {
        throw NumericError("small-jump mean is not finite");
    }
}

}  // namespace supou

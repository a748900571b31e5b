#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "supou/errors.hpp"
#include "supou/measures.hpp"
#include "supou/rng.hpp"

using namespace supou;

namespace {

const double kE = std::exp(1.0);

std::vector<LevyMeasureSpec> full_catalog() {
    return {LevyMeasureSpec::pareto(1.5), LevyMeasureSpec::exponential(1.0),
            LevyMeasureSpec::dirac(1.0), LevyMeasureSpec::bounded_infinite(),
            LevyMeasureSpec::slowly_varying()};
}

}  // namespace

TEST_CASE("lambda_tail catalog values") {
    CHECK(lambda_tail(LevyMeasureSpec::pareto(2.0), 10.0) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(lambda_tail(LevyMeasureSpec::pareto(2.0), 0.5) == 1.0);
    CHECK(lambda_tail(LevyMeasureSpec::dirac(1.0), 1.0) == 0.0);  // tail is the open interval
    CHECK(lambda_tail(LevyMeasureSpec::dirac(1.0), 0.999) == 1.0);
    CHECK(lambda_tail(LevyMeasureSpec::bounded_infinite(), std::exp(-1.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lambda_tail(LevyMeasureSpec::exponential(2.0), 3.0) ==
          doctest::Approx(std::exp(-6.0)).epsilon(1e-12));
    CHECK(lambda_tail(LevyMeasureSpec::slowly_varying(), kE * kE) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(lambda_tail(LevyMeasureSpec::slowly_varying(), 2.0) == 1.0);
    CHECK_THROWS_AS(lambda_tail(LevyMeasureSpec::pareto(1.0), 0.0), std::domain_error);
    CHECK_THROWS_AS(lambda_tail(LevyMeasureSpec::pareto(1.0), -2.0), std::domain_error);
}

TEST_CASE("lambda_tail is nonincreasing across the catalog") {
    for (const auto& levy : full_catalog()) {
        double z = 1e-3;
        double prev = lambda_tail(levy, z);
        for (int i = 0; i < 240; ++i) {
            z *= 1.1;
            const double cur = lambda_tail(levy, z);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
    }
}

TEST_CASE("construction validates parameters") {
    CHECK_THROWS_AS(LevyMeasureSpec::pareto(0.0), std::invalid_argument);
    CHECK_THROWS_AS(LevyMeasureSpec::exponential(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(LevyMeasureSpec::dirac(0.0), std::invalid_argument);
    CHECK_THROWS_AS(MixingMeasureSpec::uniform(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MixingMeasureSpec::inverse_first_moment(1.0), std::invalid_argument);
}

TEST_CASE("catalog integrability checks pass") {
    for (const auto& levy : full_catalog()) {
        CHECK_NOTHROW(verify_catalog_integrability(levy));
    }
}

TEST_CASE("jump quantile closed forms") {
    // point mass: every draw is the atom
    for (double u : {0.1, 0.5, 0.9}) {
        CHECK(jump_quantile(LevyMeasureSpec::dirac(1.0), 0.5, u) == 1.0);
    }
    // pareto(1), eps=1: inverse tail is 1/u
    for (double u : {0.2, 0.5, 0.77}) {
        CHECK(jump_quantile(LevyMeasureSpec::pareto(1.0), 1.0, u) ==
              doctest::Approx(1.0 / u).epsilon(1e-12));
    }
    // exponential at eps=0 is the standard inverse-CDF draw
    for (double u : {0.25, 0.5, 0.99}) {
        CHECK(jump_quantile(LevyMeasureSpec::exponential(1.0), 0.0, u) ==
              doctest::Approx(-std::log(u)).epsilon(1e-12));
    }
    // restriction errors
    CHECK_THROWS_AS(jump_quantile(LevyMeasureSpec::dirac(1.0), 1.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(jump_quantile(LevyMeasureSpec::bounded_infinite(), 0.0, 0.5),
                    std::domain_error);
}

TEST_CASE("sampled jumps stay above the truncation level") {
    RngStream rng(11, 0);
    const auto levy = LevyMeasureSpec::pareto(2.0);
    for (int i = 0; i < 2000; ++i) {
        CHECK(sample_jump(levy, 1.0, rng) > 1.0);
    }
}

TEST_CASE("sampler consistency: KS against the normalized tail") {
    struct Case {
        LevyMeasureSpec levy;
        double eps;
    };
    const std::vector<Case> cases = {
        {LevyMeasureSpec::pareto(1.5), 0.0},
        {LevyMeasureSpec::exponential(1.0), 0.0},
        {LevyMeasureSpec::bounded_infinite(), 1e-4},
        {LevyMeasureSpec::slowly_varying(), 0.0},
    };
    const std::size_t n = 100000;
    for (const auto& c : cases) {
        RngStream rng(2024, 7);
        std::vector<double> sample(n);
        for (auto& s : sample) s = sample_jump(c.levy, c.eps, rng);
        const double tail_eps = lambda_mass_above(c.levy, c.eps);
        auto cdf = [&](double z) { return 1.0 - lambda_tail(c.levy, z) / tail_eps; };
        CHECK(oracles::ks_statistic(sample, cdf) < 0.02);
    }
    // the point mass is degenerate: every draw equals the atom
    RngStream rng(1, 1);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_jump(LevyMeasureSpec::dirac(1.0), 0.5, rng) == 1.0);
    }
}

TEST_CASE("small jump mean") {
    CHECK(small_jump_mean(LevyMeasureSpec::pareto(2.0), 1.0) == 0.0);
    CHECK(small_jump_mean(LevyMeasureSpec::bounded_infinite(), 0.5) ==
          doctest::Approx(0.5).epsilon(1e-12));
    const double expected = 1.0 - 2.0 * std::exp(-1.0);
    CHECK(small_jump_mean(LevyMeasureSpec::exponential(1.0), 1.0) ==
          doctest::Approx(expected).epsilon(1e-12));
    // independent quadrature route
    const double via_oracle =
        oracles::integrate([](double z) { return z * std::exp(-z); }, 0.0, 1.0);
    CHECK(small_jump_mean(LevyMeasureSpec::exponential(1.0), 1.0) ==
          doctest::Approx(via_oracle).epsilon(1e-9));
    CHECK(small_jump_mean(LevyMeasureSpec::dirac(0.3), 0.5) == doctest::Approx(0.3));
    CHECK(small_jump_mean(LevyMeasureSpec::dirac(1.0), 1.0) == doctest::Approx(1.0));
    CHECK(small_jump_mean(LevyMeasureSpec::slowly_varying(), 1.0) == 0.0);
    CHECK_THROWS_AS(small_jump_mean(LevyMeasureSpec::pareto(1.0), 0.0), std::domain_error);
}

TEST_CASE("log moment: closed forms against quadrature oracles") {
    CHECK(log_moment(LevyMeasureSpec::dirac(1.0)).finite);
    CHECK(log_moment(LevyMeasureSpec::dirac(1.0)).value == 0.0);
    CHECK(log_moment(LevyMeasureSpec::pareto(1.0)).value == doctest::Approx(1.0).epsilon(1e-12));

    const double pareto_oracle = oracles::integrate_to_inf(
        [](double z) { return std::log(z) * 2.0 * std::pow(z, -3.0); }, 1.0);
    CHECK(log_moment(LevyMeasureSpec::pareto(2.0)).value ==
          doctest::Approx(pareto_oracle).epsilon(1e-8));

    const Moment sv = log_moment(LevyMeasureSpec::slowly_varying());
    CHECK(sv.finite);
    // oracle in w = log z space, where the integrand decays fast enough for
    // the mapped Simpson rule: w * 2 w^-3 dw
    const double sv_oracle =
        oracles::integrate_to_inf([](double w) { return 2.0 / (w * w); }, 1.0);
    CHECK(sv.value == doctest::Approx(sv_oracle).epsilon(1e-7));

    const Moment ex = log_moment(LevyMeasureSpec::exponential(1.0));
    CHECK(ex.value == doctest::Approx(oracles::exp_int_e1(1.0)).epsilon(1e-8));

    // existence condition (i) holds catalog-wide
    for (const auto& levy : full_catalog()) {
        CHECK(log_moment(levy).finite);
    }
}

TEST_CASE("partial log moment") {
    // pareto(1): integral of log z / z^2 above a = (log a + 1)/a
    const auto levy = LevyMeasureSpec::pareto(1.0);
    for (double a : {1.0, 3.0, 50.0}) {
        const double oracle = oracles::integrate_to_inf(
            [](double z) { return std::log(z) * std::pow(z, -2.0); }, a);
        CHECK(log_partial_moment(levy, a) == doctest::Approx(oracle).epsilon(1e-8));
    }
    const auto sv = LevyMeasureSpec::slowly_varying();
    // w = log z space again (see above)
    const double sv_oracle = oracles::integrate_to_inf([](double w) { return 2.0 / (w * w); },
                                                       std::log(10.0));
    CHECK(log_partial_moment(sv, 10.0) == doctest::Approx(sv_oracle).epsilon(1e-7));
}

TEST_CASE("pareto tail doubling ratio is exactly 2^gamma") {
    for (double gamma : {0.5, 1.5, 3.0}) {
        const auto levy = LevyMeasureSpec::pareto(gamma);
        const double expected = std::pow(2.0, gamma);
        for (double x = 1.0; x < 1e6; x *= 3.7) {
            CHECK(lambda_tail(levy, x) / lambda_tail(levy, 2.0 * x) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("pi moments") {
    CHECK(pi_moment(MixingMeasureSpec::point_mass(2.0), -1).value == doctest::Approx(0.5));
    CHECK(pi_moment(MixingMeasureSpec::gamma_shape(2.0), -1).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pi_moment(MixingMeasureSpec::inverse_first_moment(std::exp(2.0)), 0).value ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(pi_moment(MixingMeasureSpec::gamma_shape(0.5), -1).finite);
    CHECK_FALSE(pi_moment(MixingMeasureSpec::gamma_shape(1.0), -1).finite);

    const auto untruncated =
        MixingMeasureSpec::inverse_first_moment(std::numeric_limits<double>::infinity());
    CHECK_FALSE(pi_moment(untruncated, 0).finite);
    CHECK(pi_moment(untruncated, -1).value == doctest::Approx(1.0));

    // uniform m_-1 against quadrature
    const auto uni = MixingMeasureSpec::uniform(1.0, 3.0);
    const double oracle = oracles::integrate([](double x) { return 1.0 / (2.0 * x); }, 1.0, 3.0);
    CHECK(pi_moment(uni, -1).value == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("pi samplers") {
    RngStream rng(5, 0);
    for (int i = 0; i < 50; ++i) {
        CHECK(pi_sample(MixingMeasureSpec::point_mass(0.7), rng) == 0.7);
    }

    const std::size_t n = 100000;
    {
        std::vector<double> sample(n);
        RngStream r(17, 3);
        const auto uni = MixingMeasureSpec::uniform(1.0, 3.0);
        for (auto& s : sample) s = pi_sample(uni, r);
        CHECK(oracles::ks_statistic(sample, [](double x) {
                  return std::clamp((x - 1.0) / 2.0, 0.0, 1.0);
              }) < 0.02);
    }
    {
        std::vector<double> sample(n);
        RngStream r(17, 4);
        const auto gam = MixingMeasureSpec::gamma_shape(2.0);
        for (auto& s : sample) s = pi_sample(gam, r);
        CHECK(oracles::ks_statistic(sample, [](double x) {
                  return boost::math::gamma_p(2.0, x);
              }) < 0.02);
    }
    {
        const double m = std::exp(2.0);
        std::vector<double> sample(n);
        RngStream r(17, 5);
        const auto ifm = MixingMeasureSpec::inverse_first_moment(m);
        for (auto& s : sample) s = pi_sample(ifm, r);
        CHECK(oracles::ks_statistic(sample, [&](double x) {
                  return std::clamp(std::log(x) / std::log(m), 0.0, 1.0);
              }) < 0.02);
    }

    RngStream r(1, 0);
    CHECK_THROWS_AS(
        pi_sample(MixingMeasureSpec::inverse_first_moment(
                      std::numeric_limits<double>::infinity()),
                  r),
        ConfigError);
}

TEST_CASE("pi exp-decay integral against quadrature") {
    const double s = 2.5;
    {
        const auto gam = MixingMeasureSpec::gamma_shape(2.0);
        const double oracle = oracles::integrate_to_inf(
            [s](double x) { return (1.0 / x) * std::exp(-x * s) * x * std::exp(-x); }, 1e-12);
        CHECK(pi_exp_decay_integral(gam, s) == doctest::Approx(oracle).epsilon(1e-8));
    }
    {
        const auto uni = MixingMeasureSpec::uniform(1.0, 3.0);
        const double oracle = oracles::integrate(
            [s](double x) { return std::exp(-x * s) / (2.0 * x); }, 1.0, 3.0);
        CHECK(pi_exp_decay_integral(uni, s) == doctest::Approx(oracle).epsilon(1e-8));
    }
    {
        const auto ifm = MixingMeasureSpec::inverse_first_moment(std::exp(2.0));
        const double oracle = oracles::integrate(
            [s](double x) { return std::exp(-x * s) / (x * x); }, 1.0, std::exp(2.0));
        CHECK(pi_exp_decay_integral(ifm, s) == doctest::Approx(oracle).epsilon(1e-8));
    }
    CHECK(pi_exp_decay_integral(MixingMeasureSpec::point_mass(2.0), s) ==
          doctest::Approx(std::exp(-2.0 * s) / 2.0).epsilon(1e-12));
    // s = 0 degenerates to m_-1
    CHECK(pi_exp_decay_integral(MixingMeasureSpec::gamma_shape(3.0), 0.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("rng streams are deterministic and distinct") {
    RngStream a(99, 0), b(99, 0), c(99, 1);
    bool any_differs = false;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        if (va != c.next_u64()) any_differs = true;
    }
    CHECK(any_differs);

    RngStream u(123, 9);
    std::vector<double> sample(100000);
    for (auto& s : sample) s = u.next_double();
    CHECK(oracles::ks_statistic(sample, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 0.02);
    CHECK(oracles::mean_of(sample) == doctest::Approx(0.5).epsilon(0.01));
}

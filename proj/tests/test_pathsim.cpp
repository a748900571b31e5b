#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "oracles.hpp"
#include "supou/errors.hpp"
#include "supou/pathsim.hpp"

using namespace supou;

namespace {

SamplePath make_path(std::vector<Atom> atoms, double horizon, double prune_tol = 1e-12) {
    SamplePath path;
    path.atoms = std::move(atoms);
    path.burn_in = 5.0;
    path.horizon = horizon;
    path.prune_tol = prune_tol;
    return path;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
    return out;
}

}  // namespace

TEST_CASE("atom count matches the Poisson intensity") {
    const auto levy = LevyMeasureSpec::dirac(1.0);
    const auto pi = MixingMeasureSpec::gamma_shape(2.0);
    // m_0 = 1, lambda_bar(0.5) = 1, window length 15 -> Poisson(15)
    const int replicates = 10000;
    double total = 0.0;
    for (int r = 0; r < replicates; ++r) {
        total += static_cast<double>(
            generate_atoms(levy, pi, 5.0, 10.0, 0.5, 314, r).atoms.size());
    }
    CHECK(total / replicates == doctest::Approx(15.0).epsilon(0.4 / 15.0));
}

TEST_CASE("generated jumps respect the truncation support") {
    const auto path =
        generate_atoms(LevyMeasureSpec::pareto(2.0), MixingMeasureSpec::point_mass(1.0), 2.0,
                       20.0, 1.0, 7, 0);
    CHECK(path.atoms.size() > 0);
    for (const auto& atom : path.atoms) {
        CHECK(atom.zeta > 1.0);
        CHECK(atom.xi > 0.0);
        CHECK(atom.tau >= -2.0);
        CHECK(atom.tau <= 20.0);
    }
    // sorted by arrival
    for (std::size_t i = 1; i < path.atoms.size(); ++i) {
        CHECK(path.atoms[i - 1].tau <= path.atoms[i].tau);
    }
}

TEST_CASE("generation is bit-identical for a fixed seed") {
    const auto levy = LevyMeasureSpec::exponential(1.0);
    const auto pi = MixingMeasureSpec::gamma_shape(2.0);
    const auto a = generate_atoms(levy, pi, 3.0, 50.0, 0.0, 42, 0);
    const auto b = generate_atoms(levy, pi, 3.0, 50.0, 0.0, 42, 0);
    REQUIRE(a.atoms.size() == b.atoms.size());
    CHECK(std::memcmp(a.atoms.data(), b.atoms.data(), a.atoms.size() * sizeof(Atom)) == 0);
    // a different stream gives a different draw
    const auto c = generate_atoms(levy, pi, 3.0, 50.0, 0.0, 42, 1);
    const bool differs =
        a.atoms.size() != c.atoms.size() ||
        std::memcmp(a.atoms.data(), c.atoms.data(), a.atoms.size() * sizeof(Atom)) != 0;
    CHECK(differs);
}

TEST_CASE("generation rejects unusable specs") {
    CHECK_THROWS_AS(generate_atoms(LevyMeasureSpec::dirac(1.0),
                                   MixingMeasureSpec::point_mass(1.0), 1.0, 1.0, 1.5, 1, 0),
                    ConfigError);  // no jumps above truncation
    CHECK_THROWS_AS(generate_atoms(LevyMeasureSpec::bounded_infinite(),
                                   MixingMeasureSpec::point_mass(1.0), 1.0, 1.0, 0.0, 1, 0),
                    ConfigError);  // infinite intensity
    CHECK_THROWS_AS(
        generate_atoms(LevyMeasureSpec::pareto(1.0),
                       MixingMeasureSpec::inverse_first_moment(
                           std::numeric_limits<double>::infinity()),
                       1.0, 1.0, 0.0, 1, 0),
        ConfigError);  // infinite m_0
}

TEST_CASE("empty path evaluates to zero") {
    const auto path = make_path({}, 10.0);
    const std::vector<double> times = {0.0, 1.0, 9.9};
    const auto result = evaluate_path(path, times);
    for (const double v : result.values) CHECK(v == 0.0);
    CHECK(result.pruned_count == 0);
}

TEST_CASE("single atom closed form") {
    const auto path = make_path({{0.0, 1.0, 2.0}}, 10.0);
    const std::vector<double> times = {1.0};
    const auto result = evaluate_path(path, times);
    CHECK(result.values[0] == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("two atom sets superpose additively") {
    const std::vector<Atom> first = {{-1.0, 0.7, 1.5}, {2.0, 2.0, 0.5}};
    const std::vector<Atom> second = {{0.5, 1.2, 3.0}, {4.0, 0.3, 2.2}};
    std::vector<Atom> merged = first;
    merged.insert(merged.end(), second.begin(), second.end());
    std::sort(merged.begin(), merged.end(),
              [](const Atom& a, const Atom& b) { return a.tau < b.tau; });

    const auto grid = linspace(0.0, 9.0, 41);
    const auto va = evaluate_path(make_path(first, 9.0, 0.0), grid);
    const auto vb = evaluate_path(make_path(second, 9.0, 0.0), grid);
    const auto vm = evaluate_path(make_path(merged, 9.0, 0.0), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(vm.values[i] == doctest::Approx(va.values[i] + vb.values[i]).epsilon(1e-12));
    }
}

TEST_CASE("path decays strictly between arrivals") {
    const auto path = generate_atoms(LevyMeasureSpec::exponential(1.0),
                                     MixingMeasureSpec::uniform(1.0, 3.0), 2.0, 10.0, 0.0, 9, 2);
    const auto grid = linspace(0.0, 10.0, 2001);
    const auto values = evaluate_path(path, grid);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool atom_between = std::any_of(
            path.atoms.begin(), path.atoms.end(),
            [&](const Atom& a) { return a.tau > grid[i - 1] && a.tau <= grid[i]; });
        if (!atom_between && values.values[i - 1] > 0.0) {
            CHECK(values.values[i] < values.values[i - 1]);
        }
    }
}

TEST_CASE("evaluate_path validates the query grid") {
    const auto path = make_path({{0.0, 1.0, 1.0}}, 5.0);
    const std::vector<double> unsorted = {1.0, 0.5};
    CHECK_THROWS_AS(evaluate_path(path, unsorted), std::invalid_argument);
    const std::vector<double> outside = {4.0, 6.0};
    CHECK_THROWS_AS(evaluate_path(path, outside), std::invalid_argument);
}

TEST_CASE("path_sup closed cases") {
    {
        // pure decay: no atoms in (u, v], sup is the left endpoint
        const auto path = make_path({{0.0, 1.0, 3.0}}, 10.0);
        CHECK(path_sup(path, 0.0, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
    }
    {
        const auto path = make_path({{0.5, 1.0, 4.0}}, 10.0);
        CHECK(path_sup(path, 0.0, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
    }
    {
        const auto path = make_path({{0.0, 1.0, 2.0}, {1.0, 1.0, 2.0}}, 10.0);
        CHECK(path_sup(path, 0.0, 2.0) ==
              doctest::Approx(2.0 * std::exp(-1.0) + 2.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(path_sup(make_path({}, 10.0), 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("path_sup dominates pointwise evaluation") {
    const auto path = generate_atoms(LevyMeasureSpec::pareto(1.5),
                                     MixingMeasureSpec::gamma_shape(2.0), 3.0, 10.0, 0.0, 21, 0);
    const double u = 1.0, v = 9.0;
    const double sup = path_sup(path, u, v);
    RngStream rng(77, 0);
    std::vector<double> times(100);
    for (auto& t : times) t = u + (v - u) * rng.next_double();
    std::sort(times.begin(), times.end());
    const auto values = evaluate_path(path, times);
    for (const double x : values.values) {
        CHECK(sup >= x - path.prune_tol * (1.0 + static_cast<double>(values.pruned_count)));
    }
}

TEST_CASE("pruned evaluation stays within the reported bound") {
    const auto path_exact = generate_atoms(LevyMeasureSpec::exponential(1.0),
                                           MixingMeasureSpec::uniform(1.0, 3.0), 4.0, 30.0, 0.0,
                                           33, 5, /*prune_tol=*/0.0);
    SamplePath pruned = path_exact;
    pruned.prune_tol = 1e-3;  // deliberately coarse

    const auto grid = linspace(0.0, 30.0, 301);
    const auto coarse = evaluate_path(pruned, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double exact = oracles::brute_value(path_exact.atoms, grid[i]);
        CHECK(std::abs(coarse.values[i] - exact) <=
              coarse.prune_error_bound + 1e-12 * (1.0 + exact));
    }

    const auto tight = evaluate_path(path_exact, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double exact = oracles::brute_value(path_exact.atoms, grid[i]);
        CHECK(tight.values[i] == doctest::Approx(exact).epsilon(1e-11));
    }
}

TEST_CASE("OU recursion oracle agrees for point-mass mixing") {
    const double x0 = 1.3;
    const auto path = generate_atoms(LevyMeasureSpec::exponential(1.0),
                                     MixingMeasureSpec::point_mass(x0), 12.0, 20.0, 0.0, 55, 3);
    const auto grid = linspace(0.0, 20.0, 201);
    const auto values = evaluate_path(path, grid);
    const auto oracle = oracles::ou_recursion(path.atoms, x0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(values.values[i] - oracle[i]) <= 1e-9 + values.prune_error_bound);
    }
}

TEST_CASE("stationary mean of the marginal") {
    // E X(0) = m_-1(pi) * mean jump = 1 for exponential(1) jumps, x0 = 1
    const auto levy = LevyMeasureSpec::exponential(1.0);
    const auto pi = MixingMeasureSpec::point_mass(1.0);
    const double burn = 8.0;  // e^-8 < 1e-3
    REQUIRE(burn_in_bound(pi, levy, 0.0, burn, 0.0).total() < 1e-3);

    const int replicates = 10000;
    std::vector<double> x0(replicates);
    const std::vector<double> t0 = {0.0};
    for (int r = 0; r < replicates; ++r) {
        const auto path = generate_atoms(levy, pi, burn, 1.0, 0.0, 10101, r);
        x0[r] = evaluate_path(path, t0).values[0];
    }
    const double mean = oracles::mean_of(x0);
    const double se = oracles::stderr_of(x0);
    const double expected = pi_moment(pi, -1).value * jump_mean_above(levy, 0.0);
    CHECK(std::abs(mean - expected) < 3.0 * se + 1e-3);
}

TEST_CASE("burn-in bound closed cases") {
    const auto levy = LevyMeasureSpec::dirac(1.0);
    const auto pi = MixingMeasureSpec::point_mass(1.0);
    const auto bound = burn_in_bound(pi, levy, 0.5, 10.0, 0.0);
    CHECK(bound.exact);
    CHECK(bound.total() == doctest::Approx(std::exp(-10.0)).epsilon(1e-12));
    // B -> infinity drives the bound to zero
    CHECK(burn_in_bound(pi, levy, 0.5, 500.0, 0.0).total() < 1e-200);

    // gamma(2) mixing, exponential jumps: closed form 1/(1+B)
    const auto gam = MixingMeasureSpec::gamma_shape(2.0);
    const auto exp_levy = LevyMeasureSpec::exponential(1.0);
    for (double b : {1.0, 10.0, 100.0}) {
        CHECK(burn_in_bound(gam, exp_levy, 0.0, b, 0.0).total() ==
              doctest::Approx(1.0 / (1.0 + b)).epsilon(1e-10));
    }
}

TEST_CASE("burn-in bound for infinite-mean jumps") {
    const auto levy = LevyMeasureSpec::pareto(1.0);
    const auto pi = MixingMeasureSpec::point_mass(1.0);
    CHECK_THROWS_AS(burn_in_bound(pi, levy, 0.0, 5.0, 0.0), std::domain_error);

    const double z_star = 10.0;
    const double tol = 1e-12;
    const auto bound = burn_in_bound(pi, levy, 0.0, 5.0, 0.0, z_star, tol);
    CHECK_FALSE(bound.exact);
    CHECK(bound.mean_part == doctest::Approx(std::log(10.0) * std::exp(-5.0)).epsilon(1e-10));

    // independent oracle for the big-jump count at a single rate x0 = 1:
    // integral over z > z_star of max(0, log(z/tol) - s) z^-2 dz
    const double s = 5.0;
    const double count_oracle = oracles::integrate_to_inf(
        [&](double z) {
            const double excess = std::log(z / tol) - s;
            return excess > 0.0 ? excess * std::pow(z, -2.0) : 0.0;
        },
        z_star);
    CHECK(bound.big_jump_count == doctest::Approx(count_oracle).epsilon(1e-7));

    // monotone in B
    const auto later = burn_in_bound(pi, levy, 0.0, 50.0, 0.0, z_star, tol);
    CHECK(later.total() < bound.total());
}

TEST_CASE("truncation bias") {
    CHECK(truncation_bias(LevyMeasureSpec::pareto(2.0), MixingMeasureSpec::gamma_shape(2.0),
                          1.0) == 0.0);
    CHECK(truncation_bias(LevyMeasureSpec::bounded_infinite(),
                          MixingMeasureSpec::point_mass(1.0), 0.1) ==
          doctest::Approx(0.1).epsilon(1e-12));
    CHECK(truncation_bias(LevyMeasureSpec::exponential(1.0), MixingMeasureSpec::gamma_shape(2.0),
                          1.0) == doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(truncation_bias(LevyMeasureSpec::exponential(1.0), MixingMeasureSpec::gamma_shape(2.0),
                          0.0) == 0.0);
}

TEST_CASE("auto burn-in hits its target") {
    {
        const auto result = auto_burn_in(LevyMeasureSpec::exponential(1.0),
                                         MixingMeasureSpec::point_mass(1.0), 0.0);
        CHECK_FALSE(result.capped);
        CHECK(result.achieved_bound <= 1e-3);
        CHECK(result.burn_in < 20.0);
    }
    {
        // infinite-mean jumps go through the capped bound
        const auto result = auto_burn_in(LevyMeasureSpec::pareto(1.0),
                                         MixingMeasureSpec::gamma_shape(2.0), 0.0);
        CHECK_FALSE(result.capped);
        CHECK(result.achieved_bound <= 1e-3);
    }
}

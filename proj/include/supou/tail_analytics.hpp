#pragma once

#include <vector>

#include "supou/measures.hpp"

namespace supou {

// Derived tail of the marginal Levy measure:
// eta_bar(r) = integral of lambda_bar(z)/z over (r, inf).
// Closed form for every catalog member.
double eta_bar(const LevyMeasureSpec& levy, double r);

// Same functional by adaptive quadrature after the substitution z = r e^u
// (integral of lambda_bar(r e^u) du), with the analytic tail appended past the
// cutoff where the integrand has decayed below 1e-16 of its initial value.
// Kept as a certified cross-check of the closed forms.
double eta_bar_quad(const LevyMeasureSpec& levy, double r);

struct TailTable {
    std::vector<double> r;
    std::vector<double> lambda_bar;
    std::vector<double> eta_bar;
    // eta_bar / lambda_bar; NaN marks "absent" where lambda_bar < 1e-300
    std::vector<double> ratio;
};

std::vector<double> geometric_grid(double rmin, double rmax, int points);

// Tail table over a geometric grid with r_min >= 1.
TailTable eta_lambda_ratio_scan(const LevyMeasureSpec& levy, const std::vector<double>& r_grid);

// Dominated-variation diagnostics. ratio_sup scans lambda_bar(x)/lambda_bar(2x)
// over the grid (inf when the tail hits zero between x and 2x, NaN when the
// tail is zero on the whole grid). The boolean classifications are the exact
// catalog values; bounded-support tails are classified not dominatedly varying
// and as satisfying the decay condition (their tail is eventually zero).
struct DomVarIndex {
    double ratio_sup = 0.0;
    bool is_dominated = false;
    bool growth_condition_holds = false;
};

// pre: grid spans at least four decades
DomVarIndex domvar_index(const LevyMeasureSpec& levy, const std::vector<double>& r_grid);

enum class Finiteness { Finite, Infinite };

// E X(t)^beta finite iff the jump measure integrates z^beta above 1.
Finiteness moment_classifier(const LevyMeasureSpec& levy, double beta);

// E e^{a X(t)} finite iff the jump measure integrates e^{a z} above 1.
Finiteness exp_moment_classifier(const LevyMeasureSpec& levy, double a);

// log mgf of the marginal for bounded-support jump measures:
// Phi(s) = integral of lambda_bar(z) (e^{sz}-1)/z over (0, inf).
// Domain: Dirac(z0 <= 1) or BoundedInfinite.
double mgf_log(const LevyMeasureSpec& levy, double s);

// Markov bound P(X(t) > d) <= exp(Phi(s) - s d).
double chernoff_tail_bound(const LevyMeasureSpec& levy, double d, double s);

// Supremum-tail asymptotic for regularly varying jumps:
// P(sup over [0,T] of X > r) ~ (T + m_-1(pi)/gamma) lambda_bar(r).
// Domain: Pareto jump measure, finite m_0(pi).
double sup_tail_prediction(const LevyMeasureSpec& levy, const MixingMeasureSpec& pi, double T,
                           double r);

}  // namespace supou

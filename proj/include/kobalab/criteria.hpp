#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kobalab/metric.hpp"
#include "kobalab/paths.hpp"

namespace kobalab {

enum class IntegralVerdict { Divergent, Convergent, Inconclusive };
enum class ConditionVerdict { Holds, Violated, Inconclusive };
std::string verdict_name(IntegralVerdict v);
std::string verdict_name(ConditionVerdict v);

struct LogFit {
    double C = 0.0;      // k(z0,z) ~ C + alpha log(1/delta)
    double alpha = 0.0;
    double max_residual = 0.0;
    int samples = 0;
};

struct GoldilocksReport {
    double eps0 = 0.0;
    std::vector<double> r_grid;                 // decreasing
    std::vector<MShellEstimate> shells;
    std::vector<double> partial_lower;          // I(r_k) with the lower M variant
    std::vector<double> partial_upper;
    LogFit fit;
    IntegralVerdict verdict_cond1 = IntegralVerdict::Inconclusive;
    ConditionVerdict verdict_cond2 = ConditionVerdict::Inconclusive;
};

struct GoldilocksBudget {
    MShellBudget shell;
    int fit_samples = 16;
    DistanceBudget fit_distance{16, 250, 65, 1};  // the log fit needs upper bounds, not precision
    double divergence_increment = 0.5;  // required partial-integral gain per decade
    int divergence_decades = 3;
};

std::vector<double> default_r_grid(double eps0, double r_min = 1e-6, int per_decade = 3);

// Def-1.8 check: condition 1 through partial integrals of M(r)/r on a log
// grid, condition 2 through a logarithmic fit of distance growth.
GoldilocksReport goldilocks_check(const Domain& dom, double eps0,
                                  std::vector<double> r_grid = {},
                                  const GoldilocksBudget& budget = {});

struct GrowthFn {
    enum class Form { Log, Power };
    Form form = Form::Log;
    double A = 0.0;
    double alpha = 0.5;
    double beta = 1.0;  // Power only: f(x) = A + alpha x^beta

    double value(double x) const;
    double dvalue(double x) const;  // f'(x)
    std::string name() const;
};

struct EvlReport {
    Ball localizer;
    GrowthFn f;
    double cond1_margin = 0.0;        // max over samples of k_lower - f(1/delta)
    double cond1_holds_margin = 0.0;  // max over samples of k_upper - f(1/delta)
    std::vector<MShellEstimate> shells;
    std::vector<double> cond3_partials;  // increasing as r_min shrinks
    ConditionVerdict cond1 = ConditionVerdict::Inconclusive;
    ConditionVerdict cond2 = ConditionVerdict::Inconclusive;
    ConditionVerdict cond3 = ConditionVerdict::Inconclusive;
    LogFit shell_power_fit;  // log M vs log r, slope = epsilon of M <= (1/c) r^eps
};

struct EvlBudget {
    MShellBudget shell;
    int cond1_samples = 12;
    DistanceBudget distance;
    double r_min = 1e-6;
    int per_decade = 3;
};

// Thm-1.9 hypothesis checks on a boundary localizer U.
EvlReport evl_check(const Domain& dom, const Ball& localizer, const GrowthFn& f, double r0,
                    const EvlBudget& budget = {});

struct ClaimItem {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double bound = 0.0;
};

struct ExampleClaimsReport {
    int which = 0;
    std::vector<ClaimItem> items;
    GoldilocksReport goldilocks;
    Point p0;
    bool all_passed = false;
};

struct ExampleClaimsBudget {
    double tol = 0.1;           // relative slack on the quantitative bounds
    double integral_tol = 0.15; // slack on the closed-form partial integral
    int convexity_samples = 10000;
    GoldilocksBudget goldilocks;
    // r values for the shell bound checks; empty selects the subset of
    // {e^-4, e^-9, e^-16} on which the flat-region formula is attainable for
    // the given parameters (the paper's bounds are asymptotic in r)
    std::vector<double> m_grid;
    enum class IntegralCheck { Auto, On, Off };
    IntegralCheck integral_check = IntegralCheck::Auto;
};

// Quantitative checks of the section-5 claims on the example domains.
ExampleClaimsReport example_claims_check(int which, const Domain& dom,
                                         const ExampleClaimsBudget& budget = {});

}  // namespace kobalab

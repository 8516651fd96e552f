#pragma once

#include <optional>
#include <string>

#include "kobalab/domain.hpp"

namespace kobalab {

struct MetricEstimate {
    double lower = 0.0;
    double upper = 0.0;
    std::string lower_method;
    std::string upper_method;
};

// Exact Kobayashi-Royden metric on a model domain (disk = polydisk with one
// factor). Used as the test oracle and as the fast path for model kinds.
double exact_model_metric(const Domain& model, const Point& z, const Direction& v);

// Two-sided bounds:  upper = ||v|| / r_Omega(z;v)  (elementary upper bound),
// lower = max(enclosing-ball exact metric, ||v||/(2 r_Omega) when convex).
// Model kinds return the exact value on both sides.
MetricEstimate metric_bounds(const Domain& dom, const Point& z, const Direction& v,
                             const LineRadiusOpts& lr_opts = {});

// Closed-form lower bound on the metric that never calls the membership
// oracle: the enclosing-ball metric. Cheap, used by length lower bounds.
double metric_floor(const Domain& dom, const Point& z, const Direction& v);

struct Ball {
    Point center;
    double radius = 0.0;
};

struct MShellEstimate {
    double r = 0.0;
    double M_lower = 0.0;
    double M_upper = 0.0;
    std::optional<Ball> localizer;
    int sample_count = 0;
};

struct MShellBudget {
    int points = 128;          // shell anchor points
    int directions = 10;       // direction fan per point (plus coordinate axes)
    double shell_width = 0.25; // relative band: delta in (r(1-h), r]
    int refine_rounds = 24;    // hill-climb proposals around the best sample
    std::uint64_t seed = 1;
    // moderate phase fan, deflated so M_lower stays a certified lower bound
    LineRadiusOpts lr{24, 0.01, 1, 1e-12};
};

// Estimate of M_Omega(r) = sup{1/kappa(z;v) : delta(z) <= r, ||v||=1}
// (restricted to the localizer ball when given):
//   M_lower = max of 1/upper-metric, M_upper = max of 1/lower-metric.
MShellEstimate estimate_M_shell(const Domain& dom, double r, std::optional<Ball> localizer,
                                const MShellBudget& budget = {});

}  // namespace kobalab

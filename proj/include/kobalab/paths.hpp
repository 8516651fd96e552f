#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kobalab/domain.hpp"
#include "kobalab/metric.hpp"

namespace kobalab {

struct PathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Discretized curve: points z_i at strictly increasing parameters t_i.
struct SampledPath {
    std::vector<double> grid;
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
};

void validate_path(const Domain& dom, const SampledPath& path, double step_max = 1e300);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

// Composite midpoint quadrature of the metric bounds along the chords.
Interval kobayashi_length(const Domain& dom, const SampledPath& path,
                          const LineRadiusOpts& lr_opts = {});

struct DistanceEstimate {
    double lower = 0.0;
    double upper = 0.0;
    SampledPath witness;  // realizes the upper bound
};

struct DistanceBudget {
    int control_points = 48;   // polyline control points (optimizer)
    int iterations = 1500;     // accepted/rejected proposals
    int output_points = 257;   // samples in the returned witness
    std::uint64_t seed = 1;
    // cheap phase fan inside the optimizer loop; the larger deflation keeps
    // the upper bound honest against the coarser sampling
    LineRadiusOpts lr{16, 0.02, 1, 1e-12};
    // run the variational optimizer even on model kinds (their metric stays
    // exact); used to test the length-infimum route against the closed forms
    bool force_variational = false;
};

// Distance as an infimum of path lengths. Model kinds (disk/polydisk/ball)
// and graph subspaces use closed forms with exact geodesic witnesses; other
// domains run a derivative-free polyline optimizer on the upper length and
// pair it with closed-form lower bounds.
DistanceEstimate estimate_distance(const Domain& dom, const Point& z, const Point& w,
                                   const DistanceBudget& budget = {});

// Closed-form lower bound on k_Omega(z,w): enclosing-ball distance, improved
// by a supporting-half-space Poincare bound when the domain is convex.
double distance_floor(const Domain& dom, const Point& z, const Point& w);

// Exact geodesic on a model domain, sampled uniformly in arc length.
SampledPath exact_model_geodesic(const Domain& model, const Point& z, const Point& w,
                                 int samples = 257);

struct AlmostGeodesicCertificate {
    double lambda = 1.0;
    double kappa = 0.0;
    double worst_pair_margin = 0.0;  // min over sampled pairs of all inequality slacks
    double speed_max = 0.0;          // max sampled upper metric of (sigma, sigma')
    double speed_min = 0.0;          // min of the same sample
    double lipschitz_const = 0.0;    // max Euclidean chord / parameter ratio
    double length_lower = 0.0;
    double length_upper = 0.0;
    double subsegment_margin = 0.0;  // min over pairs of the Lemma-2.7 slack
    int pair_count = 0;
};

struct ReparamResult {
    SampledPath path;
    AlmostGeodesicCertificate cert;
};

// Arc-length reparametrization sigma = gamma o f^{-1} with f the cumulative
// upper-metric length; yields a unit-speed curve and a (1, kappa) certificate.
ReparamResult reparametrize_unit_speed(const Domain& dom, const SampledPath& path, double kappa,
                                       const LineRadiusOpts& lr_opts = {});

// Conservative (interval-based) check of the Def-2.5 inequalities, the
// Lemma-2.7 subsegment bound and the Lipschitz bound on sampled pairs.
AlmostGeodesicCertificate verify_almost_geodesic(const Domain& dom, const SampledPath& path,
                                                 double lambda, double kappa,
                                                 int pair_marks = 33,
                                                 const DistanceBudget& budget = {});

// Thm-2.8 style construction: near-minimizing path + unit-speed
// reparametrization, gated on closing the length gap to within kappa.
ReparamResult almost_geodesic_between(const Domain& dom, const Point& z, const Point& w,
                                      double kappa, const DistanceBudget& budget = {},
                                      double slack = 0.25);

// CSV: t, Re z1, Im z1, ..., Re zd, Im zd
void write_path_csv(std::ostream& os, const SampledPath& path);

}  // namespace kobalab

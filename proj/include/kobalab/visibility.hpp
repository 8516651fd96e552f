#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kobalab/paths.hpp"

namespace kobalab {

// Interval form of the Gromov product (x|y)_o = (k(o,x)+k(o,y)-k(x,y))/2,
// clamped below at 0. Distances are exact on model kinds and variational
// estimates elsewhere.
Interval gromov_product(const Domain& dom, const Point& o, const Point& x, const Point& y,
                        const DistanceBudget& budget = {});

enum class Trend { Bounded, Diverging, Inconclusive };
std::string trend_name(Trend t);

struct ApproachSchedule {
    enum class Kind {
        TowardBase,       // x_n = p + delta_n * unit(base - p), delta_n = scale * 2^-n
        AdversarialFlat,  // bidisk corner schedule x_n=(r_n,s_n), y_n=(-r_n,s_n),
                          // s_n = tanh(2 artanh r_n), r_n = 1 - scale * 2^(-n/2);
                          // the half-exponent rate keeps artanh(s_n) = 2 artanh(r_n)
                          // exact in doubles across the whole schedule
        Custom
    };
    Kind kind = Kind::TowardBase;
    int steps = 20;
    double scale = 1.0;
    std::vector<std::pair<Point, Point>> custom;

    std::vector<std::pair<Point, Point>> pairs(const Domain& dom, const Point& p,
                                               const Point& q) const;
};

struct GromovProbeEntry {
    Point x, y;
    Interval product;
    double width = 0.0;
};

struct GromovProbeReport {
    Point o, p, q;
    std::vector<GromovProbeEntry> entries;
    Trend trend = Trend::Inconclusive;
};

// Prop-4.1-style probe: Gromov products along interior sequences x_n -> p,
// y_n -> q; bounded products are visibility evidence, divergence refutes it.
GromovProbeReport gromov_limsup_probe(const Domain& dom, const Point& o, const Point& p,
                                      const Point& q, const ApproachSchedule& schedule = {},
                                      const DistanceBudget& budget = {});

struct DivergenceEntry {
    Point x, y;
    double lower = 0.0;  // certified lower bound on k(x_n, y_n)
};

struct DivergenceReport {
    Point p, q;
    std::vector<DivergenceEntry> entries;
    Trend trend = Trend::Inconclusive;
};

// Lemma-3.1-style probe: k(x_n, y_n) -> infinity along sequences converging
// to distinct boundary points.
DivergenceReport boundary_pair_divergence_probe(const Domain& dom, const Point& p, const Point& q,
                                                const ApproachSchedule& schedule = {},
                                                const DistanceBudget& budget = {});

enum class VisibilityVerdict { VisibleEvidence, FailureEvidence, Inconclusive };
std::string verdict_name(VisibilityVerdict v);

struct VisibilityTrial {
    Point from, to;
    double max_interior_depth = 0.0;
    Point depth_location;
    double cert_margin = 0.0;
    bool constructed = false;
    std::string note;
};

struct VisibilityReport {
    Point p, q;
    double neighborhood_radius = 0.0;  // Euclidean radius covering the trial endpoints
    double compact_threshold = 0.0;
    double kappa = 0.0;
    std::vector<VisibilityTrial> trials;
    VisibilityVerdict verdict = VisibilityVerdict::Inconclusive;
    int failed_constructions = 0;
};

// Def-1.1 probe: build (1,kappa)-almost-geodesics (exact geodesics on model
// kinds) between endpoint pairs approaching p and q, and track how deep into
// the domain each one passes.
VisibilityReport visibility_probe(const Domain& dom, const Point& p, const Point& q, double kappa,
                                  int trials, const ApproachSchedule& schedule = {},
                                  const DistanceBudget& budget = {},
                                  std::optional<double> compact_threshold = std::nullopt);

// Lifted geodesic of the graph subspace V_f: (sigma1, f o sigma1) with sigma1
// the exact disk geodesic, certified via the exact subspace distances.
ReparamResult graph_subspace_geodesic(const Domain& graph, cplx z, cplx w, int samples = 257);

}  // namespace kobalab

#include "kobalab/visibility.hpp"

#include <algorithm>
#include <cmath>

namespace kobalab {

std::string trend_name(Trend t) {
    switch (t) {
        case Trend::Bounded: return "bounded";
        case Trend::Diverging: return "diverging";
        case Trend::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string verdict_name(VisibilityVerdict v) {
    switch (v) {
        case VisibilityVerdict::VisibleEvidence: return "visible-evidence";
        case VisibilityVerdict::FailureEvidence: return "failure-evidence";
        case VisibilityVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Interval gromov_product(const Domain& dom, const Point& o, const Point& x, const Point& y,
                        const DistanceBudget& budget) {
    DistanceEstimate ox = estimate_distance(dom, o, x, budget);
    DistanceEstimate oy = estimate_distance(dom, o, y, budget);
    DistanceEstimate xy = estimate_distance(dom, x, y, budget);
    Interval g;
    g.lower = 0.5 * (ox.lower + oy.lower - xy.upper);
    g.upper = 0.5 * (ox.upper + oy.upper - xy.lower);
    g.lower = std::max(0.0, g.lower);
    g.upper = std::max(g.upper, g.lower);
    return g;
}

std::vector<std::pair<Point, Point>> ApproachSchedule::pairs(const Domain& dom, const Point& p,
                                                             const Point& q) const {
    if (kind == Kind::Custom) return custom;
    std::vector<std::pair<Point, Point>> out;
    if (kind == Kind::AdversarialFlat) {
        if (dom.kind != DomainKind::Polydisk || dom.dim != 2)
            throw InputError("adversarial-flat schedule is defined on the bidisk");
        for (int n = 1; n <= steps; ++n) {
            double delta = scale * std::pow(2.0, -0.5 * n);
            double r = 1.0 - delta;
            double s = std::tanh(2.0 * artanh(r));
            out.push_back({Point{cplx(r, 0), cplx(s, 0)}, Point{cplx(-r, 0), cplx(s, 0)}});
        }
        return out;
    }
    Direction up = normalized(dom.base_point - p);
    Direction uq = normalized(dom.base_point - q);
    for (int n = 1; n <= steps; ++n) {
        double delta = scale * std::pow(2.0, -n);
        Point x = p + delta * up;
        Point y = q + delta * uq;
        if (!contains(dom, x) || !contains(dom, y))
            throw DomainError("approach schedule leaves the domain at step " + std::to_string(n));
        out.push_back({x, y});
    }
    return out;
}

namespace {

Trend detect_trend(const std::vector<double>& vals, double stable_tol, double slope_min) {
    const int n = static_cast<int>(vals.size());
    if (n < 6) return Trend::Inconclusive;
    int L = n - n / 3;
    double lo = 1e300, hi = -1e300;
    for (int i = L; i < n; ++i) {
        lo = std::min(lo, vals[static_cast<std::size_t>(i)]);
        hi = std::max(hi, vals[static_cast<std::size_t>(i)]);
    }
    bool record_breaking = true;
    double prev_max = -1e300;
    for (int i = 0; i < n; ++i) {
        if (i >= L && vals[static_cast<std::size_t>(i)] <= prev_max) record_breaking = false;
        prev_max = std::max(prev_max, vals[static_cast<std::size_t>(i)]);
    }
    double slope = (vals[static_cast<std::size_t>(n - 1)] - vals[static_cast<std::size_t>(L)]) /
                   std::max(1, n - 1 - L);
    if (record_breaking && slope >= slope_min) return Trend::Diverging;
    if (hi - lo <= stable_tol) return Trend::Bounded;
    return Trend::Inconclusive;
}

}  // namespace

GromovProbeReport gromov_limsup_probe(const Domain& dom, const Point& o, const Point& p,
                                      const Point& q, const ApproachSchedule& schedule,
                                      const DistanceBudget& budget) {
    if (dist(p, q) == 0.0) throw InputError("gromov_limsup_probe: p and q must be distinct");
    GromovProbeReport rep;
    rep.o = o;
    rep.p = p;
    rep.q = q;
    std::vector<double> mids;
    for (const auto& [x, y] : schedule.pairs(dom, p, q)) {
        GromovProbeEntry e;
        e.x = x;
        e.y = y;
        e.product = gromov_product(dom, o, x, y, budget);
        e.width = e.product.upper - e.product.lower;
        mids.push_back(0.5 * (e.product.lower + e.product.upper));
        rep.entries.push_back(std::move(e));
    }
    rep.trend = detect_trend(mids, 1e-3, 0.05);
    return rep;
}

DivergenceReport boundary_pair_divergence_probe(const Domain& dom, const Point& p, const Point& q,
                                                const ApproachSchedule& schedule,
                                                const DistanceBudget& budget) {
    if (dist(p, q) == 0.0)
        throw InputError("boundary_pair_divergence_probe: p and q must be distinct");
    (void)budget;
    DivergenceReport rep;
    rep.p = p;
    rep.q = q;
    std::vector<double> vals;
    for (const auto& [x, y] : schedule.pairs(dom, p, q)) {
        DivergenceEntry e;
        e.x = x;
        e.y = y;
        e.lower = distance_floor(dom, x, y);
        vals.push_back(e.lower);
        rep.entries.push_back(std::move(e));
    }
    rep.trend = detect_trend(vals, 1e-6, 0.05);
    return rep;
}

VisibilityReport visibility_probe(const Domain& dom, const Point& p, const Point& q, double kappa,
                                  int trials, const ApproachSchedule& schedule,
                                  const DistanceBudget& budget,
                                  std::optional<double> compact_threshold) {
    if (!(kappa > 0.0)) throw InputError("visibility_probe: kappa must be positive");
    if (dist(p, q) == 0.0) throw InputError("visibility_probe: p and q must be distinct");

    VisibilityReport rep;
    rep.p = p;
    rep.q = q;
    rep.kappa = kappa;
    rep.compact_threshold =
        compact_threshold ? *compact_threshold : 0.5 * boundary_distance(dom, dom.base_point);

    ApproachSchedule sched = schedule;
    sched.steps = trials;
    auto pairs = sched.pairs(dom, p, q);

    BoundaryOpts depth_opts;
    depth_opts.directions = 24;
    depth_opts.refine = dom.is_model();

    double nbr = 0.0;
    for (const auto& [x, y] : pairs) {
        nbr = std::max({nbr, dist(x, p), dist(y, q)});
        VisibilityTrial trial;
        trial.from = x;
        trial.to = y;
        try {
            SampledPath path;
            if (dom.is_model() || dom.kind == DomainKind::Graph) {
                path = exact_model_geodesic(dom, x, y, budget.output_points);
                trial.cert_margin = kappa;  // true geodesics satisfy Def 2.5 for any kappa > 0
            } else {
                ReparamResult rr = almost_geodesic_between(dom, x, y, kappa, budget);
                path = std::move(rr.path);
                trial.cert_margin = rr.cert.worst_pair_margin;
            }
            double best = -1.0;
            for (const auto& pt : path.points) {
                double d = boundary_distance(dom, pt, depth_opts);
                if (d > best) {
                    best = d;
                    trial.depth_location = pt;
                }
            }
            trial.max_interior_depth = best;
            trial.constructed = true;
        } catch (const std::exception& ex) {
            trial.note = ex.what();
            ++rep.failed_constructions;
        }
        rep.trials.push_back(std::move(trial));
    }
    rep.neighborhood_radius = nbr;

    std::vector<double> depths;
    for (const auto& t : rep.trials)
        if (t.constructed) depths.push_back(t.max_interior_depth);
    if (depths.empty()) {
        rep.verdict = VisibilityVerdict::Inconclusive;
        return rep;
    }
    double dmin = *std::min_element(depths.begin(), depths.end());
    bool monotone_down = true;
    for (std::size_t i = 0; i + 1 < depths.size(); ++i)
        if (depths[i + 1] > depths[i] * (1.0 + 1e-9) + 1e-12) monotone_down = false;
    if (dmin >= rep.compact_threshold)
        rep.verdict = VisibilityVerdict::VisibleEvidence;
    else if (monotone_down && depths.back() < rep.compact_threshold &&
             depths.back() <= 0.25 * depths.front())
        rep.verdict = VisibilityVerdict::FailureEvidence;
    else
        rep.verdict = VisibilityVerdict::Inconclusive;
    return rep;
}

ReparamResult graph_subspace_geodesic(const Domain& graph, cplx z, cplx w, int samples) {
    if (graph.kind != DomainKind::Graph)
        throw InputError("graph_subspace_geodesic: domain is not a graph subspace");
    if (std::abs(z - w) == 0.0) throw InputError("graph_subspace_geodesic: z == w");
    if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
        throw InputError("graph_subspace_geodesic: endpoints must lie in the unit disk");
    Point a(static_cast<std::size_t>(graph.dim), cplx(0, 0));
    Point b = a;
    a[0] = z;
    b[0] = w;
    CVec fz = graph.graph_f(z), fw = graph.graph_f(w);
    for (int i = 1; i < graph.dim; ++i) {
        a[static_cast<std::size_t>(i)] = fz[static_cast<std::size_t>(i - 1)];
        b[static_cast<std::size_t>(i)] = fw[static_cast<std::size_t>(i - 1)];
    }
    ReparamResult res;
    res.path = exact_model_geodesic(graph, a, b, samples);
    res.cert = verify_almost_geodesic(graph, res.path, 1.0, 1e-6);
    return res;
}

}  // namespace kobalab

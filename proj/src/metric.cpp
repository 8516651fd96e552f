#include "kobalab/metric.hpp"

#include <algorithm>
#include <cmath>

#include "kobalab/model.hpp"
#include "kobalab/rng.hpp"

namespace kobalab {

double exact_model_metric(const Domain& model, const Point& z, const Direction& v) {
    if (!(norm(v) > 0.0)) throw InputError("exact_model_metric: zero direction");
    switch (model.kind) {
        case DomainKind::Ball:
            return ball_metric(model.enclosing_center, model.ball_radius, z, v);
        case DomainKind::Polydisk:
            return polydisk_metric(model.poly_radii, z, v);
        default:
            throw InputError("exact_model_metric: not a model domain");
    }
}

double metric_floor(const Domain& dom, const Point& z, const Direction& v) {
    return ball_metric(dom.enclosing_center, dom.enclosing_radius, z, v);
}

MetricEstimate metric_bounds(const Domain& dom, const Point& z, const Direction& v,
                             const LineRadiusOpts& lr_opts) {
    if (!(norm(v) > 0.0)) throw InputError("metric_bounds: zero direction");

    MetricEstimate e;
    if (dom.kind == DomainKind::Graph) {
        // V_f is biholomorphic to D via the first coordinate, so the metric
        // only sees (z1, v1); near-graph points (chord midpoints of sampled
        // graph curves) are fine.
        double a = std::abs(z[0]);
        if (a >= 1.0) throw DomainError("metric_bounds: graph point outside the disk");
        double v1 = std::abs(v[0]);
        if (!(v1 > 0.0)) throw InputError("metric_bounds: direction not tangent to the graph");
        e.lower = e.upper = v1 / (1.0 - a * a);
        e.lower_method = e.upper_method = "graph-exact";
        return e;
    }
    if (!contains(dom, z)) throw DomainError("metric_bounds: point not interior");
    if (dom.is_model()) {
        e.lower = e.upper = exact_model_metric(dom, z, v);
        e.lower_method = e.upper_method = "exact-model";
        return e;
    }

    double r = line_radius(dom, z, v, lr_opts);
    double nv = norm(v);
    e.upper = nv / r;
    e.upper_method = "line-radius";
    double ball = metric_floor(dom, z, v);
    e.lower = ball;
    e.lower_method = "enclosing-ball";
    if (dom.convex && 0.5 * nv / r > ball) {
        e.lower = 0.5 * nv / r;
        e.lower_method = "convex-half-bound";
    }
    e.lower = std::min(e.lower, e.upper);
    return e;
}

namespace {

bool in_ball(const Ball& b, const Point& z) { return dist(z, b.center) < b.radius; }

struct ShellPoint {
    Point z;
    double depth = 0.0;
};

// Walk outward along the ray from an interior anchor until the boundary
// distance lands in (r(1-h), r]. Exit time first, then secant corrections.
std::optional<ShellPoint> place_on_shell(const Domain& dom, const Point& from,
                                         const Direction& u, double r, double h) {
    BoundaryOpts coarse;
    coarse.directions = 24;
    coarse.refine = false;
    coarse.tol_rel = 1e-9;
    BoundaryOpts fine;
    fine.directions = 32;
    fine.refine = true;
    fine.tol_rel = 1e-10;

    Direction un = normalized(u);
    double T;
    try {
        T = ray_exit(dom, from, un);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    // aim near the deep edge of the band: the shell supremum lives at
    // delta = r, the band only absorbs placement error
    double target = r * (1.0 - 0.1 * h);
    double lo = r * (1.0 - h), hi = r;
    double t = T - target;
    if (t <= 0.0) t = 0.5 * T;
    for (int it = 0; it < 6; ++it) {
        Point z = from + t * un;
        if (!(dom.rho(z) < 0.0)) {
            t = 0.5 * (t + (T - 1e-12 * T));
            continue;
        }
        double d = boundary_distance(dom, z, coarse);
        if (d > lo && d <= hi) {
            double df = boundary_distance(dom, z, fine);
            if (df > lo && df <= hi) return ShellPoint{z, df};
            d = df;
        }
        // boundary distance decreases roughly at unit rate along the ray
        t += (d - target);
        if (t <= 0.0 || t >= T) t = std::clamp(t, 1e-6 * T, T * (1.0 - 1e-9));
    }
    return std::nullopt;
}

}  // namespace

MShellEstimate estimate_M_shell(const Domain& dom, double r, std::optional<Ball> localizer,
                                const MShellBudget& budget) {
    if (!(r > 0.0) || r >= dom.enclosing_radius)
        throw InputError("estimate_M_shell: r must lie in (0, enclosing_radius)");
    if (budget.points < 1) throw InputError("estimate_M_shell: empty budget");

    const double h = budget.shell_width;
    const int d = dom.dim;

    // anchor rays: all coordinate half-axes first (they find the flat spots
    // of the example domains exactly), then a deterministic spread
    std::vector<Direction> rays;
    for (int i = 0; i < d; ++i)
        for (int s = 0; s < 4; ++s) {
            Direction e(static_cast<std::size_t>(d), cplx(0, 0));
            e[static_cast<std::size_t>(i)] =
                s == 0 ? cplx(1, 0) : s == 1 ? cplx(-1, 0) : s == 2 ? cplx(0, 1) : cplx(0, -1);
            rays.push_back(e);
        }
    auto fib = fibonacci_directions(d, std::max(0, budget.points - static_cast<int>(rays.size())));
    rays.insert(rays.end(), fib.begin(), fib.end());

    Point anchor = dom.base_point;
    if (localizer) {
        // aim rays into the localizer: walk from the base point toward points
        // spread over the localizer ball
        std::vector<Direction> aimed;
        auto eng = make_engine(budget.seed, 0xA11EDu);
        for (std::size_t k = 0; k < rays.size(); ++k) {
            Direction rd = random_direction(eng, d);
            std::uniform_real_distribution<double> uu(0.0, 1.0);
            Point tgt = localizer->center + (localizer->radius * uu(eng)) * rd;
            Direction dir = tgt - anchor;
            if (norm(dir) < 1e-14) continue;
            aimed.push_back(dir);
        }
        rays = std::move(aimed);
    }

    // direction fan for the metric at each shell point
    std::vector<Direction> fan;
    for (int i = 0; i < d; ++i) {
        Direction e(static_cast<std::size_t>(d), cplx(0, 0));
        e[static_cast<std::size_t>(i)] = 1.0;
        fan.push_back(e);  // complex phase is immaterial by homogeneity
    }
    auto extra = fibonacci_directions(d, std::max(0, budget.directions - d));
    fan.insert(fan.end(), extra.begin(), extra.end());

    auto eval_point = [&](const Point& z, double& inv_up, double& inv_lo, Direction& best_v) {
        inv_up = 0.0;
        inv_lo = 0.0;
        for (const auto& v : fan) {
            MetricEstimate mb = metric_bounds(dom, z, v, budget.lr);
            double nv = norm(v);
            if (nv / mb.upper > inv_up) {
                inv_up = nv / mb.upper;
                best_v = v;
            }
            inv_lo = std::max(inv_lo, nv / mb.lower);
        }
    };

    double M_lower = 0.0, M_upper = 0.0;
    int count = 0;
    ShellPoint best_pt;
    Direction best_dir;
    for (const auto& ray : rays) {
        auto sp = place_on_shell(dom, anchor, ray, r, h);
        if (!sp) continue;
        if (localizer && !in_ball(*localizer, sp->z)) continue;
        double iu, il;
        Direction bv;
        eval_point(sp->z, iu, il, bv);
        if (iu > M_lower) {
            M_lower = iu;
            best_pt = *sp;
            best_dir = bv;
        }
        M_upper = std::max(M_upper, il);
        ++count;
    }
    if (count == 0)
        throw SamplingError("estimate_M_shell: no sample found in the shell delta in (" +
                            std::to_string(r * (1.0 - h)) + ", " + std::to_string(r) + "]");

    // hill-climb the argmax within the shell
    auto eng = make_engine(budget.seed, 0xC11Fb5ULL);
    for (int it = 0; it < budget.refine_rounds; ++it) {
        Direction jitter = random_direction(eng, d);
        Point probe = best_pt.z + (0.5 * r) * jitter;
        Direction ray = probe - anchor;
        if (norm(ray) < 1e-14) continue;
        auto sp = place_on_shell(dom, anchor, ray, r, h);
        if (!sp) continue;
        if (localizer && !in_ball(*localizer, sp->z)) continue;
        double iu, il;
        Direction bv;
        eval_point(sp->z, iu, il, bv);
        ++count;
        M_upper = std::max(M_upper, il);
        if (iu > M_lower) {
            M_lower = iu;
            best_pt = *sp;
            best_dir = bv;
        }
    }

    MShellEstimate est;
    est.r = r;
    est.M_lower = M_lower;
    est.M_upper = std::max(M_upper, M_lower);
    est.localizer = localizer;
    est.sample_count = count;
    return est;
}

}  // namespace kobalab

#include "kobalab/paths.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>

#include "kobalab/model.hpp"
#include "kobalab/rng.hpp"

namespace kobalab {

namespace {

bool is_exact_kind(const Domain& dom) {
    return dom.is_model() || dom.kind == DomainKind::Graph;
}

double exact_distance(const Domain& dom, const Point& z, const Point& w) {
    switch (dom.kind) {
        case DomainKind::Ball:
            return ball_distance(dom.enclosing_center, dom.ball_radius, z, w);
        case DomainKind::Polydisk:
            return polydisk_distance(dom.poly_radii, z, w);
        case DomainKind::Graph:
            return disk_distance(z[0], w[0]);
        default:
            throw InputError("exact_distance: not a model domain");
    }
}

double halfspace_bound(const Domain& dom, const Point& z, const Point& w) {
    // supporting half-space at the boundary point nearest to z (and to w);
    // valid lower bound on convex domains
    BoundaryOpts bo;
    bo.directions = 32;
    double best = 0.0;
    for (const Point* p : {&z, &w}) {
        NearestBoundary nb = nearest_boundary(dom, *p, bo);
        // project through the holomorphic pairing zeta(x) = <x - p0, nu>;
        // Omega maps into {Re zeta < 0}
        cplx zz = 0.0, zw = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            zz += (z[i] - nb.point[i]) * std::conj(nb.outward[i]);
            zw += (w[i] - nb.point[i]) * std::conj(nb.outward[i]);
        }
        if (zz.real() >= 0.0 || zw.real() >= 0.0) continue;
        double m = std::abs((zz - zw) / (zz + std::conj(zw)));
        if (m < 1.0) best = std::max(best, artanh(m));
    }
    return best;
}

}  // namespace

double distance_floor(const Domain& dom, const Point& z, const Point& w) {
    if (is_exact_kind(dom)) return exact_distance(dom, z, w);
    double lo = ball_distance(dom.enclosing_center, dom.enclosing_radius, z, w);
    if (dom.convex) lo = std::max(lo, halfspace_bound(dom, z, w));
    return lo;
}

void validate_path(const Domain& dom, const SampledPath& path, double step_max) {
    if (path.points.size() < 2 || path.points.size() != path.grid.size())
        throw PathError("path needs matching grid/points with at least two samples");
    for (std::size_t i = 0; i + 1 < path.grid.size(); ++i) {
        if (!(path.grid[i + 1] > path.grid[i])) throw PathError("grid not strictly increasing");
        if (dist(path.points[i + 1], path.points[i]) > step_max)
            throw PathError("consecutive points exceed step_max");
    }
    for (const auto& p : path.points)
        if (!contains(dom, p)) throw PathError("path leaves the domain");
}

Interval kobayashi_length(const Domain& dom, const SampledPath& path,
                          const LineRadiusOpts& lr_opts) {
    validate_path(dom, path);
    Interval acc;
    const bool graph = dom.kind == DomainKind::Graph;
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
        Point mid = lerp(path.points[i], path.points[i + 1], 0.5);
        Direction dz = path.points[i + 1] - path.points[i];
        if (norm(dz) == 0.0) continue;
        // graph chords bow off the subspace; the graph metric only reads the
        // first coordinate, so the midpoint membership check is ambient-only
        if (!graph && !(dom.rho(mid) < 0.0))
            throw PathError("degenerate path: chord midpoint touches the boundary");
        MetricEstimate mb = metric_bounds(dom, mid, dz, lr_opts);
        acc.lower += mb.lower;
        acc.upper += mb.upper;
    }
    return acc;
}

SampledPath exact_model_geodesic(const Domain& model, const Point& z, const Point& w,
                                 int samples) {
    if (dist(z, w) == 0.0) throw InputError("exact_model_geodesic: degenerate input z == w");
    double L = exact_distance(model, z, w);
    SampledPath p;
    p.grid.reserve(static_cast<std::size_t>(samples));
    p.points.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        double s = L * static_cast<double>(k) / (samples - 1);
        Point pt;
        switch (model.kind) {
            case DomainKind::Ball:
                pt = ball_geodesic_point(model.enclosing_center, model.ball_radius, z, w, s);
                break;
            case DomainKind::Polydisk:
                pt = polydisk_geodesic_point(model.poly_radii, z, w, s);
                break;
            case DomainKind::Graph: {
                cplx a = disk_geodesic_point(z[0], w[0], s);
                CVec f = model.graph_f(a);
                pt.assign(static_cast<std::size_t>(model.dim), cplx(0, 0));
                pt[0] = a;
                for (int i = 1; i < model.dim; ++i) pt[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i - 1)];
                break;
            }
            default:
                throw InputError("exact_model_geodesic: not a model domain");
        }
        p.grid.push_back(s);
        p.points.push_back(std::move(pt));
    }
    // endpoints exactly
    p.points.front() = z;
    p.points.back() = w;
    return p;
}

namespace {

SampledPath resample_polyline(const std::vector<Point>& ctrl, int out) {
    SampledPath p;
    p.grid.reserve(static_cast<std::size_t>(out));
    p.points.reserve(static_cast<std::size_t>(out));
    int K = static_cast<int>(ctrl.size()) - 1;
    for (int j = 0; j < out; ++j) {
        double t = static_cast<double>(j) / (out - 1);
        double x = t * K;
        int i = std::min(static_cast<int>(x), K - 1);
        p.grid.push_back(t);
        p.points.push_back(lerp(ctrl[static_cast<std::size_t>(i)],
                                ctrl[static_cast<std::size_t>(i + 1)], x - i));
    }
    return p;
}

struct SegmentCache {
    std::vector<double> up;  // upper length contribution per control segment
};


bool chord_interior(const Domain& dom, const Point& a, const Point& b, int checks) {
    for (int k = 0; k <= checks; ++k) {
        double t = static_cast<double>(k) / checks;
        if (!(dom.rho(lerp(a, b, t)) < 0.0)) return false;
    }
    return true;
}

}  // namespace

DistanceEstimate estimate_distance(const Domain& dom, const Point& z, const Point& w,
                                   const DistanceBudget& budget) {
    if (!contains(dom, z) || !contains(dom, w))
        throw DomainError("estimate_distance: endpoints must be interior");

    DistanceEstimate de;
    if (dist(z, w) == 0.0) {
        de.lower = de.upper = 0.0;
        de.witness.grid = {0.0, 1.0};
        de.witness.points = {z, w};
        return de;
    }

    if (is_exact_kind(dom) && (!budget.force_variational || dom.kind == DomainKind::Graph)) {
        double L = exact_distance(dom, z, w);
        de.lower = de.upper = L;
        de.witness = exact_model_geodesic(dom, z, w, budget.output_points);
        return de;
    }

    // canonical endpoint order so the estimate is exactly symmetric
    auto lex_less = [](const Point& a, const Point& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
            if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
        }
        return false;
    };
    bool swapped = lex_less(w, z);
    const Point& p0 = swapped ? w : z;
    const Point& p1 = swapped ? z : w;

    de.lower = distance_floor(dom, p0, p1);

    const int K = std::max(8, budget.control_points);
    // dense relaxation only where the metric is closed-form; membership-oracle
    // domains pay thousands of rho evaluations per metric call
    const bool rich =
        budget.iterations >= 500 && (dom.is_model() || budget.force_variational);
    const double h_quad = rich ? std::max(1e-9, dist(p0, p1) / 64.0) : 1e300;

    // Optimization metric. The polydisk max metric has kink valleys that trap
    // coordinate descent, so the relaxation stages anneal through p-norm
    // smoothings of the max (p = 0 means the true metric); lengths reported
    // to the caller are always measured with the true bounds.
    double softmax_p = 0.0;
    auto opt_metric = [&](const Point& z, const Direction& v) -> double {
        if (softmax_p > 0.0 && dom.kind == DomainKind::Polydisk) {
            double acc = 0.0, mx = 0.0;
            for (std::size_t i = 0; i < z.size(); ++i) {
                double r = dom.poly_radii[i];
                double a = std::abs(z[i]) / r;
                double m = (std::abs(v[i]) / r) / (1.0 - a * a);
                mx = std::max(mx, m);
            }
            if (mx == 0.0) return 0.0;
            for (std::size_t i = 0; i < z.size(); ++i) {
                double r = dom.poly_radii[i];
                double a = std::abs(z[i]) / r;
                double m = (std::abs(v[i]) / r) / (1.0 - a * a);
                acc += std::pow(m / mx, softmax_p);
            }
            return mx * std::pow(acc, 1.0 / softmax_p);
        }
        return metric_bounds(dom, z, v, budget.lr).upper;
    };

    auto seg = [&](const Point& a, const Point& b) -> double {
        Direction dz = b - a;
        double n = norm(dz);
        if (n == 0.0) return 0.0;
        if (!rich) return opt_metric(lerp(a, b, 0.5), dz);
        int sub = std::clamp(static_cast<int>(std::ceil(n / h_quad)), 1, 32);
        double acc = 0.0;
        for (int k = 0; k < sub; ++k)
            acc += opt_metric(lerp(a, b, (static_cast<double>(k) + 0.5) / sub), dz);
        return acc / sub;
    };

    auto pair_len = [&](const std::vector<Point>& c, int i, const Point& cand) -> double {
        if (!(dom.rho(cand) < 0.0)) return 1e300;
        if (!chord_interior(dom, c[static_cast<std::size_t>(i - 1)], cand, 4) ||
            !chord_interior(dom, cand, c[static_cast<std::size_t>(i + 1)], 4))
            return 1e300;
        try {
            return seg(c[static_cast<std::size_t>(i - 1)], cand) +
                   seg(cand, c[static_cast<std::size_t>(i + 1)]);
        } catch (const std::exception&) {
            return 1e300;
        }
    };

    auto pair_eucl = [&](const std::vector<Point>& c, int i, const Point& cand) {
        return dist(c[static_cast<std::size_t>(i - 1)], cand) +
               dist(cand, c[static_cast<std::size_t>(i + 1)]);
    };

    // per-point improvement: mid-pull and axis moves, repeated while they
    // help; exact plateaus (sub-max polydisk factors) drift toward shorter
    // Euclidean chords so flat factors straighten out
    auto improve_point = [&](std::vector<Point>& c, int i, double s, int inner) {
        for (int it = 0; it < inner; ++it) {
            double cur = pair_len(c, i, c[static_cast<std::size_t>(i)]);
            double best = cur;
            double best_eucl = pair_eucl(c, i, c[static_cast<std::size_t>(i)]);
            Point bestp = c[static_cast<std::size_t>(i)];
            bool moved = false;
            auto try_cand = [&](const Point& cand) {
                double v = pair_len(c, i, cand);
                if (v >= 1e300) return;
                double e = pair_eucl(c, i, cand);
                if (v < best || (v == best && e < best_eucl - 1e-14)) {
                    best = v;
                    best_eucl = e;
                    bestp = cand;
                    moved = true;
                }
            };
            Point mid = lerp(c[static_cast<std::size_t>(i - 1)],
                             c[static_cast<std::size_t>(i + 1)], 0.5);
            try_cand(mid);
            try_cand(lerp(c[static_cast<std::size_t>(i)], mid, 0.5));
            for (int axis = 0; axis < 2 * dom.dim; ++axis) {
                Point cand = c[static_cast<std::size_t>(i)];
                cplx delta = (axis % 2 == 0) ? cplx(s, 0) : cplx(0, s);
                cand[static_cast<std::size_t>(axis / 2)] += delta;
                try_cand(cand);
                cand[static_cast<std::size_t>(axis / 2)] -= 2.0 * delta;
                try_cand(cand);
            }
            // pure transverse moves along the 90-degree rotation of the local
            // chord; axis moves alone trade bending against vertex bunching
            // and can deadlock on that exchange
            Direction ch = c[static_cast<std::size_t>(i + 1)] - c[static_cast<std::size_t>(i - 1)];
            double chn = norm(ch);
            if (chn > 0.0) {
                Direction nrm = (cplx(0.0, 1.0) / chn) * ch;
                Point cand = c[static_cast<std::size_t>(i)] + s * nrm;
                try_cand(cand);
                cand = c[static_cast<std::size_t>(i)] + (-s) * nrm;
                try_cand(cand);
            }
            if (moved) {
                c[static_cast<std::size_t>(i)] = bestp;
            } else {
                break;
            }
        }
    };

    auto path_admissible = [&](const std::vector<Point>& c) {
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            if (!(dom.rho(c[i]) < 0.0)) return false;
            if (!(dom.rho(lerp(c[i], c[i + 1], 0.5)) < 0.0)) return false;
        }
        return true;
    };

    // coherent transverse proposals: displace every interior vertex along the
    // rotated local chord with a sine-mode profile; single-vertex relaxation
    // damps these lowest modes only diffusively
    auto mode_polish = [&](std::vector<Point>& c, double amp0) {
        const int n = static_cast<int>(c.size()) - 1;
        if (n < 3) return;
        auto eval = [&](const std::vector<Point>& cc) {
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < cc.size(); ++i) s += seg(cc[i], cc[i + 1]);
            return s;
        };
        std::vector<Direction> normals(static_cast<std::size_t>(n + 1),
                                       Point(c[0].size(), cplx(0, 0)));
        for (int i = 1; i < n; ++i) {
            Direction ch = c[static_cast<std::size_t>(i + 1)] - c[static_cast<std::size_t>(i - 1)];
            double chn = norm(ch);
            if (chn > 0.0)
                normals[static_cast<std::size_t>(i)] = (cplx(0.0, 1.0) / chn) * ch;
        }
        double cur = eval(c);
        for (int m = 1; m <= 3; ++m) {
            double amp = amp0 / m;
            for (int tries = 0; tries < 8 && amp > 1e-7 * dom.enclosing_radius; ++tries) {
                bool accepted = false;
                for (double sgn : {1.0, -1.0}) {
                    std::vector<Point> cand = c;
                    for (int i = 1; i < n; ++i) {
                        double shape = std::sin(M_PI * m * static_cast<double>(i) / n);
                        cand[static_cast<std::size_t>(i)] +=
                            (sgn * amp * shape) * normals[static_cast<std::size_t>(i)];
                    }
                    if (!path_admissible(cand)) continue;
                    double v = eval(cand);
                    if (v < cur - 1e-15) {
                        c = std::move(cand);
                        cur = v;
                        accepted = true;
                        break;
                    }
                }
                if (!accepted) amp *= 0.5;
            }
        }
    };

    // Gauss-Seidel relaxation sweeps with a geometrically falling step
    auto relax = [&](std::vector<Point>& c, int sweeps, double step_abs, int inner) {
        int n = static_cast<int>(c.size()) - 1;
        for (int sweep = 0; sweep < sweeps; ++sweep) {
            double s = step_abs * std::pow(0.6, sweep);
            for (int i = 1; i < n; ++i) improve_point(c, i, s, inner);
            if (rich && (sweep % 2 == 1 || sweep + 1 == sweeps)) mode_polish(c, s);
        }
    };

    // Redistribute the knots at uniform metric arc length along the current
    // trace. On polydisks this re-pairs the factor traces at synchronized
    // fractional speeds, which is where the max metric attains its infimum;
    // elsewhere it concentrates knots where the metric is large.
    auto metric_resample = [&](std::vector<Point>& c) {
        const std::size_t n = c.size();
        if (n < 3) return;
        if (dom.kind == DomainKind::Polydisk) {
            std::vector<Point> out(n, Point(c[0].size()));
            for (std::size_t f = 0; f < c[0].size(); ++f) {
                double r = dom.poly_radii[f];
                std::vector<double> cum(n, 0.0);
                for (std::size_t i = 0; i + 1 < n; ++i) {
                    cplx mid = 0.5 * (c[i][f] + c[i + 1][f]);
                    double a = std::abs(mid) / r;
                    double sl = (std::abs(c[i + 1][f] - c[i][f]) / r) / (1.0 - a * a);
                    cum[i + 1] = cum[i] + sl;
                }
                double L = cum.back();
                std::size_t segi = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (L <= 0.0) {
                        out[j][f] = c[j][f];
                        continue;
                    }
                    double u = L * static_cast<double>(j) / (n - 1);
                    while (segi + 2 < n && cum[segi + 1] < u) ++segi;
                    double den = cum[segi + 1] - cum[segi];
                    double frac = den > 0.0 ? (u - cum[segi]) / den : 0.0;
                    out[j][f] = c[segi][f] + frac * (c[segi + 1][f] - c[segi][f]);
                }
                segi = 0;
            }
            out.front() = c.front();
            out.back() = c.back();
            c = std::move(out);
            return;
        }
        std::vector<double> cum(n, 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i) cum[i + 1] = cum[i] + seg(c[i], c[i + 1]);
        double L = cum.back();
        if (!(L > 0.0)) return;
        std::vector<Point> out;
        out.reserve(n);
        std::size_t segi = 0;
        for (std::size_t j = 0; j < n; ++j) {
            double u = L * static_cast<double>(j) / (n - 1);
            while (segi + 2 < n && cum[segi + 1] < u) ++segi;
            double den = cum[segi + 1] - cum[segi];
            double frac = den > 0.0 ? std::clamp((u - cum[segi]) / den, 0.0, 1.0) : 0.0;
            out.push_back(lerp(c[segi], c[segi + 1], frac));
        }
        out.front() = c.front();
        out.back() = c.back();
        c = std::move(out);
    };

    auto subdivide = [](const std::vector<Point>& c) {
        std::vector<Point> out;
        out.reserve(2 * c.size());
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            out.push_back(c[i]);
            out.push_back(lerp(c[i], c[i + 1], 0.5));
        }
        out.push_back(c.back());
        return out;
    };

    auto polyline_upper = [&](const std::vector<Point>& c) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < c.size(); ++i) s += seg(c[i], c[i + 1]);
        return s;
    };

    // initializations: straight chord and the route through the base point,
    // relaxed coarse-to-fine (the coarse levels carry the global bending,
    // and the resolution-floored quadrature keeps their lengths honest)
    const int K0 = 8;
    std::vector<std::vector<Point>> inits;
    if (chord_interior(dom, p0, p1, 4 * K)) {
        std::vector<Point> c;
        for (int i = 0; i <= K0; ++i) c.push_back(lerp(p0, p1, static_cast<double>(i) / K0));
        inits.push_back(std::move(c));
    }
    if (chord_interior(dom, p0, dom.base_point, 4 * K) &&
        chord_interior(dom, dom.base_point, p1, 4 * K)) {
        std::vector<Point> c;
        for (int i = 0; i <= K0; ++i) {
            double t = static_cast<double>(i) / K0;
            c.push_back(t < 0.5 ? lerp(p0, dom.base_point, 2.0 * t)
                                : lerp(dom.base_point, p1, 2.0 * t - 1.0));
        }
        inits.push_back(std::move(c));
    }
    if (inits.empty())
        throw SearchError("estimate_distance: no admissible initial path (upper = inf)");

    const int inner = rich ? 8 : 3;
    const int sweeps = rich ? 12 : 3;
    const double step0 = 0.25 * dist(p0, p1) + (rich ? 0.1 : 0.03) * dom.enclosing_radius;

    const bool trace_stages = std::getenv("KOBALAB_TRACE_OPT") != nullptr;
    auto stage = [&](const char* name, const std::vector<Point>& c) {
        if (!trace_stages) return;
        double save = softmax_p;
        softmax_p = 0.0;
        std::fprintf(stderr, "[opt] %-16s K=%3zu len=%.8f\n", name, c.size() - 1,
                     polyline_upper(c));
        softmax_p = save;
    };

    std::vector<Point> ctrl;
    double best_len = 1e300;
    softmax_p = 8.0;  // coarse stage: heavily smoothed objective
    for (auto& c : inits) {
        relax(c, sweeps, step0, inner);
        metric_resample(c);
        relax(c, 2, 0.25 * step0, inner);
        stage("coarse", c);
        double len = polyline_upper(c);
        if (len < best_len) {
            best_len = len;
            ctrl = std::move(c);
        }
    }
    softmax_p = 32.0;
    int level = 1;
    while (static_cast<int>(ctrl.size()) - 1 < K) {
        ctrl = subdivide(ctrl);
        metric_resample(ctrl);
        stage("post-resample", ctrl);
        relax(ctrl, rich ? 6 : 2, step0 * std::pow(0.5, level), inner);
        stage("level-relax", ctrl);
        ++level;
    }
    softmax_p = 0.0;  // endgame on the true metric
    if (rich) {
        for (int round = 0; round < 3; ++round) {
            metric_resample(ctrl);
            relax(ctrl, 3, step0 * std::pow(0.4, level + round), inner);
        }
        stage("endgame", ctrl);
    }
    const int Kf = static_cast<int>(ctrl.size()) - 1;

    SegmentCache cache;
    cache.up.resize(static_cast<std::size_t>(Kf));
    double total = 0.0;
    for (int i = 0; i < Kf; ++i) {
        cache.up[static_cast<std::size_t>(i)] =
            seg(ctrl[static_cast<std::size_t>(i)], ctrl[static_cast<std::size_t>(i + 1)]);
        total += cache.up[static_cast<std::size_t>(i)];
    }

    auto eng = make_engine(budget.seed, 0xD157ULL);
    std::uniform_int_distribution<int> pick(1, Kf - 1);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double scale = 0.1 * dist(p0, p1);
    const double scale_min = 1e-7 * dom.enclosing_radius;

    for (int it = 0; it < budget.iterations; ++it) {
        int i = pick(eng);
        Point cand;
        double roll = u01(eng);
        if (roll < 0.45) {
            // smoothing proposal: blend toward the neighbor midpoint
            Point m = lerp(ctrl[static_cast<std::size_t>(i - 1)],
                           ctrl[static_cast<std::size_t>(i + 1)], 0.5);
            cand = lerp(ctrl[static_cast<std::size_t>(i)], m, roll < 0.225 ? 1.0 : 0.5);
        } else {
            Direction step = random_direction(eng, dom.dim);
            cand = ctrl[static_cast<std::size_t>(i)] + scale * step;
        }
        double new_pair = pair_len(ctrl, i, cand);
        double delta = new_pair - cache.up[static_cast<std::size_t>(i - 1)] -
                       cache.up[static_cast<std::size_t>(i)];
        if (delta < 0.0) {
            double new_left = seg(ctrl[static_cast<std::size_t>(i - 1)], cand);
            ctrl[static_cast<std::size_t>(i)] = cand;
            cache.up[static_cast<std::size_t>(i - 1)] = new_left;
            cache.up[static_cast<std::size_t>(i)] = new_pair - new_left;
            total += delta;
        } else {
            scale = std::max(scale * 0.998, scale_min);
        }
    }

    // polish at the output resolution on model kinds (metric is closed-form
    // there, so dense sweeps are cheap); smooths optimizer kinks out of the
    // witness so its reparametrization has clean unit speed
    if (dom.is_model()) {
        SampledPath pre = resample_polyline(ctrl, budget.output_points);
        std::vector<Point> fine = pre.points;
        metric_resample(fine);
        double s_fine = 2.0 * dist(p0, p1) / budget.output_points;
        relax(fine, 4, s_fine, inner);
        metric_resample(fine);
        ctrl = std::move(fine);
    }

    if (swapped) std::reverse(ctrl.begin(), ctrl.end());
    SampledPath witness = resample_polyline(ctrl, budget.output_points);
    witness.points.front() = z;
    witness.points.back() = w;
    Interval len = kobayashi_length(dom, witness, budget.lr);
    de.upper = std::max(len.upper, de.lower);
    de.witness = std::move(witness);
    return de;
}

namespace {

// cumulative upper-metric length marks along a path
std::vector<double> cumulative_upper(const Domain& dom, const SampledPath& path,
                                     const LineRadiusOpts& lr) {
    std::vector<double> f(path.points.size(), 0.0);
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
        Point mid = lerp(path.points[i], path.points[i + 1], 0.5);
        Direction dz = path.points[i + 1] - path.points[i];
        double ds = norm(dz) > 0.0 ? metric_bounds(dom, mid, dz, lr).upper : 0.0;
        f[i + 1] = f[i] + ds;
    }
    return f;
}

Interval pair_distance_interval(const Domain& dom, const Point& a, const Point& b,
                                double chain_upper) {
    Interval iv;
    if (is_exact_kind(dom)) {
        iv.lower = iv.upper = exact_distance(dom, a, b);
        return iv;
    }
    iv.lower = distance_floor(dom, a, b);
    iv.upper = std::max(chain_upper, iv.lower);
    return iv;
}

}  // namespace

ReparamResult reparametrize_unit_speed(const Domain& dom, const SampledPath& path, double kappa,
                                       const LineRadiusOpts& lr_opts) {
    validate_path(dom, path);
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i)
        if (!(dist(path.points[i + 1], path.points[i]) > 0.0))
            throw PathError("reparametrize_unit_speed: zero-speed segment");

    std::vector<double> f = cumulative_upper(dom, path, lr_opts);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        if (!(f[i + 1] > f[i] + 1e-14))
            throw PathError("reparametrize_unit_speed: cumulative length is not increasing");
    }
    double L = f.back();

    const int K = static_cast<int>(path.points.size());
    SampledPath out;
    out.grid.reserve(static_cast<std::size_t>(K));
    out.points.reserve(static_cast<std::size_t>(K));
    std::size_t seg = 0;
    for (int j = 0; j < K; ++j) {
        double u = L * static_cast<double>(j) / (K - 1);
        while (seg + 2 < f.size() && f[seg + 1] < u) ++seg;
        double den = f[seg + 1] - f[seg];
        double frac = den > 0.0 ? (u - f[seg]) / den : 0.0;
        frac = std::clamp(frac, 0.0, 1.0);
        out.grid.push_back(u);
        out.points.push_back(lerp(path.points[seg], path.points[seg + 1], frac));
    }
    out.points.front() = path.points.front();
    out.points.back() = path.points.back();
    // de-duplicate any stalled consecutive samples in parameter space
    for (std::size_t i = 0; i + 1 < out.grid.size(); ++i)
        if (!(out.grid[i + 1] > out.grid[i])) out.grid[i + 1] = out.grid[i] + 1e-14;

    ReparamResult res;
    res.path = std::move(out);
    res.cert = verify_almost_geodesic(dom, res.path, 1.0, kappa);
    return res;
}

AlmostGeodesicCertificate verify_almost_geodesic(const Domain& dom, const SampledPath& path,
                                                 double lambda, double kappa, int pair_marks,
                                                 const DistanceBudget& budget) {
    validate_path(dom, path);
    AlmostGeodesicCertificate cert;
    cert.lambda = lambda;
    cert.kappa = kappa;

    std::vector<double> chain = cumulative_upper(dom, path, budget.lr);
    Interval len = kobayashi_length(dom, path, budget.lr);
    cert.length_lower = len.lower;
    cert.length_upper = len.upper;

    // sampled speed and Lipschitz ratio
    double speed = 0.0, speed_min = 1e300, lip = 0.0;
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
        double dt = path.grid[i + 1] - path.grid[i];
        Direction dz = path.points[i + 1] - path.points[i];
        if (dt <= 0.0) continue;
        lip = std::max(lip, norm(dz) / dt);
        if (norm(dz) > 0.0) {
            Point mid = lerp(path.points[i], path.points[i + 1], 0.5);
            double s = metric_bounds(dom, mid, dz, budget.lr).upper / dt;
            speed = std::max(speed, s);
            speed_min = std::min(speed_min, s);
        }
    }
    cert.speed_max = speed;
    cert.speed_min = speed_min < 1e300 ? speed_min : 0.0;
    cert.lipschitz_const = lip;

    const int K = static_cast<int>(path.points.size());
    int marks = std::min(pair_marks, K);
    std::vector<int> idx;
    for (int m = 0; m < marks; ++m)
        idx.push_back(static_cast<int>(std::llround(static_cast<double>(m) * (K - 1) /
                                                    std::max(1, marks - 1))));
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());

    double worst = 1e300, worst27 = 1e300;
    int pairs = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            int i = idx[a], j = idx[b];
            double dt = path.grid[static_cast<std::size_t>(j)] -
                        path.grid[static_cast<std::size_t>(i)];
            double chain_up = chain[static_cast<std::size_t>(j)] -
                              chain[static_cast<std::size_t>(i)];
            Interval kd = pair_distance_interval(dom, path.points[static_cast<std::size_t>(i)],
                                                 path.points[static_cast<std::size_t>(j)],
                                                 chain_up);
            // Def 2.5 upper: k <= lambda |t-s| + kappa, checked against the
            // chain upper bound (a certified upper bound for k)
            double m_up = lambda * dt + kappa - std::min(kd.upper, chain_up);
            // Def 2.5 lower: |t-s|/lambda - kappa <= k, checked against the
            // certified lower bound
            double m_lo = kd.lower - (dt / lambda - kappa);
            // Lemma 2.7: l(sigma|[s,t]) <= k + kappa, conservative sides
            double m_27 = kd.lower + kappa - chain_up;
            worst = std::min({worst, m_up, m_lo});
            worst27 = std::min(worst27, m_27);
            ++pairs;
        }
    }
    cert.worst_pair_margin = worst;
    cert.subsegment_margin = worst27;
    cert.pair_count = pairs;
    return cert;
}

ReparamResult almost_geodesic_between(const Domain& dom, const Point& z, const Point& w,
                                      double kappa, const DistanceBudget& budget, double slack) {
    if (!(kappa > 0.0)) throw InputError("almost_geodesic_between: kappa must be positive");
    DistanceEstimate de = estimate_distance(dom, z, w, budget);
    double gap = de.upper - de.lower;
    double allowed = kappa * (1.0 - slack);
    if (gap > allowed)
        throw SearchError("almost_geodesic_between: gap not closed: achieved " +
                          std::to_string(gap) + " > allowed " + std::to_string(allowed));
    // drop any zero-speed samples before reparametrizing
    SampledPath pruned;
    for (std::size_t i = 0; i < de.witness.size(); ++i) {
        if (i == 0 || dist(de.witness.points[i], pruned.points.back()) > 1e-13) {
            pruned.grid.push_back(de.witness.grid[i]);
            pruned.points.push_back(de.witness.points[i]);
        }
    }
    if (pruned.size() < 2) throw PathError("almost_geodesic_between: degenerate witness");
    return reparametrize_unit_speed(dom, pruned, kappa, budget.lr);
}

void write_path_csv(std::ostream& os, const SampledPath& path) {
    os << "t";
    for (std::size_t i = 0; i < path.points.front().size(); ++i)
        os << ",re" << (i + 1) << ",im" << (i + 1);
    os << "\n";
    char buf[64];
    for (std::size_t j = 0; j < path.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", path.grid[j]);
        os << buf;
        for (const auto& c : path.points[j]) {
            std::snprintf(buf, sizeof buf, ",%.17g", c.real());
            os << buf;
            std::snprintf(buf, sizeof buf, ",%.17g", c.imag());
            os << buf;
        }
        os << "\n";
    }
}

}  // namespace kobalab

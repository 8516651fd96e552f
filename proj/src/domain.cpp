#include "kobalab/domain.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "kobalab/expr.hpp"
#include "kobalab/model.hpp"
#include "kobalab/numerics.hpp"
#include "kobalab/rng.hpp"

namespace kobalab {

using json = nlohmann::json;

std::string kind_name(DomainKind k) {
    switch (k) {
        case DomainKind::Ball: return "ball";
        case DomainKind::Polydisk: return "polydisk";
        case DomainKind::Example51: return "example51";
        case DomainKind::Example52: return "example52";
        case DomainKind::Graph: return "graph";
        case DomainKind::Custom: return "custom";
    }
    return "?";
}

std::vector<Direction> fibonacci_directions(int d, int count) {
    // golden-angle sweep through a fixed Gaussian table; deterministic and
    // reasonably spread on S^{2d-1}
    std::vector<Direction> out;
    out.reserve(static_cast<std::size_t>(count));
    auto eng = make_engine(0x5eedF1B0u, static_cast<std::uint64_t>(d));
    std::normal_distribution<double> g(0.0, 1.0);
    for (int k = 0; k < count; ++k) {
        Direction v(static_cast<std::size_t>(d));
        double n2 = 0.0;
        for (int i = 0; i < d; ++i) {
            v[static_cast<std::size_t>(i)] = cplx(g(eng), g(eng));
            n2 += std::norm(v[static_cast<std::size_t>(i)]);
        }
        out.push_back((1.0 / std::sqrt(n2)) * v);
    }
    return out;
}

namespace {

// quintic smoothstep from 1 at a down to 0 at b
double cutoff(double u, double a, double b) {
    if (u <= a) return 1.0;
    if (u >= b) return 0.0;
    double x = (u - a) / (b - a);
    return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

Point zero_point(int d) { return Point(static_cast<std::size_t>(d), cplx(0.0, 0.0)); }

void require_finite(const CVec& z, const char* what) {
    if (!all_finite(z)) throw InputError(std::string(what) + ": non-finite input");
}

double max_cutoff_weighted(const std::function<double(double)>& f, double lo, double hi) {
    // dense scan + golden polish; profile is 1-D and smooth
    int N = 20000;
    double best = -1e300, bx = lo;
    for (int i = 0; i <= N; ++i) {
        double u = lo + (hi - lo) * static_cast<double>(i) / N;
        double v = f(u);
        if (v > best) {
            best = v;
            bx = u;
        }
    }
    double h = (hi - lo) / N;
    double x = golden_min([&](double u) { return -f(u); }, std::max(lo, bx - 2 * h),
                          std::min(hi, bx + 2 * h), 60);
    return std::max(best, f(x));
}

}  // namespace

Domain make_ball(const Point& center, double R) {
    if (!(R > 0.0)) throw ParamError("ball radius must be positive");
    require_finite(center, "ball center");
    Domain d;
    d.kind = DomainKind::Ball;
    d.dim = static_cast<int>(center.size());
    d.ball_radius = R;
    d.enclosing_center = center;
    d.enclosing_radius = R * (1.0 + 1e-12);
    d.base_point = center;
    d.convex = true;
    Point c = center;
    d.rho = [c, R](const CVec& z) { return dist(z, c) - R; };
    return d;
}

Domain make_polydisk(const std::vector<double>& radii) {
    if (radii.empty()) throw ParamError("polydisk needs at least one radius");
    for (double r : radii)
        if (!(r > 0.0)) throw ParamError("polydisk radii must be positive");
    Domain d;
    d.kind = DomainKind::Polydisk;
    d.dim = static_cast<int>(radii.size());
    d.poly_radii = radii;
    d.enclosing_center = zero_point(d.dim);
    double R2 = 0.0;
    for (double r : radii) R2 += r * r;
    d.enclosing_radius = std::sqrt(R2) * (1.0 + 1e-12);
    d.base_point = zero_point(d.dim);
    d.convex = true;
    auto rr = radii;
    d.rho = [rr](const CVec& z) {
        double m = -1e300;
        for (std::size_t i = 0; i < z.size(); ++i) m = std::max(m, std::abs(z[i]) - rr[i]);
        return m;
    };
    return d;
}

Domain make_unit_bidisk() { return make_polydisk({1.0, 1.0}); }

Domain make_example51(const Example51Params& p) {
    if (!(p.eps > 0.0 && p.eps < 1.0 / std::sqrt(6.0)))
        throw ParamError("example51: eps must lie in (0, 1/sqrt(6))");
    if (p.n < 3) throw ParamError("example51: n must be >= 3");
    const double eps = p.eps, e2 = eps * eps;
    const int n = p.n;
    const double a = 2.0 * eps, b = 3.0 * eps;

    // c0 = sup(-Phi); at radius u the supremum of Im z2 - exp(-1/|z1|^2) is u,
    // attained at (0, iu), so this is a 1-D profile.
    const double c0 = max_cutoff_weighted([&](double u) { return cutoff(u, a, b) * u; }, 0.0, b);
    const double c1 = std::pow(2.25 * e2 - e2, n);  // chi((3 eps/2)^2)
    const double C = c0 / c1;

    Domain d;
    d.kind = DomainKind::Example51;
    d.dim = 2;
    d.enclosing_center = zero_point(2);
    d.enclosing_radius = 1.5 * eps + 1e-3;
    d.convex = true;
    d.rho = [eps, e2, n, a, b, C](const CVec& z) {
        double a1 = std::norm(z[0]);
        double nsq = a1 + std::norm(z[1]);
        double phi0 = (a1 > 0.0 ? std::exp(-1.0 / a1) : 0.0) - z[1].imag();
        double t = nsq - e2;
        double chi = t > 0.0 ? std::pow(t, n) : 0.0;
        return C * chi + cutoff(std::sqrt(nsq), a, b) * phi0;
    };

    // base point: deepest point of the segment {(0, it)}
    double c = axis_boundary_root(d, eps * (1.0 + 1e-9), 1.5 * eps);
    auto depth = [&](double t) {
        Point z = {cplx(0.0, 0.0), cplx(0.0, t)};
        BoundaryOpts bo;
        bo.directions = 24;
        bo.refine = false;
        return -boundary_distance(d, z, bo);
    };
    double t0 = golden_min(depth, 0.05 * c, 0.95 * c, 60);
    d.base_point = {cplx(0.0, 0.0), cplx(0.0, t0)};
    d.spec_text = json{{"kind", "example51"}, {"params", {{"eps", eps}, {"n", n}}}}.dump();
    return d;
}

Domain make_example52(const Example52Params& p) {
    if (!(p.eps > 0.0 && p.eps < 1.0 / (2.0 * std::sqrt(2.0))))
        throw ParamError("example52: eps must lie in (0, 1/(2 sqrt 2))");
    if (!(p.delta > 0.0)) throw ParamError("example52: delta must be positive");
    const double eps = p.eps, delta = p.delta, e2 = eps * eps;
    const double a = 2.0 * eps, b = 3.0 * eps;

    const double c0 = max_cutoff_weighted(
        [&](double u) {
            return cutoff(u, a, b) * (u - (u > 0.0 ? std::exp(-1.0 / (u * u)) : 0.0));
        },
        0.0, b);
    const double cap = eps + 0.5 * delta;
    const double c1 = std::exp(-1.0 / (cap * cap - e2));
    const double C = c0 / c1;

    Domain d;
    d.kind = DomainKind::Example52;
    d.dim = 2;
    d.enclosing_center = zero_point(2);
    d.enclosing_radius = cap + 1e-3;
    d.convex = true;
    d.rho = [e2, a, b, C](const CVec& z) {
        double nsq = norm_sq(z);
        double phi0 = (nsq > 0.0 ? std::exp(-1.0 / nsq) : 0.0) - z[1].imag();
        double t = nsq - e2;
        double chi = t > 0.0 ? std::exp(-1.0 / t) : 0.0;
        return C * chi + cutoff(std::sqrt(nsq), a, b) * phi0;
    };

    double c = axis_boundary_root(d, eps * (1.0 + 1e-9), cap + 1e-6);
    auto depth = [&](double t) {
        Point z = {cplx(0.0, 0.0), cplx(0.0, t)};
        BoundaryOpts bo;
        bo.directions = 24;
        bo.refine = false;
        return -boundary_distance(d, z, bo);
    };
    double t0 = golden_min(depth, 0.05 * c, 0.95 * c, 60);
    d.base_point = {cplx(0.0, 0.0), cplx(0.0, t0)};
    d.spec_text =
        json{{"kind", "example52"}, {"params", {{"eps", eps}, {"delta", delta}}}}.dump();
    return d;
}

Domain make_graph(int n, std::function<CVec(cplx)> f, const std::string& spec) {
    if (n < 2) throw ParamError("graph subspace needs ambient dimension n >= 2");
    // sampled sup-norm check on the boundary circle (max principle)
    double sup = 0.0;
    for (int k = 0; k < 4096; ++k) {
        double th = 2.0 * M_PI * (static_cast<double>(k) + 0.5) / 4096.0;
        CVec w = f(std::polar(0.999999, th));
        if (static_cast<int>(w.size()) != n - 1)
            throw ParamError("graph map must have n-1 components");
        for (const auto& c : w) sup = std::max(sup, std::abs(c));
    }
    if (sup >= 1.0)
        throw ParamError("invalid graph subspace: sampled sup-norm of f is " +
                         std::to_string(sup));

    Domain d;
    d.kind = DomainKind::Graph;
    d.dim = n;
    d.graph_f = std::move(f);
    d.enclosing_center = zero_point(n);
    d.enclosing_radius = std::sqrt(static_cast<double>(n)) * (1.0 + 1e-12);
    d.base_point = zero_point(n);
    d.base_point[0] = cplx(0.0, 0.0);
    {
        CVec f0 = d.graph_f(cplx(0.0, 0.0));
        for (int i = 1; i < n; ++i) d.base_point[static_cast<std::size_t>(i)] = f0[static_cast<std::size_t>(i - 1)];
    }
    d.convex = false;
    d.spec_text = spec;
    auto g = d.graph_f;
    // Membership means "on the graph (within tolerance) and over the disk".
    d.rho = [g](const CVec& z) {
        double a = std::abs(z[0]) - 1.0;
        CVec w = g(z[0]);
        double off = 0.0;
        for (std::size_t i = 0; i + 1 < z.size(); ++i)
            off = std::max(off, std::abs(z[i + 1] - w[i]));
        return std::max(a, off - 1e-9);
    };
    return d;
}

Domain make_custom_fn(int dim, std::function<double(const CVec&)> rho,
                      const Point& enclosing_center, double enclosing_radius,
                      const Point& base_point, bool convex) {
    if (!(enclosing_radius > 0.0)) throw ParamError("enclosing radius must be positive");
    Domain d;
    d.kind = DomainKind::Custom;
    d.dim = dim;
    d.rho = std::move(rho);
    d.enclosing_center = enclosing_center;
    d.enclosing_radius = enclosing_radius;
    d.base_point = base_point;
    d.convex = convex;
    if (d.rho(base_point) >= 0.0) throw ParamError("base point is not interior");
    return d;
}

Domain make_custom_expr(int dim, const std::string& rho_expr, const Point& enclosing_center,
                        double enclosing_radius, const Point& base_point, bool convex) {
    Expr e = Expr::parse(rho_expr, dim);
    Domain d = make_custom_fn(
        dim, [e](const CVec& z) { return e.eval(z); }, enclosing_center, enclosing_radius,
        base_point, convex);
    d.spec_text = rho_expr;
    return d;
}

bool contains(const Domain& dom, const Point& z) {
    require_finite(z, "contains");
    if (static_cast<int>(z.size()) != dom.dim) throw InputError("contains: dimension mismatch");
    return dom.rho(z) < 0.0;
}

namespace {

double enclosing_exit_time(const Domain& dom, const Point& z, const Direction& u) {
    // largest t with z + t u still inside the enclosing sphere
    Point w = z - dom.enclosing_center;
    double b = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        b += w[i].real() * u[i].real() + w[i].imag() * u[i].imag();
    double c = norm_sq(w) - dom.enclosing_radius * dom.enclosing_radius;
    double disc = b * b - c;
    if (disc <= 0.0) return 0.0;
    return -b + std::sqrt(disc);
}

double ray_exit_impl(const Domain& dom, const Point& z, const Direction& u_unit,
                     const BoundaryOpts& opts) {
    double t_hi = enclosing_exit_time(dom, z, u_unit) * (1.0 + 1e-9) + 1e-300;
    auto at = [&](double t) { return dom.rho(z + t * u_unit); };
    double t_lo = 0.0;
    if (at(t_hi) < 0.0) {
        // should not happen if the enclosing invariant holds; walk out
        for (int i = 0; i < 60 && at(t_hi) < 0.0; ++i) t_hi *= 1.25;
    }
    if (!dom.convex) {
        // first crossing: scan before bisecting
        int n = std::max(8, opts.march_steps);
        double prev = 0.0;
        for (int k = 1; k <= n; ++k) {
            double t = t_hi * static_cast<double>(k) / n;
            if (at(t) >= 0.0) {
                t_hi = t;
                t_lo = prev;
                break;
            }
            prev = t;
        }
    }
    double tol = std::max(1e-300, opts.tol_rel * dom.enclosing_radius);
    int iters = static_cast<int>(std::ceil(std::log2(std::max(2.0, (t_hi - t_lo) / tol)))) + 2;
    iters = std::min(iters, 120);
    for (int i = 0; i < iters; ++i) {
        double m = 0.5 * (t_lo + t_hi);
        if (at(m) < 0.0)
            t_lo = m;
        else
            t_hi = m;
    }
    return 0.5 * (t_lo + t_hi);
}

}  // namespace

double ray_exit(const Domain& dom, const Point& z, const Direction& u, const BoundaryOpts& opts) {
    if (!contains(dom, z)) throw DomainError("ray_exit: point not interior");
    double n = norm(u);
    if (!(n > 0.0)) throw InputError("ray_exit: zero direction");
    return ray_exit_impl(dom, z, (1.0 / n) * u, opts);
}

NearestBoundary nearest_boundary(const Domain& dom, const Point& z, const BoundaryOpts& opts) {
    if (!contains(dom, z)) throw DomainError("boundary_distance: point not interior");

    if (dom.kind == DomainKind::Ball) {
        Point w = z - dom.enclosing_center;
        double nw = norm(w);
        Direction out = nw > 1e-14 ? (1.0 / nw) * w : Direction{};
        if (out.empty()) {
            out = zero_point(dom.dim);
            out[0] = 1.0;
        }
        NearestBoundary nb;
        nb.distance = dom.ball_radius - nw;
        nb.outward = out;
        nb.point = dom.enclosing_center + (dom.ball_radius * 1.0) * out;
        return nb;
    }
    if (dom.kind == DomainKind::Polydisk) {
        NearestBoundary nb;
        nb.distance = 1e300;
        std::size_t bi = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            double d = dom.poly_radii[i] - std::abs(z[i]);
            if (d < nb.distance) {
                nb.distance = d;
                bi = i;
            }
        }
        Direction out = zero_point(dom.dim);
        cplx zi = z[bi];
        out[bi] = std::abs(zi) > 1e-14 ? zi / std::abs(zi) : cplx(1.0, 0.0);
        nb.outward = out;
        nb.point = z;
        nb.point[bi] = dom.poly_radii[bi] * out[bi];
        return nb;
    }
    if (dom.kind == DomainKind::Graph) {
        // distance to the rim {(zeta, f(zeta)) : |zeta| = 1}
        auto rim_dist = [&](double th) {
            cplx zeta = std::polar(1.0, th);
            CVec w = dom.graph_f(zeta);
            double s = std::norm(z[0] - zeta);
            for (std::size_t i = 0; i + 1 < z.size(); ++i) s += std::norm(z[i + 1] - w[i]);
            return std::sqrt(s);
        };
        int N = 512;
        double best = 1e300, bth = 0.0;
        for (int k = 0; k < N; ++k) {
            double th = 2.0 * M_PI * k / N;
            double v = rim_dist(th);
            if (v < best) {
                best = v;
                bth = th;
            }
        }
        double h = 2.0 * M_PI / N;
        double th = golden_min(rim_dist, bth - h, bth + h, 60);
        NearestBoundary nb;
        nb.distance = std::min(best, rim_dist(th));
        cplx zeta = std::polar(1.0, th);
        CVec w = dom.graph_f(zeta);
        nb.point = z;
        nb.point[0] = zeta;
        for (std::size_t i = 0; i + 1 < z.size(); ++i) nb.point[i + 1] = w[i];
        double dn = dist(nb.point, z);
        nb.outward = dn > 1e-14 ? (1.0 / dn) * (nb.point - z) : Direction(zero_point(dom.dim));
        return nb;
    }

    // generic: ray fan + Nelder-Mead polish over the direction sphere
    std::vector<Direction> dirs;
    for (int i = 0; i < dom.dim; ++i) {
        for (int s = 0; s < 4; ++s) {
            Direction e = zero_point(dom.dim);
            e[static_cast<std::size_t>(i)] =
                s == 0 ? cplx(1, 0) : s == 1 ? cplx(-1, 0) : s == 2 ? cplx(0, 1) : cplx(0, -1);
            dirs.push_back(e);
        }
    }
    int extra = std::max(0, opts.directions - static_cast<int>(dirs.size()));
    auto fib = fibonacci_directions(dom.dim, extra);
    dirs.insert(dirs.end(), fib.begin(), fib.end());

    double best = 1e300;
    Direction bdir = dirs.front();
    for (const auto& u : dirs) {
        double t = ray_exit_impl(dom, z, u, opts);
        if (t < best) {
            best = t;
            bdir = u;
        }
    }

    if (opts.refine) {
        auto obj = [&](const std::vector<double>& x) {
            Direction u(static_cast<std::size_t>(dom.dim));
            double n2 = 0.0;
            for (int i = 0; i < dom.dim; ++i) {
                u[static_cast<std::size_t>(i)] = cplx(x[2 * i], x[2 * i + 1]);
                n2 += std::norm(u[static_cast<std::size_t>(i)]);
            }
            if (n2 < 1e-12) return 1e300;
            double t = ray_exit_impl(dom, z, (1.0 / std::sqrt(n2)) * u, opts);
            return t;
        };
        std::vector<double> x0(static_cast<std::size_t>(2 * dom.dim));
        for (int i = 0; i < dom.dim; ++i) {
            x0[2 * i] = bdir[static_cast<std::size_t>(i)].real();
            x0[2 * i + 1] = bdir[static_cast<std::size_t>(i)].imag();
        }
        auto xb = nelder_mead(obj, x0, 0.15, 120);
        double v = obj(xb);
        if (v < best) {
            best = v;
            for (int i = 0; i < dom.dim; ++i)
                bdir[static_cast<std::size_t>(i)] = cplx(xb[2 * i], xb[2 * i + 1]);
            bdir = normalized(bdir);
        }
    }

    NearestBoundary nb;
    nb.distance = best;
    nb.outward = bdir;
    nb.point = z + best * bdir;
    return nb;
}

double boundary_distance(const Domain& dom, const Point& z, const BoundaryOpts& opts) {
    return nearest_boundary(dom, z, opts).distance;
}

namespace {

double line_exit_model(const Domain& dom, const Point& z, const Direction& u) {
    if (dom.kind == DomainKind::Ball) {
        Point w = z - dom.enclosing_center;
        cplx a = hdot(w, u);
        double rad2 = dom.ball_radius * dom.ball_radius - norm_sq(w) + std::norm(a);
        return std::sqrt(std::max(rad2, 0.0)) - std::abs(a);
    }
    // polydisk: per-factor circle distance, min over factors with u_i != 0
    double best = 1e300;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double au = std::abs(u[i]);
        if (au < 1e-15) continue;
        double w = std::abs(z[i] * std::conj(u[i])) / (au * au);
        double rad = std::sqrt(w * w + (dom.poly_radii[i] * dom.poly_radii[i] -
                                        std::norm(z[i])) /
                                           (au * au));
        best = std::min(best, rad - w);
    }
    return best;
}

}  // namespace

double line_radius(const Domain& dom, const Point& z, const Direction& v,
                   const LineRadiusOpts& opts) {
    if (!(norm(v) > 0.0)) throw InputError("line_radius: zero direction");
    if (!contains(dom, z)) throw DomainError("line_radius: point not interior");
    if (dom.kind == DomainKind::Graph)
        throw DomainError("line_radius: not defined on a graph subspace");
    Direction u = normalized(v);

    if (dom.is_model()) return line_exit_model(dom, z, u);

    BoundaryOpts bo;
    bo.tol_rel = opts.tol_rel;
    int m = opts.phases;
    double prev = -1.0;
    double r = 0.0;
    for (int round = 0; round <= opts.max_doublings; ++round) {
        r = 1e300;
        for (int k = 0; k < m; ++k) {
            double th = 2.0 * M_PI * (static_cast<double>(k) + 0.5 * (round % 2)) / m;
            Direction w = cplx(std::cos(th), std::sin(th)) * u;
            r = std::min(r, ray_exit_impl(dom, z, w, bo));
        }
        if (prev >= 0.0 && std::fabs(r - prev) <= opts.stable_tol * std::max(1.0, r)) break;
        prev = r;
        m *= 2;
    }
    return r / (1.0 + opts.stable_tol);
}

std::optional<ConvexityWitness> convexity_probe(const Domain& dom, int samples,
                                                std::uint64_t seed) {
    if (samples < 1) throw InputError("convexity_probe: samples must be >= 1");
    for (int k = 0; k < samples; ++k) {
        Point a = random_interior_point(dom, seed, 2 * static_cast<std::uint64_t>(k));
        Point b = random_interior_point(dom, seed, 2 * static_cast<std::uint64_t>(k) + 1);
        Point m = lerp(a, b, 0.5);
        if (!(dom.rho(m) < 0.0)) return ConvexityWitness{a, b, m};
    }
    return std::nullopt;
}

Point random_interior_point(const Domain& dom, std::uint64_t seed, std::uint64_t stream,
                            int max_tries) {
    auto eng = make_engine(seed, stream);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < max_tries; ++t) {
        Point z(static_cast<std::size_t>(dom.dim));
        for (int i = 0; i < dom.dim; ++i)
            z[static_cast<std::size_t>(i)] =
                dom.enclosing_center[static_cast<std::size_t>(i)] +
                dom.enclosing_radius * cplx(u(eng), u(eng));
        if (dom.rho(z) < 0.0) return z;
    }
    throw SamplingError("no interior sample found inside the enclosing ball");
}

Point boundary_point_along(const Domain& dom, const Point& from, const Direction& u,
                           const BoundaryOpts& opts) {
    double t = ray_exit(dom, from, u, opts);
    return from + t * normalized(u);
}

double axis_boundary_root(const Domain& dom, double t_lo, double t_hi) {
    auto f = [&](double t) {
        Point z = zero_point(dom.dim);
        z[static_cast<std::size_t>(dom.dim - 1)] = cplx(0.0, t);
        return dom.rho(z);
    };
    if (!(f(t_lo) < 0.0) || !(f(t_hi) >= 0.0))
        throw DomainError("axis_boundary_root: bracket does not straddle the boundary");
    return bisect_root(f, t_lo, t_hi, 100);
}

// --- JSON --------------------------------------------------------------------

namespace {

Point point_from_json(const json& j) {
    Point p;
    for (const auto& c : j) {
        if (c.is_array())
            p.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
        else
            p.emplace_back(c.get<double>(), 0.0);
    }
    return p;
}

json point_to_json(const Point& p) {
    json j = json::array();
    for (const auto& c : p) j.push_back({c.real(), c.imag()});
    return j;
}

std::function<CVec(cplx)> graph_component_map(const json& comps) {
    struct Comp {
        bool blaschke = false;
        std::vector<cplx> coeffs;  // poly coefficients c0..cm, or Blaschke zeros
        cplx rot{1.0, 0.0};
    };
    std::vector<Comp> parsed;
    for (const auto& cj : comps) {
        Comp c;
        std::string type = cj.value("type", "poly");
        c.blaschke = (type == "blaschke");
        for (const auto& co : cj.at(c.blaschke ? "zeros" : "coeffs")) {
            if (co.is_array())
                c.coeffs.emplace_back(co.at(0).get<double>(), co.at(1).get<double>());
            else
                c.coeffs.emplace_back(co.get<double>(), 0.0);
        }
        if (cj.contains("rot")) {
            double th = cj.at("rot").get<double>();
            c.rot = std::polar(1.0, th);
        }
        if (c.blaschke)
            for (const auto& a : c.coeffs)
                if (std::abs(a) >= 1.0) throw ParamError("blaschke zero outside the unit disk");
        parsed.push_back(std::move(c));
    }
    return [parsed](cplx z) {
        CVec out;
        out.reserve(parsed.size());
        for (const auto& c : parsed) {
            if (c.blaschke) {
                cplx w = c.rot;
                for (const auto& a : c.coeffs) w *= (z - a) / (1.0 - std::conj(a) * z);
                out.push_back(w);
            } else {
                cplx w = 0.0, zp = 1.0;
                for (const auto& co : c.coeffs) {
                    w += co * zp;
                    zp *= z;
                }
                out.push_back(w);
            }
        }
        return out;
    };
}

}  // namespace

Domain domain_from_json(const json& spec) {
    std::string kind = spec.at("kind").get<std::string>();
    json params = spec.value("params", json::object());
    Domain d;
    if (kind == "ball") {
        int dim = params.value("d", 2);
        Point c = params.contains("center") ? point_from_json(params["center"])
                                            : Point(static_cast<std::size_t>(dim), cplx(0, 0));
        d = make_ball(c, params.value("radius", 1.0));
    } else if (kind == "disk") {
        d = make_unit_disk();
    } else if (kind == "polydisk") {
        if (params.contains("radii")) {
            d = make_polydisk(params["radii"].get<std::vector<double>>());
        } else {
            int dim = params.value("d", 2);
            d = make_polydisk(std::vector<double>(static_cast<std::size_t>(dim), 1.0));
        }
    } else if (kind == "example51") {
        Example51Params p;
        p.eps = params.value("eps", p.eps);
        p.n = params.value("n", p.n);
        d = make_example51(p);
    } else if (kind == "example52") {
        Example52Params p;
        p.eps = params.value("eps", p.eps);
        p.delta = params.value("delta", p.delta);
        d = make_example52(p);
    } else if (kind == "graph") {
        int n = params.value("n", 2);
        d = make_graph(n, graph_component_map(params.at("components")), params.dump());
    } else if (kind == "custom") {
        int dim = params.at("d").get<int>();
        Point c = params.contains("center") ? point_from_json(params["center"])
                                            : Point(static_cast<std::size_t>(dim), cplx(0, 0));
        Point bp = params.contains("base") ? point_from_json(params["base"]) : c;
        d = make_custom_expr(dim, params.at("rho").get<std::string>(), c,
                             params.value("radius", 1.0), bp, params.value("convex", false));
    } else {
        throw ParamError("unknown domain kind '" + kind + "'");
    }
    d.spec_text = spec.dump();
    return d;
}

Domain domain_from_json_text(const std::string& text) {
    json j = json::parse(text);
    return domain_from_json(j);
}

json domain_spec_json(const Domain& dom) {
    if (!dom.spec_text.empty()) {
        json j = json::parse(dom.spec_text, nullptr, false);
        if (!j.is_discarded() && j.is_object() && j.contains("kind")) return j;
    }
    json j;
    j["kind"] = kind_name(dom.kind);
    json p;
    p["d"] = dom.dim;
    if (dom.kind == DomainKind::Ball) {
        p["radius"] = dom.ball_radius;
        p["center"] = point_to_json(dom.enclosing_center);
    }
    if (dom.kind == DomainKind::Polydisk) p["radii"] = dom.poly_radii;
    j["params"] = p;
    return j;
}

}  // namespace kobalab

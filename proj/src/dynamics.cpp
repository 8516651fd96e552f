#include "kobalab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kobalab/rng.hpp"

namespace kobalab {

std::string HoloMap::name() const {
    switch (family) {
        case Family::DiskMoebius: return "disk-moebius";
        case Family::PolydiskProduct: return "polydisk-product";
        case Family::AffineContraction: return "affine-contraction";
        case Family::Composition: return "composition";
    }
    return "?";
}

std::string wd_name(WDClass c) {
    switch (c) {
        case WDClass::CompactOrbits: return "compact-orbits";
        case WDClass::BoundaryConvergent: return "boundary-convergent";
        case WDClass::Inconclusive: return "inconclusive";
    }
    return "?";
}

HoloMap moebius_map(cplx a, cplx b, cplx c, cplx d) {
    HoloMap m;
    m.family = HoloMap::Family::DiskMoebius;
    m.a = a;
    m.b = b;
    m.c = c;
    m.d = d;
    if (std::abs(a * d - b * c) < 1e-14) throw MapError("moebius map is degenerate");
    return m;
}

HoloMap rotation_map(double theta) { return moebius_map(std::polar(1.0, theta), 0, 0, 1); }

HoloMap polydisk_product(std::vector<HoloMap> factors) {
    HoloMap m;
    m.family = HoloMap::Family::PolydiskProduct;
    m.parts = std::move(factors);
    return m;
}

HoloMap affine_contraction(const Point& anchor, double s) {
    if (!(s > 0.0 && s < 1.0)) throw MapError("affine contraction needs s in (0,1)");
    HoloMap m;
    m.family = HoloMap::Family::AffineContraction;
    m.anchor = anchor;
    m.s = s;
    return m;
}

HoloMap composition(std::vector<HoloMap> maps) {
    if (maps.empty()) throw MapError("empty composition");
    HoloMap m;
    m.family = HoloMap::Family::Composition;
    m.parts = std::move(maps);
    return m;
}

namespace {

std::vector<double> parse_reals(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

cplx parse_cplx_pair(const std::vector<double>& v, std::size_t i) {
    return cplx(v[2 * i], v[2 * i + 1]);
}

}  // namespace

HoloMap parse_map(const std::string& text, int dim) {
    auto colon = text.find(':');
    std::string head = colon == std::string::npos ? text : text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

    if (head == "moebius") {
        auto v = parse_reals(rest);
        if (v.size() == 4) return moebius_map(v[0], v[1], v[2], v[3]);
        if (v.size() == 8)
            return moebius_map(parse_cplx_pair(v, 0), parse_cplx_pair(v, 1), parse_cplx_pair(v, 2),
                               parse_cplx_pair(v, 3));
        throw MapError("moebius map needs 4 real or 4 complex coefficients");
    }
    if (head == "rotation") {
        auto v = parse_reals(rest);
        if (v.size() != 1) throw MapError("rotation needs one angle");
        return rotation_map(v[0]);
    }
    if (head == "affine") {
        auto at = rest.find('@');
        if (at == std::string::npos) throw MapError("affine map syntax: affine:s@re,im,...");
        double s = std::stod(rest.substr(0, at));
        auto v = parse_reals(rest.substr(at + 1));
        Point anchor;
        if (static_cast<int>(v.size()) == dim)
            for (double x : v) anchor.emplace_back(x, 0.0);
        else if (static_cast<int>(v.size()) == 2 * dim)
            for (std::size_t i = 0; i < v.size(); i += 2) anchor.emplace_back(v[i], v[i + 1]);
        else
            throw MapError("affine anchor needs d or 2d reals");
        return affine_contraction(anchor, s);
    }
    if (head == "product") {
        std::vector<HoloMap> parts;
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ';'))
            if (!tok.empty()) parts.push_back(parse_map(tok, 1));
        if (static_cast<int>(parts.size()) != dim)
            throw MapError("product map needs one factor per coordinate");
        return polydisk_product(std::move(parts));
    }
    throw MapError("unknown map family '" + head + "'");
}

Point apply_map(const HoloMap& F, const Point& z) {
    switch (F.family) {
        case HoloMap::Family::DiskMoebius: {
            if (z.size() != 1) throw MapError("disk map applied to a point of dimension != 1");
            return {(F.a * z[0] + F.b) / (F.c * z[0] + F.d)};
        }
        case HoloMap::Family::PolydiskProduct: {
            if (z.size() != F.parts.size()) throw MapError("product map dimension mismatch");
            Point out(z.size());
            for (std::size_t i = 0; i < z.size(); ++i)
                out[i] = apply_map(F.parts[i], {z[i]})[0];
            return out;
        }
        case HoloMap::Family::AffineContraction: {
            Point out(z.size());
            for (std::size_t i = 0; i < z.size(); ++i)
                out[i] = F.anchor[i] + F.s * (z[i] - F.anchor[i]);
            return out;
        }
        case HoloMap::Family::Composition: {
            Point out = z;
            for (const auto& part : F.parts) out = apply_map(part, out);
            return out;
        }
    }
    throw MapError("unreachable");
}

void validate_map(const Domain& dom, const HoloMap& F, int samples, std::uint64_t seed) {
    if (F.family == HoloMap::Family::DiskMoebius) {
        // boundary modulus check: a self-map of D has |F| <= 1 on |z| = 1
        // (pole outside the closed disk)
        if (std::abs(F.c) > 0.0 && std::abs(-F.d / F.c) <= 1.0 + 1e-12)
            throw MapError("moebius map has a pole in the closed disk");
        for (int k = 0; k < 720; ++k) {
            cplx z = std::polar(1.0, 2.0 * M_PI * k / 720.0);
            if (std::abs((F.a * z + F.b) / (F.c * z + F.d)) > 1.0 + 1e-9)
                throw MapError("moebius map is not a self-map of the unit disk");
        }
    }
    if (F.family == HoloMap::Family::AffineContraction) {
        if (dom.rho(F.anchor) > 1e-6)
            throw MapError("affine anchor lies outside the closed domain");
    }
    for (int k = 0; k < samples; ++k) {
        Point z = random_interior_point(dom, seed, static_cast<std::uint64_t>(k));
        if (!(dom.rho(apply_map(F, z)) < 1e-12))
            throw MapError("map sends a sampled interior point outside the domain");
    }
}

OrbitRecord iterate_orbit(const Domain& dom, const HoloMap& F, const Point& z, int N) {
    if (N < 1) throw InputError("iterate_orbit: N must be >= 1");
    if (!contains(dom, z)) throw DomainError("iterate_orbit: seed not interior");
    BoundaryOpts depth_opts;
    depth_opts.directions = 24;
    depth_opts.refine = dom.is_model();

    OrbitRecord rec;
    rec.seed = z;
    Point cur = z;
    const double stall_tol = 1e-9 * dom.enclosing_radius;
    for (int nu = 1; nu <= N; ++nu) {
        Point next = apply_map(F, cur);
        if (!all_finite(next)) {
            rec.truncated = true;
            break;
        }
        if (!(dom.rho(next) < 0.0)) {
            // distinguish a genuine escape from the floating-point collapse of
            // a boundary-convergent orbit onto its limit point
            if (dist(next, cur) <= stall_tol && dom.rho(next) <= 1e-9 * dom.enclosing_radius) {
                rec.hit_boundary = true;
                rec.boundary_point = next;
            } else {
                rec.truncated = true;
            }
            break;
        }
        cur = next;
        rec.iterates.push_back(cur);
        rec.depth.push_back(boundary_distance(dom, cur, depth_opts));
        rec.displacement.push_back(distance_floor(dom, cur, dom.base_point));
    }
    if (rec.iterates.empty()) throw MapError("iterate_orbit: map leaves the domain immediately");
    return rec;
}

WDVerdict classify_wolff_denjoy(const Domain& dom, const HoloMap& F,
                                const std::vector<Point>& seeds, int N, const WDOptions& opts) {
    if (seeds.size() < 3) throw InputError("classify_wolff_denjoy: need at least 3 seeds");
    validate_map(dom, F);

    WDVerdict v;
    v.depth_floor = opts.depth_floor_factor * boundary_distance(dom, dom.base_point);
    for (const auto& s : seeds) v.orbits.push_back(iterate_orbit(dom, F, s, N));

    bool all_deep = true, all_shallow = true, depths_down = true;
    double tail_depth_max = 0.0;
    for (const auto& orb : v.orbits) {
        if (orb.truncated) throw MapError("classify_wolff_denjoy: orbit left the domain");
        std::size_t len = orb.depth.size();
        std::size_t tail_start =
            static_cast<std::size_t>((1.0 - opts.tail_fraction) * static_cast<double>(len));
        double liminf = orb.hit_boundary ? 0.0 : 1e300;
        for (std::size_t i = tail_start; i < len; ++i) liminf = std::min(liminf, orb.depth[i]);
        tail_depth_max = std::max(tail_depth_max, liminf);
        if (liminf < v.depth_floor) all_deep = false;
        double final_depth = orb.hit_boundary ? 0.0 : orb.depth.back();
        if (final_depth > 0.5 * v.depth_floor) all_shallow = false;
        for (std::size_t i = tail_start; i + 1 < len; ++i)
            if (orb.depth[i + 1] > orb.depth[i] * (1.0 + 1e-6) + 1e-12) depths_down = false;
    }
    v.tail_depth_max = tail_depth_max;

    double agreement = 0.0;
    for (std::size_t i = 0; i < v.orbits.size(); ++i)
        for (std::size_t j = i + 1; j < v.orbits.size(); ++j)
            agreement =
                std::max(agreement, dist(v.orbits[i].terminal(), v.orbits[j].terminal()));
    v.agreement = agreement;

    if (all_deep) {
        v.classification = WDClass::CompactOrbits;
    } else if (all_shallow && depths_down && agreement <= opts.agreement_tol) {
        v.classification = WDClass::BoundaryConvergent;
        v.limit_point = v.orbits.front().terminal();
    }
    return v;
}

ConstancyReport limit_constancy_probe(const Domain& dom, const HoloMap& F, int grid_points,
                                      int N, const WDOptions& opts, std::uint64_t seed) {
    if (grid_points < 10) throw InputError("limit_constancy_probe: need a grid of >= 10 points");
    std::vector<Point> grid;
    grid.push_back(dom.base_point);
    for (int k = 1; k < grid_points; ++k)
        grid.push_back(random_interior_point(dom, seed, static_cast<std::uint64_t>(k)));

    std::vector<Point> classify_seeds(grid.begin(), grid.begin() + 3);
    WDVerdict wd = classify_wolff_denjoy(dom, F, classify_seeds, N, opts);

    ConstancyReport rep;
    rep.grid_size = grid_points;
    rep.classification = wd.classification;
    if (wd.classification != WDClass::BoundaryConvergent) return rep;
    rep.applicable = true;

    std::vector<Point> ends, ends_prev;
    for (const auto& z : grid) {
        OrbitRecord orb = iterate_orbit(dom, F, z, N);
        ends.push_back(orb.terminal());
        ends_prev.push_back(orb.hit_boundary || orb.iterates.size() < 2
                                ? orb.terminal()
                                : orb.iterates[orb.iterates.size() - 2]);
    }
    double spread = 0.0;
    for (std::size_t i = 0; i < ends.size(); ++i)
        for (std::size_t j = i + 1; j < ends.size(); ++j)
            spread = std::max(spread, dist(ends[i], ends[j]));
    rep.limit_spread = spread;
    double inter = 0.0;
    for (std::size_t i = 0; i < ends.size(); ++i)
        inter = std::max(inter, dist(ends[i], ends_prev[i]));  // even vs odd tails
    rep.interleave_spread = inter;
    rep.common_limit = ends.front();
    return rep;
}

}  // namespace kobalab

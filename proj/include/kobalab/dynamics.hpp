#pragma once

#include <string>
#include <vector>

#include "kobalab/domain.hpp"
#include "kobalab/paths.hpp"

namespace kobalab {

struct MapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Built-in holomorphic self-map families. Only built-ins are allowed so the
// "maps Omega into Omega" hypothesis stays checkable.
struct HoloMap {
    enum class Family { DiskMoebius, PolydiskProduct, AffineContraction, Composition };
    Family family = Family::DiskMoebius;

    // DiskMoebius: z -> (a z + b) / (c z + d)
    cplx a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};
    // PolydiskProduct: one Moebius per factor
    std::vector<HoloMap> parts;  // also Composition (applied left to right)
    // AffineContraction: z -> anchor + s (z - anchor)
    Point anchor;
    double s = 0.5;

    std::string name() const;
};

HoloMap moebius_map(cplx a, cplx b, cplx c, cplx d);
HoloMap rotation_map(double theta);
HoloMap polydisk_product(std::vector<HoloMap> factors);
HoloMap affine_contraction(const Point& anchor, double s);
HoloMap composition(std::vector<HoloMap> maps);

// Parse the CLI shorthand, e.g. "moebius:2,1,1,2", "rotation:1.5707",
// "affine:0.5@0,0.2", "product:moebius:2,1,1,2;moebius:2,1,1,2".
HoloMap parse_map(const std::string& text, int dim);

Point apply_map(const HoloMap& F, const Point& z);

// Sampled self-map validation: maps interior sample points into the domain
// (exact families like the affine contraction on a convex domain pass by
// construction; the check still runs).
void validate_map(const Domain& dom, const HoloMap& F, int samples = 256,
                  std::uint64_t seed = 5);

struct OrbitRecord {
    Point seed;
    std::vector<Point> iterates;       // F(z), F^2(z), ..., up to N
    std::vector<double> depth;         // delta_Omega along the orbit
    std::vector<double> displacement;  // lower bounds on k(F^nu z, z0)
    bool truncated = false;
    // the orbit reached the boundary to machine precision (the stationary
    // collapse of a boundary-convergent orbit, not a map-validity failure)
    bool hit_boundary = false;
    Point boundary_point;

    const Point& terminal() const { return hit_boundary ? boundary_point : iterates.back(); }
};

OrbitRecord iterate_orbit(const Domain& dom, const HoloMap& F, const Point& z, int N);

enum class WDClass { CompactOrbits, BoundaryConvergent, Inconclusive };
std::string wd_name(WDClass c);

struct WDVerdict {
    WDClass classification = WDClass::Inconclusive;
    Point limit_point;       // boundary-convergent only
    double agreement = 0.0;  // max pairwise distance of terminal iterates
    double tail_depth_max = 0.0;
    double depth_floor = 0.0;
    std::vector<OrbitRecord> orbits;
};

struct WDOptions {
    double tail_fraction = 0.25;
    double agreement_tol = 1e-5;
    double depth_floor_factor = 0.1;  // of delta(base point)
};

WDVerdict classify_wolff_denjoy(const Domain& dom, const HoloMap& F,
                                const std::vector<Point>& seeds, int N,
                                const WDOptions& opts = {});

struct ConstancyReport {
    bool applicable = false;  // false when the map is not boundary-convergent
    WDClass classification = WDClass::Inconclusive;
    double limit_spread = 0.0;       // max pairwise distance of grid limits
    double interleave_spread = 0.0;  // even vs odd subsequence disagreement
    Point common_limit;
    int grid_size = 0;
};

// Thm-6.2 probe: when orbits converge to the boundary, the limit map is
// constant across a grid of starting points, and interleaved subsequences
// share the same limit.
ConstancyReport limit_constancy_probe(const Domain& dom, const HoloMap& F, int grid_points,
                                      int N, const WDOptions& opts = {},
                                      std::uint64_t seed = 17);

}  // namespace kobalab

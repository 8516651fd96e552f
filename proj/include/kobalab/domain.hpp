#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kobalab/complexvec.hpp"

namespace kobalab {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SamplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DomainKind { Ball, Polydisk, Example51, Example52, Graph, Custom };

std::string kind_name(DomainKind k);

// A bounded domain in C^d described by a defining function rho with
// Omega = {rho < 0}, an enclosing ball, and a base point. Model kinds carry
// their parameters so metric/distance queries can take exact fast paths.
struct Domain {
    DomainKind kind = DomainKind::Custom;
    int dim = 1;
    std::function<double(const CVec&)> rho;
    Point enclosing_center;
    double enclosing_radius = 1.0;
    Point base_point;
    bool convex = false;

    // model parameters
    double ball_radius = 0.0;                     // Ball
    std::vector<double> poly_radii;               // Polydisk
    std::function<CVec(cplx)> graph_f;            // Graph: f with V_f = {(z, f(z))}
    std::string spec_text;                        // JSON the domain was built from

    bool is_model() const { return kind == DomainKind::Ball || kind == DomainKind::Polydisk; }
};

// --- builders ----------------------------------------------------------------

Domain make_ball(const Point& center, double R);
Domain make_polydisk(const std::vector<double>& radii);
inline Domain make_unit_disk() { return make_polydisk({1.0}); }
Domain make_unit_bidisk();

struct Example51Params {
    double eps = 0.4;  // convexity window (0, 1/sqrt(6))
    int n = 6;         // exponent of chi(t) = (t - eps^2)^n, n >= 3
};
struct Example52Params {
    double eps = 0.35;   // convexity window (0, 1/(2*sqrt(2)))
    double delta = 0.7;  // collar width > 0
};

Domain make_example51(const Example51Params& p);
Domain make_example52(const Example52Params& p);

// Graph subspace V_f of the polydisk D^n, f : D -> D^{n-1} holomorphic.
// Throws if the sampled sup-norm of any component reaches 1.
Domain make_graph(int n, std::function<CVec(cplx)> f, const std::string& spec = "");

Domain make_custom_expr(int dim, const std::string& rho_expr, const Point& enclosing_center,
                        double enclosing_radius, const Point& base_point, bool convex);
Domain make_custom_fn(int dim, std::function<double(const CVec&)> rho,
                      const Point& enclosing_center, double enclosing_radius,
                      const Point& base_point, bool convex);

// JSON spec: {"kind": "ball"|"polydisk"|"disk"|"example51"|"example52"|"graph"|"custom",
//             "params": {...}}   (see docs/formats.md)
Domain domain_from_json(const nlohmann::json& spec);
Domain domain_from_json_text(const std::string& text);

// --- queries -----------------------------------------------------------------

bool contains(const Domain& dom, const Point& z);

struct BoundaryOpts {
    int directions = 64;     // ray fan size
    bool refine = true;      // Nelder-Mead polish over the direction sphere
    double tol_rel = 1e-10;  // bisection tolerance, relative to enclosing radius
    int march_steps = 192;   // first-crossing scan for non-convex domains
};

// Euclidean distance to the boundary, by multi-directional ray bisection
// plus local refinement (closed forms on model kinds).
double boundary_distance(const Domain& dom, const Point& z, const BoundaryOpts& opts = {});

struct NearestBoundary {
    Point point;        // boundary point realizing the refined minimum
    Direction outward;  // unit direction from z toward it
    double distance = 0.0;
};
NearestBoundary nearest_boundary(const Domain& dom, const Point& z,
                                 const BoundaryOpts& opts = {});

// Exit radius along the ray z + t*u, t >= 0 (u need not be unit).
double ray_exit(const Domain& dom, const Point& z, const Direction& u,
                const BoundaryOpts& opts = {});

struct LineRadiusOpts {
    int phases = 64;         // initial phase fan; doubled until stable
    double stable_tol = 1e-6;
    int max_doublings = 4;
    double tol_rel = 1e-12;
};

// Largest r with {z + zeta * v/||v|| : |zeta| < r} inside Omega, by phase
// sampling; the returned value is deflated by stable_tol so that
// r_hat <= r_Omega <= r_hat * (1 + stable_tol) under the stated smoothness
// assumption on the phase-exit profile.
double line_radius(const Domain& dom, const Point& z, const Direction& v,
                   const LineRadiusOpts& opts = {});

struct ConvexityWitness {
    Point a, b, midpoint;
};
// Randomized midpoint probe; nullopt witness means no violation found.
std::optional<ConvexityWitness> convexity_probe(const Domain& dom, int samples,
                                                std::uint64_t seed = 1);

// Random interior point by rejection inside the enclosing ball.
Point random_interior_point(const Domain& dom, std::uint64_t seed, std::uint64_t stream,
                            int max_tries = 100000);

// Boundary point hit by the ray from `from` in direction `u`.
Point boundary_point_along(const Domain& dom, const Point& from, const Direction& u,
                           const BoundaryOpts& opts = {});

// Root t of rho(0, ..., 0, i t) = 0 above the given bracket; used to locate
// the degenerate boundary point p0 = (0, ic) of the example domains.
double axis_boundary_root(const Domain& dom, double t_lo, double t_hi);

nlohmann::json domain_spec_json(const Domain& dom);

}  // namespace kobalab

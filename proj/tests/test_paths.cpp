#include <doctest.h>

#include <sstream>

#include "kobalab/model.hpp"
#include "kobalab/paths.hpp"
#include "kobalab/rng.hpp"

using namespace kobalab;

namespace {

SampledPath straight(const Point& a, const Point& b, int n) {
    SampledPath p;
    for (int k = 0; k < n; ++k) {
        double t = static_cast<double>(k) / (n - 1);
        p.grid.push_back(t);
        p.points.push_back(lerp(a, b, t));
    }
    return p;
}

}  // namespace

TEST_CASE("kobayashi length: straight disk path against artanh") {
    Domain disk = make_unit_disk();
    SampledPath p = straight({cplx(0, 0)}, {cplx(0.8, 0)}, 512);
    Interval len = kobayashi_length(disk, p);
    CHECK(len.upper == doctest::Approx(1.0986122886681098).epsilon(0.01));
    CHECK(len.lower == doctest::Approx(1.0986122886681098).epsilon(0.01));

    Domain bidisk = make_unit_bidisk();
    SampledPath q = straight({cplx(0, 0), cplx(0, 0)}, {cplx(0.5, 0), cplx(0, 0)}, 512);
    CHECK(kobayashi_length(bidisk, q).upper ==
          doctest::Approx(0.5493061443340548).epsilon(0.01));
}

TEST_CASE("kobayashi length: degenerate inputs") {
    Domain disk = make_unit_disk();
    SampledPath p;
    p.grid = {0.0, 1.0};
    p.points = {{cplx(0.2, 0)}, {cplx(0.2, 0)}};
    Interval len = kobayashi_length(disk, p);  // constant path has zero length
    CHECK(len.lower == 0.0);
    CHECK(len.upper == 0.0);

    SampledPath bad;
    bad.grid = {0.0, 0.5, 1.0};
    bad.points = {{cplx(0, 0)}, {cplx(1.2, 0)}, {cplx(0.5, 0)}};
    CHECK_THROWS_AS(kobayashi_length(disk, bad), PathError);
}

TEST_CASE("estimate_distance on model domains is exact with a geodesic witness") {
    Domain disk = make_unit_disk();
    DistanceEstimate de = estimate_distance(disk, {cplx(0, 0)}, {cplx(0.5, 0)});
    CHECK(de.upper == doctest::Approx(0.5493061443340548));
    CHECK(de.lower == doctest::Approx(0.5493061443340548));

    Domain bidisk = make_unit_bidisk();
    DistanceEstimate db =
        estimate_distance(bidisk, {cplx(0, 0), cplx(0, 0)}, {cplx(0.5, 0), cplx(0.3, 0)});
    CHECK(db.upper == doctest::Approx(0.5493061443340548));

    // z == w
    DistanceEstimate dz = estimate_distance(disk, {cplx(0.2, 0.1)}, {cplx(0.2, 0.1)});
    CHECK(dz.lower == 0.0);
    CHECK(dz.upper == 0.0);
}

TEST_CASE("variational estimate on the model disk: 2% against closed form") {
    // exercises the length-infimum route (Result-2.1 style) with the exact
    // metric: the optimizer must reproduce the closed-form distance
    Domain disk = make_unit_disk();
    DistanceBudget b;
    b.seed = 7;
    b.force_variational = true;
    b.control_points = 32;
    b.iterations = 4000;
    auto eng = make_engine(101, 0);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    int tried = 0;
    while (tried < 5) {
        cplx z(u(eng), u(eng)), w(u(eng), u(eng));
        if (std::abs(z) > 0.85 || std::abs(w) > 0.85) continue;
        double exact = disk_distance(z, w);
        if (exact > 3.0 || exact < 0.05) continue;
        ++tried;
        DistanceEstimate de = estimate_distance(disk, {z}, {w}, b);
        CHECK(de.upper >= exact * (1 - 1e-9));
        CHECK(de.upper <= exact * 1.02);
        CHECK(de.lower <= exact * (1 + 1e-9));
    }
}

TEST_CASE("estimate_distance sandwich on the custom-wrapped disk") {
    // generic membership-oracle bounds: the interval must contain the true
    // distance; the upper side uses the 1/r_Omega metric bound, so it is
    // within the convex-domain factor of 2 but not sharper
    Domain cd = make_custom_expr(1, "x1^2 + y1^2 - 1", {cplx(0, 0)}, 1.0, {cplx(0, 0)}, true);
    DistanceBudget b;
    b.seed = 7;
    b.iterations = 800;
    b.control_points = 24;
    auto eng = make_engine(101, 0);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    int tried = 0;
    while (tried < 3) {
        cplx z(u(eng), u(eng)), w(u(eng), u(eng));
        if (std::abs(z) > 0.75 || std::abs(w) > 0.75) continue;
        double exact = disk_distance(z, w);
        if (exact > 2.0 || exact < 0.05) continue;
        ++tried;
        DistanceEstimate de = estimate_distance(cd, {z}, {w}, b);
        CHECK(de.lower <= exact * (1 + 1e-6));
        CHECK(de.upper >= exact * (1 - 1e-6));
        CHECK(de.upper <= exact * 2.05 + 0.05);
    }
}

TEST_CASE("estimate_distance symmetry and triangle inequality (uppers)") {
    Domain ex52 = make_example52({});
    Point a{cplx(0.02, 0.01), cplx(0.0, 0.10)};
    Point b{cplx(-0.05, 0.0), cplx(0.03, 0.20)};
    Point c{cplx(0.0, -0.04), cplx(0.0, 0.28)};
    DistanceBudget bud;
    bud.iterations = 600;
    bud.control_points = 24;
    double ab = estimate_distance(ex52, a, b, bud).upper;
    double ba = estimate_distance(ex52, b, a, bud).upper;
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));  // canonical orientation inside
    double ac = estimate_distance(ex52, a, c, bud).upper;
    double cb = estimate_distance(ex52, c, b, bud).upper;
    CHECK(ab <= ac + cb + 1e-6);
}

TEST_CASE("exact model geodesics: disk radial and flat bidisk") {
    Domain disk = make_unit_disk();
    SampledPath g = exact_model_geodesic(disk, {cplx(0, 0)}, {cplx(0.8, 0)}, 65);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(g.points[i][0] - std::tanh(g.grid[i])) < 1e-10);

    Domain bidisk = make_unit_bidisk();
    SampledPath f = exact_model_geodesic(bidisk, {cplx(0.9, 0), cplx(0.9, 0)},
                                         {cplx(-0.9, 0), cplx(0.9, 0)}, 129);
    // the midpoint (0, 0.9) has bidisk boundary distance 0.1
    Point mid = f.points[f.size() / 2];
    CHECK(std::abs(mid[0]) < 1e-9);
    CHECK(boundary_distance(bidisk, mid) == doctest::Approx(0.1));
    CHECK_THROWS_AS(exact_model_geodesic(disk, {cplx(0.5, 0)}, {cplx(0.5, 0)}, 9), InputError);
}

TEST_CASE("reparametrize_unit_speed reproduces tanh on the disk") {
    Domain disk = make_unit_disk();
    SampledPath p = straight({cplx(0, 0)}, {cplx(0.8, 0)}, 512);
    ReparamResult rr = reparametrize_unit_speed(disk, p, 0.01);
    double sup = 0.0;
    for (std::size_t i = 0; i < rr.path.size(); ++i)
        sup = std::max(sup, std::abs(rr.path.points[i][0] - std::tanh(rr.path.grid[i])));
    CHECK(sup < 1e-3);
    CHECK(rr.cert.speed_max <= 1.01);
    CHECK(rr.cert.speed_min >= 0.99);
    CHECK(rr.cert.worst_pair_margin >= -1e-6);

    // trace preservation (Hausdorff distance of point sets)
    double haus = 0.0;
    for (const auto& q : rr.path.points) {
        double best = 1e300;
        for (const auto& r : p.points) best = std::min(best, dist(q, r));
        haus = std::max(haus, best);
    }
    CHECK(haus < 1e-3);

    // length invariance
    Interval li = kobayashi_length(disk, p);
    Interval lo = kobayashi_length(disk, rr.path);
    CHECK(lo.upper == doctest::Approx(li.upper).epsilon(1e-3));

    // zero-speed segment rejected
    SampledPath dup = p;
    dup.points[5] = dup.points[4];
    CHECK_THROWS_AS(reparametrize_unit_speed(disk, dup, 0.01), PathError);
}

TEST_CASE("verify_almost_geodesic: geodesics pass, folds fail") {
    Domain disk = make_unit_disk();
    SampledPath g = exact_model_geodesic(disk, {cplx(-0.7, 0)}, {cplx(0.7, 0.2)}, 257);
    AlmostGeodesicCertificate cert = verify_almost_geodesic(disk, g, 1.0, 1e-6);
    CHECK(cert.worst_pair_margin >= -1e-6);
    CHECK(cert.subsegment_margin >= -1e-6);
    CHECK(cert.lipschitz_const <= 1.0 / (1.0 / disk.enclosing_radius) + 1e-6);

    // fold: out to 0.8 and back to 0.2 along the diameter, unit-ish speed grid
    SampledPath fold;
    int n = 257;
    for (int k = 0; k < n; ++k) {
        double t = static_cast<double>(k) / (n - 1);
        double x = t < 0.5 ? 0.8 * (2 * t) : 0.8 - 0.6 * (2 * t - 1);
        fold.grid.push_back(t * 3.0);
        fold.points.push_back({cplx(x, 0)});
    }
    AlmostGeodesicCertificate bad = verify_almost_geodesic(disk, fold, 1.0, 0.01);
    CHECK(bad.worst_pair_margin < 0.0);
}

TEST_CASE("almost_geodesic_between on the disk: certificate and closed form") {
    Domain disk = make_unit_disk();
    ReparamResult rr = almost_geodesic_between(disk, {cplx(0, 0)}, {cplx(0.8, 0)}, 0.01);
    CHECK(rr.cert.worst_pair_margin >= -1e-3);
    CHECK(rr.cert.speed_max <= 1.01);
    double L = rr.path.grid.back();
    CHECK(L == doctest::Approx(1.0986122886681098).epsilon(0.01));
}

TEST_CASE("almost_geodesic_between on example51: deep interior pair, certificate only") {
    Domain ex51 = make_example51({});
    double t0 = ex51.base_point[1].imag();
    Point a{cplx(0, 0), cplx(0, t0 * 0.92)};
    Point
        b{cplx(0, 0), cplx(0, t0 * 1.08)};
    DistanceBudget bud;
    bud.control_points = 24;
    bud.iterations = 500;
    ReparamResult rr = almost_geodesic_between(ex51, a, b, 0.1, bud);
    CHECK(rr.cert.worst_pair_margin >= -1e-3);
    CHECK(rr.cert.lambda == 1.0);
}

TEST_CASE("gap-not-closed error surfaces the achieved gap") {
    Domain ex51 = make_example51({});
    // far-apart points with a tiny kappa cannot be certified
    Point a{cplx(0, 0), cplx(0, 0.05)};
    Point b{cplx(0.2, 0), cplx(0, 0.3)};
    DistanceBudget bud;
    bud.iterations = 60;
    bud.control_points = 16;
    CHECK_THROWS_AS(almost_geodesic_between(ex51, a, b, 1e-4, bud), SearchError);
}

TEST_CASE("path CSV layout") {
    SampledPath p;
    p.grid = {0.0, 1.0};
    p.points = {{cplx(0, 0), cplx(1, -1)}, {cplx(0.5, 0.25), cplx(0, 0)}};
    std::ostringstream os;
    write_path_csv(os, p);
    CHECK(os.str() == "t,re1,im1,re2,im2\n0,0,0,1,-1\n1,0.5,0.25,0,0\n");
}

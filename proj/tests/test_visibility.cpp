#include <doctest.h>

#include "kobalab/model.hpp"
#include "kobalab/visibility.hpp"

using namespace kobalab;

TEST_CASE("gromov product closed forms on the disk") {
    Domain disk = make_unit_disk();
    Point o{cplx(0, 0)};
    // antipodal through the center: product 0
    Interval g = gromov_product(disk, o, {cplx(0.9, 0)}, {cplx(-0.9, 0)});
    CHECK(g.upper < 1e-12);
    // (x|x)_o = k(o,x)
    Interval gx = gromov_product(disk, o, {cplx(0.9, 0)}, {cplx(0.9, 0)});
    CHECK(gx.lower == doctest::Approx(1.4722194895832204));
    // symmetry
    Interval gxy = gromov_product(disk, o, {cplx(0.5, 0.2)}, {cplx(-0.3, 0.4)});
    Interval gyx = gromov_product(disk, o, {cplx(-0.3, 0.4)}, {cplx(0.5, 0.2)});
    CHECK(gxy.lower == doctest::Approx(gyx.lower));
    CHECK(gxy.upper == doctest::Approx(gyx.upper));
}

TEST_CASE("gromov product adversarial bidisk value") {
    Domain bidisk = make_unit_bidisk();
    Point o{cplx(0, 0), cplx(0, 0)};
    double r = 0.9, s = std::tanh(2.0 * artanh(0.9));
    Interval g = gromov_product(bidisk, o, {cplx(r, 0), cplx(s, 0)}, {cplx(-r, 0), cplx(s, 0)});
    CHECK(g.lower == doctest::Approx(1.4722194895832204).epsilon(1e-12));
    CHECK(g.upper == doctest::Approx(1.4722194895832204).epsilon(1e-12));
}

TEST_CASE("gromov products stay below min of the side distances") {
    Domain disk = make_unit_disk();
    Point o{cplx(0.1, -0.2)};
    Point x{cplx(0.7, 0.1)}, y{cplx(-0.2, 0.6)};
    Interval g = gromov_product(disk, o, x, y);
    double kox = disk_distance(o[0], x[0]);
    double koy = disk_distance(o[0], y[0]);
    CHECK(g.lower >= -1e-12);
    CHECK(g.upper <= std::min(kox, koy) + 1e-9);
}

TEST_CASE("gromov limsup probe: disk bounded, bidisk adversarial diverging") {
    Domain disk = make_unit_disk();
    ApproachSchedule sched;
    sched.steps = 18;
    GromovProbeReport rep =
        gromov_limsup_probe(disk, {cplx(0, 0)}, {cplx(1, 0)}, {cplx(-1, 0)}, sched);
    CHECK(rep.trend == Trend::Bounded);
    for (const auto& e : rep.entries) CHECK(e.product.upper <= 1e-6);

    Domain bidisk = make_unit_bidisk();
    ApproachSchedule adv;
    adv.kind = ApproachSchedule::Kind::AdversarialFlat;
    adv.steps = 18;
    GromovProbeReport rep2 = gromov_limsup_probe(bidisk, {cplx(0, 0), cplx(0, 0)},
                                                 {cplx(1, 0), cplx(1, 0)},
                                                 {cplx(-1, 0), cplx(1, 0)}, adv);
    CHECK(rep2.trend == Trend::Diverging);
    for (std::size_t n = 0; n < rep2.entries.size(); ++n) {
        double r = rep2.entries[n].x[0].real();  // r_n = 1 - 2^(-(n+1)/2)
        CHECK(std::fabs(rep2.entries[n].product.lower - artanh(r)) < 1e-9);
    }
}

TEST_CASE("boundary pair divergence probes") {
    Domain disk = make_unit_disk();
    DivergenceReport rep =
        boundary_pair_divergence_probe(disk, {cplx(1, 0)}, {cplx(-1, 0)});
    CHECK(rep.trend == Trend::Diverging);
    // exact disk distances by closed form
    for (std::size_t n = 0; n < rep.entries.size(); ++n) {
        double d = std::pow(2.0, -(static_cast<double>(n) + 1.0));
        CHECK(rep.entries[n].lower ==
              doctest::Approx(disk_distance(cplx(1 - d, 0), cplx(-(1 - d), 0))));
    }

    Domain ball = make_ball({cplx(0, 0), cplx(0, 0)}, 1.0);
    DivergenceReport rb = boundary_pair_divergence_probe(
        ball, {cplx(1, 0), cplx(0, 0)}, {cplx(-1, 0), cplx(0, 0)});
    CHECK(rb.trend == Trend::Diverging);

    Domain bidisk = make_unit_bidisk();
    DivergenceReport rf = boundary_pair_divergence_probe(
        bidisk, {cplx(1, 0), cplx(1, 0)}, {cplx(-1, 0), cplx(1, 0)});
    CHECK(rf.trend == Trend::Diverging);
}

TEST_CASE("visibility probe: disk visible, bidisk flat family fails") {
    Domain disk = make_unit_disk();
    VisibilityReport vr = visibility_probe(disk, {cplx(1, 0)}, {cplx(-1, 0)}, 0.05, 10);
    CHECK(vr.verdict == VisibilityVerdict::VisibleEvidence);
    for (const auto& t : vr.trials)
        if (t.constructed) CHECK(t.max_interior_depth >= 0.9);

    Domain bidisk = make_unit_bidisk();
    VisibilityReport vf =
        visibility_probe(bidisk, {cplx(1, 0), cplx(1, 0)}, {cplx(-1, 0), cplx(1, 0)}, 0.05, 10);
    CHECK(vf.verdict == VisibilityVerdict::FailureEvidence);
    // depth of trial n is exactly 1 - r_n, r_n the stored corner offset
    for (const auto& t : vf.trials) {
        double r = std::abs(t.from[1]);
        CHECK(t.max_interior_depth == 1.0 - r);  // bit-exact
    }
}

TEST_CASE("graph subspace geodesics certify with tiny kappa") {
    // f(z) = z/2: lift of the diameter geodesic
    Domain g = make_graph(2, [](cplx z) { return CVec{0.5 * z}; });
    ReparamResult rr = graph_subspace_geodesic(g, cplx(-0.9, 0), cplx(0.9, 0), 257);
    CHECK(rr.cert.worst_pair_margin >= -1e-9);
    Point mid = rr.path.points[rr.path.size() / 2];
    CHECK(std::abs(mid[0]) < 1e-9);
    CHECK(std::abs(mid[1]) < 1e-9);

    // f(z) = z^2: Schwarz-Pick contraction checked numerically along the lift
    Domain g2 = make_graph(2, [](cplx z) { return CVec{z * z}; });
    ReparamResult r2 = graph_subspace_geodesic(g2, cplx(0, 0), cplx(0.7, 0), 257);
    CHECK(r2.cert.worst_pair_margin >= -1e-9);
    for (std::size_t i = 0; i + 1 < r2.path.size(); ++i) {
        cplx a = r2.path.points[i][0], b = r2.path.points[i + 1][0];
        CHECK(disk_distance(a * a, b * b) <= disk_distance(a, b) + 1e-12);
    }

    // f == 0: flat slice
    Domain g0 = make_graph(2, [](cplx) { return CVec{cplx(0, 0)}; });
    ReparamResult r0 = graph_subspace_geodesic(g0, cplx(0, 0), cplx(0.8, 0), 65);
    for (std::size_t i = 0; i < r0.path.size(); ++i) {
        CHECK(std::abs(r0.path.points[i][0] - std::tanh(r0.path.grid[i])) < 1e-9);
        CHECK(std::abs(r0.path.points[i][1]) == 0.0);
    }
    CHECK_THROWS_AS(graph_subspace_geodesic(g0, cplx(0.5, 0), cplx(0.5, 0), 9), InputError);
}

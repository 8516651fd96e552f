#include <doctest.h>

#include <nlohmann/json.hpp>

#include "kobalab/domain.hpp"
#include "kobalab/rng.hpp"

using namespace kobalab;

namespace {
const char* kTwoBalls =
    R"x({"kind":"custom","params":{"d":1,
        "rho":"min((x1-0.5)^2 + y1^2 - 0.16, (x1+0.5)^2 + y1^2 - 0.16)",
        "center":[0,0],"radius":1.0,"base":[[0.5,0]],"convex":false}})x";
}

TEST_CASE("membership") {
    Domain bidisk = make_unit_bidisk();
    CHECK(contains(bidisk, {cplx(0, 0), cplx(0, 0)}));
    CHECK_FALSE(contains(bidisk, {cplx(1.1, 0), cplx(0, 0)}));
    Domain ex51 = make_example51({});
    CHECK(contains(ex51, ex51.base_point));
    CHECK_THROWS_AS(contains(ex51, {cplx(0, 0)}), InputError);  // wrong dimension

    // the spec's illustrative parameters also give a valid domain
    Domain small = make_example51({0.3, 3});
    CHECK(contains(small, small.base_point));
    CHECK(small.rho(small.base_point) < 0.0);
}

TEST_CASE("boundary distance closed forms and ray fan") {
    Domain disk = make_unit_disk();
    CHECK(boundary_distance(disk, {cplx(0.3, 0)}) == doctest::Approx(0.7));

    Domain bidisk = make_unit_bidisk();
    CHECK(boundary_distance(bidisk, {cplx(0, 0), cplx(0.9, 0)}) == doctest::Approx(0.1));

    Point c0{cplx(0, 0), cplx(0, 0)};
    Domain ball2 = make_ball(c0, 2.0);
    CHECK(boundary_distance(ball2, {cplx(1, 0), cplx(0, 0)}) == doctest::Approx(1.0));

    // generic path (custom wrap of the unit disk) against the closed form
    Domain cd = make_custom_expr(1, "x1^2 + y1^2 - 1", {cplx(0, 0)}, 1.0, {cplx(0, 0)}, true);
    for (double x : {0.0, 0.25, 0.6, -0.45}) {
        CHECK(boundary_distance(cd, {cplx(x, 0.1)}) ==
              doctest::Approx(1.0 - std::abs(cplx(x, 0.1))).epsilon(1e-6));
    }
    CHECK_THROWS_AS(boundary_distance(cd, {cplx(1.2, 0)}), DomainError);
}

TEST_CASE("line radius: models exactly, custom by phase bisection") {
    Domain disk = make_unit_disk();
    CHECK(line_radius(disk, {cplx(0, 0)}, {cplx(1, 0)}) == doctest::Approx(1.0));

    Domain bidisk = make_unit_bidisk();
    CHECK(line_radius(bidisk, {cplx(0, 0), cplx(0.5, 0)}, {cplx(1, 0), cplx(0, 0)}) ==
          doctest::Approx(1.0));

    Domain cd = make_custom_expr(1, "x1^2 + y1^2 - 1", {cplx(0, 0)}, 1.0, {cplx(0, 0)}, true);
    CHECK(line_radius(cd, {cplx(0, 0)}, {cplx(1, 0)}) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(line_radius(cd, {cplx(0.5, 0)}, {cplx(1, 0)}) == doctest::Approx(0.5).epsilon(1e-5));

    CHECK_THROWS_AS(line_radius(disk, {cplx(0, 0)}, {cplx(0, 0)}), InputError);

    // scaling invariance in v
    Domain ex52 = make_example52({});
    Point z{cplx(0, 0), cplx(0, 0.1)};
    Direction v{cplx(1, 0), cplx(0.5, -0.2)};
    double r1 = line_radius(ex52, z, v);
    double r2 = line_radius(ex52, z, cplx(0.3, 1.7) * v);
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-5));
}

TEST_CASE("boundary distance never exceeds line radius") {
    Domain ex51 = make_example51({});
    auto eng = make_engine(9, 0);
    for (int k = 0; k < 6; ++k) {
        Point z = random_interior_point(ex51, 9, static_cast<std::uint64_t>(k));
        Direction v = random_direction(eng, 2);
        double bd = boundary_distance(ex51, z);
        double lr = line_radius(ex51, z, v);
        CHECK(lr >= bd - 1e-6);
    }
}

TEST_CASE("example domains: paper quantities") {
    Domain ex51 = make_example51({});
    // r_Omega((0, i e^-16); (1,0)) = 1/4 exactly (flat region)
    double r = std::exp(-16.0);
    Point pr{cplx(0, 0), cplx(0, r)};
    CHECK(line_radius(ex51, pr, {cplx(1, 0), cplx(0, 0)}) == doctest::Approx(0.25).epsilon(1e-4));
    // p0 on the imaginary axis, rho(p0) ~ 0, outside B(0,eps)
    double c = axis_boundary_root(ex51, 0.4 * (1 + 1e-9), ex51.enclosing_radius);
    CHECK(c > 0.4);
    CHECK(c < 1.5 * 0.4);
    CHECK(std::fabs(ex51.rho({cplx(0, 0), cplx(0, c)})) < 1e-10);

    Domain ex52 = make_example52({});
    double r4 = std::exp(-4.0);
    Point p4{cplx(0, 0), cplx(0, r4)};
    double rho_paper = 0.4996644247613567;
    double lr = line_radius(ex52, p4, {cplx(1, 0), cplx(0, 0)});
    CHECK(lr >= 0.98 * rho_paper);   // collar blocks a bit before the paper bound
    CHECK(lr <= 1.001 * rho_paper);  // and never beats it
}

TEST_CASE("convexity probe") {
    Domain bidisk = make_unit_bidisk();
    CHECK_FALSE(convexity_probe(bidisk, 2000, 1).has_value());

    Domain ex51 = make_example51({});
    CHECK_FALSE(convexity_probe(ex51, 2000, 1).has_value());

    Domain two = domain_from_json_text(kTwoBalls);
    auto witness = convexity_probe(two, 4000, 1);
    REQUIRE(witness.has_value());
    CHECK(two.rho(witness->midpoint) >= 0.0);
    CHECK(two.rho(witness->a) < 0.0);
    CHECK(two.rho(witness->b) < 0.0);
}

TEST_CASE("domain JSON round trip and parameter validation") {
    Domain d = domain_from_json_text(R"({"kind":"polydisk","params":{"d":2}})");
    CHECK(d.kind == DomainKind::Polydisk);
    CHECK(d.dim == 2);
    auto j = domain_spec_json(d);
    CHECK(j["kind"] == "polydisk");

    CHECK_THROWS_AS(make_example51({0.5, 6}), ParamError);   // eps above the window
    CHECK_THROWS_AS(make_example51({0.3, 2}), ParamError);   // n too small
    CHECK_THROWS_AS(make_example52({0.4, 0.7}), ParamError); // eps above the window
    CHECK_THROWS_AS(make_ball({cplx(0, 0)}, -1.0), ParamError);
    CHECK_THROWS_AS(domain_from_json_text(R"({"kind":"nope"})"), ParamError);
}

TEST_CASE("graph subspace construction and validation") {
    auto f = [](cplx z) { return CVec{0.5 * z}; };
    Domain g = make_graph(2, f);
    CHECK(contains(g, {cplx(0.2, 0), cplx(0.1, 0)}));
    CHECK_FALSE(contains(g, {cplx(0.2, 0), cplx(0.3, 0)}));  // off the graph
    auto bad = [](cplx z) { return CVec{1.1 * z}; };
    CHECK_THROWS_AS(make_graph(2, bad), ParamError);

    // boundary distance to the rim of V_f for f(z) = z/2:
    // from (0, 0): min over |zeta|=1 of sqrt(1 + 1/4) = sqrt(5)/2
    Domain g2 = make_graph(2, f);
    CHECK(boundary_distance(g2, {cplx(0, 0), cplx(0, 0)}) ==
          doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-6));
}

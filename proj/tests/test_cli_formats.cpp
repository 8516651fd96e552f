#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "kobalab/reports.hpp"

using namespace kobalab;
using json = nlohmann::json;

TEST_CASE("report JSON carries the fields the CLI documents") {
    Domain disk = make_unit_disk();
    MetricEstimate e = metric_bounds(disk, {cplx(0.5, 0)}, {cplx(1, 0)});
    json je = to_json(e);
    CHECK(je["lower"] == je["upper"]);
    CHECK(je["upper_method"] == "exact-model");

    VisibilityReport vr = visibility_probe(disk, {cplx(1, 0)}, {cplx(-1, 0)}, 0.05, 8);
    json jv = to_json(vr);
    CHECK(jv["verdict"] == "visible-evidence");
    CHECK(jv["trials"].size() == 8);
    CHECK(jv.contains("compact_threshold"));
}

TEST_CASE("CSV writers are deterministic") {
    Domain disk = make_unit_disk();
    VisibilityReport vr = visibility_probe(disk, {cplx(1, 0)}, {cplx(-1, 0)}, 0.05, 6);
    std::ostringstream a, b;
    write_depth_csv(a, vr);
    write_depth_csv(b, vr);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("trial,constructed,max_interior_depth,cert_margin\n", 0) == 0);
}

TEST_CASE("orbit CSV layout") {
    Domain disk = make_unit_disk();
    HoloMap F = moebius_map(2, 1, 1, 2);
    OrbitRecord orb = iterate_orbit(disk, F, {cplx(0, 0)}, 2);
    std::ostringstream os;
    write_orbit_csv(os, orb);
    std::string s = os.str();
    CHECK(s.rfind("nu,re1,im1,depth,displacement\n", 0) == 0);
    CHECK(s.find("\n1,0.5,0,") != std::string::npos);
}

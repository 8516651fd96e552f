#include "kobalab/reports.hpp"

#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

namespace kobalab {

using json = nlohmann::json;

namespace {

// fixed %.17g rendering so identical runs emit byte-identical CSV
std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void put_point(std::ostream& os, const Point& p) {
    for (const auto& c : p) os << "," << num(c.real()) << "," << num(c.imag());
}

}  // namespace

json to_json(const Point& p) {
    json j = json::array();
    for (const auto& c : p) j.push_back({c.real(), c.imag()});
    return j;
}

json to_json(const Interval& iv) { return json{{"lower", iv.lower}, {"upper", iv.upper}}; }

json to_json(const MetricEstimate& e) {
    return json{{"lower", e.lower},
                {"upper", e.upper},
                {"lower_method", e.lower_method},
                {"upper_method", e.upper_method}};
}

json to_json(const MShellEstimate& e) {
    json j{{"r", e.r},
           {"M_lower", e.M_lower},
           {"M_upper", e.M_upper},
           {"sample_count", e.sample_count}};
    if (e.localizer)
        j["localizer"] = {{"center", to_json(e.localizer->center)},
                          {"radius", e.localizer->radius}};
    return j;
}

json to_json(const DistanceEstimate& e) {
    return json{{"lower", e.lower}, {"upper", e.upper}, {"witness_points", e.witness.size()}};
}

json to_json(const AlmostGeodesicCertificate& c) {
    return json{{"lambda", c.lambda},
                {"kappa", c.kappa},
                {"worst_pair_margin", c.worst_pair_margin},
                {"speed_max", c.speed_max},
                {"lipschitz_const", c.lipschitz_const},
                {"length_lower", c.length_lower},
                {"length_upper", c.length_upper},
                {"subsegment_margin", c.subsegment_margin},
                {"pair_count", c.pair_count}};
}

json to_json(const GromovProbeReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"x", to_json(e.x)},
                           {"y", to_json(e.y)},
                           {"product", to_json(e.product)},
                           {"width", e.width}});
    return json{{"o", to_json(r.o)},
                {"p", to_json(r.p)},
                {"q", to_json(r.q)},
                {"entries", entries},
                {"trend", trend_name(r.trend)}};
}

json to_json(const DivergenceReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"x", to_json(e.x)}, {"y", to_json(e.y)}, {"lower", e.lower}});
    return json{{"p", to_json(r.p)},
                {"q", to_json(r.q)},
                {"entries", entries},
                {"trend", trend_name(r.trend)}};
}

json to_json(const VisibilityReport& r) {
    json trials = json::array();
    for (const auto& t : r.trials) {
        json tj{{"from", to_json(t.from)},
                {"to", to_json(t.to)},
                {"constructed", t.constructed},
                {"max_interior_depth", t.max_interior_depth},
                {"cert_margin", t.cert_margin}};
        if (t.constructed) tj["depth_location"] = to_json(t.depth_location);
        if (!t.note.empty()) tj["note"] = t.note;
        trials.push_back(std::move(tj));
    }
    return json{{"p", to_json(r.p)},
                {"q", to_json(r.q)},
                {"kappa", r.kappa},
                {"neighborhood_radius", r.neighborhood_radius},
                {"compact_threshold", r.compact_threshold},
                {"failed_constructions", r.failed_constructions},
                {"trials", trials},
                {"verdict", verdict_name(r.verdict)}};
}

json to_json(const GoldilocksReport& r) {
    json shells = json::array();
    for (const auto& s : r.shells) shells.push_back(to_json(s));
    return json{{"eps0", r.eps0},
                {"r_grid", r.r_grid},
                {"shells", shells},
                {"partial_lower", r.partial_lower},
                {"partial_upper", r.partial_upper},
                {"fit", {{"C", r.fit.C},
                         {"alpha", r.fit.alpha},
                         {"max_residual", r.fit.max_residual},
                         {"samples", r.fit.samples}}},
                {"verdict_cond1", verdict_name(r.verdict_cond1)},
                {"verdict_cond2", verdict_name(r.verdict_cond2)}};
}

json to_json(const EvlReport& r) {
    json shells = json::array();
    for (const auto& s : r.shells) shells.push_back(to_json(s));
    return json{{"localizer", {{"center", to_json(r.localizer.center)},
                               {"radius", r.localizer.radius}}},
                {"f", {{"form", r.f.name()}, {"A", r.f.A}, {"alpha", r.f.alpha},
                       {"beta", r.f.beta}}},
                {"cond1_margin", r.cond1_margin},
                {"cond1_holds_margin", r.cond1_holds_margin},
                {"shells", shells},
                {"cond3_partials", r.cond3_partials},
                {"shell_power_fit", {{"log_c", r.shell_power_fit.C},
                                     {"epsilon", r.shell_power_fit.alpha}}},
                {"cond1", verdict_name(r.cond1)},
                {"cond2", verdict_name(r.cond2)},
                {"cond3", verdict_name(r.cond3)}};
}

json to_json(const ExampleClaimsReport& r) {
    json items = json::array();
    for (const auto& it : r.items)
        items.push_back({{"name", it.name},
                         {"passed", it.passed},
                         {"value", it.value},
                         {"bound", it.bound}});
    return json{{"which", r.which},
                {"items", items},
                {"p0", to_json(r.p0)},
                {"goldilocks", to_json(r.goldilocks)},
                {"all_passed", r.all_passed}};
}

json to_json(const OrbitRecord& r) {
    return json{{"seed", to_json(r.seed)},
                {"steps", r.iterates.size()},
                {"truncated", r.truncated},
                {"hit_boundary", r.hit_boundary},
                {"final", to_json(r.terminal())},
                {"final_depth", r.hit_boundary ? 0.0 : r.depth.back()},
                {"final_displacement", r.displacement.back()}};
}

json to_json(const WDVerdict& v) {
    json orbits = json::array();
    for (const auto& o : v.orbits) orbits.push_back(to_json(o));
    json j{{"classification", wd_name(v.classification)},
           {"agreement", v.agreement},
           {"tail_depth_max", v.tail_depth_max},
           {"depth_floor", v.depth_floor},
           {"orbits", orbits}};
    if (v.classification == WDClass::BoundaryConvergent) j["xi"] = to_json(v.limit_point);
    return j;
}

json to_json(const ConstancyReport& r) {
    json j{{"applicable", r.applicable},
           {"classification", wd_name(r.classification)},
           {"grid_size", r.grid_size}};
    if (r.applicable) {
        j["limit_spread"] = r.limit_spread;
        j["interleave_spread"] = r.interleave_spread;
        j["common_limit"] = to_json(r.common_limit);
    }
    return j;
}

void write_depth_csv(std::ostream& os, const VisibilityReport& r) {
    os << "trial,constructed,max_interior_depth,cert_margin\n";
    for (std::size_t i = 0; i < r.trials.size(); ++i) {
        const auto& t = r.trials[i];
        os << i << "," << (t.constructed ? 1 : 0) << "," << num(t.max_interior_depth) << ","
           << num(t.cert_margin) << "\n";
    }
}

void write_gromov_csv(std::ostream& os, const GromovProbeReport& r) {
    os << "n,product_lower,product_upper,width\n";
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        const auto& e = r.entries[i];
        os << (i + 1) << "," << num(e.product.lower) << "," << num(e.product.upper) << ","
           << num(e.width) << "\n";
    }
}

void write_divergence_csv(std::ostream& os, const DivergenceReport& r) {
    os << "n,k_lower\n";
    for (std::size_t i = 0; i < r.entries.size(); ++i)
        os << (i + 1) << "," << num(r.entries[i].lower) << "\n";
}

void write_goldilocks_csv(std::ostream& os, const GoldilocksReport& r) {
    os << "r,M_lower,M_upper,partial_lower,partial_upper\n";
    for (std::size_t i = 0; i < r.r_grid.size(); ++i)
        os << num(r.r_grid[i]) << "," << num(r.shells[i].M_lower) << ","
           << num(r.shells[i].M_upper) << "," << num(r.partial_lower[i]) << ","
           << num(r.partial_upper[i]) << "\n";
}

void write_evl_csv(std::ostream& os, const EvlReport& r) {
    os << "r,M_lower,M_upper,cond3_partial\n";
    for (std::size_t i = 0; i < r.shells.size(); ++i)
        os << num(r.shells[i].r) << "," << num(r.shells[i].M_lower) << ","
           << num(r.shells[i].M_upper) << ","
           << num(i < r.cond3_partials.size() ? r.cond3_partials[i] : 0.0) << "\n";
}

void write_orbit_csv(std::ostream& os, const OrbitRecord& r) {
    os << "nu";
    for (std::size_t i = 0; i < r.seed.size(); ++i) os << ",re" << (i + 1) << ",im" << (i + 1);
    os << ",depth,displacement\n";
    for (std::size_t k = 0; k < r.iterates.size(); ++k) {
        os << (k + 1);
        put_point(os, r.iterates[k]);
        os << "," << num(r.depth[k]) << "," << num(r.displacement[k]) << "\n";
    }
}

void write_orbits_csv(std::ostream& os, const std::vector<OrbitRecord>& orbits) {
    os << "orbit,nu";
    if (!orbits.empty())
        for (std::size_t i = 0; i < orbits.front().seed.size(); ++i)
            os << ",re" << (i + 1) << ",im" << (i + 1);
    os << ",depth,displacement\n";
    for (std::size_t s = 0; s < orbits.size(); ++s) {
        const auto& r = orbits[s];
        for (std::size_t k = 0; k < r.iterates.size(); ++k) {
            os << s << "," << (k + 1);
            put_point(os, r.iterates[k]);
            os << "," << num(r.depth[k]) << "," << num(r.displacement[k]) << "\n";
        }
    }
}

}  // namespace kobalab

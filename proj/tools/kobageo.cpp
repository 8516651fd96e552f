// kobageo: batch front-end for the Kobayashi-geometry lab.
// One subcommand per capability; JSON reports, CSV data, reproducible seeds.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kobalab/criteria.hpp"
#include "kobalab/dynamics.hpp"
#include "kobalab/expr.hpp"
#include "kobalab/reports.hpp"
#include "kobalab/visibility.hpp"

using json = nlohmann::json;
using namespace kobalab;

namespace {

struct CommonOpts {
    std::string domain = "disk";
    std::uint64_t seed = 1;
    std::string out_json;
    std::string out_csv;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--domain", c.domain, "domain spec: JSON or shorthand (disk|bidisk|ball)");
    cmd->add_option("--seed", c.seed, "RNG seed; fixed seed => identical outputs");
    cmd->add_option("--out-json", c.out_json, "write the JSON report here (default: stdout)");
    cmd->add_option("--out-csv", c.out_csv, "write CSV data here");
}

Domain load_domain(const std::string& text) {
    if (!text.empty() && text.front() == '{') return domain_from_json_text(text);
    if (text == "disk") return domain_from_json_text(R"({"kind":"disk"})");
    if (text == "bidisk") return domain_from_json_text(R"({"kind":"polydisk","params":{"d":2}})");
    if (text == "ball") return domain_from_json_text(R"({"kind":"ball","params":{"d":2}})");
    throw ParamError("unknown domain shorthand '" + text + "'");
}

// comma-separated values: d reals, or 2d reals read as re,im pairs
Point parse_point(const std::string& text, int dim) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) v.push_back(std::stod(tok));
    Point p;
    if (static_cast<int>(v.size()) == dim) {
        for (double x : v) p.emplace_back(x, 0.0);
    } else if (static_cast<int>(v.size()) == 2 * dim) {
        for (std::size_t i = 0; i < v.size(); i += 2) p.emplace_back(v[i], v[i + 1]);
    } else {
        throw InputError("point '" + text + "' needs " + std::to_string(dim) + " or " +
                         std::to_string(2 * dim) + " comma-separated reals");
    }
    return p;
}

void emit(const CommonOpts& c, const std::string& command, const Domain& dom, json payload,
          const std::string& csv = "") {
    json report{{"schema_version", kSchemaVersion},
                {"command", command},
                {"seed", c.seed},
                {"domain", domain_spec_json(dom)}};
    report.update(payload);
    if (c.out_json.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream f(c.out_json);
        f << report.dump(2) << "\n";
    }
    if (!c.out_csv.empty() && !csv.empty()) {
        std::ofstream f(c.out_csv, std::ios::binary);
        f << csv;
    }
}

ApproachSchedule make_schedule(const std::string& name, int steps) {
    ApproachSchedule s;
    s.steps = steps;
    if (name == "normal")
        s.kind = ApproachSchedule::Kind::TowardBase;
    else if (name == "adversarial")
        s.kind = ApproachSchedule::Kind::AdversarialFlat;
    else
        throw InputError("unknown schedule '" + name + "' (normal|adversarial)");
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kobageo: numerical probes for Kobayashi distance geometry"};
    app.require_subcommand(1);

    // metric
    CommonOpts c_metric;
    std::string at_s = "0", dir_s = "1";
    auto* metric_cmd = app.add_subcommand("metric", "two-sided Kobayashi metric bounds");
    add_common(metric_cmd, c_metric);
    metric_cmd->add_option("--at", at_s, "evaluation point");
    metric_cmd->add_option("--dir", dir_s, "direction vector");

    // distance
    CommonOpts c_dist;
    std::string from_s = "0", to_s = "0.5";
    int dist_iters = 1500, dist_ctrl = 48;
    auto* dist_cmd = app.add_subcommand("distance", "two-sided Kobayashi distance estimate");
    add_common(dist_cmd, c_dist);
    dist_cmd->add_option("--from", from_s, "start point");
    dist_cmd->add_option("--to", to_s, "end point");
    dist_cmd->add_option("--iters", dist_iters, "optimizer proposals");
    dist_cmd->add_option("--control-points", dist_ctrl, "polyline control points");

    // geodesic
    CommonOpts c_geo;
    std::string gfrom_s = "0", gto_s = "0.8";
    double gkappa = 0.01;
    int geo_iters = 1500;
    auto* geo_cmd = app.add_subcommand("geodesic", "(1,kappa)-almost-geodesic construction");
    add_common(geo_cmd, c_geo);
    geo_cmd->add_option("--from", gfrom_s, "start point");
    geo_cmd->add_option("--to", gto_s, "end point");
    geo_cmd->add_option("--kappa", gkappa, "additive geodesic defect");
    geo_cmd->add_option("--iters", geo_iters, "optimizer proposals");

    // visibility
    CommonOpts c_vis;
    std::string vp_s = "1", vq_s = "-1", vsched = "normal";
    double vkappa = 0.05;
    int vtrials = 12;
    auto* vis_cmd = app.add_subcommand("visibility", "visibility probe between boundary points");
    add_common(vis_cmd, c_vis);
    vis_cmd->add_option("--p", vp_s, "boundary point p");
    vis_cmd->add_option("--q", vq_s, "boundary point q");
    vis_cmd->add_option("--kappa", vkappa, "almost-geodesic defect");
    vis_cmd->add_option("--trials", vtrials, "schedule length");
    vis_cmd->add_option("--schedule", vsched, "normal|adversarial");

    // gromov
    CommonOpts c_gro;
    std::string gp_s = "1", gq_s = "-1", go_s, gsched = "normal";
    int gsteps = 20;
    auto* gro_cmd = app.add_subcommand("gromov", "Gromov product limsup probe");
    add_common(gro_cmd, c_gro);
    gro_cmd->add_option("--p", gp_s, "boundary point p");
    gro_cmd->add_option("--q", gq_s, "boundary point q");
    gro_cmd->add_option("--o", go_s, "base point o (default: domain base point)");
    gro_cmd->add_option("--steps", gsteps, "schedule length");
    gro_cmd->add_option("--schedule", gsched, "normal|adversarial");

    // goldilocks
    CommonOpts c_gold;
    double eps0 = 0.0;
    int gold_points = 96;
    auto* gold_cmd = app.add_subcommand("goldilocks", "Goldilocks condition checks");
    add_common(gold_cmd, c_gold);
    gold_cmd->add_option("--eps0", eps0, "upper integration limit (default 0.1 R)");
    gold_cmd->add_option("--shell-points", gold_points, "shell sample anchors");

    // evl
    CommonOpts c_evl;
    std::string ucenter_s = "1";
    double uradius = 0.5, fA = 0.0, falpha = 0.5, fbeta = 1.0, evl_r0 = 0.05;
    std::string fform = "log";
    auto* evl_cmd = app.add_subcommand("evl", "Extended Visibility Lemma hypothesis checks");
    add_common(evl_cmd, c_evl);
    evl_cmd->add_option("--center", ucenter_s, "localizer center (boundary point)");
    evl_cmd->add_option("--radius", uradius, "localizer radius");
    evl_cmd->add_option("--fA", fA, "growth function offset A");
    evl_cmd->add_option("--falpha", falpha, "growth function slope alpha");
    evl_cmd->add_option("--fbeta", fbeta, "power-form exponent beta");
    evl_cmd->add_option("--fform", fform, "log|power");
    evl_cmd->add_option("--r0", evl_r0, "upper limit of the condition-3 integral");

    // examples
    CommonOpts c_ex;
    int which = 51;
    double ex_eps = -1.0, ex_delta = -1.0, ex_tol = 0.1;
    int ex_n = -1;
    auto* ex_cmd = app.add_subcommand("examples", "quantitative checks of the example domains");
    add_common(ex_cmd, c_ex);
    ex_cmd->add_option("--which", which, "51 or 52");
    ex_cmd->add_option("--eps", ex_eps, "example eps (defaults per example)");
    ex_cmd->add_option("--n", ex_n, "example51 exponent n");
    ex_cmd->add_option("--delta", ex_delta, "example52 collar width");
    ex_cmd->add_option("--tol", ex_tol, "relative slack for the bounds");

    // iterate
    CommonOpts c_it;
    std::string map_s = "moebius:2,1,1,2";
    int nseeds = 3, iterN = 200;
    auto* it_cmd = app.add_subcommand("iterate", "Wolff-Denjoy orbit classification");
    add_common(it_cmd, c_it);
    it_cmd->add_option("--map", map_s, "holomorphic self-map spec");
    it_cmd->add_option("--seeds", nseeds, "number of seed points (>= 3)");
    it_cmd->add_option("--N", iterN, "iteration count");

    // constancy
    CommonOpts c_con;
    std::string cmap_s = "moebius:2,1,1,2";
    int cgrid = 20, conN = 200;
    auto* con_cmd = app.add_subcommand("constancy", "limit-map constancy probe");
    add_common(con_cmd, c_con);
    con_cmd->add_option("--map", cmap_s, "holomorphic self-map spec");
    con_cmd->add_option("--grid", cgrid, "grid size (>= 10)");
    con_cmd->add_option("--N", conN, "iteration count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (metric_cmd->parsed()) {
            Domain dom = load_domain(c_metric.domain);
            Point z = parse_point(at_s, dom.dim);
            Direction v = parse_point(dir_s, dom.dim);
            MetricEstimate e = metric_bounds(dom, z, v);
            emit(c_metric, "metric", dom, json{{"estimate", to_json(e)}});
        } else if (dist_cmd->parsed()) {
            Domain dom = load_domain(c_dist.domain);
            DistanceBudget b;
            b.iterations = dist_iters;
            b.control_points = dist_ctrl;
            b.seed = c_dist.seed;
            DistanceEstimate e =
                estimate_distance(dom, parse_point(from_s, dom.dim), parse_point(to_s, dom.dim), b);
            std::ostringstream csv;
            write_path_csv(csv, e.witness);
            emit(c_dist, "distance", dom, json{{"estimate", to_json(e)}}, csv.str());
        } else if (geo_cmd->parsed()) {
            Domain dom = load_domain(c_geo.domain);
            DistanceBudget b;
            b.iterations = geo_iters;
            b.seed = c_geo.seed;
            ReparamResult r = almost_geodesic_between(dom, parse_point(gfrom_s, dom.dim),
                                                      parse_point(gto_s, dom.dim), gkappa, b);
            std::ostringstream csv;
            write_path_csv(csv, r.path);
            emit(c_geo, "geodesic", dom, json{{"certificate", to_json(r.cert)}}, csv.str());
        } else if (vis_cmd->parsed()) {
            Domain dom = load_domain(c_vis.domain);
            DistanceBudget b;
            b.seed = c_vis.seed;
            VisibilityReport r =
                visibility_probe(dom, parse_point(vp_s, dom.dim), parse_point(vq_s, dom.dim),
                                 vkappa, vtrials, make_schedule(vsched, vtrials), b);
            std::ostringstream csv;
            write_depth_csv(csv, r);
            emit(c_vis, "visibility", dom, json{{"report", to_json(r)}}, csv.str());
        } else if (gro_cmd->parsed()) {
            Domain dom = load_domain(c_gro.domain);
            DistanceBudget b;
            b.seed = c_gro.seed;
            Point o = go_s.empty() ? dom.base_point : parse_point(go_s, dom.dim);
            GromovProbeReport r =
                gromov_limsup_probe(dom, o, parse_point(gp_s, dom.dim), parse_point(gq_s, dom.dim),
                                    make_schedule(gsched, gsteps), b);
            std::ostringstream csv;
            write_gromov_csv(csv, r);
            emit(c_gro, "gromov", dom, json{{"report", to_json(r)}}, csv.str());
        } else if (gold_cmd->parsed()) {
            Domain dom = load_domain(c_gold.domain);
            GoldilocksBudget b;
            b.shell.seed = c_gold.seed;
            b.shell.points = gold_points;
            double e0 = eps0 > 0.0 ? eps0 : 0.1 * dom.enclosing_radius;
            GoldilocksReport r = goldilocks_check(dom, e0, {}, b);
            std::ostringstream csv;
            write_goldilocks_csv(csv, r);
            emit(c_gold, "goldilocks", dom, json{{"report", to_json(r)}}, csv.str());
        } else if (evl_cmd->parsed()) {
            Domain dom = load_domain(c_evl.domain);
            EvlBudget b;
            b.shell.seed = c_evl.seed;
            Ball U{parse_point(ucenter_s, dom.dim), uradius};
            GrowthFn f;
            f.form = fform == "power" ? GrowthFn::Form::Power : GrowthFn::Form::Log;
            f.A = fA;
            f.alpha = falpha;
            f.beta = fbeta;
            EvlReport r = evl_check(dom, U, f, evl_r0, b);
            std::ostringstream csv;
            write_evl_csv(csv, r);
            emit(c_evl, "evl", dom, json{{"report", to_json(r)}}, csv.str());
        } else if (ex_cmd->parsed()) {
            Domain dom;
            if (which == 51) {
                Example51Params p;
                if (ex_eps > 0) p.eps = ex_eps;
                if (ex_n > 0) p.n = ex_n;
                dom = make_example51(p);
            } else {
                Example52Params p;
                if (ex_eps > 0) p.eps = ex_eps;
                if (ex_delta > 0) p.delta = ex_delta;
                dom = make_example52(p);
            }
            ExampleClaimsBudget b;
            b.tol = ex_tol;
            b.goldilocks.shell.seed = c_ex.seed;
            ExampleClaimsReport r = example_claims_check(which, dom, b);
            std::ostringstream csv;
            write_goldilocks_csv(csv, r.goldilocks);
            emit(c_ex, "examples", dom, json{{"report", to_json(r)}}, csv.str());
            if (!r.all_passed) return 3;
        } else if (it_cmd->parsed()) {
            Domain dom = load_domain(c_it.domain);
            HoloMap F = parse_map(map_s, dom.dim);
            if (nseeds < 3) throw InputError("iterate: need at least 3 seeds");
            std::vector<Point> seeds;
            seeds.push_back(dom.base_point);
            for (int k = 1; k < nseeds; ++k)
                seeds.push_back(random_interior_point(dom, c_it.seed, static_cast<std::uint64_t>(k)));
            WDVerdict v = classify_wolff_denjoy(dom, F, seeds, iterN);
            std::ostringstream csv;
            write_orbits_csv(csv, v.orbits);
            emit(c_it, "iterate", dom, json{{"verdict", to_json(v)}}, csv.str());
        } else if (con_cmd->parsed()) {
            Domain dom = load_domain(c_con.domain);
            HoloMap F = parse_map(cmap_s, dom.dim);
            ConstancyReport r = limit_constancy_probe(dom, F, cgrid, conN, {}, c_con.seed);
            emit(c_con, "constancy", dom, json{{"report", to_json(r)}});
        }
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ExprError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: bad JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Criterion 9 invokes the kobageo binary named by KOBAGEO_BIN.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kobalab/criteria.hpp"
#include "kobalab/dynamics.hpp"
#include "kobalab/model.hpp"
#include "kobalab/rng.hpp"
#include "kobalab/visibility.hpp"

using namespace kobalab;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::cout << "criterion " << idx << " [" << name << "]: " << (ok ? "PASS" : "FAIL") << " ("
              << detail << ")\n";
    if (!ok) ++failures;
}

double now_s() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

Point rand_in_disk(std::mt19937_64& eng, double rmax) {
    std::uniform_real_distribution<double> u(-rmax, rmax);
    for (;;) {
        cplx z(u(eng), u(eng));
        if (std::abs(z) < rmax) return {z};
    }
}

Point rand_in_ball2(std::mt19937_64& eng, double rmax) {
    std::uniform_real_distribution<double> u(-rmax, rmax);
    for (;;) {
        Point z{cplx(u(eng), u(eng)), cplx(u(eng), u(eng))};
        if (norm(z) < rmax) return z;
    }
}

Point rand_in_bidisk(std::mt19937_64& eng, double rmax) {
    std::uniform_real_distribution<double> u(-rmax, rmax);
    for (;;) {
        Point z{cplx(u(eng), u(eng)), cplx(u(eng), u(eng))};
        if (std::abs(z[0]) < rmax && std::abs(z[1]) < rmax) return z;
    }
}

// --- criterion 1: variational distances against the closed forms ------------

void criterion1() {
    double t0 = now_s();
    Domain disk = make_unit_disk();
    Domain bidisk = make_unit_bidisk();
    Domain ball = make_ball({cplx(0, 0), cplx(0, 0)}, 1.0);

    DistanceBudget budget;
    budget.force_variational = true;
    budget.control_points = 32;
    budget.iterations = 4000;

    auto eng = make_engine(2024, 1);
    int done = 0, ok = 0;
    double worst_rel = 0.0;
    for (int k = 0; done < 100; ++k) {
        int which = k % 3;
        Domain* dom = which == 0 ? &disk : which == 1 ? &bidisk : &ball;
        Point z, w;
        if (which == 0) {
            z = rand_in_disk(eng, 0.95);
            w = rand_in_disk(eng, 0.95);
        } else if (which == 1) {
            z = rand_in_bidisk(eng, 0.95);
            w = rand_in_bidisk(eng, 0.95);
        } else {
            z = rand_in_ball2(eng, 0.95);
            w = rand_in_ball2(eng, 0.95);
        }
        double exact = which == 0   ? disk_distance(z[0], w[0])
                       : which == 1 ? polydisk_distance({1.0, 1.0}, z, w)
                                    : ball_distance(ball.enclosing_center, 1.0, z, w);
        if (exact > 3.0 || exact < 1e-3) continue;
        ++done;
        budget.seed = 1000 + static_cast<std::uint64_t>(k);
        DistanceEstimate de = estimate_distance(*dom, z, w, budget);
        double rel = std::fabs(de.upper - exact) / exact;
        worst_rel = std::max(worst_rel, rel);
        bool pair_ok = rel <= 0.02 && de.lower <= exact * (1 + 1e-9) &&
                       de.upper >= exact * (1 - 1e-9);
        if (pair_ok) ++ok;
    }
    double dt = now_s() - t0;
    std::ostringstream det;
    det << ok << "/100 pairs within 2%, worst rel err " << worst_rel << ", " << dt << " s";
    report(1, "model-domain distance oracle", ok == 100 && dt <= 60.0, det.str());
}

// --- criteria 2+3: Thm 2.8 construction on the disk -------------------------

void criteria23() {
    Domain disk = make_unit_disk();
    auto eng = make_engine(2024, 2);
    DistanceBudget budget;
    budget.force_variational = true;
    budget.control_points = 32;
    budget.iterations = 4000;

    int done = 0, ok2 = 0, ok3 = 0;
    double worst_margin = 1e300, worst_sup = 0.0, worst_speed_lo = 1e300, worst_speed_hi = 0.0;
    double worst27 = 1e300, worst_lip = 0.0;
    while (done < 50) {
        Point z = rand_in_disk(eng, 0.93);
        Point w = rand_in_disk(eng, 0.93);
        double exact = disk_distance(z[0], w[0]);
        if (exact < 0.05 || exact > 3.0) continue;
        ++done;
        budget.seed = 5000 + static_cast<std::uint64_t>(done);
        ReparamResult rr;
        try {
            rr = almost_geodesic_between(disk, z, w, 0.01, budget);
        } catch (const std::exception& e) {
            worst_margin = -1.0;
            continue;
        }
        worst_margin = std::min(worst_margin, rr.cert.worst_pair_margin);
        worst_speed_hi = std::max(worst_speed_hi, rr.cert.speed_max);
        worst_speed_lo = std::min(worst_speed_lo, rr.cert.speed_min);
        worst27 = std::min(worst27, rr.cert.subsegment_margin);
        worst_lip = std::max(worst_lip, rr.cert.lipschitz_const);

        double L = rr.path.grid.back();
        double sup = 0.0;
        for (std::size_t j = 0; j < rr.path.size(); ++j) {
            // curve comparison at matched arc-length fractions
            double s = rr.path.grid[j] * (exact / L);
            cplx truept = disk_geodesic_point(z[0], w[0], s);
            sup = std::max(sup, std::abs(rr.path.points[j][0] - truept));
        }
        worst_sup = std::max(worst_sup, sup);
        bool c2 = rr.cert.worst_pair_margin >= -1e-3 && rr.cert.speed_max <= 1.01 &&
                  rr.cert.speed_min >= 0.99 && sup <= 1e-2 && std::fabs(L - exact) <= 0.011;
        if (c2) ++ok2;
        bool c3 = rr.cert.subsegment_margin >= -1e-3 &&
                  rr.cert.lipschitz_const <= 1.0 * disk.enclosing_radius + 1e-6;
        if (c3) ++ok3;
    }
    {
        std::ostringstream det;
        det << ok2 << "/50 certificates, worst margin " << worst_margin << ", speed ["
            << worst_speed_lo << ", " << worst_speed_hi << "], sup-norm " << worst_sup;
        report(2, "Thm 2.8 construction", ok2 == 50, det.str());
    }
    {
        std::ostringstream det;
        det << ok3 << "/50, worst Lemma-2.7 margin " << worst27 << ", max Lipschitz "
            << worst_lip;
        report(3, "Lemma 2.7 + Prop 2.6 bounds", ok3 == 50, det.str());
    }
}

// --- criterion 4: polydisk visibility failure, disk visibility --------------

void criterion4() {
    Domain bidisk = make_unit_bidisk();
    VisibilityReport vf = visibility_probe(bidisk, {cplx(1, 0), cplx(1, 0)},
                                           {cplx(-1, 0), cplx(1, 0)}, 0.05, 12);
    bool flat_ok = vf.verdict == VisibilityVerdict::FailureEvidence;
    double depth_err = 0.0;
    for (const auto& t : vf.trials) {
        double r = std::abs(t.from[1]);  // second coordinate of the flat family
        depth_err = std::max(depth_err, std::fabs(t.max_interior_depth - (1.0 - r)));
    }
    flat_ok = flat_ok && depth_err == 0.0;

    Domain disk = make_unit_disk();
    VisibilityReport vd = visibility_probe(disk, {cplx(1, 0)}, {cplx(-1, 0)}, 0.05, 12);
    bool disk_ok = vd.verdict == VisibilityVerdict::VisibleEvidence;
    double min_depth = 1e300;
    for (const auto& t : vd.trials)
        if (t.constructed) min_depth = std::min(min_depth, t.max_interior_depth);
    disk_ok = disk_ok && min_depth >= 0.9;

    std::ostringstream det;
    det << "bidisk verdict " << verdict_name(vf.verdict) << ", flat depth err " << depth_err
        << "; disk verdict " << verdict_name(vd.verdict) << ", min depth " << min_depth;
    report(4, "polydisk visibility failure / disk visibility", flat_ok && disk_ok, det.str());
}

// --- criterion 5: Gromov product dichotomy ----------------------------------

void criterion5() {
    Domain disk = make_unit_disk();
    ApproachSchedule normal;
    normal.steps = 20;
    GromovProbeReport rd =
        gromov_limsup_probe(disk, {cplx(0, 0)}, {cplx(1, 0)}, {cplx(-1, 0)}, normal);
    bool disk_ok = rd.trend == Trend::Bounded;
    double vmax = 0.0;
    for (const auto& e : rd.entries) vmax = std::max(vmax, e.product.upper);
    disk_ok = disk_ok && vmax <= 1e-6;

    Domain bidisk = make_unit_bidisk();
    ApproachSchedule adv;
    adv.kind = ApproachSchedule::Kind::AdversarialFlat;
    adv.steps = 20;
    GromovProbeReport rb = gromov_limsup_probe(bidisk, {cplx(0, 0), cplx(0, 0)},
                                               {cplx(1, 0), cplx(1, 0)},
                                               {cplx(-1, 0), cplx(1, 0)}, adv);
    bool bid_ok = rb.trend == Trend::Diverging;
    double match_err = 0.0;
    for (const auto& e : rb.entries) {
        double r = e.x[0].real();  // r_n of the adversarial schedule
        match_err = std::max(match_err, std::fabs(e.product.lower - artanh(r)));
    }
    bid_ok = bid_ok && match_err <= 1e-9;

    std::ostringstream det;
    det << "disk trend " << trend_name(rd.trend) << " max " << vmax << "; bidisk trend "
        << trend_name(rb.trend) << " artanh match err " << match_err;
    report(5, "Gromov product dichotomy", disk_ok && bid_ok, det.str());
}

// --- criteria 6+7: section-5 quantitative claims ----------------------------

void criterion6() {
    double t0 = now_s();
    Domain ex51 = make_example51({});
    ExampleClaimsBudget b;
    b.tol = 0.1;
    b.integral_tol = 0.15;
    b.m_grid = {std::exp(-4.0), std::exp(-9.0), std::exp(-16.0)};
    b.integral_check = ExampleClaimsBudget::IntegralCheck::On;
    ExampleClaimsReport rep = example_claims_check(51, ex51, b);
    double dt = now_s() - t0;
    std::ostringstream det;
    for (const auto& it : rep.items)
        if (!it.passed) det << it.name << " value " << it.value << " vs " << it.bound << "; ";
    det << dt << " s";
    report(6, "example 5.1 claims", rep.all_passed && dt <= 300.0, det.str());
}

void criterion7() {
    Domain ex52 = make_example52({});
    double r = std::exp(-4.0);
    Point pr{cplx(0, 0), cplx(0, r)};
    Direction v{cplx(1, 0), cplx(0, 0)};
    double lr = line_radius(ex52, pr, v);
    MetricEstimate mb = metric_bounds(ex52, pr, v);
    bool ok = lr >= 0.4996 * (1 - 0.02) && mb.upper <= 2.0013 * (1 + 0.02);

    GoldilocksBudget gb;
    GoldilocksReport gold = goldilocks_check(ex52, 0.1, {}, gb);
    ok = ok && gold.verdict_cond1 == IntegralVerdict::Divergent;

    std::ostringstream det;
    det << "line radius " << lr << " (>= " << 0.4996 * 0.98 << "), kappa upper " << mb.upper
        << " (<= " << 2.0013 * 1.02 << "), cond1 " << verdict_name(gold.verdict_cond1);
    report(7, "example 5.2 claims", ok, det.str());
}

// --- criterion 8: Wolff-Denjoy dichotomy ------------------------------------

void criterion8() {
    Domain disk = make_unit_disk();
    std::vector<Point> seeds{{cplx(0, 0)}, {cplx(0, 0.3)}, {cplx(-0.5, 0)}};

    WDVerdict hyp = classify_wolff_denjoy(disk, moebius_map(2, 1, 1, 2), seeds, 200);
    bool ok = hyp.classification == WDClass::BoundaryConvergent &&
              std::abs(hyp.limit_point[0] - cplx(1, 0)) <= 1e-6;

    WDVerdict ell = classify_wolff_denjoy(disk, rotation_map(M_PI / 2.0), seeds, 200);
    ok = ok && ell.classification == WDClass::CompactOrbits;

    Domain ex52 = make_example52({});
    double c = axis_boundary_root(ex52, 1e-3, ex52.enclosing_radius);
    Point p0{cplx(0, 0), cplx(0, c)};
    std::vector<Point> s52{ex52.base_point,
                           {cplx(0.02, 0.0), cplx(0.0, 0.1)},
                           {cplx(0.0, -0.02), cplx(0.01, 0.2)}};
    WDVerdict aff = classify_wolff_denjoy(ex52, affine_contraction(p0, 0.5), s52, 80);
    ok = ok && aff.classification == WDClass::BoundaryConvergent &&
         dist(aff.limit_point, p0) <= 1e-5;

    ConstancyReport con = limit_constancy_probe(disk, moebius_map(2, 1, 1, 2), 20, 200);
    ok = ok && con.applicable && con.limit_spread <= 1e-5;

    std::ostringstream det;
    det << "hyperbolic " << wd_name(hyp.classification) << " |xi-1|="
        << std::abs(hyp.limit_point[0] - cplx(1, 0)) << ", elliptic "
        << wd_name(ell.classification) << ", affine-52 " << wd_name(aff.classification)
        << ", constancy spread " << con.limit_spread;
    report(8, "Wolff-Denjoy dichotomy", ok, det.str());
}

// --- criterion 9: CLI determinism --------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void criterion9() {
    const char* bin = std::getenv("KOBAGEO_BIN");
    if (!bin) {
        report(9, "CLI determinism", false, "KOBAGEO_BIN not set");
        return;
    }
    std::string base = "/tmp/kobageo_det";
    bool ok = true;
    std::ostringstream det;
    std::vector<std::string> cmds = {
        std::string(bin) + " visibility --domain bidisk --p 1,1 --q -1,1 --trials 8 --seed 42",
        std::string(bin) + " distance --domain "
                           "'{\"kind\":\"example52\",\"params\":{}}' --from 0,0,0,0.1 --to "
                           "0,0,0,0.25 --iters 400 --seed 42",
    };
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        std::string f1 = base + std::to_string(i) + "_a.csv";
        std::string f2 = base + std::to_string(i) + "_b.csv";
        std::string j1 = base + std::to_string(i) + "_a.json";
        std::string j2 = base + std::to_string(i) + "_b.json";
        std::string c1 = cmds[i] + " --out-csv " + f1 + " --out-json " + j1;
        std::string c2 = cmds[i] + " --out-csv " + f2 + " --out-json " + j2;
        int r1 = std::system(c1.c_str());
        int r2 = std::system(c2.c_str());
        if (r1 != 0 || r2 != 0) {
            ok = false;
            det << "command " << i << " exited " << r1 << "/" << r2 << "; ";
            continue;
        }
        std::string a = slurp(f1), b = slurp(f2);
        if (a.empty() || a != b) {
            ok = false;
            det << "command " << i << " CSV mismatch; ";
        }
        if (slurp(j1) != slurp(j2)) {
            ok = false;
            det << "command " << i << " JSON mismatch; ";
        }
    }
    if (ok) det << "2 commands, byte-identical CSV and JSON";
    report(9, "CLI determinism", ok, det.str());
}

}  // namespace

int main() {
    std::cout.setf(std::ios::unitbuf);
    criterion1();
    criteria23();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "FAILURES: " + std::to_string(failures))
              << "\n";
    return failures == 0 ? 0 : 1;
}

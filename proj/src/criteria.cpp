#include "kobalab/criteria.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "kobalab/numerics.hpp"
#include "kobalab/rng.hpp"

namespace kobalab {

std::string verdict_name(IntegralVerdict v) {
    switch (v) {
        case IntegralVerdict::Divergent: return "divergent";
        case IntegralVerdict::Convergent: return "convergent";
        case IntegralVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string verdict_name(ConditionVerdict v) {
    switch (v) {
        case ConditionVerdict::Holds: return "holds";
        case ConditionVerdict::Violated: return "violated";
        case ConditionVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

double GrowthFn::value(double x) const {
    return form == Form::Log ? A + alpha * std::log(x) : A + alpha * std::pow(x, beta);
}

double GrowthFn::dvalue(double x) const {
    return form == Form::Log ? alpha / x : alpha * beta * std::pow(x, beta - 1.0);
}

std::string GrowthFn::name() const {
    return form == Form::Log ? "A+alpha*log(x)" : "A+alpha*x^beta";
}

std::vector<double> default_r_grid(double eps0, double r_min, int per_decade) {
    std::vector<double> grid;
    double lg0 = std::log10(eps0), lg1 = std::log10(r_min);
    int steps = std::max(2, static_cast<int>(std::ceil((lg0 - lg1) * per_decade)));
    for (int i = 0; i <= steps; ++i)
        grid.push_back(std::pow(10.0, lg0 + (lg1 - lg0) * static_cast<double>(i) / steps));
    return grid;  // decreasing
}

namespace {

// least squares y ~ C + alpha x
LogFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    LogFit f;
    f.samples = static_cast<int>(xs.size());
    if (xs.size() < 2) return f;
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double den = n * sxx - sx * sx;
    f.alpha = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    f.C = (sy - f.alpha * sx) / n;
    for (std::size_t i = 0; i < xs.size(); ++i)
        f.max_residual = std::max(f.max_residual, std::fabs(ys[i] - (f.C + f.alpha * xs[i])));
    return f;
}

// boundary-proximal sample at a prescribed depth, walking outward from the
// base point along a seeded direction
std::optional<Point> depth_sample(const Domain& dom, double target, std::uint64_t seed,
                                  std::uint64_t stream) {
    auto eng = make_engine(seed, stream);
    Direction u = random_direction(eng, dom.dim);
    BoundaryOpts coarse;
    coarse.directions = 24;
    coarse.refine = false;
    double T;
    try {
        T = ray_exit(dom, dom.base_point, u);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    double t = T - target;
    if (t <= 0.0) return std::nullopt;
    for (int it = 0; it < 6; ++it) {
        Point z = dom.base_point + t * u;
        if (!(dom.rho(z) < 0.0)) {
            t = 0.5 * (t + T);
            continue;
        }
        double d = boundary_distance(dom, z, coarse);
        if (std::fabs(d - target) <= 0.25 * target) return z;
        t += (d - target);
        if (t <= 0.0 || t >= T) t = std::clamp(t, 1e-6 * T, T * (1.0 - 1e-9));
    }
    return std::nullopt;
}

IntegralVerdict classify_partials(const std::vector<double>& r_grid,
                                  const std::vector<double>& partials, double increment,
                                  int decades_needed) {
    // partial[k] = integral from r_k up to eps0, r_grid decreasing
    if (r_grid.size() < 4) return IntegralVerdict::Inconclusive;
    std::vector<double> decade_gain;
    double mark = r_grid.front() / 10.0;
    double prev_partial = 0.0;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (r_grid[i] <= mark) {
            decade_gain.push_back(partials[i] - prev_partial);
            prev_partial = partials[i];
            mark /= 10.0;
        }
    }
    if (static_cast<int>(decade_gain.size()) < decades_needed)
        return IntegralVerdict::Inconclusive;
    bool all_big = true, tail_small = true;
    int take = std::min<int>(decades_needed, static_cast<int>(decade_gain.size()));
    for (int k = 0; k < take; ++k) {
        double g = decade_gain[decade_gain.size() - 1 - static_cast<std::size_t>(k)];
        if (g < increment) all_big = false;
        if (g > 0.1 * increment) tail_small = false;
    }
    if (all_big) return IntegralVerdict::Divergent;
    if (tail_small) return IntegralVerdict::Convergent;
    return IntegralVerdict::Inconclusive;
}

}  // namespace

GoldilocksReport goldilocks_check(const Domain& dom, double eps0, std::vector<double> r_grid,
                                  const GoldilocksBudget& budget) {
    if (!(eps0 > 0.0) || eps0 >= dom.enclosing_radius)
        throw InputError("goldilocks_check: eps0 must lie in (0, enclosing_radius)");
    GoldilocksReport rep;
    rep.eps0 = eps0;
    if (r_grid.empty()) r_grid = default_r_grid(eps0);
    std::sort(r_grid.begin(), r_grid.end(), std::greater<double>());
    rep.r_grid = r_grid;

    MShellBudget sb = budget.shell;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        sb.seed = budget.shell.seed + i;
        rep.shells.push_back(estimate_M_shell(dom, r_grid[i], std::nullopt, sb));
    }

    // partial integrals of M(r)/r dr = M d(log r), trapezoid on the log grid
    rep.partial_lower.assign(r_grid.size(), 0.0);
    rep.partial_upper.assign(r_grid.size(), 0.0);
    for (std::size_t i = 1; i < r_grid.size(); ++i) {
        double dlog = std::log(r_grid[i - 1]) - std::log(r_grid[i]);
        rep.partial_lower[i] =
            rep.partial_lower[i - 1] +
            0.5 * (rep.shells[i - 1].M_lower + rep.shells[i].M_lower) * dlog;
        rep.partial_upper[i] =
            rep.partial_upper[i - 1] +
            0.5 * (rep.shells[i - 1].M_upper + rep.shells[i].M_upper) * dlog;
    }

    rep.verdict_cond1 = classify_partials(r_grid, rep.partial_lower, budget.divergence_increment,
                                          budget.divergence_decades);

    // condition 2: k(z0, z) against C + alpha log(1/delta)
    std::vector<double> xs, ys;
    double d0 = boundary_distance(dom, dom.base_point);
    for (int j = 0; j < budget.fit_samples; ++j) {
        double target = d0 * 0.5 * std::pow(10.0, -2.5 * (j + 1.0) / budget.fit_samples);
        auto z = depth_sample(dom, target, budget.shell.seed, 0xF17 + static_cast<std::uint64_t>(j));
        if (!z) continue;
        double delta = boundary_distance(dom, *z);
        DistanceEstimate de = estimate_distance(dom, dom.base_point, *z, budget.fit_distance);
        xs.push_back(std::log(1.0 / delta));
        ys.push_back(de.upper);
    }
    rep.fit = fit_line(xs, ys);
    if (rep.fit.samples >= 4) {
        double scale = std::max(1.0, *std::max_element(ys.begin(), ys.end()));
        if (rep.fit.alpha >= 0.0 && rep.fit.max_residual <= 0.25 * scale)
            rep.verdict_cond2 = ConditionVerdict::Holds;
        else if (rep.fit.max_residual > 0.75 * scale)
            rep.verdict_cond2 = ConditionVerdict::Violated;
    }
    return rep;
}

EvlReport evl_check(const Domain& dom, const Ball& localizer, const GrowthFn& f, double r0,
                    const EvlBudget& budget) {
    if (!(r0 > 0.0)) throw InputError("evl_check: r0 must be positive");
    // localizer must meet the domain
    bool meets = false;
    for (int k = 0; k < 4096 && !meets; ++k) {
        Point z = localizer.center;
        auto eng = make_engine(0xEE, static_cast<std::uint64_t>(k));
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        Direction u = random_direction(eng, dom.dim);
        z = z + (localizer.radius * u01(eng)) * u;
        if (dom.rho(z) < 0.0) meets = true;
    }
    if (!meets) throw InputError("evl_check: localizer does not meet the domain");

    EvlReport rep;
    rep.localizer = localizer;
    rep.f = f;

    // condition 1 on boundary-proximal samples inside U
    double margin_lo = -1e300, margin_up = -1e300;
    int got = 0;
    for (int j = 0; j < budget.cond1_samples * 6 && got < budget.cond1_samples; ++j) {
        auto eng = make_engine(0xC011D1, static_cast<std::uint64_t>(j));
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        Direction u = random_direction(eng, dom.dim);
        Point probe = localizer.center + (localizer.radius * u01(eng)) * u;
        if (!(dom.rho(probe) < 0.0)) continue;
        double delta = boundary_distance(dom, probe);
        if (delta > 0.5 * localizer.radius) continue;
        DistanceEstimate de = estimate_distance(dom, dom.base_point, probe, budget.distance);
        double fv = f.value(1.0 / delta);
        margin_lo = std::max(margin_lo, de.lower - fv);
        margin_up = std::max(margin_up, de.upper - fv);
        ++got;
    }
    if (got > 0) {
        rep.cond1_margin = margin_lo;
        rep.cond1_holds_margin = margin_up;
        if (margin_up <= 0.0)
            rep.cond1 = ConditionVerdict::Holds;
        else if (margin_lo > 0.0)
            rep.cond1 = ConditionVerdict::Violated;
    }

    // conditions 2 and 3 from localized shells
    auto grid = default_r_grid(r0, budget.r_min, budget.per_decade);
    MShellBudget sb = budget.shell;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sb.seed = budget.shell.seed + i;
        try {
            rep.shells.push_back(estimate_M_shell(dom, grid[i], localizer, sb));
            lx.push_back(std::log(grid[i]));
            ly.push_back(std::log(std::max(rep.shells.back().M_upper, 1e-300)));
        } catch (const SamplingError&) {
            break;  // shells this thin hold no localized samples; stop here
        }
    }
    if (rep.shells.size() >= 4) {
        const auto& sh = rep.shells;
        double first = sh.front().M_upper, last = sh.back().M_upper;
        bool downward = last <= 0.5 * first;
        rep.cond2 = downward ? ConditionVerdict::Holds : ConditionVerdict::Inconclusive;
        rep.shell_power_fit = fit_line(lx, ly);  // alpha ~ epsilon in M <= (1/c) r^eps

        rep.cond3_partials.assign(sh.size(), 0.0);
        for (std::size_t i = 1; i < sh.size(); ++i) {
            // integrand M(r)/r^2 f'(1/r); substitute x = log r
            auto g = [&](const MShellEstimate& s) {
                return s.M_upper * f.dvalue(1.0 / s.r) / s.r;
            };
            double dlog = std::log(sh[i - 1].r) - std::log(sh[i].r);
            rep.cond3_partials[i] = rep.cond3_partials[i - 1] + 0.5 * (g(sh[i - 1]) + g(sh[i])) * dlog;
        }
        double tail = rep.cond3_partials.back() -
                      rep.cond3_partials[rep.cond3_partials.size() / 2];
        double total = rep.cond3_partials.back();
        rep.cond3 = (total > 0.0 && tail <= 0.25 * total) ? ConditionVerdict::Holds
                                                          : ConditionVerdict::Inconclusive;
    }
    return rep;
}

ExampleClaimsReport example_claims_check(int which, const Domain& dom,
                                         const ExampleClaimsBudget& budget) {
    if (which != 51 && which != 52) throw InputError("example_claims_check: which must be 51 or 52");
    if ((which == 51 && dom.kind != DomainKind::Example51) ||
        (which == 52 && dom.kind != DomainKind::Example52))
        throw InputError("example_claims_check: domain kind does not match the requested example");

    ExampleClaimsReport rep;
    rep.which = which;
    const double tol = budget.tol;

    auto push = [&](const std::string& name, double value, double bound, bool ge) {
        ClaimItem it;
        it.name = name;
        it.value = value;
        it.bound = bound;
        it.passed = ge ? (value >= bound) : (value <= bound);
        rep.items.push_back(it);
    };

    // degenerate boundary point p0 = (0, ic) on the imaginary z2-axis
    double eps_lo = 1e-3;
    double c = axis_boundary_root(dom, eps_lo, dom.enclosing_radius);
    rep.p0 = {cplx(0, 0), cplx(0, c)};
    push("p0_residual", std::fabs(dom.rho(rep.p0)), 1e-8, false);

    // convexity probe
    auto witness = convexity_probe(dom, budget.convexity_samples, 11);
    push("convexity_probe", witness ? 0.0 : 1.0, 1.0, true);

    // shell bounds at the requested r values
    double eps = which == 51 ? 0.4 : 0.35;
    {
        nlohmann::json spec = domain_spec_json(dom);
        if (spec.contains("params")) eps = spec["params"].value("eps", eps);
    }
    std::vector<double> grid = budget.m_grid;
    if (grid.empty()) {
        // keep only the r at which the flat-region identity can deliver the
        // (1 - tol) fraction of the bound: the probe disk, shrunk by a phase
        // margin, must fit inside B(0, eps) where the cutoff term vanishes
        for (double r : {std::exp(-4.0), std::exp(-9.0), std::exp(-16.0)}) {
            double rho = which == 51 ? 1.0 / std::sqrt(std::log(1.0 / r))
                                     : std::sqrt(1.0 / std::log(1.0 / r) - r * r);
            double shrunk = (1.0 - 0.6 * budget.tol) * rho;
            if (shrunk * shrunk + r * r <= eps * eps || r == std::exp(-16.0))
                grid.push_back(r);
        }
    }
    for (double r : grid) {
        MShellBudget sb = budget.goldilocks.shell;
        MShellEstimate sh = estimate_M_shell(dom, r, std::nullopt, sb);
        double bound = which == 51 ? 1.0 / std::sqrt(std::log(1.0 / r))
                                   : std::sqrt(1.0 / std::log(1.0 / r) - r * r);
        push("M_lower(r=" + std::to_string(r) + ")", sh.M_lower, (1.0 - tol) * bound, true);
    }

    if (which == 52) {
        // Graham bound at p_r = (0, i e^-4), v = (1,0)
        double r = std::exp(-4.0);
        Point pr = {cplx(0, 0), cplx(0, r)};
        Direction v = {cplx(1, 0), cplx(0, 0)};
        double rho_paper = std::sqrt(1.0 / std::log(1.0 / r) - r * r);
        double lr = line_radius(dom, pr, v);
        push("line_radius(p_r,(1,0))", lr, (1.0 - tol) * rho_paper, true);
        MetricEstimate mb = metric_bounds(dom, pr, v);
        push("kappa_upper(p_r,(1,0))", mb.upper, (1.0 + tol) / rho_paper, false);
    }

    // Goldilocks condition 1 must fail by divergence
    double eps0 = 0.1;
    rep.goldilocks = goldilocks_check(dom, eps0, {}, budget.goldilocks);
    push("goldilocks_cond1_divergent",
         rep.goldilocks.verdict_cond1 == IntegralVerdict::Divergent ? 1.0 : 0.0, 1.0, true);

    // the closed-form rate comparison only tracks when the flat region is
    // wide (near the top of the eps window); the divergence verdict above is
    // the parameter-independent claim
    bool integral_on = budget.integral_check == ExampleClaimsBudget::IntegralCheck::On ||
                       (budget.integral_check == ExampleClaimsBudget::IntegralCheck::Auto &&
                        which == 51 && eps >= 0.38);
    if (which == 51 && integral_on) {
        double r_min = rep.goldilocks.r_grid.back();
        double closed_form =
            2.0 * (std::sqrt(std::log(1.0 / r_min)) - std::sqrt(std::log(1.0 / eps0)));
        double got = rep.goldilocks.partial_lower.back();
        push("partial_integral_vs_closed_form_lo", got, (1.0 - budget.integral_tol) * closed_form,
             true);
        push("partial_integral_vs_closed_form_hi", got, (1.0 + budget.integral_tol) * closed_form,
             false);
    }

    rep.all_passed = std::all_of(rep.items.begin(), rep.items.end(),
                                 [](const ClaimItem& i) { return i.passed; });
    return rep;
}

}  // namespace kobalab

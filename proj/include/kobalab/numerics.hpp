#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace kobalab {

// Golden-section minimization on [a,b] for a unimodal-ish objective.
inline double golden_min(const std::function<double(double)>& f, double a, double b,
                         int iters = 80) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

// Bisection for a root of f on [lo, hi] with f(lo) < 0 <= f(hi).
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          int iters = 100) {
    for (int i = 0; i < iters; ++i) {
        double m = 0.5 * (lo + hi);
        if (f(m) < 0.0)
            lo = m;
        else
            hi = m;
    }
    return 0.5 * (lo + hi);
}

// Plain Nelder-Mead on R^n. Used to polish directional minima; callers seed it
// near a good point, so no restarts.
inline std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> x0, double step, int max_iter) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (std::size_t i = 0; i < n; ++i) xs[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) fs[i] = f(xs[i]);

    auto order = [&]() {
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j)
                if (fs[j] < fs[i]) {
                    std::swap(fs[i], fs[j]);
                    std::swap(xs[i], xs[j]);
                }
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += xs[i][j] / static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + t * (centroid[j] - xs[n][j]);
            return p;
        };

        std::vector<double> xr = blend(1.0);
        double fr = f(xr);
        if (fr < fs[0]) {
            std::vector<double> xe = blend(2.0);
            double fe = f(xe);
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            std::vector<double> xc = blend(-0.5);
            double fc = f(xc);
            if (fc < fs[n]) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        xs[i][j] = xs[0][j] + 0.5 * (xs[i][j] - xs[0][j]);
                    fs[i] = f(xs[i]);
                }
            }
        }
    }
    order();
    return xs[0];
}

// Trapezoid integral of samples (x monotone). Orientation-normalizing.
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return std::fabs(s);
}

}  // namespace kobalab

#include "kobalab/model.hpp"

#include <algorithm>
#include <cmath>

namespace kobalab {

cplx disk_geodesic_point(cplx z, cplx w, double s) {
    // Move z to 0; the geodesic is then radial toward w' = phi_z(w).
    cplx wp = disk_moebius(z, w);
    double aw = std::abs(wp);
    if (aw < 1e-300) return z;
    cplx dir = wp / aw;
    cplx p = std::tanh(s) * dir;
    // invert phi_z: phi_{-z}? The inverse of z->(z-a)/(1-conj(a)z) is w->(w+a)/(1+conj(a)w).
    return (p + z) / (1.0 + std::conj(z) * p);
}

double polydisk_metric(const std::vector<double>& radii, const Point& z, const Direction& v) {
    double m = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double r = radii[i];
        double a = std::abs(z[i]) / r;
        if (a >= 1.0) throw ModelError("polydisk_metric: point not inside");
        m = std::max(m, (std::abs(v[i]) / r) / (1.0 - a * a));
    }
    return m;
}

double polydisk_distance(const std::vector<double>& radii, const Point& z, const Point& w) {
    double m = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        m = std::max(m, disk_distance(z[i] / radii[i], w[i] / radii[i]));
    return m;
}

Point polydisk_geodesic_point(const std::vector<double>& radii, const Point& z, const Point& w,
                              double s) {
    double L = polydisk_distance(radii, z, w);
    Point p(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        cplx zi = z[i] / radii[i], wi = w[i] / radii[i];
        double Li = disk_distance(zi, wi);
        double si = (L > 0.0) ? s * (Li / L) : 0.0;
        p[i] = radii[i] * disk_geodesic_point(zi, wi, si);
    }
    return p;
}

Point ball_moebius(const Point& a, const Point& z) {
    // Standard automorphism phi_a of the unit ball with phi_a(a) = 0:
    // phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>).
    double na2 = norm_sq(a);
    if (na2 < 1e-300) {
        Point r(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) r[i] = -z[i];
        return r;
    }
    double sa = std::sqrt(1.0 - na2);
    cplx za = hdot(z, a);
    cplx denom = 1.0 - za;
    Point r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        cplx Pz = (za / na2) * a[i];
        cplx Qz = z[i] - Pz;
        r[i] = (a[i] - Pz - sa * Qz) / denom;
    }
    return r;
}

double ball_metric(const Point& center, double R, const Point& z, const Direction& v) {
    // kappa^2 = |v|^2/(1-|z|^2) + |<z,v>|^2/(1-|z|^2)^2 in unit-ball coordinates.
    Point zu(z.size());
    Direction vu(v.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        zu[i] = (z[i] - center[i]) / R;
        vu[i] = v[i] / R;
    }
    double nz2 = norm_sq(zu);
    if (nz2 >= 1.0) throw ModelError("ball_metric: point not inside");
    double d = 1.0 - nz2;
    double t1 = norm_sq(vu) / d;
    double t2 = std::norm(hdot(zu, vu)) / (d * d);
    return std::sqrt(t1 + t2);
}

double ball_distance(const Point& center, double R, const Point& z, const Point& w) {
    Point zu(z.size()), wu(w.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        zu[i] = (z[i] - center[i]) / R;
        wu[i] = (w[i] - center[i]) / R;
    }
    double nz2 = norm_sq(zu), nw2 = norm_sq(wu);
    if (nz2 >= 1.0 || nw2 >= 1.0) throw ModelError("ball_distance: point not inside");
    cplx ip = hdot(zu, wu);
    double q = (1.0 - nz2) * (1.0 - nw2) / std::norm(1.0 - ip);
    q = std::clamp(q, 0.0, 1.0);
    return artanh(std::sqrt(1.0 - q));
}

Point ball_geodesic_point(const Point& center, double R, const Point& z, const Point& w,
                          double s) {
    Point zu(z.size()), wu(w.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        zu[i] = (z[i] - center[i]) / R;
        wu[i] = (w[i] - center[i]) / R;
    }
    Point wp = ball_moebius(zu, wu);
    double aw = norm(wp);
    Point p(z.size());
    if (aw < 1e-300) {
        p = zu;
    } else {
        Point dir = (1.0 / aw) * wp;
        Point q = std::tanh(s) * dir;
        // phi_a is an involution on the ball: phi_a(phi_a(z)) = z.
        p = ball_moebius(zu, q);
    }
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = center[i] + R * p[i];
    return p;
}

}  // namespace kobalab

#pragma once

#include <stdexcept>

#include "kobalab/complexvec.hpp"

namespace kobalab {

// Closed-form Kobayashi geometry of the model domains: unit disk, polydisks
// with per-factor radii, and Euclidean balls. Everything here is exact up to
// rounding and doubles as the test oracle for the generic estimators.

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- unit disk -------------------------------------------------------------

inline double disk_metric(cplx z, cplx v) {
    double a = std::abs(z);
    if (a >= 1.0) throw ModelError("disk_metric: point not inside the unit disk");
    return std::abs(v) / (1.0 - a * a);
}

inline double disk_distance(cplx z, cplx w) {
    cplx m = (z - w) / (1.0 - std::conj(w) * z);
    return artanh(std::abs(m));
}

// Moebius automorphism of D sending a -> 0.
inline cplx disk_moebius(cplx a, cplx z) { return (z - a) / (1.0 - std::conj(a) * z); }

// Unit-speed geodesic from z to w evaluated at arc length s in [0, k(z,w)].
cplx disk_geodesic_point(cplx z, cplx w, double s);

// --- polydisk ---------------------------------------------------------------

double polydisk_metric(const std::vector<double>& radii, const Point& z, const Direction& v);
double polydisk_distance(const std::vector<double>& radii, const Point& z, const Point& w);

// Geodesic sampled at arc length s in [0, k(z,w)]: each factor follows its
// disk geodesic, the slower factors linearly reparametrized to the max factor.
Point polydisk_geodesic_point(const std::vector<double>& radii, const Point& z, const Point& w,
                              double s);

// --- ball B(center, R) ------------------------------------------------------

double ball_metric(const Point& center, double R, const Point& z, const Direction& v);
double ball_distance(const Point& center, double R, const Point& z, const Point& w);
Point ball_geodesic_point(const Point& center, double R, const Point& z, const Point& w,
                          double s);

// Moebius automorphism of the unit ball sending a -> 0 (unit-ball coordinates).
Point ball_moebius(const Point& a, const Point& z);

}  // namespace kobalab

#pragma once

#include <complex>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace kobalab {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline double norm_sq(const CVec& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return s;
}

inline double norm(const CVec& v) { return std::sqrt(norm_sq(v)); }

// Hermitian inner product <a,b> = sum a_i * conj(b_i)
inline cplx hdot(const CVec& a, const CVec& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}

inline CVec operator+(const CVec& a, const CVec& b) {
    CVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline CVec operator-(const CVec& a, const CVec& b) {
    CVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline CVec operator*(cplx s, const CVec& a) {
    CVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline CVec operator*(double s, const CVec& a) { return cplx(s, 0.0) * a; }

inline CVec& operator+=(CVec& a, const CVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline double dist(const CVec& a, const CVec& b) { return norm(a - b); }

inline CVec normalized(const CVec& v) {
    double n = norm(v);
    return (1.0 / n) * v;
}

inline CVec lerp(const CVec& a, const CVec& b, double t) {
    CVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (1.0 - t) * a[i] + t * b[i];
    return r;
}

inline bool all_finite(const CVec& v) {
    for (const auto& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

// Point and Direction share the representation; the distinction is by role.
using Point = CVec;
using Direction = CVec;

inline double artanh(double x) { return 0.5 * std::log((1.0 + x) / (1.0 - x)); }

}  // namespace kobalab

#pragma once

#include <cstdint>
#include <random>

#include "kobalab/complexvec.hpp"

namespace kobalab {

// splitmix64, used to derive independent per-sample seeds from (seed, index)
// so sampling results do not depend on evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ (0xd1b54a32d192ed03ULL * (stream + 1))));
}

// Uniform direction on the unit sphere of R^{2d}, returned as d complex entries.
inline Direction random_direction(std::mt19937_64& eng, int d) {
    std::normal_distribution<double> g(0.0, 1.0);
    Direction v(static_cast<std::size_t>(d));
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (int i = 0; i < d; ++i) {
            v[static_cast<std::size_t>(i)] = cplx(g(eng), g(eng));
            n2 += std::norm(v[static_cast<std::size_t>(i)]);
        }
    } while (n2 < 1e-24);
    return (1.0 / std::sqrt(n2)) * v;
}

// Deterministic low-discrepancy directions on S^{2d-1}: golden-angle lattice
// pushed through the inverse Gaussian-shell map. Coordinate directions
// (+/- e_j, +/- i e_j) are prepended by callers that need them covered.
std::vector<Direction> fibonacci_directions(int d, int count);

}  // namespace kobalab

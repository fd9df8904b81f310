#ifndef PARASOL_TEST_UTIL_HPP
#define PARASOL_TEST_UTIL_HPP

#include <complex>
#include <random>
#include <vector>

#include "parasol/field.hpp"
#include "parasol/transform.hpp"

namespace parasol::testutil {

/// Random Hermitian field supported on the Galerkin ball (test-local RNG,
/// independent of the library's counter-based generator).
inline SpectralField random_field(GridPtr grid, int components, unsigned seed,
                                  bool mean_free = true) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField f(grid, components);
    for (int j = 0; j < components; ++j) {
        auto c = f.component(j);
        for (std::size_t i = 0; i < grid->size(); ++i)
            if (grid->retained(i)) c[i] = cplx(u(rng), u(rng));
    }
    f.hermitianize();
    f.truncate();
    if (mean_free) f.remove_mean();
    return f;
}

/// O(modes^2) lattice convolution; the independent oracle for
/// dealiased_product with two factors.
inline SpectralField convolve2_oracle(const SpectralField& a, const SpectralField& b) {
    const Grid& g = a.grid();
    SpectralField out(a.grid_ptr(), 1);
    const int half = g.points_per_axis() / 2;
    for (std::size_t t = 0; t < g.size(); ++t) {
        if (!g.retained(t)) continue;
        const auto mt = g.lattice_vector(t);
        cplx sum(0.0, 0.0);
        for (std::size_t s = 0; s < g.size(); ++s) {
            if (!g.retained(s)) continue;
            const auto ms = g.lattice_vector(s);
            std::array<int, 3> mr{0, 0, 0};
            bool ok = true;
            for (int i = 0; i < g.dim(); ++i) {
                mr[i] = mt[i] - ms[i];
                if (std::abs(mr[i]) > half) ok = false;
            }
            if (!ok) continue;
            const std::size_t r = g.flat_index(mr);
            if (!g.retained(r)) continue;
            sum += a.at(0, s) * b.at(0, r);
        }
        out.at(0, t) = sum;
    }
    return out;
}

/// Triple lattice convolution for cubic products (1d-sized grids only).
inline SpectralField convolve3_oracle(const SpectralField& a, const SpectralField& b,
                                      const SpectralField& c) {
    const Grid& g = a.grid();
    SpectralField out(a.grid_ptr(), 1);
    const int half = g.points_per_axis() / 2;
    for (std::size_t t = 0; t < g.size(); ++t) {
        if (!g.retained(t)) continue;
        const auto mt = g.lattice_vector(t);
        cplx sum(0.0, 0.0);
        for (std::size_t s1 = 0; s1 < g.size(); ++s1) {
            if (!g.retained(s1)) continue;
            const auto m1 = g.lattice_vector(s1);
            for (std::size_t s2 = 0; s2 < g.size(); ++s2) {
                if (!g.retained(s2)) continue;
                const auto m2 = g.lattice_vector(s2);
                std::array<int, 3> mr{0, 0, 0};
                bool ok = true;
                for (int i = 0; i < g.dim(); ++i) {
                    mr[i] = mt[i] - m1[i] - m2[i];
                    if (std::abs(mr[i]) > half) ok = false;
                }
                if (!ok) continue;
                const std::size_t r = g.flat_index(mr);
                if (!g.retained(r)) continue;
                sum += a.at(0, s1) * b.at(0, s2) * c.at(0, r);
            }
        }
        out.at(0, t) = sum;
    }
    return out;
}

inline double rel_linf_diff(const SpectralField& a, const SpectralField& b) {
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < a.raw().size(); ++i) {
        diff = std::max(diff, std::abs(a.raw()[i] - b.raw()[i]));
        scale = std::max(scale, std::abs(b.raw()[i]));
    }
    return scale > 0.0 ? diff / scale : diff;
}

} // namespace parasol::testutil

#endif

#include "parasol/initial_data.hpp"

#include <cmath>

#include "parasol/errors.hpp"
#include "parasol/philox.hpp"
#include "parasol/transform.hpp"

namespace parasol {

namespace {

// canonical representative of a Hermitian pair: lexicographically
// positive lattice vector
bool canonical(const std::array<int, 3>& m) {
    if (m[0] != 0) return m[0] > 0;
    if (m[1] != 0) return m[1] > 0;
    return m[2] > 0;
}

double envelope(const InitialDataLaw& law, const Grid& g, double xi) {
    return law.amplitude * std::pow(xi, -(law.s + 0.5 * g.dim() + law.margin));
}

} // namespace

SpectralField generate_initial_data(const InitialDataLaw& law, GridPtr grid,
                                    std::uint64_t seed) {
    if (!grid) throw invalid_input("initial data: null grid");
    if (law.components < 1) throw invalid_input("initial data: need at least one component");
    if (!(law.margin > 0.0)) throw invalid_input("initial data: margin must be positive");
    if (law.divergence_free && law.components != grid->dim())
        throw invalid_input("initial data: divergence-free law needs components == dim");
    const Grid& g = *grid;
    const double xi_min = 2.0 * M_PI / g.period();
    if (g.truncation_radius() / xi_min < 8.0)
        throw invalid_input("initial data: envelope needs at least 8 shells below the cutoff");

    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed),
                                           static_cast<std::uint32_t>(seed >> 32)};
    SpectralField f(grid, law.components);
    constexpr std::uint32_t offset = 1u << 16; // signed index -> counter word
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.retained(i)) continue;
        const double xi = g.xi_norm(i);
        if (xi == 0.0) continue;
        const auto m = g.lattice_vector(i);
        if (!canonical(m)) continue;
        const std::size_t ci = g.conjugate_index(i);
        if (ci == i) continue; // self-paired Nyquist slot: left empty
        const double env = envelope(law, g, xi);
        for (int c = 0; c < law.components; ++c) {
            const std::array<std::uint32_t, 4> ctr{
                static_cast<std::uint32_t>(m[0]) + offset,
                static_cast<std::uint32_t>(m[1]) + offset,
                static_cast<std::uint32_t>(m[2]) + offset, static_cast<std::uint32_t>(c)};
            const double phase = 2.0 * M_PI * philox::uniform(ctr, key);
            f.at(c, i) = cplx(env * std::cos(phase), env * std::sin(phase));
            f.at(c, ci) = std::conj(f.at(c, i));
        }
    }
    if (law.divergence_free) leray_project(f);
    return f;
}

double initial_data_norm_target(const InitialDataLaw& law, const Grid& g, double s_eval) {
    const double cell = g.cell_volume();
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.retained(i)) continue;
        const double xi = g.xi_norm(i);
        if (xi == 0.0) continue;
        if (g.conjugate_index(i) == i) continue;
        const double env = envelope(law, g, xi);
        sum += std::pow(xi, 2.0 * s_eval) * env * env * cell;
    }
    sum *= law.components;
    if (law.divergence_free) sum *= (g.dim() - 1.0) / g.dim();
    return std::sqrt(sum);
}

SpectralField taylor_green_field(GridPtr grid, double amplitude) {
    if (!grid || grid->dim() != 3) throw invalid_input("taylor-green: needs a 3d grid");
    const Grid& g = *grid;
    const int P = g.points_per_axis();
    PhysicalField u;
    u.grid = grid;
    u.components = 3;
    u.values.assign(3u * g.size(), 0.0);
    const double h = g.period() / P;
    const double unit = 2.0 * M_PI / g.period();
    for (int ix = 0; ix < P; ++ix)
        for (int iy = 0; iy < P; ++iy)
            for (int iz = 0; iz < P; ++iz) {
                const std::size_t flat = (static_cast<std::size_t>(ix) * P + iy) * P + iz;
                const double x = unit * ix * h, y = unit * iy * h, z = unit * iz * h;
                u.values[flat] = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
                u.values[g.size() + flat] = -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
            }
    return forward_transform(u, grid);
}

} // namespace parasol

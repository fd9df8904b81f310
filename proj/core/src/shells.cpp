#include "parasol/shells.hpp"

#include <algorithm>
#include <cmath>

#include "parasol/errors.hpp"

namespace parasol {

double ShellSpectrum::total_energy() const {
    double e = 0.0;
    for (double v : shell_energy) e += v;
    return e;
}

ShellSpectrum shell_decompose(const SpectralField& f, ShellPolicy policy) {
    const Grid& g = f.grid();
    if (f.components() < 1 || g.size() == 0) throw invalid_input("empty field");
    const double cutoff = g.truncation_radius();
    const double xi_min = 2.0 * M_PI / g.period();

    ShellSpectrum s;
    s.edges.push_back(0.0);
    if (policy == ShellPolicy::Unit) {
        // annuli (e, e+1], upper-closed
        for (double e = 1.0; e < cutoff; e += 1.0) s.edges.push_back(e);
        s.edges.push_back(cutoff);
    } else {
        // dyadic [2^j, 2^{j+1}), first edge at or below the smallest |xi|
        double e = std::pow(2.0, std::floor(std::log2(xi_min)));
        while (e > xi_min * (1.0 + 1e-12)) e /= 2.0;
        for (; e < cutoff; e *= 2.0) s.edges.push_back(e);
        s.edges.push_back(cutoff);
    }

    const std::size_t S = s.edges.size() - 1;
    s.shell_max.assign(S, 0.0);
    s.argmax_xi.assign(S, 0.0);
    s.shell_energy.assign(S, 0.0);
    s.mode_count.assign(S, 0);

    const double cell = g.cell_volume();
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = g.xi_norm(i);
        if (xi <= 0.0 || !g.retained(i)) continue;
        std::size_t idx;
        if (policy == ShellPolicy::Unit) {
            // first edge >= xi, shells upper-closed
            auto it = std::lower_bound(s.edges.begin() + 1, s.edges.end(), xi * (1.0 - 1e-14));
            idx = static_cast<std::size_t>(it - s.edges.begin()) - 1;
        } else {
            // last edge <= xi, shells lower-closed; cutoff clips into the top shell
            auto it = std::upper_bound(s.edges.begin(), s.edges.end(), xi * (1.0 + 1e-14));
            idx = static_cast<std::size_t>(it - s.edges.begin()) - 1;
            if (idx >= S) idx = S - 1;
        }
        if (idx >= S) continue;
        for (int j = 0; j < f.components(); ++j) {
            const double a = std::abs(f.at(j, i));
            if (a > s.shell_max[idx]) {
                s.shell_max[idx] = a;
                s.argmax_xi[idx] = xi;
            }
            s.shell_energy[idx] += a * a * cell;
        }
        ++s.mode_count[idx];
    }
    return s;
}

} // namespace parasol

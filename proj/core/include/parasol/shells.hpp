#ifndef PARASOL_SHELLS_HPP
#define PARASOL_SHELLS_HPP

#include <vector>

#include "parasol/field.hpp"

namespace parasol {

enum class ShellPolicy {
    Unit,  ///< width-1 annuli (e, e+1], last edge clipped to the cutoff
    Dyadic ///< 2^j <= |xi| < 2^{j+1}
};

/// Radial decomposition of a spectrum over (0, truncation_radius].
///
/// Shell s is the annulus (edges[s], edges[s+1]].  shell_max is the
/// largest coefficient modulus over all components in the shell and
/// argmax_xi its |xi|; shell_energy is sum |coeff|^2 * cell_volume, so
/// the energies add up to the squared L2 norm (zero mode excluded).
struct ShellSpectrum {
    std::vector<double> edges;
    std::vector<double> shell_max;
    std::vector<double> argmax_xi;
    std::vector<double> shell_energy;
    std::vector<std::size_t> mode_count;

    std::size_t shells() const { return shell_max.size(); }
    double total_energy() const;
};

ShellSpectrum shell_decompose(const SpectralField& f, ShellPolicy policy = ShellPolicy::Unit);

} // namespace parasol

#endif

#ifndef PARASOL_INITIAL_DATA_HPP
#define PARASOL_INITIAL_DATA_HPP

#include <cstdint>

#include "parasol/field.hpp"

namespace parasol {

/// Spectral envelope law for reproducible rough initial data:
///   |u0(xi)| = amplitude * |xi|^{-(s + d/2 + margin)}
/// with Philox-generated phases keyed by the lattice vector (the same
/// seed yields the same continuum field at every resolution).  margin>0
/// places the field in H^s with room to spare; components>1 plus
/// divergence_free gives solenoidal vector data.
struct InitialDataLaw {
    double s = 0.0;
    double amplitude = 1.0;
    double margin = 0.25;
    int components = 1;
    bool divergence_free = false;
};

SpectralField generate_initial_data(const InitialDataLaw& law, GridPtr grid,
                                    std::uint64_t seed);

/// Closed-form lattice sum of the law's envelope at Sobolev index
/// s_eval (phases drop out; divergence-free projection contributes the
/// mean factor (d-1)/d).
double initial_data_norm_target(const InitialDataLaw& law, const Grid& grid, double s_eval);

/// Taylor-Green-type divergence-free velocity field
/// (sin x cos y cos z, -cos x sin y cos z, 0) * amplitude.
SpectralField taylor_green_field(GridPtr grid, double amplitude);

} // namespace parasol

#endif

#ifndef PARASOL_TRACE_HPP
#define PARASOL_TRACE_HPP

#include <limits>
#include <vector>

#include "parasol/field.hpp"
#include "parasol/system.hpp"

namespace parasol {

struct StepDiagnostics {
    std::vector<double> accepted_dt;
    long rejected_steps = 0;
    long nonlinearity_evals = 0;

    long accepted_steps() const { return static_cast<long>(accepted_dt.size()); }
    double min_dt() const;
    double max_dt() const;
};

/// Time-stamped sequence of spectral snapshots from one run.
/// times[0] == 0 holds the initial data; times are strictly increasing
/// and log-spaced near zero (where the Kato weights live).
struct Trace {
    SystemSpec spec;
    std::vector<double> times;
    std::vector<SpectralField> snapshots;
    StepDiagnostics diagnostics;

    std::size_t samples() const { return times.size(); }
    const SpectralField& initial() const { return snapshots.front(); }
    const SpectralField& final() const { return snapshots.back(); }
    double horizon() const { return times.empty() ? 0.0 : times.back(); }

    void check_invariants() const;
};

} // namespace parasol

#endif

#ifndef PARASOL_INTEGRATE_HPP
#define PARASOL_INTEGRATE_HPP

#include <optional>
#include <vector>

#include "parasol/trace.hpp"

namespace parasol {

/// Sample times for a trace: {0} followed by a log-spaced ladder over
/// `decades` below the horizon (the Kato weights live near t=0), or the
/// explicit list when provided.
struct SnapshotPolicy {
    int points_per_decade = 16;
    int decades = 6;
    std::vector<double> explicit_times;

    std::vector<double> times(double horizon) const;
};

enum class Scheme { ETDRK4, IFRK4 };

struct BlowupGuard {
    bool enabled = true;
    double ceiling_factor = 1e6;
    /// Guard norm index = s_crit + offset (offset plays the role of 2/p).
    double index_offset = 0.5;
};

struct IntegratorOptions {
    Scheme scheme = Scheme::ETDRK4;
    double dt = 1e-3;
    /// 0 disables step control; otherwise the relative step-doubling
    /// error tolerance per step.
    double adapt = 0.0;
    double horizon = 1.0;
    SnapshotPolicy snapshots;
    BlowupGuard guard;
};

/// March the truncated system with an exponential integrator.  The
/// linear semigroup is applied exactly, so an empty multiplier table
/// reproduces the heat flow to roundoff.  Throws blowup_error when the
/// guard norm exceeds ceiling_factor times its initial value and
/// stepsize_underflow when adaptivity collapses the step.
Trace integrate(const SystemSpec& spec, const SpectralField& U0, const IntegratorOptions& opts);

/// e^{t nu Lap} U0: exact heat flow of a spectrum.
SpectralField heat_flow_field(const SpectralField& U0, double t, double viscosity = 1.0);

/// Trace of the heat flow e^{t eps Lap} U0 sampled at the given times.
Trace heat_flow_trace(const SystemSpec& spec, const SpectralField& U0,
                      const std::vector<double>& times, double viscosity = 1.0);

struct PicardOptions {
    double p = 4.0;
    double T = 0.1;
    int max_iters = 40;
    double tol = 1e-10;
    SnapshotPolicy snapshots{64, 6, {}};
    /// Model the first quadrature cell as t'^{-k/p} (the endpoint
    /// singularity of the Duhamel integrand) instead of linearly.
    bool singular_first_interval = true;
};

struct PicardResult {
    Trace trace;
    int iterations = 0;
    bool converged = false;
    /// Successive Kato-norm distances between iterates.
    std::vector<double> distances;
    /// Last measured contraction ratio (distance[i]/distance[i-1]).
    double contraction_ratio = 0.0;
};

/// Fixed-point iteration on the Duhamel form
///   U <- e^{t Lap} U0 + int_0^t e^{(t-t') Lap} P(U(t')) dt'
/// with product-trapezoid quadrature on the log time grid (the
/// exponential kernel is integrated exactly against piecewise-linear
/// nonlinearity samples).  Throws non_contraction_error when the
/// distance grows three times in a row.
PicardResult picard_solve(const SystemSpec& spec, const SpectralField& U0,
                          const PicardOptions& opts);

/// Largest T (within [T_lo, T_hi], log-bisection) at which picard_solve
/// contracts with measured ratio <= target.  Resolves the case delta=0
/// where the existence time has no closed formula.
double find_contraction_horizon(const SystemSpec& spec, const SpectralField& U0,
                                PicardOptions opts, double T_lo, double T_hi,
                                double target_ratio = 0.5, int bisections = 12);

/// lambda^alpha U(lambda^2 t, lambda x) on the lambda-times finer
/// wavenumber lattice (mode xi -> lambda xi); lambda must be a small
/// positive integer so the torus maps to itself.
SpectralField rescale_field(const SpectralField& f, int lambda, double alpha);

/// Rescaled trace: times divided by lambda^2, every snapshot rescaled,
/// truncation radius multiplied by lambda.
Trace rescale_solution(const Trace& trace, int lambda);

/// Max over snapshot intervals of the relative L2 defect between the
/// stored snapshot and a fresh fine integration from the previous one;
/// small defect certifies the trace solves the truncated system.
double equation_residual(const Trace& trace, int substeps_per_interval = 32);

} // namespace parasol

#endif

#ifndef PARASOL_ANALYTICITY_HPP
#define PARASOL_ANALYTICITY_HPP

#include <limits>
#include <string>
#include <vector>

#include "parasol/integrate.hpp"
#include "parasol/shells.hpp"
#include "parasol/trace.hpp"

namespace parasol {

/// Parameters of the Gevrey comparison weight
///   e^{ -lambda^2/(4(1-eps)) * t/T + lambda * t/sqrt(T) * |xi| }.
struct GevreyParams {
    double lambda = 0.0;
    double eps = 0.1;
    double T = 1.0;
    double p = 4.0;

    /// Enforces eps in (0,1), lambda >= 0, T > 0, p > k and 2/p < alpha.
    void validate(const SystemSpec& spec) const;
};

struct EnsembleProvenance {
    std::string description;
    std::vector<std::uint64_t> seeds;
    std::vector<double> lambda_grid;
    int points_per_axis = 0;
};

/// Empirical surrogates for the paper's existential constants, always
/// calibrated from documented ensembles before any certification run.
struct CalibratedConstants {
    double C_lemma = 0.0; ///< comparison-function inequality constant
    double c_small = 0.0; ///< (4 C_lemma)^{-1/(k-1)}
    double C_heat = 0.0;  ///< subcritical heat-flow bound constant
    double eta = 0.0;     ///< (c_small / (2 C_heat))^{2/delta}
    double K_eps = 0.0;   ///< heat-flow domination constant of the corollary
    int k = 0;
    double eps = 0.0;
    double p = 0.0;
    double delta = 0.0;
    EnsembleProvenance provenance;
};

double derive_c_small(double C_lemma, int k);
double derive_eta(double c_small, double C_heat, double delta);

/// The comparison function U_a: each coefficient modulus is multiplied
/// by the scalar Gevrey weight at time t (a normed object, never a
/// solution; coefficients of the result are nonnegative reals).
SpectralField gevrey_weight_field(const SpectralField& U, const GevreyParams& params, double t);

/// sup over snapshots of (t-t0)^{1/p} ||U_a(t)||_{H^s}; the weight uses
/// the shifted time t-t0 as in the corollary construction.
double gevrey_kato_norm(const Trace& trace, const GevreyParams& params, double s,
                        double t_origin = 0.0);

/// sup over the trace's snapshot times of
/// (t-t0)^{1/p} ||e^{eps (t-t0) Lap} U0||_{H^s}: the heat-flow majorant
/// evaluated on the same time grid as the trace (calibration needs both
/// sides sampled identically).
double heat_kato_on_grid(const Trace& trace, const SpectralField& U0, double eps, double p,
                         double s, double t_origin = 0.0);

// ---------------------------------------------------------------------------
// pointwise multiplier inequality

struct InequalityReport {
    long samples = 0;
    long violations = 0;
    double worst_slack = std::numeric_limits<double>::infinity(); ///< min of rhs-lhs
    double worst_lambda = 0.0, worst_eps = 0.0, worst_T = 0.0, worst_xi = 0.0;
    bool holds() const { return violations == 0; }
};

/// Checks -lambda^2/(4(1-eps))/T + lambda |xi|/sqrt(T) - |xi|^2 <= -eps |xi|^2
/// at every sample, literally (no algebraic simplification).
InequalityReport multiplier_inequality_check(double lambda, double eps, double T,
                                             const std::vector<double>& xi_samples);

/// Random admissible tuples (lambda, eps, T, xi), each augmented with its
/// analytic equality point xi* = lambda/(2(1-eps) sqrt(T)).
InequalityReport multiplier_inequality_random_check(long tuples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Lemma calibration and the bootstrap

struct LemmaSample {
    std::size_t run_index = 0;
    double lambda = 0.0;
    double ua_kato = 0.0;
    double heat_kato = 0.0;
    double ratio = 0.0;
};

struct LemmaCalibration {
    double C_lemma = 0.0;
    double c_small = 0.0;
    std::vector<LemmaSample> samples;
};

/// Empirical C_{k,eps}: max over (trace, lambda) of
///   (||U_a|| - ||e^{eps t Lap} U0||)_+ / (e^{lambda^2 (k-1)/(4(1-eps))} ||U_a||^k),
/// Kato norms on each trace's own grid.  Throws when every sample is
/// zero (pure-linear ensemble cannot calibrate the constant).
LemmaCalibration calibrate_lemma_constant(const SystemSpec& spec, double eps, double p,
                                          const std::vector<Trace>& ensemble,
                                          const std::vector<double>& lambda_grid);

/// Empirical K_eps with ||e^{eps t Lap} v||_{K^p_infty} <= K ||v||_{H^{s_low}}
/// over a sample set (corollary constant; s_low = 1/2 for Navier-Stokes).
double calibrate_heat_domination_constant(const std::vector<const SpectralField*>& samples,
                                          double eps, double p, double s_low, double s_kato,
                                          double T_big = 1e8);

struct BootstrapRow {
    double T_prefix = 0.0;
    double ua_kato = 0.0;        ///< running ||U_a||_{K^p_{T'}}
    double bound_small = 0.0;    ///< c e^{-lambda^2/(4(1-eps))}
    double heat_kato = 0.0;      ///< running ||e^{eps t Lap} U0||_{K^p_{T'}}
    bool ok_small = true;        ///< induction inequality
    bool ok_four_thirds = true;  ///< consequence inequality
};

struct BootstrapReport {
    bool success = false;
    double first_violation_time = -1.0;
    std::string violated; ///< "induction", "four-thirds" or empty
    std::vector<BootstrapRow> rows;
    /// T^{1/p} || e^{lambda sqrt(T) |D|} U(T) ||_{H^{s_p}} and its bound c.
    double certified_gevrey_value = 0.0;
    double certified_gevrey_bound = 0.0;
    double certified_radius = 0.0; ///< lambda sqrt(T)
};

/// Verifies the induction inequality ||U_a|| <= c e^{-lambda^2/(4(1-eps))}
/// and the consequence ||U_a|| <= (4/3)||e^{eps t Lap} U0|| along every
/// prefix of the trace; success certifies the Gevrey bound at t = T.
/// t_origin shifts the construction (corollary use).
BootstrapReport verify_bootstrap(const Trace& trace, const GevreyParams& params,
                                 const CalibratedConstants& constants, double t_origin = 0.0);

// ---------------------------------------------------------------------------
// lower-bound formulas of the two theorem cases

/// Subcritical case: lambda_T = sqrt(2 delta (1-eps)) *
/// log^{1/2}( eta / (T ||U0||^{2/delta}) ); T must not exceed the
/// threshold time (the log must be >= 0).
double lambda_T_subcritical(double T, double U0_norm_subcritical, double delta, double eps,
                            const CalibratedConstants& constants);

/// Threshold time eta * ||U0||^{-2/delta}.
double T_eps_subcritical(double U0_norm_subcritical, double delta,
                         const CalibratedConstants& constants);

struct CriticalLambda {
    double lambda = 0.0;
    double heat_kato = 0.0;
    /// Heat norm in (c/2, c]: admissible but the bound degenerates to 0.
    bool vacuous = false;
};

/// Critical case: lambda_T = 2 sqrt(1-eps) log^{1/2}(c/(2||e^{eps tau Lap}U0||_{K^p_T})),
/// from the measured heat-flow Kato norm at index s.  Throws when the
/// norm exceeds c (admissibility of the threshold definition).
CriticalLambda lambda_T_critical(double T, const SpectralField& U0, double eps, double p,
                                 double s, const CalibratedConstants& constants);

/// Largest T with ||e^{eps tau Lap} U0||_{K^p_T} <= target (default
/// c_small), by log-bisection of the monotone map T -> heat norm.
double T_eps_critical(const SpectralField& U0, double eps, double p, double s,
                      const CalibratedConstants& constants, double T_hi = 1e4,
                      double target = -1.0);

// ---------------------------------------------------------------------------
// empirical radius of analyticity

struct RadiusFitOptions {
    double noise_floor_rel = 1e-13; ///< relative to the peak shell
    int min_shells = 6;
    double window_fraction = 0.95;  ///< admissible |xi| as fraction of cutoff
    bool gaussian_term = false;     ///< add -gamma xi^2 (linear-dominated runs)
};

struct RadiusEstimate {
    bool resolved = false;   ///< enough shells; never read a radius otherwise
    double delta_fit = 0.0;  ///< strip width (>= 0)
    double alpha_fit = 0.0;  ///< algebraic prefactor exponent
    double c_fit = 0.0;
    double gamma_fit = 0.0;  ///< Gaussian coefficient when enabled
    double residual = 0.0;   ///< RMS of the fit in log space
    std::size_t window_shells = 0;
    double window_lo_xi = 0.0, window_hi_xi = 0.0;
    bool floor_flag = false; ///< noise floor (not the cutoff) ended the window
};

/// Analyticity-strip fit: least squares of
///   log shell_max(xi) ~ c - alpha log xi - delta xi [- gamma xi^2]
/// over unit shells above the noise floor and below the truncation
/// scale.  Returns resolved=false instead of fabricating a radius when
/// fewer than min_shells survive.
RadiusEstimate estimate_radius(const SpectralField& f, const RadiusFitOptions& opts = {});
RadiusEstimate estimate_radius_from_shells(const ShellSpectrum& shells, double truncation_radius,
                                           const RadiusFitOptions& opts = {});

// ---------------------------------------------------------------------------
// long-time corollary experiment

struct CorollaryOptions {
    double eps = 0.1;
    double p = 6.0;
    double horizon = 4.0;
    IntegratorOptions integrator;     ///< dt and snapshot policy for the run
    std::vector<double> shifted_T;    ///< horizons of the shifted bootstrap
    RadiusFitOptions fit;
};

struct CorollaryShiftedCheck {
    double T = 0.0;
    bool bootstrap_ok = false;
    double ua_kato = 0.0;
    double heat_kato = 0.0;
};

struct CorollaryReport {
    bool threshold_reached = false;
    double t0 = -1.0;
    double u_t0_norm = 0.0;   ///< ||u(t0)||_{H^{1/2}}
    double threshold = 0.0;   ///< c_eps / (2 K_eps)
    double certified_lambda = 0.0; ///< 2 sqrt(1-eps) log^{1/2}(c/(2K||u(t0)||))
    std::vector<double> times;
    std::vector<double> h_half_series;
    std::vector<double> radius_measured;  ///< NaN where unresolved
    std::vector<double> radius_over_sqrt_t;
    std::vector<CorollaryShiftedCheck> shifted_checks;
    bool all_shifted_ok = false;
    bool radius_ratio_grew = false; ///< R/sqrt(t) larger at the end than at t0
};

/// Integrates 3d Navier-Stokes data over [0,horizon], waits for
/// ||u(t)||_{H^{1/2}} to fall below c/(2K), then runs the shifted
/// bootstrap from t0 for each requested T and measures the radius
/// series.  constants must carry c_small (k=2) and K_eps.
CorollaryReport corollary_experiment(const SystemSpec& ns_spec, const SpectralField& u0,
                                     const CorollaryOptions& opts,
                                     const CalibratedConstants& constants);

} // namespace parasol

#endif

#ifndef PARASOL_NORMS_HPP
#define PARASOL_NORMS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "parasol/field.hpp"
#include "parasol/trace.hpp"

namespace parasol {

/// A scalar norm sampled along a trace.
struct NormSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::string norm_id;
};

/// CSV with header "time,value,norm_id", full double precision.
void write_csv(const NormSeries& series, std::ostream& out);

/// Homogeneous Sobolev norm: lattice sum
/// (sum_{xi != 0} |xi|^{2s} |coeff|^2 cell_volume)^{1/2}.
/// The zero mode is always excluded; fields must be mean-free for the
/// value to be meaningful at s <= 0.
double sobolev_norm(const SpectralField& f, double s);

/// Gevrey-weighted Sobolev norm: sobolev_norm of e^{sigma|xi|} coeff at
/// index s, evaluated in log space per mode.  Throws overflow_error
/// (with the offending |xi|) past the representable range.
double gevrey_norm(const SpectralField& f, double sigma, double s);

struct KatoNorm {
    double value = 0.0;
    double argmax_time = 0.0;
    /// argmax landed on the first positive or the last sample; the
    /// supremum is then unresolved and the time grid should be refined.
    bool argmax_at_grid_endpoint = false;
};

/// sup over snapshots of (t - t_origin)^{1/p} ||U(t)||_{H^s}; s defaults
/// to s_crit + 2/p of the trace's system.  p may be infinity (weight 1).
KatoNorm kato_norm(const Trace& trace, double p, std::optional<double> s = std::nullopt,
                   double t_origin = 0.0);

/// Running sup over prefixes of the trace (same weight and index).
NormSeries kato_norm_series(const Trace& trace, double p,
                            std::optional<double> s = std::nullopt, double t_origin = 0.0);

/// sup_{t<=T} t^{1/p} ||e^{eps t Lap} U0||_{H^s} evaluated from the
/// initial spectrum alone: dense log-grid sampling (points_per_decade
/// over `decades` below T) plus golden-section refinement around the
/// discrete argmax.
double heat_flow_kato_norm(const SpectralField& U0, double eps, double p, double s, double T,
                           int points_per_decade = 64, int decades = 12);

/// Empirical constant of the subcritical heat-flow bound
///   ||e^{eps t Lap} U0||_{K^p_T} <= C T^{delta/2} ||U0||_{H^{s_crit+delta}}:
/// max over T_list of the measured ratio.  delta must lie in (0, alpha).
double heat_flow_subcritical_bound_constant(const SpectralField& U0, double s_crit, double alpha,
                                            double delta, double p, double eps,
                                            const std::vector<double>& T_list);

/// Chemin-Lerner-type dyadic norm
///   || 2^{j(1/2+2/q)} ||Delta_j V||_{L^q([0,T];L2)} ||_{l2},
/// with sharp dyadic shells 2^j <= |xi| < 2^{j+1} and trapezoid time
/// integration on the snapshot grid (exponents as in the d=3 scaling).
double dyadic_eq_norm(const Trace& trace, double q);

/// ||prod fields||_{H^{ks-(k-1)d/2}} / prod ||field_i||_{H^s} for the
/// Sobolev product law; s must lie in (d/2 - d/k, d/2).
double product_law_ratio(double s, const std::vector<const SpectralField*>& fields);

} // namespace parasol

#endif

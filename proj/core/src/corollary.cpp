#include <algorithm>
#include <cmath>
#include <limits>

#include "parasol/analyticity.hpp"
#include "parasol/errors.hpp"
#include "parasol/norms.hpp"

namespace parasol {

CorollaryReport corollary_experiment(const SystemSpec& ns_spec, const SpectralField& u0,
                                     const CorollaryOptions& opts,
                                     const CalibratedConstants& constants) {
    if (ns_spec.d != 3 || ns_spec.k != 2)
        throw invalid_input("corollary experiment: needs the 3d Navier-Stokes system");
    if (!(constants.c_small > 0.0) || !(constants.K_eps > 0.0))
        throw invalid_input("corollary experiment: constants need c_small and K_eps");
    if (u0.truncation_violation() > 0.0 || !u0.is_mean_free(1e-12))
        throw invalid_input("corollary experiment: data must be truncated and mean-free");
    if (divergence_linf(u0) > 1e-10 * std::max(1.0, u0.max_abs()))
        throw invalid_input("corollary experiment: data must be divergence-free");

    CorollaryReport rep;
    rep.threshold = constants.c_small / (2.0 * constants.K_eps);

    IntegratorOptions iopts = opts.integrator;
    iopts.horizon = opts.horizon;
    const Trace tr = integrate(ns_spec, u0, iopts);

    // H^{1/2} decay series and the first time below the threshold
    rep.times = tr.times;
    rep.h_half_series.reserve(tr.times.size());
    rep.radius_measured.assign(tr.times.size(), std::numeric_limits<double>::quiet_NaN());
    rep.radius_over_sqrt_t.assign(tr.times.size(), std::numeric_limits<double>::quiet_NaN());
    std::size_t t0_idx = tr.times.size();
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const double h12 = sobolev_norm(tr.snapshots[i], 0.5);
        rep.h_half_series.push_back(h12);
        if (t0_idx == tr.times.size() && tr.times[i] > 0.0 && h12 <= rep.threshold) t0_idx = i;
        const RadiusEstimate re = estimate_radius(tr.snapshots[i], opts.fit);
        if (re.resolved && tr.times[i] > 0.0) {
            rep.radius_measured[i] = re.delta_fit;
            rep.radius_over_sqrt_t[i] = re.delta_fit / std::sqrt(tr.times[i]);
        }
    }
    if (t0_idx == tr.times.size()) {
        rep.threshold_reached = false; // data too large for this horizon
        return rep;
    }
    rep.threshold_reached = true;
    rep.t0 = tr.times[t0_idx];
    rep.u_t0_norm = rep.h_half_series[t0_idx];
    rep.certified_lambda =
        2.0 * std::sqrt(1.0 - opts.eps) *
        std::sqrt(std::log(constants.c_small /
                           (2.0 * constants.K_eps * std::max(rep.u_t0_norm, 1e-300))));

    // shifted bootstrap from t0 for each requested horizon
    rep.all_shifted_ok = true;
    for (double T : opts.shifted_T) {
        if (!(T > 0.0) || rep.t0 + T > tr.horizon() * (1.0 + 1e-12)) continue;
        GevreyParams params{rep.certified_lambda, opts.eps, T, opts.p};
        const BootstrapReport boot = verify_bootstrap(tr, params, constants, rep.t0);
        CorollaryShiftedCheck chk;
        chk.T = T;
        chk.bootstrap_ok = boot.success;
        if (!boot.rows.empty()) {
            chk.ua_kato = boot.rows.back().ua_kato;
            chk.heat_kato = boot.rows.back().heat_kato;
        }
        rep.shifted_checks.push_back(chk);
        rep.all_shifted_ok = rep.all_shifted_ok && boot.success;
    }
    if (rep.shifted_checks.empty()) rep.all_shifted_ok = false;

    // did the measured ratio R/sqrt(t) grow past its value at t0?
    double at_t0 = std::numeric_limits<double>::quiet_NaN();
    double at_end = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = t0_idx; i < rep.times.size(); ++i)
        if (std::isfinite(rep.radius_over_sqrt_t[i])) {
            at_t0 = rep.radius_over_sqrt_t[i];
            break;
        }
    for (std::size_t i = rep.times.size(); i-- > t0_idx;)
        if (std::isfinite(rep.radius_over_sqrt_t[i])) {
            at_end = rep.radius_over_sqrt_t[i];
            break;
        }
    rep.radius_ratio_grew = std::isfinite(at_t0) && std::isfinite(at_end) && at_end > at_t0;
    return rep;
}

} // namespace parasol

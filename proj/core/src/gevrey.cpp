#include <algorithm>
#include <cmath>
#include <random>

#include "parasol/analyticity.hpp"
#include "parasol/errors.hpp"
#include "parasol/norms.hpp"

namespace parasol {

void GevreyParams::validate(const SystemSpec& spec) const {
    if (!(eps > 0.0) || !(eps < 1.0)) throw invalid_input("gevrey params: eps must be in (0,1)");
    if (lambda < 0.0) throw invalid_input("gevrey params: lambda must be >= 0");
    if (!(T > 0.0)) throw invalid_input("gevrey params: T must be positive");
    const ScalingData sc = scaling_data(spec);
    if (!(2.0 / p < sc.alpha))
        throw invalid_input("gevrey params: need 2/p < alpha (p too small for the scaling)");
    if (!(p > static_cast<double>(spec.k)))
        throw invalid_input("gevrey params: need p > k");
}

double derive_c_small(double C_lemma, int k) {
    if (!(C_lemma > 0.0)) throw invalid_input("c_small needs a positive lemma constant");
    return std::pow(4.0 * C_lemma, -1.0 / (k - 1));
}

double derive_eta(double c_small, double C_heat, double delta) {
    if (!(C_heat > 0.0) || !(c_small > 0.0) || !(delta > 0.0))
        throw invalid_input("eta needs positive c_small, C_heat, delta");
    return std::pow(c_small / (2.0 * C_heat), 2.0 / delta);
}

SpectralField gevrey_weight_field(const SpectralField& U, const GevreyParams& params, double t) {
    if (t < 0.0 || t > params.T * (1.0 + 1e-12))
        throw invalid_input("gevrey weight: t outside [0, T]");
    const Grid& g = U.grid();
    const double drift = -params.lambda * params.lambda / (4.0 * (1.0 - params.eps)) * t /
                         params.T;
    const double slope = params.lambda * t / std::sqrt(params.T);

    SpectralField out(U.grid_ptr(), U.components());
    const std::size_t n = g.size();
    for (int j = 0; j < U.components(); ++j) {
        auto in = U.component(j);
        auto o = out.component(j);
        for (std::size_t i = 0; i < n; ++i) {
            const double a = std::abs(in[i]);
            if (a == 0.0) continue;
            const double log_w = drift + slope * g.xi_norm(i);
            const double log_v = log_w + std::log(a);
            if (log_v > 700.0)
                throw overflow_error("gevrey weight overflows at retained mode", g.xi_norm(i));
            o[i] = cplx(std::exp(log_v), 0.0);
        }
    }
    return out;
}

double gevrey_kato_norm(const Trace& trace, const GevreyParams& params, double s,
                        double t_origin) {
    trace.check_invariants();
    double worst = 0.0;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double tau = trace.times[i] - t_origin;
        if (tau <= 0.0 || tau > params.T * (1.0 + 1e-12)) continue;
        const double w = std::pow(tau, 1.0 / params.p);
        worst = std::max(
            worst, w * sobolev_norm(gevrey_weight_field(trace.snapshots[i], params, tau), s));
    }
    return worst;
}

double heat_kato_on_grid(const Trace& trace, const SpectralField& U0, double eps, double p,
                         double s, double t_origin) {
    trace.check_invariants();
    double worst = 0.0;
    for (double t : trace.times) {
        const double tau = t - t_origin;
        if (tau <= 0.0) continue;
        worst = std::max(worst, std::pow(tau, 1.0 / p) *
                                    sobolev_norm(heat_flow_field(U0, tau, eps), s));
    }
    return worst;
}

InequalityReport multiplier_inequality_check(double lambda, double eps, double T,
                                             const std::vector<double>& xi_samples) {
    if (!(eps > 0.0) || !(eps < 1.0) || lambda < 0.0 || !(T > 0.0))
        throw invalid_input("multiplier inequality: need eps in (0,1), lambda >= 0, T > 0");
    InequalityReport rep;
    for (double xi : xi_samples) {
        const double lhs =
            -lambda * lambda / (4.0 * (1.0 - eps)) / T + lambda * xi / std::sqrt(T) - xi * xi;
        const double rhs = -eps * xi * xi;
        const double slack = rhs - lhs;
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        ++rep.samples;
        if (slack < rep.worst_slack) {
            rep.worst_slack = slack;
            rep.worst_lambda = lambda;
            rep.worst_eps = eps;
            rep.worst_T = T;
            rep.worst_xi = xi;
        }
        if (slack < -64.0 * std::numeric_limits<double>::epsilon() * scale) ++rep.violations;
    }
    return rep;
}

InequalityReport multiplier_inequality_random_check(long tuples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    InequalityReport total;
    for (long i = 0; i < tuples; ++i) {
        const double lambda = 5.0 * u01(rng);
        const double eps = 0.01 + 0.98 * u01(rng);
        const double T = std::pow(10.0, -4.0 + 6.0 * u01(rng));
        const double xi_star = lambda / (2.0 * (1.0 - eps) * std::sqrt(T));
        std::vector<double> xis{50.0 * u01(rng), xi_star};
        const InequalityReport rep = multiplier_inequality_check(lambda, eps, T, xis);
        total.samples += rep.samples;
        total.violations += rep.violations;
        if (rep.worst_slack < total.worst_slack) {
            total.worst_slack = rep.worst_slack;
            total.worst_lambda = rep.worst_lambda;
            total.worst_eps = rep.worst_eps;
            total.worst_T = rep.worst_T;
            total.worst_xi = rep.worst_xi;
        }
    }
    return total;
}

BootstrapReport verify_bootstrap(const Trace& trace, const GevreyParams& params,
                                 const CalibratedConstants& constants, double t_origin) {
    trace.check_invariants();
    params.validate(trace.spec);
    if (constants.k != trace.spec.k || std::abs(constants.eps - params.eps) > 1e-12 ||
        std::abs(constants.p - params.p) > 1e-12)
        throw invalid_input("bootstrap: constants were calibrated for different (k, eps, p)");
    if (!(constants.c_small > 0.0)) throw invalid_input("bootstrap: constants not calibrated");

    const ScalingData sc = scaling_data(trace.spec);
    const double s_p = sc.s_crit + 2.0 / params.p;
    const double bound_small = constants.c_small *
                               std::exp(-params.lambda * params.lambda /
                                        (4.0 * (1.0 - params.eps)));
    // origin of the construction: the snapshot at t_origin (the shifted
    // corollary flows from u(t0), not from the run's initial data)
    std::size_t origin_idx = 0;
    while (origin_idx + 1 < trace.times.size() && trace.times[origin_idx] < t_origin - 1e-15)
        ++origin_idx;
    if (std::abs(trace.times[origin_idx] - t_origin) > 1e-12 * std::max(1.0, t_origin))
        throw invalid_input("bootstrap: t_origin must be a snapshot time of the trace");
    const SpectralField& U0 = trace.snapshots[origin_idx];
    const double slack = 1.0 + 1e-12;

    BootstrapReport rep;
    double ua_run = 0.0, heat_run = 0.0;
    std::size_t last_idx = 0;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double tau = trace.times[i] - t_origin;
        if (tau < 0.0) continue;
        if (tau > params.T * (1.0 + 1e-12)) break;
        last_idx = i;
        if (tau > 0.0) {
            const double w = std::pow(tau, 1.0 / params.p);
            ua_run = std::max(ua_run, w * sobolev_norm(gevrey_weight_field(trace.snapshots[i],
                                                                           params, tau),
                                                       s_p));
            heat_run =
                std::max(heat_run, w * sobolev_norm(heat_flow_field(U0, tau, params.eps), s_p));
        }
        BootstrapRow row;
        row.T_prefix = tau;
        row.ua_kato = ua_run;
        row.bound_small = bound_small;
        row.heat_kato = heat_run;
        row.ok_small = ua_run <= bound_small * slack;
        row.ok_four_thirds = ua_run <= (4.0 / 3.0) * heat_run * slack || ua_run == 0.0;
        rep.rows.push_back(row);
        if ((!row.ok_small || !row.ok_four_thirds) && rep.first_violation_time < 0.0) {
            rep.first_violation_time = trace.times[i];
            rep.violated = !row.ok_small ? "induction" : "four-thirds";
        }
    }
    rep.success = rep.first_violation_time < 0.0 && !rep.rows.empty();

    // certified Gevrey bound at the final prefix time: the weight's
    // strip width at time t is lambda t / sqrt(T), equal to lambda
    // sqrt(T) when the trace reaches T
    const double T_end = rep.rows.empty() ? 0.0 : rep.rows.back().T_prefix;
    if (T_end > 0.0) {
        const double sigma = params.lambda * T_end / std::sqrt(params.T);
        rep.certified_gevrey_value = std::pow(T_end, 1.0 / params.p) *
                                     gevrey_norm(trace.snapshots[last_idx], sigma, s_p);
        rep.certified_gevrey_bound = constants.c_small;
        rep.certified_radius = sigma;
    }
    return rep;
}

double lambda_T_subcritical(double T, double U0_norm_subcritical, double delta, double eps,
                            const CalibratedConstants& constants) {
    if (!(constants.eta > 0.0)) throw invalid_input("lambda_T: constants lack eta");
    if (!(delta > 0.0)) throw invalid_input("lambda_T: delta must be positive");
    if (!(U0_norm_subcritical > 0.0)) throw invalid_input("lambda_T: zero data norm");
    const double arg = constants.eta / (T * std::pow(U0_norm_subcritical, 2.0 / delta));
    if (arg < 1.0 - 1e-12)
        throw invalid_input("lambda_T: T exceeds the threshold time T_eps(U0)");
    return std::sqrt(2.0 * delta * (1.0 - eps)) * std::sqrt(std::log(std::max(arg, 1.0)));
}

double T_eps_subcritical(double U0_norm_subcritical, double delta,
                         const CalibratedConstants& constants) {
    if (!(constants.eta > 0.0)) throw invalid_input("T_eps: constants lack eta");
    if (!(U0_norm_subcritical > 0.0)) throw invalid_input("T_eps: zero data norm");
    return constants.eta * std::pow(U0_norm_subcritical, -2.0 / delta);
}

CriticalLambda lambda_T_critical(double T, const SpectralField& U0, double eps, double p,
                                 double s, const CalibratedConstants& constants) {
    if (!(constants.c_small > 0.0)) throw invalid_input("lambda_T: constants not calibrated");
    CriticalLambda out;
    out.heat_kato = heat_flow_kato_norm(U0, eps, p, s, T);
    const double c = constants.c_small;
    if (out.heat_kato > c * (1.0 + 1e-12))
        throw invalid_input("lambda_T: heat-flow Kato norm exceeds c (inadmissible T)");
    if (out.heat_kato > 0.5 * c) {
        out.vacuous = true;
        out.lambda = 0.0;
        return out;
    }
    if (out.heat_kato == 0.0) throw invalid_input("lambda_T: zero initial data");
    out.lambda = 2.0 * std::sqrt(1.0 - eps) *
                 std::sqrt(std::max(0.0, std::log(c / (2.0 * out.heat_kato))));
    return out;
}

double T_eps_critical(const SpectralField& U0, double eps, double p, double s,
                      const CalibratedConstants& constants, double T_hi, double target) {
    if (!(constants.c_small > 0.0)) throw invalid_input("T_eps: constants not calibrated");
    const double goal = target > 0.0 ? target : constants.c_small;
    const auto norm_at = [&](double T) { return heat_flow_kato_norm(U0, eps, p, s, T); };
    if (norm_at(T_hi) <= goal) return T_hi;
    double lo = T_hi;
    while (norm_at(lo) > goal) {
        lo /= 10.0;
        if (lo < 1e-300)
            throw invalid_input("T_eps: heat norm exceeds the target at every horizon");
    }
    double llo = std::log(lo), lhi = std::log(std::min(T_hi, lo * 10.0));
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (llo + lhi);
        if (norm_at(std::exp(mid)) <= goal)
            llo = mid;
        else
            lhi = mid;
    }
    return std::exp(llo);
}

} // namespace parasol

#include <algorithm>
#include <cmath>

#include "parasol/errors.hpp"
#include "parasol/integrate.hpp"
#include "parasol/norms.hpp"

namespace parasol {

namespace {

// Quadrature weights for int_0^h e^{-(h-s)q} G(s) ds with linear G:
//   local = h [ (w0-w1) G(0) + w1 G(h) ],  a = h q,
//   w0 = (1-e^{-a})/a,  w1 = (a-1+e^{-a})/a^2.
void linear_kernel_weights(double a, double& w0, double& w1) {
    if (a < 1e-12) {
        w0 = 1.0 - 0.5 * a;
        w1 = 0.5 - a / 6.0;
        return;
    }
    const double em = std::expm1(-a);
    w0 = -em / a;
    if (a < 0.5) {
        // a + expm1(-a) cancels; sum w1 = sum_{m>=2} (-1)^m a^{m-2} / m! instead
        long double acc = 0.0L, apow = 1.0L, f = 2.0L;
        double sign = 1.0;
        for (int m = 2; m <= 22; ++m) {
            acc += sign * apow / f;
            apow *= a;
            f *= (m + 1);
            sign = -sign;
        }
        w1 = static_cast<double>(acc);
    } else {
        w1 = (a + em) / (a * a);
    }
}

// J(a,gamma) = int_0^1 e^{-a(1-s)} s^{-gamma} ds, gamma in [0,1):
// the first-interval weight when G is modeled as t'^{-gamma}.
double singular_kernel_weight(double a, double gamma) {
    if (a <= 30.0) {
        // e^{-a} sum_m a^m / (m! (m+1-gamma))
        long double sum = 0.0L, term = 1.0L;
        for (int m = 0; m <= 120; ++m) {
            sum += term / (m + 1.0L - gamma);
            term *= a / (m + 1.0L);
            if (m > 5 && term / (m + 1.0L - gamma) < 1e-22L * sum) break;
        }
        return static_cast<double>(expl(-static_cast<long double>(a)) * sum);
    }
    // Watson asymptotics around s=1
    const double g1 = gamma, g2 = gamma * (gamma + 1.0), g3 = g2 * (gamma + 2.0);
    return (1.0 + g1 / a + g2 / (a * a) + g3 / (a * a * a)) / a;
}

double kato_distance(const std::vector<double>& times, const std::vector<SpectralField>& a,
                     const std::vector<SpectralField>& b, double p, double s) {
    double worst = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double w = std::pow(times[i], 1.0 / p);
        worst = std::max(worst, w * sobolev_norm(a[i] - b[i], s));
    }
    return worst;
}

} // namespace

PicardResult picard_solve(const SystemSpec& spec, const SpectralField& U0,
                          const PicardOptions& opts) {
    spec.validate();
    if (!(opts.T > 0.0)) throw invalid_input("picard: T must be positive");
    if (!(opts.p > static_cast<double>(spec.k)))
        throw invalid_input("picard: p must exceed the nonlinearity order k");
    if (U0.truncation_violation() > 0.0)
        throw invalid_input("picard: initial data has modes outside the Galerkin ball");

    const GridPtr grid = U0.grid_ptr();
    const Grid& g = *grid;
    const ScalingData sc = scaling_data(spec);
    const double s_p = sc.s_crit + 2.0 / opts.p;
    const double gamma = static_cast<double>(spec.k) / opts.p;

    std::vector<double> times{0.0};
    for (double t : opts.snapshots.times(opts.T)) times.push_back(t);
    const std::size_t M = times.size();

    // frozen heat-flow part e^{t Lap} U0
    std::vector<SpectralField> heat;
    heat.reserve(M);
    for (double t : times) heat.push_back(heat_flow_field(U0, t));

    NonlinearityEvaluator P(spec, grid);
    PicardResult res;

    std::vector<SpectralField> cur = heat; // zeroth iterate
    std::vector<SpectralField> G;
    int rising = 0;
    for (int iter = 1; iter <= opts.max_iters; ++iter) {
        G.clear();
        G.reserve(M);
        for (const auto& u : cur) {
            G.push_back(P.evaluate(u));
            ++res.trace.diagnostics.nonlinearity_evals;
        }

        // Duhamel accumulation: K_i = e^{-Delta q} K_{i-1} + local cell
        std::vector<SpectralField> next;
        next.reserve(M);
        next.push_back(U0);
        SpectralField K(grid, spec.N);
        for (std::size_t i = 1; i < M; ++i) {
            const double span = times[i] - times[i - 1];
            SpectralField item = heat[i];
            for (int j = 0; j < spec.N; ++j) {
                auto k = K.component(j);
                auto gp = G[i - 1].component(j);
                auto gc = G[i].component(j);
                auto out = item.component(j);
                for (std::size_t idx = 0; idx < g.size(); ++idx) {
                    const double q = g.xi_norm(idx) * g.xi_norm(idx);
                    const double a = span * q;
                    cplx local;
                    if (i == 1 && opts.singular_first_interval) {
                        local = span * singular_kernel_weight(a, gamma) * gc[idx];
                    } else {
                        double w0, w1;
                        linear_kernel_weights(a, w0, w1);
                        local = span * ((w0 - w1) * gp[idx] + w1 * gc[idx]);
                    }
                    k[idx] = std::exp(-a) * k[idx] + local;
                    out[idx] += k[idx];
                }
            }
            next.push_back(std::move(item));
        }

        const double dist = kato_distance(times, next, cur, opts.p, s_p);
        if (!res.distances.empty()) {
            res.contraction_ratio = res.distances.back() > 0.0
                                        ? dist / res.distances.back()
                                        : 0.0;
            rising = dist > res.distances.back() ? rising + 1 : 0;
        }
        res.distances.push_back(dist);
        cur = std::move(next);
        res.iterations = iter;

        if (dist < opts.tol) {
            res.converged = true;
            break;
        }
        if (rising >= 3 && dist > 10.0 * opts.tol)
            throw non_contraction_error(
                "picard iteration diverging (distance rose three times), ratio=" +
                    std::to_string(res.contraction_ratio),
                res.contraction_ratio);
    }

    res.trace.spec = spec;
    res.trace.times = times;
    res.trace.snapshots = std::move(cur);
    res.trace.check_invariants();
    return res;
}

double find_contraction_horizon(const SystemSpec& spec, const SpectralField& U0,
                                PicardOptions opts, double T_lo, double T_hi,
                                double target_ratio, int bisections) {
    if (!(T_lo > 0.0) || !(T_hi > T_lo)) throw invalid_input("contraction search: bad bracket");
    opts.max_iters = std::min(opts.max_iters, 8);

    const auto contracts = [&](double T) {
        PicardOptions probe = opts;
        probe.T = T;
        try {
            const PicardResult r = picard_solve(spec, U0, probe);
            if (r.converged && r.distances.size() < 3) return true;
            return r.contraction_ratio > 0.0 && r.contraction_ratio <= target_ratio;
        } catch (const non_contraction_error&) {
            return false;
        }
    };

    if (!contracts(T_lo)) return 0.0; // no horizon in the bracket
    if (contracts(T_hi)) return T_hi;
    double lo = std::log(T_lo), hi = std::log(T_hi);
    for (int i = 0; i < bisections; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (contracts(std::exp(mid)))
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(lo);
}

} // namespace parasol

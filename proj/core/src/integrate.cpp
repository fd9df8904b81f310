#include "parasol/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "parasol/errors.hpp"
#include "parasol/norms.hpp"

namespace parasol {

std::vector<double> SnapshotPolicy::times(double horizon) const {
    if (!(horizon > 0.0)) throw invalid_input("snapshot policy: horizon must be positive");
    std::vector<double> out;
    if (!explicit_times.empty()) {
        for (double t : explicit_times) {
            if (!(t > 0.0) || t > horizon * (1.0 + 1e-12))
                throw invalid_input("explicit snapshot time outside (0, horizon]");
            if (!out.empty() && t <= out.back())
                throw invalid_input("explicit snapshot times must increase");
            out.push_back(std::min(t, horizon));
        }
        return out;
    }
    if (points_per_decade < 1 || decades < 1)
        throw invalid_input("snapshot policy: need at least one point and one decade");
    const int n = points_per_decade * decades;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        out.push_back(horizon *
                      std::pow(10.0, -static_cast<double>(decades) * (n - i) / n));
    out.back() = horizon;
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// ETDRK4 coefficient functions of z = -|xi|^2 dt <= 0 (Cox-Matthews
// tableau; Kassam-Trefethen combinations).  The direct formulas cancel
// catastrophically near z = 0, so below |z| = 1 the Taylor series are
// summed instead; long double keeps both branches at ~1e-18.
struct EtdWeights {
    double E = 1.0, E2 = 1.0, Q = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0;
};

long double phi_half_series(long double z) {
    // (e^{z/2}-1)/z = sum z^j / (2^{j+1} (j+1)!)
    long double sum = 0.0L, pow = 1.0L, fact = 1.0L, two = 2.0L;
    for (int j = 0; j <= 24; ++j) {
        fact *= (j + 1);
        sum += pow / (two * fact);
        pow *= z;
        two *= 2.0L;
    }
    return sum;
}

void g_series(long double z, long double& g1, long double& g2, long double& g3) {
    // g1 = sum [4/(j+3)! - 3/(j+2)! + 1/(j+1)!] z^j, and friends
    long double f1 = 1.0L; // (j+1)!
    long double pow = 1.0L;
    g1 = g2 = g3 = 0.0L;
    for (int j = 0; j <= 24; ++j) {
        f1 *= (j + 1);
        const long double f2f = f1 * (j + 2);
        const long double f3f = f2f * (j + 3);
        g1 += (4.0L / f3f - 3.0L / f2f + 1.0L / f1) * pow;
        g2 += (-2.0L / f3f + 1.0L / f2f) * pow;
        g3 += (4.0L / f3f - 1.0L / f2f) * pow;
        pow *= z;
    }
}

EtdWeights etd_weights(double xi_sq, double dt) {
    const long double z = -static_cast<long double>(xi_sq) * static_cast<long double>(dt);
    EtdWeights w;
    w.E = static_cast<double>(expl(z));
    w.E2 = static_cast<double>(expl(0.5L * z));
    long double q, g1, g2, g3;
    if (fabsl(z) < 1.0L) {
        q = phi_half_series(z);
        g_series(z, g1, g2, g3);
    } else {
        const long double ez = expl(z);
        const long double z3 = z * z * z;
        q = (expl(0.5L * z) - 1.0L) / z;
        g1 = (-4.0L - z + ez * (4.0L - 3.0L * z + z * z)) / z3;
        g2 = (2.0L + z + ez * (-2.0L + z)) / z3;
        g3 = (-4.0L - 3.0L * z - z * z + ez * (4.0L - z)) / z3;
    }
    w.Q = static_cast<double>(dt * q);
    w.f1 = static_cast<double>(dt * g1);
    w.f2 = static_cast<double>(dt * g2);
    w.f3 = static_cast<double>(dt * g3);
    return w;
}

struct EtdCoeffs {
    double dt = -1.0;
    std::vector<double> E, E2, Q, f1, f2, f3;

    void build(const Grid& g, double step) {
        dt = step;
        const std::size_t n = g.size();
        E.resize(n);
        E2.resize(n);
        Q.resize(n);
        f1.resize(n);
        f2.resize(n);
        f3.resize(n);
        std::map<long long, EtdWeights> memo; // |m|^2 is shared by many modes
        const double unit = 2.0 * M_PI / g.period();
        for (std::size_t i = 0; i < n; ++i) {
            const auto m = g.lattice_vector(i);
            const long long msq = static_cast<long long>(m[0]) * m[0] +
                                  static_cast<long long>(m[1]) * m[1] +
                                  static_cast<long long>(m[2]) * m[2];
            auto it = memo.find(msq);
            if (it == memo.end())
                it = memo.emplace(msq, etd_weights(unit * unit * double(msq), step)).first;
            const EtdWeights& w = it->second;
            E[i] = w.E;
            E2[i] = w.E2;
            Q[i] = w.Q;
            f1[i] = w.f1;
            f2[i] = w.f2;
            f3[i] = w.f3;
        }
    }
};

// out = diag(m1) a + diag(m2) b, per component
SpectralField mode_combine(const std::vector<double>& m1, const SpectralField& a,
                           const std::vector<double>& m2, const SpectralField& b) {
    SpectralField out(a.grid_ptr(), a.components());
    const std::size_t n = a.grid().size();
    for (int j = 0; j < a.components(); ++j) {
        auto oa = out.component(j);
        auto ca = a.component(j);
        auto cb = b.component(j);
        for (std::size_t i = 0; i < n; ++i) oa[i] = m1[i] * ca[i] + m2[i] * cb[i];
    }
    return out;
}

void step_etdrk4(SpectralField& U, const EtdCoeffs& c, const NonlinearityEvaluator& P,
                 long& evals) {
    const std::size_t n = U.grid().size();
    const SpectralField Nu = P.evaluate(U);
    const SpectralField a = mode_combine(c.E2, U, c.Q, Nu);
    const SpectralField Na = P.evaluate(a);
    const SpectralField b = mode_combine(c.E2, U, c.Q, Na);
    const SpectralField Nb = P.evaluate(b);
    SpectralField mix = Nb;
    mix *= 2.0;
    mix -= Nu;
    const SpectralField cc = mode_combine(c.E2, a, c.Q, mix);
    const SpectralField Nc = P.evaluate(cc);
    evals += 4;
    for (int j = 0; j < U.components(); ++j) {
        auto u = U.component(j);
        auto nu = Nu.component(j);
        auto na = Na.component(j);
        auto nb = Nb.component(j);
        auto nc = Nc.component(j);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = c.E[i] * u[i] + c.f1[i] * nu[i] + 2.0 * c.f2[i] * (na[i] + nb[i]) +
                   c.f3[i] * nc[i];
    }
}

void step_ifrk4(SpectralField& U, const EtdCoeffs& c, const NonlinearityEvaluator& P,
                double dt, long& evals) {
    const std::size_t n = U.grid().size();
    const SpectralField A1 = P.evaluate(U);

    SpectralField tmp = U;
    for (int j = 0; j < U.components(); ++j) {
        auto t = tmp.component(j);
        auto a1 = A1.component(j);
        for (std::size_t i = 0; i < n; ++i) t[i] = c.E2[i] * (t[i] + 0.5 * dt * a1[i]);
    }
    const SpectralField A2 = P.evaluate(tmp);

    for (int j = 0; j < U.components(); ++j) {
        auto t = tmp.component(j);
        auto u = U.component(j);
        auto a2 = A2.component(j);
        for (std::size_t i = 0; i < n; ++i) t[i] = c.E2[i] * u[i] + 0.5 * dt * a2[i];
    }
    const SpectralField A3 = P.evaluate(tmp);

    for (int j = 0; j < U.components(); ++j) {
        auto t = tmp.component(j);
        auto u = U.component(j);
        auto a3 = A3.component(j);
        for (std::size_t i = 0; i < n; ++i) t[i] = c.E[i] * u[i] + dt * c.E2[i] * a3[i];
    }
    const SpectralField A4 = P.evaluate(tmp);
    evals += 4;

    for (int j = 0; j < U.components(); ++j) {
        auto u = U.component(j);
        auto a1 = A1.component(j);
        auto a2 = A2.component(j);
        auto a3 = A3.component(j);
        auto a4 = A4.component(j);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = c.E[i] * u[i] + dt / 6.0 *
                       (c.E[i] * a1[i] + 2.0 * c.E2[i] * (a2[i] + a3[i]) + a4[i]);
    }
}

double coeff_l2(const SpectralField& f) {
    double sum = 0.0;
    for (const auto& c : f.raw()) sum += std::norm(c);
    return std::sqrt(sum * f.grid().cell_volume());
}

struct Stepper {
    const IntegratorOptions& opts;
    const NonlinearityEvaluator& P;
    EtdCoeffs coeffs;

    void step(SpectralField& U, double dt, long& evals) {
        if (coeffs.dt != dt) coeffs.build(U.grid(), dt);
        if (opts.scheme == Scheme::ETDRK4)
            step_etdrk4(U, coeffs, P, evals);
        else
            step_ifrk4(U, coeffs, P, dt, evals);
    }
};

} // namespace

SpectralField heat_flow_field(const SpectralField& U0, double t, double viscosity) {
    SpectralField out = U0;
    const Grid& g = out.grid();
    const std::size_t n = g.size();
    for (int j = 0; j < out.components(); ++j) {
        auto c = out.component(j);
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = g.xi_norm(i);
            c[i] *= std::exp(-viscosity * t * xi * xi);
        }
    }
    return out;
}

Trace heat_flow_trace(const SystemSpec& spec, const SpectralField& U0,
                      const std::vector<double>& times, double viscosity) {
    Trace tr;
    tr.spec = spec;
    tr.times = times;
    if (tr.times.empty() || tr.times.front() != 0.0) tr.times.insert(tr.times.begin(), 0.0);
    tr.snapshots.reserve(tr.times.size());
    for (double t : tr.times) tr.snapshots.push_back(heat_flow_field(U0, t, viscosity));
    tr.check_invariants();
    return tr;
}

Trace integrate(const SystemSpec& spec, const SpectralField& U0, const IntegratorOptions& opts) {
    spec.validate();
    if (!(opts.dt > 0.0)) throw invalid_input("integrate: dt must be positive");
    if (!(opts.horizon > 0.0)) throw invalid_input("integrate: horizon must be positive");
    if (U0.truncation_violation() > 0.0)
        throw invalid_input("integrate: initial data has modes outside the Galerkin ball");
    if (spec.hermitian_cleanup && !U0.is_hermitian(1e-10))
        throw invalid_input("integrate: initial data is not Hermitian-symmetric");

    NonlinearityEvaluator P(spec, U0.grid_ptr());
    const ScalingData sc = scaling_data(spec);
    const double guard_s = sc.s_crit + opts.guard.index_offset;
    const double guard0 = sobolev_norm(U0, guard_s);

    Trace tr;
    tr.spec = spec;
    tr.times.push_back(0.0);
    tr.snapshots.push_back(U0);

    SpectralField U = U0;
    Stepper stepper{opts, P, {}};
    double t = 0.0;
    double h_adaptive = opts.dt;

    const auto guard_check = [&](double now) {
        if (!opts.guard.enabled || guard0 == 0.0) return;
        const double v = sobolev_norm(U, guard_s);
        if (!std::isfinite(v) || v > opts.guard.ceiling_factor * guard0)
            throw blowup_error("blow-up guard tripped", now, v);
    };

    for (double t_target : opts.snapshots.times(opts.horizon)) {
        if (opts.adapt <= 0.0) {
            const double span = t_target - t;
            const int nsub = std::max(1, static_cast<int>(std::ceil(span / opts.dt - 1e-12)));
            const double h = span / nsub;
            for (int i = 0; i < nsub; ++i) {
                stepper.step(U, h, tr.diagnostics.nonlinearity_evals);
                tr.diagnostics.accepted_dt.push_back(h);
                guard_check(t + (i + 1) * h);
            }
            t = t_target;
        } else {
            while (t < t_target * (1.0 - 1e-14)) {
                double h = std::min(h_adaptive, t_target - t);
                if (h < 1e-15 * opts.horizon)
                    throw stepsize_underflow("integrate: step size underflow at t=" +
                                             std::to_string(t));
                SpectralField one = U;
                stepper.step(one, h, tr.diagnostics.nonlinearity_evals);
                SpectralField two = U;
                stepper.step(two, 0.5 * h, tr.diagnostics.nonlinearity_evals);
                stepper.step(two, 0.5 * h, tr.diagnostics.nonlinearity_evals);
                const double scale = std::max(coeff_l2(two), 1e-300);
                const double err = coeff_l2(one - two) / (15.0 * scale);
                if (err <= opts.adapt) {
                    U = std::move(two);
                    t += h;
                    tr.diagnostics.accepted_dt.push_back(h);
                    guard_check(t);
                    const double grow =
                        err > 0.0 ? 0.9 * std::pow(opts.adapt / err, 0.2) : 5.0;
                    h_adaptive = h * std::clamp(grow, 0.5, 5.0);
                } else {
                    ++tr.diagnostics.rejected_steps;
                    h_adaptive = h * std::clamp(0.9 * std::pow(opts.adapt / err, 0.2), 0.1, 0.9);
                }
            }
            t = t_target;
        }
        tr.times.push_back(t_target);
        tr.snapshots.push_back(U);
    }
    tr.check_invariants();
    return tr;
}

SpectralField rescale_field(const SpectralField& f, int lambda, double alpha) {
    if (lambda < 1) throw invalid_input("rescale: lambda must be a positive integer");
    if (lambda == 1) return f;
    if ((lambda & (lambda - 1)) != 0)
        throw invalid_input("rescale: lambda must be a power of two for grid compatibility");
    const Grid& g = f.grid();
    auto fine = make_grid(g.dim(), g.points_per_axis() * lambda, g.period(),
                          g.truncation_radius() * lambda);
    SpectralField out(fine, f.components());
    const double amp = std::pow(static_cast<double>(lambda), alpha);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.retained(i)) continue;
        const auto m = g.lattice_vector(i);
        const std::size_t fi = fine->flat_index({lambda * m[0], lambda * m[1], lambda * m[2]});
        for (int j = 0; j < f.components(); ++j) out.at(j, fi) = amp * f.at(j, i);
    }
    return out;
}

Trace rescale_solution(const Trace& trace, int lambda) {
    trace.check_invariants();
    if (lambda == 1) return trace;
    const ScalingData sc = scaling_data(trace.spec);
    Trace out;
    out.spec = trace.spec;
    if (out.spec.truncation_radius > 0.0) out.spec.truncation_radius *= lambda;
    const double time_scale = 1.0 / (static_cast<double>(lambda) * lambda);
    out.times.reserve(trace.times.size());
    out.snapshots.reserve(trace.snapshots.size());
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        out.times.push_back(trace.times[i] * time_scale);
        out.snapshots.push_back(rescale_field(trace.snapshots[i], lambda, sc.alpha));
    }
    out.diagnostics = trace.diagnostics;
    out.check_invariants();
    return out;
}

double equation_residual(const Trace& trace, int substeps_per_interval) {
    trace.check_invariants();
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < trace.times.size(); ++i) {
        const double span = trace.times[i + 1] - trace.times[i];
        IntegratorOptions opts;
        opts.dt = span / substeps_per_interval;
        opts.horizon = span;
        opts.snapshots.explicit_times = {span};
        opts.guard.enabled = false;
        const Trace fine = integrate(trace.spec, trace.snapshots[i], opts);
        const double scale = std::max(coeff_l2(trace.snapshots[i + 1]), 1e-300);
        worst = std::max(worst, coeff_l2(fine.final() - trace.snapshots[i + 1]) / scale);
    }
    return worst;
}

} // namespace parasol

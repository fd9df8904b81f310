#include <doctest.h>

#include <cmath>

#include "parasol/errors.hpp"
#include "parasol/integrate.hpp"
#include "parasol/norms.hpp"
#include "test_util.hpp"

using namespace parasol;

namespace {

SystemSpec linear_spec(int d) {
    SystemSpec s;
    s.name = "linear";
    s.d = d;
    s.N = 1;
    s.k = 2;
    s.beta = 1.0;
    return s;
}

SpectralField sine_field(GridPtr g, double amplitude, int mode = 1) {
    SpectralField u(g, 1);
    u.at(0, g->flat_index({mode, 0, 0})) = cplx(0.0, -0.5 * amplitude);
    u.at(0, g->flat_index({-mode, 0, 0})) = cplx(0.0, 0.5 * amplitude);
    return u;
}

SpectralField taylor_green(GridPtr g, double amplitude) {
    const int P = g->points_per_axis();
    PhysicalField u;
    u.grid = g;
    u.components = 3;
    u.values.assign(3u * g->size(), 0.0);
    const double h = 2.0 * M_PI / P;
    for (int ix = 0; ix < P; ++ix)
        for (int iy = 0; iy < P; ++iy)
            for (int iz = 0; iz < P; ++iz) {
                const std::size_t flat =
                    (static_cast<std::size_t>(ix) * P + iy) * P + iz;
                const double x = ix * h, y = iy * h, z = iz * h;
                u.values[flat] = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
                u.values[g->size() + flat] =
                    -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
            }
    return forward_transform(u, g);
}

double l2_diff(const SpectralField& a, const SpectralField& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.raw().size(); ++i) sum += std::norm(a.raw()[i] - b.raw()[i]);
    return std::sqrt(sum);
}

double l2(const SpectralField& a) {
    double sum = 0.0;
    for (const auto& c : a.raw()) sum += std::norm(c);
    return std::sqrt(sum);
}

} // namespace

TEST_CASE("snapshot policy builds a log ladder ending at the horizon") {
    SnapshotPolicy pol;
    auto t = pol.times(2.0);
    CHECK(t.size() == 96);
    CHECK(t.back() == 2.0);
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);
    CHECK(t.front() == doctest::Approx(2e-6).epsilon(0.1));

    SnapshotPolicy ex;
    ex.explicit_times = {0.5, 1.0};
    CHECK(ex.times(1.0) == std::vector<double>{0.5, 1.0});
    ex.explicit_times = {0.0, 1.0};
    CHECK_THROWS_AS(ex.times(1.0), invalid_input);
}

TEST_CASE("empty multiplier table reproduces the heat flow to roundoff") {
    for (Scheme sch : {Scheme::ETDRK4, Scheme::IFRK4}) {
        auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
        auto u0 = testutil::random_field(g, 1, 17);
        IntegratorOptions opts;
        opts.scheme = sch;
        opts.dt = 5e-3;
        opts.horizon = 1.0;
        opts.snapshots.points_per_decade = 8;
        opts.snapshots.decades = 4;
        const Trace tr = integrate(linear_spec(1), u0, opts);
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            const SpectralField exact = heat_flow_field(u0, tr.times[i]);
            CHECK(l2_diff(tr.snapshots[i], exact) <= 1e-12 * l2(exact));
        }
    }
}

TEST_CASE("etdrk4 self-convergence order on a smooth burgers run is ~4") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto spec = builtin_burgers();
    auto u0 = sine_field(g, 2.0);
    const double T = 0.2;

    const auto run = [&](double dt) {
        IntegratorOptions opts;
        opts.dt = dt;
        opts.horizon = T;
        opts.snapshots.explicit_times = {T};
        return integrate(spec, u0, opts).final();
    };
    // errors bottom out near 1e-14 absolute, so measure the order on
    // steps coarse enough to sit above the roundoff floor
    const SpectralField ref = run(T / 800);
    const double e1 = l2_diff(run(T / 25), ref);
    const double e2 = l2_diff(run(T / 50), ref);
    const double e4 = l2_diff(run(T / 100), ref);
    const double order12 = std::log2(e1 / e2);
    const double order24 = std::log2(e2 / e4);
    CHECK(order12 >= 3.5);
    CHECK(order24 >= 3.5);
    CHECK(order12 <= 4.6);
}

TEST_CASE("integrating factor scheme agrees with etdrk4") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto u0 = sine_field(g, 0.8);
    IntegratorOptions opts;
    opts.dt = 2e-4;
    opts.horizon = 0.3;
    opts.snapshots.explicit_times = {0.3};
    const Trace a = integrate(builtin_burgers(), u0, opts);
    opts.scheme = Scheme::IFRK4;
    const Trace b = integrate(builtin_burgers(), u0, opts);
    CHECK(l2_diff(a.final(), b.final()) < 1e-9 * l2(a.final()));
}

TEST_CASE("navier-stokes: energy decays, divergence and mean stay zero") {
    auto g = make_grid(3, 16, 2.0 * M_PI, 6.0);
    auto u0 = taylor_green(g, 0.4);
    CHECK(divergence_linf(u0) < 1e-13);

    IntegratorOptions opts;
    opts.dt = 5e-3;
    opts.horizon = 0.5;
    opts.snapshots.points_per_decade = 4;
    opts.snapshots.decades = 2;
    const Trace tr = integrate(builtin_navier_stokes(3), u0, opts);

    double prev = sobolev_norm(tr.snapshots[0], 0.0);
    for (std::size_t i = 1; i < tr.times.size(); ++i) {
        const double e = sobolev_norm(tr.snapshots[i], 0.0);
        CHECK(e <= prev * (1.0 + 1e-12));
        prev = e;
        CHECK(divergence_linf(tr.snapshots[i]) < 1e-12 * std::max(1.0, tr.snapshots[i].max_abs()));
        CHECK(tr.snapshots[i].is_mean_free(1e-14));
        CHECK(tr.snapshots[i].truncation_violation() == 0.0);
    }
}

TEST_CASE("blow-up guard trips on focusing cubic heat with large data") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto u0 = sine_field(g, 8.0);
    IntegratorOptions opts;
    opts.dt = 2e-3;
    opts.horizon = 2.0;
    opts.guard.ceiling_factor = 50.0;
    CHECK_THROWS_AS(integrate(builtin_cubic_heat(1, +1), u0, opts), blowup_error);
}

TEST_CASE("adaptive stepping matches fixed stepping and records diagnostics") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto u0 = sine_field(g, 1.0);
    IntegratorOptions fixed;
    fixed.dt = 1e-4;
    fixed.horizon = 0.2;
    fixed.snapshots.explicit_times = {0.1, 0.2};
    const Trace a = integrate(builtin_burgers(), u0, fixed);

    IntegratorOptions ad = fixed;
    ad.dt = 0.05; // initial guess, controller shrinks it
    ad.adapt = 1e-10;
    const Trace b = integrate(builtin_burgers(), u0, ad);
    CHECK(l2_diff(a.final(), b.final()) < 1e-7 * l2(a.final()));
    CHECK(b.diagnostics.accepted_steps() > 0);
    CHECK(b.diagnostics.nonlinearity_evals > 0);
}

TEST_CASE("picard on the linear system converges in one iteration to the heat flow") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto u0 = testutil::random_field(g, 1, 4);
    PicardOptions opts;
    opts.T = 0.5;
    opts.p = 4.0;
    opts.snapshots.points_per_decade = 16;
    opts.snapshots.decades = 4;
    const PicardResult r = picard_solve(linear_spec(1), u0, opts);
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    for (std::size_t i = 0; i < r.trace.times.size(); ++i)
        CHECK(l2_diff(r.trace.snapshots[i], heat_flow_field(u0, r.trace.times[i])) < 1e-13);
}

TEST_CASE("picard fixed point agrees with the time stepper in kato distance") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto spec = builtin_burgers();
    auto u0 = sine_field(g, 0.25);
    const double T = 0.05, p = 4.0;

    PicardOptions popts;
    popts.T = T;
    popts.p = p;
    popts.tol = 1e-12;
    popts.snapshots.points_per_decade = 96;
    popts.snapshots.decades = 5;
    const PicardResult pr = picard_solve(spec, u0, popts);
    CHECK(pr.converged);

    IntegratorOptions iopts;
    iopts.dt = 1e-5;
    iopts.horizon = T;
    iopts.snapshots.explicit_times = std::vector<double>(pr.trace.times.begin() + 1,
                                                         pr.trace.times.end());
    const Trace ref = integrate(spec, u0, iopts);

    const ScalingData sc = scaling_data(spec);
    double dist = 0.0;
    for (std::size_t i = 1; i < ref.times.size(); ++i)
        dist = std::max(dist, std::pow(ref.times[i], 1.0 / p) *
                                  sobolev_norm(pr.trace.snapshots[i] - ref.snapshots[i],
                                               sc.s_crit + 2.0 / p));
    CHECK(dist <= 1e-6);
}

TEST_CASE("picard contracts for small data and a horizon exists for large data") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto spec = builtin_burgers();

    PicardOptions opts;
    opts.p = 4.0;
    opts.T = 0.02;
    opts.snapshots.points_per_decade = 32;
    opts.snapshots.decades = 4;
    const PicardResult small = picard_solve(spec, sine_field(g, 0.2), opts);
    CHECK(small.converged);
    CHECK(small.contraction_ratio < 1.0);

    // large data: contraction only below some horizon, found by bisection
    auto big = sine_field(g, 8.0);
    const double T_star = find_contraction_horizon(spec, big, opts, 1e-6, 1.0, 0.5);
    CHECK(T_star > 0.0);
    CHECK(T_star < 1.0);
    PicardOptions at = opts;
    at.T = T_star;
    const PicardResult r = picard_solve(spec, big, at);
    CHECK(r.contraction_ratio < 1.0);
}

TEST_CASE("rescaling: identity at lambda=1 and exactness on the heat flow") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto spec = linear_spec(1);
    SpectralField u0(g, 1);
    u0.at(0, g->flat_index({3, 0, 0})) = cplx(0.4, 0.1);
    u0.at(0, g->flat_index({-3, 0, 0})) = cplx(0.4, -0.1);

    SnapshotPolicy pol;
    pol.points_per_decade = 6;
    pol.decades = 3;
    const Trace tr = heat_flow_trace(spec, u0, pol.times(1.0));
    CHECK(rescale_solution(tr, 1).times == tr.times);

    const Trace fine = rescale_solution(tr, 2);
    const ScalingData sc = scaling_data(spec);
    const SpectralField v0 = rescale_field(u0, 2, sc.alpha);
    for (std::size_t i = 0; i < fine.times.size(); ++i) {
        const SpectralField exact = heat_flow_field(v0, fine.times[i]);
        CHECK(l2_diff(fine.snapshots[i], exact) < 1e-14);
    }
}

TEST_CASE("rescaled burgers trace still solves the system (residual check)") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto spec = builtin_burgers();
    auto u0 = sine_field(g, 0.5);
    IntegratorOptions opts;
    opts.dt = 2.5e-4;
    opts.horizon = 0.4;
    opts.snapshots.points_per_decade = 4;
    opts.snapshots.decades = 2;
    const Trace tr = integrate(spec, u0, opts);
    const Trace fine = rescale_solution(tr, 2);
    CHECK(equation_residual(fine, 48) <= 1e-8);
}

TEST_CASE("scaling covariance: rescale(integrate) == integrate(rescale) within 1e-6") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto spec = builtin_burgers();
    auto u0 = sine_field(g, 0.6);

    IntegratorOptions opts;
    opts.dt = 2e-4;
    opts.horizon = 0.4;
    opts.snapshots.points_per_decade = 6;
    opts.snapshots.decades = 3;
    const Trace coarse = integrate(spec, u0, opts);
    const Trace lhs = rescale_solution(coarse, 2);

    const ScalingData sc = scaling_data(spec);
    const SpectralField v0 = rescale_field(u0, 2, sc.alpha);
    IntegratorOptions fopts;
    fopts.dt = opts.dt / 4.0;
    fopts.horizon = opts.horizon / 4.0;
    fopts.snapshots.explicit_times = std::vector<double>(lhs.times.begin() + 1, lhs.times.end());
    const Trace rhs = integrate(spec, v0, fopts);

    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.times.size(); ++i) {
        const double scale = std::max(l2(rhs.snapshots[i]), 1e-300);
        worst = std::max(worst, l2_diff(lhs.snapshots[i], rhs.snapshots[i]) / scale);
    }
    CHECK(worst <= 1e-6);
}

#include <doctest.h>

#include <cmath>

#include "parasol/analyticity.hpp"
#include "parasol/errors.hpp"
#include "parasol/initial_data.hpp"
#include "parasol/norms.hpp"
#include "test_util.hpp"

using namespace parasol;

namespace {

SpectralField sine_field(GridPtr g, double amplitude) {
    SpectralField u(g, 1);
    u.at(0, g->flat_index({1, 0, 0})) = cplx(0.0, -0.5 * amplitude);
    u.at(0, g->flat_index({-1, 0, 0})) = cplx(0.0, 0.5 * amplitude);
    return u;
}

std::vector<Trace> burgers_ensemble(GridPtr g, int seeds, double T, double amp) {
    InitialDataLaw law;
    law.s = -0.5; // critical index of burgers
    law.amplitude = amp;
    law.margin = 0.3;
    std::vector<Trace> out;
    for (int s = 0; s < seeds; ++s) {
        auto u0 = generate_initial_data(law, g, 1000 + s);
        IntegratorOptions opts;
        opts.dt = 1e-3;
        opts.horizon = T;
        opts.snapshots.points_per_decade = 12;
        opts.snapshots.decades = 4;
        out.push_back(integrate(builtin_burgers(), u0, opts));
    }
    return out;
}

} // namespace

TEST_CASE("gevrey weight field: lambda=0, t=0 and the single-mode closed form") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto u = testutil::random_field(g, 1, 3);

    GevreyParams none{0.0, 0.5, 1.0, 4.0};
    const SpectralField mod = gevrey_weight_field(u, none, 0.7);
    for (std::size_t i = 0; i < g->size(); ++i)
        CHECK(std::abs(mod.at(0, i) - cplx(std::abs(u.at(0, i)), 0.0)) < 1e-15);
    CHECK(sobolev_norm(mod, 0.4) == doctest::Approx(sobolev_norm(u, 0.4)).epsilon(1e-13));

    GevreyParams params{1.3, 0.25, 2.0, 4.0};
    const SpectralField at0 = gevrey_weight_field(u, params, 0.0);
    for (std::size_t i = 0; i < g->size(); ++i)
        CHECK(std::abs(at0.at(0, i) - cplx(std::abs(u.at(0, i)), 0.0)) < 1e-15);

    const int xi0 = 6;
    const double A = 0.11;
    SpectralField m(g, 1);
    m.at(0, g->flat_index({xi0, 0, 0})) = cplx(0.0, A);
    m.at(0, g->flat_index({-xi0, 0, 0})) = cplx(0.0, -A);
    const SpectralField wT = gevrey_weight_field(m, params, params.T);
    const double expect =
        A * std::exp(-params.lambda * params.lambda / (4.0 * (1.0 - params.eps)) +
                     params.lambda * std::sqrt(params.T) * xi0);
    CHECK(std::abs(wT.at(0, g->flat_index({xi0, 0, 0})) - cplx(expect, 0.0)) < 1e-12 * expect);

    SpectralField huge = m;
    huge *= 1e300;
    GevreyParams strong{40.0, 0.25, 2.0, 4.0};
    CHECK_THROWS_AS(gevrey_weight_field(huge, strong, strong.T), overflow_error);
}

TEST_CASE("multiplier inequality: equality point, lambda=0, exhaustive random sampling") {
    // lambda=1, eps=1/2, T=1: equality at |xi| = 1
    auto rep = multiplier_inequality_check(1.0, 0.5, 1.0, {1.0});
    CHECK(rep.violations == 0);
    CHECK(std::abs(rep.worst_slack) < 1e-14);

    auto rep0 = multiplier_inequality_check(0.0, 0.3, 1.0, {0.0, 0.5, 3.0, 17.0});
    CHECK(rep0.violations == 0);

    auto big = multiplier_inequality_random_check(10000, 20250810);
    CHECK(big.samples == 20000);
    CHECK(big.violations == 0);
    // slack roundoff scales with |xi|^2 at the equality point
    CHECK(big.worst_slack >= -1e-12 * (1.0 + big.worst_xi * big.worst_xi));
}

TEST_CASE("weighted heat flow is dominated by the eps-heat flow") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto u0 = testutil::random_field(g, 1, 8);
    SystemSpec lin;
    lin.name = "linear";
    lin.d = 1;
    lin.N = 1;
    lin.k = 2;
    lin.beta = 1.0;
    SnapshotPolicy pol;
    pol.points_per_decade = 12;
    pol.decades = 4;
    const Trace tr = heat_flow_trace(lin, u0, pol.times(1.0));
    const ScalingData sc = scaling_data(lin);
    for (double lambda : {0.3, 1.0, 2.2}) {
        GevreyParams params{lambda, 0.2, 1.0, 4.0};
        const double s_p = sc.s_crit + 0.5;
        CHECK(gevrey_kato_norm(tr, params, s_p) <=
              heat_kato_on_grid(tr, u0, params.eps, params.p, s_p) * (1.0 + 1e-12));
    }
}

TEST_CASE("derived constants follow the closed formulas") {
    CHECK(derive_c_small(0.5, 2) == doctest::Approx(0.5));
    CHECK(derive_c_small(2.0, 3) == doctest::Approx(std::pow(8.0, -0.5)));
    CHECK(derive_eta(0.5, 2.0, 0.5) == doctest::Approx(std::pow(0.125, 4.0)));
}

TEST_CASE("lemma calibration: linear ensembles are degenerate, burgers calibrates stably") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    SystemSpec lin;
    lin.name = "linear";
    lin.d = 1;
    lin.N = 1;
    lin.k = 2;
    lin.beta = 1.0;
    SnapshotPolicy pol;
    pol.points_per_decade = 8;
    pol.decades = 3;
    std::vector<Trace> linear_runs;
    for (int s = 0; s < 3; ++s)
        linear_runs.push_back(
            heat_flow_trace(lin, testutil::random_field(g, 1, 60 + s), pol.times(0.5)));
    CHECK_THROWS_AS(
        calibrate_lemma_constant(lin, 0.1, 4.0, linear_runs, {0.0, 0.5, 1.0}),
        invalid_input);

    const std::vector<double> lambdas{0.0, 0.5, 1.0, 1.5, 2.0};
    auto coarse = burgers_ensemble(g, 4, 0.5, 1.2);
    const LemmaCalibration cal = calibrate_lemma_constant(builtin_burgers(), 0.1, 4.0, coarse,
                                                          lambdas);
    CHECK(cal.C_lemma > 0.0);
    CHECK(cal.c_small == doctest::Approx(derive_c_small(cal.C_lemma, 2)));

    // resolution doubling on the same continuum ensemble (same seeds)
    auto g2 = make_grid(1, 128, 2.0 * M_PI, 42.0);
    auto fine = burgers_ensemble(g2, 4, 0.5, 1.2);
    const LemmaCalibration cal2 = calibrate_lemma_constant(builtin_burgers(), 0.1, 4.0, fine,
                                                           lambdas);
    const double factor = std::max(cal.C_lemma, cal2.C_lemma) / std::min(cal.C_lemma,
                                                                         cal2.C_lemma);
    CHECK(factor < 2.0);
}

TEST_CASE("bootstrap verification: zero data passes, scaled-up data violates") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    CalibratedConstants cst;
    cst.k = 2;
    cst.eps = 0.1;
    cst.p = 4.0;
    cst.C_lemma = 1.0;
    cst.c_small = derive_c_small(1.0, 2);

    Trace zero;
    zero.spec = builtin_burgers();
    zero.times = {0.0, 0.5, 1.0};
    zero.snapshots.assign(3, SpectralField(g, 1));
    GevreyParams params{0.8, 0.1, 1.0, 4.0};
    const BootstrapReport ok = verify_bootstrap(zero, params, cst);
    CHECK(ok.success);

    // genuinely nonlinear, calibrated smallness: run the mechanism end to end
    auto ensemble = burgers_ensemble(g, 4, 0.5, 0.8);
    const std::vector<double> lambdas{0.0, 0.4, 0.8, 1.2, 1.6};
    const LemmaCalibration cal =
        calibrate_lemma_constant(builtin_burgers(), 0.1, 4.0, ensemble, lambdas);
    CalibratedConstants cc;
    cc.k = 2;
    cc.eps = 0.1;
    cc.p = 4.0;
    cc.C_lemma = cal.C_lemma;
    cc.c_small = cal.c_small;

    const ScalingData sc = scaling_data(builtin_burgers());
    const double s_p = sc.s_crit + 0.5;
    int certified = 0;
    for (const Trace& tr : ensemble) {
        // pick T with admissible heat norm, then the paper's lambda_T
        const double T_eps =
            T_eps_critical(tr.snapshots.front(), 0.1, 4.0, s_p, cc, tr.horizon(), 0.5 * cc.c_small);
        if (!(T_eps > 0.0)) continue;
        const double T = std::min(T_eps, tr.horizon());
        const CriticalLambda lam = lambda_T_critical(T, tr.snapshots.front(), 0.1, 4.0, s_p, cc);
        if (lam.vacuous) continue;
        GevreyParams run{lam.lambda, 0.1, T, 4.0};
        const BootstrapReport rep = verify_bootstrap(tr, run, cc);
        CHECK(rep.success);
        CHECK(rep.certified_gevrey_value <= rep.certified_gevrey_bound * (1.0 + 1e-9));
        ++certified;
    }
    CHECK(certified > 0);

    // blow the data up 100x: the smallness regime is gone
    Trace big = ensemble.front();
    for (auto& snap : big.snapshots) snap *= 100.0;
    GevreyParams stress{1.0, 0.1, big.horizon(), 4.0};
    const BootstrapReport bad = verify_bootstrap(big, stress, cc);
    CHECK_FALSE(bad.success);
    CHECK(bad.first_violation_time >= 0.0);
}

TEST_CASE("lambda_T subcritical: anchor points of the closed formula") {
    CalibratedConstants cst;
    cst.eta = 1.0;
    const double delta = 0.5, eps = 0.1;

    const double T_thresh = T_eps_subcritical(1.0, delta, cst);
    CHECK(T_thresh == doctest::Approx(1.0));
    CHECK(lambda_T_subcritical(T_thresh, 1.0, delta, eps, cst) == doctest::Approx(0.0));
    CHECK(lambda_T_subcritical(T_thresh / M_E, 1.0, delta, eps, cst) ==
          doctest::Approx(std::sqrt(2.0 * delta * (1.0 - eps))));
    CHECK(lambda_T_subcritical(std::exp(-4.0), 1.0, delta, eps, cst) ==
          doctest::Approx(std::sqrt(0.9) * 2.0));
    CHECK_THROWS_AS(lambda_T_subcritical(2.0 * T_thresh, 1.0, delta, eps, cst), invalid_input);

    // general threshold scaling eta ||U0||^{-2/delta}
    cst.eta = 0.3;
    CHECK(T_eps_subcritical(2.0, 0.25, cst) == doctest::Approx(0.3 * std::pow(2.0, -8.0)));
}

TEST_CASE("lambda_T critical: anchors against a synthetic heat norm") {
    auto g = make_grid(1, 64, 2.0 * M_PI, 21.0);
    auto u0 = sine_field(g, 0.2);
    const double eps = 0.1, p = 4.0, s_p = 0.0, T = 0.5;
    const double h = heat_flow_kato_norm(u0, eps, p, s_p, T);

    CalibratedConstants cst;
    cst.k = 2;
    cst.eps = eps;
    cst.p = p;

    cst.c_small = 2.0 * h; // heat norm exactly c/2: log(1) = 0
    auto lam = lambda_T_critical(T, u0, eps, p, s_p, cst);
    CHECK(lam.lambda == doctest::Approx(0.0));
    CHECK_FALSE(lam.vacuous);

    cst.c_small = 1.9 * h; // heat norm in (c/2, c]: bound degenerates
    lam = lambda_T_critical(T, u0, eps, p, s_p, cst);
    CHECK(lam.lambda == 0.0);
    CHECK(lam.vacuous);

    cst.c_small = 2.0 * M_E * h; // log = 1
    lam = lambda_T_critical(T, u0, eps, p, s_p, cst);
    CHECK_FALSE(lam.vacuous);
    CHECK(lam.lambda == doctest::Approx(2.0 * std::sqrt(1.0 - eps)));

    cst.c_small = 0.5 * h; // inadmissible
    CHECK_THROWS_AS(lambda_T_critical(T, u0, eps, p, s_p, cst), invalid_input);

    // bisection threshold: heat norm at the found horizon equals the target
    cst.c_small = 2.0 * M_E * h;
    const double T_star = T_eps_critical(u0, eps, p, s_p, cst, 1e4, 0.7 * h);
    CHECK(heat_flow_kato_norm(u0, eps, p, s_p, T_star) == doctest::Approx(0.7 * h).epsilon(1e-3));
}

TEST_CASE("lambda_T critical grows as T shrinks on critical-envelope data") {
    auto g = make_grid(1, 256, 2.0 * M_PI, 85.0);
    InitialDataLaw law;
    law.s = -0.5;
    law.amplitude = 0.05;
    law.margin = 0.05; // nearly critical envelope
    auto u0 = generate_initial_data(law, g, 7);

    CalibratedConstants cst;
    cst.k = 2;
    cst.eps = 0.1;
    cst.p = 4.0;
    cst.c_small = 0.4;
    const double s_p = 0.0;

    double prev = -1.0;
    int strict = 0;
    for (double T : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        const auto lam = lambda_T_critical(T, u0, cst.eps, cst.p, s_p, cst);
        if (prev >= 0.0 && lam.lambda > prev) ++strict;
        CHECK(lam.lambda >= prev * (1.0 - 1e-12));
        prev = lam.lambda;
    }
    CHECK(strict >= 3); // strictly increasing over at least three decades
}

TEST_CASE("radius estimator: synthetic spectra and the unresolved path") {
    auto g = make_grid(1, 128, 2.0 * M_PI, 42.0);

    const auto synth = [&](double a, double delta) {
        SpectralField f(g, 1);
        for (std::size_t i = 0; i < g->size(); ++i) {
            const double xi = g->xi_norm(i);
            if (xi == 0.0 || !g->retained(i)) continue;
            f.at(0, i) = cplx(std::pow(xi, -a) * std::exp(-delta * xi), 0.0);
        }
        return f;
    };

    const RadiusEstimate pure = estimate_radius(synth(0.0, 0.5));
    CHECK(pure.resolved);
    CHECK(pure.delta_fit == doctest::Approx(0.5).epsilon(1e-6));

    for (double a : {0.0, 1.0, 2.0})
        for (double delta : {0.1, 0.5, 1.0}) {
            const RadiusEstimate est = estimate_radius(synth(a, delta));
            CHECK(est.resolved);
            CHECK(est.delta_fit == doctest::Approx(delta).epsilon(0.02));
            CHECK(est.alpha_fit == doctest::Approx(a).epsilon(0.05));
        }

    // steep decay leaves the window to the noise floor
    const RadiusEstimate steep = estimate_radius(synth(0.0, 1.0));
    CHECK(steep.floor_flag);

    // fewer than six usable shells: explicit unresolved result
    SpectralField sparse(g, 1);
    for (int m : {1, 2, 3})
        sparse.at(0, g->flat_index({m, 0, 0})) = cplx(std::exp(-0.4 * m), 0.0);
    sparse.hermitianize();
    const RadiusEstimate un = estimate_radius(sparse);
    CHECK_FALSE(un.resolved);
    CHECK(un.delta_fit == 0.0);
}

TEST_CASE("initial data: determinism, resolution nesting, norm targets, roughness") {
    auto g = make_grid(1, 128, 2.0 * M_PI, 42.0);
    InitialDataLaw law;
    law.s = 0.0;
    law.amplitude = 2.0;
    law.margin = 0.25;

    auto a = generate_initial_data(law, g, 42);
    auto b = generate_initial_data(law, g, 42);
    CHECK(a.raw() == b.raw()); // byte-identical
    auto cdiff = generate_initial_data(law, g, 43);
    CHECK(testutil::rel_linf_diff(cdiff, a) > 1e-3);

    // the coarse field is the fine field truncated (mode-keyed phases)
    auto gf = make_grid(1, 256, 2.0 * M_PI, 85.0);
    auto fine = generate_initial_data(law, gf, 42);
    for (std::size_t i = 0; i < g->size(); ++i) {
        if (!g->retained(i)) continue;
        const auto m = g->lattice_vector(i);
        CHECK(std::abs(a.at(0, i) - fine.at(0, gf->flat_index(m))) < 1e-15);
    }

    // measured norm vs the closed-form envelope sum
    CHECK(sobolev_norm(a, 0.0) ==
          doctest::Approx(initial_data_norm_target(law, *g, 0.0)).epsilon(1e-12));

    // roughness witnessed: norms above s+margin grow with resolution
    const double s_above = law.s + law.margin + 0.35;
    CHECK(sobolev_norm(fine, s_above) > 1.2 * sobolev_norm(a, s_above));

    // divergence-free 3d law
    auto g3 = make_grid(3, 32, 2.0 * M_PI, 10.0);
    InitialDataLaw ns;
    ns.s = 0.5;
    ns.amplitude = 1.0;
    ns.margin = 0.5;
    ns.components = 3;
    ns.divergence_free = true;
    auto u = generate_initial_data(ns, g3, 11);
    CHECK(divergence_linf(u) < 1e-13);
    CHECK(u.is_mean_free(0.0));
    CHECK(u.is_hermitian(1e-12));
    CHECK(sobolev_norm(u, 0.5) ==
          doctest::Approx(initial_data_norm_target(ns, *g3, 0.5)).epsilon(0.05));

    auto tiny = make_grid(1, 16, 2.0 * M_PI, 6.0);
    CHECK_THROWS_AS(generate_initial_data(law, tiny, 1), invalid_input);
}

TEST_CASE("product law ratio is stable across resolutions on a fixed ensemble") {
    InitialDataLaw law;
    law.s = 0.25;
    law.amplitude = 1.0;
    law.margin = 0.3;
    const double s = 0.25;
    std::vector<double> ratios;
    for (int P : {32, 64, 128}) {
        auto g = make_grid(1, P, 2.0 * M_PI, 0.33 * P);
        double worst = 0.0;
        for (int seed = 0; seed < 4; ++seed) {
            auto f = generate_initial_data(law, g, 500 + seed);
            worst = std::max(worst, product_law_ratio(s, {&f, &f}));
        }
        ratios.push_back(worst);
    }
    const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
    CHECK(*mx / *mn < 2.0);
}

#include <algorithm>
#include <cmath>

#include "parasol/analyticity.hpp"
#include "parasol/errors.hpp"
#include "parasol/norms.hpp"

namespace parasol {

LemmaCalibration calibrate_lemma_constant(const SystemSpec& spec, double eps, double p,
                                          const std::vector<Trace>& ensemble,
                                          const std::vector<double>& lambda_grid) {
    if (ensemble.empty()) throw invalid_input("lemma calibration: empty ensemble");
    if (lambda_grid.empty()) throw invalid_input("lemma calibration: empty lambda grid");
    const ScalingData sc = scaling_data(spec);
    const double s_p = sc.s_crit + 2.0 / p;
    const int k = spec.k;

    LemmaCalibration cal;
    for (std::size_t r = 0; r < ensemble.size(); ++r) {
        const Trace& tr = ensemble[r];
        tr.check_invariants();
        if (tr.spec.k != k)
            throw invalid_input("lemma calibration: ensemble trace has mismatched k");
        const SpectralField& U0 = tr.snapshots.front();
        const double T = tr.horizon();
        const double heat = heat_kato_on_grid(tr, U0, eps, p, s_p);
        for (double lambda : lambda_grid) {
            GevreyParams params{lambda, eps, T, p};
            params.validate(spec);
            LemmaSample smp;
            smp.run_index = r;
            smp.lambda = lambda;
            smp.heat_kato = heat;
            smp.ua_kato = gevrey_kato_norm(tr, params, s_p);
            const double excess = smp.ua_kato - smp.heat_kato;
            if (excess > 0.0 && smp.ua_kato > 0.0) {
                const double amp =
                    std::exp(lambda * lambda * (k - 1) / (4.0 * (1.0 - eps)));
                smp.ratio = excess / (amp * std::pow(smp.ua_kato, k));
            }
            cal.samples.push_back(smp);
            cal.C_lemma = std::max(cal.C_lemma, smp.ratio);
        }
    }
    if (!(cal.C_lemma > 0.0))
        throw invalid_input("lemma calibration degenerate: no sample exceeded the heat flow "
                            "(ensemble looks linear)");
    cal.c_small = derive_c_small(cal.C_lemma, k);
    return cal;
}

double calibrate_heat_domination_constant(const std::vector<const SpectralField*>& samples,
                                          double eps, double p, double s_low, double s_kato,
                                          double T_big) {
    if (samples.empty()) throw invalid_input("K_eps calibration: empty sample set");
    double K = 0.0;
    for (const SpectralField* v : samples) {
        if (!v) throw invalid_input("K_eps calibration: null sample");
        const double low = sobolev_norm(*v, s_low);
        if (low == 0.0) continue;
        // decades chosen so the sweep reaches the smallest mode's time scale
        const double kato = heat_flow_kato_norm(*v, eps, p, s_kato, T_big, 64, 24);
        K = std::max(K, kato / low);
    }
    if (!(K > 0.0)) throw invalid_input("K_eps calibration: all samples were zero");
    return K;
}

} // namespace parasol

#include "parasol/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "parasol/errors.hpp"

namespace parasol {

void write_csv(const NormSeries& series, std::ostream& out) {
    out << "time,value,norm_id\n";
    char buf[128];
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", series.times[i], series.values[i]);
        out << buf << series.norm_id << "\n";
    }
}

double sobolev_norm(const SpectralField& f, double s) {
    const Grid& g = f.grid();
    const double cell = g.cell_volume();
    double sum = 0.0;
    for (int j = 0; j < f.components(); ++j) {
        auto c = f.component(j);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double xi = g.xi_norm(i);
            if (xi == 0.0) continue;
            const double a2 = std::norm(c[i]);
            if (a2 == 0.0) continue;
            sum += std::pow(xi, 2.0 * s) * a2 * cell;
        }
    }
    return std::sqrt(sum);
}

double gevrey_norm(const SpectralField& f, double sigma, double s) {
    if (sigma < 0.0) throw invalid_input("gevrey_norm: sigma must be >= 0");
    const Grid& g = f.grid();
    const double log_cell = std::log(g.cell_volume());

    // log of each summand; log-sum-exp against overflow
    double max_term = -std::numeric_limits<double>::infinity();
    double max_xi = 0.0;
    std::vector<double> terms;
    terms.reserve(f.raw().size());
    for (int j = 0; j < f.components(); ++j) {
        auto c = f.component(j);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double xi = g.xi_norm(i);
            if (xi == 0.0) continue;
            const double a = std::abs(c[i]);
            if (a == 0.0) continue;
            const double t = 2.0 * sigma * xi + 2.0 * s * std::log(xi) + 2.0 * std::log(a) +
                             log_cell;
            terms.push_back(t);
            if (t > max_term) {
                max_term = t;
                max_xi = xi;
            }
        }
    }
    if (terms.empty()) return 0.0;
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - max_term);
    const double log_norm = 0.5 * (max_term + std::log(acc));
    if (log_norm > 708.0)
        throw overflow_error("gevrey_norm overflows double range", max_xi);
    return std::exp(log_norm);
}

namespace {

double time_weight(double tau, double p) {
    if (std::isinf(p)) return 1.0;
    if (tau <= 0.0) return 0.0;
    return std::pow(tau, 1.0 / p);
}

double default_index(const Trace& trace, double p) {
    const ScalingData sc = scaling_data(trace.spec);
    return std::isinf(p) ? sc.s_crit : sc.s_crit + 2.0 / p;
}

} // namespace

KatoNorm kato_norm(const Trace& trace, double p, std::optional<double> s, double t_origin) {
    trace.check_invariants();
    const double index = s.value_or(default_index(trace, p));
    KatoNorm out;
    std::size_t arg = 0;
    std::size_t first_positive = trace.times.size();
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double tau = trace.times[i] - t_origin;
        if (tau < 0.0) continue;
        if (tau > 0.0 && first_positive == trace.times.size()) first_positive = i;
        const double w = std::isinf(p) ? 1.0 : time_weight(tau, p);
        if (w == 0.0) continue;
        const double v = w * sobolev_norm(trace.snapshots[i], index);
        if (v > out.value) {
            out.value = v;
            out.argmax_time = trace.times[i];
            arg = i;
        }
    }
    const std::size_t last = trace.times.size() - 1;
    out.argmax_at_grid_endpoint =
        out.value > 0.0 && (arg == first_positive || arg == last) && first_positive != last;
    return out;
}

NormSeries kato_norm_series(const Trace& trace, double p, std::optional<double> s,
                            double t_origin) {
    trace.check_invariants();
    const double index = s.value_or(default_index(trace, p));
    NormSeries out;
    out.norm_id = "kato(p=" + std::to_string(p) + ",s=" + std::to_string(index) + ")";
    double running = 0.0;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double tau = trace.times[i] - t_origin;
        if (tau < 0.0) continue;
        const double w = std::isinf(p) ? 1.0 : time_weight(tau, p);
        if (w > 0.0) running = std::max(running, w * sobolev_norm(trace.snapshots[i], index));
        out.times.push_back(trace.times[i]);
        out.values.push_back(running);
    }
    return out;
}

namespace {

/// Collapsed spectrum profile: distinct |xi|^2 with summed Sobolev weights.
struct HeatProfile {
    std::vector<double> xi_sq;
    std::vector<double> weight; // |xi|^{2s} |coeff|^2 cell, summed

    double value_sq(double t, double eps) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < xi_sq.size(); ++i)
            sum += weight[i] * std::exp(-2.0 * eps * t * xi_sq[i]);
        return sum;
    }
};

HeatProfile build_profile(const SpectralField& f, double s) {
    const Grid& g = f.grid();
    const double cell = g.cell_volume();
    std::map<long long, double> acc; // key: |m|^2, exact on the integer lattice
    const double unit = 2.0 * M_PI / g.period();
    for (int j = 0; j < f.components(); ++j) {
        auto c = f.component(j);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double xi = g.xi_norm(i);
            if (xi == 0.0) continue;
            const double a2 = std::norm(c[i]);
            if (a2 == 0.0) continue;
            const auto m = g.lattice_vector(i);
            const long long msq = static_cast<long long>(m[0]) * m[0] +
                                  static_cast<long long>(m[1]) * m[1] +
                                  static_cast<long long>(m[2]) * m[2];
            acc[msq] += std::pow(xi, 2.0 * s) * a2 * cell;
        }
    }
    HeatProfile p;
    p.xi_sq.reserve(acc.size());
    p.weight.reserve(acc.size());
    for (const auto& [msq, w] : acc) {
        p.xi_sq.push_back(unit * unit * static_cast<double>(msq));
        p.weight.push_back(w);
    }
    return p;
}

} // namespace

double heat_flow_kato_norm(const SpectralField& U0, double eps, double p, double s, double T,
                           int points_per_decade, int decades) {
    if (!(eps > 0.0) || eps >= 1.0) throw invalid_input("heat_flow_kato_norm: eps in (0,1)");
    if (!(T > 0.0)) throw invalid_input("heat_flow_kato_norm: T must be positive");
    if (points_per_decade < 64) points_per_decade = 64;

    const HeatProfile prof = build_profile(U0, s);
    if (prof.xi_sq.empty()) return 0.0;

    const auto g_of = [&](double t) {
        return time_weight(t, p) * std::sqrt(prof.value_sq(t, eps));
    };

    // dense log grid over `decades` below T, endpoint T included
    const int n = points_per_decade * decades;
    double best = g_of(T);
    int best_i = n;
    for (int i = 0; i < n; ++i) {
        const double t = T * std::pow(10.0, -static_cast<double>(decades) * (n - i) / n);
        const double v = g_of(t);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const auto t_at = [&](int i) {
        return T * std::pow(10.0, -static_cast<double>(decades) * (n - i) / n);
    };

    // golden-section refinement on log t around the discrete argmax
    double lo = t_at(std::max(0, best_i - 1));
    double hi = best_i >= n ? T : t_at(std::min(n, best_i + 1));
    if (hi > lo) {
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = std::log(lo), b = std::log(hi);
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = g_of(std::exp(c)), fd = g_of(std::exp(d));
        for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = g_of(std::exp(c));
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = g_of(std::exp(d));
            }
        }
        best = std::max({best, fc, fd});
    }
    return best;
}

double heat_flow_subcritical_bound_constant(const SpectralField& U0, double s_crit, double alpha,
                                            double delta, double p, double eps,
                                            const std::vector<double>& T_list) {
    if (!(delta > 0.0) || delta >= alpha)
        throw invalid_input("subcritical bound: delta must lie in (0, alpha)");
    if (T_list.empty()) throw invalid_input("subcritical bound: empty T list");
    const double denom_norm = sobolev_norm(U0, s_crit + delta);
    if (denom_norm == 0.0) throw invalid_input("subcritical bound: zero initial data");
    const double s_p = s_crit + 2.0 / p;
    double worst = 0.0;
    for (double T : T_list) {
        const double num = heat_flow_kato_norm(U0, eps, p, s_p, T);
        worst = std::max(worst, num / (std::pow(T, 0.5 * delta) * denom_norm));
    }
    return worst;
}

double dyadic_eq_norm(const Trace& trace, double q) {
    trace.check_invariants();
    const Grid& g = trace.snapshots.front().grid();
    const double cell = g.cell_volume();

    // dyadic index per mode, j = floor(log2 |xi|)
    std::map<int, std::vector<double>> shell_l2_sq; // j -> per-snapshot sum
    const std::size_t S = trace.samples();
    for (std::size_t t = 0; t < S; ++t) {
        const auto& f = trace.snapshots[t];
        for (int c = 0; c < f.components(); ++c) {
            auto coeffs = f.component(c);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double xi = g.xi_norm(i);
                if (xi == 0.0) continue;
                const double a2 = std::norm(coeffs[i]);
                if (a2 == 0.0) continue;
                const int j = static_cast<int>(std::floor(std::log2(xi)));
                auto& v = shell_l2_sq[j];
                if (v.empty()) v.assign(S, 0.0);
                v[t] += a2 * cell;
            }
        }
    }

    double total_sq = 0.0;
    for (const auto& [j, l2sq] : shell_l2_sq) {
        double time_norm;
        if (std::isinf(q)) {
            time_norm = 0.0;
            for (double v : l2sq) time_norm = std::max(time_norm, std::sqrt(v));
        } else {
            // trapezoid of ||Delta_j V(t)||^q on the snapshot grid
            double integral = 0.0;
            for (std::size_t t = 1; t < S; ++t) {
                const double fa = std::pow(std::sqrt(l2sq[t - 1]), q);
                const double fb = std::pow(std::sqrt(l2sq[t]), q);
                integral += 0.5 * (fa + fb) * (trace.times[t] - trace.times[t - 1]);
            }
            time_norm = std::pow(integral, 1.0 / q);
        }
        const double w = std::pow(2.0, j * (0.5 + 2.0 / q));
        total_sq += w * w * time_norm * time_norm;
    }
    return std::sqrt(total_sq);
}

double product_law_ratio(double s, const std::vector<const SpectralField*>& fields) {
    if (fields.size() < 2) throw invalid_input("product law needs at least two fields");
    const Grid& g = fields.front()->grid();
    const int k = static_cast<int>(fields.size());
    const double d = g.dim();
    if (!(s > 0.5 * d - d / k) || !(s < 0.5 * d))
        throw invalid_input("product law: s outside (d/2 - d/k, d/2)");
    double denom = 1.0;
    for (const auto* f : fields) denom *= sobolev_norm(*f, s);
    if (denom == 0.0) throw invalid_input("product law: zero factor");
    const double target = k * s - (k - 1) * 0.5 * d;
    return sobolev_norm(dealiased_product(fields), target) / denom;
}

} // namespace parasol

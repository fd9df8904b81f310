#include <algorithm>
#include <array>
#include <cmath>

#include "parasol/analyticity.hpp"
#include "parasol/errors.hpp"

namespace parasol {

namespace {

// dense normal-equation solve, n <= 4, partial pivoting
bool solve_small(int n, std::array<std::array<double, 5>, 4>& aug) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
        if (std::abs(aug[piv][col]) < 1e-300) return false;
        std::swap(aug[col], aug[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = aug[r][col] / aug[col][col];
            for (int c = col; c <= n; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    for (int r = 0; r < n; ++r) aug[r][4] = aug[r][n] / aug[r][r];
    return true;
}

struct FitResult {
    bool ok = false;
    double c = 0.0, alpha = 0.0, delta = 0.0, gamma = 0.0, rms = 0.0;
};

// least squares of y ~ c - alpha log x - delta x [- gamma x^2],
// optionally with delta pinned to zero
FitResult fit_window(const std::vector<double>& xs, const std::vector<double>& ys,
                     bool gaussian, bool pin_delta) {
    const int base = pin_delta ? 2 : 3;
    const int n = base + (gaussian ? 1 : 0);
    std::array<std::array<double, 5>, 4> aug{};
    for (auto& row : aug) row.fill(0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::array<double, 4> row{1.0, -std::log(xs[i]), -xs[i], -xs[i] * xs[i]};
        if (pin_delta) row = {1.0, -std::log(xs[i]), -xs[i] * xs[i], 0.0};
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) aug[r][c] += row[r] * row[c];
            aug[r][n] += row[r] * ys[i];
        }
    }
    FitResult out;
    std::array<std::array<double, 5>, 4> work = aug;
    if (!solve_small(n, work)) return out;
    out.ok = true;
    out.c = work[0][4];
    out.alpha = work[1][4];
    if (pin_delta) {
        out.delta = 0.0;
        out.gamma = gaussian ? work[2][4] : 0.0;
    } else {
        out.delta = work[2][4];
        out.gamma = gaussian ? work[3][4] : 0.0;
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit = out.c - out.alpha * std::log(xs[i]) - out.delta * xs[i] -
                           out.gamma * xs[i] * xs[i];
        ss += (ys[i] - fit) * (ys[i] - fit);
    }
    out.rms = std::sqrt(ss / xs.size());
    return out;
}

} // namespace

RadiusEstimate estimate_radius_from_shells(const ShellSpectrum& shells, double truncation_radius,
                                           const RadiusFitOptions& opts) {
    RadiusEstimate est;
    double peak = 0.0;
    for (double v : shells.shell_max) peak = std::max(peak, v);
    if (peak <= 0.0) return est;

    const double floor_value = opts.noise_floor_rel * peak;
    const double xi_cap = opts.window_fraction * truncation_radius;

    std::vector<double> xs, ys;
    bool stopped_by_floor = false;
    for (std::size_t i = 0; i < shells.shells(); ++i) {
        if (shells.mode_count[i] == 0) continue;
        if (shells.argmax_xi[i] > xi_cap) break;
        if (shells.shell_max[i] <= floor_value) {
            // below the measurement floor: stop the window here
            stopped_by_floor = true;
            break;
        }
        xs.push_back(shells.argmax_xi[i]);
        ys.push_back(std::log(shells.shell_max[i]));
    }
    est.floor_flag = stopped_by_floor;
    est.window_shells = xs.size();
    if (xs.size() < static_cast<std::size_t>(opts.min_shells)) return est; // unresolved
    est.window_lo_xi = xs.front();
    est.window_hi_xi = xs.back();

    FitResult fit = fit_window(xs, ys, opts.gaussian_term, false);
    if (fit.ok && fit.delta < 0.0) fit = fit_window(xs, ys, opts.gaussian_term, true);
    if (!fit.ok) return est;

    est.resolved = true;
    est.c_fit = fit.c;
    est.alpha_fit = fit.alpha;
    est.delta_fit = std::max(0.0, fit.delta);
    est.gamma_fit = fit.gamma;
    est.residual = fit.rms;
    return est;
}

RadiusEstimate estimate_radius(const SpectralField& f, const RadiusFitOptions& opts) {
    return estimate_radius_from_shells(shell_decompose(f, ShellPolicy::Unit),
                                       f.grid().truncation_radius(), opts);
}

} // namespace parasol

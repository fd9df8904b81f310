#include "parasol/system.hpp"

#include <fftw3.h>

#include <cmath>
#include <numeric>
#include <string>

#include "fft_internal.hpp"
#include "parasol/errors.hpp"

namespace parasol {

void SystemSpec::validate() const {
    if (d < 1 || d > 3) throw invalid_input("system dimension must be 1, 2 or 3");
    if (N < 1) throw invalid_input("system needs at least one component");
    if (k < 2) throw invalid_input("nonlinearity order k must be >= 2");
    if (beta < 0.0 || beta >= 2.0) throw invalid_input("multiplier degree beta must lie in [0,2)");
    for (const auto& e : multipliers) {
        if (e.component < 0 || e.component >= N)
            throw invalid_input("multiplier entry component out of range");
        if (static_cast<int>(e.powers.size()) != N)
            throw invalid_input("multiplier entry powers must have one slot per component");
        const int total = std::accumulate(e.powers.begin(), e.powers.end(), 0);
        if (total != k) throw invalid_input("multiplier entry |ell| != k");
        for (int p : e.powers)
            if (p < 0) throw invalid_input("negative power in multiplier entry");
        if (!e.symbol) throw invalid_input("multiplier entry without symbol");
    }
}

ScalingData scaling_data(const SystemSpec& spec) {
    ScalingData s;
    s.alpha = (2.0 - spec.beta) / (spec.k - 1);
    s.s_crit = 0.5 * spec.d - s.alpha;
    const double lo = 1.0 / spec.k;
    const double hi = static_cast<double>(spec.d) / spec.k;
    s.hypothesis_ok = s.alpha > lo && s.alpha <= hi * (1.0 + 1e-12);
    return s;
}

void ensure_scaling_hypothesis(const SystemSpec& spec) {
    const ScalingData s = scaling_data(spec);
    if (!s.hypothesis_ok)
        throw scaling_hypothesis_error(
            "scaling exponent alpha=" + std::to_string(s.alpha) + " outside (1/k, d/k] = (" +
            std::to_string(1.0 / spec.k) + ", " + std::to_string(double(spec.d) / spec.k) +
            "] for system '" + spec.name + "'");
}

// ---------------------------------------------------------------------------
// nonlinearity evaluation

struct NonlinearityEvaluator::Impl {
    SystemSpec spec;
    GridPtr grid;
    int M = 0;                     // padded extent per axis
    std::vector<int> padded_dims;
    std::size_t padded_total = 0;
    // per entry: retained (flat index, symbol value)
    std::vector<std::vector<std::pair<std::uint32_t, cplx>>> tables;
    // scratch, mutable across evaluate calls
    mutable std::vector<std::vector<cplx>> phys; // one per component
    mutable std::vector<cplx> padded, prod, spec_buf;
};

NonlinearityEvaluator::NonlinearityEvaluator(const SystemSpec& spec, GridPtr grid)
    : impl_(std::make_unique<Impl>()) {
    spec.validate();
    if (!grid) throw invalid_input("null grid");
    if (spec.d != grid->dim())
        throw invalid_input("system dimension does not match grid dimension");
    if (spec.truncation_radius > 0.0 &&
        std::abs(spec.truncation_radius - grid->truncation_radius()) >
            1e-12 * spec.truncation_radius)
        throw invalid_input("system truncation radius disagrees with grid");

    impl_->spec = spec;
    impl_->grid = grid;
    impl_->M = fft::padded_extent(*grid, spec.k);
    impl_->padded_dims.assign(static_cast<std::size_t>(grid->dim()), impl_->M);
    impl_->padded_total = 1;
    for (int i = 0; i < grid->dim(); ++i)
        impl_->padded_total *= static_cast<std::size_t>(impl_->M);

    const std::size_t zero = grid->flat_index({0, 0, 0});
    impl_->tables.resize(spec.multipliers.size());
    for (std::size_t e = 0; e < spec.multipliers.size(); ++e) {
        const auto& entry = spec.multipliers[e];
        auto& table = impl_->tables[e];
        for (std::size_t flat = 0; flat < grid->size(); ++flat) {
            if (!grid->retained(flat)) continue;
            cplx v;
            if (flat == zero) {
                v = entry.symbol_at_zero;
            } else {
                v = entry.symbol(grid->wavenumber(flat), grid->xi_norm(flat));
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw overflow_error("system symbol not finite at retained mode",
                                         grid->xi_norm(flat));
            }
            if (v != cplx(0.0, 0.0)) table.emplace_back(static_cast<std::uint32_t>(flat), v);
        }
    }
}

NonlinearityEvaluator::~NonlinearityEvaluator() = default;
NonlinearityEvaluator::NonlinearityEvaluator(NonlinearityEvaluator&&) noexcept = default;
NonlinearityEvaluator& NonlinearityEvaluator::operator=(NonlinearityEvaluator&&) noexcept =
    default;

const SystemSpec& NonlinearityEvaluator::spec() const { return impl_->spec; }

SpectralField NonlinearityEvaluator::evaluate(const SpectralField& U) const {
    auto& im = *impl_;
    const Grid& g = *im.grid;
    if (!U.grid().compatible(g)) throw invalid_input("field grid does not match system grid");
    if (U.components() != im.spec.N)
        throw invalid_input("field component count does not match system");

    SpectralField out(U.grid_ptr(), im.spec.N);
    if (im.spec.multipliers.empty()) return out;

    // physical samples of each component on the padded cube, once
    im.phys.resize(static_cast<std::size_t>(im.spec.N));
    for (int c = 0; c < im.spec.N; ++c) {
        fft::embed_padded(g, U.component(c), im.M, im.padded);
        im.phys[c].resize(im.padded_total);
        fft::c2c(im.padded_dims, FFTW_BACKWARD, im.padded.data(), im.phys[c].data());
    }

    im.prod.resize(im.padded_total);
    im.spec_buf.resize(g.size());
    for (std::size_t e = 0; e < im.spec.multipliers.size(); ++e) {
        const auto& entry = im.spec.multipliers[e];
        bool first = true;
        for (int c = 0; c < im.spec.N; ++c) {
            for (int rep = 0; rep < entry.powers[c]; ++rep) {
                if (first) {
                    std::copy(im.phys[c].begin(), im.phys[c].end(), im.prod.begin());
                    first = false;
                } else {
                    for (std::size_t i = 0; i < im.padded_total; ++i) im.prod[i] *= im.phys[c][i];
                }
            }
        }
        fft::c2c(im.padded_dims, FFTW_FORWARD, im.prod.data(), im.padded.data());
        fft::extract_padded(g, im.M, im.padded, im.spec_buf);

        auto target = out.component(entry.component);
        for (const auto& [flat, sym] : im.tables[e]) target[flat] += sym * im.spec_buf[flat];
    }

    if (im.spec.hermitian_cleanup) out.hermitianize();
    return out;
}

SpectralField evaluate_nonlinearity(const SystemSpec& spec, const SpectralField& U) {
    NonlinearityEvaluator eval(spec, U.grid_ptr());
    return eval.evaluate(U);
}

// ---------------------------------------------------------------------------
// builtin systems

SystemSpec builtin_navier_stokes(int d) {
    if (d != 2 && d != 3) throw invalid_input("Navier-Stokes builtin supports d = 2 or 3");
    SystemSpec s;
    s.name = "navier-stokes";
    s.d = d;
    s.N = d;
    s.k = 2;
    s.beta = 1.0;
    // -[P div(u (x) u)]_j = -i sum_{a,b} (delta_ja - xi_j xi_a/|xi|^2) xi_b (u_a u_b)^
    // collected over unordered pairs {a,b}
    for (int j = 0; j < d; ++j) {
        for (int a = 0; a < d; ++a) {
            for (int b = a; b < d; ++b) {
                MultiplierEntry e;
                e.component = j;
                e.powers.assign(static_cast<std::size_t>(d), 0);
                e.powers[a] += 1;
                e.powers[b] += 1;
                e.symbol = [j, a, b](const std::array<double, 3>& xi, double xin) -> cplx {
                    const double inv_sq = 1.0 / (xin * xin);
                    const auto proj = [&](int r, int c) {
                        return (r == c ? 1.0 : 0.0) - xi[r] * xi[c] * inv_sq;
                    };
                    double v = proj(j, a) * xi[b];
                    if (a != b) v += proj(j, b) * xi[a];
                    return cplx(0.0, -v);
                };
                e.symbol_at_zero = cplx(0.0, 0.0);
                s.multipliers.push_back(std::move(e));
            }
        }
    }
    return s;
}

SystemSpec builtin_cubic_heat(int d, int sign) {
    if (sign != 1 && sign != -1) throw invalid_input("cubic heat sign must be +1 or -1");
    SystemSpec s;
    s.name = sign < 0 ? "cubic-heat" : "cubic-heat-focusing";
    s.d = d;
    s.N = 1;
    s.k = 3;
    s.beta = 0.0;
    MultiplierEntry e;
    e.component = 0;
    e.powers = {3};
    const double sg = static_cast<double>(sign);
    e.symbol = [sg](const std::array<double, 3>&, double) { return cplx(sg, 0.0); };
    e.symbol_at_zero = cplx(sg, 0.0);
    s.multipliers.push_back(std::move(e));
    return s;
}

SystemSpec builtin_burgers() {
    SystemSpec s;
    s.name = "burgers";
    s.d = 1;
    s.N = 1;
    s.k = 2;
    s.beta = 1.0;
    MultiplierEntry e;
    e.component = 0;
    e.powers = {2};
    // -(1/2) d_x(u^2) = -(i xi / 2) (u^2)^
    e.symbol = [](const std::array<double, 3>& xi, double) { return cplx(0.0, -0.5 * xi[0]); };
    e.symbol_at_zero = cplx(0.0, 0.0);
    s.multipliers.push_back(std::move(e));
    return s;
}

double symbol_homogeneity_defect(const SystemSpec& spec, const Grid& grid) {
    double worst = 0.0;
    const double scale = std::pow(2.0, spec.beta);
    for (const auto& e : spec.multipliers) {
        for (std::size_t flat = 0; flat < grid.size(); ++flat) {
            if (!grid.retained(flat) || grid.xi_norm(flat) == 0.0) continue;
            const auto xi = grid.wavenumber(flat);
            const std::array<double, 3> xi2{2.0 * xi[0], 2.0 * xi[1], 2.0 * xi[2]};
            const cplx v1 = e.symbol(xi, grid.xi_norm(flat));
            const cplx v2 = e.symbol(xi2, 2.0 * grid.xi_norm(flat));
            const double mag = std::max({std::abs(v1), std::abs(v2), 1e-300});
            worst = std::max(worst, std::abs(v2 - scale * v1) / mag);
        }
    }
    return worst;
}

} // namespace parasol

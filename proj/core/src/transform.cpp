#include "parasol/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "fft_internal.hpp"
#include "parasol/errors.hpp"

namespace parasol {

namespace fft {

namespace {

struct PlanKey {
    std::vector<int> dims;
    int sign;
    bool operator<(const PlanKey& o) const {
        return std::tie(dims, sign) < std::tie(o.dims, o.sign);
    }
};

// FFTW planning is not thread-safe; execution of a const plan is.
// FFTW_ESTIMATE keeps plan selection deterministic, FFTW_UNALIGNED lets
// one cached plan run on any caller buffer.
class PlanCache {
public:
    fftw_plan get(const std::vector<int>& dims, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        const PlanKey key{dims, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t total = 1;
        for (int n : dims) total *= static_cast<std::size_t>(n);
        std::vector<cplx> in(total), out(total);
        fftw_plan p = fftw_plan_dft(
            static_cast<int>(dims.size()), dims.data(),
            reinterpret_cast<fftw_complex*>(in.data()),
            reinterpret_cast<fftw_complex*>(out.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

} // namespace

void c2c(const std::vector<int>& dims, int sign, const cplx* in, cplx* out) {
    fftw_plan p = cache().get(dims, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

int fft_friendly(int n) {
    for (;; ++n) {
        int m = n;
        for (int f : {2, 3, 5})
            while (m % f == 0) m /= f;
        if (m == 1) return n;
    }
}

int padded_extent(const Grid& g, int k) {
    const int h = g.max_axis_index();
    return fft_friendly((k + 1) * h + 1);
}

void embed_padded(const Grid& g, std::span<const cplx> coeffs, int M, std::vector<cplx>& padded) {
    std::size_t total = 1;
    for (int i = 0; i < g.dim(); ++i) total *= static_cast<std::size_t>(M);
    padded.assign(total, cplx(0.0, 0.0));
    const std::size_t n = g.size();
    for (std::size_t flat = 0; flat < n; ++flat) {
        if (!g.retained(flat)) continue;
        const auto m = g.lattice_vector(flat);
        std::size_t slot = 0;
        for (int i = 0; i < g.dim(); ++i) {
            const int s = m[i] >= 0 ? m[i] : m[i] + M;
            slot = slot * M + static_cast<std::size_t>(s);
        }
        padded[slot] = coeffs[flat];
    }
}

void extract_padded(const Grid& g, int M, const std::vector<cplx>& padded,
                    std::span<cplx> coeffs) {
    double scale = 1.0;
    for (int i = 0; i < g.dim(); ++i) scale /= M;
    const std::size_t n = g.size();
    for (std::size_t flat = 0; flat < n; ++flat) {
        if (!g.retained(flat)) {
            coeffs[flat] = cplx(0.0, 0.0);
            continue;
        }
        const auto m = g.lattice_vector(flat);
        std::size_t slot = 0;
        for (int i = 0; i < g.dim(); ++i) {
            const int s = m[i] >= 0 ? m[i] : m[i] + M;
            slot = slot * M + static_cast<std::size_t>(s);
        }
        coeffs[flat] = padded[slot] * scale;
    }
}

} // namespace fft

SpectralField forward_transform(const PhysicalField& u, GridPtr grid) {
    if (!grid) throw invalid_input("null grid");
    const std::size_t n = grid->size();
    if (u.components < 1 || u.values.size() != static_cast<std::size_t>(u.components) * n)
        throw invalid_input("physical sample count does not match grid");

    const std::vector<int> dims(static_cast<std::size_t>(grid->dim()), grid->points_per_axis());
    SpectralField out(grid, u.components);
    std::vector<cplx> buf(n), spec(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (int j = 0; j < u.components; ++j) {
        for (std::size_t i = 0; i < n; ++i) buf[i] = cplx(u.values[j * n + i], 0.0);
        fft::c2c(dims, FFTW_FORWARD, buf.data(), spec.data());
        auto c = out.component(j);
        for (std::size_t i = 0; i < n; ++i) c[i] = spec[i] * scale;
    }
    out.truncate();
    return out;
}

PhysicalField inverse_transform(const SpectralField& f) {
    const Grid& g = f.grid();
    const std::size_t n = g.size();
    const std::vector<int> dims(static_cast<std::size_t>(g.dim()), g.points_per_axis());

    PhysicalField out;
    out.grid = f.grid_ptr();
    out.components = f.components();
    out.values.resize(static_cast<std::size_t>(f.components()) * n);
    std::vector<cplx> buf(n);
    for (int j = 0; j < f.components(); ++j) {
        auto c = f.component(j);
        fft::c2c(dims, FFTW_BACKWARD, c.data(), buf.data());
        for (std::size_t i = 0; i < n; ++i) out.values[j * n + i] = buf[i].real();
    }
    return out;
}

SpectralField apply_multiplier(const SpectralField& f, const Symbol& symbol, cplx value_at_zero) {
    const Grid& g = f.grid();
    const std::size_t n = g.size();
    const std::size_t zero = g.flat_index({0, 0, 0});
    SpectralField out(f.grid_ptr(), f.components());
    std::vector<cplx> sym(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        if (!g.retained(i)) continue;
        if (i == zero) {
            sym[i] = value_at_zero;
            continue;
        }
        const cplx v = symbol(g.wavenumber(i), g.xi_norm(i));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw overflow_error("multiplier symbol not finite at retained mode", g.xi_norm(i));
        sym[i] = v;
    }
    for (int j = 0; j < f.components(); ++j) {
        auto in = f.component(j);
        auto o = out.component(j);
        for (std::size_t i = 0; i < n; ++i) o[i] = sym[i] * in[i];
    }
    return out;
}

SpectralField dealiased_product(const std::vector<const SpectralField*>& factors) {
    if (factors.size() < 2) throw invalid_input("product needs at least two factors");
    const SpectralField& first = *factors.front();
    const Grid& g = first.grid();
    for (const SpectralField* f : factors) {
        if (!f) throw invalid_input("null factor");
        if (!f->grid().compatible(g)) throw invalid_input("product factors on incompatible grids");
        if (f->components() != 1)
            throw invalid_input("dealiased_product multiplies scalar fields; "
                                "pick components before multiplying");
    }

    const int k = static_cast<int>(factors.size());
    const int M = fft::padded_extent(g, k);
    const std::vector<int> dims(static_cast<std::size_t>(g.dim()), M);
    std::size_t total = 1;
    for (int i = 0; i < g.dim(); ++i) total *= static_cast<std::size_t>(M);

    std::vector<cplx> padded, phys(total), acc;
    for (int f = 0; f < k; ++f) {
        fft::embed_padded(g, factors[f]->component(0), M, padded);
        fft::c2c(dims, FFTW_BACKWARD, padded.data(), phys.data());
        if (f == 0) {
            acc = phys;
        } else {
            for (std::size_t i = 0; i < total; ++i) acc[i] *= phys[i];
        }
    }
    fft::c2c(dims, FFTW_FORWARD, acc.data(), padded.data());

    SpectralField out(first.grid_ptr(), 1);
    fft::extract_padded(g, M, padded, out.component(0));
    return out;
}

void leray_project(SpectralField& f) {
    const Grid& g = f.grid();
    if (f.components() != g.dim())
        throw invalid_input("Leray projection needs components == dim");
    const std::size_t n = g.size();
    const std::size_t zero = g.flat_index({0, 0, 0});
    const int d = g.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (i == zero) {
            for (int j = 0; j < d; ++j) f.at(j, i) = cplx(0.0, 0.0);
            continue;
        }
        if (!g.retained(i)) continue;
        const auto xi = g.wavenumber(i);
        double sq = 0.0;
        for (int j = 0; j < d; ++j) sq += xi[j] * xi[j];
        cplx dot(0.0, 0.0);
        for (int j = 0; j < d; ++j) dot += xi[j] * f.at(j, i);
        dot /= sq;
        for (int j = 0; j < d; ++j) f.at(j, i) -= xi[j] * dot;
    }
}

double divergence_linf(const SpectralField& f) {
    const Grid& g = f.grid();
    if (f.components() != g.dim())
        throw invalid_input("divergence needs components == dim");
    const std::size_t n = g.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto xi = g.wavenumber(i);
        cplx dot(0.0, 0.0);
        for (int j = 0; j < g.dim(); ++j) dot += xi[j] * f.at(j, i);
        worst = std::max(worst, std::abs(dot));
    }
    return worst;
}

} // namespace parasol

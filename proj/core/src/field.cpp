#include "parasol/field.hpp"

#include <algorithm>
#include <cmath>

#include "parasol/errors.hpp"

namespace parasol {

SpectralField::SpectralField(GridPtr grid, int components)
    : grid_(std::move(grid)), ncomp_(components) {
    if (!grid_) throw invalid_input("null grid");
    if (ncomp_ < 1) throw invalid_input("field needs at least one component");
    data_.assign(static_cast<std::size_t>(ncomp_) * grid_->size(), cplx(0.0, 0.0));
}

std::span<cplx> SpectralField::component(int j) {
    return {data_.data() + static_cast<std::size_t>(j) * grid_->size(), grid_->size()};
}

std::span<const cplx> SpectralField::component(int j) const {
    return {data_.data() + static_cast<std::size_t>(j) * grid_->size(), grid_->size()};
}

void SpectralField::truncate() {
    const std::size_t n = grid_->size();
    for (int j = 0; j < ncomp_; ++j) {
        auto c = component(j);
        for (std::size_t i = 0; i < n; ++i)
            if (!grid_->retained(i)) c[i] = cplx(0.0, 0.0);
    }
}

void SpectralField::remove_mean() {
    const std::size_t zero = grid_->flat_index({0, 0, 0});
    for (int j = 0; j < ncomp_; ++j) component(j)[zero] = cplx(0.0, 0.0);
}

void SpectralField::hermitianize() {
    const std::size_t n = grid_->size();
    for (int j = 0; j < ncomp_; ++j) {
        auto c = component(j);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ci = grid_->conjugate_index(i);
            if (ci < i) continue; // each pair once
            const cplx avg = 0.5 * (c[i] + std::conj(c[ci]));
            c[i] = avg;
            c[ci] = std::conj(avg);
        }
    }
}

bool SpectralField::is_hermitian(double tol) const {
    const std::size_t n = grid_->size();
    const double scale = std::max(max_abs(), 1e-300);
    for (int j = 0; j < ncomp_; ++j) {
        auto c = component(j);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ci = grid_->conjugate_index(i);
            if (std::abs(c[i] - std::conj(c[ci])) > tol * scale) return false;
        }
    }
    return true;
}

bool SpectralField::is_mean_free(double tol) const {
    const std::size_t zero = grid_->flat_index({0, 0, 0});
    for (int j = 0; j < ncomp_; ++j)
        if (std::abs(component(j)[zero]) > tol) return false;
    return true;
}

double SpectralField::truncation_violation() const {
    const std::size_t n = grid_->size();
    double worst = 0.0;
    for (int j = 0; j < ncomp_; ++j) {
        auto c = component(j);
        for (std::size_t i = 0; i < n; ++i)
            if (!grid_->retained(i)) worst = std::max(worst, std::abs(c[i]));
    }
    return worst;
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const cplx& c : data_) m = std::max(m, std::abs(c));
    return m;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (!grid_->compatible(o.grid()) || ncomp_ != o.ncomp_)
        throw invalid_input("field sum on incompatible grids");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (!grid_->compatible(o.grid()) || ncomp_ != o.ncomp_)
        throw invalid_input("field difference on incompatible grids");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(cplx c) {
    for (auto& v : data_) v *= c;
    return *this;
}

} // namespace parasol

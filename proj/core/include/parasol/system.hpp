#ifndef PARASOL_SYSTEM_HPP
#define PARASOL_SYSTEM_HPP

#include <memory>
#include <string>
#include <vector>

#include "parasol/field.hpp"
#include "parasol/transform.hpp"

namespace parasol {

/// One term of the nonlinearity: component j receives
/// symbol(D) applied to the monomial prod_c U_c^{powers[c]}.
/// Unordered monomials must be pre-symmetrized (the symbol carries the
/// combinatorial sum over orderings).
struct MultiplierEntry {
    int component = 0;
    std::vector<int> powers;
    Symbol symbol;
    cplx symbol_at_zero{0.0, 0.0};
};

/// An instance of the semi-linear parabolic family: d_t U - Lap U = P(U)
/// with P_j(U) = sum_ell A_{j,ell}(D) U^ell truncated to the Fourier
/// ball of the grid.  beta is the common homogeneity degree of the
/// symbols and k the order of every monomial.
struct SystemSpec {
    std::string name;
    int d = 1;
    int N = 1;
    int k = 2;
    double beta = 0.0;
    /// Declared Galerkin radius; 0 inherits the grid's truncation radius.
    double truncation_radius = 0.0;
    std::vector<MultiplierEntry> multipliers;
    /// Re-symmetrize coefficients after each nonlinearity evaluation
    /// (real-valued systems; keeps Hermitian drift at zero).
    bool hermitian_cleanup = true;

    void validate() const;
};

/// Scaling exponent alpha = (2-beta)/(k-1) and critical index
/// s_crit = d/2 - alpha.  hypothesis_ok records whether alpha lies in
/// (1/k, d/k], the admissibility window of the local theory; values are
/// reported either way.
struct ScalingData {
    double alpha = 0.0;
    double s_crit = 0.0;
    bool hypothesis_ok = false;
};

ScalingData scaling_data(const SystemSpec& spec);

/// Throws scaling_hypothesis_error when alpha is outside (1/k, d/k].
void ensure_scaling_hypothesis(const SystemSpec& spec);

/// Reusable evaluator for P(U): caches padded-transform plans, symbol
/// tables and scratch buffers for one (spec, grid) pair.
class NonlinearityEvaluator {
public:
    NonlinearityEvaluator(const SystemSpec& spec, GridPtr grid);
    ~NonlinearityEvaluator();
    NonlinearityEvaluator(NonlinearityEvaluator&&) noexcept;
    NonlinearityEvaluator& operator=(NonlinearityEvaluator&&) noexcept;

    SpectralField evaluate(const SpectralField& U) const;
    const SystemSpec& spec() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot P(U); builds a NonlinearityEvaluator internally.
SpectralField evaluate_nonlinearity(const SystemSpec& spec, const SpectralField& U);

/// 2d/3d incompressible Navier-Stokes with the pressure eliminated by
/// composing the Leray projector into the quadratic symbols:
/// P_j(u) = -[P div(u (x) u)]_j.  k=2, beta=1, N=d.
SystemSpec builtin_navier_stokes(int d);

/// Scalar cubic heat equation, P(u) = sign * u^3 (default defocusing,
/// sign=-1).  k=3, beta=0, N=1.
SystemSpec builtin_cubic_heat(int d, int sign = -1);

/// 1d Burgers in conservation form, P(u) = -(1/2) d_x(u^2).  k=2, beta=1.
SystemSpec builtin_burgers();

/// Numerical spot-check that every symbol is homogeneous of degree beta:
/// max over sampled lattice points of |symbol(2 xi) - 2^beta symbol(xi)|
/// relative to the symbol scale.
double symbol_homogeneity_defect(const SystemSpec& spec, const Grid& grid);

} // namespace parasol

#endif

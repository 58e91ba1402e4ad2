#pragma once

#include "odm/grid.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace odm {

using Complex = std::complex<double>;

enum class Representation {
    KvN,     ///< Ψ(x,p); |Ψ|² is the phase-space density
    Chi,     ///< χ(x,λp); the rotated density matrix, the propagated object
    Wigner,  ///< W(x,p); real quasi-probability, ΣW·dx·dp = 1
};

std::string representation_name(Representation r);
Representation representation_from_name(const std::string& name);

/// Complex amplitude field on a 2-D periodic grid, row-major and x-major.
struct PhaseSpaceState {
    Grid2D grid;
    Representation repr = Representation::KvN;
    std::vector<Complex> amp;
    double time = 0.0;

    Complex& at(int ix, int iy) { return amp[grid.index(ix, iy)]; }
    const Complex& at(int ix, int iy) const { return amp[grid.index(ix, iy)]; }

    /// Σ|amp|²·cell — the quantity the unitary split steps conserve.
    double quadratic_norm() const;
    /// Physical normalization: Σ|Ψ|²·cell (KvN), ΣW·cell (Wigner),
    /// Σ_x Re χ(x, λp=0)·dx (Chi; equals the trace of the density matrix).
    double physical_norm() const;
};

/// One-dimensional complex wave function ψ(x).
struct QuantumState {
    Grid1D grid;
    std::vector<Complex> amp;
    double time = 0.0;

    double quadratic_norm() const;  // Σ|ψ|²·dx
};

struct GaussianSpec {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma_x = 1.0;
    double sigma_p = 1.0;
};

/// KvN amplitude √ρ with zero phase for the Gaussian density ρ; normalized.
PhaseSpaceState make_gaussian_kvn(const Grid2D& grid, const GaussianSpec& spec);

/// Complex Gaussian wave packet with momentum boost phase; |ψ|² has standard
/// deviation sigma_x. The momentum spread is ħ/(2σx).
QuantumState make_gaussian_quantum(const Grid1D& grid, const GaussianSpec& spec, double hbar);

/// χ(x,λp) state whose Wigner function is the Gaussian of `spec`, on the grid
/// conjugate-linked to `x_axis` (ny = nx, λp ∈ [−Lx/(2ħκ), Lx/(2ħκ))).
/// Pure when σx·σp = ħκ/2 (built through the quantum route); a valid mixed
/// state when σx·σp > ħκ/2; DomainError below the uncertainty floor.
///
/// When `lambda_extent > 0` the λp box is [−extent/2, extent/2) instead of
/// the linked one and the state is evaluated from the closed form (the λp
/// resolution must track the coherence width 1/σp, which the linked grid
/// loses at small κ).
PhaseSpaceState make_gaussian_chi(const Grid1D& x_axis, const GaussianSpec& spec, double kappa,
                                  double hbar, double lambda_extent = 0.0);

/// Ψ = √ρ with zero phase from a nonnegative phase-space density sampled on
/// the grid; DomainError on negative input. Does not renormalize.
PhaseSpaceState kvn_from_distribution(const Grid2D& grid, std::span<const double> rho);

}  // namespace odm

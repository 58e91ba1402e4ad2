#pragma once

#include "odm/state.hpp"

#include <vector>

namespace odm {

/// Density matrix ρ(u,v) on a square grid (both indices share one axis);
/// row-major, u-major: index = u*n + v.
struct DensityMatrix {
    Grid1D axis;
    std::vector<Complex> rho;

    Complex& at(int u, int v) { return rho[static_cast<std::size_t>(u) * axis.n + v]; }
    const Complex& at(int u, int v) const {
        return rho[static_cast<std::size_t>(u) * axis.n + v];
    }
};

/// ρ(u,v) → W(x,p): rotate to χ(x,λp) = ρ(x − ħκλp/2, x + ħκλp/2) by an
/// exact index shear plus band-limited half-cell translations, then transform
/// along λp. Output is real (to roundoff) for hermitian ρ and integrates to
/// tr ρ. The p-axis is conjugate-linked: dp = 2πħκ/Lu, np = n.
PhaseSpaceState wigner_from_density(const DensityMatrix& rho, double kappa, double hbar);

/// Exact inverse of wigner_from_density (requires the linked grid).
DensityMatrix density_from_wigner(const PhaseSpaceState& wigner, double kappa, double hbar);

/// Pure state: forms ρ(u,v) = ψ(u)ψ*(v), then wigner_from_density.
PhaseSpaceState wigner_from_quantum(const QuantumState& psi, double kappa, double hbar);

/// FFT along the λp axis; grid y-axis relabels to the conjugate p box.
PhaseSpaceState wigner_from_chi(const PhaseSpaceState& chi);
/// Inverse of wigner_from_chi.
PhaseSpaceState chi_from_wigner(const PhaseSpaceState& wigner);

struct Marginals {
    std::vector<double> x;  // ∫W dp
    std::vector<double> p;  // ∫W dx
};

Marginals marginals(const PhaseSpaceState& wigner);

}  // namespace odm

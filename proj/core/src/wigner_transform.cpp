#include "odm/wigner_transform.hpp"

#include "odm/errors.hpp"
#include "odm/fft_util.hpp"

#include <cmath>
#include <numbers>

namespace odm {

namespace {

constexpr double kPi = std::numbers::pi;

void translate_rows_in_x(std::vector<Complex>& data, const Grid1D& x_axis, int ny,
                         const std::vector<double>& shift_per_column, int sign) {
    // f(x) -> f(x - s_j) per column j, via the spectral phase ramp.
    int nx = x_axis.n;
    fft::transform_axis(data, nx, ny, fft::Axis::X, fft::Direction::Forward);
    for (int k = 0; k < nx; ++k) {
        double w = x_axis.freq(k);
        for (int j = 0; j < ny; ++j) {
            double phi = -static_cast<double>(sign) * w * shift_per_column[static_cast<std::size_t>(j)];
            data[static_cast<std::size_t>(k) * ny + j] *= Complex(std::cos(phi), std::sin(phi));
        }
    }
    fft::transform_axis(data, nx, ny, fft::Axis::X, fft::Direction::Backward);
    double inv = 1.0 / nx;
    for (Complex& a : data) a *= inv;
}

}  // namespace

PhaseSpaceState wigner_from_density(const DensityMatrix& rho, double kappa, double hbar) {
    rho.axis.validate("u");
    if (!(kappa > 0.0) || !(hbar > 0.0)) throw DomainError("kappa and hbar must be positive");
    const int n = rho.axis.n;
    if (rho.rho.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw DomainError("density matrix must be square over its axis");

    double heff = hbar * kappa;
    double du = rho.axis.dx();
    double dlam = du / heff;

    // Shear 1 (exact index roll): h(u_a, λ_j) = ρ(u_a, u_a + j̃·du).
    std::vector<Complex> chi(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        for (int j = 0; j < n; ++j) {
            int jt = j - n / 2;
            int b = ((a + jt) % n + n) % n;
            chi[static_cast<std::size_t>(a) * n + j] = rho.at(a, b);
        }
    }

    // Shear 2 (half-cell translations): χ(x, λ_j) = h(x − j̃·du/2, λ_j).
    std::vector<double> shifts(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) shifts[static_cast<std::size_t>(j)] = (j - n / 2) * 0.5 * du;
    translate_rows_in_x(chi, rho.axis, n, shifts, +1);

    // λp -> p: W(x,p) = (dλ/2π) Σ_j χ e^{+ipλ}; centered grids on both sides.
    for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j)
            if ((j & 1) != 0) chi[static_cast<std::size_t>(a) * n + j] *= -1.0;
    fft::transform_axis(chi, n, n, fft::Axis::Y, fft::Direction::Backward);
    double scale = dlam / (2.0 * kPi);
    for (int a = 0; a < n; ++a)
        for (int k = 0; k < n; ++k) {
            double s = (k & 1) != 0 ? -scale : scale;
            chi[static_cast<std::size_t>(a) * n + k] *= s;
        }

    double dp = 2.0 * kPi / (n * dlam);
    Grid2D grid{n, n, rho.axis.min, rho.axis.max, -0.5 * n * dp, 0.5 * n * dp};
    return PhaseSpaceState{grid, Representation::Wigner, std::move(chi), 0.0};
}

DensityMatrix density_from_wigner(const PhaseSpaceState& wigner, double kappa, double hbar) {
    if (wigner.repr != Representation::Wigner)
        throw RepresentationError("density_from_wigner expects a Wigner-tagged state");
    if (!(kappa > 0.0) || !(hbar > 0.0)) throw DomainError("kappa and hbar must be positive");
    const Grid2D& g = wigner.grid;
    if (g.nx != g.ny) throw DomainError("linked Wigner grids are square");
    const int n = g.nx;
    double heff = hbar * kappa;
    double du = g.dx();
    double dp_expected = 2.0 * kPi * heff / (n * du);  // = 2πħκ/Lu
    if (std::abs(g.dy() - dp_expected) > 1e-9 * dp_expected)
        throw DomainError("Wigner grid is not conjugate-linked for this ħκ");

    // p -> λp.
    std::vector<Complex> chi = wigner.amp;
    for (int a = 0; a < n; ++a)
        for (int k = 0; k < n; ++k)
            if ((k & 1) != 0) chi[static_cast<std::size_t>(a) * n + k] *= -1.0;
    fft::transform_axis(chi, n, n, fft::Axis::Y, fft::Direction::Forward);
    double dp = g.dy();
    for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j) {
            double s = (j & 1) != 0 ? -dp : dp;
            chi[static_cast<std::size_t>(a) * n + j] *= s;
        }

    // Undo shear 2.
    Grid1D axis{n, g.x_min, g.x_max};
    std::vector<double> shifts(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) shifts[static_cast<std::size_t>(j)] = (j - n / 2) * 0.5 * du;
    translate_rows_in_x(chi, axis, n, shifts, -1);

    // Undo shear 1.
    DensityMatrix rho{axis, std::vector<Complex>(static_cast<std::size_t>(n) * n)};
    for (int a = 0; a < n; ++a) {
        for (int j = 0; j < n; ++j) {
            int jt = j - n / 2;
            int b = ((a + jt) % n + n) % n;
            rho.at(a, b) = chi[static_cast<std::size_t>(a) * n + j];
        }
    }
    return rho;
}

PhaseSpaceState wigner_from_quantum(const QuantumState& psi, double kappa, double hbar) {
    const int n = psi.grid.n;
    DensityMatrix rho{psi.grid, std::vector<Complex>(static_cast<std::size_t>(n) * n)};
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            rho.at(u, v) = psi.amp[static_cast<std::size_t>(u)] *
                           std::conj(psi.amp[static_cast<std::size_t>(v)]);
    PhaseSpaceState w = wigner_from_density(rho, kappa, hbar);
    w.time = psi.time;
    return w;
}

PhaseSpaceState wigner_from_chi(const PhaseSpaceState& chi) {
    if (chi.repr != Representation::Chi)
        throw RepresentationError("wigner_from_chi expects a Chi-tagged state");
    const Grid2D& g = chi.grid;
    std::vector<Complex> data = chi.amp;
    for (int a = 0; a < g.nx; ++a)
        for (int j = 0; j < g.ny; ++j)
            if ((j & 1) != 0) data[g.index(a, j)] *= -1.0;
    fft::transform_axis(data, g.nx, g.ny, fft::Axis::Y, fft::Direction::Backward);
    double dlam = g.dy();
    double scale = dlam / (2.0 * kPi);
    for (int a = 0; a < g.nx; ++a)
        for (int k = 0; k < g.ny; ++k)
            data[g.index(a, k)] *= (k & 1) != 0 ? -scale : scale;
    double dp = 2.0 * kPi / (g.ny * dlam);
    Grid2D out{g.nx, g.ny, g.x_min, g.x_max, -0.5 * g.ny * dp, 0.5 * g.ny * dp};
    return PhaseSpaceState{out, Representation::Wigner, std::move(data), chi.time};
}

PhaseSpaceState chi_from_wigner(const PhaseSpaceState& wigner) {
    if (wigner.repr != Representation::Wigner)
        throw RepresentationError("chi_from_wigner expects a Wigner-tagged state");
    const Grid2D& g = wigner.grid;
    std::vector<Complex> data = wigner.amp;
    for (int a = 0; a < g.nx; ++a)
        for (int k = 0; k < g.ny; ++k)
            if ((k & 1) != 0) data[g.index(a, k)] *= -1.0;
    fft::transform_axis(data, g.nx, g.ny, fft::Axis::Y, fft::Direction::Forward);
    double dp = g.dy();
    for (int a = 0; a < g.nx; ++a)
        for (int j = 0; j < g.ny; ++j)
            data[g.index(a, j)] *= (j & 1) != 0 ? -dp : dp;
    double dlam = 2.0 * kPi / (g.ny * dp);
    Grid2D out{g.nx, g.ny, g.x_min, g.x_max, -0.5 * g.ny * dlam, 0.5 * g.ny * dlam};
    return PhaseSpaceState{out, Representation::Chi, std::move(data), wigner.time};
}

Marginals marginals(const PhaseSpaceState& wigner) {
    if (wigner.repr != Representation::Wigner)
        throw RepresentationError("marginals expects a Wigner-tagged state");
    const Grid2D& g = wigner.grid;
    Marginals out;
    out.x.assign(static_cast<std::size_t>(g.nx), 0.0);
    out.p.assign(static_cast<std::size_t>(g.ny), 0.0);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            double w = wigner.at(i, j).real();
            out.x[static_cast<std::size_t>(i)] += w * g.dy();
            out.p[static_cast<std::size_t>(j)] += w * g.dx();
        }
    return out;
}

}  // namespace odm

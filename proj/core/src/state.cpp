#include "odm/state.hpp"

#include "odm/errors.hpp"
#include "odm/wigner_transform.hpp"

#include <cmath>
#include <numbers>

namespace odm {

std::string representation_name(Representation r) {
    switch (r) {
        case Representation::KvN: return "kvn";
        case Representation::Chi: return "chi";
        default: return "wigner";
    }
}

Representation representation_from_name(const std::string& name) {
    if (name == "kvn") return Representation::KvN;
    if (name == "chi") return Representation::Chi;
    if (name == "wigner") return Representation::Wigner;
    throw RepresentationError("unknown representation '" + name + "'");
}

double PhaseSpaceState::quadratic_norm() const {
    double acc = 0.0;
    for (const Complex& a : amp) acc += std::norm(a);
    return acc * grid.cell();
}

double PhaseSpaceState::physical_norm() const {
    switch (repr) {
        case Representation::KvN: return quadratic_norm();
        case Representation::Wigner: {
            double acc = 0.0;
            for (const Complex& a : amp) acc += a.real();
            return acc * grid.cell();
        }
        case Representation::Chi: {
            // tr ρ = ∫ χ(x, λp=0) dx; λp = 0 must be a grid point.
            int j0 = static_cast<int>(std::llround(-grid.y_min / grid.dy()));
            if (j0 < 0 || j0 >= grid.ny || std::abs(grid.y(j0)) > 1e-9 * grid.dy() + 1e-300)
                throw DomainError("chi grid does not contain λp = 0");
            double acc = 0.0;
            for (int i = 0; i < grid.nx; ++i) acc += at(i, j0).real();
            return acc * grid.dx();
        }
    }
    return 0.0;
}

double QuantumState::quadratic_norm() const {
    double acc = 0.0;
    for (const Complex& a : amp) acc += std::norm(a);
    return acc * grid.dx();
}

PhaseSpaceState make_gaussian_kvn(const Grid2D& grid, const GaussianSpec& spec) {
    grid.validate();
    if (!(spec.sigma_x > 0.0) || !(spec.sigma_p > 0.0))
        throw DomainError("gaussian widths must be positive");
    PhaseSpaceState state{grid, Representation::KvN, std::vector<Complex>(grid.size()), 0.0};
    for (int i = 0; i < grid.nx; ++i) {
        double gx = (grid.x(i) - spec.x0) / spec.sigma_x;
        for (int j = 0; j < grid.ny; ++j) {
            double gp = (grid.y(j) - spec.p0) / spec.sigma_p;
            double rho = std::exp(-0.5 * (gx * gx + gp * gp));
            state.at(i, j) = std::sqrt(rho);
        }
    }
    double norm = state.quadratic_norm();
    double scale = 1.0 / std::sqrt(norm);
    for (Complex& a : state.amp) a *= scale;
    return state;
}

QuantumState make_gaussian_quantum(const Grid1D& grid, const GaussianSpec& spec, double hbar) {
    grid.validate("x");
    if (!(spec.sigma_x > 0.0)) throw DomainError("gaussian width must be positive");
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    QuantumState state{grid, std::vector<Complex>(static_cast<std::size_t>(grid.n)), 0.0};
    for (int i = 0; i < grid.n; ++i) {
        double dx = grid.at(i) - spec.x0;
        double envelope = std::exp(-dx * dx / (4.0 * spec.sigma_x * spec.sigma_x));
        double phase = spec.p0 * dx / hbar;
        state.amp[static_cast<std::size_t>(i)] =
            envelope * Complex(std::cos(phase), std::sin(phase));
    }
    double scale = 1.0 / std::sqrt(state.quadratic_norm());
    for (Complex& a : state.amp) a *= scale;
    return state;
}

PhaseSpaceState make_gaussian_chi(const Grid1D& x_axis, const GaussianSpec& spec, double kappa,
                                  double hbar, double lambda_extent) {
    x_axis.validate("x");
    if (!(spec.sigma_x > 0.0) || !(spec.sigma_p > 0.0))
        throw DomainError("gaussian widths must be positive");
    if (!(kappa > 0.0) || !(hbar > 0.0)) throw DomainError("kappa and hbar must be positive");
    double heff = hbar * kappa;
    double uncertainty = spec.sigma_x * spec.sigma_p;
    double floor = 0.5 * heff;
    if (uncertainty < floor * (1.0 - 1e-9))
        throw DomainError("sigma_x*sigma_p below the uncertainty floor ħκ/2");

    if (lambda_extent == 0.0 && std::abs(uncertainty - floor) <= 1e-9 * floor) {
        // Minimum-uncertainty case: build the underlying wave packet and
        // transform, so the pure state is bit-for-bit the transform output.
        QuantumState psi = make_gaussian_quantum(x_axis, spec, heff);
        return chi_from_wigner(wigner_from_quantum(psi, kappa, hbar));
    }

    // Closed form: χ(x,λ) = (2πσx²)^{-1/2} e^{-(x-x0)²/(2σx²)}
    //                       · e^{-σp²λ²/2 - i p0 λ}.
    int n = x_axis.n;
    double dlam = lambda_extent > 0.0 ? lambda_extent / n : x_axis.dx() / heff;
    Grid2D grid{n, n, x_axis.min, x_axis.max, -0.5 * n * dlam, 0.5 * n * dlam};
    PhaseSpaceState state{grid, Representation::Chi, std::vector<Complex>(grid.size()), 0.0};
    double amp_norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * spec.sigma_x);
    for (int i = 0; i < n; ++i) {
        double dx = grid.x(i) - spec.x0;
        double gx = amp_norm * std::exp(-dx * dx / (2.0 * spec.sigma_x * spec.sigma_x));
        for (int j = 0; j < n; ++j) {
            double lam = grid.y(j);
            double env = std::exp(-0.5 * spec.sigma_p * spec.sigma_p * lam * lam);
            double phase = -spec.p0 * lam;
            state.at(i, j) = gx * env * Complex(std::cos(phase), std::sin(phase));
        }
    }
    double trace = state.physical_norm();
    for (Complex& a : state.amp) a /= trace;
    return state;
}

PhaseSpaceState kvn_from_distribution(const Grid2D& grid, std::span<const double> rho) {
    grid.validate();
    if (rho.size() != grid.size()) throw DomainError("distribution size does not match grid");
    PhaseSpaceState state{grid, Representation::KvN, std::vector<Complex>(grid.size()), 0.0};
    for (std::size_t k = 0; k < rho.size(); ++k) {
        if (rho[k] < 0.0) throw DomainError("phase-space density must be nonnegative");
        state.amp[k] = std::sqrt(rho[k]);
    }
    return state;
}

}  // namespace odm

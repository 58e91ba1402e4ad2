#include "odm/propagate.hpp"

#include "odm/errors.hpp"
#include "odm/fft_util.hpp"

#include <cmath>

namespace odm {

namespace {

inline Complex unit_phase(double phi) { return {std::cos(phi), std::sin(phi)}; }

void pointwise(std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
}

}  // namespace

void PropagatorConfig::validate(bool wigner) const {
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    if (steps < 1) throw DomainError("steps must be >= 1");
    if (record_every < 1) throw DomainError("record_every must be >= 1");
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    if (kappa < 0.0 || kappa > 1.0) throw DomainError("kappa must lie in [0, 1]");
    if (wigner && !(kappa > 0.0))
        throw DomainError("kappa = 0 is reserved for the Liouville propagator");
}

LiouvillePropagator::LiouvillePropagator(const Grid2D& grid, const ExprAst& potential,
                                         const PropagatorConfig& cfg)
    : grid_(grid), dt_(cfg.dt) {
    grid_.validate();
    ExprAst u_prime = differentiate(potential);
    Grid1D p_axis = grid.y_axis();
    Grid1D x_axis = grid.x_axis();

    pot_half_.resize(grid.size());
    double inv_ny = 1.0 / grid.ny;
    for (int i = 0; i < grid.nx; ++i) {
        double force = eval(u_prime, grid.x(i));
        for (int b = 0; b < grid.ny; ++b) {
            double lam_p = p_axis.freq(b);
            pot_half_[grid.index(i, b)] = unit_phase(0.5 * dt_ * force * lam_p) * inv_ny;
        }
    }
    kin_full_.resize(grid.size());
    double inv_nx = 1.0 / grid.nx;
    for (int a = 0; a < grid.nx; ++a) {
        double lam_x = x_axis.freq(a);
        for (int j = 0; j < grid.ny; ++j) {
            kin_full_[grid.index(a, j)] =
                unit_phase(-dt_ * lam_x * grid.y(j) / cfg.mass) * inv_nx;
        }
    }
}

void LiouvillePropagator::step(PhaseSpaceState& state) const {
    if (state.repr != Representation::KvN)
        throw RepresentationError("liouville step expects a KvN state");
    if (state.grid != grid_) throw DomainError("state grid does not match propagator grid");
    auto& a = state.amp;

    fft::transform_axis(a, grid_.nx, grid_.ny, fft::Axis::Y, fft::Direction::Forward);
    pointwise(a, pot_half_);
    fft::transform_axis(a, grid_.nx, grid_.ny, fft::Axis::Y, fft::Direction::Backward);

    fft::transform_axis(a, grid_.nx, grid_.ny, fft::Axis::X, fft::Direction::Forward);
    pointwise(a, kin_full_);
    fft::transform_axis(a, grid_.nx, grid_.ny, fft::Axis::X, fft::Direction::Backward);

    fft::transform_axis(a, grid_.nx, grid_.ny, fft::Axis::Y, fft::Direction::Forward);
    pointwise(a, pot_half_);
    fft::transform_axis(a, grid_.nx, grid_.ny, fft::Axis::Y, fft::Direction::Backward);

    state.time += dt_;
}

void LiouvillePropagator::run(PhaseSpaceState& state, long steps) const {
    for (long s = 0; s < steps; ++s) step(state);
}

SchrodingerPropagator::SchrodingerPropagator(const Grid1D& grid, const ExprAst& potential,
                                             const PropagatorConfig& cfg)
    : grid_(grid), dt_(cfg.dt) {
    grid_.validate("x");
    pot_half_.resize(static_cast<std::size_t>(grid.n));
    kin_full_.resize(static_cast<std::size_t>(grid.n));
    double inv_n = 1.0 / grid.n;
    for (int i = 0; i < grid.n; ++i) {
        pot_half_[static_cast<std::size_t>(i)] =
            unit_phase(-0.5 * dt_ * eval(potential, grid.at(i)) / cfg.hbar);
        double k = grid.freq(i);
        kin_full_[static_cast<std::size_t>(i)] =
            unit_phase(-0.5 * dt_ * cfg.hbar * k * k / cfg.mass) * inv_n;
    }
}

void SchrodingerPropagator::step(QuantumState& state) const {
    if (state.grid != grid_) throw DomainError("state grid does not match propagator grid");
    auto& a = state.amp;
    pointwise(a, pot_half_);
    fft::transform(a, fft::Direction::Forward);
    pointwise(a, kin_full_);
    fft::transform(a, fft::Direction::Backward);
    pointwise(a, pot_half_);
    state.time += dt_;
}

void SchrodingerPropagator::run(QuantumState& state, long steps) const {
    for (long s = 0; s < steps; ++s) step(state);
}

WignerPropagator::WignerPropagator(const Grid2D& chi_grid, const ExprAst& potential,
                                   const PropagatorConfig& cfg)
    : grid_(chi_grid), dt_(cfg.dt) {
    grid_.validate();
    if (!(cfg.kappa > 0.0))
        throw DomainError("kappa = 0 is reserved for the Liouville propagator");
    double heff = cfg.hbar * cfg.kappa;

    pot_half_.resize(grid_.size());
    for (int i = 0; i < grid_.nx; ++i) {
        double x = grid_.x(i);
        for (int j = 0; j < grid_.ny; ++j) {
            double shift = 0.5 * heff * grid_.y(j);  // ħκλp/2
            double du = eval(potential, x - shift) - eval(potential, x + shift);
            pot_half_[grid_.index(i, j)] = unit_phase(-0.5 * dt_ * du / heff);
        }
    }

    kin_full_.resize(grid_.size());
    Grid1D x_axis = grid_.x_axis();
    Grid1D lam_axis = grid_.y_axis();
    double inv = 1.0 / (static_cast<double>(grid_.nx) * grid_.ny);
    for (int a = 0; a < grid_.nx; ++a) {
        double lam_x = x_axis.freq(a);
        for (int b = 0; b < grid_.ny; ++b) {
            double p = lam_axis.freq(b);
            kin_full_[grid_.index(a, b)] = unit_phase(-dt_ * lam_x * p / cfg.mass) * inv;
        }
    }
}

void WignerPropagator::step(PhaseSpaceState& state) const {
    if (state.repr != Representation::Chi)
        throw RepresentationError("wigner step expects a Chi state");
    if (state.grid != grid_) throw DomainError("state grid does not match propagator grid");
    auto& a = state.amp;

    pointwise(a, pot_half_);

    fft::transform_axis(a, grid_.nx, grid_.ny, fft::Axis::X, fft::Direction::Forward);
    fft::transform_axis(a, grid_.nx, grid_.ny, fft::Axis::Y, fft::Direction::Backward);
    pointwise(a, kin_full_);
    fft::transform_axis(a, grid_.nx, grid_.ny, fft::Axis::Y, fft::Direction::Forward);
    fft::transform_axis(a, grid_.nx, grid_.ny, fft::Axis::X, fft::Direction::Backward);

    pointwise(a, pot_half_);
    state.time += dt_;
}

void WignerPropagator::run(PhaseSpaceState& state, long steps) const {
    for (long s = 0; s < steps; ++s) step(state);
}

PhaseSpaceState liouville_step(PhaseSpaceState state, const ExprAst& potential,
                               const PropagatorConfig& cfg) {
    LiouvillePropagator prop(state.grid, potential, cfg);
    prop.step(state);
    return state;
}

QuantumState schrodinger_step(QuantumState state, const ExprAst& potential,
                              const PropagatorConfig& cfg) {
    SchrodingerPropagator prop(state.grid, potential, cfg);
    prop.step(state);
    return state;
}

PhaseSpaceState wigner_step(PhaseSpaceState state, const ExprAst& potential,
                            const PropagatorConfig& cfg) {
    WignerPropagator prop(state.grid, potential, cfg);
    prop.step(state);
    return state;
}

}  // namespace odm

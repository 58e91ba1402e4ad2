#pragma once

#include "odm/potential.hpp"
#include "odm/state.hpp"

#include <vector>

namespace odm {

struct PropagatorConfig {
    double dt = 1e-3;
    long steps = 1;
    double kappa = 1.0;
    double hbar = 1.0;
    double mass = 1.0;
    long record_every = 1;

    /// Full run-level validation (dt > 0 etc.); the propagator classes accept
    /// degenerate dt = 0 so a zero step can be checked to be the identity.
    void validate(bool wigner) const;
};

/// Strang split for the Koopman–von Neumann state Ψ(x,p):
/// half phase e^{+i U'(x) λp dt/2} in (x,λp), full shear e^{-i λx p dt/m}
/// in (λx,p), half phase again. Phase tables are built once per (grid, U, dt).
class LiouvillePropagator {
  public:
    LiouvillePropagator(const Grid2D& grid, const ExprAst& potential,
                        const PropagatorConfig& cfg);
    void step(PhaseSpaceState& state) const;
    void run(PhaseSpaceState& state, long steps) const;

  private:
    Grid2D grid_;
    double dt_;
    std::vector<Complex> pot_half_;  // (x value, λp frequency); 1/ny folded in
    std::vector<Complex> kin_full_;  // (λx frequency, p value); 1/nx folded in
};

/// Standard split-operator Schrödinger propagator on ψ(x).
class SchrodingerPropagator {
  public:
    SchrodingerPropagator(const Grid1D& grid, const ExprAst& potential,
                          const PropagatorConfig& cfg);
    void step(QuantumState& state) const;
    void run(QuantumState& state, long steps) const;

  private:
    Grid1D grid_;
    double dt_;
    std::vector<Complex> pot_half_;  // x values
    std::vector<Complex> kin_full_;  // k frequencies; 1/n folded in
};

/// Split propagator for χ(x,λp) under the unified generator at κ > 0:
/// the potential phase uses U evaluated at the shifted arguments
/// x ∓ ħκλp/2 (diagonal in the stored representation); the kinetic phase
/// e^{-i λx p dt/m} is diagonal after transforming both axes.
class WignerPropagator {
  public:
    WignerPropagator(const Grid2D& chi_grid, const ExprAst& potential,
                     const PropagatorConfig& cfg);
    void step(PhaseSpaceState& state) const;
    void run(PhaseSpaceState& state, long steps) const;

  private:
    Grid2D grid_;
    double dt_;
    std::vector<Complex> pot_half_;  // (x value, λp value)
    std::vector<Complex> kin_full_;  // (λx frequency, p frequency); 1/(nx·ny) folded in
};

/// One-shot forms of the steps above.
PhaseSpaceState liouville_step(PhaseSpaceState state, const ExprAst& potential,
                               const PropagatorConfig& cfg);
QuantumState schrodinger_step(QuantumState state, const ExprAst& potential,
                              const PropagatorConfig& cfg);
PhaseSpaceState wigner_step(PhaseSpaceState state, const ExprAst& potential,
                            const PropagatorConfig& cfg);

}  // namespace odm

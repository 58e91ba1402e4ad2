#pragma once

#include "odm/potential.hpp"
#include "odm/state.hpp"

namespace odm {

enum class Observable { X, P, X2, P2, MinusUPrime, Energy };

/// Phase-space averages: Σ weight(x,p)·density·cell with density |Ψ|² (KvN)
/// or W (Wigner); Chi states are transformed first. MinusUPrime and Energy
/// need the potential.
double expectation(const PhaseSpaceState& state, Observable obs,
                   const ExprAst* potential = nullptr, double hbar = 1.0, double mass = 1.0);

/// ⟨ψ|Ô|ψ⟩ with momentum observables evaluated in the conjugate grid.
double expectation(const QuantumState& state, Observable obs, const ExprAst* potential = nullptr,
                   double hbar = 1.0, double mass = 1.0);

}  // namespace odm

#pragma once

#include "odm/nc_polynomial.hpp"
#include "odm/potential.hpp"

#include <optional>
#include <span>
#include <vector>

namespace odm {

/// One commutator equation: scale · i · [G, observable] = rhs.
struct EhrenfestConstraint {
    NcPolynomial observable;
    NcPolynomial rhs;
    ParamCoefficient scale = ParamCoefficient::one();
};

/// Shape of the unknown generator: a degree-capped polynomial over a subset
/// of the algebra's generators.
struct AnsatzSpec {
    AlgebraPtr algebra;
    int max_degree = 2;
    std::vector<std::string> allowed_generators;  // empty means all
    bool include_identity = true;                 // admit the constant monomial
};

struct GeneratorSolution {
    /// The solution with every free coefficient set to zero, then symmetrized
    /// to its self-adjoint part when that preserves the constraints.
    NcPolynomial particular;
    /// Basis of the homogeneous solution space, ordered by graded-lex leading
    /// monomial. Any rational combination added to `particular` still solves.
    std::vector<NcPolynomial> null_basis;
    /// True per basis element iff it equals its own adjoint.
    std::vector<bool> null_basis_hermitian;
    /// scale·i·[particular, O_k] − R_k per constraint; identically zero.
    std::vector<NcPolynomial> residuals;

    GeneratorSolution() : particular(NcPolynomial::zero(AlgebraSpec::classical())) {}
};

/// Exact linear solve for G from the commutator equations. Throws
/// DegreeTooLowError when raising max_degree by one makes the system
/// solvable, InconsistentConstraintsError otherwise.
GeneratorSolution solve_generator(std::span<const EhrenfestConstraint> constraints,
                                  const AnsatzSpec& ansatz);

/// Generator of classical motion for the given force -U' (polynomial in x):
/// particular = p·λx/m − U'(x)·λp over the classical preset.
GeneratorSolution derive_liouvillian(const PolynomialForm& u_prime);

/// Quantum generator for potential U: particular = p²/(2m) + U(x).
GeneratorSolution derive_quantum_hamiltonian(const PolynomialForm& u);

struct UnifiedHamiltonian {
    /// (1/κ)[p_q²/2m + U(x_q)] − (1/2mκ)(p_q − ħκθx)² − (1/κ)U(x_q + ħκθp).
    NcPolynomial unified;
    /// The same operator pushed through the Bopp realization into the
    /// classical algebra: (ħ/m)pλx + (1/κ)[U(x−ħκλp/2) − U(x+ħκλp/2)].
    NcPolynomial classical_form;
};

UnifiedHamiltonian derive_unified_hamiltonian(const PolynomialForm& u);

/// κ → 0 limit: the κ⁰ part, provided no coefficient carries a negative κ
/// power. Throws KappaPoleError listing the offending terms otherwise.
NcPolynomial kappa_limit(const NcPolynomial& f);

/// True iff the unified Hamiltonian in classical operators equals ħ·L(U')
/// identically in all parameters — the quadratic-potential dichotomy.
bool verify_theorem5(const PolynomialForm& u);

/// Σ_k c_k · g^k inside an algebra; the bridge from coefficient form.
NcPolynomial nc_from_polynomial(const PolynomialForm& poly, AlgebraPtr algebra,
                                std::string_view generator);

}  // namespace odm

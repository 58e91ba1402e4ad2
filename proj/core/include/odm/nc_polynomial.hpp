#pragma once

#include "odm/algebra.hpp"
#include "odm/errors.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace odm {

/// Exponent vector aligned with the algebra's generator order; the product is
/// read in declaration order. The all-zero vector is the identity operator.
using NcMonomial = std::vector<int>;

inline int monomial_degree(const NcMonomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

/// Graded-lexicographic order: total degree first, then lex on exponents.
struct GradedLexLess {
    bool operator()(const NcMonomial& a, const NcMonomial& b) const {
        int da = monomial_degree(a), db = monomial_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

/// Polynomial over noncommuting generators with central commutators, kept in
/// canonical (declaration) order with exact coefficients. Immutable in spirit:
/// all operations return new values, so sharing across threads is safe.
class NcPolynomial {
  public:
    explicit NcPolynomial(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

    static NcPolynomial zero(AlgebraPtr algebra) { return NcPolynomial(std::move(algebra)); }
    static NcPolynomial constant(AlgebraPtr algebra, ParamCoefficient c);
    static NcPolynomial one(AlgebraPtr algebra) {
        return constant(std::move(algebra), ParamCoefficient::one());
    }
    static NcPolynomial generator(AlgebraPtr algebra, std::string_view symbol, int power = 1);
    static NcPolynomial from_terms(AlgebraPtr algebra,
                                   std::map<NcMonomial, ParamCoefficient> terms);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::map<NcMonomial, ParamCoefficient>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for the zero polynomial
    std::size_t term_count() const { return terms_.size(); }

    ParamCoefficient coefficient(const NcMonomial& m) const;

    NcPolynomial adjoint() const;
    bool is_hermitian() const { return *this == adjoint(); }

    NcPolynomial bind(Param p, const Rational& value) const;

    NcPolynomial pow(int exponent) const;

    friend NcPolynomial operator+(const NcPolynomial& a, const NcPolynomial& b);
    friend NcPolynomial operator-(const NcPolynomial& a, const NcPolynomial& b);
    friend NcPolynomial operator-(const NcPolynomial& a);
    friend NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b);
    friend NcPolynomial operator*(const ParamCoefficient& c, const NcPolynomial& a);

    NcPolynomial& operator+=(const NcPolynomial& o) { return *this = *this + o; }
    NcPolynomial& operator-=(const NcPolynomial& o) { return *this = *this - o; }

    friend bool operator==(const NcPolynomial& a, const NcPolynomial& b) {
        return same_algebra(a.algebra_, b.algebra_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const NcPolynomial& a, const NcPolynomial& b) { return !(a == b); }

    void add_term(const NcMonomial& m, const ParamCoefficient& c);

  private:
    AlgebraPtr algebra_;
    std::map<NcMonomial, ParamCoefficient> terms_;
};

/// Rewrite a product of generator symbols into the canonical basis.
NcPolynomial normal_order(std::span<const std::string> word, AlgebraPtr algebra);

NcPolynomial multiply(const NcPolynomial& a, const NcPolynomial& b);
NcPolynomial commutator(const NcPolynomial& a, const NcPolynomial& b);

/// Formal partial derivative with respect to one generator. With central
/// commutators this coincides with the operator-calculus derivative of a
/// canonically ordered expansion.
NcPolynomial weyl_derivative(const NcPolynomial& f, std::string_view symbol);

/// Residual [f,B] - Σ_k [A_k,B]·∂f/∂A_k; identically zero whenever every
/// [A_k,B] is central, which the AlgebraSpec guarantees.
NcPolynomial check_weyl_theorem(const NcPolynomial& f, std::string_view b_symbol);

/// Images of the source generators inside a target algebra.
using GeneratorMap = std::map<std::string, NcPolynomial>;

/// Push f through a generator substitution into the images' algebra. The map
/// is applied monomial by monomial in canonical order; it is a homomorphism
/// only if check_homomorphism passes, which this routine does not verify.
NcPolynomial substitute(const NcPolynomial& f, const GeneratorMap& map);

struct HomomorphismReport {
    bool ok = true;
    std::vector<std::string> violations;  // rendered relations that break
};

HomomorphismReport check_homomorphism(const GeneratorMap& map, const AlgebraPtr& src,
                                      const AlgebraPtr& dst);

/// Poisson bracket ∂x f ∂p g − ∂p f ∂x g for polynomials over a commuting
/// (x, p) pair; exact. Throws if the named generators fail to commute.
NcPolynomial poisson_bracket(const NcPolynomial& f, const NcPolynomial& g,
                             std::string_view x_symbol = "x", std::string_view p_symbol = "p");

/// Re-tag a canonically ordered polynomial onto another algebra with the same
/// generator count, preserving exponents and coefficients.
NcPolynomial retag(const NcPolynomial& f, AlgebraPtr target);

/// Commutative symbol in the symmetric-ordering convention: the retagged
/// polynomial pushed through exp(Σ_{i<j} ([g_i,g_j]/2)·∂i∂j), which converts
/// the canonical (left-to-right ordered) expansion into the symbol whose
/// symmetric quantization reproduces the operator.
NcPolynomial weyl_symbol(const NcPolynomial& f, AlgebraPtr commutative_target);

/// Bopp realization of the unified algebra inside the classical one:
/// x_q = x − (ħκ/2)λp, p_q = p + (ħκ/2)λx, θx = λx, θp = λp.
GeneratorMap bopp_map();

}  // namespace odm

#pragma once

#include "odm/rational.hpp"

#include <array>
#include <map>
#include <string>

namespace odm {

/// The three unit-bearing symbols carried by every exact coefficient.
enum class Param : int { Hbar = 0, Kappa = 1, Mass = 2 };

inline const char* param_name(Param p) {
    switch (p) {
        case Param::Hbar: return "ħ";   // ħ
        case Param::Kappa: return "κ";  // κ
        default: return "m";
    }
}

/// Integer exponent vector over (ħ, κ, m); negative powers allowed.
using ParamPowers = std::array<int, 3>;

/// Exact scalar coefficient: a Laurent polynomial in (ħ, κ, m) with Gaussian
/// rational coefficients. A single-term instance is "rational × parameter
/// monomial"; sums arise when expansions mix powers.
class ParamCoefficient {
  public:
    ParamCoefficient() = default;
    ParamCoefficient(GaussianRational v) {  // NOLINT implicit by design
        if (!v.is_zero()) terms_[{0, 0, 0}] = std::move(v);
    }
    ParamCoefficient(long v) : ParamCoefficient(GaussianRational(v)) {}  // NOLINT
    ParamCoefficient(Rational v) : ParamCoefficient(GaussianRational(std::move(v))) {}  // NOLINT

    static ParamCoefficient zero() { return {}; }
    static ParamCoefficient one() { return ParamCoefficient(GaussianRational(1)); }
    static ParamCoefficient i() { return ParamCoefficient(GaussianRational::i()); }
    static ParamCoefficient monomial(GaussianRational v, ParamPowers powers);
    static ParamCoefficient symbol(Param p, int power = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_real() const;
    bool is_single_term() const { return terms_.size() == 1; }
    /// True iff the coefficient is a plain Gaussian rational (no parameter powers).
    bool is_scalar() const;

    const std::map<ParamPowers, GaussianRational>& terms() const { return terms_; }

    ParamCoefficient conj() const;
    int min_power(Param p) const;  // 0 for the zero coefficient
    int max_power(Param p) const;

    /// Terms whose power of `p` equals `power` (other symbols untouched).
    ParamCoefficient part_with_power(Param p, int power) const;
    /// Substitute an exact rational value for one parameter symbol.
    ParamCoefficient bind(Param p, const Rational& value) const;

    friend ParamCoefficient operator+(const ParamCoefficient& a, const ParamCoefficient& b);
    friend ParamCoefficient operator-(const ParamCoefficient& a, const ParamCoefficient& b);
    friend ParamCoefficient operator-(const ParamCoefficient& a);
    friend ParamCoefficient operator*(const ParamCoefficient& a, const ParamCoefficient& b);
    ParamCoefficient& operator+=(const ParamCoefficient& o) { return *this = *this + o; }
    ParamCoefficient& operator-=(const ParamCoefficient& o) { return *this = *this - o; }
    ParamCoefficient& operator*=(const ParamCoefficient& o) { return *this = *this * o; }

    friend bool operator==(const ParamCoefficient& a, const ParamCoefficient& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const ParamCoefficient& a, const ParamCoefficient& b) { return !(a == b); }
    friend bool operator<(const ParamCoefficient& a, const ParamCoefficient& b) {
        return a.terms_ < b.terms_;
    }

    /// Inverse of a single-term coefficient (parameter monomials are units).
    ParamCoefficient inverse_single_term() const;

    /// Exact Laurent division; throws std::domain_error if not exact.
    static ParamCoefficient divide_exact(const ParamCoefficient& num, const ParamCoefficient& den);

    /// Render as e.g. "(1/2)*ħ*κ^2" or "-i*m^-1"; "0"/"1" for the extremes.
    std::string render() const;
    /// Render each Laurent term separately ("(1/2)*ħ", "-i*κ^2", ...).
    std::vector<std::string> render_terms() const;

  private:
    void insert(const ParamPowers& p, const GaussianRational& v);
    std::map<ParamPowers, GaussianRational> terms_;
};

}  // namespace odm

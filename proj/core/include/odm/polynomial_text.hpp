#pragma once

#include "odm/nc_polynomial.hpp"

#include <string>

namespace odm {

/// Text form of a polynomial, e.g. "(1/2)*ħ*κ*x^2*λp - i*m^-1*p".
///
/// Grammar (whitespace-insensitive, names matched longest-first):
///   polynomial := [sign] term (sign term)*
///   sign       := '+' | '-'
///   term       := factor ('*' factor)*
///   factor     := '(' rational ')' | rational | 'i' | name ('^' integer)?
///   rational   := digits ('/' digits)?
///   integer    := ['-'] digits
///   name       := a generator of the algebra, or one of ħ, κ, m
///
/// Generator powers must be nonnegative; parameter powers may be negative.
/// render and parse_polynomial are inverse on polynomials (not on raw text).
std::string render(const NcPolynomial& poly);

NcPolynomial parse_polynomial(const std::string& text, AlgebraPtr algebra);

}  // namespace odm

#pragma once

#include "odm/errors.hpp"
#include "odm/rational.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace odm {

/// Dense exact-coefficient polynomial in x; index = power. Trailing zeros are
/// stripped, so degree() == coefficients.size() - 1 (and -1 for zero).
struct PolynomialForm {
    std::vector<Rational> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    bool is_zero() const { return coefficients.empty(); }
    const Rational& coefficient(int power) const;

    PolynomialForm derivative() const;
    double eval(double x) const;

    void normalize();  // strip trailing zeros
    friend bool operator==(const PolynomialForm&, const PolynomialForm&) = default;
};

/// Expression tree for a one-dimensional potential U(x). Constants are exact
/// decimal rationals; powers are nonnegative integers; division is restricted
/// to nonzero constant divisors (checked at parse time).
class ExprAst {
  public:
    enum class Kind { Constant, Variable, Add, Subtract, Multiply, Divide, Power, Negate };

    struct Node {
        Kind kind;
        Rational value;                    // Constant
        std::shared_ptr<const Node> lhs;   // unary operand or left child
        std::shared_ptr<const Node> rhs;   // right child
        int exponent = 0;                  // Power
    };

    ExprAst() = default;
    explicit ExprAst(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    static ExprAst constant(Rational v);
    static ExprAst variable();

    const std::shared_ptr<const Node>& root() const { return root_; }
    bool empty() const { return !root_; }

    friend bool operator==(const ExprAst& a, const ExprAst& b) { return node_equal(a.root_, b.root_); }

  private:
    static bool node_equal(const std::shared_ptr<const Node>& a,
                           const std::shared_ptr<const Node>& b);
    std::shared_ptr<const Node> root_;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' integer)?
///   base   := number | 'x' | '(' expr ')' | '-' factor
///   number := digits ('.' digits)?
/// Whitespace-insensitive; '^' binds tighter than unary minus, so -x^2 is
/// -(x^2). Exponents must be nonnegative integers; divisors must fold to a
/// nonzero constant.
/// Throws SyntaxError (with byte offset) or DivisionByZeroConstant.
ExprAst parse_potential(const std::string& text);

/// Symbolic derivative; unsimplified beyond constant folding.
ExprAst differentiate(const ExprAst& ast);

/// Exact expansion to coefficient form. Throws NotPolynomialError for ASTs
/// built outside the parser's restrictions.
PolynomialForm to_polynomial(const ExprAst& ast);

/// Double-precision evaluation; exact constants are rounded once, at the leaf.
double eval(const ExprAst& ast, double x);
std::vector<double> eval_samples(const ExprAst& ast, std::span<const double> points);

/// Text form that reparses to an identical AST.
std::string render(const ExprAst& ast);

}  // namespace odm

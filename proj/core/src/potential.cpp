#include "odm/potential.hpp"

#include <cctype>
#include <cmath>
#include <optional>

namespace odm {

const Rational& PolynomialForm::coefficient(int power) const {
    static const Rational kZero(0);
    if (power < 0 || power >= static_cast<int>(coefficients.size())) return kZero;
    return coefficients[static_cast<std::size_t>(power)];
}

PolynomialForm PolynomialForm::derivative() const {
    PolynomialForm out;
    for (int k = 1; k <= degree(); ++k)
        out.coefficients.push_back(coefficients[static_cast<std::size_t>(k)] * k);
    out.normalize();
    return out;
}

double PolynomialForm::eval(double x) const {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
        acc = acc * x + to_double(*it);
    return acc;
}

void PolynomialForm::normalize() {
    while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
}

bool ExprAst::node_equal(const std::shared_ptr<const Node>& a,
                         const std::shared_ptr<const Node>& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind || a->exponent != b->exponent || a->value != b->value) return false;
    return node_equal(a->lhs, b->lhs) && node_equal(a->rhs, b->rhs);
}

namespace {

using Node = ExprAst::Node;
using Kind = ExprAst::Kind;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_constant(Rational v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = std::move(v);
    return n;
}

NodePtr make_variable() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    return n;
}

NodePtr make_binary(Kind k, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_power(NodePtr base, int exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->lhs = std::move(base);
    n->exponent = exponent;
    return n;
}

NodePtr make_negate(NodePtr operand) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Negate;
    n->lhs = std::move(operand);
    return n;
}

// Constant folding used for divisor checks and derivative cleanup.
std::optional<Rational> fold_constant(const NodePtr& n) {
    if (!n) return std::nullopt;
    switch (n->kind) {
        case Kind::Constant: return n->value;
        case Kind::Variable: return std::nullopt;
        case Kind::Negate: {
            auto v = fold_constant(n->lhs);
            return v ? std::optional<Rational>(-*v) : std::nullopt;
        }
        case Kind::Power: {
            auto v = fold_constant(n->lhs);
            if (!v) return std::nullopt;
            Rational acc(1);
            for (int k = 0; k < n->exponent; ++k) acc *= *v;
            return acc;
        }
        default: {
            auto a = fold_constant(n->lhs);
            auto b = fold_constant(n->rhs);
            if (!a || !b) return std::nullopt;
            switch (n->kind) {
                case Kind::Add: return *a + *b;
                case Kind::Subtract: return *a - *b;
                case Kind::Multiply: return *a * *b;
                case Kind::Divide:
                    if (*b == 0) throw DivisionByZeroConstant("division by zero constant");
                    return *a / *b;
                default: return std::nullopt;
            }
        }
    }
}

struct PotentialParser {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, pos); }

    Rational parse_number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected number");
        Integer whole(text.substr(start, pos - start));
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            std::size_t fstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == fstart) fail("expected digits after decimal point");
            std::string frac = text.substr(fstart, pos - fstart);
            Integer den(1);
            for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
            return Rational(whole * den + Integer(frac), den);
        }
        return Rational(whole);
    }

    int parse_exponent() {
        skip_ws();
        bool neg = false;
        if (consume('-')) neg = true;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected integer exponent");
        Integer v(text.substr(start, pos - start));
        if (neg) fail("negative exponents are not allowed");
        if (v > 1024) fail("exponent too large");
        return v.convert_to<int>();
    }

    NodePtr parse_base() {
        skip_ws();
        if (pos >= text.size()) fail("expected expression");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'x') {
            ++pos;
            return make_variable();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return make_constant(parse_number());
        if (c == '-') {
            ++pos;
            // '^' binds tighter than unary minus: -x^2 is -(x^2).
            return make_negate(parse_factor());
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_factor() {
        NodePtr base = parse_base();
        if (consume('^')) return make_power(std::move(base), parse_exponent());
        return base;
    }

    NodePtr parse_term() {
        NodePtr acc = parse_factor();
        while (true) {
            if (consume('*')) {
                acc = make_binary(Kind::Multiply, std::move(acc), parse_factor());
            } else if (consume('/')) {
                std::size_t div_pos = pos;
                NodePtr rhs = parse_factor();
                auto v = fold_constant(rhs);
                if (!v) throw SyntaxError("divisor must be a constant expression", div_pos);
                if (*v == 0) throw DivisionByZeroConstant("division by zero constant");
                acc = make_binary(Kind::Divide, std::move(acc), std::move(rhs));
            } else {
                break;
            }
        }
        return acc;
    }

    NodePtr parse_expr() {
        NodePtr acc = parse_term();
        while (true) {
            if (consume('+')) {
                acc = make_binary(Kind::Add, std::move(acc), parse_term());
            } else if (consume('-')) {
                acc = make_binary(Kind::Subtract, std::move(acc), parse_term());
            } else {
                break;
            }
        }
        return acc;
    }
};

NodePtr diff_node(const NodePtr& n) {
    switch (n->kind) {
        case Kind::Constant: return make_constant(Rational(0));
        case Kind::Variable: return make_constant(Rational(1));
        case Kind::Negate: return make_negate(diff_node(n->lhs));
        case Kind::Add: return make_binary(Kind::Add, diff_node(n->lhs), diff_node(n->rhs));
        case Kind::Subtract:
            return make_binary(Kind::Subtract, diff_node(n->lhs), diff_node(n->rhs));
        case Kind::Multiply:
            return make_binary(Kind::Add,
                               make_binary(Kind::Multiply, diff_node(n->lhs), n->rhs),
                               make_binary(Kind::Multiply, n->lhs, diff_node(n->rhs)));
        case Kind::Divide:
            // Divisors are constant, so (f/c)' = f'/c.
            return make_binary(Kind::Divide, diff_node(n->lhs), n->rhs);
        case Kind::Power: {
            if (n->exponent == 0) return make_constant(Rational(0));
            NodePtr inner = diff_node(n->lhs);
            NodePtr reduced =
                n->exponent == 1 ? n->lhs : make_power(n->lhs, n->exponent - 1);
            return make_binary(
                Kind::Multiply,
                make_binary(Kind::Multiply, make_constant(Rational(n->exponent)), reduced),
                inner);
        }
    }
    throw NotPolynomialError("unknown AST node");
}

// True when the denominator is 2^a·5^b, i.e. the value has an exact decimal
// spelling inside the grammar.
bool has_decimal_spelling(const Rational& v) {
    Integer d = denominator(v);
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    return d == 1;
}

// Folded constants stay spelled inside the grammar: negatives as
// Negate(Constant) and non-decimal rationals as num/den.
NodePtr constant_or_negate(const Rational& v) {
    if (v < 0) return make_negate(constant_or_negate(-v));
    if (has_decimal_spelling(v)) return make_constant(v);
    return make_binary(Kind::Divide, make_constant(Rational(numerator(v))),
                       make_constant(Rational(denominator(v))));
}

// Fold constants: collapse operations on constant children, drop *1, +0, etc.
NodePtr fold_node(const NodePtr& n) {
    if (!n) return n;
    if (n->kind == Kind::Constant || n->kind == Kind::Variable) return n;
    NodePtr lhs = fold_node(n->lhs);
    NodePtr rhs = fold_node(n->rhs);
    auto as_const = [](const NodePtr& node) -> std::optional<Rational> {
        if (!node) return std::nullopt;
        if (node->kind == Kind::Constant) return node->value;
        if (node->kind == Kind::Negate && node->lhs->kind == Kind::Constant)
            return -node->lhs->value;
        return std::nullopt;
    };
    auto lv = as_const(lhs);
    auto rv = as_const(rhs);
    switch (n->kind) {
        case Kind::Negate:
            if (lv) return constant_or_negate(-*lv);
            return make_negate(lhs);
        case Kind::Power: {
            if (lv) {
                Rational acc(1);
                for (int k = 0; k < n->exponent; ++k) acc *= *lv;
                return constant_or_negate(acc);
            }
            if (n->exponent == 0) return make_constant(Rational(1));
            if (n->exponent == 1) return lhs;
            return make_power(lhs, n->exponent);
        }
        case Kind::Add:
            if (lv && rv) return constant_or_negate(*lv + *rv);
            if (lv && *lv == 0) return rhs;
            if (rv && *rv == 0) return lhs;
            return make_binary(Kind::Add, lhs, rhs);
        case Kind::Subtract:
            if (lv && rv) return constant_or_negate(*lv - *rv);
            if (rv && *rv == 0) return lhs;
            if (lv && *lv == 0) return make_negate(rhs);
            return make_binary(Kind::Subtract, lhs, rhs);
        case Kind::Multiply:
            if (lv && rv) return constant_or_negate(*lv * *rv);
            if ((lv && *lv == 0) || (rv && *rv == 0)) return make_constant(Rational(0));
            if (lv && *lv == 1) return rhs;
            if (rv && *rv == 1) return lhs;
            return make_binary(Kind::Multiply, lhs, rhs);
        case Kind::Divide:
            if (rv && *rv == 0) throw DivisionByZeroConstant("division by zero constant");
            if (lv && rv) return constant_or_negate(*lv / *rv);
            if (rv && *rv == 1) return lhs;
            return make_binary(Kind::Divide, lhs, rhs);
        default: return n;
    }
}

PolynomialForm poly_node(const NodePtr& n) {
    if (!n) throw NotPolynomialError("empty expression");
    PolynomialForm out;
    switch (n->kind) {
        case Kind::Constant:
            if (n->value != 0) out.coefficients = {n->value};
            return out;
        case Kind::Variable:
            out.coefficients = {Rational(0), Rational(1)};
            return out;
        case Kind::Negate: {
            out = poly_node(n->lhs);
            for (auto& c : out.coefficients) c = -c;
            return out;
        }
        case Kind::Add:
        case Kind::Subtract: {
            PolynomialForm a = poly_node(n->lhs);
            PolynomialForm b = poly_node(n->rhs);
            std::size_t size = std::max(a.coefficients.size(), b.coefficients.size());
            out.coefficients.assign(size, Rational(0));
            for (std::size_t k = 0; k < size; ++k) {
                Rational av = k < a.coefficients.size() ? a.coefficients[k] : Rational(0);
                Rational bv = k < b.coefficients.size() ? b.coefficients[k] : Rational(0);
                out.coefficients[k] = n->kind == Kind::Add ? Rational(av + bv) : Rational(av - bv);
            }
            out.normalize();
            return out;
        }
        case Kind::Multiply: {
            PolynomialForm a = poly_node(n->lhs);
            PolynomialForm b = poly_node(n->rhs);
            if (a.is_zero() || b.is_zero()) return out;
            out.coefficients.assign(a.coefficients.size() + b.coefficients.size() - 1,
                                    Rational(0));
            for (std::size_t i = 0; i < a.coefficients.size(); ++i)
                for (std::size_t j = 0; j < b.coefficients.size(); ++j)
                    out.coefficients[i + j] += a.coefficients[i] * b.coefficients[j];
            out.normalize();
            return out;
        }
        case Kind::Divide: {
            PolynomialForm a = poly_node(n->lhs);
            auto d = fold_constant(n->rhs);
            if (!d) throw NotPolynomialError("non-constant divisor");
            if (*d == 0) throw DivisionByZeroConstant("division by zero constant");
            for (auto& c : a.coefficients) c /= *d;
            return a;
        }
        case Kind::Power: {
            PolynomialForm base = poly_node(n->lhs);
            out.coefficients = {Rational(1)};
            for (int k = 0; k < n->exponent; ++k) {
                PolynomialForm next;
                if (out.is_zero() || base.is_zero()) return next;
                next.coefficients.assign(out.coefficients.size() + base.coefficients.size() - 1,
                                         Rational(0));
                for (std::size_t i = 0; i < out.coefficients.size(); ++i)
                    for (std::size_t j = 0; j < base.coefficients.size(); ++j)
                        next.coefficients[i + j] += out.coefficients[i] * base.coefficients[j];
                out = next;
            }
            out.normalize();
            return out;
        }
    }
    throw NotPolynomialError("unknown AST node");
}

double eval_node(const Node* n, double x) {
    switch (n->kind) {
        case Kind::Constant: return to_double(n->value);
        case Kind::Variable: return x;
        case Kind::Negate: return -eval_node(n->lhs.get(), x);
        case Kind::Add: return eval_node(n->lhs.get(), x) + eval_node(n->rhs.get(), x);
        case Kind::Subtract: return eval_node(n->lhs.get(), x) - eval_node(n->rhs.get(), x);
        case Kind::Multiply: return eval_node(n->lhs.get(), x) * eval_node(n->rhs.get(), x);
        case Kind::Divide: return eval_node(n->lhs.get(), x) / eval_node(n->rhs.get(), x);
        case Kind::Power: {
            double base = eval_node(n->lhs.get(), x);
            double acc = 1.0;
            int e = n->exponent;
            while (e > 0) {  // binary powering keeps integer powers exact-ish
                if (e & 1) acc *= base;
                base *= base;
                e >>= 1;
            }
            return acc;
        }
    }
    return std::nan("");
}

std::string render_node(const NodePtr& n);

bool needs_parens_as_factor(const NodePtr& n) {
    return n->kind == Kind::Add || n->kind == Kind::Subtract || n->kind == Kind::Negate;
}

std::string render_factor(const NodePtr& n) {
    std::string s = render_node(n);
    if (needs_parens_as_factor(n)) return "(" + s + ")";
    return s;
}

// Right operands of '*' and '/' lose their shape to left associativity unless
// compound subtrees are parenthesized.
std::string render_tight(const NodePtr& n) {
    if (n->kind == Kind::Constant || n->kind == Kind::Variable || n->kind == Kind::Power)
        return render_node(n);
    return "(" + render_node(n) + ")";
}

// Renders a nonnegative rational as the shortest exact decimal when the
// denominator is 2^a·5^b, else as "num/den" (still inside the grammar).
std::string render_rational(const Rational& q) {
    Integer num = numerator(q);
    Integer den = denominator(q);
    if (den == 1) return to_string(num);
    Integer d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d == 1) {
        int k = std::max(twos, fives);
        Integer scale(1);
        for (int j = 0; j < k - twos; ++j) scale *= 2;
        for (int j = 0; j < k - fives; ++j) scale *= 5;
        std::string digits = to_string(num * scale);
        while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(k), ".");
        return digits;
    }
    return to_string(num) + "/" + to_string(den);
}

std::string render_node(const NodePtr& n) {
    switch (n->kind) {
        case Kind::Constant: {
            if (n->value < 0) return "-" + render_rational(-n->value);
            return render_rational(n->value);
        }
        case Kind::Variable: return "x";
        case Kind::Negate: return "-" + render_tight(n->lhs);
        case Kind::Add: return render_node(n->lhs) + " + " + render_factor(n->rhs);
        case Kind::Subtract: return render_node(n->lhs) + " - " + render_factor(n->rhs);
        case Kind::Multiply: return render_factor(n->lhs) + "*" + render_tight(n->rhs);
        case Kind::Divide: return render_factor(n->lhs) + "/" + render_tight(n->rhs);
        case Kind::Power: {
            if (n->lhs->kind == Kind::Constant || n->lhs->kind == Kind::Variable)
                return render_node(n->lhs) + "^" + std::to_string(n->exponent);
            return "(" + render_node(n->lhs) + ")^" + std::to_string(n->exponent);
        }
    }
    return "";
}

}  // namespace

ExprAst ExprAst::constant(Rational v) { return ExprAst(make_constant(std::move(v))); }
ExprAst ExprAst::variable() { return ExprAst(make_variable()); }

ExprAst parse_potential(const std::string& text) {
    PotentialParser parser{text};
    NodePtr root = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing input");
    return ExprAst(root);
}

ExprAst differentiate(const ExprAst& ast) {
    if (ast.empty()) throw NotPolynomialError("empty expression");
    return ExprAst(fold_node(diff_node(ast.root())));
}

PolynomialForm to_polynomial(const ExprAst& ast) {
    if (ast.empty()) throw NotPolynomialError("empty expression");
    return poly_node(ast.root());
}

double eval(const ExprAst& ast, double x) {
    if (ast.empty()) throw NotPolynomialError("empty expression");
    return eval_node(ast.root().get(), x);
}

std::vector<double> eval_samples(const ExprAst& ast, std::span<const double> points) {
    std::vector<double> out;
    out.reserve(points.size());
    for (double x : points) out.push_back(eval(ast, x));
    return out;
}

std::string render(const ExprAst& ast) {
    if (ast.empty()) return "0";
    return render_node(ast.root());
}

}  // namespace odm

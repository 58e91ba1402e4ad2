#include "odm/polynomial_text.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace odm {

namespace {

std::string render_monomial(const AlgebraSpec& alg, const NcMonomial& m) {
    std::string out;
    for (int g = 0; g < alg.size(); ++g) {
        int e = m[static_cast<std::size_t>(g)];
        if (e == 0) continue;
        if (!out.empty()) out += "*";
        out += alg.generators()[static_cast<std::size_t>(g)];
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

}  // namespace

std::string render(const NcPolynomial& poly) {
    if (poly.is_zero()) return "0";
    const AlgebraSpec& alg = *poly.algebra();

    std::vector<std::pair<NcMonomial, ParamCoefficient>> sorted(poly.terms().begin(),
                                                                poly.terms().end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return GradedLexLess{}(a.first, b.first); });

    std::string out;
    for (const auto& [m, c] : sorted) {
        std::string gens = render_monomial(alg, m);
        for (std::string piece : c.render_terms()) {
            bool neg = !piece.empty() && piece[0] == '-';
            if (neg) piece = piece.substr(1);
            std::string body;
            if (gens.empty()) {
                body = piece;
            } else if (piece == "1") {
                body = gens;
            } else {
                body = piece + "*" + gens;
            }
            if (out.empty()) {
                out = (neg ? "-" : "") + body;
            } else {
                out += (neg ? " - " : " + ") + body;
            }
        }
    }
    return out;
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    const AlgebraSpec& alg;
    std::vector<std::string> names;  // generators + parameters, longest first

    Parser(const std::string& t, const AlgebraSpec& a) : text(t), alg(a) {
        names = a.generators();
        names.emplace_back(param_name(Param::Hbar));
        names.emplace_back(param_name(Param::Kappa));
        names.emplace_back(param_name(Param::Mass));
        std::sort(names.begin(), names.end(),
                  [](const std::string& x, const std::string& y) { return x.size() > y.size(); });
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
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

    Integer parse_digits() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected digits");
        return Integer(text.substr(start, pos - start));
    }

    Rational parse_rational() {
        Integer num = parse_digits();
        if (consume('/')) {
            Integer den = parse_digits();
            if (den == 0) fail("zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }

    int parse_signed_int() {
        skip_ws();
        bool neg = consume('-');
        Integer v = parse_digits();
        if (v > 1000000) fail("exponent too large");
        int out = v.convert_to<int>();
        return neg ? -out : out;
    }

    // Matches a generator or parameter symbol at the current position.
    // Returns the matched name, or empty when nothing matches.
    std::string match_name() {
        skip_ws();
        for (const auto& n : names) {
            if (text.compare(pos, n.size(), n) == 0) {
                pos += n.size();
                return n;
            }
        }
        return {};
    }

    struct Term {
        GaussianRational coeff{Rational(1)};
        ParamPowers powers{0, 0, 0};
        NcMonomial gens;
    };

    void parse_factor(Term& term) {
        skip_ws();
        if (pos >= text.size()) fail("expected factor");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Rational r = parse_rational();
            if (!consume(')')) fail("expected ')'");
            term.coeff *= GaussianRational(r);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            term.coeff *= GaussianRational(parse_rational());
            return;
        }
        std::string name = match_name();
        if (!name.empty()) {
            int power = 1;
            if (consume('^')) power = parse_signed_int();
            int g = alg.index_of(name);
            if (g >= 0) {
                if (power < 0) fail("negative power of generator '" + name + "'");
                term.gens[static_cast<std::size_t>(g)] += power;
            } else {
                int pi = name == param_name(Param::Hbar)    ? 0
                         : name == param_name(Param::Kappa) ? 1
                                                            : 2;
                term.powers[static_cast<std::size_t>(pi)] += power;
            }
            return;
        }
        if (c == 'i') {
            ++pos;
            term.coeff *= GaussianRational::i();
            return;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    NcPolynomial parse(AlgebraPtr algebra) {
        NcPolynomial out(algebra);
        bool first = true;
        while (!eof()) {
            bool neg = false;
            skip_ws();
            if (consume('-')) {
                neg = true;
            } else if (consume('+')) {
                // explicit plus
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            Term term;
            term.gens.assign(static_cast<std::size_t>(alg.size()), 0);
            parse_factor(term);
            while (consume('*')) parse_factor(term);
            GaussianRational v = neg ? -term.coeff : term.coeff;
            out.add_term(term.gens, ParamCoefficient::monomial(v, term.powers));
            first = false;
        }
        if (first) fail("empty polynomial");
        return out;
    }
};

}  // namespace

NcPolynomial parse_polynomial(const std::string& text, AlgebraPtr algebra) {
    Parser parser(text, *algebra);
    return parser.parse(algebra);
}

}  // namespace odm

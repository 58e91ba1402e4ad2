#include "odm/nc_polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace odm {

NcPolynomial NcPolynomial::constant(AlgebraPtr algebra, ParamCoefficient c) {
    NcPolynomial out(std::move(algebra));
    if (!c.is_zero()) out.terms_[NcMonomial(out.algebra_->size(), 0)] = std::move(c);
    return out;
}

NcPolynomial NcPolynomial::generator(AlgebraPtr algebra, std::string_view symbol, int power) {
    NcPolynomial out(algebra);
    int idx = algebra->require(symbol);
    if (power < 0) throw std::invalid_argument("generator powers must be nonnegative");
    NcMonomial m(algebra->size(), 0);
    m[static_cast<std::size_t>(idx)] = power;
    out.terms_[m] = ParamCoefficient::one();
    return out;
}

NcPolynomial NcPolynomial::from_terms(AlgebraPtr algebra,
                                      std::map<NcMonomial, ParamCoefficient> terms) {
    NcPolynomial out(std::move(algebra));
    for (auto& [m, c] : terms) {
        if (static_cast<int>(m.size()) != out.algebra_->size())
            throw std::invalid_argument("monomial arity does not match algebra");
        if (!c.is_zero()) out.terms_.emplace(m, std::move(c));
    }
    return out;
}

int NcPolynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
}

ParamCoefficient NcPolynomial::coefficient(const NcMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ParamCoefficient::zero() : it->second;
}

void NcPolynomial::add_term(const NcMonomial& m, const ParamCoefficient& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NcPolynomial operator+(const NcPolynomial& a, const NcPolynomial& b) {
    if (!same_algebra(a.algebra_, b.algebra_))
        throw AlgebraMismatchError("adding polynomials over different algebras");
    NcPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

NcPolynomial operator-(const NcPolynomial& a, const NcPolynomial& b) {
    if (!same_algebra(a.algebra_, b.algebra_))
        throw AlgebraMismatchError("subtracting polynomials over different algebras");
    NcPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
}

NcPolynomial operator-(const NcPolynomial& a) {
    NcPolynomial out(a.algebra_);
    for (const auto& [m, c] : a.terms_) out.terms_[m] = -c;
    return out;
}

NcPolynomial operator*(const ParamCoefficient& c, const NcPolynomial& a) {
    NcPolynomial out(a.algebra_);
    for (const auto& [m, v] : a.terms_) out.add_term(m, c * v);
    return out;
}

namespace {

// mono · g_k with mono canonical. Bubbles g_k left past higher-index blocks,
// one central swap at a time:  g_j^e g_k = g_k g_j^e + e·[g_j,g_k]·g_j^(e-1).
void multiply_monomial_by_generator(const AlgebraSpec& alg, const NcMonomial& mono,
                                    const ParamCoefficient& coeff, int k, NcPolynomial& acc) {
    int last = -1;
    for (int j = alg.size() - 1; j >= 0; --j) {
        if (mono[static_cast<std::size_t>(j)] > 0) {
            last = j;
            break;
        }
    }
    if (last <= k) {
        NcMonomial m = mono;
        m[static_cast<std::size_t>(k)] += 1;
        acc.add_term(m, coeff);
        return;
    }
    int e = mono[static_cast<std::size_t>(last)];
    NcMonomial head = mono;
    head[static_cast<std::size_t>(last)] = 0;

    // (head·g_k)·g_last^e
    NcPolynomial left(acc.algebra());
    multiply_monomial_by_generator(alg, head, coeff, k, left);
    for (const auto& [m, c] : left.terms()) {
        NcMonomial me = m;
        me[static_cast<std::size_t>(last)] += e;
        acc.add_term(me, c);
    }

    ParamCoefficient central = alg.commutator_value(last, k);
    if (!central.is_zero()) {
        NcMonomial me = head;
        me[static_cast<std::size_t>(last)] = e - 1;
        acc.add_term(me, coeff * central * ParamCoefficient(GaussianRational(e)));
    }
}

}  // namespace

NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b) {
    if (!same_algebra(a.algebra_, b.algebra_))
        throw AlgebraMismatchError("multiplying polynomials over different algebras");
    const AlgebraSpec& alg = *a.algebra_;
    NcPolynomial out(a.algebra_);
    for (const auto& [mb, cb] : b.terms_) {
        // Accumulate a·(one monomial of b), feeding b's generators in order.
        NcPolynomial cur(a.algebra_);
        for (const auto& [ma, ca] : a.terms_) cur.add_term(ma, ca * cb);
        for (int g = 0; g < alg.size(); ++g) {
            for (int rep = 0; rep < mb[static_cast<std::size_t>(g)]; ++rep) {
                NcPolynomial next(a.algebra_);
                for (const auto& [m, c] : cur.terms())
                    multiply_monomial_by_generator(alg, m, c, g, next);
                cur = std::move(next);
            }
        }
        for (const auto& [m, c] : cur.terms()) out.add_term(m, c);
    }
    return out;
}

NcPolynomial NcPolynomial::pow(int exponent) const {
    if (exponent < 0) throw std::invalid_argument("negative polynomial power");
    NcPolynomial out = one(algebra_);
    for (int k = 0; k < exponent; ++k) out = out * *this;
    return out;
}

NcPolynomial NcPolynomial::adjoint() const {
    // Generators are self-adjoint; a monomial adjoints to its reversal, which
    // is then re-ordered. Coefficients conjugate (i -> -i).
    NcPolynomial out(algebra_);
    const int n = algebra_->size();
    for (const auto& [m, c] : terms_) {
        std::vector<std::string> word;
        for (int g = n - 1; g >= 0; --g)
            for (int rep = 0; rep < m[static_cast<std::size_t>(g)]; ++rep)
                word.push_back(algebra_->generators()[static_cast<std::size_t>(g)]);
        NcPolynomial ordered = normal_order(word, algebra_);
        for (const auto& [mm, cc] : ordered.terms()) out.add_term(mm, c.conj() * cc);
    }
    return out;
}

NcPolynomial NcPolynomial::bind(Param p, const Rational& value) const {
    NcPolynomial out(algebra_);
    for (const auto& [m, c] : terms_) out.add_term(m, c.bind(p, value));
    return out;
}

NcPolynomial normal_order(std::span<const std::string> word, AlgebraPtr algebra) {
    const AlgebraSpec& alg = *algebra;
    NcPolynomial cur = NcPolynomial::one(algebra);
    for (const auto& symbol : word) {
        int g = alg.require(symbol);
        NcPolynomial next(algebra);
        for (const auto& [m, c] : cur.terms()) multiply_monomial_by_generator(alg, m, c, g, next);
        cur = std::move(next);
    }
    return cur;
}

NcPolynomial multiply(const NcPolynomial& a, const NcPolynomial& b) { return a * b; }

NcPolynomial commutator(const NcPolynomial& a, const NcPolynomial& b) { return a * b - b * a; }

NcPolynomial weyl_derivative(const NcPolynomial& f, std::string_view symbol) {
    int g = f.algebra()->require(symbol);
    NcPolynomial out(f.algebra());
    for (const auto& [m, c] : f.terms()) {
        int e = m[static_cast<std::size_t>(g)];
        if (e == 0) continue;
        NcMonomial d = m;
        d[static_cast<std::size_t>(g)] = e - 1;
        out.add_term(d, c * ParamCoefficient(GaussianRational(e)));
    }
    return out;
}

NcPolynomial check_weyl_theorem(const NcPolynomial& f, std::string_view b_symbol) {
    const AlgebraPtr& alg = f.algebra();
    int b = alg->require(b_symbol);
    NcPolynomial bpoly = NcPolynomial::generator(alg, b_symbol);
    NcPolynomial residual = commutator(f, bpoly);
    for (int k = 0; k < alg->size(); ++k) {
        ParamCoefficient central = alg->commutator_value(k, b);
        if (central.is_zero()) continue;
        residual -= central * weyl_derivative(f, alg->generators()[static_cast<std::size_t>(k)]);
    }
    return residual;
}

NcPolynomial substitute(const NcPolynomial& f, const GeneratorMap& map) {
    const AlgebraSpec& src = *f.algebra();
    AlgebraPtr dst;
    for (const auto& [sym, image] : map) {
        if (src.index_of(sym) < 0)
            throw UnknownGeneratorError("substitution map names '" + sym +
                                        "', absent from algebra " + src.name());
        if (!dst) dst = image.algebra();
        if (!same_algebra(dst, image.algebra()))
            throw AlgebraMismatchError("substitution images live in different algebras");
    }
    if (!dst) throw std::invalid_argument("empty substitution map");

    NcPolynomial out(dst);
    for (const auto& [m, c] : f.terms()) {
        NcPolynomial prod = NcPolynomial::constant(dst, c);
        for (int g = 0; g < src.size(); ++g) {
            int e = m[static_cast<std::size_t>(g)];
            if (e == 0) continue;
            auto it = map.find(src.generators()[static_cast<std::size_t>(g)]);
            if (it == map.end())
                throw UnknownGeneratorError("generator '" +
                                            src.generators()[static_cast<std::size_t>(g)] +
                                            "' has no image under the substitution map");
            prod = prod * it->second.pow(e);
        }
        out += prod;
    }
    return out;
}

HomomorphismReport check_homomorphism(const GeneratorMap& map, const AlgebraPtr& src,
                                      const AlgebraPtr& dst) {
    HomomorphismReport report;
    for (int a = 0; a < src->size(); ++a) {
        for (int b = a + 1; b < src->size(); ++b) {
            const auto& ga = src->generators()[static_cast<std::size_t>(a)];
            const auto& gb = src->generators()[static_cast<std::size_t>(b)];
            auto ia = map.find(ga);
            auto ib = map.find(gb);
            if (ia == map.end() || ib == map.end())
                throw UnknownGeneratorError("substitution map is not total on " + src->name());
            NcPolynomial image_comm = commutator(ia->second, ib->second);
            NcPolynomial expected =
                NcPolynomial::constant(dst, src->commutator_value(a, b));
            if (image_comm != expected) {
                report.ok = false;
                report.violations.push_back("[" + ga + "," + gb + "]");
            }
        }
    }
    return report;
}

NcPolynomial poisson_bracket(const NcPolynomial& f, const NcPolynomial& g,
                             std::string_view x_symbol, std::string_view p_symbol) {
    if (!same_algebra(f.algebra(), g.algebra()))
        throw AlgebraMismatchError("poisson bracket of polynomials over different algebras");
    const AlgebraPtr& alg = f.algebra();
    int xi = alg->require(x_symbol);
    int pi = alg->require(p_symbol);
    if (!alg->commutator_value(xi, pi).is_zero())
        throw std::invalid_argument("poisson bracket requires a commuting pair");
    return weyl_derivative(f, x_symbol) * weyl_derivative(g, p_symbol) -
           weyl_derivative(f, p_symbol) * weyl_derivative(g, x_symbol);
}

NcPolynomial retag(const NcPolynomial& f, AlgebraPtr target) {
    if (target->size() < f.algebra()->size())
        throw AlgebraMismatchError("retag target has fewer generators than source");
    NcPolynomial out(target);
    for (const auto& [m, c] : f.terms()) {
        NcMonomial mm(static_cast<std::size_t>(target->size()), 0);
        std::copy(m.begin(), m.end(), mm.begin());
        out.add_term(mm, c);
    }
    return out;
}

NcPolynomial weyl_symbol(const NcPolynomial& f, AlgebraPtr commutative_target) {
    const AlgebraPtr& src = f.algebra();
    NcPolynomial term = retag(f, commutative_target);
    NcPolynomial acc = term;
    Rational factorial(1);
    // D = Σ_{i<j} (c_ij/2)·∂i∂j strictly lowers degree, so the series ends.
    for (int k = 1; !term.is_zero(); ++k) {
        NcPolynomial next(commutative_target);
        for (int i = 0; i < src->size(); ++i) {
            for (int j = i + 1; j < src->size(); ++j) {
                ParamCoefficient c = src->commutator_value(i, j);
                if (c.is_zero()) continue;
                ParamCoefficient half =
                    c * ParamCoefficient(GaussianRational(Rational(1, 2)));
                next += half * weyl_derivative(
                                   weyl_derivative(
                                       term,
                                       commutative_target->generators()[static_cast<std::size_t>(i)]),
                                   commutative_target->generators()[static_cast<std::size_t>(j)]);
            }
        }
        term = std::move(next);
        factorial *= k;
        acc += ParamCoefficient(GaussianRational(Rational(1) / factorial)) * term;
        if (k > 2 * std::max(0, f.degree())) break;
    }
    return acc;
}

GeneratorMap bopp_map() {
    auto cl = AlgebraSpec::classical();
    ParamCoefficient half_hk = ParamCoefficient::monomial(GaussianRational(Rational(1, 2)),
                                                          ParamPowers{1, 1, 0});
    GeneratorMap map;
    map.emplace("x_q", NcPolynomial::generator(cl, "x") -
                           half_hk * NcPolynomial::generator(cl, "λp"));
    map.emplace("p_q", NcPolynomial::generator(cl, "p") +
                           half_hk * NcPolynomial::generator(cl, "λx"));
    map.emplace("θx", NcPolynomial::generator(cl, "λx"));
    map.emplace("θp", NcPolynomial::generator(cl, "λp"));
    return map;
}

}  // namespace odm

#include "odm/gensolve.hpp"

#include "odm/polynomial_text.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace odm {

namespace {

/// Element of the rational-function field over the parameter Laurent ring.
/// Kept lightly normalized: denominator's leading coefficient is 1 and its
/// monomial content is folded into the numerator.
struct FracCoeff {
    ParamCoefficient num;
    ParamCoefficient den = ParamCoefficient::one();

    static FracCoeff of(ParamCoefficient c) { return FracCoeff{std::move(c)}; }
    bool is_zero() const { return num.is_zero(); }

    void normalize() {
        if (num.is_zero()) {
            den = ParamCoefficient::one();
            return;
        }
        if (den.is_single_term()) {
            num = num * den.inverse_single_term();
            den = ParamCoefficient::one();
            return;
        }
        // Scale so the denominator's trailing coefficient is 1.
        const auto& [pw, v] = *den.terms().begin();
        ParamCoefficient scale =
            ParamCoefficient::monomial(GaussianRational(1) / v,
                                       ParamPowers{-pw[0], -pw[1], -pw[2]});
        num = num * scale;
        den = den * scale;
    }

    friend FracCoeff operator+(const FracCoeff& a, const FracCoeff& b) {
        FracCoeff out;
        if (a.den == b.den) {
            out.num = a.num + b.num;
            out.den = a.den;
        } else {
            out.num = a.num * b.den + b.num * a.den;
            out.den = a.den * b.den;
        }
        out.normalize();
        return out;
    }
    friend FracCoeff operator-(const FracCoeff& a, const FracCoeff& b) {
        FracCoeff out;
        if (a.den == b.den) {
            out.num = a.num - b.num;
            out.den = a.den;
        } else {
            out.num = a.num * b.den - b.num * a.den;
            out.den = a.den * b.den;
        }
        out.normalize();
        return out;
    }
    friend FracCoeff operator*(const FracCoeff& a, const FracCoeff& b) {
        FracCoeff out{a.num * b.num, a.den * b.den};
        out.normalize();
        return out;
    }
    friend FracCoeff operator/(const FracCoeff& a, const FracCoeff& b) {
        FracCoeff out{a.num * b.den, a.den * b.num};
        out.normalize();
        return out;
    }

    /// Collapse to a plain coefficient; throws when the quotient leaves the
    /// Laurent ring.
    ParamCoefficient value() const { return ParamCoefficient::divide_exact(num, den); }
};

std::vector<NcMonomial> candidate_monomials(const AlgebraSpec& alg, int max_degree,
                                            const std::vector<int>& allowed,
                                            bool include_identity) {
    std::vector<NcMonomial> out;
    NcMonomial cur(static_cast<std::size_t>(alg.size()), 0);
    // Depth-first over allowed slots, bounded by total degree.
    auto rec = [&](auto&& self, std::size_t slot, int remaining) -> void {
        if (slot == allowed.size()) {
            if (include_identity || monomial_degree(cur) > 0) out.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[static_cast<std::size_t>(allowed[slot])] = e;
            self(self, slot + 1, remaining - e);
        }
        cur[static_cast<std::size_t>(allowed[slot])] = 0;
    };
    rec(rec, 0, max_degree);
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

struct LinearSystem {
    std::vector<std::vector<FracCoeff>> rows;
    std::vector<FracCoeff> rhs;
    std::vector<NcMonomial> row_label;  // output monomial the row matches
};

struct SolveOutcome {
    bool consistent = true;
    NcPolynomial inconsistency_residual;
    GeneratorSolution solution;

    SolveOutcome() : inconsistency_residual(NcPolynomial::zero(AlgebraSpec::classical())) {}
};

SolveOutcome solve_at_degree(std::span<const EhrenfestConstraint> constraints,
                             const AlgebraPtr& algebra, int degree,
                             const std::vector<int>& allowed, bool include_identity) {
    const AlgebraSpec& alg = *algebra;
    std::vector<NcMonomial> cands = candidate_monomials(alg, degree, allowed, include_identity);
    const std::size_t ncols = cands.size();

    // Assemble scale_k·i·[μ_α, O_k] columns and collect equations per output
    // monomial.
    LinearSystem sys;
    std::map<std::pair<std::size_t, NcMonomial>, std::size_t> row_index;
    auto row_of = [&](std::size_t k, const NcMonomial& m) -> std::size_t {
        auto key = std::make_pair(k, m);
        auto it = row_index.find(key);
        if (it != row_index.end()) return it->second;
        std::size_t r = sys.rows.size();
        row_index.emplace(key, r);
        sys.rows.emplace_back(ncols);
        sys.rhs.emplace_back();
        sys.row_label.push_back(m);
        return r;
    };

    for (std::size_t k = 0; k < constraints.size(); ++k) {
        const auto& con = constraints[k];
        ParamCoefficient prefactor = con.scale * ParamCoefficient::i();
        for (std::size_t a = 0; a < ncols; ++a) {
            NcPolynomial mono = NcPolynomial::from_terms(
                algebra, {{cands[a], ParamCoefficient::one()}});
            NcPolynomial q = prefactor * commutator(mono, con.observable);
            for (const auto& [m, c] : q.terms()) {
                sys.rows[row_of(k, m)][a] = FracCoeff::of(c);
            }
        }
        for (const auto& [m, c] : con.rhs.terms()) sys.rhs[row_of(k, m)] = FracCoeff::of(c);
    }

    // Reduced row echelon form with graded-lex column order. Pivot rows are
    // chosen simplest-first to keep rational-function growth down.
    const std::size_t nrows = sys.rows.size();
    std::vector<bool> row_used(nrows, false);
    std::vector<long> pivot_row_of_col(ncols, -1);
    for (std::size_t col = 0; col < ncols; ++col) {
        long pivot = -1;
        std::size_t best_score = 0;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (row_used[r] || sys.rows[r][col].is_zero()) continue;
            std::size_t score = sys.rows[r][col].num.terms().size() +
                                sys.rows[r][col].den.terms().size();
            if (pivot < 0 || score < best_score) {
                pivot = static_cast<long>(r);
                best_score = score;
            }
        }
        if (pivot < 0) continue;
        std::size_t pr = static_cast<std::size_t>(pivot);
        row_used[pr] = true;
        pivot_row_of_col[col] = pivot;

        FracCoeff inv = FracCoeff::of(ParamCoefficient::one()) / sys.rows[pr][col];
        for (std::size_t c = 0; c < ncols; ++c)
            if (!sys.rows[pr][c].is_zero()) sys.rows[pr][c] = sys.rows[pr][c] * inv;
        if (!sys.rhs[pr].is_zero()) sys.rhs[pr] = sys.rhs[pr] * inv;

        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == pr || sys.rows[r][col].is_zero()) continue;
            FracCoeff factor = sys.rows[r][col];
            for (std::size_t c = 0; c < ncols; ++c) {
                if (sys.rows[pr][c].is_zero()) continue;
                sys.rows[r][c] = sys.rows[r][c] - factor * sys.rows[pr][c];
            }
            if (!sys.rhs[pr].is_zero()) sys.rhs[r] = sys.rhs[r] - factor * sys.rhs[pr];
        }
    }

    SolveOutcome out;
    // Consistency: a fully reduced zero row must carry zero rhs.
    NcPolynomial residual(algebra);
    for (std::size_t r = 0; r < nrows; ++r) {
        if (row_used[r]) continue;
        bool all_zero = true;
        for (std::size_t c = 0; c < ncols; ++c)
            if (!sys.rows[r][c].is_zero()) {
                all_zero = false;
                break;
            }
        if (all_zero && !sys.rhs[r].is_zero()) {
            out.consistent = false;
            residual.add_term(sys.row_label[r], sys.rhs[r].num);
        }
    }
    if (!out.consistent) {
        out.inconsistency_residual = residual;
        return out;
    }

    GeneratorSolution sol;
    // Particular solution: free coefficients zero, pivots read off the RREF.
    NcPolynomial particular(algebra);
    for (std::size_t col = 0; col < ncols; ++col) {
        if (pivot_row_of_col[col] < 0) continue;
        const FracCoeff& v = sys.rhs[static_cast<std::size_t>(pivot_row_of_col[col])];
        if (!v.is_zero()) particular.add_term(cands[col], v.value());
    }

    // Null basis: one element per free column, graded-lex order.
    for (std::size_t fc = 0; fc < ncols; ++fc) {
        if (pivot_row_of_col[fc] >= 0) continue;
        NcPolynomial basis(algebra);
        basis.add_term(cands[fc], ParamCoefficient::one());
        for (std::size_t col = 0; col < ncols; ++col) {
            if (pivot_row_of_col[col] < 0) continue;
            const FracCoeff& entry = sys.rows[static_cast<std::size_t>(pivot_row_of_col[col])][fc];
            if (!entry.is_zero()) basis.add_term(cands[col], (-entry.value()));
        }
        sol.null_basis.push_back(std::move(basis));
    }

    // Generators of motion are self-adjoint; take the hermitian part when it
    // still satisfies every constraint (the difference lies in the null space).
    auto residuals_of = [&](const NcPolynomial& g) {
        std::vector<NcPolynomial> res;
        for (const auto& con : constraints)
            res.push_back(con.scale * ParamCoefficient::i() * commutator(g, con.observable) -
                          con.rhs);
        return res;
    };
    NcPolynomial herm = ParamCoefficient(GaussianRational(Rational(1, 2))) *
                        (particular + particular.adjoint());
    auto herm_res = residuals_of(herm);
    bool herm_ok = std::all_of(herm_res.begin(), herm_res.end(),
                               [](const NcPolynomial& r) { return r.is_zero(); });
    if (herm_ok) {
        sol.particular = herm;
        sol.residuals = std::move(herm_res);
    } else {
        sol.particular = particular;
        sol.residuals = residuals_of(particular);
    }
    for (const auto& b : sol.null_basis) sol.null_basis_hermitian.push_back(b.is_hermitian());

    out.solution = std::move(sol);
    return out;
}

}  // namespace

GeneratorSolution solve_generator(std::span<const EhrenfestConstraint> constraints,
                                  const AnsatzSpec& ansatz) {
    if (!ansatz.algebra) throw std::invalid_argument("ansatz has no algebra");
    if (ansatz.max_degree < 1) throw std::invalid_argument("ansatz degree must be >= 1");
    const AlgebraSpec& alg = *ansatz.algebra;
    for (const auto& con : constraints) {
        if (!same_algebra(con.observable.algebra(), ansatz.algebra) ||
            !same_algebra(con.rhs.algebra(), ansatz.algebra))
            throw AlgebraMismatchError("constraint polynomials must live in the ansatz algebra");
    }
    std::vector<int> allowed;
    if (ansatz.allowed_generators.empty()) {
        for (int g = 0; g < alg.size(); ++g) allowed.push_back(g);
    } else {
        for (const auto& s : ansatz.allowed_generators) allowed.push_back(alg.require(s));
        std::sort(allowed.begin(), allowed.end());
        allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    }

    SolveOutcome first = solve_at_degree(constraints, ansatz.algebra, ansatz.max_degree, allowed,
                                         ansatz.include_identity);
    if (first.consistent) return first.solution;

    SolveOutcome retry = solve_at_degree(constraints, ansatz.algebra, ansatz.max_degree + 1,
                                         allowed, ansatz.include_identity);
    if (retry.consistent)
        throw DegreeTooLowError("no solution at degree " + std::to_string(ansatz.max_degree) +
                                "; degree " + std::to_string(ansatz.max_degree + 1) +
                                " is sufficient");
    throw InconsistentConstraintsError("constraints admit no polynomial generator",
                                       render(first.inconsistency_residual));
}

NcPolynomial nc_from_polynomial(const PolynomialForm& poly, AlgebraPtr algebra,
                                std::string_view generator) {
    NcPolynomial out(algebra);
    if (poly.is_zero()) return out;
    int g = algebra->require(generator);
    for (int k = 0; k <= poly.degree(); ++k) {
        const Rational& c = poly.coefficient(k);
        if (c == 0) continue;
        NcMonomial m(static_cast<std::size_t>(algebra->size()), 0);
        m[static_cast<std::size_t>(g)] = k;
        out.add_term(m, ParamCoefficient(GaussianRational(c)));
    }
    return out;
}

GeneratorSolution derive_liouvillian(const PolynomialForm& u_prime) {
    auto alg = AlgebraSpec::classical();
    std::vector<EhrenfestConstraint> cons;
    cons.push_back({NcPolynomial::generator(alg, "x"), NcPolynomial::generator(alg, "p"),
                    ParamCoefficient::symbol(Param::Mass)});
    cons.push_back({NcPolynomial::generator(alg, "p"), -nc_from_polynomial(u_prime, alg, "x"),
                    ParamCoefficient::one()});
    AnsatzSpec ansatz{alg, std::max(2, u_prime.degree() + 1), {}};
    return solve_generator(cons, ansatz);
}

GeneratorSolution derive_quantum_hamiltonian(const PolynomialForm& u) {
    auto alg = AlgebraSpec::quantum();
    PolynomialForm u_prime = u.derivative();
    ParamCoefficient hbar = ParamCoefficient::symbol(Param::Hbar);
    std::vector<EhrenfestConstraint> cons;
    cons.push_back({NcPolynomial::generator(alg, "x"),
                    hbar * NcPolynomial::generator(alg, "p"),
                    ParamCoefficient::symbol(Param::Mass)});
    cons.push_back({NcPolynomial::generator(alg, "p"),
                    -(hbar * nc_from_polynomial(u_prime, alg, "x")), ParamCoefficient::one()});
    AnsatzSpec ansatz{alg, std::max(2, u.degree()), {}};
    GeneratorSolution sol = solve_generator(cons, ansatz);
    // The constraints see only U'; pin the free constant so the particular
    // solution reads p²/(2m) + U(x) verbatim.
    const Rational& c0 = u.coefficient(0);
    if (c0 != 0) {
        NcMonomial identity(static_cast<std::size_t>(alg->size()), 0);
        sol.particular.add_term(identity, ParamCoefficient(GaussianRational(c0)) -
                                              sol.particular.coefficient(identity));
    }
    return sol;
}

UnifiedHamiltonian derive_unified_hamiltonian(const PolynomialForm& u) {
    auto alg = AlgebraSpec::unified();
    ParamCoefficient inv_kappa = ParamCoefficient::symbol(Param::Kappa, -1);
    ParamCoefficient half_inv_m = ParamCoefficient::monomial(
        GaussianRational(Rational(1, 2)), ParamPowers{0, 0, -1});
    ParamCoefficient hbar_kappa =
        ParamCoefficient::symbol(Param::Hbar) * ParamCoefficient::symbol(Param::Kappa);

    NcPolynomial xq = NcPolynomial::generator(alg, "x_q");
    NcPolynomial pq = NcPolynomial::generator(alg, "p_q");
    NcPolynomial theta_x = NcPolynomial::generator(alg, "θx");
    NcPolynomial theta_p = NcPolynomial::generator(alg, "θp");

    NcPolynomial shifted_p = pq - hbar_kappa * theta_x;   // p_q − ħκθx
    NcPolynomial shifted_x = xq + hbar_kappa * theta_p;   // x_q + ħκθp

    // U(x_q + ħκθp): expand the polynomial at the shifted argument.
    NcPolynomial u_at_xq(alg);
    NcPolynomial u_at_shifted(alg);
    for (int k = 0; k <= u.degree(); ++k) {
        const Rational& c = u.coefficient(k);
        if (c == 0) continue;
        ParamCoefficient cc{GaussianRational(c)};
        u_at_xq += cc * xq.pow(k);
        u_at_shifted += cc * shifted_x.pow(k);
    }

    UnifiedHamiltonian out{
        inv_kappa * (half_inv_m * (pq * pq) + u_at_xq) -
            inv_kappa * (half_inv_m * (shifted_p * shifted_p)) - inv_kappa * u_at_shifted,
        NcPolynomial::zero(AlgebraSpec::classical())};
    out.classical_form = substitute(out.unified, bopp_map());
    return out;
}

NcPolynomial kappa_limit(const NcPolynomial& f) {
    std::vector<std::string> offenders;
    NcPolynomial out(f.algebra());
    for (const auto& [m, c] : f.terms()) {
        if (c.min_power(Param::Kappa) < 0) {
            NcPolynomial term = NcPolynomial::from_terms(
                f.algebra(), {{m, c.part_with_power(Param::Kappa, c.min_power(Param::Kappa))}});
            offenders.push_back(render(term));
            continue;
        }
        out.add_term(m, c.part_with_power(Param::Kappa, 0));
    }
    if (!offenders.empty())
        throw KappaPoleError("polynomial has a pole at κ = 0", std::move(offenders));
    return out;
}

bool verify_theorem5(const PolynomialForm& u) {
    UnifiedHamiltonian h = derive_unified_hamiltonian(u);
    NcPolynomial hbar_l = ParamCoefficient::symbol(Param::Hbar) *
                          derive_liouvillian(u.derivative()).particular;
    return h.classical_form == hbar_l;
}

}  // namespace odm

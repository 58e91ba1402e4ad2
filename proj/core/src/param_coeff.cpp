#include "odm/param_coeff.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace odm {

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    return Rational(text);
}

ParamCoefficient ParamCoefficient::monomial(GaussianRational v, ParamPowers powers) {
    ParamCoefficient c;
    if (!v.is_zero()) c.terms_[powers] = std::move(v);
    return c;
}

ParamCoefficient ParamCoefficient::symbol(Param p, int power) {
    ParamPowers pw{0, 0, 0};
    pw[static_cast<int>(p)] = power;
    return monomial(GaussianRational(1), pw);
}

bool ParamCoefficient::is_real() const {
    for (const auto& [pw, v] : terms_)
        if (!v.is_real()) return false;
    return true;
}

bool ParamCoefficient::is_scalar() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == ParamPowers{0, 0, 0};
}

ParamCoefficient ParamCoefficient::conj() const {
    ParamCoefficient out;
    for (const auto& [pw, v] : terms_) out.terms_[pw] = v.conj();
    return out;
}

int ParamCoefficient::min_power(Param p) const {
    int idx = static_cast<int>(p);
    int best = 0;
    bool first = true;
    for (const auto& [pw, v] : terms_) {
        if (first || pw[idx] < best) best = pw[idx];
        first = false;
    }
    return best;
}

int ParamCoefficient::max_power(Param p) const {
    int idx = static_cast<int>(p);
    int best = 0;
    bool first = true;
    for (const auto& [pw, v] : terms_) {
        if (first || pw[idx] > best) best = pw[idx];
        first = false;
    }
    return best;
}

ParamCoefficient ParamCoefficient::part_with_power(Param p, int power) const {
    int idx = static_cast<int>(p);
    ParamCoefficient out;
    for (const auto& [pw, v] : terms_)
        if (pw[idx] == power) out.terms_[pw] = v;
    return out;
}

ParamCoefficient ParamCoefficient::bind(Param p, const Rational& value) const {
    int idx = static_cast<int>(p);
    ParamCoefficient out;
    for (const auto& [pw, v] : terms_) {
        ParamPowers npw = pw;
        npw[idx] = 0;
        Rational factor(1);
        int e = pw[idx];
        if (e != 0 && value == 0) throw std::domain_error("binding zero to a negative power");
        for (int k = 0; k < (e > 0 ? e : -e); ++k) factor *= value;
        GaussianRational nv = e >= 0 ? v * GaussianRational(factor)
                                     : GaussianRational{v.re / factor, v.im / factor};
        out.insert(npw, nv);
    }
    return out;
}

void ParamCoefficient::insert(const ParamPowers& p, const GaussianRational& v) {
    if (v.is_zero()) return;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(p, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ParamCoefficient operator+(const ParamCoefficient& a, const ParamCoefficient& b) {
    ParamCoefficient out = a;
    for (const auto& [pw, v] : b.terms_) out.insert(pw, v);
    return out;
}

ParamCoefficient operator-(const ParamCoefficient& a, const ParamCoefficient& b) {
    ParamCoefficient out = a;
    for (const auto& [pw, v] : b.terms_) out.insert(pw, -v);
    return out;
}

ParamCoefficient operator-(const ParamCoefficient& a) {
    ParamCoefficient out;
    for (const auto& [pw, v] : a.terms_) out.terms_[pw] = -v;
    return out;
}

ParamCoefficient operator*(const ParamCoefficient& a, const ParamCoefficient& b) {
    ParamCoefficient out;
    for (const auto& [pa, va] : a.terms_) {
        for (const auto& [pb, vb] : b.terms_) {
            ParamPowers pw{pa[0] + pb[0], pa[1] + pb[1], pa[2] + pb[2]};
            out.insert(pw, va * vb);
        }
    }
    return out;
}

ParamCoefficient ParamCoefficient::inverse_single_term() const {
    if (terms_.size() != 1) throw std::domain_error("inverse of non-single-term coefficient");
    const auto& [pw, v] = *terms_.begin();
    return monomial(GaussianRational(1) / v, ParamPowers{-pw[0], -pw[1], -pw[2]});
}

ParamCoefficient ParamCoefficient::divide_exact(const ParamCoefficient& num,
                                                const ParamCoefficient& den) {
    if (den.is_zero()) throw std::domain_error("division by zero coefficient");
    if (den.terms_.size() == 1) return num * den.inverse_single_term();

    // Leading-term division in the Laurent ring; terminates iff the quotient
    // exists (monomials are units, so divisibility never blocks a step).
    ParamCoefficient rem = num;
    ParamCoefficient quot;
    const std::size_t max_steps = num.terms_.size() * den.terms_.size() + 64;
    std::size_t steps = 0;
    while (!rem.is_zero()) {
        if (++steps > max_steps) throw std::domain_error("inexact Laurent division");
        const auto& [rp, rv] = *rem.terms_.rbegin();
        const auto& [dp, dv] = *den.terms_.rbegin();
        ParamCoefficient t =
            monomial(rv / dv, ParamPowers{rp[0] - dp[0], rp[1] - dp[1], rp[2] - dp[2]});
        quot += t;
        rem -= t * den;
    }
    return quot;
}

namespace {

std::string render_gaussian_prefix(const GaussianRational& v, bool& leading_minus) {
    // Renders |v| as a factor chain ("", "i", "(1/2)", "(1/2)*i", ...); the
    // sign is reported separately so callers can join terms with +/-.
    GaussianRational a = v;
    leading_minus = false;
    bool imag = false;
    if (a.im != 0) {
        imag = true;
        a = {a.im, Rational(0)};
    }
    if (a.re < 0) {
        leading_minus = true;
        a.re = -a.re;
    }
    std::string out;
    if (a.re != 1 || !imag) {
        if (denominator(a.re) == 1) {
            out = to_string(numerator(a.re));
        } else {
            out = "(" + to_string(a.re) + ")";
        }
    }
    if (imag) {
        if (!out.empty()) out += "*";
        out += "i";
    }
    return out;
}

}  // namespace

std::vector<std::string> ParamCoefficient::render_terms() const {
    std::vector<std::string> out;
    for (const auto& [pw, v] : terms_) {
        // A mixed complex value renders as two factors-with-sign entries.
        for (int part = 0; part < 2; ++part) {
            GaussianRational piece = part == 0 ? GaussianRational{v.re, Rational(0)}
                                               : GaussianRational{Rational(0), v.im};
            if (piece.is_zero()) continue;
            bool neg = false;
            std::string s = render_gaussian_prefix(piece, neg);
            bool has_params = pw != ParamPowers{0, 0, 0};
            if (s == "1" && has_params) s.clear();
            for (int k = 0; k < 3; ++k) {
                if (pw[k] == 0) continue;
                if (!s.empty()) s += "*";
                s += param_name(static_cast<Param>(k));
                if (pw[k] != 1) s += "^" + std::to_string(pw[k]);
            }
            if (s.empty()) s = "1";
            out.push_back((neg ? "-" : "") + s);
        }
    }
    if (out.empty()) out.push_back("0");
    return out;
}

std::string ParamCoefficient::render() const {
    auto parts = render_terms();
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k == 0) {
            out = parts[k];
        } else if (!parts[k].empty() && parts[k][0] == '-') {
            out += " - " + parts[k].substr(1);
        } else {
            out += " + " + parts[k];
        }
    }
    return out;
}

}  // namespace odm

#include "odm/algebra.hpp"

#include "odm/errors.hpp"

#include <stdexcept>

namespace odm {

AlgebraSpec::AlgebraSpec(std::string name, std::vector<std::string> generators,
                         std::map<std::pair<int, int>, ParamCoefficient> commutators)
    : name_(std::move(name)), generators_(std::move(generators)), table_(std::move(commutators)) {
    for (const auto& [key, val] : table_) {
        if (key.first < 0 || key.second < 0 || key.first >= size() || key.second >= size() ||
            key.first >= key.second)
            throw std::invalid_argument("commutator table must be keyed by (i<j) generator pairs");
        (void)val;
    }
}

int AlgebraSpec::index_of(std::string_view symbol) const {
    for (int k = 0; k < size(); ++k)
        if (generators_[static_cast<std::size_t>(k)] == symbol) return k;
    return -1;
}

int AlgebraSpec::require(std::string_view symbol) const {
    int k = index_of(symbol);
    if (k < 0)
        throw UnknownGeneratorError("unknown generator '" + std::string(symbol) + "' in algebra " +
                                    name_);
    return k;
}

ParamCoefficient AlgebraSpec::commutator_value(int a, int b) const {
    if (a == b) return ParamCoefficient::zero();
    bool flip = a > b;
    auto it = table_.find(flip ? std::make_pair(b, a) : std::make_pair(a, b));
    if (it == table_.end()) return ParamCoefficient::zero();
    return flip ? -it->second : it->second;
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::classical() {
    static const auto alg = std::make_shared<const AlgebraSpec>(
        "classical",
        std::vector<std::string>{"x", "p", "λx", "λp"},
        std::map<std::pair<int, int>, ParamCoefficient>{
            {{0, 2}, ParamCoefficient::i()},
            {{1, 3}, ParamCoefficient::i()},
        });
    return alg;
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::quantum() {
    static const auto alg = std::make_shared<const AlgebraSpec>(
        "quantum",
        std::vector<std::string>{"x", "p"},
        std::map<std::pair<int, int>, ParamCoefficient>{
            {{0, 1}, ParamCoefficient::i() * ParamCoefficient::symbol(Param::Hbar)},
        });
    return alg;
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::unified() {
    static const auto alg = std::make_shared<const AlgebraSpec>(
        "unified",
        std::vector<std::string>{"x_q", "p_q", "θx", "θp"},
        std::map<std::pair<int, int>, ParamCoefficient>{
            {{0, 1}, ParamCoefficient::i() * ParamCoefficient::symbol(Param::Hbar) *
                         ParamCoefficient::symbol(Param::Kappa)},
            {{0, 2}, ParamCoefficient::i()},
            {{1, 3}, ParamCoefficient::i()},
        });
    return alg;
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::commutative_xp() {
    static const auto alg = std::make_shared<const AlgebraSpec>(
        "commutative",
        std::vector<std::string>{"x", "p"},
        std::map<std::pair<int, int>, ParamCoefficient>{});
    return alg;
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::preset(std::string_view name) {
    if (name == "classical") return classical();
    if (name == "quantum") return quantum();
    if (name == "unified") return unified();
    if (name == "commutative") return commutative_xp();
    throw std::invalid_argument("unknown algebra preset '" + std::string(name) + "'");
}

}  // namespace odm

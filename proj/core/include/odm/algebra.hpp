#pragma once

#include "odm/param_coeff.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace odm {

/// A generator set with central commutation relations. Only the (i<j)
/// orientation of [g_i, g_j] is stored; the reverse is derived by
/// antisymmetry. Every commutator value is a central scalar, which is what
/// keeps the canonically ordered monomial basis closed under products.
class AlgebraSpec {
  public:
    AlgebraSpec(std::string name, std::vector<std::string> generators,
                std::map<std::pair<int, int>, ParamCoefficient> commutators);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& generators() const { return generators_; }
    int size() const { return static_cast<int>(generators_.size()); }

    /// Index of a generator symbol, or -1 when absent.
    int index_of(std::string_view symbol) const;
    /// Index of a generator symbol; throws UnknownGeneratorError when absent.
    int require(std::string_view symbol) const;

    /// Central value of [g_a, g_b] for any orientation.
    ParamCoefficient commutator_value(int a, int b) const;

    /// All generators here are self-adjoint.
    bool hermitian(int) const { return true; }

    bool operator==(const AlgebraSpec& o) const {
        return generators_ == o.generators_ && table_ == o.table_;
    }

    /// Classical operator algebra {x, p, λx, λp}: [x,λx] = [p,λp] = i.
    static std::shared_ptr<const AlgebraSpec> classical();
    /// Quantum canonical pair {x, p}: [x,p] = iħ.
    static std::shared_ptr<const AlgebraSpec> quantum();
    /// Unified algebra {x_q, p_q, θx, θp}: [x_q,p_q] = iħκ, [x_q,θx] = [p_q,θp] = i.
    static std::shared_ptr<const AlgebraSpec> unified();
    /// Commuting pair {x, p}; the target of commutative-symbol maps.
    static std::shared_ptr<const AlgebraSpec> commutative_xp();
    /// Lookup by preset name ("classical", "quantum", "unified", "commutative").
    static std::shared_ptr<const AlgebraSpec> preset(std::string_view name);

  private:
    std::string name_;
    std::vector<std::string> generators_;
    std::map<std::pair<int, int>, ParamCoefficient> table_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a == b || (a && b && *a == *b);
}

}  // namespace odm

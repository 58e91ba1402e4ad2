#include "odm/grid.hpp"

#include "odm/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace odm {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double Grid1D::dfreq() const { return 2.0 * std::numbers::pi / length(); }

double Grid1D::freq(int k) const {
    int signed_k = k < n / 2 ? k : k - n;
    return signed_k * dfreq();
}

void Grid1D::validate(const char* label) const {
    std::string what(label);
    if (!is_power_of_two(n) || n < 8)
        throw DomainError(what + " axis size must be a power of two >= 8");
    if (!std::isfinite(min) || !std::isfinite(max) || !(max > min))
        throw DomainError(what + " axis extents must be finite with max > min");
}

void Grid2D::validate() const {
    x_axis().validate("x");
    y_axis().validate("y");
}

}  // namespace odm

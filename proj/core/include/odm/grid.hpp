#pragma once

#include <cstddef>

namespace odm {

/// Uniform periodic axis with n points on [min, max); conjugate (angular)
/// frequencies have spacing 2π/(max − min) in the standard FFT layout.
struct Grid1D {
    int n = 0;
    double min = 0.0;
    double max = 0.0;

    double length() const { return max - min; }
    double dx() const { return length() / n; }
    double at(int i) const { return min + i * dx(); }
    /// Signed frequency of FFT bin k (k = 0..n-1).
    double freq(int k) const;
    double dfreq() const;

    void validate(const char* label) const;
    friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

/// Product of two periodic axes. Row-major, x-major storage is normative:
/// index = ix*ny + iy.
struct Grid2D {
    int nx = 0, ny = 0;
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;

    Grid1D x_axis() const { return {nx, x_min, x_max}; }
    Grid1D y_axis() const { return {ny, y_min, y_max}; }
    double dx() const { return (x_max - x_min) / nx; }
    double dy() const { return (y_max - y_min) / ny; }
    double cell() const { return dx() * dy(); }
    double x(int i) const { return x_min + i * dx(); }
    double y(int j) const { return y_min + j * dy(); }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(ix) * static_cast<std::size_t>(ny) +
               static_cast<std::size_t>(iy);
    }

    void validate() const;
    friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

bool is_power_of_two(int n);

}  // namespace odm

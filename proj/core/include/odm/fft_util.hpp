#pragma once

#include "odm/state.hpp"

#include <complex>
#include <vector>

namespace odm {

/// Thin deterministic wrapper over FFTW (ESTIMATE plans, plan creation
/// serialized behind a global mutex). Transforms are unnormalized; callers
/// divide by the axis length on the inverse leg.
namespace fft {

enum class Axis { X, Y };
enum class Direction { Forward, Backward };  // Forward = e^{-i...}

/// In-place transform along one axis of an nx×ny row-major (x-major) array.
void transform_axis(std::vector<Complex>& data, int nx, int ny, Axis axis, Direction dir);

/// In-place 1-D transform.
void transform(std::vector<Complex>& data, Direction dir);

}  // namespace fft

}  // namespace odm

#include "odm/fft_util.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace odm::fft {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan p) const {
        if (p) {
            std::lock_guard<std::mutex> lock(planner_mutex());
            fftw_destroy_plan(p);
        }
    }
};

void execute_many(fftw_complex* data, int n, int howmany, int stride, int dist, int sign) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_many_dft(1, &n, howmany, data, nullptr, stride, dist, data, nullptr,
                                  stride, dist, sign, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

}  // namespace

void transform_axis(std::vector<Complex>& data, int nx, int ny, Axis axis, Direction dir) {
    if (static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) != data.size())
        throw std::invalid_argument("grid size does not match data");
    int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
    auto* raw = reinterpret_cast<fftw_complex*>(data.data());
    if (axis == Axis::Y) {
        execute_many(raw, ny, nx, 1, ny, sign);
    } else {
        execute_many(raw, nx, ny, ny, 1, sign);
    }
}

void transform(std::vector<Complex>& data, Direction dir) {
    int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
    execute_many(reinterpret_cast<fftw_complex*>(data.data()), static_cast<int>(data.size()), 1, 1,
                 1, sign);
}

}  // namespace odm::fft

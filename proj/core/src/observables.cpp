#include "odm/observables.hpp"

#include "odm/errors.hpp"
#include "odm/fft_util.hpp"
#include "odm/wigner_transform.hpp"

#include <cmath>
#include <functional>

namespace odm {

namespace {

const ExprAst& require_potential(const ExprAst* potential) {
    if (!potential || potential->empty())
        throw std::invalid_argument("this observable needs the potential");
    return *potential;
}

}  // namespace

double expectation(const PhaseSpaceState& state, Observable obs, const ExprAst* potential,
                   double hbar, double mass) {
    if (state.repr == Representation::Chi)
        return expectation(wigner_from_chi(state), obs, potential, hbar, mass);

    const Grid2D& g = state.grid;
    std::function<double(double, double)> weight;
    ExprAst u_prime;
    switch (obs) {
        case Observable::X: weight = [](double x, double) { return x; }; break;
        case Observable::P: weight = [](double, double p) { return p; }; break;
        case Observable::X2: weight = [](double x, double) { return x * x; }; break;
        case Observable::P2: weight = [](double, double p) { return p * p; }; break;
        case Observable::MinusUPrime: {
            u_prime = differentiate(require_potential(potential));
            weight = [&u_prime](double x, double) { return -eval(u_prime, x); };
            break;
        }
        case Observable::Energy: {
            const ExprAst& u = require_potential(potential);
            weight = [&u, mass](double x, double p) { return 0.5 * p * p / mass + eval(u, x); };
            break;
        }
    }

    double acc = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        double x = g.x(i);
        for (int j = 0; j < g.ny; ++j) {
            double density = state.repr == Representation::KvN ? std::norm(state.at(i, j))
                                                               : state.at(i, j).real();
            acc += weight(x, g.y(j)) * density;
        }
    }
    return acc * g.cell();
}

double expectation(const QuantumState& state, Observable obs, const ExprAst* potential,
                   double hbar, double mass) {
    const Grid1D& g = state.grid;
    auto position_average = [&](const std::function<double(double)>& w) {
        double acc = 0.0;
        for (int i = 0; i < g.n; ++i)
            acc += w(g.at(i)) * std::norm(state.amp[static_cast<std::size_t>(i)]);
        return acc * g.dx();
    };
    auto momentum_average = [&](const std::function<double(double)>& w) {
        std::vector<Complex> hat = state.amp;
        fft::transform(hat, fft::Direction::Forward);
        double acc = 0.0;
        for (int k = 0; k < g.n; ++k)
            acc += w(hbar * g.freq(k)) * std::norm(hat[static_cast<std::size_t>(k)]);
        return acc * g.dx() / g.n;  // Parseval weight
    };

    switch (obs) {
        case Observable::X: return position_average([](double x) { return x; });
        case Observable::X2: return position_average([](double x) { return x * x; });
        case Observable::P: return momentum_average([](double p) { return p; });
        case Observable::P2: return momentum_average([](double p) { return p * p; });
        case Observable::MinusUPrime: {
            ExprAst u_prime = differentiate(require_potential(potential));
            return position_average([&u_prime](double x) { return -eval(u_prime, x); });
        }
        case Observable::Energy: {
            const ExprAst& u = require_potential(potential);
            double kinetic = momentum_average([mass](double p) { return 0.5 * p * p / mass; });
            double pot = position_average([&u](double x) { return eval(u, x); });
            return kinetic + pot;
        }
    }
    return 0.0;
}

}  // namespace odm

#include <benchmark/benchmark.h>

#include "odm/gensolve.hpp"
#include "odm/propagate.hpp"
#include "odm/wigner_transform.hpp"

#include <cmath>

using namespace odm;

namespace {

PolynomialForm quartic() {
    PolynomialForm u;
    u.coefficients = {Rational(0), Rational(0), Rational(1, 2), Rational(0), Rational(1, 10)};
    return u;
}

void BM_NormalOrderProduct(benchmark::State& state) {
    auto cl = AlgebraSpec::classical();
    int degree = static_cast<int>(state.range(0));
    NcPolynomial a = NcPolynomial::generator(cl, "p", degree) *
                     NcPolynomial::generator(cl, "λx", degree);
    NcPolynomial b = NcPolynomial::generator(cl, "x", degree) *
                     NcPolynomial::generator(cl, "λp", degree);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_NormalOrderProduct)->Arg(2)->Arg(4)->Arg(6);

void BM_DeriveLiouvillian(benchmark::State& state) {
    PolynomialForm u_prime = quartic().derivative();
    for (auto _ : state) benchmark::DoNotOptimize(derive_liouvillian(u_prime));
}
BENCHMARK(BM_DeriveLiouvillian);

void BM_DeriveUnified(benchmark::State& state) {
    PolynomialForm u = quartic();
    for (auto _ : state) benchmark::DoNotOptimize(derive_unified_hamiltonian(u));
}
BENCHMARK(BM_DeriveUnified);

void BM_LiouvilleStep(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Grid2D grid{n, n, -8.0, 8.0, -8.0, 8.0};
    ExprAst u = parse_potential("0.5*x^2 + 0.1*x^4");
    PropagatorConfig cfg;
    PhaseSpaceState s =
        make_gaussian_kvn(grid, GaussianSpec{0.5, 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
    LiouvillePropagator prop(grid, u, cfg);
    for (auto _ : state) prop.step(s);
}
BENCHMARK(BM_LiouvilleStep)->Arg(128)->Arg(256);

void BM_WignerStep(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    ExprAst u = parse_potential("0.5*x^2 + 0.1*x^4");
    PropagatorConfig cfg;
    PhaseSpaceState s = make_gaussian_chi(
        Grid1D{n, -8.0, 8.0}, GaussianSpec{0.5, 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)},
        1.0, 1.0);
    WignerPropagator prop(s.grid, u, cfg);
    for (auto _ : state) prop.step(s);
}
BENCHMARK(BM_WignerStep)->Arg(128)->Arg(256);

void BM_SchrodingerStep(benchmark::State& state) {
    Grid1D grid{static_cast<int>(state.range(0)), -10.0, 10.0};
    ExprAst u = parse_potential("0.5*x^2 + 0.1*x^4");
    PropagatorConfig cfg;
    QuantumState s =
        make_gaussian_quantum(grid, GaussianSpec{0.5, 0.0, 1.0 / std::sqrt(2.0), 0.0}, 1.0);
    SchrodingerPropagator prop(grid, u, cfg);
    for (auto _ : state) prop.step(s);
}
BENCHMARK(BM_SchrodingerStep)->Arg(256)->Arg(1024);

void BM_WignerFromQuantum(benchmark::State& state) {
    Grid1D grid{static_cast<int>(state.range(0)), -12.0, 12.0};
    QuantumState psi =
        make_gaussian_quantum(grid, GaussianSpec{0.0, 0.0, 1.0 / std::sqrt(2.0), 0.0}, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(wigner_from_quantum(psi, 1.0, 1.0));
}
BENCHMARK(BM_WignerFromQuantum)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();

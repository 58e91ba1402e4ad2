#include <catch2/catch_amalgamated.hpp>

#include "odm/state_io.hpp"
#include "odm/trace.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace odm;

namespace {

constexpr double kPi = std::numbers::pi;

PropagatorConfig cfg_of(double dt, long steps, long record_every, double kappa = 1.0) {
    PropagatorConfig cfg;
    cfg.dt = dt;
    cfg.steps = steps;
    cfg.record_every = record_every;
    cfg.kappa = kappa;
    return cfg;
}

}  // namespace

TEST_CASE("free particle traces have tiny dynamical residuals") {
    ExprAst u = parse_potential("0");
    PropagatorConfig cfg = cfg_of(5e-3, 200, 10);

    Grid2D kvn_grid{128, 128, -12.0, 12.0, -8.0, 8.0};
    GaussianSpec spec{-1.0, 0.9, 0.75, 0.75};

    TraceReport liou = run_trace(AnyState(make_gaussian_kvn(kvn_grid, spec)),
                                 PropagatorKind::Liouville, u, cfg);
    CHECK(liou.residual_x < 1e-8);
    CHECK(liou.residual_p < 1e-8);

    TraceReport qm =
        run_trace(AnyState(make_gaussian_quantum(Grid1D{256, -14.0, 14.0}, spec, 1.0)),
                  PropagatorKind::Schrodinger, u, cfg);
    CHECK(qm.residual_x < 1e-8);
    CHECK(qm.residual_p < 1e-8);

    TraceReport wig =
        run_trace(AnyState(make_gaussian_chi(Grid1D{128, -12.0, 12.0}, spec, 1.0, 1.0)),
                  PropagatorKind::Wigner, u, cfg);
    CHECK(wig.residual_x < 1e-8);
    CHECK(wig.residual_p < 1e-8);
}

TEST_CASE("harmonic quantum trace meets the identity budget") {
    ExprAst u = parse_potential("0.5*x^2");
    long steps = 4096;
    PropagatorConfig cfg = cfg_of(2.0 * kPi / static_cast<double>(steps), steps, 1);
    GaussianSpec spec{1.0, 0.0, 1.0 / std::sqrt(2.0), 0.0};
    TraceReport trace =
        run_trace(AnyState(make_gaussian_quantum(Grid1D{256, -10.0, 10.0}, spec, 1.0)),
                  PropagatorKind::Schrodinger, u, cfg);
    CHECK(trace.residual_x < 1e-6);
    CHECK(trace.residual_p < 1e-6);
    for (double n : trace.norm) CHECK(std::abs(n - 1.0) < 1e-9);
}

TEST_CASE("quartic wigner trace keeps the identities while leaving the classical path") {
    ExprAst u = parse_potential("x^4");
    PropagatorConfig cfg = cfg_of(1e-3, 500, 1);
    GaussianSpec spec{0.25, 0.0, 0.5, 1.0};  // squeezed pure state, σxσp = ħκ/2
    TraceReport trace =
        run_trace(AnyState(make_gaussian_chi(Grid1D{256, -8.0, 8.0}, spec, 1.0, 1.0)),
                  PropagatorKind::Wigner, u, cfg);
    CHECK(trace.residual_x < 1e-5);
    CHECK(trace.residual_p < 1e-5);
}

TEST_CASE("compare_trajectories") {
    ExprAst u = parse_potential("0.5*x^2");
    PropagatorConfig cfg = cfg_of(2.0 * kPi / 1024.0, 1024, 8);
    GaussianSpec spec{0.8, 0.3, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};

    Grid2D kvn_grid{128, 128, -8.0, 8.0, -8.0, 8.0};
    TraceReport a = run_trace(AnyState(make_gaussian_kvn(kvn_grid, spec)),
                              PropagatorKind::Liouville, u, cfg);

    SECTION("identical reports have zero distance") {
        TrajectoryDistance d = compare_trajectories(a, a);
        CHECK(d.max_dx == 0.0);
        CHECK(d.rms_dx == 0.0);
        CHECK(d.max_dp == 0.0);
    }
    SECTION("harmonic wigner stays on the liouville trajectory") {
        PropagatorConfig wcfg = cfg;
        wcfg.kappa = 0.5;
        TraceReport b =
            run_trace(AnyState(make_gaussian_chi(kvn_grid.x_axis(), spec, 0.5, 1.0)),
                      PropagatorKind::Wigner, u, wcfg);
        TrajectoryDistance d = compare_trajectories(a, b);
        CHECK(d.max_dx < 1e-7);
        CHECK(d.max_dp < 1e-7);
    }
}

TEST_CASE("global phase leaves every trace column unchanged") {
    ExprAst u = parse_potential("0.5*x^2 + 0.1*x^4");
    PropagatorConfig cfg = cfg_of(1e-2, 100, 5);
    Grid2D grid{64, 64, -7.0, 7.0, -7.0, 7.0};
    PhaseSpaceState s = make_gaussian_kvn(grid, GaussianSpec{0.7, 0.0, 0.7, 0.7});
    PhaseSpaceState phased = s;
    Complex phase = std::polar(1.0, 0.83);
    for (Complex& a : phased.amp) a *= phase;

    TraceReport ta = run_trace(AnyState(std::move(s)), PropagatorKind::Liouville, u, cfg);
    TraceReport tb = run_trace(AnyState(std::move(phased)), PropagatorKind::Liouville, u, cfg);
    for (std::size_t i = 0; i < ta.times.size(); ++i) {
        CHECK(ta.mean_x[i] == Catch::Approx(tb.mean_x[i]).margin(1e-13));
        CHECK(ta.mean_p[i] == Catch::Approx(tb.mean_p[i]).margin(1e-13));
        CHECK(ta.norm[i] == Catch::Approx(tb.norm[i]).margin(1e-13));
        CHECK(ta.energy[i] == Catch::Approx(tb.energy[i]).margin(1e-13));
    }
}

TEST_CASE("residuals shrink quadratically with the sampling interval") {
    ExprAst u = parse_potential("0.5*x^2");
    PropagatorConfig cfg = cfg_of(1e-3, 4000, 5);
    GaussianSpec spec{1.0, 0.0, 1.0 / std::sqrt(2.0), 0.0};
    TraceReport fine =
        run_trace(AnyState(make_gaussian_quantum(Grid1D{256, -10.0, 10.0}, spec, 1.0)),
                  PropagatorKind::Schrodinger, u, cfg);
    TraceReport coarse = decimate(fine, 2);
    double ratio = coarse.residual_x / fine.residual_x;
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("kappa_sweep") {
    ExprAst u = parse_potential("0.5*x^2");
    PropagatorConfig cfg = cfg_of(2.0 * kPi / 512.0, 512, 8);
    GaussianSpec spec{0.8, 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    // the x-box also sets the sweep's λp reach; ±12 keeps the χ tails clear
    Grid2D kvn_grid{256, 256, -12.0, 12.0, -8.0, 8.0};

    SECTION("empty kappa list is rejected") {
        std::vector<double> none;
        CHECK_THROWS_AS(kappa_sweep(spec, kvn_grid, u, none, cfg), DomainError);
    }
    SECTION("quadratic potential gives vanishing distances") {
        std::vector<double> kappas{0.5};
        auto rows = kappa_sweep(spec, kvn_grid, u, kappas, cfg);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].kappa == 0.5);
        CHECK(rows[0].distance.max_dx < 1e-7);
        CHECK(rows[0].distance.max_dp < 1e-7);
    }
}

TEST_CASE("trace csv carries the sampled columns") {
    ExprAst u = parse_potential("0.5*x^2");
    PropagatorConfig cfg = cfg_of(1e-2, 20, 5);
    Grid2D grid{32, 32, -6.0, 6.0, -6.0, 6.0};
    TraceReport trace = run_trace(AnyState(make_gaussian_kvn(grid, GaussianSpec{0.5, 0.0, 0.7, 0.7})),
                                  PropagatorKind::Liouville, u, cfg);
    auto path = std::filesystem::temp_directory_path() / "odm_trace_test.csv";
    write_trace_csv(path, trace, "{\"mode\":\"test\"}");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# config:", 0) == 0);
    std::getline(in, line);  // residual comment
    std::getline(in, line);
    CHECK(line == "t,mean_x,mean_p,mean_minus_uprime,norm,energy");
    std::size_t rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == trace.times.size());
    std::filesystem::remove(path);
}

#include "odm/trace.hpp"

#include "odm/errors.hpp"
#include "odm/observables.hpp"
#include "odm/wigner_transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <thread>

namespace odm {

std::string propagator_name(PropagatorKind k) {
    switch (k) {
        case PropagatorKind::Liouville: return "liouville";
        case PropagatorKind::Schrodinger: return "schrodinger";
        default: return "wigner";
    }
}

PropagatorKind propagator_from_name(const std::string& name) {
    if (name == "liouville") return PropagatorKind::Liouville;
    if (name == "schrodinger") return PropagatorKind::Schrodinger;
    if (name == "wigner") return PropagatorKind::Wigner;
    throw DomainError("unknown propagator '" + name + "'");
}

void recompute_residuals(TraceReport& r) {
    r.residual_x = 0.0;
    r.residual_p = 0.0;
    const std::size_t n = r.times.size();
    if (n < 3) return;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double dt = r.times[i + 1] - r.times[i - 1];
        double dxdt = (r.mean_x[i + 1] - r.mean_x[i - 1]) / dt;
        double dpdt = (r.mean_p[i + 1] - r.mean_p[i - 1]) / dt;
        r.residual_x = std::max(r.residual_x, std::abs(r.mass * dxdt - r.mean_p[i]));
        r.residual_p = std::max(r.residual_p, std::abs(dpdt - r.mean_minus_uprime[i]));
    }
}

TraceReport decimate(const TraceReport& report, int factor) {
    if (factor < 1) throw DomainError("decimation factor must be >= 1");
    TraceReport out;
    out.scheme = report.scheme;
    out.mass = report.mass;
    out.sample_dt = report.sample_dt * factor;
    for (std::size_t i = 0; i < report.times.size(); i += static_cast<std::size_t>(factor)) {
        out.times.push_back(report.times[i]);
        out.mean_x.push_back(report.mean_x[i]);
        out.mean_p.push_back(report.mean_p[i]);
        out.mean_minus_uprime.push_back(report.mean_minus_uprime[i]);
        out.norm.push_back(report.norm[i]);
        out.energy.push_back(report.energy[i]);
    }
    recompute_residuals(out);
    return out;
}

namespace {

struct Sampler {
    const ExprAst& potential;
    double hbar, mass;
    TraceReport& report;

    template <typename State>
    void sample(const State& state, double norm) {
        report.times.push_back(state.time);
        report.mean_x.push_back(expectation(state, Observable::X, &potential, hbar, mass));
        report.mean_p.push_back(expectation(state, Observable::P, &potential, hbar, mass));
        report.mean_minus_uprime.push_back(
            expectation(state, Observable::MinusUPrime, &potential, hbar, mass));
        report.norm.push_back(norm);
        report.energy.push_back(expectation(state, Observable::Energy, &potential, hbar, mass));
    }
};

}  // namespace

TraceReport run_trace(AnyState initial, PropagatorKind kind, const ExprAst& potential,
                      const PropagatorConfig& cfg) {
    TraceReport report;
    report.sample_dt = cfg.dt * static_cast<double>(cfg.record_every);
    report.mass = cfg.mass;
    Sampler sampler{potential, cfg.hbar, cfg.mass, report};

    if (kind == PropagatorKind::Schrodinger) {
        if (!std::holds_alternative<QuantumState>(initial))
            throw RepresentationError("schrodinger trace expects a quantum state");
        QuantumState state = std::get<QuantumState>(std::move(initial));
        SchrodingerPropagator prop(state.grid, potential, cfg);
        sampler.sample(state, state.quadratic_norm());
        for (long s = 0; s < cfg.steps; ++s) {
            prop.step(state);
            if ((s + 1) % cfg.record_every == 0 || s + 1 == cfg.steps)
                sampler.sample(state, state.quadratic_norm());
        }
    } else {
        if (!std::holds_alternative<PhaseSpaceState>(initial))
            throw RepresentationError("phase-space trace expects a phase-space state");
        PhaseSpaceState state = std::get<PhaseSpaceState>(std::move(initial));
        if (kind == PropagatorKind::Liouville) {
            LiouvillePropagator prop(state.grid, potential, cfg);
            sampler.sample(state, state.physical_norm());
            for (long s = 0; s < cfg.steps; ++s) {
                prop.step(state);
                if ((s + 1) % cfg.record_every == 0 || s + 1 == cfg.steps)
                    sampler.sample(state, state.physical_norm());
            }
        } else {
            WignerPropagator prop(state.grid, potential, cfg);
            sampler.sample(state, state.physical_norm());
            for (long s = 0; s < cfg.steps; ++s) {
                prop.step(state);
                if ((s + 1) % cfg.record_every == 0 || s + 1 == cfg.steps)
                    sampler.sample(state, state.physical_norm());
            }
        }
    }
    recompute_residuals(report);
    return report;
}

TrajectoryDistance compare_trajectories(const TraceReport& a, const TraceReport& b) {
    TrajectoryDistance out;
    std::size_t n = std::min(a.times.size(), b.times.size());
    if (n == 0) return out;
    double sum_dx2 = 0.0, sum_dp2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = a.mean_x[i] - b.mean_x[i];
        double dp = a.mean_p[i] - b.mean_p[i];
        out.max_dx = std::max(out.max_dx, std::abs(dx));
        out.max_dp = std::max(out.max_dp, std::abs(dp));
        sum_dx2 += dx * dx;
        sum_dp2 += dp * dp;
    }
    out.rms_dx = std::sqrt(sum_dx2 / static_cast<double>(n));
    out.rms_dp = std::sqrt(sum_dp2 / static_cast<double>(n));
    return out;
}

int thread_cap() {
    if (const char* env = std::getenv("ODM_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<SweepRow> kappa_sweep(const GaussianSpec& initial, const Grid2D& kvn_grid,
                                  const ExprAst& potential, std::span<const double> kappas,
                                  const PropagatorConfig& cfg) {
    if (kappas.empty()) throw DomainError("kappa sweep needs at least one kappa");
    for (double k : kappas)
        if (!(k > 0.0) || k > 1.0) throw DomainError("sweep kappas must lie in (0, 1]");

    PhaseSpaceState kvn = make_gaussian_kvn(kvn_grid, initial);
    TraceReport classical =
        run_trace(AnyState(std::move(kvn)), PropagatorKind::Liouville, potential, cfg);

    // One λp box for every κ: the χ coherence width 1/σp of the shared Wigner
    // Gaussian does not shrink with κ, so the κ-linked box would under-resolve
    // small κ. The κ = 1 linkage resolves all of them.
    double lambda_extent = (kvn_grid.x_max - kvn_grid.x_min) / cfg.hbar;
    auto run_one = [&, lambda_extent](double kappa) {
        PropagatorConfig wcfg = cfg;
        wcfg.kappa = kappa;
        PhaseSpaceState chi =
            make_gaussian_chi(kvn_grid.x_axis(), initial, kappa, cfg.hbar, lambda_extent);
        TraceReport trace =
            run_trace(AnyState(std::move(chi)), PropagatorKind::Wigner, potential, wcfg);
        return compare_trajectories(trace, classical);
    };

    // Bounded fan-out; results keep the input order.
    std::vector<SweepRow> rows(kappas.size());
    std::size_t cap = static_cast<std::size_t>(thread_cap());
    std::size_t next = 0;
    while (next < kappas.size()) {
        std::size_t batch = std::min(cap, kappas.size() - next);
        std::vector<std::future<TrajectoryDistance>> futures;
        futures.reserve(batch);
        for (std::size_t b = 0; b < batch; ++b)
            futures.push_back(std::async(std::launch::async, run_one, kappas[next + b]));
        for (std::size_t b = 0; b < batch; ++b)
            rows[next + b] = SweepRow{kappas[next + b], futures[b].get()};
        next += batch;
    }
    return rows;
}

}  // namespace odm

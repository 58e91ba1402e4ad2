#pragma once

#include "odm/propagate.hpp"

#include <span>
#include <variant>
#include <vector>

namespace odm {

enum class PropagatorKind { Liouville, Schrodinger, Wigner };

std::string propagator_name(PropagatorKind k);
PropagatorKind propagator_from_name(const std::string& name);

/// Time series of observable averages along one propagation, plus the maxima
/// of the two dynamical-identity residuals:
///   residual_x = max |m·d⟨x⟩/dt − ⟨p⟩|,  residual_p = max |d⟨p⟩/dt − ⟨−U'⟩|,
/// with centered differences on the sampled times (endpoints excluded).
struct TraceReport {
    std::vector<double> times;
    std::vector<double> mean_x;
    std::vector<double> mean_p;
    std::vector<double> mean_minus_uprime;
    std::vector<double> norm;
    std::vector<double> energy;
    double residual_x = 0.0;
    double residual_p = 0.0;
    double sample_dt = 0.0;
    double mass = 1.0;
    std::string scheme = "centered-2";
};

/// Recompute the residual maxima from the stored series (used after
/// decimating a report to a coarser sampling).
void recompute_residuals(TraceReport& report);
/// Keep every `factor`-th sample (index 0 retained) and refresh residuals.
TraceReport decimate(const TraceReport& report, int factor);

using AnyState = std::variant<PhaseSpaceState, QuantumState>;

TraceReport run_trace(AnyState initial, PropagatorKind kind, const ExprAst& potential,
                      const PropagatorConfig& cfg);

struct TrajectoryDistance {
    double max_dx = 0.0;
    double rms_dx = 0.0;
    double max_dp = 0.0;
    double rms_dp = 0.0;
};

/// Max and RMS differences of ⟨x⟩ and ⟨p⟩ over the common sample range.
TrajectoryDistance compare_trajectories(const TraceReport& a, const TraceReport& b);

struct SweepRow {
    double kappa = 0.0;
    TrajectoryDistance distance;
};

/// Propagate one fixed initial phase-space Gaussian with the unified
/// propagator per κ and with the Liouville propagator once, and tabulate the
/// trajectory distances. Rows follow the input κ order; entries run
/// concurrently up to the ODM_THREADS cap.
std::vector<SweepRow> kappa_sweep(const GaussianSpec& initial, const Grid2D& kvn_grid,
                                  const ExprAst& potential, std::span<const double> kappas,
                                  const PropagatorConfig& cfg);

/// Parallelism cap from ODM_THREADS (>= 1; defaults to hardware concurrency).
int thread_cap();

}  // namespace odm

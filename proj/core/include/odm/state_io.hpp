#pragma once

#include "odm/trace.hpp"
#include "odm/wigner_transform.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace odm {

/// On-disk grid dump: a JSON header plus a base64 payload of little-endian
/// 64-bit floats, interleaved (re, im), row-major and x-major.
/// representation ∈ {kvn, chi, wigner, quantum, density, phase_density}.
struct StateRecord {
    std::string representation;
    Grid2D grid;  // quantum states use nx/x bounds with ny = 1, y bounds 0
    std::vector<Complex> amp;
    double time = 0.0;

    static StateRecord from(const PhaseSpaceState& state);
    static StateRecord from(const QuantumState& state);
    static StateRecord from(const DensityMatrix& rho);
    /// Real nonnegative phase-space density ρ(x,p), the KvN seed.
    static StateRecord phase_density(const Grid2D& grid, const std::vector<double>& rho);

    PhaseSpaceState to_phase_space() const;  // kvn | chi | wigner
    QuantumState to_quantum() const;
    DensityMatrix to_density() const;
    std::vector<double> to_real_field() const;  // phase_density
};

/// `config_echo` (serialized JSON, may be empty) is stored under "config" so
/// every artifact carries the run that produced it.
void write_state_file(const std::filesystem::path& path, const StateRecord& record,
                      const std::string& config_echo);
StateRecord read_state_file(const std::filesystem::path& path);

void write_trace_csv(const std::filesystem::path& path, const TraceReport& report,
                     const std::string& config_echo);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows,
                     const std::string& config_echo);

std::string base64_encode(const unsigned char* data, std::size_t size);
std::vector<unsigned char> base64_decode(const std::string& text);

/// Fixed shortest-round-trip formatting ("%.17g") used by every emitter.
std::string format_double(double v);

}  // namespace odm

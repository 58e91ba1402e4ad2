#include "odm/state_io.hpp"

#include "odm/errors.hpp"

#include <json.hpp>

#include <bit>
#include <cstdio>
#include <fstream>

namespace odm {

using nlohmann::json;

namespace {

const char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

void push_le_double(std::vector<unsigned char>& out, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int k = 0; k < 8; ++k) out.push_back(static_cast<unsigned char>((bits >> (8 * k)) & 0xff));
}

double pop_le_double(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(p[k]) << (8 * k);
    return std::bit_cast<double>(bits);
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string base64_encode(const unsigned char* data, std::size_t size) {
    std::string out;
    out.reserve((size + 2) / 3 * 4);
    for (std::size_t i = 0; i < size; i += 3) {
        unsigned b0 = data[i];
        unsigned b1 = i + 1 < size ? data[i + 1] : 0;
        unsigned b2 = i + 2 < size ? data[i + 2] : 0;
        unsigned triple = (b0 << 16) | (b1 << 8) | b2;
        out.push_back(kB64Alphabet[(triple >> 18) & 0x3f]);
        out.push_back(kB64Alphabet[(triple >> 12) & 0x3f]);
        out.push_back(i + 1 < size ? kB64Alphabet[(triple >> 6) & 0x3f] : '=');
        out.push_back(i + 2 < size ? kB64Alphabet[triple & 0x3f] : '=');
    }
    return out;
}

std::vector<unsigned char> base64_decode(const std::string& text) {
    auto value_of = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        if (c == '=') return -1;
        throw DomainError("invalid base64 character");
    };
    std::vector<unsigned char> out;
    out.reserve(text.size() / 4 * 3);
    unsigned acc = 0;
    int bits = 0;
    for (char c : text) {
        int v = value_of(c);
        if (v < 0) break;
        acc = (acc << 6) | static_cast<unsigned>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<unsigned char>((acc >> bits) & 0xff));
        }
    }
    return out;
}

StateRecord StateRecord::from(const PhaseSpaceState& state) {
    return StateRecord{representation_name(state.repr), state.grid, state.amp, state.time};
}

StateRecord StateRecord::from(const QuantumState& state) {
    Grid2D g{state.grid.n, 1, state.grid.min, state.grid.max, 0.0, 0.0};
    return StateRecord{"quantum", g, state.amp, state.time};
}

StateRecord StateRecord::from(const DensityMatrix& rho) {
    Grid2D g{rho.axis.n, rho.axis.n, rho.axis.min, rho.axis.max, rho.axis.min, rho.axis.max};
    return StateRecord{"density", g, rho.rho, 0.0};
}

StateRecord StateRecord::phase_density(const Grid2D& grid, const std::vector<double>& rho) {
    std::vector<Complex> amp(rho.size());
    for (std::size_t k = 0; k < rho.size(); ++k) amp[k] = rho[k];
    return StateRecord{"phase_density", grid, std::move(amp), 0.0};
}

PhaseSpaceState StateRecord::to_phase_space() const {
    Representation repr = representation_from_name(representation);
    return PhaseSpaceState{grid, repr, amp, time};
}

QuantumState StateRecord::to_quantum() const {
    if (representation != "quantum")
        throw RepresentationError("state file is not a quantum state");
    return QuantumState{grid.x_axis(), amp, time};
}

DensityMatrix StateRecord::to_density() const {
    if (representation != "density")
        throw RepresentationError("state file is not a density matrix");
    if (grid.nx != grid.ny || grid.x_min != grid.y_min || grid.x_max != grid.y_max)
        throw DomainError("density matrix grid must be square");
    return DensityMatrix{grid.x_axis(), amp};
}

std::vector<double> StateRecord::to_real_field() const {
    if (representation != "phase_density")
        throw RepresentationError("state file is not a phase-space density");
    std::vector<double> out(amp.size());
    for (std::size_t k = 0; k < amp.size(); ++k) out[k] = amp[k].real();
    return out;
}

void write_state_file(const std::filesystem::path& path, const StateRecord& record,
                      const std::string& config_echo) {
    std::vector<unsigned char> bytes;
    bytes.reserve(record.amp.size() * 16);
    for (const Complex& a : record.amp) {
        push_le_double(bytes, a.real());
        push_le_double(bytes, a.imag());
    }
    json j;
    j["header"] = {
        {"representation", record.representation},
        {"nx", record.grid.nx},
        {"ny", record.grid.ny},
        {"x_min", record.grid.x_min},
        {"x_max", record.grid.x_max},
        {"y_min", record.grid.y_min},
        {"y_max", record.grid.y_max},
        {"time", record.time},
        {"layout", "row-major x-major, little-endian f64 interleaved (re, im)"},
    };
    if (!config_echo.empty()) j["config"] = json::parse(config_echo);
    j["payload"] = base64_encode(bytes.data(), bytes.size());

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

StateRecord read_state_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    json j = json::parse(in);
    const json& h = j.at("header");
    StateRecord record;
    record.representation = h.at("representation").get<std::string>();
    record.grid = Grid2D{h.at("nx").get<int>(),    h.at("ny").get<int>(),
                         h.at("x_min").get<double>(), h.at("x_max").get<double>(),
                         h.at("y_min").get<double>(), h.at("y_max").get<double>()};
    record.time = h.at("time").get<double>();
    std::vector<unsigned char> bytes = base64_decode(j.at("payload").get<std::string>());
    if (bytes.size() % 16 != 0) throw DomainError("payload is not interleaved f64 pairs");
    record.amp.resize(bytes.size() / 16);
    for (std::size_t k = 0; k < record.amp.size(); ++k)
        record.amp[k] = Complex(pop_le_double(&bytes[16 * k]), pop_le_double(&bytes[16 * k + 8]));
    std::size_t expected = static_cast<std::size_t>(record.grid.nx) *
                           static_cast<std::size_t>(std::max(record.grid.ny, 1));
    if (record.amp.size() != expected) throw DomainError("payload size does not match grid");
    return record;
}

void write_trace_csv(const std::filesystem::path& path, const TraceReport& report,
                     const std::string& config_echo) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    if (!config_echo.empty()) out << "# config: " << config_echo << "\n";
    out << "# residual_x: " << format_double(report.residual_x)
        << ", residual_p: " << format_double(report.residual_p)
        << ", scheme: " << report.scheme << ", sample_dt: " << format_double(report.sample_dt)
        << "\n";
    out << "t,mean_x,mean_p,mean_minus_uprime,norm,energy\n";
    for (std::size_t i = 0; i < report.times.size(); ++i) {
        out << format_double(report.times[i]) << ',' << format_double(report.mean_x[i]) << ','
            << format_double(report.mean_p[i]) << ','
            << format_double(report.mean_minus_uprime[i]) << ','
            << format_double(report.norm[i]) << ',' << format_double(report.energy[i]) << "\n";
    }
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows,
                     const std::string& config_echo) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    if (!config_echo.empty()) out << "# config: " << config_echo << "\n";
    out << "kappa,max_dx,rms_dx,max_dp\n";
    for (const SweepRow& row : rows) {
        out << format_double(row.kappa) << ',' << format_double(row.distance.max_dx) << ','
            << format_double(row.distance.rms_dx) << ',' << format_double(row.distance.max_dp)
            << "\n";
    }
}

}  // namespace odm

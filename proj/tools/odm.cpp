// odm — operational dynamics toolkit command line.
//
// Subcommands (each takes a JSON config file; --set key=value overrides
// single keys, dotted paths allowed):
//   odm derive <cfg>     symbolic generator from commutator constraints
//   odm propagate <cfg>  spectral propagation with trace + state dump
//   odm ehrenfest <cfg>  propagation plus dynamical-identity residual report
//   odm sweep <cfg>      unified-vs-classical trajectory distances over κ
//   odm transform <cfg>  representation changes between state files
//
// Exit codes: 0 success, 2 config validation, 3 norm blow-up, 4 expression
// parse error. Failures print a machine-readable error JSON on stdout.

#include <CLI11.hpp>
#include <json.hpp>

#include "odm/gensolve.hpp"
#include "odm/observables.hpp"
#include "odm/polynomial_text.hpp"
#include "odm/state_io.hpp"
#include "odm/trace.hpp"
#include "odm/wigner_transform.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace odm;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitParse = 4;
constexpr double kNormDriftLimit = 1e-6;

struct CliError : std::runtime_error {
    int code;
    CliError(int exit_code, const std::string& msg) : std::runtime_error(msg), code(exit_code) {}
};

[[noreturn]] void config_error(const std::string& msg) { throw CliError(kExitConfig, msg); }

json load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) config_error("cannot read config file '" + path + "'");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        config_error(std::string("config is not valid JSON: ") + e.what());
    }
    for (const std::string& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) config_error("--set expects key=value, got '" + kv + "'");
        std::string path_expr = kv.substr(0, eq);
        std::string value_text = kv.substr(eq + 1);
        json value;
        try {
            value = json::parse(value_text);
        } catch (const json::parse_error&) {
            value = value_text;  // bare strings are fine
        }
        json* node = &cfg;
        std::size_t start = 0;
        while (true) {
            auto dot = path_expr.find('.', start);
            std::string key = path_expr.substr(start, dot - start);
            if (key.empty()) config_error("empty key in --set path '" + path_expr + "'");
            if (dot == std::string::npos) {
                (*node)[key] = value;
                break;
            }
            node = &(*node)[key];
            start = dot + 1;
        }
    }
    return cfg;
}

template <typename T>
T require_field(const json& cfg, const char* key) {
    if (!cfg.contains(key)) config_error(std::string("missing required field '") + key + "'");
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        config_error(std::string("field '") + key + "' has the wrong type");
    }
}

template <typename T>
T field_or(const json& cfg, const char* key, T fallback) {
    if (!cfg.contains(key)) return fallback;
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        config_error(std::string("field '") + key + "' has the wrong type");
    }
}

fs::path prepare_output_dir(const json& cfg) {
    std::string dir = require_field<std::string>(cfg, "output_dir");
    fs::path path(dir);
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) config_error("cannot create output directory '" + dir + "'");
    return path;
}

ExprAst parse_potential_field(const json& cfg) {
    std::string text = require_field<std::string>(cfg, "potential");
    try {
        return parse_potential(text);
    } catch (const SyntaxError& e) {
        throw CliError(kExitParse, std::string("potential: ") + e.what());
    } catch (const DivisionByZeroConstant& e) {
        throw CliError(kExitParse, std::string("potential: ") + e.what());
    }
}

PropagatorConfig propagator_config(const json& cfg, bool wigner) {
    PropagatorConfig out;
    out.dt = require_field<double>(cfg, "dt");
    out.steps = require_field<long>(cfg, "steps");
    out.kappa = field_or<double>(cfg, "kappa", 1.0);
    out.hbar = field_or<double>(cfg, "hbar", 1.0);
    out.mass = field_or<double>(cfg, "mass", 1.0);
    out.record_every = field_or<long>(cfg, "record_every", 1);
    try {
        out.validate(wigner);
    } catch (const DomainError& e) {
        config_error(e.what());
    }
    return out;
}

Grid2D grid2d_from(const json& cfg) {
    if (!cfg.contains("grid")) config_error("missing required field 'grid'");
    const json& g = cfg.at("grid");
    Grid2D grid{require_field<int>(g, "nx"),    field_or<int>(g, "ny", 0),
                require_field<double>(g, "x_min"), require_field<double>(g, "x_max"),
                field_or<double>(g, "y_min", 0.0), field_or<double>(g, "y_max", 0.0)};
    return grid;
}

GaussianSpec gaussian_from(const json& init) {
    GaussianSpec spec;
    spec.x0 = field_or<double>(init, "x0", 0.0);
    spec.p0 = field_or<double>(init, "p0", 0.0);
    spec.sigma_x = require_field<double>(init, "sigma_x");
    spec.sigma_p = field_or<double>(init, "sigma_p", 0.0);
    if (!(spec.sigma_x > 0.0)) config_error("sigma_x must be positive");
    return spec;
}

// The χ grid is conjugate-linked to the x axis; a configured y axis must
// either be omitted or agree with the derived box.
void check_chi_grid(const Grid2D& configured, const Grid2D& derived) {
    if (configured.ny != 0 && configured.ny != derived.ny)
        config_error("wigner runs need ny == nx (the χ grid is square)");
    if (configured.y_min != 0.0 || configured.y_max != 0.0) {
        double tol = 1e-9 * (derived.y_max - derived.y_min);
        if (std::abs(configured.y_min - derived.y_min) > tol ||
            std::abs(configured.y_max - derived.y_max) > tol)
            config_error("wigner grid y bounds must be omitted or equal the conjugate-linked box "
                         "[" + format_double(derived.y_min) + ", " +
                         format_double(derived.y_max) + ")");
    }
}

json solution_to_json(const GeneratorSolution& sol) {
    json out;
    out["particular"] = render(sol.particular);
    out["null_basis"] = json::array();
    for (const auto& b : sol.null_basis) out["null_basis"].push_back(render(b));
    out["null_basis_hermitian"] = sol.null_basis_hermitian;
    out["residuals"] = json::array();
    for (const auto& r : sol.residuals) out["residuals"].push_back(render(r));
    return out;
}

void write_json_file(const fs::path& path, const json& payload) {
    std::ofstream out(path);
    if (!out) config_error("cannot write '" + path.string() + "'");
    out << payload.dump(2) << "\n";
}

// ---------------------------------------------------------------- derive ---

int run_derive(const json& cfg) {
    std::string algebra_name = require_field<std::string>(cfg, "algebra");
    AlgebraPtr algebra;
    try {
        algebra = AlgebraSpec::preset(algebra_name);
    } catch (const std::invalid_argument& e) {
        config_error(e.what());
    }
    fs::path out_dir = prepare_output_dir(cfg);

    json result;
    result["config"] = cfg;
    result["algebra"] = algebra_name;

    auto apply_bindings = [&](NcPolynomial poly) {
        if (!cfg.contains("bind")) return poly;
        for (const auto& [key, value] : cfg.at("bind").items()) {
            Param p;
            if (key == "hbar" || key == param_name(Param::Hbar)) {
                p = Param::Hbar;
            } else if (key == "kappa" || key == param_name(Param::Kappa)) {
                p = Param::Kappa;
            } else if (key == "m" || key == "mass") {
                p = Param::Mass;
            } else {
                config_error("unknown bind symbol '" + key + "'");
            }
            poly = poly.bind(p, rational_from_string(value.get<std::string>()));
        }
        return poly;
    };

    try {
        if (cfg.contains("constraints")) {
            std::vector<EhrenfestConstraint> cons;
            for (const json& c : cfg.at("constraints")) {
                EhrenfestConstraint con{
                    apply_bindings(
                        parse_polynomial(require_field<std::string>(c, "observable"), algebra)),
                    apply_bindings(parse_polynomial(require_field<std::string>(c, "rhs"), algebra)),
                    ParamCoefficient::one()};
                if (c.contains("scale")) {
                    NcPolynomial scale_poly = apply_bindings(
                        parse_polynomial(c.at("scale").get<std::string>(), algebra));
                    if (scale_poly.term_count() != 1 ||
                        monomial_degree(scale_poly.terms().begin()->first) != 0)
                        config_error("constraint scale must be a central coefficient");
                    con.scale = scale_poly.terms().begin()->second;
                }
                cons.push_back(std::move(con));
            }
            AnsatzSpec ansatz{algebra, require_field<int>(cfg, "max_degree"),
                              field_or<std::vector<std::string>>(cfg, "allowed_generators", {}),
                              true};
            result["solution"] = solution_to_json(solve_generator(cons, ansatz));
        } else if (cfg.contains("potential")) {
            PolynomialForm u = to_polynomial(parse_potential_field(cfg));
            if (algebra_name == "classical") {
                result["solution"] = solution_to_json(derive_liouvillian(u.derivative()));
            } else if (algebra_name == "quantum") {
                result["solution"] = solution_to_json(derive_quantum_hamiltonian(u));
            } else if (algebra_name == "unified") {
                UnifiedHamiltonian h = derive_unified_hamiltonian(u);
                json sol;
                sol["unified"] = render(h.unified);
                sol["classical_form"] = render(h.classical_form);
                sol["kappa_limit"] = render(kappa_limit(h.classical_form));
                sol["matches_liouvillian_at_all_kappa"] = verify_theorem5(u);
                result["solution"] = sol;
            } else {
                config_error("derive with a potential needs a classical/quantum/unified algebra");
            }
        } else {
            config_error("derive needs either 'constraints' or 'potential'");
        }
    } catch (const SyntaxError& e) {
        throw CliError(kExitParse, e.what());
    } catch (const InconsistentConstraintsError& e) {
        json err;
        err["error"] = {{"kind", "inconsistent_constraints"},
                        {"message", e.what()},
                        {"residual", e.residual}};
        write_json_file(out_dir / "derive.json", err);
        std::cout << err.dump() << "\n";
        return 1;
    }

    write_json_file(out_dir / "derive.json", result);
    return 0;
}

// ------------------------------------------------------------- propagate ---

struct PreparedRun {
    PropagatorKind kind;
    AnyState state;
    ExprAst potential;
    PropagatorConfig cfg;
};

PreparedRun prepare_run(const json& cfg) {
    PropagatorKind kind = [&] {
        try {
            return propagator_from_name(require_field<std::string>(cfg, "propagator"));
        } catch (const DomainError& e) {
            config_error(e.what());
        }
    }();
    PropagatorConfig pcfg = propagator_config(cfg, kind == PropagatorKind::Wigner);
    ExprAst u = parse_potential_field(cfg);

    if (!cfg.contains("initial")) config_error("missing required field 'initial'");
    const json& init = cfg.at("initial");
    std::string type = field_or<std::string>(init, "type", "gaussian");

    AnyState state{PhaseSpaceState{}};
    try {
        if (type == "gaussian") {
            GaussianSpec spec = gaussian_from(init);
            Grid2D grid = grid2d_from(cfg);
            switch (kind) {
                case PropagatorKind::Liouville: {
                    if (!(spec.sigma_p > 0.0)) config_error("sigma_p must be positive");
                    grid.validate();
                    state = make_gaussian_kvn(grid, spec);
                    break;
                }
                case PropagatorKind::Schrodinger: {
                    if (spec.sigma_p > 0.0 &&
                        std::abs(spec.sigma_x * spec.sigma_p - 0.5 * pcfg.hbar) >
                            1e-9 * pcfg.hbar)
                        config_error("a quantum gaussian fixes sigma_p = ħ/(2 sigma_x); "
                                     "omit sigma_p or match it");
                    state = make_gaussian_quantum(Grid1D{grid.nx, grid.x_min, grid.x_max}, spec,
                                                  pcfg.hbar);
                    break;
                }
                case PropagatorKind::Wigner: {
                    if (!(spec.sigma_p > 0.0)) config_error("sigma_p must be positive");
                    PhaseSpaceState chi = make_gaussian_chi(
                        Grid1D{grid.nx, grid.x_min, grid.x_max}, spec, pcfg.kappa, pcfg.hbar);
                    check_chi_grid(grid, chi.grid);
                    state = std::move(chi);
                    break;
                }
            }
        } else if (type == "file") {
            StateRecord record = read_state_file(require_field<std::string>(init, "path"));
            switch (kind) {
                case PropagatorKind::Liouville:
                    if (record.representation != "kvn")
                        config_error("liouville propagation needs a kvn state file");
                    state = record.to_phase_space();
                    break;
                case PropagatorKind::Schrodinger:
                    state = record.to_quantum();
                    break;
                case PropagatorKind::Wigner:
                    if (record.representation == "wigner") {
                        state = chi_from_wigner(record.to_phase_space());
                    } else if (record.representation == "chi") {
                        state = record.to_phase_space();
                    } else {
                        config_error("wigner propagation needs a chi or wigner state file");
                    }
                    break;
            }
        } else {
            config_error("initial.type must be 'gaussian' or 'file'");
        }
    } catch (const DomainError& e) {
        config_error(e.what());
    } catch (const RepresentationError& e) {
        config_error(e.what());
    }
    return PreparedRun{kind, std::move(state), std::move(u), pcfg};
}

double max_norm_drift(const TraceReport& trace) {
    double drift = 0.0;
    for (double n : trace.norm) drift = std::max(drift, std::abs(n - 1.0));
    return drift;
}

int run_propagate(const json& cfg, bool with_residual_report) {
    fs::path out_dir = prepare_output_dir(cfg);
    PreparedRun run = prepare_run(cfg);
    std::string echo = cfg.dump();

    TraceReport trace = run_trace(run.state, run.kind, run.potential, run.cfg);
    double drift = max_norm_drift(trace);
    if (drift > kNormDriftLimit)
        throw CliError(kExitBlowUp, "norm drift " + format_double(drift) + " exceeds " +
                                        format_double(kNormDriftLimit));

    write_trace_csv(out_dir / "trace.csv", trace, echo);

    // Final state dump from a clean propagation of the same initial state.
    StateRecord final_record;
    if (run.kind == PropagatorKind::Schrodinger) {
        QuantumState state = std::get<QuantumState>(std::move(run.state));
        SchrodingerPropagator prop(state.grid, run.potential, run.cfg);
        prop.run(state, run.cfg.steps);
        final_record = StateRecord::from(state);
    } else if (run.kind == PropagatorKind::Liouville) {
        PhaseSpaceState state = std::get<PhaseSpaceState>(std::move(run.state));
        LiouvillePropagator prop(state.grid, run.potential, run.cfg);
        prop.run(state, run.cfg.steps);
        final_record = StateRecord::from(state);
    } else {
        PhaseSpaceState state = std::get<PhaseSpaceState>(std::move(run.state));
        WignerPropagator prop(state.grid, run.potential, run.cfg);
        prop.run(state, run.cfg.steps);
        final_record = StateRecord::from(state);
    }
    write_state_file(out_dir / "state_final.json", final_record, echo);

    if (with_residual_report) {
        json report;
        report["config"] = cfg;
        report["residual_x"] = trace.residual_x;
        report["residual_p"] = trace.residual_p;
        report["sample_dt"] = trace.sample_dt;
        report["scheme"] = trace.scheme;
        report["max_norm_drift"] = drift;
        write_json_file(out_dir / "ehrenfest.json", report);
    }
    return 0;
}

// ----------------------------------------------------------------- sweep ---

int run_sweep(const json& cfg) {
    fs::path out_dir = prepare_output_dir(cfg);
    PropagatorConfig pcfg = propagator_config(cfg, false);
    ExprAst u = parse_potential_field(cfg);
    if (!cfg.contains("initial")) config_error("missing required field 'initial'");
    GaussianSpec spec = gaussian_from(cfg.at("initial"));
    if (!(spec.sigma_p > 0.0)) config_error("sigma_p must be positive");
    Grid2D grid = grid2d_from(cfg);
    try {
        grid.validate();
    } catch (const DomainError& e) {
        config_error(e.what());
    }
    std::vector<double> kappas = require_field<std::vector<double>>(cfg, "kappas");
    if (kappas.empty()) config_error("kappas must be a nonempty list");
    for (double k : kappas)
        if (!(k > 0.0) || k > 1.0) config_error("sweep kappas must lie in (0, 1]");

    std::vector<SweepRow> rows;
    try {
        rows = kappa_sweep(spec, grid, u, kappas, pcfg);
    } catch (const DomainError& e) {
        config_error(e.what());
    }
    write_sweep_csv(out_dir / "sweep.csv", rows, cfg.dump());
    return 0;
}

// ------------------------------------------------------------- transform ---

int run_transform(const json& cfg) {
    fs::path out_dir = prepare_output_dir(cfg);
    StateRecord record = read_state_file(require_field<std::string>(cfg, "input"));
    std::string to = require_field<std::string>(cfg, "to");
    double kappa = field_or<double>(cfg, "kappa", 1.0);
    double hbar = field_or<double>(cfg, "hbar", 1.0);

    StateRecord out;
    try {
        if (to == "wigner") {
            if (record.representation == "quantum") {
                out = StateRecord::from(wigner_from_quantum(record.to_quantum(), kappa, hbar));
            } else if (record.representation == "density") {
                out = StateRecord::from(wigner_from_density(record.to_density(), kappa, hbar));
            } else if (record.representation == "chi") {
                out = StateRecord::from(wigner_from_chi(record.to_phase_space()));
            } else {
                config_error("cannot transform '" + record.representation + "' to wigner");
            }
        } else if (to == "chi") {
            if (record.representation != "wigner")
                config_error("cannot transform '" + record.representation + "' to chi");
            out = StateRecord::from(chi_from_wigner(record.to_phase_space()));
        } else if (to == "density") {
            PhaseSpaceState w = record.representation == "chi"
                                    ? wigner_from_chi(record.to_phase_space())
                                    : record.to_phase_space();
            out = StateRecord::from(density_from_wigner(w, kappa, hbar));
        } else if (to == "kvn") {
            if (record.representation != "phase_density")
                config_error("kvn states are seeded from a phase_density file");
            out = StateRecord::from(kvn_from_distribution(record.grid, record.to_real_field()));
        } else {
            config_error("unknown target representation '" + to + "'");
        }
    } catch (const DomainError& e) {
        config_error(e.what());
    } catch (const RepresentationError& e) {
        config_error(e.what());
    }
    out.time = record.time;
    write_state_file(out_dir / "state_transformed.json", out, cfg.dump());
    return 0;
}

int dispatch(const std::string& mode, const json& cfg) {
    std::string declared = field_or<std::string>(cfg, "mode", mode);
    if (declared != mode)
        config_error("config declares mode '" + declared + "' but the '" + mode +
                     "' subcommand was invoked");
    if (mode == "derive") return run_derive(cfg);
    if (mode == "propagate") return run_propagate(cfg, false);
    if (mode == "ehrenfest") return run_propagate(cfg, true);
    if (mode == "sweep") return run_sweep(cfg);
    if (mode == "transform") return run_transform(cfg);
    config_error("unknown mode '" + mode + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operational dynamics toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::vector<std::string> modes{"derive", "propagate", "ehrenfest", "sweep", "transform"};
    for (const std::string& mode : modes) {
        CLI::App* sub = app.add_subcommand(mode);
        sub->add_option("config", config_path, "JSON config file")->required();
        sub->add_option("--set", overrides, "override a config key (dotted paths allowed)");
    }

    CLI11_PARSE(app, argc, argv);
    std::string mode = app.get_subcommands().front()->get_name();

    auto emit_error = [](int code, const std::string& kind, const std::string& message) {
        json err;
        err["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
        std::cout << err.dump() << "\n";
        return code;
    };

    try {
        json cfg = load_config(config_path, overrides);
        return dispatch(mode, cfg);
    } catch (const CliError& e) {
        std::string kind = e.code == kExitParse    ? "parse"
                           : e.code == kExitBlowUp ? "blow_up"
                                                   : "config";
        return emit_error(e.code, kind, e.what());
    } catch (const SyntaxError& e) {
        return emit_error(kExitParse, "parse", e.what());
    } catch (const DivisionByZeroConstant& e) {
        return emit_error(kExitParse, "parse", e.what());
    } catch (const DomainError& e) {
        return emit_error(kExitConfig, "config", e.what());
    } catch (const std::exception& e) {
        return emit_error(1, "internal", e.what());
    }
}

#include <catch2/catch_amalgamated.hpp>

#include "odm/state_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string odm_bin() {
    const char* env = std::getenv("ODM_BIN");
    REQUIRE(env != nullptr);
    return env;
}

int run_cli(const std::string& args) {
    std::string cmd = odm_bin() + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path sandbox() {
    fs::path dir = fs::temp_directory_path() / "odm_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const std::string& name, const std::string& body) {
    fs::path path = sandbox() / name;
    std::ofstream out(path);
    out << body;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("derive subcommand emits the symbolic generator") {
    fs::path out = sandbox() / "derive_out";
    fs::path cfg = write_config("derive.json", R"({
        "mode": "derive",
        "algebra": "classical",
        "potential": "0.5*x^2",
        "output_dir": ")" + out.string() + R"("
    })");
    REQUIRE(run_cli("derive " + cfg.string()) == 0);
    std::string result = slurp(out / "derive.json");
    CHECK(result.find("m^-1*p*λx - x*λp") != std::string::npos);
    CHECK(result.find("null_basis") != std::string::npos);
}

TEST_CASE("derive accepts explicit rendered constraints") {
    fs::path out = sandbox() / "derive_cons_out";
    fs::path cfg = write_config("derive_cons.json", R"({
        "mode": "derive",
        "algebra": "classical",
        "constraints": [
            {"scale": "m", "observable": "x", "rhs": "p"},
            {"scale": "1", "observable": "p", "rhs": "-x"}
        ],
        "max_degree": 2,
        "output_dir": ")" + out.string() + R"("
    })");
    REQUIRE(run_cli("derive " + cfg.string()) == 0);
    std::string result = slurp(out / "derive.json");
    CHECK(result.find("m^-1*p*λx - x*λp") != std::string::npos);
}

TEST_CASE("propagate validates before computing") {
    fs::path out = sandbox() / "prop_out";
    std::string base = R"({
        "mode": "propagate",
        "potential": "0.5*x^2",
        "propagator": "liouville",
        "initial": {"type": "gaussian", "x0": 0.5, "p0": 0.0,
                     "sigma_x": 0.7071067811865476, "sigma_p": 0.7071067811865476},
        "grid": {"nx": 64, "ny": 64, "x_min": -8, "x_max": 8, "y_min": -8, "y_max": 8},
        "dt": 0.01, "steps": 50, "record_every": 5,
        "output_dir": ")" + out.string() + R"("
    })";
    fs::path cfg = write_config("prop.json", base);

    SECTION("dt = 0 is rejected with exit 2") {
        CHECK(run_cli("propagate " + cfg.string() + " --set dt=0") == 2);
    }
    SECTION("bad potential text exits 4") {
        CHECK(run_cli("propagate " + cfg.string() + " --set potential=x^^2") == 4);
    }
    SECTION("non-power-of-two grid exits 2") {
        CHECK(run_cli("propagate " + cfg.string() + " --set grid.nx=100") == 2);
    }
    SECTION("successful run emits trace and state") {
        REQUIRE(run_cli("propagate " + cfg.string()) == 0);
        CHECK(fs::exists(out / "trace.csv"));
        CHECK(fs::exists(out / "state_final.json"));
    }
    SECTION("two runs of one config are byte-identical") {
        REQUIRE(run_cli("propagate " + cfg.string()) == 0);
        std::string trace1 = slurp(out / "trace.csv");
        std::string state1 = slurp(out / "state_final.json");
        REQUIRE(run_cli("propagate " + cfg.string()) == 0);
        CHECK(slurp(out / "trace.csv") == trace1);
        CHECK(slurp(out / "state_final.json") == state1);
    }
}

TEST_CASE("unnormalized file input trips the norm guard") {
    fs::path out = sandbox() / "blowup_out";
    fs::create_directories(out);
    // A kvn state with norm 2 is flagged as drifted from the first sample.
    odm::Grid2D grid{32, 32, -6.0, 6.0, -6.0, 6.0};
    odm::StateRecord record;
    record.representation = "kvn";
    record.grid = grid;
    record.amp.assign(grid.size(), odm::Complex(0.11785113019775793, 0.0));
    odm::write_state_file(out / "unnormalized.json", record, "");

    fs::path cfg = write_config("blowup.json", R"({
        "mode": "propagate",
        "potential": "0",
        "propagator": "liouville",
        "initial": {"type": "file", "path": ")" + (out / "unnormalized.json").string() + R"("},
        "dt": 0.01, "steps": 5, "record_every": 1,
        "output_dir": ")" + out.string() + R"("
    })");
    CHECK(run_cli("propagate " + cfg.string()) == 3);
}

TEST_CASE("ehrenfest mode reports residuals") {
    fs::path out = sandbox() / "ehren_out";
    fs::path cfg = write_config("ehren.json", R"({
        "mode": "ehrenfest",
        "potential": "0.5*x^2",
        "propagator": "schrodinger",
        "initial": {"type": "gaussian", "x0": 1.0, "sigma_x": 0.7071067811865476},
        "grid": {"nx": 128, "x_min": -10, "x_max": 10},
        "dt": 0.002, "steps": 400, "record_every": 1,
        "output_dir": ")" + out.string() + R"("
    })");
    REQUIRE(run_cli("ehrenfest " + cfg.string()) == 0);
    std::string report = slurp(out / "ehrenfest.json");
    CHECK(report.find("residual_x") != std::string::npos);
    CHECK(report.find("residual_p") != std::string::npos);
}

TEST_CASE("sweep mode emits the distance table") {
    fs::path out = sandbox() / "sweep_out";
    fs::path cfg = write_config("sweep.json", R"({
        "mode": "sweep",
        "potential": "0.5*x^2",
        "initial": {"type": "gaussian", "x0": 0.8, "p0": 0.0,
                     "sigma_x": 0.7071067811865476, "sigma_p": 0.7071067811865476},
        "grid": {"nx": 128, "ny": 128, "x_min": -8, "x_max": 8, "y_min": -8, "y_max": 8},
        "dt": 0.012271846303085129, "steps": 512, "record_every": 8,
        "kappas": [0.5],
        "output_dir": ")" + out.string() + R"("
    })");
    REQUIRE(run_cli("sweep " + cfg.string()) == 0);
    std::string csv = slurp(out / "sweep.csv");
    CHECK(csv.find("kappa,max_dx,rms_dx,max_dp") != std::string::npos);
    // one κ row with tiny distance for a quadratic potential
    std::istringstream stream(csv);
    std::string line, last;
    while (std::getline(stream, line))
        if (!line.empty()) last = line;
    double max_dx = std::stod(last.substr(last.find(',') + 1));
    CHECK(max_dx < 1e-7);

    SECTION("empty kappa list exits 2") {
        CHECK(run_cli("sweep " + cfg.string() + " --set kappas=[]") == 2);
    }
}

TEST_CASE("emitted states are re-ingestible (round trip)") {
    fs::path out = sandbox() / "roundtrip_out";
    fs::path cfg = write_config("rt_prop.json", R"({
        "mode": "propagate",
        "potential": "0.5*x^2",
        "propagator": "schrodinger",
        "initial": {"type": "gaussian", "x0": 1.0, "sigma_x": 0.7071067811865476},
        "grid": {"nx": 128, "x_min": -10, "x_max": 10},
        "dt": 0.01, "steps": 20, "record_every": 5,
        "output_dir": ")" + out.string() + R"("
    })");
    REQUIRE(run_cli("propagate " + cfg.string()) == 0);

    // transform psi -> wigner -> density -> back to wigner
    fs::path t1 = write_config("rt_t1.json", R"({
        "mode": "transform",
        "input": ")" + (out / "state_final.json").string() + R"(",
        "to": "wigner", "kappa": 1.0, "hbar": 1.0,
        "output_dir": ")" + (out / "t1").string() + R"("
    })");
    REQUIRE(run_cli("transform " + t1.string()) == 0);
    fs::path t2 = write_config("rt_t2.json", R"({
        "mode": "transform",
        "input": ")" + (out / "t1" / "state_transformed.json").string() + R"(",
        "to": "density", "kappa": 1.0, "hbar": 1.0,
        "output_dir": ")" + (out / "t2").string() + R"("
    })");
    REQUIRE(run_cli("transform " + t2.string()) == 0);
    fs::path t3 = write_config("rt_t3.json", R"({
        "mode": "transform",
        "input": ")" + (out / "t2" / "state_transformed.json").string() + R"(",
        "to": "wigner", "kappa": 1.0, "hbar": 1.0,
        "output_dir": ")" + (out / "t3").string() + R"("
    })");
    REQUIRE(run_cli("transform " + t3.string()) == 0);

    odm::StateRecord w1 = odm::read_state_file(out / "t1" / "state_transformed.json");
    odm::StateRecord w3 = odm::read_state_file(out / "t3" / "state_transformed.json");
    REQUIRE(w1.amp.size() == w3.amp.size());
    double max_err = 0.0;
    for (std::size_t k = 0; k < w1.amp.size(); ++k)
        max_err = std::max(max_err, std::abs(w1.amp[k] - w3.amp[k]));
    CHECK(max_err < 1e-12);

    // and the wigner dump feeds a wigner propagation
    fs::path reprop = write_config("rt_reprop.json", R"({
        "mode": "propagate",
        "potential": "0.5*x^2",
        "propagator": "wigner",
        "initial": {"type": "file", "path": ")" +
                                        (out / "t1" / "state_transformed.json").string() + R"("},
        "dt": 0.01, "steps": 5, "record_every": 1, "kappa": 1.0,
        "output_dir": ")" + (out / "reprop").string() + R"("
    })");
    CHECK(run_cli("propagate " + reprop.string()) == 0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cosserat/field_io.hpp"
#include "cosserat/manufactured.hpp"

using namespace cosserat;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(CLI_BINARY) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("no subcommand or bad flags exit with usage code 2") {
    CHECK(run("") == 2);
    CHECK(run("check-identities --trials 0") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("convergence --levels 1") == 2);
}

TEST_CASE("check-identities passes and reports per-identity errors") {
    CHECK(run("check-identities --trials 50 --seed 3 --output cli_ids.json") == 0);
    const std::string rep = slurp("cli_ids.json");
    CHECK(rep.find("\"all_pass\": true") != std::string::npos);
    CHECK(rep.find("nye-roundtrip") != std::string::npos);
    // the corrupted fixture must be reported as a failure with exit 1
    CHECK(run("check-identities --trials 50 --seed 3 --corrupt-nye") == 1);
}

TEST_CASE("missing input file exits with I/O code 3") {
    CHECK(run("compat --input no_such_field.json") == 3);
    CHECK(run("minimize --config no_such_config.json") == 3);
}

TEST_CASE("field-gen then compat: compatible field exits 0") {
    CHECK(run("field-gen --case twist-composite --n 9 --output-prefix cli_tc") == 0);
    CHECK(run("compat --input cli_tc_stretch.json --output cli_compat.json") == 0);
    CHECK(slurp("cli_compat.json").find("\"compatible\": true") != std::string::npos);
}

TEST_CASE("reconstruct emits diagnostics; incompatible input fails when required") {
    REQUIRE(run("field-gen --case twist-composite --n 9 --output-prefix cli_rc") == 0);
    CHECK(run("reconstruct --input cli_rc_stretch.json --output-phi cli_rc_out_phi.json "
              "--output-rot cli_rc_out_rot.json --report cli_rc_report.json") == 0);
    const std::string rep = slurp("cli_rc_report.json");
    CHECK(rep.find("path_independence_error") != std::string::npos);
    CHECK(rep.find("orthogonality_drift") != std::string::npos);
    CHECK(read_field("cli_rc_out_rot.json").kind == "rot3");

    // corrupt the stretch into an incompatible field
    FieldFile f = read_field("cli_rc_stretch.json");
    const Grid3& g = f.mat.grid;
    for (int n = 0; n < f.mat.size(); ++n) f.mat[n](0, 1) += 0.1 * g.node(n)(0);
    write_field("cli_rc_bad.json", f.mat);
    CHECK(run("reconstruct --input cli_rc_bad.json --require-compatible") == 1);
    CHECK(run("reconstruct --input cli_rc_bad.json --report cli_rc_bad_report.json") == 0);
}

TEST_CASE("reconstructed stretch from the CLI round-trips through compat") {
    REQUIRE(run("field-gen --case twist-composite --n 9 --output-prefix cli_rt") == 0);
    REQUIRE(run("reconstruct --input cli_rt_stretch.json --output-phi cli_rt_phi.json "
                "--output-rot cli_rt_rot.json --report cli_rt_rep.json") == 0);
    const VecField phi = read_field("cli_rt_phi.json").vec;
    const MatField R = read_field("cli_rt_rot.json").mat;
    const MatField U = stretch_field(phi, R);
    write_field("cli_rt_stretch2.json", U);
    CHECK(run("compat --input cli_rt_stretch2.json") == 0);
}

TEST_CASE("convergence CSV carries errors and observed orders") {
    CHECK(run("convergence --case twist --levels 2 --base-n 9 --output cli_conv.csv") == 0);
    const std::string csv = slurp("cli_conv.csv");
    CHECK(csv.find("case,n,h,check,error,observed_order") != std::string::npos);
    CHECK(csv.find("integrability") != std::string::npos);
    CHECK(run("convergence --case nope --levels 2") == 1);
}

TEST_CASE("minimize: zero-load config reaches a tiny energy") {
    {
        std::ofstream f("cli_min_cfg.json");
        f << R"({"mu":1,"lambda":1,"mu_c":0,"Lc":0.1,"Lc_hat":0.1,"q":4,
                 "bc":{"faces":[0,1,2,3,4,5],"mode":"hard"},
                 "grid":{"n":5},"max_iter":3000,"grad_tol":1e-10,
                 "perturb_amplitude":0.05,"perturb_seed":11})";
    }
    CHECK(run("minimize --config cli_min_cfg.json --output-phi cli_min_phi.json "
              "--report cli_min_rep.json") == 0);
    const std::string rep = slurp("cli_min_rep.json");
    CHECK(rep.find("energy_trace") != std::string::npos);
    CHECK(rep.find("final_energy") != std::string::npos);
}

TEST_CASE("fixed seeds produce byte-identical reports") {
    REQUIRE(run("check-identities --trials 100 --seed 99 --output cli_det_a.json") == 0);
    REQUIRE(run("check-identities --trials 100 --seed 99 --output cli_det_b.json") == 0);
    CHECK(slurp("cli_det_a.json") == slurp("cli_det_b.json"));

    REQUIRE(run("convergence --case twist --levels 2 --base-n 9 --output cli_det_c.csv") == 0);
    REQUIRE(run("convergence --case twist --levels 2 --base-n 9 --output cli_det_d.csv") == 0);
    CHECK(slurp("cli_det_c.csv") == slurp("cli_det_d.csv"));
}

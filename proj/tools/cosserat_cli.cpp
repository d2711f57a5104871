// Command-line driver: identity suites, convergence studies, compatibility
// checks, reconstruction, energy minimization and manufactured field
// generation, with machine-readable JSON/CSV reports.
//
// Exit codes: 0 success, 1 domain failure, 2 usage error, 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cosserat/compatibility.hpp"
#include "cosserat/energy.hpp"
#include "cosserat/field_io.hpp"
#include "cosserat/identities.hpp"
#include "cosserat/manufactured.hpp"
#include "cosserat/reconstruction.hpp"
#include "cosserat/studies.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";

using json = nlohmann::json;

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open for writing: " + path);
    f << text;
}

int cmd_check_identities(int trials, std::uint64_t seed, bool corrupt_nye,
                         const std::string& output) {
    const auto results = cosserat::run_identity_suite(trials, seed, corrupt_nye);
    json rep;
    rep["tool_version"] = kToolVersion;
    rep["config"] = {{"subcommand", "check-identities"},
                     {"trials", trials},
                     {"seed", seed},
                     {"corrupt_nye", corrupt_nye}};
    bool all_pass = true;
    rep["results"] = json::array();
    for (const auto& r : results) {
        rep["results"].push_back({{"name", r.name},
                                  {"max_rel_error", r.max_rel_error},
                                  {"tolerance", r.tolerance},
                                  {"pass", r.pass}});
        all_pass = all_pass && r.pass;
    }
    rep["all_pass"] = all_pass;
    emit(output, rep.dump(2) + "\n");
    return all_pass ? 0 : 1;
}

int cmd_convergence(const std::string& case_name, int levels, int base_n,
                    const std::string& output) {
    const auto rep = cosserat::run_convergence_study(case_name, levels, base_n);
    std::string csv = "case,n,h,check,error,observed_order\n";
    char buf[64];
    for (size_t l = 0; l < rep.rows.size(); ++l) {
        const auto& row = rep.rows[l];
        for (const auto& [check, err] : row.errors) {
            csv += rep.case_name + "," + std::to_string(row.n) + ",";
            std::snprintf(buf, sizeof(buf), "%.17g", row.h);
            csv += std::string(buf) + "," + check + ",";
            std::snprintf(buf, sizeof(buf), "%.17g", err);
            csv += buf;
            csv += ",";
            if (l > 0) {
                std::snprintf(buf, sizeof(buf), "%.17g",
                              rep.orders.at(check)[l - 1]);
                csv += buf;
            }
            csv += "\n";
        }
    }
    emit(output, csv);
    return 0;
}

int cmd_compat(const std::string& input, double tol, const std::string& output) {
    const cosserat::FieldFile in = cosserat::read_field(input);
    if (in.kind == "vec3")
        throw std::ios_base::failure("compat: expected a mat3 stretch field");
    const cosserat::CompatReport r = cosserat::check_compatibility(in.mat, tol);
    json rep;
    rep["tool_version"] = kToolVersion;
    rep["config"] = {{"subcommand", "compat"}, {"input", input}, {"tol", tol}};
    rep["max_residual"] = r.max_residual;
    rep["tolerance_used"] = r.tolerance_used;
    rep["compatible"] = r.compatible;
    emit(output, rep.dump(2) + "\n");
    return r.compatible ? 0 : 1;
}

int cmd_reconstruct(const std::string& input, std::vector<int> base,
                    std::vector<double> phi0, bool require_compatible,
                    const std::string& out_phi, const std::string& out_rot,
                    const std::string& report_path) {
    const cosserat::FieldFile in = cosserat::read_field(input);
    if (in.kind == "vec3")
        throw std::ios_base::failure("reconstruct: expected a mat3 stretch field");
    const cosserat::MatField& U = in.mat;

    cosserat::Gauge gauge;
    gauge.base_node = {base[0], base[1], base[2]};
    gauge.phi0 = cosserat::Vec3(phi0[0], phi0[1], phi0[2]);

    const cosserat::CompatReport compat = cosserat::check_compatibility(U);
    if (require_compatible && !compat.compatible) {
        std::cerr << "reconstruct: input field is incompatible (residual "
                  << compat.max_residual << " > " << compat.tolerance_used << ")\n";
        return 1;
    }

    const cosserat::MatField A = cosserat::a_field(U);
    const cosserat::ReconResult rec = cosserat::integrate_rotation(A, gauge);
    const cosserat::VecField phi = cosserat::integrate_deformation(rec.R, U, gauge);
    const double pathdep = cosserat::path_independence(A, gauge);

    if (!out_phi.empty()) cosserat::write_field(out_phi, phi);
    if (!out_rot.empty()) cosserat::write_field(out_rot, rec.R, "rot3");

    json rep;
    rep["tool_version"] = kToolVersion;
    rep["config"] = {{"subcommand", "reconstruct"},
                     {"input", input},
                     {"base", base},
                     {"phi0", phi0},
                     {"require_compatible", require_compatible}};
    rep["path_independence_error"] = pathdep;
    rep["orthogonality_drift"] = rec.orthogonality_drift;
    rep["compat_max_residual"] = compat.max_residual;
    rep["compatible"] = compat.compatible;
    emit(report_path, rep.dump(2) + "\n");
    return 0;
}

cosserat::Grid3 grid_from_json(const json& j) {
    if (j.contains("n")) return cosserat::Grid3::unit_cube(j.at("n").get<int>());
    cosserat::Vec3 origin = cosserat::Vec3::Zero();
    if (j.contains("origin"))
        origin = cosserat::Vec3(j["origin"][0], j["origin"][1], j["origin"][2]);
    return cosserat::Grid3(
        {j.at("dims")[0], j.at("dims")[1], j.at("dims")[2]},
        {j.at("spacing")[0], j.at("spacing")[1], j.at("spacing")[2]}, origin);
}

int cmd_minimize(const std::string& config_path, const std::string& out_phi,
                 const std::string& out_rot, const std::string& report_path) {
    std::ifstream cf(config_path);
    if (!cf) throw std::ios_base::failure("cannot open config: " + config_path);
    json cfg;
    cf >> cfg;

    cosserat::CosseratParams p;
    p.mu = cfg.value("mu", 1.0);
    p.lambda = cfg.value("lambda", 1.0);
    p.mu_c = cfg.value("mu_c", 0.0);
    p.Lc = cfg.value("Lc", 0.1);
    p.Lc_hat = cfg.value("Lc_hat", 0.1);
    p.q = cfg.value("q", 4.0);
    if (cfg.contains("f")) {
        const cosserat::Vec3 f(cfg["f"][0], cfg["f"][1], cfg["f"][2]);
        if (f.norm() > 0.0)
            p.body_force = [f](const cosserat::Vec3&) { return f; };
    }

    cosserat::BoundarySpec bc;
    if (cfg.contains("bc")) {
        const json& b = cfg["bc"];
        if (b.contains("faces")) bc.dirichlet_faces = b["faces"].get<std::vector<int>>();
        if (b.value("mode", "hard") == std::string("penalty"))
            bc.mode = cosserat::BcMode::Penalty;
        bc.penalty_weight = b.value("penalty_weight", 1.0);
    }

    const cosserat::Grid3 g = grid_from_json(cfg.at("grid"));
    cosserat::MinimizeOptions opts;
    opts.max_iter = cfg.value("max_iter", 5000);
    opts.grad_tol = cfg.value("grad_tol", 1e-10);

    cosserat::MinimizeState start = cosserat::MinimizeState::reference(g);
    if (cfg.contains("perturb_amplitude"))
        start = cosserat::perturbed_reference(
            g, cfg["perturb_amplitude"].get<double>(),
            cfg.value("perturb_seed", std::uint64_t(1)));

    const cosserat::MinimizeState out = cosserat::minimize(start, p, bc, opts);
    const cosserat::EnergyGradient grad = cosserat::gradient(out, p, bc);
    double ginf = 0.0;
    for (int n = 0; n < g.num_nodes(); ++n) {
        ginf = std::max(ginf, grad.dphi[n].lpNorm<Eigen::Infinity>());
        ginf = std::max(ginf, grad.dR_tangent[n].lpNorm<Eigen::Infinity>());
    }

    if (!out_phi.empty()) cosserat::write_field(out_phi, out.phi);
    if (!out_rot.empty())
        cosserat::write_field(out_rot, out.rotation_field(), "rot3");

    json rep;
    rep["tool_version"] = kToolVersion;
    rep["config"] = cfg;
    rep["config"]["subcommand"] = "minimize";
    rep["iterations"] = out.iterations;
    rep["final_energy"] = out.energy_trace.back();
    rep["final_gradient_inf_norm"] = ginf;
    rep["energy_trace"] = out.energy_trace;
    emit(report_path, rep.dump(2) + "\n");
    return 0;
}

int cmd_field_gen(const std::string& case_name, int n, const std::string& prefix) {
    const cosserat::ManufacturedCase c = cosserat::cases::by_name(case_name);
    const cosserat::Grid3 g = cosserat::Grid3::unit_cube(n);
    const auto [phi, R] = cosserat::sample(c, g);
    const cosserat::MatField U = cosserat::stretch_field(phi, R);
    cosserat::write_field(prefix + "_phi.json", phi);
    cosserat::write_field(prefix + "_rot.json", R, "rot3");
    cosserat::write_field(prefix + "_stretch.json", U);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cosserat kinematics toolkit"};
    app.require_subcommand(1);

    // check-identities
    int trials = 1000;
    std::uint64_t seed = 42;
    bool corrupt_nye = false;
    std::string ci_output;
    auto* ci = app.add_subcommand("check-identities", "run the pointwise identity suite");
    ci->add_option("--trials", trials, "random trials per identity")
        ->check(CLI::PositiveNumber);
    ci->add_option("--seed", seed, "random seed");
    ci->add_flag("--corrupt-nye", corrupt_nye,
                 "test fixture: negate one sign in the Nye map")
        ->group(""); // hidden
    ci->add_option("--output", ci_output, "report path (stdout if omitted)");

    // convergence
    std::string case_name = "twist-composite";
    int levels = 3, base_n = 9;
    std::string cv_output;
    auto* cv = app.add_subcommand("convergence", "run an h-halving convergence study");
    cv->add_option("--case", case_name, "manufactured case name");
    cv->add_option("--levels", levels, "refinement levels")->check(CLI::Range(2, 8));
    cv->add_option("--base-n", base_n, "coarsest grid nodes per axis")
        ->check(CLI::Range(3, 1025));
    cv->add_option("--output", cv_output, "CSV path (stdout if omitted)");

    // compat
    std::string cp_input, cp_output;
    double cp_tol = -1.0;
    auto* cp = app.add_subcommand("compat", "check a stretch field for compatibility");
    cp->add_option("--input", cp_input, "mat3 field file")->required();
    cp->add_option("--tol", cp_tol, "verdict tolerance (default: calibrated)");
    cp->add_option("--output", cp_output, "JSON report path (stdout if omitted)");

    // reconstruct
    std::string rc_input, rc_phi, rc_rot, rc_report;
    std::vector<int> rc_base{0, 0, 0};
    std::vector<double> rc_phi0{0.0, 0.0, 0.0};
    bool rc_require = false;
    auto* rc = app.add_subcommand("reconstruct",
                                  "rebuild (phi, R) from a compatible stretch field");
    rc->add_option("--input", rc_input, "mat3 stretch field file")->required();
    rc->add_option("--base", rc_base, "gauge base node i j k")->expected(3);
    rc->add_option("--phi0", rc_phi0, "gauge deformation value at the base node")
        ->expected(3);
    rc->add_flag("--require-compatible", rc_require,
                 "fail (exit 1) if the field is incompatible");
    rc->add_option("--output-phi", rc_phi, "deformation field output path");
    rc->add_option("--output-rot", rc_rot, "rotation field output path");
    rc->add_option("--report", rc_report, "JSON diagnostics path (stdout if omitted)");

    // minimize
    std::string mn_config, mn_phi, mn_rot, mn_report;
    auto* mn = app.add_subcommand("minimize", "descend the Cosserat energy");
    mn->add_option("--config", mn_config, "params JSON file")->required();
    mn->add_option("--output-phi", mn_phi, "final deformation field path");
    mn->add_option("--output-rot", mn_rot, "final rotation field path");
    mn->add_option("--report", mn_report, "JSON report path (stdout if omitted)");

    // field-gen
    std::string fg_case = "twist-composite", fg_prefix = "field";
    int fg_n = 17;
    auto* fg = app.add_subcommand("field-gen", "write manufactured-case field files");
    fg->add_option("--case", fg_case, "manufactured case name");
    fg->add_option("--n", fg_n, "nodes per axis on the unit cube")
        ->check(CLI::Range(3, 1025));
    fg->add_option("--output-prefix", fg_prefix, "output file prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ci->parsed()) return cmd_check_identities(trials, seed, corrupt_nye, ci_output);
        if (cv->parsed()) return cmd_convergence(case_name, levels, base_n, cv_output);
        if (cp->parsed()) return cmd_compat(cp_input, cp_tol, cp_output);
        if (rc->parsed())
            return cmd_reconstruct(rc_input, rc_base, rc_phi0, rc_require, rc_phi,
                                   rc_rot, rc_report);
        if (mn->parsed()) return cmd_minimize(mn_config, mn_phi, mn_rot, mn_report);
        if (fg->parsed()) return cmd_field_gen(fg_case, fg_n, fg_prefix);
    } catch (const cosserat::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

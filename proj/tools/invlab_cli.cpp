// invlab: verify / solve / integrate / report for the tensor-invariant lab.
#include "invlab/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace invlab;

namespace {

void add_system_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--system", cfg.system, "system name")->required(false);
    static const char* keys[] = {"a", "b", "kappa", "alpha", "beta", "c1", "c2", "fcoeffs"};
    for (const char* k : keys)
        cmd->add_option_function<std::string>(
            std::string("--") + k, [&cfg, k](const std::string& v) { cfg.params[k] = v; },
            std::string("system parameter ") + k);
    cmd->add_flag_callback("--periodic", [&cfg] { cfg.params["periodic"] = "1"; },
                           "periodic G2 lattice");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tensor-invariant discovery and geometric-integration lab"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto* verify = app.add_subcommand("verify", "run the system's exact identity suite");
    add_system_flags(verify, cfg);
    verify->add_option("--seed", cfg.seed, "sample-point seed");
    verify->add_option_function<double>(
        "--jacobi-tol", [&cfg](double v) { cfg.tolerances["jacobi"] = v; },
        "numeric Jacobi tolerance (default 1e-9)");
    verify->add_option("--out", cfg.out_json, "write the report JSON here");
    verify->add_option("--config", config_path, "JSON config (overrides flags)");

    auto* solve = app.add_subcommand("solve", "solve L_X P' = 0 over the menu");
    add_system_flags(solve, cfg);
    solve->add_option("--qdeg", cfg.qdeg, "q-degree of the menu (default per system)");
    solve->add_option("--pin12", cfg.pin12, "pin component (1,2) to a polynomial");
    solve->add_option("--out", cfg.out_json, "write the report JSON here");
    solve->add_option("--config", config_path, "JSON config (overrides flags)");

    auto* integ = app.add_subcommand("integrate", "run an integrator with drift diagnostics");
    add_system_flags(integ, cfg);
    integ->add_option("--method", cfg.method, "stormer_verlet | implicit_midpoint | rk4");
    integ->add_option("--dt", cfg.h, "step size");
    integ->add_option("--steps", cfg.steps, "number of steps");
    integ->add_option("--tol", cfg.tol, "implicit solver tolerance");
    integ->add_option("--max-iters", cfg.max_iters, "implicit solver iteration cap");
    integ->add_option("--y0", cfg.y0, "initial state q1,q2,p1,p2")->delimiter(',');
    integ->add_option("--cadence", cfg.cadence, "record diagnostics every k steps");
    integ->add_option("--csv", cfg.out_csv, "trajectory diagnostics CSV path");
    integ->add_option("--out", cfg.out_json, "summary JSON path");
    integ->add_option("--config", config_path, "JSON config (overrides flags)");

    auto* report = app.add_subcommand("report", "merge integrate summaries into one table");
    report->add_option("--inputs", cfg.inputs, "summary JSON files")->expected(-1);
    report->add_option("--out", cfg.out_json, "merged JSON path");
    report->add_option("--config", config_path, "JSON config (overrides flags)");

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();

    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config '" << config_path << "'\n";
            return 2;
        }
        nlohmann::json j;
        try {
            in >> j;
            cfg = config_from_json(j);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    CommandResult res = run_command(cfg);
    if (cfg.command == "report" && res.report.contains("table"))
        std::cout << res.report["table"].get<std::string>();
    else
        std::cout << res.report.dump(2) << "\n";
    return res.exit_code;
}

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pursuit/commands.hpp"
#include "pursuit/geometry.hpp"

namespace {

// Run a command with its output going to --out (or stdout for "-").
template <class Fn>
int with_output(const std::string& out_path, Fn&& fn) {
    if (out_path == "-") return fn(std::cout);
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open output file: " << out_path << '\n';
        return pursuit::cli::exit_parse;
    }
    return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curvature-bounded interception of a target moving on a circle"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path = "-";
    int grid = 1000;
    int samples = 1000;
    double beta_max = 2.0 * pursuit::two_pi;
    std::optional<double> epsilon;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
        cmd->add_option("--out", out_path, "Output file, or - for stdout");
    };

    CLI::App* solve = app.add_subcommand("solve", "Solve the interception problem");
    add_common(solve);
    solve->add_option("--epsilon", epsilon, "Convergence tolerance on |T_p - T_t| [s]");

    CLI::App* curves = app.add_subcommand("curves", "Tabulate per-mode CSC lengths vs alpha");
    add_common(curves);
    curves->add_option("--grid", grid, "Number of grid points");

    CLI::App* times = app.add_subcommand("times", "Tabulate pursuer and target travel times");
    add_common(times);
    times->add_option("--grid", grid, "Number of grid points");
    times->add_option("--beta-max", beta_max, "Upper end of the travel-parameter range [rad]");

    CLI::App* path = app.add_subcommand("path", "Sample the interception path");
    add_common(path);
    path->add_option("--samples", samples, "Number of arc-length samples");
    path->add_option("--epsilon", epsilon, "Convergence tolerance on |T_p - T_t| [s]");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) {
        return with_output(out_path, [&](std::ostream& out) {
            return pursuit::cli::run_solve(scenario_path, out, std::cerr, epsilon);
        });
    }
    if (curves->parsed()) {
        return with_output(out_path, [&](std::ostream& out) {
            return pursuit::cli::run_curves(scenario_path, grid, out, std::cerr);
        });
    }
    if (times->parsed()) {
        return with_output(out_path, [&](std::ostream& out) {
            return pursuit::cli::run_times(scenario_path, beta_max, grid, out, std::cerr);
        });
    }
    return with_output(out_path, [&](std::ostream& out) {
        return pursuit::cli::run_path(scenario_path, samples, out, std::cerr, epsilon);
    });
}

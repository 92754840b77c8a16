#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include "pursuit/scenario_io.hpp"

// The four CLI operations, exposed as stream-writing functions so they can be
// driven by tests as well as by the command-line front end. Exit codes:
// 0 success, 2 scenario/usage error, 3 infeasible geometry or failed bracket,
// 4 verification failure. Tabular outputs are comma-separated with a header
// row, one line feed per row, floats printed with 17 significant digits.

namespace pursuit::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_parse = 2;
inline constexpr int exit_infeasible = 3;
inline constexpr int exit_verify = 4;

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct LoadedScenario {
    std::optional<Scenario> scenario;
    int exit_code = exit_ok;
};

inline LoadedScenario load(const std::filesystem::path& path, std::ostream& err,
                           std::optional<double> epsilon_override) {
    try {
        Scenario sc = load_scenario(path);
        if (epsilon_override) {
            if (!(*epsilon_override > 0.0)) {
                err << "error: epsilon must be > 0\n";
                return {std::nullopt, exit_parse};
            }
            sc.epsilon = *epsilon_override;
        }
        return {sc, exit_ok};
    } catch (const ScenarioError& e) {
        err << "error: " << e.what() << '\n';
        return {std::nullopt, exit_parse};
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return {std::nullopt, exit_parse};
    }
}

}  // namespace detail

/// Solve the interception problem and emit the JSON report. The report is
/// emitted on verification failure too, with an explicit FAILED status.
inline int run_solve(const std::filesystem::path& scenario_path, std::ostream& out,
                     std::ostream& err, std::optional<double> epsilon_override = {}) {
    auto loaded = detail::load(scenario_path, err, epsilon_override);
    if (!loaded.scenario) return loaded.exit_code;
    const Scenario& sc = *loaded.scenario;
    try {
        const InterceptSolution sol = solve(sc);
        const VerificationReport ver = verify_interception(sc, sol);
        out << solution_report(sc, sol, ver).dump(2) << '\n';
        if (!ver.passed()) {
            err << "error: verification failed (" << ver.failing_clause() << ")\n";
            return exit_verify;
        }
        return exit_ok;
    } catch (const AllModesInfeasible& e) {
        err << "error: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const BracketOverflow& e) {
        err << "error: " << e.what() << '\n';
        return exit_infeasible;
    }
}

/// Emit per-mode CSC lengths on a uniform grid of angular positions:
/// alpha, D_LSL, D_LSR, D_RSL, D_RSR, D_CSC, mode. Infeasible modes leave
/// their cell empty.
inline int run_curves(const std::filesystem::path& scenario_path, int grid_n, std::ostream& out,
                      std::ostream& err) {
    if (grid_n < 2) {
        err << "error: --grid must be at least 2\n";
        return exit_parse;
    }
    auto loaded = detail::load(scenario_path, err, std::nullopt);
    if (!loaded.scenario) return loaded.exit_code;
    const Scenario& sc = *loaded.scenario;

    out << "alpha,D_LSL,D_LSR,D_RSL,D_RSR,D_CSC,mode\n";
    for (int k = 0; k < grid_n; ++k) {
        const double alpha = two_pi * k / grid_n;
        const PlanarPose goal = goal_pose_on_circle(sc.circle, alpha);
        std::optional<double> best;
        PathMode best_mode = PathMode::LSL;
        std::string cells;
        for (PathMode m : all_path_modes) {
            const auto path = csc_path(sc.pursuer, goal, sc.rho, m);
            cells += ',';
            if (path) {
                cells += detail::fmt(path->total_len);
                if (!best || path->total_len < *best) {
                    best = path->total_len;
                    best_mode = m;
                }
            }
        }
        if (!best) {
            err << "error: no feasible CSC mode at alpha=" << detail::fmt(alpha) << '\n';
            return exit_infeasible;
        }
        out << detail::fmt(alpha) << cells << ',' << detail::fmt(*best) << ','
            << to_string(best_mode) << '\n';
    }
    return exit_ok;
}

/// Emit the travel-time curves over a travel-parameter range:
/// beta, alpha, T_p, T_t, delta_t. The sign changes of delta_t bracket the
/// solver's interception parameter.
inline int run_times(const std::filesystem::path& scenario_path, double beta_max, int grid_n,
                     std::ostream& out, std::ostream& err) {
    if (grid_n < 2) {
        err << "error: --grid must be at least 2\n";
        return exit_parse;
    }
    if (!(beta_max > 0.0)) {
        err << "error: --beta-max must be > 0\n";
        return exit_parse;
    }
    auto loaded = detail::load(scenario_path, err, std::nullopt);
    if (!loaded.scenario) return loaded.exit_code;
    const Scenario& sc = *loaded.scenario;

    out << "beta,alpha,T_p,T_t,delta_t\n";
    try {
        for (int k = 0; k < grid_n; ++k) {
            const TravelParameter t{beta_max * k / (grid_n - 1)};
            const double tp = pursuer_time(sc, t);
            const double tt = target_time(sc, t);
            out << detail::fmt(t.beta) << ',' << detail::fmt(alpha_at(sc, t)) << ','
                << detail::fmt(tp) << ',' << detail::fmt(tt) << ',' << detail::fmt(tp - tt)
                << '\n';
        }
    } catch (const AllModesInfeasible& e) {
        err << "error: " << e.what() << '\n';
        return exit_infeasible;
    }
    return exit_ok;
}

/// Solve, verify, and emit the winning path sampled uniformly in arc length,
/// together with the target position at the matching timestamps:
/// s, x, y, heading, target_x, target_y. The last row has the pursuer and
/// target coincident.
inline int run_path(const std::filesystem::path& scenario_path, int samples, std::ostream& out,
                    std::ostream& err, std::optional<double> epsilon_override = {}) {
    if (samples < 2) {
        err << "error: --samples must be at least 2\n";
        return exit_parse;
    }
    auto loaded = detail::load(scenario_path, err, epsilon_override);
    if (!loaded.scenario) return loaded.exit_code;
    const Scenario& sc = *loaded.scenario;
    try {
        const InterceptSolution sol = solve(sc);
        const VerificationReport ver = verify_interception(sc, sol);
        if (!ver.passed()) {
            err << "error: verification failed (" << ver.failing_clause() << ")\n";
            return exit_verify;
        }
        out << "s,x,y,heading,target_x,target_y\n";
        for (int k = 0; k < samples; ++k) {
            const double s = sol.path.total_len * k / (samples - 1);
            const PlanarPose pose = path_point_at(sc.pursuer, sol.path, s);
            const PlanarPose target = target_pose_at_time(sc, s / sc.v_p);
            out << detail::fmt(s) << ',' << detail::fmt(pose.position.x) << ','
                << detail::fmt(pose.position.y) << ',' << detail::fmt(pose.heading) << ','
                << detail::fmt(target.position.x) << ',' << detail::fmt(target.position.y)
                << '\n';
        }
        return exit_ok;
    } catch (const AllModesInfeasible& e) {
        err << "error: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const BracketOverflow& e) {
        err << "error: " << e.what() << '\n';
        return exit_infeasible;
    }
}

}  // namespace pursuit::cli

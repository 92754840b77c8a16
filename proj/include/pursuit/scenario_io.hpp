#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pursuit/solver.hpp"

namespace pursuit {

class ScenarioError : public std::runtime_error {
  public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const char* where,
                                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) throw ScenarioError(std::string("unknown key '") + where + key + "'");
    }
}

inline double require_number(const nlohmann::json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ScenarioError(std::string("missing key '") + where + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw ScenarioError(std::string("key '") + where + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw ScenarioError(std::string("key '") + where + key + "' must be finite");
    return d;
}

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw ScenarioError(std::string("'") + name + "' must be > 0");
}

}  // namespace detail

/// Parse and validate a scenario document. The schema is flat and strict:
/// unknown keys are rejected, every numeric field must be finite, angles are
/// radians, and `circle.direction` must be exactly "cw" or "ccw".
[[nodiscard]] inline Scenario parse_scenario(const nlohmann::json& j) {
    if (!j.is_object()) throw ScenarioError("scenario document must be an object");
    detail::reject_unknown_keys(j, "", {"pursuer", "rho", "v_p", "circle", "v_t", "epsilon"});

    if (!j.contains("pursuer") || !j.at("pursuer").is_object())
        throw ScenarioError("missing object 'pursuer'");
    const auto& jp = j.at("pursuer");
    detail::reject_unknown_keys(jp, "pursuer.", {"x", "y", "heading_rad"});
    const double px = detail::require_number(jp, "pursuer.", "x");
    const double py = detail::require_number(jp, "pursuer.", "y");
    const double ph = detail::require_number(jp, "pursuer.", "heading_rad");

    const double rho = detail::require_number(j, "", "rho");
    const double v_p = detail::require_number(j, "", "v_p");
    detail::require_positive(rho, "rho");
    detail::require_positive(v_p, "v_p");

    if (!j.contains("circle") || !j.at("circle").is_object())
        throw ScenarioError("missing object 'circle'");
    const auto& jc = j.at("circle");
    detail::reject_unknown_keys(jc, "circle.", {"cx", "cy", "r", "direction", "alpha_init_rad"});
    const double cx = detail::require_number(jc, "circle.", "cx");
    const double cy = detail::require_number(jc, "circle.", "cy");
    const double r = detail::require_number(jc, "circle.", "r");
    const double alpha_init = detail::require_number(jc, "circle.", "alpha_init_rad");
    detail::require_positive(r, "circle.r");
    if (!jc.contains("direction") || !jc.at("direction").is_string())
        throw ScenarioError("missing string 'circle.direction'");
    const std::string dir = jc.at("direction").get<std::string>();
    TurnDirection motion;
    if (dir == "cw") {
        motion = TurnDirection::Right;
    } else if (dir == "ccw") {
        motion = TurnDirection::Left;
    } else {
        throw ScenarioError("'circle.direction' must be \"cw\" or \"ccw\", got \"" + dir + "\"");
    }

    const double v_t = detail::require_number(j, "", "v_t");
    detail::require_positive(v_t, "v_t");

    double epsilon = 1e-9;
    if (j.contains("epsilon")) {
        epsilon = detail::require_number(j, "", "epsilon");
        detail::require_positive(epsilon, "epsilon");
    }

    return Scenario{PlanarPose{px, py, ph}, rho, v_p,
                    TargetCircleSpec{{cx, cy}, r, motion, alpha_init, v_t}, epsilon};
}

[[nodiscard]] inline Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(std::string("scenario file is not valid JSON: ") + e.what());
    }
    return parse_scenario(j);
}

/// Scenario echo in the same schema accepted by parse_scenario (fields come
/// back normalized: headings and angles wrapped to [0, 2*pi)).
[[nodiscard]] inline nlohmann::ordered_json scenario_to_json(const Scenario& sc) {
    nlohmann::ordered_json j;
    j["pursuer"] = {{"x", sc.pursuer.position.x},
                    {"y", sc.pursuer.position.y},
                    {"heading_rad", sc.pursuer.heading}};
    j["rho"] = sc.rho;
    j["v_p"] = sc.v_p;
    j["circle"] = {{"cx", sc.circle.center.x},
                   {"cy", sc.circle.center.y},
                   {"r", sc.circle.radius},
                   {"direction", sc.circle.motion == TurnDirection::Right ? "cw" : "ccw"},
                   {"alpha_init_rad", sc.circle.alpha_init}};
    j["v_t"] = sc.circle.speed;
    j["epsilon"] = sc.epsilon;
    return j;
}

[[nodiscard]] inline nlohmann::ordered_json solution_report(const Scenario& sc,
                                                            const InterceptSolution& sol,
                                                            const VerificationReport& ver) {
    nlohmann::ordered_json j;
    j["scenario"] = scenario_to_json(sc);
    j["four_rho_ok"] = sc.four_rho_ok();
    j["solution"] = {{"alpha_star_rad", sol.alpha_star},
                     {"beta_star_rad", sol.beta_star.beta},
                     {"t_star_s", sol.t_star},
                     {"mode", to_string(sol.path.mode)},
                     {"phi1_rad", sol.path.phi1},
                     {"straight_m", sol.path.straight_len},
                     {"phi2_rad", sol.path.phi2},
                     {"total_length_m", sol.path.total_len},
                     {"residual_s", sol.residual},
                     {"iterations", sol.iterations},
                     {"bracket_shifts", sol.bracket_shifts}};
    j["verification"] = {{"status", ver.passed() ? std::string("PASSED")
                                                 : std::string("FAILED: ") + ver.failing_clause()},
                         {"position_error_m", ver.position_error},
                         {"heading_error_rad", ver.heading_error},
                         {"time_error_s", ver.time_error},
                         {"curvature_ok", ver.curvature_ok}};
    return j;
}

}  // namespace pursuit

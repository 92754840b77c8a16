#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "pursuit/geometry.hpp"

namespace pursuit {

/// Target traveling at constant speed on a circle, described by the circle
/// geometry, the motion direction, and the target's initial angular position
/// (measured counter-clockwise from the x-axis at the circle center).
struct TargetCircleSpec {
    Vec2 center;
    double radius;
    TurnDirection motion;
    double alpha_init;  // normalized to [0, 2*pi)
    double speed;

    TargetCircleSpec(Vec2 c, double r, TurnDirection m, double alpha0, double v)
        : center(c), radius(r), motion(m), alpha_init(wrap_angle(alpha0)), speed(v) {
        if (!(radius > 0.0)) throw std::invalid_argument("TargetCircleSpec: radius must be > 0");
        if (!(speed > 0.0)) throw std::invalid_argument("TargetCircleSpec: speed must be > 0");
    }
};

/// Thrown when no CSC mode connects the poses. Cannot occur when the goal
/// circle keeps more than four turn radii from the start.
class AllModesInfeasible : public std::runtime_error {
  public:
    AllModesInfeasible() : std::runtime_error("no feasible CSC path mode at this angular position") {}
};

/// One arc-straight-arc path. Arc sweeps are stored in [0, 2*pi); the total
/// always equals turn_radius * (phi1 + phi2) + straight_len.
struct CscPath {
    PathMode mode;
    double phi1;
    double straight_len;
    double phi2;
    double turn_radius;
    Vec2 first_center;
    Vec2 second_center;
    double total_len;
};

/// Center of the turn circle a vehicle at `pose` would trace in direction `dir`.
[[nodiscard]] inline Vec2 turn_center(const PlanarPose& pose, TurnDirection dir, double radius) {
    const double s = turn_sign(dir) * radius;
    return pose.position + Vec2{-std::sin(pose.heading), std::cos(pose.heading)} * s;
}

/// Pose of the goal point at angular position `alpha` on the target circle,
/// heading tangent to the circle in the direction of motion.
[[nodiscard]] inline PlanarPose goal_pose_on_circle(const TargetCircleSpec& circle, double alpha) {
    const double a = wrap_angle(alpha);
    const Vec2 pos = circle.center + unit_vector(a) * circle.radius;
    const double heading = a + turn_sign(circle.motion) * half_pi;
    return {pos, heading};
}

struct TangentSegment {
    Vec2 departure;
    Vec2 arrival;
    double heading;  // direction of travel along the segment, in [0, 2*pi)
    double length;
};

namespace detail {

// Travel heading and length of the common tangent between two equal-radius
// turn circles; nullopt when the inner tangent does not exist.
struct TangentLine {
    double heading;
    double length;
};

[[nodiscard]] inline std::optional<TangentLine> tangent_line(Vec2 c1, TurnDirection d1, Vec2 c2,
                                                             TurnDirection d2, double radius) {
    const Vec2 delta = c2 - c1;
    const double dist = delta.norm();
    if (!(dist > 0.0)) return std::nullopt;  // coincident centers: no unique tangent
    double heading = delta.angle();
    double length = dist;
    if (d1 != d2) {
        double disc = dist * dist - 4.0 * radius * radius;
        if (disc < 0.0 && disc > -1e-12) disc = 0.0;  // grazing tangency
        if (disc < 0.0) return std::nullopt;
        length = std::sqrt(disc);
        heading += turn_sign(d1) * std::asin(std::min(1.0, 2.0 * radius / dist));
    }
    return TangentLine{heading, length};
}

// Arc sweeps that join the start/goal headings to the tangent line.
struct ArcTriple {
    double phi1;
    double straight;
    double phi2;
    double line_heading;
};

[[nodiscard]] inline std::optional<ArcTriple> csc_arcs(Vec2 c1, Vec2 c2, PathMode mode,
                                                       double radius, double start_heading,
                                                       double goal_heading) {
    const TurnDirection d1 = first_turn(mode);
    const TurnDirection d2 = last_turn(mode);
    const auto line = tangent_line(c1, d1, c2, d2, radius);
    if (!line) return std::nullopt;
    const double phi1 = canonical_arc(turn_sign(d1) * (line->heading - start_heading));
    const double phi2 = canonical_arc(turn_sign(d2) * (goal_heading - line->heading));
    return ArcTriple{phi1, line->length, phi2, line->heading};
}

}  // namespace detail

/// Common tangent from circle (c1, d1) to circle (c2, d2), both of the given
/// radius, oriented so travel leaves c1 in sense d1 and arrives on c2 in sense
/// d2. Same-direction pairs use the outer tangent (always exists); opposite
/// pairs use the inner tangent, which needs |c2 - c1| >= 2 * radius.
[[nodiscard]] inline std::optional<TangentSegment> tangent_segment(Vec2 c1, TurnDirection d1,
                                                                   Vec2 c2, TurnDirection d2,
                                                                   double radius) {
    const auto line = detail::tangent_line(c1, d1, c2, d2, radius);
    if (!line) return std::nullopt;
    // The tangent point sits radius away from each center, perpendicular to
    // the travel direction on the side determined by the turn sense.
    const Vec2 radial{std::sin(line->heading), -std::cos(line->heading)};
    const Vec2 departure = c1 + radial * (turn_sign(d1) * radius);
    const Vec2 arrival = c2 + radial * (turn_sign(d2) * radius);
    return TangentSegment{departure, arrival, wrap_angle(line->heading), line->length};
}

/// Construct the CSC path of the requested mode from `start` to `goal` with
/// turn radius `rho`; nullopt when the mode's tangent does not exist.
[[nodiscard]] inline std::optional<CscPath> csc_path(const PlanarPose& start,
                                                     const PlanarPose& goal, double rho,
                                                     PathMode mode) {
    if (!(rho > 0.0)) throw std::invalid_argument("csc_path: rho must be > 0");
    const Vec2 c1 = turn_center(start, first_turn(mode), rho);
    const Vec2 c2 = turn_center(goal, last_turn(mode), rho);
    const auto arcs = detail::csc_arcs(c1, c2, mode, rho, start.heading, goal.heading);
    if (!arcs) return std::nullopt;
    const double total = rho * (arcs->phi1 + arcs->phi2) + arcs->straight;
    return CscPath{mode, arcs->phi1, arcs->straight, arcs->phi2, rho, c1, c2, total};
}

struct CscEvaluation {
    double length;
    PathMode mode;
    CscPath path;
};

namespace detail {

// Turn-circle centers for both senses of one pose, sharing the trig calls.
struct CenterPair {
    Vec2 left;
    Vec2 right;
};

[[nodiscard]] inline CenterPair turn_centers(Vec2 position, double heading, double radius) {
    const Vec2 offset = Vec2{-std::sin(heading), std::cos(heading)} * radius;
    return {position + offset, position - offset};
}

}  // namespace detail

/// Shortest CSC path from `start` to the tangent pose at angular position
/// `alpha` on the target circle. All four modes are tried; ties resolve in the
/// fixed order LSL, LSR, RSL, RSR. Periodic in alpha with period 2*pi.
[[nodiscard]] inline CscEvaluation d_csc(const PlanarPose& start, const TargetCircleSpec& circle,
                                         double rho, double alpha) {
    if (!(rho > 0.0)) throw std::invalid_argument("d_csc: rho must be > 0");
    const PlanarPose goal = goal_pose_on_circle(circle, alpha);
    const detail::CenterPair from = detail::turn_centers(start.position, start.heading, rho);
    const detail::CenterPair to = detail::turn_centers(goal.position, goal.heading, rho);

    std::optional<PathMode> best_mode;
    detail::ArcTriple best_arcs{};
    double best_len = 0.0;
    for (PathMode m : all_path_modes) {
        const Vec2 c1 = first_turn(m) == TurnDirection::Left ? from.left : from.right;
        const Vec2 c2 = last_turn(m) == TurnDirection::Left ? to.left : to.right;
        const auto arcs = detail::csc_arcs(c1, c2, m, rho, start.heading, goal.heading);
        if (!arcs) continue;
        const double len = rho * (arcs->phi1 + arcs->phi2) + arcs->straight;
        if (!best_mode || len < best_len) {
            best_mode = m;
            best_arcs = *arcs;
            best_len = len;
        }
    }
    if (!best_mode) throw AllModesInfeasible{};
    const Vec2 c1 = first_turn(*best_mode) == TurnDirection::Left ? from.left : from.right;
    const Vec2 c2 = last_turn(*best_mode) == TurnDirection::Left ? to.left : to.right;
    return {best_len, *best_mode,
            CscPath{*best_mode, best_arcs.phi1, best_arcs.straight, best_arcs.phi2, rho, c1, c2,
                    best_len}};
}

/// Length-only variant of d_csc for dense grid scans.
[[nodiscard]] inline double d_csc_length(const PlanarPose& start, const TargetCircleSpec& circle,
                                         double rho, double alpha) {
    if (!(rho > 0.0)) throw std::invalid_argument("d_csc_length: rho must be > 0");
    const PlanarPose goal = goal_pose_on_circle(circle, alpha);
    const detail::CenterPair from = detail::turn_centers(start.position, start.heading, rho);
    const detail::CenterPair to = detail::turn_centers(goal.position, goal.heading, rho);
    bool found = false;
    double best = 0.0;
    for (PathMode m : all_path_modes) {
        const Vec2 c1 = first_turn(m) == TurnDirection::Left ? from.left : from.right;
        const Vec2 c2 = last_turn(m) == TurnDirection::Left ? to.left : to.right;
        const auto arcs = detail::csc_arcs(c1, c2, m, rho, start.heading, goal.heading);
        if (!arcs) continue;
        const double len = rho * (arcs->phi1 + arcs->phi2) + arcs->straight;
        if (!found || len < best) {
            best = len;
            found = true;
        }
    }
    if (!found) throw AllModesInfeasible{};
    return best;
}

/// Rigid transform that maps `start` to the origin pose (0, 0, 0), together
/// with the target circle expressed in that frame. Applying the inverse
/// transform to canonical-frame geometry recovers world coordinates.
[[nodiscard]] inline std::pair<RigidTransform, TargetCircleSpec> canonicalize(
    const PlanarPose& start, const TargetCircleSpec& circle) {
    RigidTransform t;
    t.angle = -start.heading;
    t.translation = -(Vec2{std::cos(t.angle) * start.position.x - std::sin(t.angle) * start.position.y,
                           std::sin(t.angle) * start.position.x + std::cos(t.angle) * start.position.y});
    TargetCircleSpec canonical{t.apply(circle.center), circle.radius, circle.motion,
                               circle.alpha_init - start.heading, circle.speed};
    return {t, canonical};
}

namespace detail {

[[nodiscard]] inline PlanarPose rotate_about(const PlanarPose& pose, Vec2 center, double dphi) {
    const double c = std::cos(dphi);
    const double s = std::sin(dphi);
    const Vec2 r = pose.position - center;
    return {center + Vec2{c * r.x - s * r.y, s * r.x + c * r.y}, pose.heading + dphi};
}

}  // namespace detail

/// Pose after traveling arc length `s` along the path from `start`.
/// `s` is clamped to [0, total_len].
[[nodiscard]] inline PlanarPose path_point_at(const PlanarPose& start, const CscPath& path,
                                              double s) {
    const double rho = path.turn_radius;
    const double first_arc_len = rho * path.phi1;
    s = std::min(std::max(s, 0.0), path.total_len);
    if (s <= first_arc_len) {
        return detail::rotate_about(start, path.first_center,
                                    turn_sign(first_turn(path.mode)) * s / rho);
    }
    PlanarPose pose = detail::rotate_about(start, path.first_center,
                                           turn_sign(first_turn(path.mode)) * path.phi1);
    s -= first_arc_len;
    if (s <= path.straight_len) {
        return {pose.position + pose.direction() * s, pose.heading};
    }
    pose = PlanarPose{pose.position + pose.direction() * path.straight_len, pose.heading};
    s -= path.straight_len;
    return detail::rotate_about(pose, path.second_center,
                                turn_sign(last_turn(path.mode)) * s / rho);
}

/// Endpoint reached by tracing the three segments from `start`.
[[nodiscard]] inline PlanarPose trace_endpoint(const PlanarPose& start, const CscPath& path) {
    return path_point_at(start, path, path.total_len);
}

}  // namespace pursuit

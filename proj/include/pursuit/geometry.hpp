#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace pursuit {

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double half_pi = 0.5 * std::numbers::pi;

/// Wrap an angle into [0, 2*pi). Negative inputs wrap up.
[[nodiscard]] inline double wrap_angle(double a) noexcept {
    double w = std::fmod(a, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w -= two_pi;  // fmod(-eps) + 2*pi can round to exactly 2*pi
    return w;
}

/// Wrap an angle into [-pi, pi].
[[nodiscard]] inline double wrap_signed(double a) noexcept { return std::remainder(a, two_pi); }

/// Smallest absolute separation between two angles on the circle.
[[nodiscard]] inline double angular_distance(double a, double b) noexcept {
    return std::fabs(wrap_signed(a - b));
}

// Arc sweeps live in [0, 2*pi). A sweep landing within this window below
// 2*pi is a vanished arc and is stored as 0, never as 2*pi.
inline constexpr double arc_snap_window = 1e-10;

[[nodiscard]] inline double canonical_arc(double a) noexcept {
    double w = wrap_angle(a);
    if (two_pi - w < arc_snap_window) w = 0.0;
    return w;
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const noexcept { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const noexcept { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const noexcept { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const noexcept { return {x * s, y * s}; }

    [[nodiscard]] constexpr double dot(Vec2 o) const noexcept { return x * o.x + y * o.y; }
    [[nodiscard]] double norm() const noexcept { return std::hypot(x, y); }
    [[nodiscard]] double angle() const noexcept { return std::atan2(y, x); }
};

[[nodiscard]] inline Vec2 unit_vector(double angle) noexcept {
    return {std::cos(angle), std::sin(angle)};
}

[[nodiscard]] inline double distance(Vec2 a, Vec2 b) noexcept { return (a - b).norm(); }

/// Position plus heading; the heading is normalized to [0, 2*pi) on construction.
struct PlanarPose {
    Vec2 position;
    double heading = 0.0;

    PlanarPose() = default;
    PlanarPose(double x, double y, double h) noexcept : position{x, y}, heading(wrap_angle(h)) {}
    PlanarPose(Vec2 p, double h) noexcept : position(p), heading(wrap_angle(h)) {}

    [[nodiscard]] Vec2 direction() const noexcept { return unit_vector(heading); }
};

enum class TurnDirection { Left, Right };  // Left = counter-clockwise, Right = clockwise

[[nodiscard]] constexpr TurnDirection mirror(TurnDirection d) noexcept {
    return d == TurnDirection::Left ? TurnDirection::Right : TurnDirection::Left;
}

/// +1 for a left (counter-clockwise) turn, -1 for a right (clockwise) turn.
[[nodiscard]] constexpr double turn_sign(TurnDirection d) noexcept {
    return d == TurnDirection::Left ? 1.0 : -1.0;
}

enum class PathMode { LSL, LSR, RSL, RSR };

inline constexpr std::array<PathMode, 4> all_path_modes{PathMode::LSL, PathMode::LSR,
                                                        PathMode::RSL, PathMode::RSR};

[[nodiscard]] constexpr TurnDirection first_turn(PathMode m) noexcept {
    return (m == PathMode::LSL || m == PathMode::LSR) ? TurnDirection::Left : TurnDirection::Right;
}

[[nodiscard]] constexpr TurnDirection last_turn(PathMode m) noexcept {
    return (m == PathMode::LSL || m == PathMode::RSL) ? TurnDirection::Left : TurnDirection::Right;
}

/// Reflection about the x-axis swaps L and R on both arcs.
[[nodiscard]] constexpr PathMode mirror(PathMode m) noexcept {
    switch (m) {
        case PathMode::LSL: return PathMode::RSR;
        case PathMode::LSR: return PathMode::RSL;
        case PathMode::RSL: return PathMode::LSR;
        default: return PathMode::LSL;
    }
}

[[nodiscard]] constexpr const char* to_string(PathMode m) noexcept {
    switch (m) {
        case PathMode::LSL: return "LSL";
        case PathMode::LSR: return "LSR";
        case PathMode::RSL: return "RSL";
        default: return "RSR";
    }
}

/// Planar rigid motion p -> R(angle) * p + translation.
struct RigidTransform {
    double angle = 0.0;
    Vec2 translation;

    [[nodiscard]] static RigidTransform identity() noexcept { return {}; }

    [[nodiscard]] Vec2 apply(Vec2 p) const noexcept {
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        return {c * p.x - s * p.y + translation.x, s * p.x + c * p.y + translation.y};
    }

    [[nodiscard]] PlanarPose apply(const PlanarPose& pose) const noexcept {
        return {apply(pose.position), pose.heading + angle};
    }

    [[nodiscard]] RigidTransform inverse() const noexcept {
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        return {-angle, {-(c * translation.x + s * translation.y),
                         -(-s * translation.x + c * translation.y)}};
    }
};

}  // namespace pursuit

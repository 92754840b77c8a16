#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "pursuit/geometry.hpp"
#include "pursuit/numeric.hpp"

// Closed-form CSC segment lengths for the canonical scene: vehicle at the
// origin with heading 0, target circle of the same radius as the turn radius,
// target moving clockwise (goal heading alpha - pi/2). These expressions are
// algebraically independent of the tangent-circle construction in dubins.hpp
// and serve as its cross-check, and as the basis of the transition-angle and
// continuity diagnostics.

namespace pursuit::closed_form {

struct EqualRadiusScene {
    double cx;
    double cy;
    double rho;

    EqualRadiusScene(double cx_, double cy_, double rho_) : cx(cx_), cy(cy_), rho(rho_) {
        if (!(rho > 0.0)) throw std::invalid_argument("EqualRadiusScene: rho must be > 0");
    }

    /// Every point of the target circle is more than four turn radii from the origin.
    [[nodiscard]] bool four_rho_ok() const noexcept {
        return std::fabs(std::hypot(cx, cy) - rho) > 4.0 * rho;
    }
};

struct SegmentTriple {
    double phi1;
    double straight;
    double phi2;

    [[nodiscard]] double total(double rho) const noexcept {
        return rho * (phi1 + phi2) + straight;
    }
};

/// Raw direction angle of the LSL center line, in (-pi, pi]; its wrap is the
/// LSL first-arc sweep, so it crosses zero where that arc vanishes.
[[nodiscard]] inline double lsl_first_arc_signed(const EqualRadiusScene& sc, double alpha) {
    const double x = sc.cx + 2.0 * sc.rho * std::cos(alpha);
    const double y = sc.cy + 2.0 * sc.rho * std::sin(alpha) - sc.rho;
    return std::atan2(y, x);
}

[[nodiscard]] inline SegmentTriple lsl(const EqualRadiusScene& sc, double alpha) {
    const double a = wrap_angle(alpha);
    const double x = sc.cx + 2.0 * sc.rho * std::cos(a);
    const double y = sc.cy + 2.0 * sc.rho * std::sin(a) - sc.rho;
    const double straight = std::hypot(x, y);
    const double phi1 = canonical_arc(std::atan2(y, x));
    const double phi2 = canonical_arc(a - phi1 - half_pi);
    return {phi1, straight, phi2};
}

/// Signed residual of the LSL second-arc sweep; crosses zero (ascending)
/// where the second arc of the LSL and LSR paths vanishes.
[[nodiscard]] inline double lsl_second_arc_signed(const EqualRadiusScene& sc, double alpha) {
    const double phi1 = wrap_angle(lsl_first_arc_signed(sc, alpha));
    return wrap_signed(alpha - phi1 - half_pi);
}

[[nodiscard]] inline std::optional<SegmentTriple> lsr(const EqualRadiusScene& sc, double alpha) {
    const double a = wrap_angle(alpha);
    double disc = sc.cx * sc.cx + (sc.cy - sc.rho) * (sc.cy - sc.rho) - 4.0 * sc.rho * sc.rho;
    if (disc < 0.0 && disc > -1e-12) disc = 0.0;
    if (disc < 0.0) return std::nullopt;
    const double straight = std::sqrt(disc);
    const double psi1 = std::atan2(2.0 * sc.rho, straight);
    const double psi2 = std::atan2(sc.cy - sc.rho, sc.cx);
    const double phi1 = canonical_arc(psi1 + psi2);
    const double phi2 = canonical_arc(phi1 - a + half_pi);
    return SegmentTriple{phi1, straight, phi2};
}

/// Raw first-arc angle of the RSL path, psi2 - psi1; crosses zero where that
/// arc vanishes (the path degenerates to straight-then-left).
[[nodiscard]] inline double rsl_first_arc_signed(const EqualRadiusScene& sc, double alpha) {
    const double x = sc.cx + 2.0 * sc.rho * std::cos(alpha);
    const double y = sc.cy + 2.0 * sc.rho * std::sin(alpha) + sc.rho;
    const double lcc = std::hypot(x, y);
    const double psi1 = std::atan2(y, x);
    const double psi2 = std::asin(std::min(1.0, 2.0 * sc.rho / lcc));
    return -psi1 + psi2;
}

[[nodiscard]] inline std::optional<SegmentTriple> rsl(const EqualRadiusScene& sc, double alpha) {
    const double a = wrap_angle(alpha);
    const double x = sc.cx + 2.0 * sc.rho * std::cos(a);
    const double y = sc.cy + 2.0 * sc.rho * std::sin(a) + sc.rho;
    const double lcc_sq = x * x + y * y;
    double disc = lcc_sq - 4.0 * sc.rho * sc.rho;
    if (disc < 0.0 && disc > -1e-12) disc = 0.0;
    if (disc < 0.0) return std::nullopt;
    const double psi1 = std::atan2(y, x);
    const double psi2 = std::asin(std::min(1.0, 2.0 * sc.rho / std::sqrt(lcc_sq)));
    const double phi1 = canonical_arc(-psi1 + psi2);
    const double straight = std::sqrt(disc);
    // close phi2 from the headings: goal heading minus line heading, left sense
    const double phi2 = canonical_arc((a - half_pi) - (psi1 - psi2));
    return SegmentTriple{phi1, straight, phi2};
}

/// RSR via the x-axis mirror of the LSL algebra (cy -> -cy, alpha -> -alpha,
/// goal heading mirrored): the second turn circle coincides with the target
/// circle, so the straight length and first arc are constant in alpha.
[[nodiscard]] inline SegmentTriple rsr(const EqualRadiusScene& sc, double alpha) {
    const double a = wrap_angle(alpha);
    const double center_line = std::atan2(sc.cy + sc.rho, sc.cx);
    const double straight = std::hypot(sc.cx, sc.cy + sc.rho);
    const double phi1 = canonical_arc(-center_line);
    const double phi2 = canonical_arc(center_line - a + half_pi);
    return {phi1, straight, phi2};
}

[[nodiscard]] inline std::optional<SegmentTriple> segments(const EqualRadiusScene& sc,
                                                           PathMode mode, double alpha) {
    switch (mode) {
        case PathMode::LSL: return lsl(sc, alpha);
        case PathMode::LSR: return lsr(sc, alpha);
        case PathMode::RSL: return rsl(sc, alpha);
        default: return rsr(sc, alpha);
    }
}

/// Angular positions where a CSC arc vanishes and the shortest-path mode
/// hands over: alpha_ls is where the second arc of the LSL/LSR pair
/// disappears (the paths degenerate to arc-straight), alpha_sl where the
/// first arc of the LSL/RSL pair disappears (straight-arc). Either root may
/// not exist for a given scene; absent roots are reported, not fabricated.
struct TransitionAngles {
    std::optional<double> alpha_ls;
    std::optional<double> alpha_sl;
};

namespace detail {

// Locate a transversal zero crossing of a signed angular residual on
// [0, 2*pi). `ascending` selects the crossing direction. Crossings of the
// atan2 branch cut (jumps near +-2*pi) are ignored.
template <class F>
[[nodiscard]] std::optional<double> find_crossing(F&& residual, bool ascending) {
    constexpr int n = 4096;
    constexpr double step = two_pi / n;
    double prev = residual(0.0);
    for (int k = 0; k < n; ++k) {
        const double x1 = (k + 1 < n) ? (k + 1) * step : two_pi;
        const double cur = residual(x1);
        const bool crosses = ascending ? (prev <= 0.0 && cur > 0.0) : (prev >= 0.0 && cur < 0.0);
        if (crosses && std::fabs(cur - prev) < std::numbers::pi) {
            const double lo = k * step;
            if (ascending) {
                return bisect_zero([&](double x) { return -residual(x); }, lo, x1, 1e-13);
            }
            return bisect_zero(residual, lo, x1, 1e-13);
        }
        prev = cur;
    }
    return std::nullopt;
}

}  // namespace detail

[[nodiscard]] inline TransitionAngles find_transition_angles(const EqualRadiusScene& sc) {
    TransitionAngles out;
    out.alpha_ls = detail::find_crossing(
        [&](double a) { return lsl_second_arc_signed(sc, a); }, /*ascending=*/true);
    out.alpha_sl = detail::find_crossing(
        [&](double a) { return lsl_first_arc_signed(sc, a); }, /*ascending=*/false);
    return out;
}

/// Analytic rates of the raw first-arc angles with respect to alpha:
/// d/dalpha of lsl_first_arc_signed and rsl_first_arc_signed. The LSL rate is
/// -(2 rho / L_S) * sin(theta - phi1) with theta the goal heading; the RSL
/// rate is tan(psi2) * sin(phi2).
struct FirstArcRates {
    double lsl_rate;
    double rsl_rate;
};

[[nodiscard]] inline FirstArcRates first_arc_rates(const EqualRadiusScene& sc, double alpha) {
    const double a = wrap_angle(alpha);
    const double theta = a - half_pi;

    const SegmentTriple l = lsl(sc, a);
    const double lsl_rate = -(2.0 * sc.rho / l.straight) * std::sin(theta - l.phi1);

    const auto r = rsl(sc, a);
    if (!r) throw std::domain_error("first_arc_rates: RSL infeasible at this alpha");
    const double x = sc.cx + 2.0 * sc.rho * std::cos(a);
    const double y = sc.cy + 2.0 * sc.rho * std::sin(a) + sc.rho;
    const double psi2 = std::asin(std::min(1.0, 2.0 * sc.rho / std::hypot(x, y)));
    const double rsl_rate = std::tan(psi2) * std::sin(r->phi2);

    return {lsl_rate, rsl_rate};
}

}  // namespace pursuit::closed_form

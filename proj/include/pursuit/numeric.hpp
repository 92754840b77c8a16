#pragma once

#include <cmath>

namespace pursuit {

/// Bisection for a root bracketed by f(lo) >= 0 >= f(hi); shrinks the
/// interval until it is no wider than x_tol and returns its midpoint.
/// Callers with an ascending residual pass the negated function.
template <class F>
[[nodiscard]] double bisect_zero(F&& f, double lo, double hi, double x_tol) {
    while (hi - lo > x_tol) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden-section minimization of a unimodal function on [lo, hi].
template <class F>
[[nodiscard]] double golden_min(F&& f, double lo, double hi, double x_tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > x_tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

namespace detail {

/// One bisection step sequence on a signed residual: maintains
/// f(lo) > 0 > f(hi) and halves down to the interval cap, which pins the
/// returned point to the crossing itself rather than to wherever the
/// residual first dips under tolerance (the latter varies with bracket
/// jitter). Returns the final midpoint, its residual, and the number of
/// midpoint evaluations.
struct DeltaBisection {
    double x;
    double residual;
    int iterations;
};

template <class F>
[[nodiscard]] DeltaBisection bisect_delta(F&& f, double lo, double hi, double width_cap = 1e-12) {
    double mid = 0.5 * (lo + hi);
    double v = f(mid);
    int iterations = 1;
    while (hi - lo > width_cap) {
        if (v > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
        v = f(mid);
        ++iterations;
    }
    return {mid, v, iterations};
}

}  // namespace detail

}  // namespace pursuit

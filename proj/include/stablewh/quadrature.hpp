#pragma once

// Adaptive tanh-sinh (double-exponential) quadrature over (0,1) and, via the
// u = e^{-x} substitution, over (0,infinity).  The node map
//   u(t) = 1/(1 + e^{-pi sinh t}),   1-u(t) = 1/(1 + e^{pi sinh t}),
// absorbs algebraic endpoint singularities of order < 1.  Integrands receive
// both u and 1-u so that factors like (1-u)^{-beta} can be evaluated without
// cancellation next to u = 1.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "stablewh/errors.hpp"

namespace stablewh {

struct QuadConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_levels = 12;
};

namespace detail {

// Nodes with u or 1-u below this are dropped; the declared endpoint
// exponents (< 1) make the omitted mass negligible at double precision.
template <typename Real>
constexpr Real ts_cutoff() {
    return Real(1e-280);
}

template <typename Real>
struct TsNode {
    Real u, omu, w; // abscissa, 1-abscissa, weight
};

template <typename Real>
bool ts_node(Real t, TsNode<Real>& n) {
    const Real pi = Real(3.14159265358979323846264338327950288L);
    const Real g = pi * std::sinh(t);
    if (std::abs(g) > Real(700)) return false;
    const Real eg = std::exp(-std::abs(g));
    const Real denom = Real(1) + eg;
    if (g >= Real(0)) {
        n.u = Real(1) / denom;
        n.omu = eg / denom;
    } else {
        n.u = eg / denom;
        n.omu = Real(1) / denom;
    }
    if (n.u < ts_cutoff<Real>() || n.omu < ts_cutoff<Real>()) return false;
    n.w = pi * std::cosh(t) * n.u * n.omu;
    return true;
}

} // namespace detail

/// Integral of f over (0,1).  The integrand is called as f(u, 1-u) and may
/// return a real or complex value.  left_exponent/right_exponent declare the
/// admissible algebraic blow-up |f| = O(u^{-left}) and O((1-u)^{-right});
/// both must be < 1 for the integral to exist.
template <typename Real, typename F>
auto integrate_01(F&& f, Real left_exponent, Real right_exponent, const QuadConfig& cfg = {}) {
    using Value = decltype(f(Real(0.5), Real(0.5)));
    if (left_exponent >= Real(1) || right_exponent >= Real(1))
        throw DomainError("integrate_01: declared endpoint exponent >= 1, integral diverges");
    if (cfg.rel_tol <= 0 || cfg.abs_tol <= 0 || cfg.max_levels < 4)
        throw DomainError("integrate_01: invalid QuadConfig");

    const Real t_max = Real(6.115); // sinh(t_max)*pi ~ 709, node underflow bound
    // Level 0 uses h = 1; singular integrands start converging around level
    // 5-6, so coarser levels only seed the refinement.
    Value sum{};
    Real abs_sum{};
    detail::TsNode<Real> n;
    if (detail::ts_node(Real(0), n)) {
        sum = f(n.u, n.omu) * n.w;
        abs_sum = std::abs(sum);
    }
    for (int k = 1; k <= static_cast<int>(t_max); ++k) {
        for (Real t : {Real(k), Real(-k)})
            if (detail::ts_node(t, n)) {
                const Value v = f(n.u, n.omu) * n.w;
                sum += v;
                abs_sum += std::abs(v);
            }
    }

    Real h = Real(1);
    Value prev = sum; // trapezoid value at level 0 (times 1/h handled below)
    Value integral{};
    for (int level = 1; level <= cfg.max_levels; ++level) {
        h /= Real(2);
        Value add{};
        for (Real t = h; t <= t_max; t += Real(2) * h) {
            if (detail::ts_node(t, n)) {
                const Value v = f(n.u, n.omu) * n.w;
                add += v;
                abs_sum += std::abs(v);
            }
            if (detail::ts_node(-t, n)) {
                const Value v = f(n.u, n.omu) * n.w;
                add += v;
                abs_sum += std::abs(v);
            }
        }
        sum += add;
        integral = sum * h;
        const Value prev_integral = prev * (Real(2) * h);
        const Real err = std::abs(integral - prev_integral);
        const Real tol = std::max(Real(cfg.abs_tol), Real(cfg.rel_tol) * std::abs(integral));
        // A tolerance below the accumulated-roundoff floor cannot be
        // certified; keep refining until levels run out so the caller sees
        // NoConvergence instead of a silently optimistic estimate.
        const Real floor = Real(4) * std::numeric_limits<Real>::epsilon() * abs_sum * h;
        if (level >= 5 && err <= tol && tol >= floor) return integral;
        prev = sum;
    }
    throw NoConvergence("integrate_01: tolerance not reached within max_levels");
}

/// Convenience overload for integrands that only need u.
template <typename Real, typename F>
auto integrate_01_plain(F&& f, Real left_exponent, Real right_exponent, const QuadConfig& cfg = {}) {
    return integrate_01([&f](Real u, Real) { return f(u); }, left_exponent, right_exponent, cfg);
}

/// Integral of f over (0,infinity) for integrands with |f(x)| = O(x^{-origin_exponent})
/// at 0 and O(e^{-decay_rate x}) at infinity.  Transformed to (0,1) by u = e^{-x};
/// x is recovered as -log1p(-(1-u)) so small x keeps full precision.
template <typename Real, typename F>
auto integrate_0inf(F&& f, Real origin_exponent, Real decay_rate, const QuadConfig& cfg = {}) {
    if (decay_rate <= Real(0))
        throw DomainError("integrate_0inf: decay_rate must be positive");
    auto g = [&f](Real u, Real omu) {
        // -log(u), via log1p near u = 1 where 1-u carries the precision
        const Real x = (u < Real(0.5)) ? -std::log(u) : -std::log1p(-omu);
        return f(x) / u;
    };
    // u -> 0 (x -> inf): f/u ~ u^{decay-1}; u -> 1 (x -> 0): f/u ~ omu^{-origin}.
    return integrate_01(g, Real(1) - decay_rate, origin_exponent, cfg);
}

} // namespace stablewh

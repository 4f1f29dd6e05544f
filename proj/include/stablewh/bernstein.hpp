#pragma once

// The two Bernstein-function families behind the ladder factors:
//
//   kappa_{q+i,p+j}(s) = int_0^inf (1-e^{-sx}) ((q+i) v (p+j) - 1)
//                        e^{-alpha x} (1-e^{-x})^{-(q+i)} (1+e^{-x})^{-(p+j)} dx
//
//   phi_{q+i,p+j}(s)   = int_0^inf (1-e^{-su}) { ((q+i) v (p+j) - 1)
//                        (1-e^{-u})^{-(q+i)} (1+e^{-u})^{-(p+j)}
//                        - (alpha-1)/2 (1-e^{-u})^{-q} (1+e^{-u})^{-p} } e^{-u} du
//
// with q, p in {alpha rho, alpha rho_hat}, q + p = alpha, i + j = 1.
//
// Evaluation splits each integral at x = A: the head is tanh-sinh quadrature
// (finite phase for imaginary s, algebraic singularity at 0 absorbed by the
// node map); the tail expands the density in the exact exponential series
// sum_m c_m e^{-(base+m)x} (binomial-product coefficients, geometric
// convergence), for which (1-e^{-sx}) integrates in closed form.  This keeps
// full precision for s on the imaginary axis, where a global u = e^{-x}
// transform would oscillate with unbounded frequency at u = 0.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "stablewh/errors.hpp"
#include "stablewh/quadrature.hpp"
#include "stablewh/special_functions.hpp"
#include "stablewh/stable_params.hpp"

namespace stablewh {

/// Index selector (q, p, i, j) for the kappa/phi families.
struct FactorIndices {
    double q, p;
    int i, j;
};

/// Checks q, p in {alpha rho, alpha rho_hat}, q + p = alpha, i + j = 1.
inline void validate_indices(const StableParams& p, const FactorIndices& idx) {
    const double ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    auto near = [](double a, double b) { return std::abs(a - b) < 1e-12; };
    if (!((near(idx.q, ar) || near(idx.q, arh)) && (near(idx.p, ar) || near(idx.p, arh))))
        throw DomainError("FactorIndices: q, p must be alpha*rho or alpha*rho_hat");
    if (!near(idx.q + idx.p, p.alpha())) throw DomainError("FactorIndices: q + p != alpha");
    if (idx.i + idx.j != 1 || idx.i < 0 || idx.j < 0)
        throw DomainError("FactorIndices: need i + j = 1 with i, j in {0,1}");
}

namespace detail {

/// expm1 for complex arguments, stable for small |w|.
template <typename Real>
Complex<Real> cexpm1(const Complex<Real>& w) {
    const Real re = w.real(), im = w.imag();
    const Real s = std::sin(im / Real(2));
    return {std::expm1(re) * std::cos(im) - Real(2) * s * s, std::exp(re) * std::sin(im)};
}

/// Coefficients of (1-w)^{-b} (1+w)^{-c} = sum_m coef[m] w^m.
template <typename Real>
std::vector<Real> binom_product_coeffs(Real b, Real c, int count) {
    std::vector<Real> r(count), s(count), out(count);
    r[0] = s[0] = Real(1);
    for (int m = 1; m < count; ++m) {
        r[m] = r[m - 1] * (b + Real(m - 1)) / Real(m);
        s[m] = -s[m - 1] * (c + Real(m - 1)) / Real(m);
    }
    for (int m = 0; m < count; ++m) {
        Real acc(0);
        for (int k = 0; k <= m; ++k) acc += r[k] * s[m - k];
        out[m] = acc;
    }
    return out;
}

/// Density split at A: head evaluated pointwise, tail as sum_m coef[m] e^{-(base+m)x}.
template <typename Real>
struct SplitDensity {
    Real A;
    Real base;                       // tail exponent offset
    Real sing;                       // algebraic blow-up order at x = 0
    std::vector<Real> coef;          // tail series coefficients
    std::function<Real(Real)> dens;  // pointwise density on (0, A]

    static constexpr int kTailTerms = 72;

    /// kappa family: ((q+i)v(p+j)-1) e^{-alpha x} (1-e^{-x})^{-qi} (1+e^{-x})^{-pj}.
    static SplitDensity kappa(const StableParams& p, const FactorIndices& idx) {
        SplitDensity d;
        const Real alpha = Real(p.alpha());
        const Real qi = Real(idx.q + idx.i), pj = Real(idx.p + idx.j);
        const Real cmax = std::max(qi, pj) - Real(1);
        d.A = Real(2.5L);
        d.base = alpha;
        d.sing = qi;
        d.coef = binom_product_coeffs(qi, pj, kTailTerms);
        for (auto& c : d.coef) c *= cmax;
        d.dens = [alpha, qi, pj, cmax](Real x) {
            const Real e = std::exp(-x);
            const Real ome = -std::expm1(-x);
            return cmax * std::exp(-alpha * x) / (std::pow(ome, qi) * std::pow(Real(1) + e, pj));
        };
        return d;
    }

    /// phi family: two-term curly-bracket density times e^{-u}.
    static SplitDensity phi(const StableParams& p, const FactorIndices& idx) {
        SplitDensity d;
        const Real alpha = Real(p.alpha());
        const Real q = Real(idx.q), pp = Real(idx.p);
        const Real qi = Real(idx.q + idx.i), pj = Real(idx.p + idx.j);
        const Real cmax = std::max(qi, pj) - Real(1);
        const Real half_am1 = (alpha - Real(1)) / Real(2);
        d.A = Real(2.5L);
        d.base = Real(1);
        d.sing = qi;
        auto c1 = binom_product_coeffs(qi, pj, kTailTerms);
        auto c2 = binom_product_coeffs(q, pp, kTailTerms);
        d.coef.resize(kTailTerms);
        for (int m = 0; m < kTailTerms; ++m) d.coef[m] = cmax * c1[m] - half_am1 * c2[m];
        d.dens = [qi, pj, q, pp, cmax, half_am1](Real u) {
            const Real e = std::exp(-u);
            const Real ome = -std::expm1(-u);
            const Real ope = Real(1) + e;
            return (cmax / (std::pow(ome, qi) * std::pow(ope, pj)) -
                    half_am1 / (std::pow(ome, q) * std::pow(ope, pp))) *
                   e;
        };
        return d;
    }
};

/// int_0^inf (1 - e^{-sx}) dens(x) dx for Re s > -base.
template <typename Real>
Complex<Real> bernstein_transform(const SplitDensity<Real>& d, const Complex<Real>& s,
                                  const QuadConfig& cfg) {
    if (s == Complex<Real>(0)) return Complex<Real>(0);
    // head: x = A u, singularity x^{1 - sing} after the (1-e^{-sx}) factor
    auto head_f = [&](Real u, Real) -> Complex<Real> {
        const Real x = d.A * u;
        return -cexpm1(-s * x) * d.dens(x) * d.A;
    };
    const Real left = std::min(std::max(d.sing - Real(1), Real(0)), Real(0.999L));
    Complex<Real> head = integrate_01<Real>(head_f, left, Real(0), cfg);
    // tail: closed form per series term
    Complex<Real> tail(0);
    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int m = 0; m < static_cast<int>(d.coef.size()); ++m) {
        const Real c = d.base + Real(m);
        const Complex<Real> cs = c + s;
        const Complex<Real> term =
            d.coef[m] * (std::exp(-c * d.A) / c - std::exp(-cs * d.A) / cs);
        tail += term;
        if (m > 4 && std::abs(term) < eps * (std::abs(tail) + std::abs(head))) break;
    }
    return head + tail;
}

/// int_0^inf x^pow dens(x) dx, pow in {0, 1}; pow = 0 needs sing < 1.
template <typename Real>
Real density_moment(const SplitDensity<Real>& d, int pow, const QuadConfig& cfg) {
    if (pow == 0 && d.sing >= Real(1))
        throw DomainError("density_moment: total mass diverges for this index family");
    auto head_f = [&](Real u, Real) -> Real {
        const Real x = d.A * u;
        return (pow == 1 ? x : Real(1)) * d.dens(x) * d.A;
    };
    const Real left = std::min(std::max(d.sing - Real(pow), Real(0)), Real(0.999L));
    Real head = integrate_01<Real>(head_f, left, Real(0), cfg);
    Real tail(0);
    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int m = 0; m < static_cast<int>(d.coef.size()); ++m) {
        const Real c = d.base + Real(m);
        const Real term = d.coef[m] * std::exp(-c * d.A) *
                          (pow == 1 ? d.A / c + Real(1) / (c * c) : Real(1) / c);
        tail += term;
        if (m > 4 && std::abs(term) < eps * (std::abs(tail) + std::abs(head))) break;
    }
    return head + tail;
}

} // namespace detail

/// kappa_{q+i,p+j}(s) for Re s > -alpha.
template <typename Real>
Complex<Real> kappa_qp(const StableParams& p, const FactorIndices& idx, const Complex<Real>& s,
                       const QuadConfig& cfg = {}) {
    validate_indices(p, idx);
    if (s.real() <= -Real(p.alpha()))
        throw DomainError("kappa_qp: Re s must exceed -alpha");
    const auto d = detail::SplitDensity<Real>::kappa(p, idx);
    return detail::bernstein_transform(d, s, cfg);
}

/// kappa'_{q+i,p+j}(0+) = int x * density dx.
template <typename Real = double>
Real kappa_qp_deriv0(const StableParams& p, const FactorIndices& idx, const QuadConfig& cfg = {}) {
    validate_indices(p, idx);
    const auto d = detail::SplitDensity<Real>::kappa(p, idx);
    return detail::density_moment(d, 1, cfg);
}

/// Total Levy mass kappa_{q+i,p+j}(inf); finite only when i = 0.
template <typename Real = double>
Real kappa_qp_mass(const StableParams& p, const FactorIndices& idx, const QuadConfig& cfg = {}) {
    validate_indices(p, idx);
    const auto d = detail::SplitDensity<Real>::kappa(p, idx);
    return detail::density_moment(d, 0, cfg);
}

/// phi_{q+i,p+j}(s) for Re s > -1.
template <typename Real>
Complex<Real> phi_qp(const StableParams& p, const FactorIndices& idx, const Complex<Real>& s,
                     const QuadConfig& cfg = {}) {
    validate_indices(p, idx);
    if (s.real() <= Real(-1)) throw DomainError("phi_qp: Re s must exceed -1");
    const auto d = detail::SplitDensity<Real>::phi(p, idx);
    return detail::bernstein_transform(d, s, cfg);
}

template <typename Real = double>
Real phi_qp_deriv0(const StableParams& p, const FactorIndices& idx, const QuadConfig& cfg = {}) {
    validate_indices(p, idx);
    const auto d = detail::SplitDensity<Real>::phi(p, idx);
    return detail::density_moment(d, 1, cfg);
}

template <typename Real = double>
Real phi_qp_mass(const StableParams& p, const FactorIndices& idx, const QuadConfig& cfg = {}) {
    validate_indices(p, idx);
    const auto d = detail::SplitDensity<Real>::phi(p, idx);
    return detail::density_moment(d, 0, cfg);
}

/// pi_1 Phi_1(lambda) computed by the un-collapsed double-integral route of
/// Lemma 5.2's proof:
///   lambda alpha rho (sin(pi alpha rho)/pi) *
///   int_0^1 int_0^inf e^{-(lambda+alpha)u} z^{alpha-1}
///           (1+z e^{-u})^{-alpha rho_hat} (1-z e^{-u})^{-(alpha rho + 1)} du dz.
/// Serves as the independent oracle for the closed kappa_{alpha rho + 1, alpha rho_hat} route.
inline double phi1_double_integral_oracle(const StableParams& p, double lambda,
                                          const QuadConfig& cfg = {}) {
    if (lambda <= 0.0) throw DomainError("phi1_double_integral_oracle: lambda must be > 0");
    if (p.alpha() > 1.0) throw DomainError("phi1_double_integral_oracle: alpha must be in (0,1]");
    const double alpha = p.alpha(), ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    QuadConfig inner_cfg = cfg;
    inner_cfg.rel_tol = std::max(cfg.rel_tol * 0.01, 1e-13);
    auto outer = [&](double z, double omz) {
        auto inner = [&](double u) {
            const double ze = z * std::exp(-u);
            return std::exp(-(lambda + alpha) * u) * std::pow(1.0 + ze, -arh) *
                   std::pow(1.0 - ze, -(ar + 1.0));
        };
        // inner integrand is bounded at u = 0 for z < 1 and decays like
        // e^{-(lambda+alpha)u}
        const double val = integrate_0inf(inner, 0.0, lambda + alpha, inner_cfg);
        return std::pow(z, alpha - 1.0) * val;
    };
    const double pi = 3.14159265358979323846264338327950288;
    const double I = integrate_01<double>(outer, std::min(std::max(1.0 - alpha, 0.0), 0.999), ar, cfg);
    return lambda * ar * std::sin(pi * ar) / pi * I;
}

} // namespace stablewh

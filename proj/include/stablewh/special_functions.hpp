#pragma once

// Complex log-gamma, the gamma reflection product and the Gauss
// hypergeometric function at argument -1.  Everything downstream (matrix
// exponents, ladder factors, exit laws) is a ratio of gamma values, so the
// precision of log_gamma bounds the precision of the whole library.

#include <cmath>
#include <complex>
#include <limits>

#include "stablewh/errors.hpp"

namespace stablewh {

template <typename Real>
using Complex = std::complex<Real>;

namespace detail {

// Lanczos coefficients, g = 607/128, 15 terms (Godfrey's set).  Relative
// error of the gamma value is ~1e-15 on the right half plane, which keeps
// log-gamma differences at 13+ significant digits on the working strip.
template <typename Real>
struct LanczosG607 {
    static constexpr Real g = Real(607) / Real(128);
    static constexpr Real c[15] = {
        Real(0.99999999999999709182L),
        Real(57.156235665862923517L),
        Real(-59.597960355475491248L),
        Real(14.136097974741747174L),
        Real(-0.49191381609762019978L),
        Real(0.33994649984811888699e-4L),
        Real(0.46523628927048575665e-4L),
        Real(-0.98374475304879564677e-4L),
        Real(0.15808870322491248884e-3L),
        Real(-0.21026444172410488319e-3L),
        Real(0.21743961811521264320e-3L),
        Real(-0.16431810653676389022e-3L),
        Real(0.84418223983852743293e-4L),
        Real(-0.26190838401581408670e-4L),
        Real(0.36899182659531622704e-5L),
    };
};

template <typename Real>
bool is_nonpositive_integer(const Complex<Real>& z) {
    if (z.imag() != Real(0)) return false;
    const Real r = z.real();
    return r <= Real(0) && r == std::floor(r);
}

// Lanczos sum, valid for Re z >= 1/2.
template <typename Real>
Complex<Real> log_gamma_lanczos(const Complex<Real>& z) {
    using L = LanczosG607<Real>;
    const Complex<Real> zm1 = z - Real(1);
    Complex<Real> x = L::c[0];
    for (int k = 1; k < 15; ++k) x += L::c[k] / (zm1 + Real(k));
    const Complex<Real> t = zm1 + (L::g + Real(0.5L));
    const Real half_log_2pi = Real(0.91893853320467274178032973640562L);
    return (zm1 + Real(0.5L)) * std::log(t) - t + half_log_2pi + std::log(x);
}

} // namespace detail

/// Principal branch of log Gamma(z), analytic on C minus (-inf, 0].
/// Left of Re z = 1/2 the value is reached by the recurrence
/// log Gamma(z) = log Gamma(z+n) - sum_k Log(z+k), which preserves the
/// principal branch (each term is analytic on the cut plane).
template <typename Real>
Complex<Real> log_gamma(Complex<Real> z) {
    if (detail::is_nonpositive_integer(z))
        throw PoleError("log_gamma: pole at non-positive integer");
    if (z.real() >= Real(0.5L)) return detail::log_gamma_lanczos(z);
    const int n = static_cast<int>(std::ceil(Real(0.5L) - z.real()));
    Complex<Real> shift(0);
    for (int k = 0; k < n; ++k) shift += std::log(z + Real(k));
    return detail::log_gamma_lanczos(z + Real(n)) - shift;
}

inline std::complex<double> log_gamma(double x) { return log_gamma(std::complex<double>(x, 0.0)); }

/// Gamma(z) via exp(log_gamma).
template <typename Real>
Complex<Real> gamma_fn(const Complex<Real>& z) {
    return std::exp(log_gamma(z));
}

/// Gamma(z) Gamma(1-z); equals pi/sin(pi z).  Computed through the gamma
/// route so tests can pit it against the sine form.
template <typename Real>
Complex<Real> gamma_reflection(const Complex<Real>& z) {
    if (z.imag() == Real(0) && z.real() == std::floor(z.real()))
        throw PoleError("gamma_reflection: pole at integer");
    return std::exp(log_gamma(z) + log_gamma(Real(1) - z));
}

/// 2F1(a, b; c; -1).  Pfaff transformation maps the argument to 1/2:
///   2F1(a,b;c;-1) = 2^{-a} 2F1(a, c-b; c; 1/2),
/// where the series converges geometrically.
template <typename Real>
Real hyp2f1_neg1(Real a, Real b, Real c) {
    if (c <= Real(0) && c == std::floor(c))
        throw DomainError("hyp2f1_neg1: c is a non-positive integer");
    const Real cb = c - b;
    Real term = Real(1), sum = Real(1);
    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int k = 0; k < 1000; ++k) {
        term *= (a + Real(k)) * (cb + Real(k)) / ((c + Real(k)) * Real(k + 1)) * Real(0.5L);
        sum += term;
        if (std::abs(term) <= eps * std::abs(sum) && k > 3)
            return std::pow(Real(2), -a) * sum;
    }
    throw DomainError("hyp2f1_neg1: series did not converge");
}

} // namespace stablewh

#pragma once

// Closed-form 2x2 matrix exponents of the Lamperti-stable MAP and its
// transformed relatives: F on Re z in (-1, alpha), F_circ and F_hat on
// Re z in (-alpha, 1), their determinant, leading eigenpair, stationary
// distribution and the Esscher transform.

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "stablewh/errors.hpp"
#include "stablewh/special_functions.hpp"
#include "stablewh/stable_params.hpp"

namespace stablewh {

template <typename Real>
using Matrix2c = Eigen::Matrix<std::complex<Real>, 2, 2>;
template <typename Real>
using Vector2r = Eigen::Matrix<Real, 2, 1>;

using Matrix2cd = Eigen::Matrix2cd;

/// Leading (Perron-Frobenius) eigenvalue and its positive right eigenvector,
/// normalised so that pi . v = 1.
struct EigenPair {
    std::complex<double> chi;
    Eigen::Vector2d v;
};

namespace detail {

template <typename Real>
constexpr Real pi_v = Real(3.14159265358979323846264338327950288L);

template <typename Real>
void require_strip(const Complex<Real>& z, Real lo, Real hi, const char* which) {
    if (!(z.real() > lo && z.real() < hi)) {
        throw DomainError(std::string(which) + ": Re z outside the strip (" +
                          std::to_string(static_cast<double>(lo)) + ", " +
                          std::to_string(static_cast<double>(hi)) + ")");
    }
}

/// exp(num - log G(a) - log G(b)), with the convention that a pole of a
/// denominator gamma annihilates the entry.
template <typename Real>
Complex<Real> gamma_ratio(const Complex<Real>& lg_num, const Complex<Real>& a,
                          const Complex<Real>& b) {
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return Complex<Real>(0);
    return std::exp(lg_num - log_gamma(a) - log_gamma(b));
}

} // namespace detail

/// Matrix exponent F(z) of the Lamperti-stable MAP, Re z in (-1, alpha).
template <typename Real>
Matrix2c<Real> map_F(const StableParams& p, const Complex<Real>& z) {
    detail::require_strip(z, Real(-1), Real(p.alpha()), "map_F");
    const Real a = Real(p.alpha()), ar = Real(p.alpha_rho()), arh = Real(p.alpha_rho_hat());
    const Complex<Real> num = log_gamma(a - z) + log_gamma(Real(1) + z);
    Matrix2c<Real> F;
    F(0, 0) = -detail::gamma_ratio(num, arh - z, Real(1) - arh + z);
    F(0, 1) = detail::gamma_ratio(num, Complex<Real>(arh), Complex<Real>(Real(1) - arh));
    F(1, 0) = detail::gamma_ratio(num, Complex<Real>(ar), Complex<Real>(Real(1) - ar));
    F(1, 1) = -detail::gamma_ratio(num, ar - z, Real(1) - ar + z);
    return F;
}

/// Matrix exponent F_circ(z) of the Riesz-Bogdan-Zak transformed process,
/// Re z in (-alpha, 1).
template <typename Real>
Matrix2c<Real> map_F_circ(const StableParams& p, const Complex<Real>& z) {
    detail::require_strip(z, Real(-p.alpha()), Real(1), "map_F_circ");
    const Real a = Real(p.alpha()), ar = Real(p.alpha_rho()), arh = Real(p.alpha_rho_hat());
    const Complex<Real> num = log_gamma(Real(1) - z) + log_gamma(a + z);
    Matrix2c<Real> F;
    F(0, 0) = -detail::gamma_ratio(num, Real(1) - ar - z, ar + z);
    F(0, 1) = detail::gamma_ratio(num, Complex<Real>(ar), Complex<Real>(Real(1) - ar));
    F(1, 0) = detail::gamma_ratio(num, Complex<Real>(arh), Complex<Real>(Real(1) - arh));
    F(1, 1) = -detail::gamma_ratio(num, Real(1) - arh - z, arh + z);
    return F;
}

/// Dual matrix exponent F_hat(z) = Dpi^{-1} F(-z)^T Dpi, Re z in (-alpha, 1),
/// in its own closed gamma form.
template <typename Real>
Matrix2c<Real> map_F_hat(const StableParams& p, const Complex<Real>& z) {
    detail::require_strip(z, Real(-p.alpha()), Real(1), "map_F_hat");
    const Real a = Real(p.alpha()), ar = Real(p.alpha_rho()), arh = Real(p.alpha_rho_hat());
    const Complex<Real> num = log_gamma(a + z) + log_gamma(Real(1) - z);
    Matrix2c<Real> F;
    F(0, 0) = -detail::gamma_ratio(num, arh + z, Real(1) - arh - z);
    F(0, 1) = detail::gamma_ratio(num, Complex<Real>(arh), Complex<Real>(Real(1) - arh));
    F(1, 0) = detail::gamma_ratio(num, Complex<Real>(ar), Complex<Real>(Real(1) - ar));
    F(1, 1) = -detail::gamma_ratio(num, ar + z, Real(1) - ar - z);
    return F;
}

/// det F(z) in closed form: the squared gamma prefactor times the sine bracket.
template <typename Real>
Complex<Real> det_F(const StableParams& p, const Complex<Real>& z) {
    detail::require_strip(z, Real(-1), Real(p.alpha()), "det_F");
    const Real a = Real(p.alpha()), ar = Real(p.alpha_rho()), arh = Real(p.alpha_rho_hat());
    const Real pi = detail::pi_v<Real>;
    const Complex<Real> pref =
        std::exp(Real(2) * (log_gamma(a - z) + log_gamma(Real(1) + z))) / (pi * pi);
    const Complex<Real> bracket = std::sin(pi * (ar - z)) * std::sin(pi * (arh - z)) -
                                  Complex<Real>(std::sin(pi * ar) * std::sin(pi * arh));
    return pref * bracket;
}

/// Gamma-squared prefactor of det F, used to scale the determinant-root check.
template <typename Real>
Complex<Real> det_F_prefactor(const StableParams& p, const Complex<Real>& z) {
    const Real pi = detail::pi_v<Real>;
    return std::exp(Real(2) * (log_gamma(Real(p.alpha()) - z) + log_gamma(Real(1) + z))) /
           (pi * pi);
}

/// Stationary distribution pi of the modulating chain:
/// proportional to (sin(pi alpha rho), sin(pi alpha rho_hat)), summing to 1.
inline Eigen::Vector2d stationary_pi(const StableParams& p) {
    const double pi = 3.14159265358979323846264338327950288;
    Eigen::Vector2d v(std::sin(pi * p.alpha_rho()), std::sin(pi * p.alpha_rho_hat()));
    return v / v.sum();
}

/// Leading eigenpair of F(z) at real z in (-1, alpha): the eigenvalue with
/// larger real part and the positive right eigenvector with pi . v = 1.
/// Solves the 2x2 quadratic analytically.
inline EigenPair leading_eig(const StableParams& p, double z) {
    const Matrix2cd F = map_F<double>(p, std::complex<double>(z, 0.0));
    const double a = F(0, 0).real(), b = F(0, 1).real();
    const double c = F(1, 0).real(), d = F(1, 1).real();
    const double half_tr = 0.5 * (a + d);
    const double disc = 0.25 * (a - d) * (a - d) + b * c; // >= 0: b, c > 0
    const double root = std::sqrt(std::max(disc, 0.0));
    const double chi_plus = half_tr + root, chi_minus = half_tr - root;
    const double scale = std::max(std::abs(chi_plus), std::abs(chi_minus));
    if (2.0 * root <= 1e-12 * std::max(scale, 1e-300))
        throw DegenerateError("leading_eig: eigenvalues coincide");
    Eigen::Vector2d v(b, chi_plus - a);
    if (!(v(0) > 0.0 && v(1) > 0.0))
        throw DegenerateError("leading_eig: eigenvector not strictly positive");
    v /= stationary_pi(p).dot(v);
    return {std::complex<double>(chi_plus, 0.0), v};
}

/// Esscher transform F_gamma(z) = Dv(gamma)^{-1} F(z+gamma) Dv(gamma) - chi(gamma) I
/// for real gamma with both gamma and z + gamma in the strip of F.
template <typename Real>
Matrix2c<Real> esscher(const StableParams& p, const Complex<Real>& z, double gamma) {
    detail::require_strip(Complex<Real>(Real(gamma)), Real(-1), Real(p.alpha()), "esscher(gamma)");
    detail::require_strip(z + Real(gamma), Real(-1), Real(p.alpha()), "esscher(z+gamma)");
    const EigenPair eig = leading_eig(p, gamma);
    const Matrix2c<Real> F = map_F(p, z + Real(gamma));
    Matrix2c<Real> out;
    const Real v0 = Real(eig.v(0)), v1 = Real(eig.v(1));
    out(0, 0) = F(0, 0) - Complex<Real>(Real(eig.chi.real()));
    out(1, 1) = F(1, 1) - Complex<Real>(Real(eig.chi.real()));
    out(0, 1) = F(0, 1) * (v1 / v0);
    out(1, 0) = F(1, 0) * (v0 / v1);
    return out;
}

} // namespace stablewh

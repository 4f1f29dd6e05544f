#pragma once

// Closed-form exit and entrance densities of the stable process and the
// Cramer-type constants/limit laws, plus the two hypergeometric identities
// behind them.  Densities are exposed per stated variable (theta for
// overshoots, y for entrance positions, u for log-overshoots); no hidden
// change of variables.

#include <utility>

#include "stablewh/quadrature.hpp"
#include "stablewh/stable_params.hpp"

namespace stablewh {

enum class RogozinForm {
    unit_interval, // exit of (0,1) upward, start x in (0,1)
    symmetric      // exit of (-1,1) upward, start x in (-1,1)
};

/// Rogozin two-sided exit density: the law of the overshoot X_{tau+} - barrier
/// at first upward exit, with the event {up exit first} included (so the
/// total theta-mass is the up-exit probability).
double rogozin_density(const StableParams& p, double x, double theta, RogozinForm form);

/// P(exit upward first) = integral of rogozin_density over theta in (0, inf).
double rogozin_up_mass(const StableParams& p, double x, RogozinForm form,
                       const QuadConfig& cfg = {});

/// CDF of the overshoot conditional on upward exit, for Kolmogorov-Smirnov
/// comparisons (evaluated by quadrature).
double rogozin_conditional_cdf(const StableParams& p, double x, RogozinForm form, double theta,
                               const QuadConfig& cfg = {});

/// Entrance density of the dual process into (-1,1) from x > 1 (alpha in (1,2)):
/// the two-term KPW form with the integral int_1^x (t-1)^{alpha rho - 1} (t+1)^{alpha rho_hat - 1} dt.
double kpw_interval_density(const StableParams& p, double x, double y, const QuadConfig& cfg = {});

/// Limiting entrance density from +-infinity:
///   c(alpha) (1+y)^{-alpha rho_hat} (1-y)^{-alpha rho},
///   c(alpha) = 2^{alpha-1} Gamma(2-alpha) / (Gamma(1-alpha rho_hat) Gamma(1-alpha rho)).
double p_hat_inf(const StableParams& p, double y);

/// The normalising constant c(alpha) above.
double c_alpha(const StableParams& p);

/// beta_hat(theta) = alpha rho (1-theta)^{-alpha rho - 1} (1+theta)^{-alpha rho_hat}
///                 - ((alpha-1)/2) (1-theta)^{-alpha rho} (1+theta)^{-alpha rho_hat}.
double beta_hat(const StableParams& p, double theta);

enum class CramerRegime {
    big_alpha,       // ascending chain, Theorem-9.1-type constant (alpha in (1,2))
    small_alpha_dual // dual chain, Theorem-9.4-type constant (alpha in (0,1))
};

/// Cramer first-passage constant lim e^{rate a} P_{0,i}(T_a < inf).  In the
/// unkilled complement of each regime (alpha <= 1 ascending, alpha >= 1 dual)
/// passage is certain and the value degenerates to 1.
double cramer_constant(const StableParams& p, int state, CramerRegime regime);

/// Limiting conditional overshoot density at (u, j): the joint limit law of
/// (H+(T_a) - a, J+(T_a)) given T_a < inf; integrates to 1 over u > 0 summed
/// over j in {1,2}.
double cramer_overshoot_density(const StableParams& p, double u, int state, CramerRegime regime);

/// Mass of one j-branch of the limiting overshoot law.
double cramer_branch_mass(const StableParams& p, int state, CramerRegime regime,
                          const QuadConfig& cfg = {});

/// CDF of the u-marginal (branches summed) of the limiting overshoot law.
double cramer_overshoot_cdf(const StableParams& p, double u, CramerRegime regime,
                            const QuadConfig& cfg = {});

/// Polynomial escape asymptotics of Corollary-9.2 type (alpha in (1,2)):
/// lim_{x->0} s(x) x^{1-alpha} P_x(exit (-1,1) before hitting 0) = limit,
/// with the side weight s(x) exposed separately.
struct EscapeAsymptote {
    double limit;
    double weight; // s(x) = sin(pi alpha rho)/pi if x > 0, sin(pi alpha rho_hat)/pi if x < 0
};
EscapeAsymptote escape_asymptote(const StableParams& p, double x);

/// First-passage density above 1 avoiding the origin (alpha in (1,2), x in (0,1),
/// theta > 0): Rogozin symmetric-form leading term minus the origin-hitting
/// correction.
double first_passage_density_origin(const StableParams& p, double x, double theta,
                                    const QuadConfig& cfg = {});

enum class IdentityRegime { big_alpha, small_alpha };

/// The two "remarkable" hypergeometric identities: returns (lhs, rhs), where
/// big_alpha: sin(pi a rho) I1 + sin(pi a rho_hat) I2 = pi over beta-type
/// integrals on (0,1); small_alpha: the weighted pair of exponential
/// integrals against 2^{1-alpha} pi / (Gamma(a rho) Gamma(a rho_hat) Gamma(2-alpha)).
std::pair<double, double> hypergeometric_identity_check(const StableParams& p,
                                                        IdentityRegime which,
                                                        const QuadConfig& cfg = {});

/// int_1^x (t-1)^{alpha rho - 1} (t+1)^{alpha rho_hat - 1} dt (left endpoint
/// singularity handled by quadrature); used by the KPW-type densities.
double kpw_tail_integral(const StableParams& p, double x, const QuadConfig& cfg = {});

} // namespace stablewh

#pragma once

// Admissible (alpha, rho) parameter pairs and the scalar (Levy-level)
// characteristic exponent and Wiener-Hopf factors of the stable process.

#include <complex>
#include <utility>

#include "stablewh/errors.hpp"

namespace stablewh {

/// Validated stable-process parameters.  The process is parametrised by the
/// stability index alpha in (0,2) and the positivity parameter
/// rho = P(X_t >= 0); everything else (skewness, scale, the two-sided Levy
/// density constants) is a derived view.
class StableParams {
  public:
    /// Validates and constructs; throws InadmissibleError outside the set
    /// { alpha in (0,2), rho in (1-1/alpha, 1/alpha), rho = 1/2 if alpha = 1 }
    /// with the one-sided cases alpha*rho in {0,1}, alpha*rho_hat in {0,1}
    /// excluded.  Boundaries are enforced strictly with 1e-9 slack rejected.
    static StableParams validate(double alpha, double rho);

    double alpha() const { return alpha_; }
    double rho() const { return rho_; }
    double rho_hat() const { return 1.0 - rho_; }
    double alpha_rho() const { return alpha_ * rho_; }
    double alpha_rho_hat() const { return alpha_ * (1.0 - rho_); }

    /// Same parameters with the roles of rho and rho_hat interchanged
    /// (the law of -X).
    StableParams mirrored() const { return StableParams(alpha_, 1.0 - rho_); }

  private:
    StableParams(double alpha, double rho) : alpha_(alpha), rho_(rho) {}
    double alpha_;
    double rho_;
};

/// Characteristic exponent
///   Psi(theta) = |theta|^alpha ( e^{ pi i alpha (1/2 - rho)} 1_{theta>0}
///              + e^{-pi i alpha (1/2 - rho)} 1_{theta<0} ),  Psi(0) = 0.
std::complex<double> char_exponent(const StableParams& p, double theta);

/// Ladder exponents of the stable process itself:
///   kappa(lambda) = lambda^{alpha rho},  kappa_hat(lambda) = lambda^{alpha rho_hat}.
std::pair<double, double> levy_wh_factors(const StableParams& p, double lambda);

} // namespace stablewh

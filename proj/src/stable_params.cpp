#include "stablewh/stable_params.hpp"

#include <cmath>
#include <sstream>

namespace stablewh {

namespace {
constexpr double kBoundaryTol = 1e-9;
constexpr double kPi = 3.14159265358979323846264338327950288;
} // namespace

StableParams StableParams::validate(double alpha, double rho) {
    std::ostringstream why;
    if (!(std::isfinite(alpha) && std::isfinite(rho))) {
        throw InadmissibleError("StableParams: non-finite parameters");
    }
    if (alpha <= kBoundaryTol || alpha >= 2.0 - kBoundaryTol) {
        why << "alpha = " << alpha << " outside (0, 2)";
        throw InadmissibleError(why.str());
    }
    const double lo = 1.0 - 1.0 / alpha, hi = 1.0 / alpha;
    if (rho <= lo + kBoundaryTol || rho >= hi - kBoundaryTol) {
        why << "rho = " << rho << " outside the admissible interval (" << lo << ", " << hi
            << ") for alpha = " << alpha;
        throw InadmissibleError(why.str());
    }
    if (std::abs(alpha - 1.0) < kBoundaryTol && std::abs(rho - 0.5) > kBoundaryTol) {
        why << "alpha = 1 requires rho = 1/2 (got rho = " << rho << ")";
        throw InadmissibleError(why.str());
    }
    // One-sided / monotone-path exclusions: alpha*rho and alpha*rho_hat in (0,1).
    for (double q : {alpha * rho, alpha * (1.0 - rho)}) {
        if (q <= kBoundaryTol || q >= 1.0 - kBoundaryTol) {
            why << "alpha*rho or alpha*rho_hat = " << q << " outside (0, 1): one-sided case excluded";
            throw InadmissibleError(why.str());
        }
    }
    return StableParams(alpha, rho);
}

std::complex<double> char_exponent(const StableParams& p, double theta) {
    if (theta == 0.0) return {0.0, 0.0};
    const double mag = std::pow(std::abs(theta), p.alpha());
    const double phase = kPi * p.alpha() * (0.5 - p.rho()) * (theta > 0 ? 1.0 : -1.0);
    return std::polar(mag, phase);
}

std::pair<double, double> levy_wh_factors(const StableParams& p, double lambda) {
    if (lambda < 0.0) throw DomainError("levy_wh_factors: lambda must be >= 0");
    return {std::pow(lambda, p.alpha_rho()), std::pow(lambda, p.alpha_rho_hat())};
}

} // namespace stablewh

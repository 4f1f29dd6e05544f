#include "stablewh/exit_laws.hpp"

#include <cmath>

#include "stablewh/errors.hpp"
#include "stablewh/special_functions.hpp"

namespace stablewh {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

double real_gamma(double x) { return std::exp(log_gamma(std::complex<double>(x, 0)).real()); }
} // namespace

double rogozin_density(const StableParams& p, double x, double theta, RogozinForm form) {
    const double ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    if (theta < 0.0) throw DomainError("rogozin_density: theta must be >= 0");
    const double pref = std::sin(kPi * ar) / kPi;
    if (form == RogozinForm::unit_interval) {
        if (!(x > 0.0 && x < 1.0)) throw DomainError("rogozin_density: x must be in (0,1)");
        return pref * std::pow(1.0 - x, ar) * std::pow(x, arh) * std::pow(theta, -ar) *
               std::pow(theta + 1.0, -arh) / (theta + 1.0 - x);
    }
    if (!(x > -1.0 && x < 1.0)) throw DomainError("rogozin_density: x must be in (-1,1)");
    return pref * std::pow(1.0 - x, ar) * std::pow(1.0 + x, arh) * std::pow(theta, -ar) *
           std::pow(theta + 2.0, -arh) / (theta + 1.0 - x);
}

// In v = 1/(1+theta) the symmetric-form density becomes
//   pref (1-x)^{ar} (1+x)^{arh} v^{alpha-1} (1-v)^{-ar} (1+v)^{-arh} / (1 - x v),
// integrable with endpoint exponents 1-alpha (v=0) and ar (v=1); the
// unit-interval form is analogous with (1+v) -> 1 and (1 - x v).
namespace {
double rogozin_mass_v(const StableParams& p, double x, RogozinForm form, double v_lo,
                      const QuadConfig& cfg) {
    const double a = p.alpha(), ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    const double pref = std::sin(kPi * ar) / kPi;
    auto dens_v = [&](double v, double omv) {
        if (form == RogozinForm::symmetric) {
            return pref * std::pow(1.0 - x, ar) * std::pow(1.0 + x, arh) * std::pow(v, a - 1.0) *
                   std::pow(omv, -ar) * std::pow(1.0 + v, -arh) / (1.0 - x * v);
        }
        return pref * std::pow(1.0 - x, ar) * std::pow(x, arh) * std::pow(v, a - 1.0) *
               std::pow(omv, -ar) / (1.0 - x * v);
    };
    // integrate over (v_lo, 1)
    const double width = 1.0 - v_lo;
    auto f = [&](double u, double omu) {
        const double v = v_lo + width * u;
        const double omv = width * omu; // 1 - v, exact near v = 1
        return dens_v(v, omv) * width;
    };
    return integrate_01<double>(f, std::min(std::max(1.0 - a, 0.0), 0.999), ar, cfg);
}
} // namespace

double rogozin_up_mass(const StableParams& p, double x, RogozinForm form, const QuadConfig& cfg) {
    return rogozin_mass_v(p, x, form, 0.0, cfg);
}

double rogozin_conditional_cdf(const StableParams& p, double x, RogozinForm form, double theta,
                               const QuadConfig& cfg) {
    if (theta <= 0.0) return 0.0;
    const double total = rogozin_up_mass(p, x, form, cfg);
    const double tail = rogozin_mass_v(p, x, form, 0.0, cfg) -
                        rogozin_mass_v(p, x, form, 1.0 / (1.0 + theta), cfg);
    return std::min(std::max(tail / total, 0.0), 1.0);
}

double kpw_tail_integral(const StableParams& p, double x, const QuadConfig& cfg) {
    if (x <= 1.0) return 0.0;
    const double ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    const double w = x - 1.0;
    auto f = [&](double v, double) {
        return std::pow(v, ar - 1.0) * std::pow(2.0 + w * v, arh - 1.0);
    };
    return std::pow(w, ar) * integrate_01<double>(f, 1.0 - ar, 0.0, cfg);
}

double kpw_interval_density(const StableParams& p, double x, double y, const QuadConfig& cfg) {
    if (p.alpha() <= 1.0) throw DomainError("kpw_interval_density: alpha must be in (1,2)");
    if (!(x > 1.0)) throw DomainError("kpw_interval_density: x must be > 1");
    if (!(y > -1.0 && y < 1.0)) throw DomainError("kpw_interval_density: y must be in (-1,1)");
    const double a = p.alpha(), ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    const double pref = std::sin(kPi * ar) / kPi;
    const double shape = std::pow(1.0 + y, -arh) * std::pow(1.0 - y, -ar);
    const double direct =
        std::pow(x + 1.0, arh) * std::pow(x - 1.0, ar) / (x - y);
    return pref * shape * (direct - (a - 1.0) * kpw_tail_integral(p, x, cfg));
}

double c_alpha(const StableParams& p) {
    const double a = p.alpha();
    if (a <= 1.0) throw DomainError("c_alpha: alpha must be in (1,2)");
    return std::pow(2.0, a - 1.0) * real_gamma(2.0 - a) /
           (real_gamma(1.0 - p.alpha_rho_hat()) * real_gamma(1.0 - p.alpha_rho()));
}

double p_hat_inf(const StableParams& p, double y) {
    if (!(y > -1.0 && y < 1.0)) throw DomainError("p_hat_inf: y must be in (-1,1)");
    return c_alpha(p) * std::pow(1.0 + y, -p.alpha_rho_hat()) * std::pow(1.0 - y, -p.alpha_rho());
}

double beta_hat(const StableParams& p, double theta) {
    if (p.alpha() <= 1.0) throw DomainError("beta_hat: alpha must be in (1,2)");
    if (!(theta > -1.0 && theta < 1.0)) throw DomainError("beta_hat: theta must be in (-1,1)");
    const double a = p.alpha(), ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    return ar * std::pow(1.0 - theta, -ar - 1.0) * std::pow(1.0 + theta, -arh) -
           0.5 * (a - 1.0) * std::pow(1.0 - theta, -ar) * std::pow(1.0 + theta, -arh);
}

double cramer_constant(const StableParams& p, int state, CramerRegime regime) {
    if (state != 1 && state != 2) throw DomainError("cramer_constant: state must be 1 or 2");
    const double a = p.alpha(), ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    const double sine = (state == 1) ? std::sin(kPi * ar) : std::sin(kPi * arh);
    if (regime == CramerRegime::big_alpha) {
        if (a <= 1.0) return 1.0; // unkilled ascending ladder: passage certain
        return c_alpha(p) * kPi / sine;
    }
    if (a >= 1.0) return 1.0; // unkilled dual ladder
    return std::pow(2.0, 1.0 - a) / (real_gamma(ar) * real_gamma(arh) * real_gamma(2.0 - a)) *
           kPi / sine;
}

double cramer_overshoot_density(const StableParams& p, double u, int state, CramerRegime regime) {
    if (state != 1 && state != 2) throw DomainError("cramer_overshoot_density: state must be 1 or 2");
    if (u <= 0.0) return 0.0;
    const double a = p.alpha(), ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    const double e = std::exp(-u), ome = -std::expm1(-u), ope = 1.0 + e;
    // exponents on (1+e^{-u}) and (1-e^{-u}) per branch
    const double c_plus = (state == 1) ? arh : ar;
    const double c_minus = (state == 1) ? ar : arh;
    if (regime == CramerRegime::big_alpha) {
        const double sine = (state == 1) ? std::sin(kPi * ar) : std::sin(kPi * arh);
        return sine / kPi * std::exp(-a * u) * std::pow(ope, -c_plus) * std::pow(ome, -c_minus);
    }
    // dual law: prefactor c(alpha)-style for all alpha in (0,2), decay e^{-u},
    // branch exponents swapped relative to the ascending law
    const double pref = std::pow(2.0, a - 1.0) * real_gamma(2.0 - a) /
                        (real_gamma(1.0 - arh) * real_gamma(1.0 - ar));
    return pref * e * std::pow(ope, -c_minus) * std::pow(ome, -c_plus);
}

namespace {
// mass of one branch over u > 0, substituting t = e^{-u}:
//   big:   sine/pi int_0^1 t^{alpha-1} (1+t)^{-c_plus} (1-t)^{-c_minus} dt
//   small: pref    int_0^1 (1+t)^{-c_minus} (1-t)^{-c_plus} dt
double branch_mass_from(const StableParams& p, int state, CramerRegime regime, double t_lo,
                        const QuadConfig& cfg) {
    const double a = p.alpha(), ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    const double c_plus = (state == 1) ? arh : ar;
    const double c_minus = (state == 1) ? ar : arh;
    const double width = 1.0 - t_lo;
    if (regime == CramerRegime::big_alpha) {
        const double sine = (state == 1) ? std::sin(kPi * ar) : std::sin(kPi * arh);
        auto f = [&](double u, double omu) {
            const double t = t_lo + width * u;
            const double omt = width * omu;
            return std::pow(t, a - 1.0) * std::pow(1.0 + t, -c_plus) * std::pow(omt, -c_minus) *
                   width;
        };
        return sine / kPi *
               integrate_01<double>(f, std::min(std::max(1.0 - a, 0.0), 0.999), c_minus, cfg);
    }
    const double pref = std::pow(2.0, a - 1.0) * real_gamma(2.0 - a) /
                        (real_gamma(1.0 - arh) * real_gamma(1.0 - ar));
    auto f = [&](double u, double omu) {
        const double t = t_lo + width * u;
        const double omt = width * omu;
        return std::pow(1.0 + t, -c_minus) * std::pow(omt, -c_plus) * width;
    };
    return pref * integrate_01<double>(f, 0.0, c_plus, cfg);
}
} // namespace

double cramer_branch_mass(const StableParams& p, int state, CramerRegime regime,
                          const QuadConfig& cfg) {
    return branch_mass_from(p, state, regime, 0.0, cfg);
}

double cramer_overshoot_cdf(const StableParams& p, double u, CramerRegime regime,
                            const QuadConfig& cfg) {
    if (u <= 0.0) return 0.0;
    const double t = std::exp(-u);
    double acc = 0.0;
    for (int j : {1, 2})
        acc += branch_mass_from(p, j, regime, t, cfg);
    return std::min(acc, 1.0);
}

EscapeAsymptote escape_asymptote(const StableParams& p, double x) {
    if (p.alpha() <= 1.0) throw RegimeError("escape_asymptote: alpha must be in (1,2)");
    if (x == 0.0) throw DomainError("escape_asymptote: x must be nonzero");
    const double weight =
        (x > 0.0 ? std::sin(kPi * p.alpha_rho()) : std::sin(kPi * p.alpha_rho_hat())) / kPi;
    return {c_alpha(p), weight};
}

double first_passage_density_origin(const StableParams& p, double x, double theta,
                                    const QuadConfig& cfg) {
    if (p.alpha() <= 1.0)
        throw DomainError("first_passage_density_origin: alpha must be in (1,2)");
    if (!(x > 0.0 && x < 1.0)) throw DomainError("first_passage_density_origin: x must be in (0,1)");
    if (!(theta > 0.0)) throw DomainError("first_passage_density_origin: theta must be > 0");
    const double a = p.alpha(), ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    const double pref = std::sin(kPi * ar) / kPi;
    const double lead = rogozin_density(p, x, theta, RogozinForm::symmetric);
    const double correction = (a - 1.0) * pref * std::pow(2.0 + theta, -arh) *
                              std::pow(theta, -ar) / (1.0 + theta) * std::pow(x, a - 1.0) *
                              kpw_tail_integral(p, 1.0 / x, cfg);
    return lead - correction;
}

std::pair<double, double> hypergeometric_identity_check(const StableParams& p,
                                                        IdentityRegime which,
                                                        const QuadConfig& cfg) {
    const double a = p.alpha(), ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    if (which == IdentityRegime::big_alpha) {
        if (a <= 1.0) throw RegimeError("hypergeometric_identity_check: need alpha in (1,2)");
        auto f1 = [&](double y, double omy) {
            return std::pow(y, a - 1.0) * std::pow(1.0 + y, -arh) * std::pow(omy, -ar);
        };
        auto f2 = [&](double y, double omy) {
            return std::pow(y, a - 1.0) * std::pow(omy, -arh) * std::pow(1.0 + y, -ar);
        };
        const double I1 = integrate_01<double>(f1, 0.0, ar, cfg);
        const double I2 = integrate_01<double>(f2, 0.0, arh, cfg);
        return {std::sin(kPi * ar) * I1 + std::sin(kPi * arh) * I2, kPi};
    }
    if (a >= 1.0) throw RegimeError("hypergeometric_identity_check: need alpha in (0,1)");
    // J = int_0^inf e^{(a-1)u} (e^u - 1)^{-b}(e^u + 1)^{-c} du
    //   = int_0^1 (1-v)^{-b} (1+v)^{-c} dv after v = e^{-u}
    auto J = [&](double b, double c) {
        auto f = [&](double v, double omv) { return std::pow(omv, -b) * std::pow(1.0 + v, -c); };
        return integrate_01<double>(f, 0.0, b, cfg);
    };
    const double lhs = std::sin(kPi * ar) * std::sin(kPi * arh) / kPi * (J(arh, ar) + J(ar, arh));
    const double rhs =
        std::pow(2.0, 1.0 - a) * kPi / (real_gamma(ar) * real_gamma(arh) * real_gamma(2.0 - a));
    return {lhs, rhs};
}

} // namespace stablewh

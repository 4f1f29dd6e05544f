#include "stablewh/wiener_hopf.hpp"

namespace stablewh {

FactorReport verify_factorisation(const StableParams& p, const std::vector<double>& theta_grid,
                                  const QuadConfig& cfg) {
    if (theta_grid.empty()) throw DomainError("verify_factorisation: empty theta grid");
    if (theta_grid.front() == 0.0)
        throw DomainError("verify_factorisation: fit point theta_0 must be nonzero");

    using Real = long double;
    using C = std::complex<Real>;
    QuadConfig tight = cfg;
    tight.rel_tol = std::min(cfg.rel_tol, 1e-13);
    tight.abs_tol = std::min(cfg.abs_tol, 1e-16);
    tight.max_levels = std::max(cfg.max_levels, 11);

    const LadderFactor<Real> asc(p, LadderKind::ascending, tight);
    const LadderFactor<Real> dual(p, LadderKind::dual_ascending, tight);
    const Eigen::Vector2d pi_stat = stationary_pi(p);
    const Real pi0 = Real(pi_stat(0)), pi1 = Real(pi_stat(1));

    FactorReport report;
    report.theta_grid = theta_grid;
    C cstar(0);
    for (double theta : theta_grid) {
        const Matrix2c<Real> L = -map_F<Real>(p, C(Real(0), Real(theta)));
        const Matrix2c<Real> kh = dual(C(Real(0), Real(theta)));
        const Matrix2c<Real> ka = asc(C(Real(0), Real(-theta)));
        // R = Dpi^{-1} kh^T Dpi ka
        Matrix2c<Real> sand;
        sand(0, 0) = kh(0, 0);
        sand(0, 1) = kh(1, 0) * (pi1 / pi0);
        sand(1, 0) = kh(0, 1) * (pi0 / pi1);
        sand(1, 1) = kh(1, 1);
        const Matrix2c<Real> R = sand * ka;
        if (cstar == C(0)) cstar = L(0, 0) / R(0, 0);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const Real res =
                    std::abs(L(i, j) - cstar * R(i, j)) / std::abs(L(i, j));
                report.max_rel_residual =
                    std::max(report.max_rel_residual, static_cast<double>(res));
            }
    }
    report.fitted_constant = {static_cast<double>(cstar.real()),
                              static_cast<double>(cstar.imag())};
    return report;
}

} // namespace stablewh

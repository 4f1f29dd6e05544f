#include "doctest.h"

#include <cmath>
#include <complex>

#include "stablewh/quadrature.hpp"
#include "stablewh/special_functions.hpp"

using namespace stablewh;
using cplx = std::complex<double>;

TEST_CASE("integrate_01 constants and singular power") {
    auto one = [](double, double) { return 1.0; };
    CHECK(integrate_01<double>(one, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    auto inv_sqrt = [](double u, double) { return 1.0 / std::sqrt(u); };
    CHECK(integrate_01<double>(inv_sqrt, 0.5, 0.0) == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("integrate_01 beta integral vs log_gamma oracle") {
    const double alpha = 0.8, rho = 0.5;
    const double ar = alpha * rho;
    auto f = [&](double u, double omu) {
        return std::pow(omu, -ar) * std::pow(u, alpha - 1.0);
    };
    const double got = integrate_01<double>(f, 1.0 - alpha, ar);
    const double want = std::exp((log_gamma(cplx(alpha)) + log_gamma(cplx(1.0 - ar)) -
                                  log_gamma(cplx(alpha + 1.0 - ar)))
                                     .real());
    CHECK(got == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("integrate_0inf exponential moments") {
    auto e = [](double x) { return std::exp(-x); };
    CHECK(integrate_0inf<double>(e, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-11));
    auto xe = [](double x) { return x * std::exp(-x); };
    CHECK(integrate_0inf<double>(xe, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("change of variables consistency") {
    // f on (0,inf) vs its u = e^{-x} pullback integrated on (0,1)
    const double alpha = 0.8, ar = 0.4, arh = 0.4;
    auto f = [&](double x) {
        return std::exp(-alpha * x) * std::pow(-std::expm1(-x), -ar) *
               std::pow(1.0 + std::exp(-x), -arh);
    };
    const double direct = integrate_0inf<double>(f, ar, alpha);
    auto pulled = [&](double u, double omu) {
        return std::pow(u, alpha - 1.0) * std::pow(omu, -ar) * std::pow(1.0 + u, -arh);
    };
    const double via01 = integrate_01<double>(pulled, 1.0 - alpha, ar);
    CHECK(direct == doctest::Approx(via01).epsilon(1e-9));
}

TEST_CASE("linearity") {
    auto f = [](double u, double) { return u; };
    auto g = [](double u, double) { return u * u; };
    auto combo = [&](double u, double omu) { return 3.0 * f(u, omu) - 2.0 * g(u, omu); };
    const double lhs = integrate_01<double>(combo, 0.0, 0.0);
    const double rhs =
        3.0 * integrate_01<double>(f, 0.0, 0.0) - 2.0 * integrate_01<double>(g, 0.0, 0.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("complex integrand equals separate real passes") {
    auto fc = [](double u, double omu) {
        return cplx(std::pow(u, 0.3), std::pow(omu, -0.25));
    };
    auto fr = [](double u, double) { return std::pow(u, 0.3); };
    auto fi = [](double, double omu) { return std::pow(omu, -0.25); };
    const cplx both = integrate_01<double>(fc, 0.0, 0.25);
    CHECK(both.real() == doctest::Approx(integrate_01<double>(fr, 0.0, 0.0)).epsilon(1e-11));
    CHECK(both.imag() == doctest::Approx(integrate_01<double>(fi, 0.0, 0.25)).epsilon(1e-11));
}

TEST_CASE("diverging declared exponent rejected") {
    auto f = [](double u, double) { return 1.0 / u; };
    CHECK_THROWS_AS((void)integrate_01<double>(f, 1.0, 0.0), DomainError);
}

TEST_CASE("unreachable tolerance raises NoConvergence") {
    QuadConfig cfg;
    cfg.rel_tol = 1e-30;
    cfg.abs_tol = 1e-320;
    auto f = [](double u, double omu) { return std::pow(u, -0.4) * std::pow(omu, -0.6); };
    CHECK_THROWS_AS((void)integrate_01<double>(f, 0.4, 0.6, cfg), NoConvergence);
}

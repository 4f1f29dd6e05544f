#include "doctest.h"

#include <cmath>
#include <complex>

#include "stablewh/stable_params.hpp"

using namespace stablewh;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

TEST_CASE("admissibility") {
    CHECK_NOTHROW((void)StableParams::validate(1.0, 0.5));
    CHECK_NOTHROW((void)StableParams::validate(0.5, 0.9));
    CHECK_NOTHROW((void)StableParams::validate(1.8, 0.5));
    CHECK_THROWS_AS((void)StableParams::validate(1.5, 0.9), InadmissibleError);
    CHECK_THROWS_AS((void)StableParams::validate(0.5, 1.0), InadmissibleError); // subordinator
    CHECK_THROWS_AS((void)StableParams::validate(1.0, 0.6), InadmissibleError);
    CHECK_THROWS_AS((void)StableParams::validate(2.0, 0.5), InadmissibleError);
    CHECK_THROWS_AS((void)StableParams::validate(0.0, 0.5), InadmissibleError);
    // boundary slack: values within 1e-9 of a boundary rejected
    CHECK_THROWS_AS((void)StableParams::validate(1.5, 2.0 / 3.0 - 1e-10), InadmissibleError);
}

TEST_CASE("char exponent examples") {
    const auto cauchy = StableParams::validate(1.0, 0.5);
    CHECK(char_exponent(cauchy, 2.0).real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(char_exponent(cauchy, 2.0).imag()) < 1e-14);
    CHECK(std::abs(char_exponent(cauchy, 0.0)) == 0.0);

    const auto p = StableParams::validate(0.5, 0.7);
    const cplx want = std::polar(1.0, -0.1 * kPi);
    CHECK(std::abs(char_exponent(p, 1.0) - want) < 1e-14);
}

TEST_CASE("char exponent invariants") {
    const auto p = StableParams::validate(1.3, 0.6);
    for (double th : {0.3, 1.0, 4.7}) {
        CHECK(std::abs(char_exponent(p, -th) - std::conj(char_exponent(p, th))) < 1e-13);
        CHECK(std::abs(char_exponent(p, th)) ==
              doctest::Approx(std::pow(th, p.alpha())).epsilon(1e-13));
    }
    const auto sym = StableParams::validate(1.4, 0.5);
    for (double th : {0.5, 2.0}) {
        CHECK(std::abs(char_exponent(sym, th).imag()) < 1e-13);
        CHECK(std::abs(char_exponent(sym, th) - char_exponent(sym, -th)) < 1e-13);
    }
}

TEST_CASE("scalar Wiener-Hopf factors") {
    const auto p = StableParams::validate(0.8, 0.6);
    auto [k0, kh0] = levy_wh_factors(p, 0.0);
    CHECK(k0 == 0.0);
    CHECK(kh0 == 0.0);
    auto [k1, kh1] = levy_wh_factors(p, 1.0);
    CHECK(k1 == 1.0);
    CHECK(kh1 == 1.0);

    // kappa_hat(i theta) kappa(-i theta) = Psi(theta), principal branch powers
    for (double th : {1.0, -1.0}) {
        const cplx i_th(0.0, th);
        const cplx lhs = std::pow(i_th, p.alpha_rho_hat()) * std::pow(-i_th, p.alpha_rho());
        const cplx rhs = char_exponent(p, th);
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-12);
    }
}

TEST_CASE("mirrored params swap rho") {
    const auto p = StableParams::validate(1.3, 0.6);
    const auto m = p.mirrored();
    CHECK(m.rho() == doctest::Approx(0.4));
    CHECK(m.alpha() == p.alpha());
}

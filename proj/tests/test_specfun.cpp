#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "vlcsec/specfun.hpp"

using namespace vlcsec::specfun;

namespace {
double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}
} // namespace

TEST_CASE("ei reference values") {
    // reference values computed with 50-digit arbitrary-precision arithmetic
    CHECK(rel_err(ei(1.0), 1.8951178163559367555) < 1e-14);
    CHECK(rel_err(ei(2.0), 4.9542343560018901634) < 1e-14);
    CHECK(rel_err(ei(5.0), 40.185275355803177455) < 1e-14);
    CHECK(rel_err(ei(-1.0), -0.21938393439552027368) < 1e-14);
    CHECK(rel_err(ei(-0.5), -0.55977359477616081175) < 1e-14);
    CHECK(rel_err(ei(-5.0), -0.0011482955912753257973) < 1e-13);
    CHECK(rel_err(ei(-6.0), -0.0003600824521626586593) < 1e-13);
    CHECK(rel_err(ei(40.0), 6039718263611241.5784) < 1e-13);
    CHECK(rel_err(ei(700.0), 1.4509787360525608526e+301) < 1e-13);
    CHECK(rel_err(ei(-700.0) * 1e300, -1.4065187662340329228e-7) < 1e-13);
}

TEST_CASE("ei near zero follows ln|x| + gamma") {
    // the series must survive the logarithmic blowup at the origin
    CHECK(rel_err(ei(-1e-8), -17.843465089050832587) < 1e-14);
    CHECK(rel_err(ei(1e-8), -17.843465069050832587) < 1e-14);
    const double gamma = 0.57721566490153286061;
    for (double x : {1e-12, 1e-10, 1e-6}) {
        CHECK(rel_err(ei(x), gamma + std::log(x) + x) < 1e-12);
        CHECK(rel_err(ei(-x), gamma + std::log(x) - x) < 1e-12);
    }
}

TEST_CASE("ei domain and overflow") {
    CHECK_THROWS_AS((void)ei(0.0), std::domain_error);
    CHECK_THROWS_AS((void)ei(720.0), std::overflow_error);
    CHECK(std::isfinite(ei(716.0))); // must not trap below the ladder
}

TEST_CASE("scaled_ei_neg reference values") {
    CHECK(rel_err(scaled_ei_neg(1.0), -0.59634736232319407434) < 1e-14);
    CHECK(rel_err(scaled_ei_neg(0.1), -2.0146425447084516791) < 1e-14);
    CHECK(rel_err(scaled_ei_neg(10.0), -0.091563333939788081876) < 1e-14);
    CHECK(rel_err(scaled_ei_neg(1000.0), -0.000999001994023880715) < 1e-14);
    CHECK(rel_err(scaled_ei_neg(1e8), -9.999999900000002e-9) < 1e-14);
    CHECK_THROWS_AS((void)scaled_ei_neg(0.0), std::domain_error);
    CHECK_THROWS_AS((void)scaled_ei_neg(-1.0), std::domain_error);
}

TEST_CASE("scaled_ei_neg asymptotic tail") {
    // e^x Ei(-x) ~ -1/x * (1 - 1/x + 2/x^2 - ...)
    for (double x : {1e4, 1e6, 1e10}) {
        const double want = -(1.0 / x) * (1.0 - 1.0 / x + 2.0 / (x * x));
        CHECK(rel_err(scaled_ei_neg(x), want) < 1e-10);
    }
}

TEST_CASE("scaled_ei_pos consistency with ei") {
    for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 40.0, 100.0, 700.0}) {
        const double lhs = std::log(std::fabs(scaled_ei_pos(x))) + x;
        const double rhs = std::log(std::fabs(ei(x)));
        CHECK(std::fabs(lhs - rhs) < 1e-12);
    }
    // stays finite far past the overflow point of Ei itself
    CHECK(std::isfinite(scaled_ei_pos(1e6)));
    CHECK(rel_err(scaled_ei_pos(1e6), 1e-6 * (1.0 + 1e-6 + 2e-12)) < 1e-10);
    CHECK_THROWS_AS((void)scaled_ei_pos(0.0), std::domain_error);
    CHECK_THROWS_AS((void)scaled_ei_pos(-2.0), std::domain_error);
}

TEST_CASE("ei_diff_scaled reference values") {
    CHECK(rel_err(ei_diff_scaled(1.0, 2.0), 1.1253860830832697192) < 1e-13);
    CHECK(rel_err(ei_diff_scaled(500.0, 510.0), 43.272163271776317615) < 1e-13);
    CHECK(rel_err(ei_diff_scaled(-2.0, -1.0), -1.2597115815643981458) < 1e-13);
    CHECK(rel_err(ei_diff_scaled(-1.0, -2.0), 0.46342199266310457346) < 1e-13);
    CHECK(rel_err(ei_diff_scaled(3.0, 0.25), -0.52158803995888803547) < 1e-13);
    CHECK(rel_err(ei_diff_scaled(80.0, 1e-3), -0.0126603105540328843) < 1e-12);
}

TEST_CASE("ei_diff_scaled degenerate and invalid inputs") {
    CHECK(ei_diff_scaled(3.0, 3.0) == 0.0);
    CHECK(ei_diff_scaled(-0.7, -0.7) == 0.0);
    CHECK_THROWS_AS((void)ei_diff_scaled(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)ei_diff_scaled(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)ei_diff_scaled(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)ei_diff_scaled(1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS((void)ei_diff_scaled(1.0, 1500.0), std::overflow_error);
}

TEST_CASE("ei_diff_scaled antisymmetry") {
    // e^-a (Ei(b)-Ei(a)) = -e^(b-a) * e^-b (Ei(a)-Ei(b))
    for (auto [a, b] : {std::pair{0.5, 2.0}, std::pair{1.0, 4.0},
                        std::pair{-3.0, -1.0}, std::pair{10.0, 12.0}}) {
        const double lhs = ei_diff_scaled(a, b);
        const double rhs = -std::exp(b - a) * ei_diff_scaled(b, a);
        CHECK(rel_err(lhs, rhs) < 1e-11);
    }
}

TEST_CASE("evaluation regimes agree across their crossover bands") {
    // positive crossover: series vs asymptotic around x = 40
    for (double x = 38.0; x <= 43.0; x += 0.5) {
        CHECK(rel_err(detail::ei_series(x), detail::scaled_ei_pos_asym(x) *
                                                std::exp(x)) < 1e-11);
    }
    // negative crossover: series vs continued fraction around x = -6
    for (double x = 4.0; x <= 8.0; x += 0.25) {
        CHECK(rel_err(detail::ei_series(-x) * std::exp(x),
                      detail::scaled_ei_neg_cf(x)) < 1e-11);
    }
}

TEST_CASE("finite over wide logarithmic grids") {
    for (double e = -300; e <= 300; e += 1.5) {
        const double x = std::pow(10.0, e / 10.0);
        if (x < 716.0) CHECK(std::isfinite(ei(x)));
        CHECK(std::isfinite(ei(-x)));
        CHECK(std::isfinite(scaled_ei_neg(x)));
        CHECK(std::isfinite(scaled_ei_pos(x)));
        CHECK(scaled_ei_neg(x) < 0.0);
    }
}

TEST_CASE("quadrature fallbacks agree with the primary paths") {
    for (double x : {-8.0, -3.0, -0.5, 0.25, 1.0, 3.0, 7.0, 20.0}) {
        CHECK(rel_err(ei_quadrature(x), ei(x)) < 1e-9);
    }
    for (double x : {0.5, 2.0, 15.0, 60.0}) {
        CHECK(rel_err(scaled_ei_neg_quadrature(x), scaled_ei_neg(x)) < 1e-9);
    }
    for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{0.3, 5.0},
                        std::pair{-4.0, -2.0}}) {
        CHECK(rel_err(ei_diff_scaled_quadrature(a, b), ei_diff_scaled(a, b)) <
              1e-8);
    }
}

TEST_CASE("perturbation hook shifts every public value") {
    const double base_ei = ei(2.0);
    const double base_sen = scaled_ei_neg(3.0);
    const double base_eds = ei_diff_scaled(1.0, 2.0);
    set_perturbation(1e-6);
    CHECK(perturbation() == 1e-6);
    CHECK(rel_err(ei(2.0), base_ei * (1.0 + 1e-6)) < 1e-12);
    CHECK(rel_err(scaled_ei_neg(3.0), base_sen * (1.0 + 1e-6)) < 1e-12);
    CHECK(rel_err(ei_diff_scaled(1.0, 2.0), base_eds * (1.0 + 1e-6)) < 1e-12);
    set_perturbation(0.0);
    CHECK(ei(2.0) == base_ei);
}

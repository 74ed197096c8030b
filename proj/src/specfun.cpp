#include "vlcsec/specfun.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vlcsec/quadrature.hpp"

namespace vlcsec::specfun {

namespace {

constexpr double euler_gamma = 0.57721566490153286060651209008240243;
constexpr double ln_dbl_max = 709.782712893383996;

std::atomic<double> g_perturb{0.0};

double perturbed(double v) {
    double p = g_perturb.load(std::memory_order_relaxed);
    return p == 0.0 ? v : v * (1.0 + p);
}

} // namespace

void set_perturbation(double rel) {
    g_perturb.store(rel, std::memory_order_relaxed);
}

double perturbation() { return g_perturb.load(std::memory_order_relaxed); }

namespace detail {

// gamma + ln|x| + sum x^k/(k*k!).  Long double accumulation keeps the
// alternating cancellation on the negative axis below 1e-13 relative for
// |x| <= 6; on the positive axis every term is positive and the series is
// usable to the overflow edge.
double ei_series(double x) {
    long double sum = 0.0L;
    long double term = 1.0L;
    const long double xl = x;
    for (int k = 1; k < 800; ++k) {
        term *= xl / k;
        long double add = term / k;
        sum += add;
        if (fabsl(add) < fabsl(sum) * 1e-20L) break;
    }
    return static_cast<double>(euler_gamma + logl(fabsl(xl)) + sum);
}

// e^x * Ei(-x) = -1/K(x) where K is the continued fraction
// (x+1) - 1^2/((x+3) - 2^2/((x+5) - ...)), by the modified Lentz scheme.
double scaled_ei_neg_cf(double x) {
    const double tiny = 1e-300;
    double f = x + 1.0;
    if (f == 0.0) f = tiny;
    double c = f;
    double d = 0.0;
    for (int k = 1; k < 200000; ++k) {
        const double ak = -static_cast<double>(k) * k;
        const double bk = x + 2.0 * k + 1.0;
        d = bk + ak * d;
        if (d == 0.0) d = tiny;
        d = 1.0 / d;
        c = bk + ak / c;
        if (c == 0.0) c = tiny;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return -1.0 / f;
}

// e^-x * Ei(x) ~ (1/x) * sum k!/x^k, truncated at the smallest term.
// The smallest term is about sqrt(2*pi*x)*e^-x relative, below 1e-13
// for x >= 40.
double scaled_ei_pos_asym(double x) {
    double sum = 1.0;
    double term = 1.0;
    for (int k = 1; k < 400; ++k) {
        const double next = term * k / x;
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / x;
}

} // namespace detail

namespace {

double ei_impl(double x) {
    if (x == 0.0) throw std::domain_error("ei: x = 0");
    if (x < 0.0) {
        const double t = -x;
        return (t <= 6.0) ? detail::ei_series(x)
                          : std::exp(-t) * detail::scaled_ei_neg_cf(t);
    }
    if (x <= 40.0) return detail::ei_series(x);
    const double s = detail::scaled_ei_pos_asym(x);
    if (x <= 709.0) return std::exp(x) * s;
    const double lnv = x + std::log(s);
    if (lnv >= ln_dbl_max)
        throw std::overflow_error("ei: result exceeds double range");
    return std::exp(lnv);
}

} // namespace

double ei(double x) { return perturbed(ei_impl(x)); }

double scaled_ei_neg(double x) {
    if (x <= 0.0) throw std::domain_error("scaled_ei_neg: x <= 0");
    const double v = (x <= 6.0) ? std::exp(x) * detail::ei_series(-x)
                                : detail::scaled_ei_neg_cf(x);
    return perturbed(v);
}

double scaled_ei_pos(double x) {
    if (x <= 0.0) throw std::domain_error("scaled_ei_pos: x <= 0");
    const double v = (x < 40.0) ? std::exp(-x) * detail::ei_series(x)
                                : detail::scaled_ei_pos_asym(x);
    return perturbed(v);
}

double ei_diff_scaled(double a, double b) {
    if (a == 0.0 || b == 0.0)
        throw std::domain_error("ei_diff_scaled: zero argument");
    if ((a > 0.0) != (b > 0.0))
        throw std::domain_error("ei_diff_scaled: mixed-sign arguments");
    if (a == b) return perturbed(0.0);
    // magnitude is of order e^(b-a)/|b| once b - a is large
    if (b - a > ln_dbl_max + std::log(std::fabs(b)))
        throw std::overflow_error("ei_diff_scaled: result exceeds double range");
    const double lo = std::min(std::fabs(a), std::fabs(b));
    const double hi = std::max(std::fabs(a), std::fabs(b));
    // Wide interval with small endpoints: the Ei values are far apart, so
    // the plain difference does not cancel, while the integrand's 1/t spike
    // at the near-zero endpoint would starve the quadrature.
    if (hi <= 30.0 && hi - lo >= 0.1 * lo)
        return perturbed(std::exp(-a) * (ei_impl(b) - ei_impl(a)));
    quad::options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-305;
    opt.max_subdivisions = 4000;
    const double v = quad::integrate_or_throw(
        [a](double t) { return std::exp(t - a) / t; }, a, b, opt);
    return perturbed(v);
}

double ei_quadrature(double x) {
    if (x == 0.0) throw std::domain_error("ei_quadrature: x = 0");
    quad::options opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-305;
    opt.max_subdivisions = 4000;
    if (x < 0.0) {
        // Ei(-t) = -e^-t * integral of e^-r/(t+r) dr over r >= 0,
        // compactified with r = u/(1-u)
        const double t = -x;
        const double integral = quad::integrate_or_throw(
            [t](double u) {
                const double r = u / (1.0 - u);
                return std::exp(-r) / (t + r) / ((1.0 - u) * (1.0 - u));
            },
            0.0, 1.0, opt);
        return -std::exp(-t) * integral;
    }
    // Ei(x) = gamma + ln x + integral of (e^t - 1)/t dt over [0, x]
    const double integral = quad::integrate_or_throw(
        [](double t) { return std::expm1(t) / t; }, 0.0, x, opt);
    return euler_gamma + std::log(x) + integral;
}

double scaled_ei_neg_quadrature(double x) {
    if (x <= 0.0) throw std::domain_error("scaled_ei_neg_quadrature: x <= 0");
    quad::options opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-305;
    opt.max_subdivisions = 4000;
    const double integral = quad::integrate_or_throw(
        [x](double u) {
            const double r = u / (1.0 - u);
            return std::exp(-r) / (x + r) / ((1.0 - u) * (1.0 - u));
        },
        0.0, 1.0, opt);
    return -integral;
}

double ei_diff_scaled_quadrature(double a, double b) {
    // naive difference path; valid while e^-a*Ei stays in double range
    return std::exp(-a) * (ei_quadrature(b) - ei_quadrature(a));
}

} // namespace vlcsec::specfun

#ifndef VLCSEC_SPECFUN_HPP
#define VLCSEC_SPECFUN_HPP

namespace vlcsec::specfun {

// Exponential integral Ei(x) = PV integral of e^t/t over (-inf, x].
// Domain: x != 0.  Throws std::domain_error at x == 0 and
// std::overflow_error once the value exceeds double range (x > ~716).
double ei(double x);

// e^x * Ei(-x) for x > 0, evaluated without forming e^x.  Always negative,
// increasing toward 0 as x grows.  Throws std::domain_error for x <= 0.
double scaled_ei_neg(double x);

// e^-x * Ei(x) for x > 0, evaluated without forming Ei(x) when it would
// overflow.  Throws std::domain_error for x <= 0.
double scaled_ei_pos(double x);

// e^-a * (Ei(b) - Ei(a)) for nonzero a, b of equal sign, computed as the
// integral of e^(t-a)/t from a to b so no intermediate exponential is
// formed.  Throws std::domain_error on a zero or mixed-sign argument pair,
// std::overflow_error when the result itself exceeds double range.
double ei_diff_scaled(double a, double b);

// Slow quadrature evaluations of the same quantities.  These share no code
// with the primary paths above and exist as independent cross-checks.
double ei_quadrature(double x);
double scaled_ei_neg_quadrature(double x);
double ei_diff_scaled_quadrature(double a, double b);

namespace detail {
// Individual evaluation regimes, exposed so the agreement of adjacent
// regimes across their crossover bands is testable.
double ei_series(double x);            // |x| <= ~45 (and any x < 0 with underflow)
double scaled_ei_neg_cf(double x);     // x > ~2
double scaled_ei_pos_asym(double x);   // x >= ~40
} // namespace detail

// Fault-injection hook: every function above returns value * (1 + rel).
// Used as a negative control by the verification harness; 0 in normal use.
void set_perturbation(double rel);
double perturbation();

} // namespace vlcsec::specfun

#endif

#ifndef VLCSEC_BOUNDS_PEAK_HPP
#define VLCSEC_BOUNDS_PEAK_HPP

#include <optional>

#include "vlcsec/bounds_avg.hpp"
#include "vlcsec/channel.hpp"

namespace vlcsec {

// Non-negativity, average-intensity and peak-intensity constraint set:
// X in [0, A], E[X] <= xi*P, with 0 < P <= A.
struct peak_constraint {
    double xi;   // dimming target, in (0, 1]
    double P;    // nominal optical intensity, W
    double A;    // peak optical intensity, W

    double alpha() const { return xi * P / A; }  // average-to-peak ratio, (0, 1]
};

// Validates the invariants; throws std::invalid_argument.
peak_constraint make_peak_constraint(double xi, double P, double A);

// Shape parameter of the maximum-entropy density on [0, A] with mean
// alpha*A: the unique c with 1/(1-e^(-cA)) - 1/(cA) = alpha, to residual
// 1e-12.  Exactly 0 when |alpha - 0.5| < 1e-9; sign(c) = sign(alpha - 0.5).
// alpha outside (0, 1) throws std::domain_error; alpha = 1 has no finite
// solution and also throws.
double solve_c(double alpha, double A);

// Maximum-entropy input density on [0, A] under a mean constraint:
// f(x) = 1/A when c = 0, else c*e^(cx)/(e^(cA)-1).
struct maxent_pdf {
    double A;
    double c;
    double alpha;

    double eval(double x) const;   // 0 outside [0, A]
    double mean() const;           // = alpha*A
    double entropy() const;        // nats
    double variance() const;
};

maxent_pdf make_maxent_pdf(double alpha, double A);

// Achievable secrecy rate of the maxentropic input (raw, unclamped).
// Requires H_E > 0 and positive varsigma2 on both sides.
double lower_bound_peak(const wiretap_channel& ch, const peak_constraint& con);

// Dual-expression secrecy-capacity upper bound under the peak constraint.
double upper_bound_peak(const wiretap_channel& ch, const peak_constraint& con);

// Signal-independent-noise limits (varsigma2 ignored).
double lower_bound_peak_si(const wiretap_channel& ch, const peak_constraint& con);
double upper_bound_peak_si(const wiretap_channel& ch, const peak_constraint& con);

// Large-A limits.  The lower limit has a closed form only at alpha = 0.5
// (gap 0.5*ln(pi*e/6)); for other alpha it is left unevaluated and both
// optionals are empty.
struct peak_asymptote {
    std::optional<double> lower_inf;
    double upper_inf;
    std::optional<double> gap;
};
peak_asymptote asymptotic_bounds_peak(const wiretap_channel& ch, double alpha);

// E[ln((1+H_E*vs_E^2*X)/(1+H_B*vs_B^2*X))] for X maxentropic, in closed
// form via ei_diff_scaled (uniform-case antiderivative when c = 0).
double maxent_log_ratio_mean(const wiretap_channel& ch, const maxent_pdf& pdf);

// Convenience assembly of both peak-constraint bounds with clamping.
secrecy_bounds bounds_peak(const wiretap_channel& ch, const peak_constraint& con);

} // namespace vlcsec

#endif

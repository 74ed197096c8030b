#ifndef VLCSEC_BOUNDS_AVG_HPP
#define VLCSEC_BOUNDS_AVG_HPP

#include <utility>

#include "vlcsec/channel.hpp"

namespace vlcsec {

// Non-negativity plus average-intensity constraint set: E[X] <= xi*P,
// X >= 0.
struct avg_constraint {
    double xi;   // dimming target, in (0, 1]
    double P;    // nominal optical intensity, W, > 0
};

enum class upper_branch { cond_holds, cond_fails };

// Raw values may be negative; lower/upper are clamped at zero.
// Invariant (verified over the sweep grids): lower <= upper + 1e-9.
struct secrecy_bounds {
    double lower_raw;
    double upper_raw;
    double lower;
    double upper;
    upper_branch branch;
};

secrecy_bounds make_secrecy_bounds(double lower_raw, double upper_raw,
                                   upper_branch branch);

// Channel-aware assembly: additionally zeroes both clamped values when the
// eavesdropper's gain is at least Bob's under identical noise parameters.
// X -> Y_E -> Y_B is Markov there, so the secrecy capacity is exactly 0 and
// the raw formulas are only diagnostics.
secrecy_bounds make_secrecy_bounds(const wiretap_channel& ch, double lower_raw,
                                   double upper_raw, upper_branch branch);

// Entropy-gain term of the output-entropy lower bound:
//   0.5*ln(H_B^2 + 2*H_B*s/xiP) - s/(sqrt(q*(q+2*s)) + q + s)
// with q = H_B*xiP, s = varsigma_B^2*sigma_B^2.  The second term equals
// sqrt(q*(q+2*s))/s - (q+s)/s but avoids the cancellation of that form for
// q >> s.  Decreases monotonically in xiP with limit ln(H_B).
double f_low(double H_B, double xiP, const noise_params& noise_B);

// Achievable secrecy rate of the exponential input with mean xi*P (raw,
// unclamped).  Requires H_E > 0 and positive varsigma2 on both sides.
double lower_bound_avg(const wiretap_channel& ch, const avg_constraint& con);

// Dual-expression secrecy-capacity upper bound.  The returned flag records
// which branch of the piecewise form fired; the branch condition flips at
// most once as xi*P grows (cond_holds at small intensity).
std::pair<double, upper_branch> upper_bound_avg(const wiretap_channel& ch,
                                                const avg_constraint& con);

// Signal-independent-noise limits of the two bounds (varsigma2 ignored).
// lower_bound_avg_si accepts H_E = 0.
double lower_bound_avg_si(const wiretap_channel& ch, const avg_constraint& con);
std::pair<double, upper_branch> upper_bound_avg_si(const wiretap_channel& ch,
                                                   const avg_constraint& con);

// High-intensity limits.  gap = upper_inf - lower_inf = 0.5*ln(8/pi) for
// every channel.
struct avg_asymptote {
    double lower_inf;
    double upper_inf;
    double gap;
};
avg_asymptote asymptotic_bounds_avg(const wiretap_channel& ch);

// E[ln((1+H_E*vs_E^2*X)/(1+H_B*vs_B^2*X))] for X exponential with the given
// mean, in closed form via scaled_ei_neg.
double exp_log_ratio_mean(const wiretap_channel& ch, double mean);

// Convenience assembly of both average-constraint bounds with clamping.
secrecy_bounds bounds_avg(const wiretap_channel& ch, const avg_constraint& con);

} // namespace vlcsec

#endif

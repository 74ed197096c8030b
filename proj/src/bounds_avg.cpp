#include "vlcsec/bounds_avg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vlcsec/specfun.hpp"

namespace vlcsec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double e_const = std::numbers::e;

void check_constraint(const avg_constraint& con) {
    if (!(con.xi > 0.0 && con.xi <= 1.0))
        throw std::domain_error("avg_constraint.xi must be in (0, 1]");
    if (!(con.P > 0.0)) throw std::domain_error("avg_constraint.P must be > 0");
}

// The signal-dependent closed forms contain ln(H_E) style terms that
// diverge as H_E -> 0; the degenerate eavesdropper is served by the
// numerical oracle instead.
void check_sd_channel(const wiretap_channel& ch) {
    if (!(ch.H_E > 0.0))
        throw std::domain_error(
            "signal-dependent bound undefined for H_E = 0; use the oracle");
}

} // namespace

secrecy_bounds make_secrecy_bounds(double lower_raw, double upper_raw,
                                   upper_branch branch) {
    secrecy_bounds b;
    b.lower_raw = lower_raw;
    b.upper_raw = upper_raw;
    b.lower = std::max(lower_raw, 0.0);
    b.upper = std::max(upper_raw, 0.0);
    b.branch = branch;
    return b;
}

secrecy_bounds make_secrecy_bounds(const wiretap_channel& ch, double lower_raw,
                                   double upper_raw, upper_branch branch) {
    secrecy_bounds b = make_secrecy_bounds(lower_raw, upper_raw, branch);
    // equal noise with H_E >= H_B: the eavesdropper sees everything Bob
    // sees, capacity is exactly zero regardless of the raw formula values
    if (ch.H_B <= ch.H_E && ch.noise_B.sigma2 == ch.noise_E.sigma2 &&
        ch.noise_B.varsigma2 == ch.noise_E.varsigma2) {
        b.lower = 0.0;
        b.upper = 0.0;
    }
    return b;
}

double f_low(double H_B, double xiP, const noise_params& noise_B) {
    if (!(H_B > 0.0)) throw std::domain_error("f_low: H_B must be > 0");
    if (!(xiP > 0.0)) throw std::domain_error("f_low: xiP must be > 0");
    if (!(noise_B.sigma2 > 0.0 && noise_B.varsigma2 > 0.0))
        throw std::domain_error("f_low: noise parameters must be > 0");
    const double s = noise_B.varsigma2 * noise_B.sigma2;
    const double q = H_B * xiP;
    // log1p keeps the q >> s regime accurate: the whole value is O(s/q) there
    return std::log(H_B) + 0.5 * std::log1p(2.0 * s / q) -
           s / (std::sqrt(q * (q + 2.0 * s)) + q + s);
}

double exp_log_ratio_mean(const wiretap_channel& ch, double mean) {
    check_sd_channel(ch);
    if (!(mean > 0.0)) throw std::domain_error("exp_log_ratio_mean: mean must be > 0");
    const double vB = ch.H_B * ch.noise_B.varsigma2;
    const double vE = ch.H_E * ch.noise_E.varsigma2;
    return specfun::scaled_ei_neg(1.0 / (vB * mean)) -
           specfun::scaled_ei_neg(1.0 / (vE * mean));
}

double lower_bound_avg(const wiretap_channel& ch, const avg_constraint& con) {
    check_sd_channel(ch);
    check_constraint(con);
    const double xiP = con.xi * con.P;
    const double s2B = ch.noise_B.sigma2;
    const double s2E = ch.noise_E.sigma2;
    const double varYE = ch.H_E * ch.H_E * xiP * xiP +
                         ch.H_E * xiP * ch.noise_E.varsigma2 * s2E + s2E;
    return 0.5 * std::log(e_const * xiP * xiP * s2E / (2.0 * pi * s2B * varYE)) +
           f_low(ch.H_B, xiP, ch.noise_B) +
           0.5 * exp_log_ratio_mean(ch, xiP);
}

std::pair<double, upper_branch> upper_bound_avg(const wiretap_channel& ch,
                                                const avg_constraint& con) {
    check_sd_channel(ch);
    check_constraint(con);
    const double xiP = con.xi * con.P;
    const double sB = ch.noise_B.varsigma2 * ch.noise_B.sigma2;
    const double sE = ch.noise_E.varsigma2 * ch.noise_E.sigma2;
    const double M = ch.M;
    const double rhs = ch.H_E / ch.H_B *
                       (std::sqrt(ch.H_B * sB / (2.0 * pi * M)) +
                        0.5 * ch.H_B * std::sqrt(xiP / M));
    if (1.0 / std::sqrt(2.0 * pi) >= rhs) {
        const double v =
            std::log(std::sqrt(4.0 * e_const * ch.H_E * sE / (pi * pi * M)) +
                     std::sqrt(2.0 * e_const * xiP * ch.H_B * ch.H_E * sE /
                               (M * pi * sB)));
        return {v, upper_branch::cond_holds};
    }
    const double v =
        0.5 * std::log(4.0 * e_const * ch.H_B * sE / (pi * pi * ch.H_E * sB));
    return {v, upper_branch::cond_fails};
}

double lower_bound_avg_si(const wiretap_channel& ch, const avg_constraint& con) {
    check_constraint(con);
    const double xiP = con.xi * con.P;
    const double s2B = ch.noise_B.sigma2;
    const double s2E = ch.noise_E.sigma2;
    return 0.5 * std::log(e_const * ch.H_B * ch.H_B * xiP * xiP * s2E /
                          (2.0 * pi * s2B *
                           (ch.H_E * ch.H_E * xiP * xiP + s2E)));
}

std::pair<double, upper_branch> upper_bound_avg_si(const wiretap_channel& ch,
                                                   const avg_constraint& con) {
    check_constraint(con);
    const double xiP = con.xi * con.P;
    const double s2B = ch.noise_B.sigma2;
    const double s2E = ch.noise_E.sigma2;
    const double half_term = std::sqrt(s2B) / std::sqrt(2.0 * pi) +
                             0.5 * ch.H_B * xiP;
    const double rhs = ch.H_E /
                       std::sqrt(ch.H_E * ch.H_E * s2B + ch.H_B * ch.H_B * s2E) *
                       half_term;
    if (1.0 / std::sqrt(2.0 * pi) >= rhs) {
        const double v = std::log(
            4.0 * e_const * half_term /
            std::sqrt(2.0 * pi * e_const * s2B *
                      (1.0 + ch.H_E * ch.H_E * s2B / (ch.H_B * ch.H_B * s2E))));
        return {v, upper_branch::cond_holds};
    }
    const double v = std::log(2.0 * std::sqrt(e_const) * ch.H_B *
                              std::sqrt(s2E) /
                              (pi * ch.H_E * std::sqrt(s2B)));
    return {v, upper_branch::cond_fails};
}

avg_asymptote asymptotic_bounds_avg(const wiretap_channel& ch) {
    check_sd_channel(ch);
    const double sB = ch.noise_B.varsigma2 * ch.noise_B.sigma2;
    const double sE = ch.noise_E.varsigma2 * ch.noise_E.sigma2;
    avg_asymptote a;
    a.lower_inf = 0.5 * std::log(e_const * ch.H_B * sE / (2.0 * pi * ch.H_E * sB));
    a.upper_inf =
        0.5 * std::log(4.0 * e_const * ch.H_B * sE / (pi * pi * ch.H_E * sB));
    a.gap = 0.5 * std::log(8.0 / pi);
    return a;
}

secrecy_bounds bounds_avg(const wiretap_channel& ch, const avg_constraint& con) {
    const double lo = lower_bound_avg(ch, con);
    const auto [up, br] = upper_bound_avg(ch, con);
    return make_secrecy_bounds(ch, lo, up, br);
}

} // namespace vlcsec

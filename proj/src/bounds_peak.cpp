#include "vlcsec/bounds_peak.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vlcsec/bounds_avg.hpp"
#include "vlcsec/specfun.hpp"

namespace vlcsec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double e_const = std::numbers::e;

// mean_fraction(u) = E[X]/A for the tilted density with exponent u = c*A.
// Strictly increasing, range (0,1), value 1/2 at u = 0.
double mean_fraction(double u) {
    if (std::abs(u) < 1e-2) {
        const double u2 = u * u;
        return 0.5 + u * (1.0 / 12.0 - u2 / 720.0 + u2 * u2 / 30240.0);
    }
    return 1.0 / (-std::expm1(-u)) - 1.0 / u;
}

// log_norm(u) = ln((e^u - 1)/u), finite and smooth through u = 0.
double log_norm(double u) {
    if (std::abs(u) <= 0.1) {
        const double u2 = u * u;
        return 0.5 * u + u2 / 24.0 - u2 * u2 / 2880.0 +
               u2 * u2 * u2 / 181440.0;
    }
    if (u > 0.0) return u + std::log1p(-std::exp(-u)) - std::log(u);
    return std::log(std::expm1(u) / u);
}

// second_moment_fraction(u) = E[X^2]/A^2; equals 1/3 at u = 0.
double second_moment_fraction(double u) {
    if (std::abs(u) <= 0.5) {
        double num = 0.0, den = 0.0;
        double p = 1.0;
        double f1 = 1.0, f3 = 6.0;
        for (int j = 0; j < 48; ++j) {
            const double tn = 2.0 * p / f3;
            num += tn;
            den += p / f1;
            if (std::abs(tn) < 1e-20 * std::abs(num) && j > 3) break;
            p *= -u;
            f1 *= static_cast<double>(j + 2);
            f3 *= static_cast<double>(j + 4);
        }
        return num / den;
    }
    const double u2 = u * u;
    if (u > 0.0)
        return (u2 - 2.0 * u + 2.0 - 2.0 * std::exp(-u)) /
               (u2 * (-std::expm1(-u)));
    return ((u2 - 2.0 * u + 2.0) * std::exp(u) - 2.0) / (u2 * std::expm1(u));
}

void check_sd_channel(const wiretap_channel& ch) {
    if (!(ch.H_E > 0.0))
        throw std::domain_error(
            "signal-dependent bound undefined for H_E = 0; use the oracle");
}

} // namespace

peak_constraint make_peak_constraint(double xi, double P, double A) {
    if (!(xi > 0.0 && xi <= 1.0))
        throw std::invalid_argument("peak_constraint: xi must be in (0, 1]");
    if (!(P > 0.0)) throw std::invalid_argument("peak_constraint: P must be > 0");
    if (!(A > 0.0)) throw std::invalid_argument("peak_constraint: A must be > 0");
    if (!(P <= A))
        throw std::invalid_argument("peak_constraint: P must not exceed A");
    return peak_constraint{xi, P, A};
}

double solve_c(double alpha, double A) {
    if (!(A > 0.0)) throw std::domain_error("solve_c: A must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("solve_c: alpha must lie strictly in (0, 1)");
    if (std::abs(alpha - 0.5) < 1e-9) return 0.0;

    double lo, hi;
    if (alpha > 0.5) {
        lo = 0.0;
        hi = 1.0;
        while (mean_fraction(hi) < alpha) {
            lo = hi;
            hi *= 2.0;
        }
    } else {
        hi = 0.0;
        lo = -1.0;
        while (mean_fraction(lo) > alpha) {
            hi = lo;
            lo *= 2.0;
        }
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (mean_fraction(mid) < alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi) / A;
}

double maxent_pdf::eval(double x) const {
    if (x < 0.0 || x > A) return 0.0;
    if (c == 0.0) return 1.0 / A;
    const double u = c * A;
    if (c > 0.0) return c * std::exp(c * (x - A)) / (-std::expm1(-u));
    return c * std::exp(c * x) / std::expm1(u);
}

double maxent_pdf::mean() const { return alpha * A; }

double maxent_pdf::entropy() const {
    const double u = c * A;
    return std::log(A) + log_norm(u) - u * alpha;
}

double maxent_pdf::variance() const {
    const double u = c * A;
    return A * A * (second_moment_fraction(u) - alpha * alpha);
}

maxent_pdf make_maxent_pdf(double alpha, double A) {
    const double c = solve_c(alpha, A);
    maxent_pdf pdf;
    pdf.A = A;
    pdf.c = c;
    pdf.alpha = alpha;
    return pdf;
}

double maxent_log_ratio_mean(const wiretap_channel& ch, const maxent_pdf& pdf) {
    check_sd_channel(ch);
    const double vB = ch.H_B * ch.noise_B.varsigma2;
    const double vE = ch.H_E * ch.noise_E.varsigma2;
    const double A = pdf.A;
    const double u = pdf.c * A;
    const double ln_ratio_A = std::log1p(vE * A) - std::log1p(vB * A);

    if (std::abs(u) < 1e-7) {
        return ln_ratio_A + std::log1p(vE * A) / (vE * A) -
               std::log1p(vB * A) / (vB * A);
    }
    const double aB = pdf.c / vB;
    const double aE = pdf.c / vE;
    const double bB = aB + u;
    const double bE = aE + u;
    if (u > 0.0) {
        return (ln_ratio_A + specfun::ei_diff_scaled(bE, aE) -
                specfun::ei_diff_scaled(bB, aB)) /
               (-std::expm1(-u));
    }
    return (ln_ratio_A * std::exp(u) - specfun::ei_diff_scaled(aE, bE) +
            specfun::ei_diff_scaled(aB, bB)) /
           std::expm1(u);
}

double lower_bound_peak(const wiretap_channel& ch, const peak_constraint& con) {
    check_sd_channel(ch);
    const double xiP = con.xi * con.P;
    const maxent_pdf pdf = make_maxent_pdf(con.alpha(), con.A);
    const double s2B = ch.noise_B.sigma2;
    const double s2E = ch.noise_E.sigma2;
    const double varYE = ch.H_E * ch.H_E * pdf.variance() +
                         ch.H_E * xiP * ch.noise_E.varsigma2 * s2E + s2E;
    return f_low(ch.H_B, xiP, ch.noise_B) + pdf.entropy() +
           0.5 * std::log(s2E / s2B) +
           0.5 * maxent_log_ratio_mean(ch, pdf) -
           0.5 * std::log(2.0 * pi * e_const * varYE);
}

double upper_bound_peak(const wiretap_channel& ch, const peak_constraint& con) {
    check_sd_channel(ch);
    const double A = con.A;
    const double sB = ch.noise_B.varsigma2 * ch.noise_B.sigma2;
    const double sE = ch.noise_E.varsigma2 * ch.noise_E.sigma2;
    const double num = ch.H_E * sE * (ch.H_B * A + sB);
    const double den =
        sB * (ch.H_E * ch.H_E * A + ch.H_E * ch.H_E / ch.H_B * sB + ch.M);
    return 0.5 * std::log(num / den);
}

double lower_bound_peak_si(const wiretap_channel& ch,
                           const peak_constraint& con) {
    const maxent_pdf pdf = make_maxent_pdf(con.alpha(), con.A);
    const double s2B = ch.noise_B.sigma2;
    const double s2E = ch.noise_E.sigma2;
    return std::log(ch.H_B) + pdf.entropy() + 0.5 * std::log(s2E / s2B) -
           0.5 * std::log(2.0 * pi * e_const *
                          (ch.H_E * ch.H_E * pdf.variance() + s2E));
}

double upper_bound_peak_si(const wiretap_channel& ch,
                           const peak_constraint& con) {
    const double xiP = con.xi * con.P;
    const double A = con.A;
    const double s2B = ch.noise_B.sigma2;
    const double s2E = ch.noise_E.sigma2;
    const double num = (ch.H_B * ch.H_B * A * xiP + s2B) * s2E;
    const double den = (ch.H_E * ch.H_E * A * xiP +
                        2.0 * ch.H_E * ch.H_E / (ch.H_B * ch.H_B) * s2B + s2E) *
                       s2B;
    return 0.5 * std::log(num / den);
}

peak_asymptote asymptotic_bounds_peak(const wiretap_channel& ch, double alpha) {
    check_sd_channel(ch);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("asymptotic_bounds_peak: alpha must lie in (0, 1)");
    const double sB = ch.noise_B.varsigma2 * ch.noise_B.sigma2;
    const double sE = ch.noise_E.varsigma2 * ch.noise_E.sigma2;
    peak_asymptote a;
    a.upper_inf = 0.5 * std::log(ch.H_B * sE / (ch.H_E * sB));
    if (std::abs(alpha - 0.5) < 1e-9) {
        a.lower_inf =
            0.5 * std::log(6.0 * ch.H_B * sE / (pi * e_const * ch.H_E * sB));
        a.gap = 0.5 * std::log(pi * e_const / 6.0);
    }
    return a;
}

secrecy_bounds bounds_peak(const wiretap_channel& ch,
                           const peak_constraint& con) {
    const double lo = lower_bound_peak(ch, con);
    const double up = upper_bound_peak(ch, con);
    return make_secrecy_bounds(ch, lo, up, upper_branch::cond_fails);
}

} // namespace vlcsec

#ifndef VLCSEC_CHANNEL_HPP
#define VLCSEC_CHANNEL_HPP

namespace vlcsec {

// Lambertian LED / photodiode parameters for the line-of-sight gain model.
struct lambertian_params {
    double m;      // Lambertian emission order, > 0
    double A_r;    // photodiode area, m^2, > 0
    double T_s;    // optical filter gain, > 0
    double g;      // concentrator gain, > 0
    double Psi;    // receiver field of view, rad, in (0, pi/2]
};

struct geometry {
    double D;      // link distance, m, > 0
    double phi;    // irradiance angle, rad, in [0, pi/2)
    double psi;    // incidence angle, rad, in [0, pi)
};

struct noise_params {
    double sigma2;     // signal-independent noise variance, W^2, > 0
    double varsigma2;  // signal-dependent to signal-independent variance ratio, > 0
};

// Receiver noise law: given input x >= 0 and gain H, the channel output is
// Gaussian with mean H*x and variance (1 + H*x*varsigma2)*sigma2.
struct wiretap_channel {
    double H_B;            // legitimate-receiver gain, > 0
    double H_E;            // eavesdropper gain, >= 0
    noise_params noise_B;
    noise_params noise_E;
    double M;              // H_E^2*vs_B^2*s_B^2/H_B + H_E*vs_E^2*s_E^2
    double N;              // H_E^2*s_B^2/H_B^2 + s_E^2
};

// LoS gain: (m+1)*A_r/(2*pi*D^2) * T_s * g * cos^m(phi) * cos(psi) inside
// the field of view, exactly 0 beyond it.  Throws std::invalid_argument on
// parameter-range violations.
double los_gain(const geometry& geom, const lambertian_params& lam);

// Validates all invariants and precomputes the derived M, N values.
// Throws std::invalid_argument naming the offending field.
wiretap_channel make_channel(double H_B, double H_E,
                             const noise_params& noise_B,
                             const noise_params& noise_E);

} // namespace vlcsec

#endif

#include "vlcsec/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vlcsec {

namespace {

void check_noise(const noise_params& n, const char* who) {
    if (!(n.sigma2 > 0.0))
        throw std::invalid_argument(std::string(who) + ".sigma2 must be > 0");
    if (!(n.varsigma2 > 0.0))
        throw std::invalid_argument(std::string(who) + ".varsigma2 must be > 0");
}

} // namespace

double los_gain(const geometry& geom, const lambertian_params& lam) {
    if (!(lam.m > 0.0)) throw std::invalid_argument("lambertian_params.m must be > 0");
    if (!(lam.A_r > 0.0)) throw std::invalid_argument("lambertian_params.A_r must be > 0");
    if (!(lam.T_s > 0.0)) throw std::invalid_argument("lambertian_params.T_s must be > 0");
    if (!(lam.g > 0.0)) throw std::invalid_argument("lambertian_params.g must be > 0");
    if (!(lam.Psi > 0.0 && lam.Psi <= std::numbers::pi / 2))
        throw std::invalid_argument("lambertian_params.Psi must be in (0, pi/2]");
    if (!(geom.D > 0.0)) throw std::invalid_argument("geometry.D must be > 0");
    if (!(geom.phi >= 0.0 && geom.phi < std::numbers::pi / 2))
        throw std::invalid_argument("geometry.phi must be in [0, pi/2)");
    if (!(geom.psi >= 0.0 && geom.psi < std::numbers::pi))
        throw std::invalid_argument("geometry.psi must be in [0, pi)");

    if (geom.psi > lam.Psi) return 0.0;
    return (lam.m + 1.0) * lam.A_r / (2.0 * std::numbers::pi * geom.D * geom.D) *
           lam.T_s * lam.g * std::pow(std::cos(geom.phi), lam.m) *
           std::cos(geom.psi);
}

wiretap_channel make_channel(double H_B, double H_E,
                             const noise_params& noise_B,
                             const noise_params& noise_E) {
    if (!(H_B > 0.0)) throw std::invalid_argument("H_B must be > 0");
    if (!(H_E >= 0.0)) throw std::invalid_argument("H_E must be >= 0");
    check_noise(noise_B, "noise_B");
    check_noise(noise_E, "noise_E");

    wiretap_channel ch;
    ch.H_B = H_B;
    ch.H_E = H_E;
    ch.noise_B = noise_B;
    ch.noise_E = noise_E;
    ch.M = H_E * H_E * noise_B.varsigma2 * noise_B.sigma2 / H_B +
           H_E * noise_E.varsigma2 * noise_E.sigma2;
    ch.N = H_E * H_E * noise_B.sigma2 / (H_B * H_B) + noise_E.sigma2;
    return ch;
}

} // namespace vlcsec

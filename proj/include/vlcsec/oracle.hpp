#ifndef VLCSEC_ORACLE_HPP
#define VLCSEC_ORACLE_HPP

#include <cstdint>
#include <random>

#include "vlcsec/channel.hpp"

namespace vlcsec::oracle {

enum class side { bob, eve };

// Input densities on the nonnegative axis used by the verification oracle.
// point_mass is the degenerate distribution; it has no density, so eval()
// throws for it and the entropy-style operations special-case it.
class input_distribution {
public:
    enum class kind_t { exponential, uniform, trunc_exp, point_mass };

    static input_distribution exponential(double mean);
    static input_distribution uniform(double A);
    static input_distribution trunc_exp(double c, double A);
    static input_distribution point_mass(double x0);

    kind_t kind() const { return kind_; }
    double eval(double x) const;
    double sample(std::mt19937_64& rng) const;
    double mean() const;
    double variance() const;
    double entropy() const;             // differential; -inf for point_mass
    double support_lo() const;          // always 0 except point_mass
    double support_hi() const;          // +inf for exponential
    // Smallest x with P(X > x) <= tail_mass; equals support_hi() for
    // bounded-support kinds.
    double effective_hi(double tail_mass) const;

    double param1() const { return p1_; }
    double param2() const { return p2_; }

private:
    input_distribution(kind_t k, double p1, double p2);
    kind_t kind_;
    double p1_;
    double p2_;
};

struct quadrature_spec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    double y_truncation_sigmas = 12.0;  // >= 8
};

// Gaussian density of the channel output given input x: mean H*x,
// variance (1 + H*x*varsigma2)*sigma2.
double conditional_pdf(double y, double x, side s, const wiretap_channel& ch);

// 0.5*ln(2*pi*e*sigma2) + 0.5*E[ln(1 + H*varsigma2*X)], expectation by
// quadrature against dist (exact for point_mass).
double conditional_entropy(side s, const input_distribution& dist,
                           const wiretap_channel& ch,
                           const quadrature_spec& spec = {});

// Differential entropy of the channel output by nested quadrature; the
// inner mixture integral runs at a tenth of the outer tolerance.
double marginal_entropy(side s, const input_distribution& dist,
                        const wiretap_channel& ch,
                        const quadrature_spec& spec = {});

// H(Y_B) - H(Y_B|X) - H(Y_E) + H(Y_E|X): the rate the given input achieves,
// an upper reference for every closed-form lower bound built from it.
double secrecy_rate(const input_distribution& dist, const wiretap_channel& ch,
                    const quadrature_spec& spec = {});

// E[ln((1 + H_E*vs_E^2*X)/(1 + H_B*vs_B^2*X))] by quadrature.
double expect_log_ratio(const input_distribution& dist,
                        const wiretap_channel& ch,
                        const quadrature_spec& spec = {});

// H^2*var(X) + H*E[X]*varsigma2*sigma2 + sigma2 from analytic moments.
double output_variance(const input_distribution& dist, side s,
                       const wiretap_channel& ch);

struct mc_result {
    double estimate;
    double std_error;
    std::uint64_t n;
    std::uint64_t seed;
};

// Monte Carlo estimate of secrecy_rate: per-sample log-density differences
// with the marginal densities evaluated by quadrature.  The sample budget
// is split over workers with per-worker derived seeds and merged in worker
// order, so the result is a deterministic function of (seed, workers).
mc_result mc_secrecy_rate(const input_distribution& dist,
                          const wiretap_channel& ch, std::uint64_t n_samples,
                          std::uint64_t seed, const quadrature_spec& spec = {},
                          unsigned workers = 0);

// Monte Carlo estimate of the output variance by direct simulation of the
// two-noise channel law; std_error is the delta-method error of the sample
// variance.
mc_result mc_output_variance(const input_distribution& dist, side s,
                             const wiretap_channel& ch,
                             std::uint64_t n_samples, std::uint64_t seed);

} // namespace vlcsec::oracle

#endif

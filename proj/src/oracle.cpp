#include "vlcsec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "vlcsec/quadrature.hpp"

namespace vlcsec::oracle {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

double half_ln_2pie(double var) {
    return 0.5 * std::log(2.0 * pi * std::numbers::e * var);
}

double channel_gain(side s, const wiretap_channel& ch) {
    return s == side::bob ? ch.H_B : ch.H_E;
}

const noise_params& channel_noise(side s, const wiretap_channel& ch) {
    return s == side::bob ? ch.noise_B : ch.noise_E;
}

double conditional_variance(double x, side s, const wiretap_channel& ch) {
    const noise_params& np = channel_noise(s, ch);
    return (1.0 + channel_gain(s, ch) * x * np.varsigma2) * np.sigma2;
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform on (0, 1]; never returns 0, so logs of it are finite.
double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

void normal_pair(std::mt19937_64& rng, double& z1, double& z2) {
    const double u1 = uniform_unit(rng);
    const double u2 = uniform_unit(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    z1 = r * std::cos(2.0 * pi * u2);
    z2 = r * std::sin(2.0 * pi * u2);
}

quad::options outer_options(const quadrature_spec& spec) {
    quad::options opt;
    opt.rel_tol = spec.rel_tol;
    opt.abs_tol = spec.abs_tol;
    opt.max_subdivisions = spec.max_subdivisions;
    return opt;
}

quad::options inner_options(const quadrature_spec& spec) {
    quad::options opt;
    opt.rel_tol = 0.1 * spec.rel_tol;
    opt.abs_tol = 1e-300;
    opt.max_subdivisions = spec.max_subdivisions;
    return opt;
}

// E[g(X)] by adaptive quadrature over the support of dist; exact for
// point_mass.  The exponential's unbounded support is mapped onto (0, 1)
// through x = m*t/(1 - t).
double expectation_over(const input_distribution& dist,
                        const std::function<double(double)>& g,
                        const quad::options& opt) {
    using kind_t = input_distribution::kind_t;
    switch (dist.kind()) {
    case kind_t::point_mass:
        return g(dist.param1());
    case kind_t::exponential: {
        const double m = dist.param1();
        auto integrand = [&](double t) {
            const double om = 1.0 - t;
            const double x = m * t / om;
            const double f = dist.eval(x);
            if (!(f > 0.0)) return 0.0;
            return f * g(x) * m / (om * om);
        };
        return quad::integrate_or_throw(integrand, 0.0, 1.0, opt);
    }
    default: {
        auto integrand = [&](double x) {
            const double f = dist.eval(x);
            return f > 0.0 ? f * g(x) : 0.0;
        };
        return quad::integrate_or_throw(integrand, dist.support_lo(),
                                        dist.support_hi(), opt);
    }
    }
}

// Mixture density integral restricted to the x-window where the conditional
// density carries mass; integrating the full support instead can hide the
// bump between quadrature nodes when the support is wide.
double marginal_density(double y, side s, const input_distribution& dist,
                        const wiretap_channel& ch, const quad::options& opt,
                        double k_window) {
    if (dist.kind() == input_distribution::kind_t::point_mass)
        return conditional_pdf(y, dist.param1(), s, ch);
    const double H = channel_gain(s, ch);
    if (H == 0.0) return conditional_pdf(y, 0.0, s, ch);

    const double x_c = y / H;
    const double s0 = std::sqrt(conditional_variance(std::max(x_c, 0.0), s, ch));
    double whi = x_c + 2.0 * k_window * s0 / H;
    const double s1 = std::sqrt(conditional_variance(std::max(whi, 0.0), s, ch));
    whi = x_c + 2.0 * k_window * s1 / H;
    double wlo = std::max(x_c - 2.0 * k_window * s1 / H, dist.support_lo());
    const double sup_hi = dist.support_hi();
    if (std::isfinite(sup_hi)) whi = std::min(whi, sup_hi);
    if (!(whi > wlo)) return 0.0;

    auto integrand = [&](double x) {
        const double f = dist.eval(x);
        return f > 0.0 ? f * conditional_pdf(y, x, s, ch) : 0.0;
    };
    return quad::integrate(integrand, wlo, whi, opt).value;
}

} // namespace

input_distribution::input_distribution(kind_t k, double p1, double p2)
    : kind_(k), p1_(p1), p2_(p2) {}

input_distribution input_distribution::exponential(double mean) {
    if (!(mean > 0.0))
        throw std::invalid_argument("exponential: mean must be > 0");
    return {kind_t::exponential, mean, 0.0};
}

input_distribution input_distribution::uniform(double A) {
    if (!(A > 0.0)) throw std::invalid_argument("uniform: A must be > 0");
    return {kind_t::uniform, A, 0.0};
}

input_distribution input_distribution::trunc_exp(double c, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("trunc_exp: A must be > 0");
    if (!std::isfinite(c))
        throw std::invalid_argument("trunc_exp: c must be finite");
    return {kind_t::trunc_exp, c, A};
}

input_distribution input_distribution::point_mass(double x0) {
    if (!(x0 >= 0.0))
        throw std::invalid_argument("point_mass: x0 must be >= 0");
    return {kind_t::point_mass, x0, 0.0};
}

double input_distribution::eval(double x) const {
    switch (kind_) {
    case kind_t::exponential:
        return x < 0.0 ? 0.0 : std::exp(-x / p1_) / p1_;
    case kind_t::uniform:
        return (x < 0.0 || x > p1_) ? 0.0 : 1.0 / p1_;
    case kind_t::trunc_exp: {
        if (x < 0.0 || x > p2_) return 0.0;
        const double c = p1_;
        const double A = p2_;
        if (c == 0.0) return 1.0 / A;
        const double u = c * A;
        if (c > 0.0) return c * std::exp(c * (x - A)) / (-std::expm1(-u));
        return c * std::exp(c * x) / std::expm1(u);
    }
    case kind_t::point_mass:
        throw std::domain_error("point_mass has no density");
    }
    return 0.0;
}

double input_distribution::sample(std::mt19937_64& rng) const {
    switch (kind_) {
    case kind_t::exponential:
        return -p1_ * std::log(uniform_unit(rng));
    case kind_t::uniform:
        return p1_ * uniform_unit(rng);
    case kind_t::trunc_exp: {
        const double c = p1_;
        const double A = p2_;
        const double U = uniform_unit(rng);
        if (c == 0.0) return A * U;
        if (c > 0.0)
            return A + std::log(U + (1.0 - U) * std::exp(-c * A)) / c;
        return std::log1p(U * std::expm1(c * A)) / c;
    }
    case kind_t::point_mass:
        return p1_;
    }
    return 0.0;
}

namespace {

quad::options moment_options() {
    quad::options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-15;
    return opt;
}

double trunc_exp_integral(const input_distribution& d,
                          const std::function<double(double)>& g) {
    auto integrand = [&](double x) { return d.eval(x) * g(x); };
    return quad::integrate_or_throw(integrand, 0.0, d.support_hi(),
                                    moment_options());
}

} // namespace

double input_distribution::mean() const {
    switch (kind_) {
    case kind_t::exponential:
        return p1_;
    case kind_t::uniform:
        return 0.5 * p1_;
    case kind_t::trunc_exp:
        return trunc_exp_integral(*this, [](double x) { return x; });
    case kind_t::point_mass:
        return p1_;
    }
    return 0.0;
}

double input_distribution::variance() const {
    switch (kind_) {
    case kind_t::exponential:
        return p1_ * p1_;
    case kind_t::uniform:
        return p1_ * p1_ / 12.0;
    case kind_t::trunc_exp: {
        const double mu = mean();
        return trunc_exp_integral(
            *this, [mu](double x) { return (x - mu) * (x - mu); });
    }
    case kind_t::point_mass:
        return 0.0;
    }
    return 0.0;
}

double input_distribution::entropy() const {
    switch (kind_) {
    case kind_t::exponential:
        return 1.0 + std::log(p1_);
    case kind_t::uniform:
        return std::log(p1_);
    case kind_t::trunc_exp:
        return trunc_exp_integral(
            *this, [this](double x) { return -std::log(eval(x)); });
    case kind_t::point_mass:
        return -inf;
    }
    return 0.0;
}

double input_distribution::support_lo() const {
    return kind_ == kind_t::point_mass ? p1_ : 0.0;
}

double input_distribution::support_hi() const {
    switch (kind_) {
    case kind_t::exponential:
        return inf;
    case kind_t::uniform:
        return p1_;
    case kind_t::trunc_exp:
        return p2_;
    case kind_t::point_mass:
        return p1_;
    }
    return 0.0;
}

double input_distribution::effective_hi(double tail_mass) const {
    if (!(tail_mass > 0.0 && tail_mass < 1.0))
        throw std::domain_error("effective_hi: tail_mass must be in (0, 1)");
    if (kind_ == kind_t::exponential) return -p1_ * std::log(tail_mass);
    return support_hi();
}

double conditional_pdf(double y, double x, side s, const wiretap_channel& ch) {
    if (!(x >= 0.0)) throw std::domain_error("conditional_pdf: x must be >= 0");
    const double H = channel_gain(s, ch);
    const double v = conditional_variance(x, s, ch);
    const double d = y - H * x;
    return std::exp(-0.5 * d * d / v) / std::sqrt(2.0 * pi * v);
}

double conditional_entropy(side s, const input_distribution& dist,
                           const wiretap_channel& ch,
                           const quadrature_spec& spec) {
    const noise_params& np = channel_noise(s, ch);
    const double hvs = channel_gain(s, ch) * np.varsigma2;
    const double base = half_ln_2pie(np.sigma2);
    if (hvs == 0.0) return base;
    const double elog = expectation_over(
        dist, [hvs](double x) { return std::log1p(hvs * x); },
        outer_options(spec));
    return base + 0.5 * elog;
}

double marginal_entropy(side s, const input_distribution& dist,
                        const wiretap_channel& ch,
                        const quadrature_spec& spec) {
    if (!(spec.y_truncation_sigmas >= 8.0))
        throw std::invalid_argument(
            "quadrature_spec: y_truncation_sigmas must be >= 8");
    const double H = channel_gain(s, ch);
    if (dist.kind() == input_distribution::kind_t::point_mass || H == 0.0) {
        const double x0 = dist.kind() == input_distribution::kind_t::point_mass
                              ? dist.param1()
                              : 0.0;
        return half_ln_2pie(conditional_variance(H == 0.0 ? 0.0 : x0, s, ch));
    }
    const double x_hi = dist.effective_hi(1e-30);
    const double s_max = std::sqrt(conditional_variance(x_hi, s, ch));
    const double k = spec.y_truncation_sigmas;
    const quad::options inner = inner_options(spec);
    const double k_window = k + 4.0;
    auto integrand = [&](double y) {
        const double f = marginal_density(y, s, dist, ch, inner, k_window);
        return f > 1e-300 ? -f * std::log(f) : 0.0;
    };
    return quad::integrate_or_throw(integrand, -k * s_max, H * x_hi + k * s_max,
                                    outer_options(spec));
}

double secrecy_rate(const input_distribution& dist, const wiretap_channel& ch,
                    const quadrature_spec& spec) {
    return marginal_entropy(side::bob, dist, ch, spec) -
           conditional_entropy(side::bob, dist, ch, spec) -
           marginal_entropy(side::eve, dist, ch, spec) +
           conditional_entropy(side::eve, dist, ch, spec);
}

double expect_log_ratio(const input_distribution& dist,
                        const wiretap_channel& ch,
                        const quadrature_spec& spec) {
    const double vB = ch.H_B * ch.noise_B.varsigma2;
    const double vE = ch.H_E * ch.noise_E.varsigma2;
    return expectation_over(
        dist,
        [vB, vE](double x) {
            return std::log1p(vE * x) - std::log1p(vB * x);
        },
        outer_options(spec));
}

double output_variance(const input_distribution& dist, side s,
                       const wiretap_channel& ch) {
    const double H = channel_gain(s, ch);
    const noise_params& np = channel_noise(s, ch);
    return H * H * dist.variance() +
           H * dist.mean() * np.varsigma2 * np.sigma2 + np.sigma2;
}

mc_result mc_secrecy_rate(const input_distribution& dist,
                          const wiretap_channel& ch, std::uint64_t n_samples,
                          std::uint64_t seed, const quadrature_spec& spec,
                          unsigned workers) {
    if (n_samples == 0)
        throw std::invalid_argument("mc_secrecy_rate: n_samples must be > 0");
    unsigned W = workers != 0 ? workers
                              : std::max(1u, std::thread::hardware_concurrency());
    if (static_cast<std::uint64_t>(W) > n_samples)
        W = static_cast<unsigned>(n_samples);

    std::uint64_t state = seed;
    std::vector<std::uint64_t> worker_seed(W);
    for (auto& ws : worker_seed) ws = splitmix64_next(state);

    const quad::options inner = inner_options(spec);
    const double k_window = spec.y_truncation_sigmas + 4.0;

    std::vector<double> sum(W, 0.0), sumsq(W, 0.0);
    auto run = [&](unsigned w, std::uint64_t count) {
        std::mt19937_64 rng(worker_seed[w]);
        double s1 = 0.0, s2 = 0.0;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double x = dist.sample(rng);
            double zB, zE;
            normal_pair(rng, zB, zE);
            const double vB = conditional_variance(x, side::bob, ch);
            const double vE = conditional_variance(x, side::eve, ch);
            const double yB = ch.H_B * x + std::sqrt(vB) * zB;
            const double yE = ch.H_E * x + std::sqrt(vE) * zE;
            const double fB = std::max(
                marginal_density(yB, side::bob, dist, ch, inner, k_window),
                1e-300);
            const double fE = std::max(
                marginal_density(yE, side::eve, dist, ch, inner, k_window),
                1e-300);
            const double v =
                -std::log(fB) + std::log(fE) + 0.5 * std::log(vE / vB);
            s1 += v;
            s2 += v * v;
        }
        sum[w] = s1;
        sumsq[w] = s2;
    };

    const std::uint64_t base = n_samples / W;
    const std::uint64_t extra = n_samples % W;
    auto count_of = [&](unsigned w) {
        return base + (w < extra ? 1 : 0);
    };
    if (W == 1) {
        run(0, n_samples);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(W - 1);
        for (unsigned w = 1; w < W; ++w)
            pool.emplace_back(run, w, count_of(w));
        run(0, count_of(0));
        for (auto& t : pool) t.join();
    }

    double S = 0.0, S2 = 0.0;
    for (unsigned w = 0; w < W; ++w) {
        S += sum[w];
        S2 += sumsq[w];
    }
    const double n = static_cast<double>(n_samples);
    const double mean = S / n;
    const double var =
        n > 1.0 ? std::max(0.0, (S2 - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(var / n), n_samples, seed};
}

mc_result mc_output_variance(const input_distribution& dist, side s,
                             const wiretap_channel& ch,
                             std::uint64_t n_samples, std::uint64_t seed) {
    if (n_samples < 2)
        throw std::invalid_argument("mc_output_variance: n_samples must be > 1");
    const double H = channel_gain(s, ch);
    const noise_params& np = channel_noise(s, ch);
    const double sd_dep = std::sqrt(np.varsigma2 * np.sigma2);
    const double sd_ind = std::sqrt(np.sigma2);

    std::mt19937_64 rng(seed);
    double mean = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
    std::uint64_t n = 0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const double x = dist.sample(rng);
        double z1, z2;
        normal_pair(rng, z1, z2);
        const double y = H * x + std::sqrt(H * x) * sd_dep * z1 + sd_ind * z2;
        const std::uint64_t n1 = n++;
        const double delta = y - mean;
        const double dn = delta / static_cast<double>(n);
        const double dn2 = dn * dn;
        const double t1 = delta * dn * static_cast<double>(n1);
        mean += dn;
        m4 += t1 * dn2 *
                  (static_cast<double>(n) * static_cast<double>(n) -
                   3.0 * static_cast<double>(n) + 3.0) +
              6.0 * dn2 * m2 - 4.0 * dn * m3;
        m3 += t1 * dn * (static_cast<double>(n) - 2.0) - 3.0 * dn * m2;
        m2 += t1;
    }
    const double nn = static_cast<double>(n_samples);
    const double s2 = m2 / (nn - 1.0);
    const double m4c = m4 / nn;
    const double se = std::sqrt(std::max(0.0, m4c - s2 * s2) / nn);
    return {s2, se, n_samples, seed};
}

} // namespace vlcsec::oracle

// Release acceptance checks, one criterion per invocation (argv[1] = 1..8).
// Prints one [PASS]/[FAIL] line per criterion; exit 0 only on pass.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "vlcsec/bounds_avg.hpp"
#include "vlcsec/bounds_peak.hpp"
#include "vlcsec/channel.hpp"
#include "vlcsec/oracle.hpp"
#include "vlcsec/quadrature.hpp"

using namespace vlcsec;

namespace {

int g_fails = 0;

void expect(bool ok, const char* what, double got, double want, double tol) {
    if (!ok) ++g_fails;
    std::printf("  %s %s  got=%.10g  want=%.10g  tol=%.1g\n",
                ok ? "ok  " : "BAD ", what, got, want, tol);
}

void expect_flag(bool ok, const char* what) {
    if (!ok) ++g_fails;
    std::printf("  %s %s\n", ok ? "ok  " : "BAD ", what);
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

wiretap_channel ratio_ch(double ratio, double vs2 = 1.5) {
    return make_channel(1.0, 1.0 / ratio, noise_params{1.0, vs2},
                        noise_params{1.0, vs2});
}

// ---- criterion 1: average-intensity gap saturation ------------------------

void criterion_1() {
    for (double pdb : {85.0, 90.0, 95.0, 100.0}) {
        for (double ratio : {10.0, 100.0, 1000.0}) {
            const secrecy_bounds b = bounds_avg(
                ratio_ch(ratio), avg_constraint{0.3, from_db(pdb)});
            const double gap = b.upper_raw - b.lower_raw;
            char what[64];
            std::snprintf(what, sizeof what, "gap(P=%g dB, ratio=%g)", pdb,
                          ratio);
            expect(std::fabs(gap - 0.4674) <= 5e-4, what, gap, 0.4674, 5e-4);
        }
    }
    const double analytic = 0.5 * std::log(8.0 / 3.14159265358979323846);
    const avg_asymptote a = asymptotic_bounds_avg(ratio_ch(100.0));
    expect(std::fabs(a.gap - analytic) <= 1e-12, "asymptotic gap", a.gap,
           analytic, 1e-12);
}

// ---- criterion 2: peak-intensity gap saturation ----------------------------

void criterion_2() {
    for (double adb : {65.0, 70.0, 75.0, 80.0}) {
        for (double ratio : {10.0, 100.0, 1000.0}) {
            const double A = from_db(adb);
            const peak_constraint con = make_peak_constraint(1.0, 0.5 * A, A);
            const wiretap_channel ch = ratio_ch(ratio);
            const double gap =
                upper_bound_peak(ch, con) - lower_bound_peak(ch, con);
            char what[80];
            std::snprintf(what, sizeof what,
                          "gap(alpha=0.5, A=%g dB, ratio=%g)", adb, ratio);
            expect(std::fabs(gap - 0.1765) <= 5e-4, what, gap, 0.1765, 5e-4);
        }
    }
    {
        const double A = from_db(80.0);
        const peak_constraint con = make_peak_constraint(1.0, 0.2 * A, A);
        const wiretap_channel ch = ratio_ch(100.0);
        const double gap =
            upper_bound_peak(ch, con) - lower_bound_peak(ch, con);
        expect(std::fabs(gap - 0.3600) <= 5e-4, "gap(alpha=0.2, A=80 dB)",
               gap, 0.3600, 5e-4);
    }
    {
        const double A = from_db(65.0);
        const peak_constraint con = make_peak_constraint(1.0, 0.2 * A, A);
        const wiretap_channel ch = ratio_ch(1000.0);
        const double gap =
            upper_bound_peak(ch, con) - lower_bound_peak(ch, con);
        expect(std::fabs(gap - 0.3574) <= 5e-4,
               "gap(alpha=0.2, A=65 dB, ratio=1000)", gap, 0.3574, 5e-4);
    }
}

// ---- criterion 3: no secrecy without a gain advantage ----------------------

void criterion_3() {
    // ratio sweep at fixed average intensity (ratio grid of the bound-curve
    // figures crossing ratio = 1)
    for (int i = 0; i < 39; ++i) {
        const double ratio = 0.5 + (10.0 - 0.5) * i / 38.0;
        if (ratio > 1.0) continue;
        const wiretap_channel ch = make_channel(
            1.0, 1.0 / ratio, noise_params{1.0, 1.5}, noise_params{1.0, 1.5});
        const secrecy_bounds avg =
            bounds_avg(ch, avg_constraint{0.3, from_db(60.0)});
        const double A = from_db(60.0);
        const secrecy_bounds pk =
            bounds_peak(ch, make_peak_constraint(0.3, A / 1.5, A));
        char what[64];
        std::snprintf(what, sizeof what, "clamped to zero at ratio=%.4f",
                      ratio);
        expect_flag(avg.lower == 0.0 && avg.upper == 0.0 && pk.lower == 0.0 &&
                        pk.upper == 0.0,
                    what);
    }
}

// ---- criterion 4: closed-form expectations and variances vs oracle ---------

void criterion_4() {
    // mean log variance-ratio, exponential inputs, 27-point grid
    for (double xiP : {3.0, 300.0, 3e4}) {
        for (double vb : {0.5, 1.5, 3.0}) {
            for (double ve : {0.5, 1.5, 3.0}) {
                const wiretap_channel ch = make_channel(
                    1.0, 0.01, noise_params{1.0, vb}, noise_params{1.0, ve});
                const double closed = exp_log_ratio_mean(ch, xiP);
                const double byquad = oracle::expect_log_ratio(
                    oracle::input_distribution::exponential(xiP), ch);
                const double rel = std::fabs(closed - byquad) /
                                   std::max(1e-12, std::fabs(byquad));
                char what[96];
                std::snprintf(what, sizeof what,
                              "exp mean(xiP=%g, vsB=%g, vsE=%g) rel", xiP, vb,
                              ve);
                expect(rel <= 1e-7, what, rel, 0.0, 1e-7);
            }
        }
    }
    // mean log variance-ratio, maxentropic inputs, 27-point grid
    for (double alpha : {0.2, 0.5, 0.8}) {
        for (double A : {10.0, 1e3, 1e5}) {
            for (double ve : {0.5, 1.5, 3.0}) {
                const wiretap_channel ch = make_channel(
                    1.0, 0.01, noise_params{1.0, 1.5}, noise_params{1.0, ve});
                const maxent_pdf pdf = make_maxent_pdf(alpha, A);
                const double closed = maxent_log_ratio_mean(ch, pdf);
                const double byquad = oracle::expect_log_ratio(
                    oracle::input_distribution::trunc_exp(pdf.c, A), ch);
                const double rel = std::fabs(closed - byquad) /
                                   std::max(1e-12, std::fabs(byquad));
                char what[96];
                std::snprintf(what, sizeof what,
                              "maxent mean(alpha=%g, A=%g, vsE=%g) rel", alpha,
                              A, ve);
                expect(rel <= 1e-7, what, rel, 0.0, 1e-7);
            }
        }
    }
    // eavesdropper output variance used by the lower bounds vs dist moments
    {
        const wiretap_channel ch = ratio_ch(100.0);
        const double xiP = 30.0;
        const double formula = ch.H_E * ch.H_E * xiP * xiP +
                               ch.H_E * xiP * ch.noise_E.varsigma2 *
                                   ch.noise_E.sigma2 +
                               ch.noise_E.sigma2;
        const double bymoments = oracle::output_variance(
            oracle::input_distribution::exponential(xiP), oracle::side::eve,
            ch);
        expect(std::fabs(formula - bymoments) <= 1e-12 * formula,
               "exp output variance rel", std::fabs(formula - bymoments) /
                                              formula,
               0.0, 1e-12);
    }
    for (double alpha : {0.2, 0.7}) {
        const wiretap_channel ch = ratio_ch(100.0);
        const double A = 50.0;
        const maxent_pdf pdf = make_maxent_pdf(alpha, A);
        const double formula = ch.H_E * ch.H_E * pdf.variance() +
                               ch.H_E * pdf.mean() * ch.noise_E.varsigma2 *
                                   ch.noise_E.sigma2 +
                               ch.noise_E.sigma2;
        const double bymoments = oracle::output_variance(
            oracle::input_distribution::trunc_exp(pdf.c, A), oracle::side::eve,
            ch);
        char what[64];
        std::snprintf(what, sizeof what,
                      "maxent output variance(alpha=%g) rel", alpha);
        expect(std::fabs(formula - bymoments) <= 1e-12 * formula, what,
               std::fabs(formula - bymoments) / formula, 0.0, 1e-12);
    }
    // simulation cross-check at a million samples
    {
        const wiretap_channel ch = ratio_ch(100.0);
        const auto d = oracle::input_distribution::exponential(30.0);
        const double closed =
            oracle::output_variance(d, oracle::side::eve, ch);
        const auto mc =
            oracle::mc_output_variance(d, oracle::side::eve, ch, 1000000, 2024);
        expect(std::fabs(mc.estimate - closed) <= 5.0 * mc.std_error,
               "exp variance vs simulation dev/SE",
               std::fabs(mc.estimate - closed) / mc.std_error, 0.0, 5.0);
    }
    {
        const wiretap_channel ch = ratio_ch(100.0);
        const maxent_pdf pdf = make_maxent_pdf(0.7, 50.0);
        const auto d = oracle::input_distribution::trunc_exp(pdf.c, 50.0);
        const double closed =
            oracle::output_variance(d, oracle::side::bob, ch);
        const auto mc =
            oracle::mc_output_variance(d, oracle::side::bob, ch, 1000000, 2025);
        expect(std::fabs(mc.estimate - closed) <= 5.0 * mc.std_error,
               "maxent variance vs simulation dev/SE",
               std::fabs(mc.estimate - closed) / mc.std_error, 0.0, 5.0);
    }
}

// ---- criterion 5: oracle rate sandwiched by the closed-form bounds ---------

void criterion_5() {
    oracle::quadrature_spec spec;
    spec.rel_tol = 1e-7;
    for (double ratio : {10.0, 100.0, 1000.0}) {
        const wiretap_channel ch = ratio_ch(ratio);
        for (double pdb : {0.0, 20.0, 40.0, 60.0}) {
            const double lo =
                lower_bound_avg(ch, avg_constraint{0.3, from_db(pdb)});
            const double rate = oracle::secrecy_rate(
                oracle::input_distribution::exponential(0.3 * from_db(pdb)),
                ch, spec);
            char what[80];
            std::snprintf(what, sizeof what,
                          "avg rate-lower(ratio=%g, P=%g dB)", ratio, pdb);
            expect(rate >= lo - 1e-4, what, rate - lo, 0.0, 1e-4);
        }
    }
    const wiretap_channel ch = ratio_ch(100.0);
    for (double alpha : {0.2, 0.5, 0.8}) {
        for (double adb : {0.0, 20.0, 40.0, 60.0}) {
            const double A = from_db(adb);
            const double lo =
                lower_bound_peak(ch, make_peak_constraint(1.0, alpha * A, A));
            const maxent_pdf pdf = make_maxent_pdf(alpha, A);
            const double rate = oracle::secrecy_rate(
                oracle::input_distribution::trunc_exp(pdf.c, A), ch, spec);
            char what[80];
            std::snprintf(what, sizeof what,
                          "peak rate-lower(alpha=%g, A=%g dB)", alpha, adb);
            expect(rate >= lo - 1e-4, what, rate - lo, 0.0, 1e-4);
        }
    }
}

// ---- criterion 6: maxentropic input machinery -------------------------------

void criterion_6() {
    // solver residuals against the defining shape relation
    double worst_resid = 0.0;
    for (double A : {1e-2, 1.0, 1e3, 1e6}) {
        for (double alpha = 0.05; alpha < 0.975; alpha += 0.05) {
            const double c = solve_c(alpha, A);
            if (std::fabs(alpha - 0.5) < 1e-9) {
                worst_resid = std::max(worst_resid, std::fabs(c));
                continue;
            }
            const double u = c * A;
            const double resid =
                std::fabs(1.0 / (-std::expm1(-u)) - 1.0 / u - alpha);
            worst_resid = std::max(worst_resid, resid);
        }
    }
    expect(worst_resid <= 1e-12, "solver residual worst", worst_resid, 0.0,
           1e-12);

    // normalization and mean recovered by quadrature
    quad::options opt;
    opt.rel_tol = 1e-11;
    double worst_norm = 0.0, worst_mean = 0.0;
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double A : {1.0, 1e3, 1e6}) {
            const maxent_pdf pdf = make_maxent_pdf(alpha, A);
            const double norm = quad::integrate_or_throw(
                [&](double x) { return pdf.eval(x); }, 0.0, A, opt);
            const double mean = quad::integrate_or_throw(
                [&](double x) { return x * pdf.eval(x); }, 0.0, A, opt);
            worst_norm = std::max(worst_norm, std::fabs(norm - 1.0));
            worst_mean = std::max(worst_mean, std::fabs(mean / A - alpha));
        }
    }
    expect(worst_norm <= 1e-8, "normalization worst", worst_norm, 0.0, 1e-8);
    expect(worst_mean <= 1e-8, "mean recovery worst", worst_mean, 0.0, 1e-8);

    // strict monotonicity of the shape parameter in the mean
    bool monotone = true;
    for (double A : {1.0, 1e4}) {
        double prev = -1e300;
        for (double alpha = 0.05; alpha < 0.975; alpha += 0.05) {
            const double c = solve_c(alpha, A);
            if (!(c > prev)) monotone = false;
            prev = c;
        }
    }
    expect_flag(monotone, "shape parameter strictly increasing");

    // antisymmetry c(1-alpha) = -c(alpha)
    double worst_anti = 0.0;
    for (double A : {1.0, 1e3}) {
        for (double alpha = 0.05; alpha < 0.5; alpha += 0.05) {
            const double c = solve_c(alpha, A);
            const double m = solve_c(1.0 - alpha, A);
            worst_anti = std::max(
                worst_anti,
                std::fabs(c + m) / std::max(1.0, std::fabs(c)));
        }
    }
    expect(worst_anti <= 1e-11, "antisymmetry worst", worst_anti, 0.0, 1e-11);

    // density mirror symmetry
    double worst_sym = 0.0;
    for (double A : {7.0, 1e3}) {
        const maxent_pdf lo = make_maxent_pdf(0.3, A);
        const maxent_pdf hi = make_maxent_pdf(0.7, A);
        for (int i = 0; i <= 20; ++i) {
            const double x = A * i / 20.0;
            worst_sym = std::max(worst_sym,
                                 std::fabs(lo.eval(x) - hi.eval(A - x)) /
                                     lo.eval(x));
        }
    }
    expect(worst_sym <= 1e-10, "mirror symmetry worst", worst_sym, 0.0, 1e-10);
}

// ---- criterion 7: vanishing signal dependence and asymptote agreement ------

void criterion_7() {
    const double vs = 1e-8;
    const wiretap_channel sd = make_channel(
        1.0, 0.01, noise_params{1.0, vs}, noise_params{1.0, vs});
    const wiretap_channel si = ratio_ch(100.0);

    {
        const avg_constraint con{0.3, 100.0};
        const double lim = lower_bound_avg(sd, con);
        const double target = lower_bound_avg_si(si, con);
        const double rel = std::fabs(lim - target) / std::fabs(target);
        expect(rel <= 1e-3, "avg lower vanishing-vs limit rel", rel, 0.0,
               1e-3);
    }
    {
        const avg_constraint con{0.3, 100.0};
        const double lim = upper_bound_avg(sd, con).first;
        const double target = upper_bound_avg_si(si, con).first;
        const double rel = std::fabs(lim - target) / std::fabs(target);
        expect(rel <= 1e-3, "avg upper vanishing-vs limit rel", rel, 0.0,
               1e-3);
    }
    {
        const peak_constraint con = make_peak_constraint(1.0, 3500.0, 1e4);
        const double lim = lower_bound_peak(sd, con);
        const double target = lower_bound_peak_si(si, con);
        const double rel = std::fabs(lim - target) / std::fabs(target);
        expect(rel <= 1e-3, "peak lower vanishing-vs limit rel", rel, 0.0,
               1e-3);
    }
    {
        const peak_constraint con = make_peak_constraint(1.0, 3500.0, 1e4);
        const double lim = upper_bound_peak(sd, con);
        const double target = upper_bound_peak_si(si, con);
        const double rel = std::fabs(lim - target) / std::fabs(target);
        expect(rel <= 1e-3, "peak upper vanishing-vs limit rel", rel, 0.0,
               1e-3);
    }
    {
        const avg_asymptote a = asymptotic_bounds_avg(si);
        const secrecy_bounds b =
            bounds_avg(si, avg_constraint{0.3, from_db(100.0)});
        expect(std::fabs(b.lower_raw - a.lower_inf) <= 1e-3,
               "avg lower at 100 dB vs asymptote", b.lower_raw, a.lower_inf,
               1e-3);
        expect(std::fabs(b.upper_raw - a.upper_inf) <= 1e-3,
               "avg upper at 100 dB vs asymptote", b.upper_raw, a.upper_inf,
               1e-3);
    }
    {
        const peak_asymptote p = asymptotic_bounds_peak(si, 0.5);
        const double A = from_db(80.0);
        const peak_constraint con = make_peak_constraint(1.0, 0.5 * A, A);
        expect(std::fabs(lower_bound_peak(si, con) - *p.lower_inf) <= 1e-3,
               "peak lower at 80 dB vs asymptote", lower_bound_peak(si, con),
               *p.lower_inf, 1e-3);
        expect(std::fabs(upper_bound_peak(si, con) - p.upper_inf) <= 1e-3,
               "peak upper at 80 dB vs asymptote", upper_bound_peak(si, con),
               p.upper_inf, 1e-3);
    }
}

// ---- criterion 8: clamped ordering over the published sweep grids ----------

void criterion_8() {
    double worst = -1e300;
    long points = 0;
    // average-intensity family: intensity, ratio, and dimming sweeps
    for (int i = 0; i < 121; ++i) {
        const double pdb = -20.0 + i;
        for (double ratio : {100.0, 1000.0}) {
            const secrecy_bounds b = bounds_avg(
                ratio_ch(ratio), avg_constraint{0.3, from_db(pdb)});
            worst = std::max(worst, b.lower - b.upper);
            ++points;
        }
    }
    for (int i = 0; i < 39; ++i) {
        const double ratio = 0.5 + 9.5 * i / 38.0;
        const secrecy_bounds b = bounds_avg(
            make_channel(1.0, 1.0 / ratio, noise_params{1.0, 1.5},
                         noise_params{1.0, 1.5}),
            avg_constraint{0.3, from_db(60.0)});
        worst = std::max(worst, b.lower - b.upper);
        ++points;
    }
    for (int i = 0; i < 10; ++i) {
        const double xi = 0.1 + 0.9 * i / 9.0;
        const secrecy_bounds b = bounds_avg(ratio_ch(1000.0),
                                            avg_constraint{xi, from_db(40.0)});
        worst = std::max(worst, b.lower - b.upper);
        ++points;
    }
    // signal-independent variant across the intensity sweep
    for (int i = 0; i < 121; ++i) {
        const double pdb = -20.0 + i;
        const wiretap_channel ch = ratio_ch(1000.0);
        const avg_constraint con{0.3, from_db(pdb)};
        const double lo = std::max(lower_bound_avg_si(ch, con), 0.0);
        const double up = std::max(upper_bound_avg_si(ch, con).first, 0.0);
        worst = std::max(worst, lo - up);
        ++points;
    }
    // peak-intensity family: the three published peak sweeps
    for (int i = 0; i < 61; ++i) {
        const double adb = 20.0 + i;
        const double A = from_db(adb);
        for (double alpha : {0.2, 0.5}) {
            const secrecy_bounds b = bounds_peak(
                ratio_ch(100.0), make_peak_constraint(1.0, alpha * A, A));
            worst = std::max(worst, b.lower - b.upper);
            ++points;
        }
    }
    for (int i = 0; i < 39; ++i) {
        const double ratio = 0.5 + 9.5 * i / 38.0;
        const double A = from_db(60.0);
        const secrecy_bounds b = bounds_peak(
            make_channel(1.0, 1.0 / ratio, noise_params{1.0, 1.5},
                         noise_params{1.0, 1.5}),
            make_peak_constraint(0.3, A / 1.5, A));
        worst = std::max(worst, b.lower - b.upper);
        ++points;
    }
    for (int i = 0; i < 101; ++i) {
        const double adb = -20.0 + i;
        const double A = from_db(adb);
        const secrecy_bounds b = bounds_peak(
            ratio_ch(1000.0), make_peak_constraint(0.3, A, A));
        worst = std::max(worst, b.lower - b.upper);
        ++points;
    }
    std::printf("  checked %ld grid points\n", points);
    expect(worst <= 1e-9, "worst clamped lower-upper", worst, 0.0, 1e-9);
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..8>\n");
        return 2;
    }
    const int n = std::atoi(argv[1]);
    switch (n) {
    case 1: criterion_1(); break;
    case 2: criterion_2(); break;
    case 3: criterion_3(); break;
    case 4: criterion_4(); break;
    case 5: criterion_5(); break;
    case 6: criterion_6(); break;
    case 7: criterion_7(); break;
    case 8: criterion_8(); break;
    default:
        std::fprintf(stderr, "usage: acceptance <criterion 1..8>\n");
        return 2;
    }
    std::printf("[%s] criterion %d\n", g_fails == 0 ? "PASS" : "FAIL", n);
    return g_fails == 0 ? 0 : 1;
}

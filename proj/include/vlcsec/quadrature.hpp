#ifndef VLCSEC_QUADRATURE_HPP
#define VLCSEC_QUADRATURE_HPP

#include <functional>

namespace vlcsec::quad {

struct options {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct result {
    double value;
    double error;        // estimated absolute error
    long evaluations;    // integrand evaluations performed
    bool converged;
};

// Adaptive Gauss-Kronrod (7-15) integration of f over the finite interval
// [a, b].  The worst segment (largest error estimate) is bisected until the
// summed error satisfies max(abs_tol, rel_tol*|value|) or the subdivision
// budget is exhausted.  All nodes are interior, so integrable endpoint
// singularities are permitted.
result integrate(const std::function<double(double)>& f, double a, double b,
                 const options& opt = {});

// As integrate(), but throws numerical_error instead of returning a
// non-converged result.
double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, const options& opt = {});

} // namespace vlcsec::quad

#endif

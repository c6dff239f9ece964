#pragma once

#include "cpa/params.hpp"

#include <stdexcept>

namespace cpa::star {

struct DegenerateSpectrumError : std::domain_error {
    using std::domain_error::domain_error;
};

// Decay exponents of the single-leaf transition semigroup during a phase in
// which the center stays infected. Roots of g^2 - (lambda+alpha+1) g + alpha,
// so gamma1 + gamma2 = lambda + alpha + 1 and gamma1 * gamma2 = alpha, with
// 0 <= gamma1 <= 1 <= gamma2.
struct SpectralPair {
    double gamma1;
    double gamma2;
};

// Throws DegenerateSpectrumError on a repeated root (only lambda=0, alpha=1).
SpectralPair gamma_pair(const Params& params);

// Survival-time exponent 1/gamma1. Returns +infinity when gamma1 = 0
// (alpha = 0: the classical contact process survives exponentially long).
double delta_exponent(const Params& params);

// Probability that the next zero-phase event is a center reinfection
// rather than a leaf state change: lambda / (1 + alpha + lambda).
double lambda_hat(const Params& params);

// u(t): probability an infected-active leaf is still infected-active t into
// a one-phase; v(t): same, starting healthy-active.
double u_prob(const Params& params, double t);
double v_prob(const Params& params, double t);

// Time at which v peaks: (log gamma2 - log gamma1) / (gamma2 - gamma1).
double v_peak_time(const Params& params);

// f(eta) = integral_0^inf (eta u + (1-eta) v) e^{-t} dt - eta, evaluated by
// adaptive quadrature with an analytic bound on the truncated tail.
double f_eta(const Params& params, double eta, double abs_tol = 1e-10);

// Unique root of the strictly decreasing f, located by bisection on [0, 1].
double critical_eta(const Params& params, double tol = 1e-10);

} // namespace cpa::star

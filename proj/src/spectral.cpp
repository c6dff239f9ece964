#include "cpa/spectral.hpp"

#include <cmath>
#include <limits>

namespace cpa::star {

SpectralPair gamma_pair(const Params& params)
{
    params.validate();
    const double s = params.lambda + params.alpha + 1.0;
    const double disc = s * s - 4.0 * params.alpha;
    if (disc < 0.0)
        throw DegenerateSpectrumError("negative discriminant");
    const double root = std::sqrt(disc);
    if (root == 0.0)
        throw DegenerateSpectrumError("repeated eigenvalue gamma1 = gamma2 (lambda = 0, alpha = 1)");
    SpectralPair g;
    g.gamma2 = 0.5 * (s + root);
    // stable small root: gamma1 * gamma2 = alpha
    g.gamma1 = params.alpha > 0.0 ? params.alpha / g.gamma2 : 0.0;
    return g;
}

double delta_exponent(const Params& params)
{
    SpectralPair g = gamma_pair(params);
    if (g.gamma1 <= 0.0)
        return std::numeric_limits<double>::infinity();
    return 1.0 / g.gamma1;
}

double lambda_hat(const Params& params)
{
    params.validate();
    return params.lambda / (1.0 + params.alpha + params.lambda);
}

double u_prob(const Params& params, double t)
{
    if (t < 0.0)
        throw std::invalid_argument("u_prob: t must be >= 0");
    if (t == 0.0)
        return 1.0;
    SpectralPair g = gamma_pair(params);
    const double gap = g.gamma2 - g.gamma1;
    return ((g.gamma2 - 1.0) * std::exp(-g.gamma1 * t) + (1.0 - g.gamma1) * std::exp(-g.gamma2 * t)) / gap;
}

double v_prob(const Params& params, double t)
{
    if (t < 0.0)
        throw std::invalid_argument("v_prob: t must be >= 0");
    if (t == 0.0)
        return 0.0;
    SpectralPair g = gamma_pair(params);
    const double gap = g.gamma2 - g.gamma1;
    return params.lambda * (std::exp(-g.gamma1 * t) - std::exp(-g.gamma2 * t)) / gap;
}

double v_peak_time(const Params& params)
{
    SpectralPair g = gamma_pair(params);
    if (g.gamma1 <= 0.0)
        return std::numeric_limits<double>::infinity();
    return (std::log(g.gamma2) - std::log(g.gamma1)) / (g.gamma2 - g.gamma1);
}

namespace {

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol)
{
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double f_eta(const Params& params, double eta, double abs_tol)
{
    if (eta < 0.0 || eta > 1.0)
        throw std::invalid_argument("f_eta: eta must lie in [0, 1]");
    SpectralPair g = gamma_pair(params);
    const double gap = g.gamma2 - g.gamma1;
    const double cu1 = g.gamma2 - 1.0;
    const double cu2 = 1.0 - g.gamma1;
    const double cv = params.lambda;

    auto integrand = [&](double t) {
        const double e1 = std::exp(-g.gamma1 * t);
        const double e2 = std::exp(-g.gamma2 * t);
        const double u = (cu1 * e1 + cu2 * e2) / gap;
        const double v = cv * (e1 - e2) / gap;
        return (eta * u + (1.0 - eta) * v) * std::exp(-t);
    };

    // both u and v are below max(1, lambda/gap) e^{-gamma1 t}, so the
    // integrand tail beyond T is below C e^{-(1+gamma1) T} / (1+gamma1)
    const double c_tail = std::max(1.0, params.lambda / gap);
    const double decay = 1.0 + g.gamma1;
    double t_cut = std::log(c_tail / (0.1 * abs_tol * decay)) / decay;
    t_cut = std::max(t_cut, 1.0);

    return integrate(integrand, 0.0, t_cut, 0.5 * abs_tol) - eta;
}

double critical_eta(const Params& params, double tol)
{
    double lo = 0.0;
    double hi = 1.0;
    // f(0) >= 0 and f(1) <= 0 for lambda, alpha > 0; bisection suffices
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (f_eta(params, mid, tol * 0.01) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace cpa::star

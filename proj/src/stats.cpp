#include "cpa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpa::stats {

Moments moments(std::span<const double> xs)
{
    Moments m;
    m.count = xs.size();
    if (xs.empty())
        return m;
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    m.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs)
            ss += (x - m.mean) * (x - m.mean);
        m.variance = ss / static_cast<double>(xs.size() - 1);
        m.standard_error = std::sqrt(m.variance / static_cast<double>(xs.size()));
    }
    return m;
}

double quantile(std::vector<double> xs, double q)
{
    if (xs.empty())
        throw std::invalid_argument("quantile of empty sample");
    if (q < 0.0 || q > 1.0)
        throw std::invalid_argument("quantile level must lie in [0, 1]");
    std::sort(xs.begin(), xs.end());
    const double pos = q * static_cast<double>(xs.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return (1.0 - w) * xs[lo] + w * xs[hi];
}

double median(std::vector<double> xs)
{
    return quantile(std::move(xs), 0.5);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit needs two same-length samples of size >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0)
        throw std::invalid_argument("linear_fit: degenerate x sample");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    if (x.size() > 2)
        fit.slope_stderr = std::sqrt(ss_res / (n - 2.0) / sxx);
    return fit;
}

namespace {

// Kolmogorov survival function Q(x) = 2 sum_k (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_q(double x)
{
    if (x <= 0.0)
        return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16)
            break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

} // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x)
            ++ia;
        while (ib < b.size() && b[ib] <= x)
            ++ib;
        d = std::max(d, std::fabs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }

    KsResult res;
    res.statistic = d;
    const double ne = std::sqrt(na * nb / (na + nb));
    res.p_value = kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
    return res;
}

double harmonic_number(int n)
{
    double h = 0.0;
    for (int k = 1; k <= n; ++k)
        h += 1.0 / k;
    return h;
}

} // namespace cpa::stats

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cpa::stats {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;       // sample variance (n - 1)
    double standard_error = 0.0; // of the mean
    std::uint64_t count = 0;
};

Moments moments(std::span<const double> xs);

double median(std::vector<double> xs);          // by value: sorts a copy
double quantile(std::vector<double> xs, double q);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_stderr = 0.0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov with the asymptotic p-value (effective-n
// corrected). Conservative in the presence of ties, which is the safe
// direction for equality checks on discrete data.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

double harmonic_number(int n);

} // namespace cpa::stats

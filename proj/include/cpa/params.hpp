#pragma once

#include <cmath>
#include <stdexcept>

namespace cpa {

// Rate pair of the avoidance contact process: lambda is the per-directed-edge
// infection rate, alpha the per-directed-edge avoidance (deactivation) rate.
// Recovery rate is fixed at 1.
struct Params {
    double lambda = 1.0;
    double alpha = 0.0;

    void validate() const
    {
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw std::invalid_argument("lambda must be finite and >= 0");
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            throw std::invalid_argument("alpha must be finite and >= 0");
    }
};

} // namespace cpa

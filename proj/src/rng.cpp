#include "cpa/rng.hpp"

#include <boost/random/binomial_distribution.hpp>

namespace cpa {

std::int64_t RngStream::binomial(std::int64_t n, double p)
{
    if (n <= 0 || p <= 0.0)
        return 0;
    if (p >= 1.0)
        return n;
    using dist_t = boost::random::binomial_distribution<std::int64_t, double>;
    static thread_local dist_t dist;
    return dist(gen_, dist_t::param_type(n, p));
}

} // namespace cpa

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cpa {

// Counter-based stream derivation: every replica owns an independent
// generator seeded from (master_seed, replica_index), so replicas can run
// on any number of threads and still produce identical results.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t replica_index)
{
    return splitmix64(splitmix64(master_seed) ^ splitmix64(replica_index + 0x61c8864680b583ebULL));
}

class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t replica_index)
        : gen_(derive_stream_seed(master_seed, replica_index))
    {
    }

    explicit RngStream(std::uint64_t raw_seed) : gen_(raw_seed) {}

    // Uniform on [0, 1), 53-bit resolution.
    double uniform()
    {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe as a log() argument.
    double uniform_pos()
    {
        return 1.0 - uniform();
    }

    double exponential(double rate)
    {
        return -std::log(uniform_pos()) / rate;
    }

    bool bernoulli(double p)
    {
        return uniform() < p;
    }

    std::int64_t binomial(std::int64_t n, double p);

    // P(N = k) = (1-p)^k p for k >= 0. Caller must guarantee p > 0.
    std::int64_t shifted_geometric(double p)
    {
        if (p >= 1.0)
            return 0;
        return static_cast<std::int64_t>(std::log(uniform_pos()) / std::log1p(-p));
    }

    std::uint64_t next_u64() { return gen_(); }

    std::mt19937_64& generator() { return gen_; }

private:
    std::mt19937_64 gen_;
};

} // namespace cpa

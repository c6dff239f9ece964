#pragma once

#include "cpa/params.hpp"
#include "cpa/rng.hpp"
#include "cpa/spectral.hpp"
#include "cpa/survival.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace cpa::star {

// Reduced star description: center infection bit plus leaf counts by state.
// 1A/0A = infected/healthy with edges active, 0D = healthy leaf avoiding the
// center (one-phase only), 1D = infected leaf the center is avoiding.
struct StarState {
    bool center_infected = true;
    std::int64_t k1a = 0;
    std::int64_t k0a = 0;
    std::int64_t k0d = 0;
    std::int64_t k1d = 0;

    std::int64_t leaf_total() const { return k1a + k0a + k0d + k1d; }
    bool extinct() const { return !center_infected && k1a == 0 && k1d == 0; }
};

// Distribution parameters of one Z-chain transition at phase length t:
// Z' = (Bin(z, u(t)) + Bin(n-z, v(t)) - N)^+ with N shifted-geometric.
struct ZChainLaw {
    std::int64_t x_trials;
    double x_prob; // u(t)
    std::int64_t y_trials;
    double y_prob; // v(t)
    double n_success; // lambda_hat; N has P(N=k) = (1-p)^k p, k >= 0
};

ZChainLaw zchain_law(std::int64_t z, std::int64_t n, const Params& params, double t);

constexpr std::uint64_t kNoPhaseCap = std::numeric_limits<std::uint64_t>::max();

// Embedded count of infected-active leaves at successive one-phase starts,
// ignoring the 1D state. n is the number of leaves. Parameters with
// lambda = 0 degenerate the zero-phase geometric; that case is treated as
// the zero-phase removing every infected leaf (the center is never
// reinfected), so the chain dies after its first phase.
class ZChain {
public:
    ZChain(std::int64_t n_leaves, const Params& params);

    std::int64_t leaves() const { return n_; }

    // One transition; z = 0 is absorbing.
    std::int64_t step(std::int64_t z, RngStream& rng) const;

    // Phases until absorption starting from Z0 = n. Returns max_phases when
    // the cap is hit first (callers treat that as censoring).
    std::uint64_t run(RngStream& rng, std::uint64_t max_phases = kNoPhaseCap) const;

    // Advances every entry one step on shared (T, N) draws and a shared
    // uniform field per leaf slot; used to exhibit the monotone coupling
    // that the reduced chain admits.
    void step_shared(std::span<std::int64_t> zs, RngStream& rng) const;

private:
    std::int64_t n_;
    Params params_;
    double gamma1_, gamma2_, inv_gap_;
    double cu1_, cu2_; // u(t) = (cu1 e^{-g1 t} + cu2 e^{-g2 t}) / gap
    double lambda_hat_;
    double inv_log_1m_lhat_; // 1 / log(1 - lambda_hat), 0 when lambda_hat = 0
};

// Full embedded chain of (1A, 1D) leaf counts at one-phase starts, including
// the in-phase recovery/reinfection bookkeeping of 1D leaves. n is the number
// of leaves; tau counts one-phases until no infected-active leaf remains at a
// one-phase start.
class KLChain {
public:
    KLChain(std::int64_t n_leaves, const Params& params);

    std::uint64_t run(RngStream& rng, std::uint64_t max_phases = kNoPhaseCap) const;

private:
    std::int64_t n_;
    Params params_;
    double gamma1_, gamma2_, inv_gap_;
    double cu1_, cu2_;
    double lambda_hat_;
    double p_to_1d_; // alpha / (1 + alpha)
};

struct ReducedStarResult {
    SurvivalRecord record;
    std::uint64_t one_phase_count = 0;
};

// Event-by-event continuous-time simulation of the reduced star dynamics
// from the all-infected, all-active state. n_vertices counts the center,
// so there are n_vertices - 1 leaves.
ReducedStarResult reduced_star_run(int n_vertices, const Params& params, RngStream& rng,
                                   double t_max = std::numeric_limits<double>::infinity());

} // namespace cpa::star

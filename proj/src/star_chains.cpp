#include "cpa/star_chains.hpp"

#include <cmath>
#include <stdexcept>

namespace cpa::star {

ZChainLaw zchain_law(std::int64_t z, std::int64_t n, const Params& params, double t)
{
    if (z < 0 || z > n)
        throw std::invalid_argument("zchain_law: need 0 <= z <= n");
    if (t < 0.0)
        throw std::invalid_argument("zchain_law: t must be >= 0");
    ZChainLaw law;
    law.x_trials = z;
    law.x_prob = u_prob(params, t);
    law.y_trials = n - z;
    law.y_prob = v_prob(params, t);
    law.n_success = lambda_hat(params);
    return law;
}

ZChain::ZChain(std::int64_t n_leaves, const Params& params) : n_(n_leaves), params_(params)
{
    if (n_leaves < 1)
        throw std::invalid_argument("ZChain: need at least one leaf");
    SpectralPair g = gamma_pair(params);
    gamma1_ = g.gamma1;
    gamma2_ = g.gamma2;
    inv_gap_ = 1.0 / (g.gamma2 - g.gamma1);
    cu1_ = g.gamma2 - 1.0;
    cu2_ = 1.0 - g.gamma1;
    lambda_hat_ = lambda_hat(params);
    inv_log_1m_lhat_ = lambda_hat_ > 0.0 ? 1.0 / std::log1p(-lambda_hat_) : 0.0;
}

std::int64_t ZChain::step(std::int64_t z, RngStream& rng) const
{
    if (z <= 0)
        return 0; // absorbing
    if (lambda_hat_ <= 0.0) {
        // lambda = 0: the center is never reinfected, the zero-phase
        // outlasts every infected leaf
        return 0;
    }
    const double log_w = std::log(rng.uniform_pos()); // T = -log_w ~ Exp(1)
    const double e1 = std::exp(gamma1_ * log_w);
    const double e2 = std::exp(gamma2_ * log_w);
    const double u = (cu1_ * e1 + cu2_ * e2) * inv_gap_;
    const double v = params_.lambda * (e1 - e2) * inv_gap_;

    const std::int64_t x = rng.binomial(z, u);
    const std::int64_t y = rng.binomial(n_ - z, v);
    const double n_drawn = std::log(rng.uniform_pos()) * inv_log_1m_lhat_;
    const double survivors = static_cast<double>(x + y) - n_drawn;
    if (survivors <= 0.0)
        return 0;
    return x + y - static_cast<std::int64_t>(n_drawn);
}

std::uint64_t ZChain::run(RngStream& rng, std::uint64_t max_phases) const
{
    std::int64_t z = n_;
    std::uint64_t phases = 0;
    while (z > 0 && phases < max_phases) {
        ++phases;
        z = step(z, rng);
    }
    return phases;
}

void ZChain::step_shared(std::span<std::int64_t> zs, RngStream& rng) const
{
    if (lambda_hat_ <= 0.0) {
        for (auto& z : zs)
            z = 0;
        return;
    }
    const double log_w = std::log(rng.uniform_pos());
    const double e1 = std::exp(gamma1_ * log_w);
    const double e2 = std::exp(gamma2_ * log_w);
    const double u = (cu1_ * e1 + cu2_ * e2) * inv_gap_;
    const double v = params_.lambda * (e1 - e2) * inv_gap_;
    const double n_drawn = std::log(rng.uniform_pos()) * inv_log_1m_lhat_;

    // Leaf slot i succeeds below u when it started infected-active and below
    // v otherwise; v <= u makes the transition monotone in the start set.
    std::vector<double> coin(static_cast<std::size_t>(n_));
    for (auto& c : coin)
        c = rng.uniform();

    for (auto& z : zs) {
        if (z <= 0) {
            z = 0;
            continue;
        }
        std::int64_t hits = 0;
        for (std::int64_t i = 0; i < n_; ++i)
            hits += coin[static_cast<std::size_t>(i)] < (i < z ? u : v) ? 1 : 0;
        double survivors = static_cast<double>(hits) - n_drawn;
        z = survivors <= 0.0 ? 0 : hits - static_cast<std::int64_t>(n_drawn);
    }
}

KLChain::KLChain(std::int64_t n_leaves, const Params& params) : n_(n_leaves), params_(params)
{
    if (n_leaves < 1)
        throw std::invalid_argument("KLChain: need at least one leaf");
    SpectralPair g = gamma_pair(params);
    gamma1_ = g.gamma1;
    gamma2_ = g.gamma2;
    inv_gap_ = 1.0 / (g.gamma2 - g.gamma1);
    cu1_ = g.gamma2 - 1.0;
    cu2_ = 1.0 - g.gamma1;
    lambda_hat_ = lambda_hat(params);
    p_to_1d_ = params.alpha / (1.0 + params.alpha);
}

std::uint64_t KLChain::run(RngStream& rng, std::uint64_t max_phases) const
{
    const double event_rate = params_.lambda + params_.alpha + 1.0;
    std::int64_t k = n_; // 1A leaves at the current one-phase start
    std::int64_t l = 0;  // 1D leaves at the current one-phase start
    std::uint64_t phases = 0;
    std::vector<double> new_1d_times;

    while (k > 0 && phases < max_phases) {
        ++phases;

        // one-phase of length T: 1A thins by u(T), 0A seeds by v(T); each 1D
        // leaf recovers at rate 1 and, once 0A, can be reinfected
        const double log_w = std::log(rng.uniform_pos());
        const double t_phase = -log_w;
        const double e1 = std::exp(gamma1_ * log_w);
        const double e2 = std::exp(gamma2_ * log_w);
        const double u = (cu1_ * e1 + cu2_ * e2) * inv_gap_;
        const double v = params_.lambda * (e1 - e2) * inv_gap_;

        std::int64_t k_tilde = rng.binomial(k, u) + rng.binomial(n_ - k - l, v);
        std::int64_t l_tilde = 0;
        for (std::int64_t i = 0; i < l; ++i) {
            const double sigma = rng.exponential(1.0);
            if (sigma >= t_phase) {
                ++l_tilde;
            } else if (rng.bernoulli(v_prob(params_, t_phase - sigma))) {
                ++k_tilde;
            }
        }

        if (k_tilde == 0) {
            k = 0;
            break; // no active infected leaf: the center stays healthy
        }

        // zero-phase: each event is a center reinfection with probability
        // lambda_hat, otherwise a 1A departure that lands in 1D with
        // probability alpha/(1+alpha)
        std::int64_t m = k_tilde;
        double t_zero = 0.0;
        bool reinfected = false;
        new_1d_times.clear();
        while (m > 0) {
            t_zero += rng.exponential(event_rate * static_cast<double>(m));
            if (rng.bernoulli(lambda_hat_)) {
                reinfected = true;
                break;
            }
            --m;
            if (rng.bernoulli(p_to_1d_))
                new_1d_times.push_back(t_zero);
        }
        if (!reinfected) {
            k = 0;
            break;
        }

        std::int64_t l_next = rng.binomial(l_tilde, std::exp(-t_zero));
        for (double ti : new_1d_times)
            if (rng.bernoulli(std::exp(-(t_zero - ti))))
                ++l_next;
        k = m;
        l = l_next;
    }
    return phases;
}

ReducedStarResult reduced_star_run(int n_vertices, const Params& params, RngStream& rng, double t_max)
{
    if (n_vertices < 2)
        throw std::invalid_argument("reduced_star_run: need n >= 2");
    params.validate();

    StarState s;
    s.center_infected = true;
    s.k1a = n_vertices - 1;

    ReducedStarResult result;
    result.one_phase_count = 1;
    double t = 0.0;
    std::uint64_t events = 0;

    enum class Move : std::uint8_t { LeafInfect, Leaf1ARecover, LeafAvoid, Leaf1DRecover, CenterFlip };

    for (;;) {
        double r_infect, r_avoid, r_center;
        const double r_1a = static_cast<double>(s.k1a);
        const double r_1d = static_cast<double>(s.k1d);
        if (s.center_infected) {
            r_infect = params.lambda * static_cast<double>(s.k0a);
            r_avoid = params.alpha * static_cast<double>(s.k0a);
            r_center = 1.0;
        } else {
            r_infect = 0.0;
            r_avoid = params.alpha * r_1a;
            r_center = params.lambda * r_1a;
        }
        const double total = r_infect + r_1a + r_avoid + r_1d + r_center;
        if (total <= 0.0) {
            // all healthy and center healthy: extinct at the last event time
            break;
        }
        const double dt = -std::log(rng.uniform_pos()) / total;
        if (t + dt > t_max) {
            result.record.outcome = Outcome::AliveAtCutoff;
            result.record.censor_time = t_max;
            result.record.event_count = events;
            return result;
        }
        t += dt;
        ++events;

        double r = rng.uniform() * total;
        Move mv;
        if (r < r_infect)
            mv = Move::LeafInfect;
        else if (r < r_infect + r_1a)
            mv = Move::Leaf1ARecover;
        else if (r < r_infect + r_1a + r_avoid)
            mv = Move::LeafAvoid;
        else if (r < r_infect + r_1a + r_avoid + r_1d)
            mv = Move::Leaf1DRecover;
        else
            mv = Move::CenterFlip;

        switch (mv) {
        case Move::LeafInfect:
            --s.k0a;
            ++s.k1a;
            break;
        case Move::Leaf1ARecover:
            --s.k1a;
            ++s.k0a;
            break;
        case Move::LeafAvoid:
            if (s.center_infected) {
                --s.k0a;
                ++s.k0d;
            } else {
                --s.k1a;
                ++s.k1d;
            }
            break;
        case Move::Leaf1DRecover:
            --s.k1d;
            ++s.k0a;
            break;
        case Move::CenterFlip:
            if (s.center_infected) {
                s.center_infected = false;
                s.k0a += s.k0d; // leaves stop avoiding a healthy center
                s.k0d = 0;
            } else {
                s.center_infected = true;
                ++result.one_phase_count;
            }
            break;
        }

        if (s.extinct())
            break;
    }

    result.record.outcome = Outcome::Extinct;
    result.record.extinction_time = t;
    result.record.event_count = events;
    return result;
}

} // namespace cpa::star

#pragma once

// Stochastic discrete dynamical systems: each node adopts its computed update
// only with an activation propensity p_up (rising edges) or a degradation
// propensity p_down (falling edges), independently per node and per step.
//
// The closed-form one-step Derrida value mixes normalized c-sensitivities
// with four propensity coefficients gamma_1..gamma_4 and splits per node on
// self-regulation.  Two of the coefficients (the agreeing-targets cases)
// treat the shared target value as equally likely to be 0 or 1; that makes
// the closed form exact whenever no node reads its own state and each node
// has p_up == p_down, and an approximation otherwise.  The enumeration and
// Monte Carlo oracles compute the true expectation in all cases, so the
// difference is observable and is pinned down in the tests.
//
// The two trajectories of a Derrida pair use independent propensity draws.
// Sharing draws between them would change the answer: a NOT gate reading its
// own state with both propensities 1/2 diverges at m = 1 with probability
// 1/2 under independent draws, always under a shared draw, and 3/4 according
// to the closed form, so all three are told apart by the tests.

#include <canal/derrida.hpp>
#include <canal/rational.hpp>
#include <canal/rng.hpp>
#include <canal/sensitivity.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace canal {

struct SddsSpec {
    NetworkSpec net;
    std::vector<Rational> p_up;    // per-node activation propensity
    std::vector<Rational> p_down;  // per-node degradation propensity
};

inline std::vector<std::string> validate_sdds(const SddsSpec& spec) {
    std::vector<std::string> warnings = validate_network(spec.net);
    int N = spec.net.N;
    if (static_cast<int>(spec.p_up.size()) != N || static_cast<int>(spec.p_down.size()) != N)
        throw std::invalid_argument("propensity vectors must have one entry per node");
    for (int i = 0; i < N; ++i)
        if (spec.p_up[i] < 0 || spec.p_up[i] > 1 || spec.p_down[i] < 0 || spec.p_down[i] > 1)
            throw std::invalid_argument("node " + std::to_string(i + 1) +
                                        ": propensities must lie in [0, 1]");
    return warnings;
}

struct PropensityGammas {
    Rational g1;  // targets disagree, node perturbed
    Rational g2;  // targets agree, node perturbed
    Rational g3;  // targets disagree, node unperturbed
    Rational g4;  // targets agree, node unperturbed
};

inline PropensityGammas gammas(const Rational& p_up, const Rational& p_down) {
    if (p_up < 0 || p_up > 1 || p_down < 0 || p_down > 1)
        throw std::invalid_argument("propensities must lie in [0, 1]");
    Rational half_sum = (p_up + p_down) / 2;
    PropensityGammas g;
    g.g1 = 1 - half_sum + p_up * p_down;
    g.g2 = 1 - half_sum;
    g.g3 = half_sum;
    g.g4 = half_sum - (p_up * p_up + p_down * p_down) / 2;
    return g;
}

/// Closed-form one-step Derrida value of an SDDS.  Self-regulating nodes use
/// the shifted-sensitivity branch (a perturbed self guarantees at least one
/// flipped input, hence s_{c+1}); all other nodes use the plain branch.
inline Rational sdds_derrida(const SddsSpec& spec, int m, SensitivityCache& cache) {
    int N = spec.net.N;
    if (m < 0 || m > N) throw std::out_of_range("m must lie in [0, N]");
    Rational D = 0;
    for (int i = 0; i < N; ++i) {
        const NetworkNode& node = spec.net.nodes[i];
        int n = node.function.arity();
        const auto& s = cache.normalized(node.function);
        PropensityGammas g = gammas(spec.p_up[i], spec.p_down[i]);
        bool self = std::find(node.inputs.begin(), node.inputs.end(), i + 1) != node.inputs.end();
        int rest = self ? n - 1 : n;  // inputs drawn from the other N-1 nodes
        Rational perturbed = 0, unperturbed = 0;
        if (m >= 1)
            for (int c = std::max(0, (m - 1) + rest - (N - 1)); c <= std::min(m - 1, rest); ++c) {
                const Rational& sc = self ? s[c + 1] : s[c];
                perturbed += hypergeometric_pmf(N - 1, m - 1, rest, c) *
                             (g.g1 * sc + g.g2 * (1 - sc));
            }
        for (int c = std::max(0, m + rest - (N - 1)); c <= std::min(m, rest); ++c)
            unperturbed += hypergeometric_pmf(N - 1, m, rest, c) *
                           (g.g3 * s[c] + g.g4 * (1 - s[c]));
        D += Rational(m, N) * perturbed + Rational(N - m, N) * unperturbed;
    }
    return D;
}

/// One synchronous stochastic step of a packed state (requires N <= 64).
/// Propensity denominators must fit in 64 bits.
inline std::uint64_t sdds_step(const SddsSpec& spec, std::uint64_t state, Rng& rng) {
    std::uint64_t next = state;
    for (int i = 0; i < spec.net.N; ++i) {
        bool current = (state >> i) & 1u;
        bool target = spec.net.nodes[i].function.test(node_input_row(spec.net.nodes[i], state));
        if (target == current) continue;
        const Rational& p = target ? spec.p_up[i] : spec.p_down[i];
        auto num = numerator(p).convert_to<std::uint64_t>();
        auto den = denominator(p).convert_to<std::uint64_t>();
        if (rng.next_bernoulli(num, den)) next ^= 1ull << i;
    }
    return next;
}

/// Exact expected one-step Derrida value of the stochastic process, by
/// enumerating every (state, flip set) pair and summing each node's exact
/// divergence probability.  Work is 2^N * C(N, m) * N; requires N <= 16.
/// Unlike the deterministic case, m = 0 need not give 0: independent draws
/// can split a pair of identical states.
inline Rational sdds_derrida_exhaustive(const SddsSpec& spec, int m,
                                        std::uint64_t work_cap = kDerridaWorkCap) {
    int N = spec.net.N;
    if (N > 16) throw WorkCapError("exhaustive SDDS Derrida supports at most 16 nodes");
    if (m < 0 || m > N) throw std::out_of_range("m must lie in [0, N]");
    BigInt work = (BigInt(1) << N) * binomial(N, m) * N;
    if (work > work_cap)
        throw WorkCapError("exhaustive SDDS Derrida work " + work.str() + " exceeds cap " +
                           std::to_string(work_cap));
    std::uint64_t states = 1ull << N;

    // P(next bit = 1) for one node given its current bit and target.
    auto adopt_one = [&](int i, bool current, bool target) -> Rational {
        if (target == current) return Rational(current ? 1 : 0);
        if (target) return spec.p_up[i];       // rising: adopt 1 w.p. p_up
        return 1 - spec.p_down[i];             // falling: keep 1 w.p. 1 - p_down
    };

    Rational total = 0;
    std::uint64_t mask = m == 0 ? 0 : (1ull << m) - 1;
    while (true) {
        for (std::uint64_t x = 0; x < states; ++x) {
            std::uint64_t y = x ^ mask;
            for (int i = 0; i < N; ++i) {
                const NetworkNode& node = spec.net.nodes[i];
                bool fx = node.function.test(node_input_row(node, x));
                bool fy = node.function.test(node_input_row(node, y));
                Rational px = adopt_one(i, (x >> i) & 1u, fx);
                Rational py = adopt_one(i, (y >> i) & 1u, fy);
                total += px * (1 - py) + (1 - px) * py;
            }
        }
        if (mask == 0) break;
        std::uint64_t c = mask & (~mask + 1);
        std::uint64_t r = mask + c;
        std::uint64_t next_mask = (((r ^ mask) >> 2) / c) | r;
        if (next_mask >= states) break;
        mask = next_mask;
    }
    return total / (Rational(BigInt(states) * binomial(N, m)));
}

/// Monte Carlo estimate of the SDDS Derrida value (requires N <= 64).
/// Each sampled pair takes one step per trajectory with independent
/// propensity draws; deterministic per seed, one stream per sample.
inline MonteCarloEstimate sdds_derrida_monte_carlo(const SddsSpec& spec, int m,
                                                   std::uint64_t samples, std::uint64_t seed) {
    int N = spec.net.N;
    if (N > 64) throw std::invalid_argument("Monte Carlo supports at most 64 nodes");
    if (m < 0 || m > N) throw std::out_of_range("m must lie in [0, N]");
    if (samples == 0) throw std::invalid_argument("sample count must be positive");
    struct Coin {
        std::uint64_t num, den;
    };
    std::vector<Coin> up(N), down(N);
    for (int i = 0; i < N; ++i) {
        up[i] = {numerator(spec.p_up[i]).convert_to<std::uint64_t>(),
                 denominator(spec.p_up[i]).convert_to<std::uint64_t>()};
        down[i] = {numerator(spec.p_down[i]).convert_to<std::uint64_t>(),
                   denominator(spec.p_down[i]).convert_to<std::uint64_t>()};
    }
    auto step = [&](std::uint64_t state, Rng& rng) {
        std::uint64_t next = state;
        for (int i = 0; i < N; ++i) {
            bool current = (state >> i) & 1u;
            bool target = spec.net.nodes[i].function.test(node_input_row(spec.net.nodes[i], state));
            if (target == current) continue;
            const Coin& coin = target ? up[i] : down[i];
            if (rng.next_bernoulli(coin.num, coin.den)) next ^= 1ull << i;
        }
        return next;
    };
    double sum = 0, sum_sq = 0;
    for (std::uint64_t k = 0; k < samples; ++k) {
        Rng rng = Rng::stream(seed, k);
        std::uint64_t x = N == 64 ? rng.next_u64() : rng.next_below(1ull << N);
        std::uint64_t mask = 0;
        for (int b : rng.next_subset(N, m)) mask |= 1ull << b;
        auto d = static_cast<double>(std::popcount(step(x, rng) ^ step(x ^ mask, rng)));
        sum += d;
        sum_sq += d * d;
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.estimate = sum / static_cast<double>(samples);
    double var = sum_sq / static_cast<double>(samples) - est.estimate * est.estimate;
    if (var < 0) var = 0;
    est.std_error = std::sqrt(var / static_cast<double>(samples));
    return est;
}

}  // namespace canal

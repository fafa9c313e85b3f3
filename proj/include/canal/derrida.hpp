#pragma once

// One-step Derrida values of synchronous Boolean networks.
//
// D(F, m) is the expected Hamming distance between the successors of a
// uniform state x and a uniform perturbation of x in exactly m coordinates.
// For a fixed wiring it decomposes exactly per node: the overlap between the
// perturbed set and a node's input set is hypergeometric, and conditioned on
// overlap size c the flip probability of that node is its normalized
// c-sensitivity.  The exhaustive oracle averages over every (state, flip
// set) pair and must agree with the closed form to the last digit; the Monte
// Carlo estimator samples the same average.

#include <canal/rational.hpp>
#include <canal/rng.hpp>
#include <canal/sensitivity.hpp>
#include <canal/truth_table.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace canal {

struct NetworkNode {
    std::vector<int> inputs;  // 1-based node indices, ordered: inputs[0] is x1
    BooleanFunction function;
};

struct NetworkSpec {
    int N = 0;
    std::vector<NetworkNode> nodes;
};

/// Structural validation (throws) plus essentiality warnings (returned).
inline std::vector<std::string> validate_network(const NetworkSpec& net) {
    if (net.N < 1) throw std::invalid_argument("network must have at least one node");
    if (static_cast<int>(net.nodes.size()) != net.N)
        throw std::invalid_argument("node count does not match N");
    std::vector<std::string> warnings;
    for (int i = 0; i < net.N; ++i) {
        const NetworkNode& node = net.nodes[i];
        if (node.function.arity() != static_cast<int>(node.inputs.size()))
            throw std::invalid_argument("node " + std::to_string(i + 1) +
                                        ": function arity does not match input count");
        for (int j : node.inputs)
            if (j < 1 || j > net.N)
                throw std::invalid_argument("node " + std::to_string(i + 1) +
                                            ": input index out of range");
        std::vector<int> sorted = node.inputs;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("node " + std::to_string(i + 1) +
                                        ": duplicate input index");
        for (std::size_t l = 0; l < node.inputs.size(); ++l)
            if (!is_essential(node.function, static_cast<int>(l) + 1))
                warnings.push_back("node " + std::to_string(i + 1) +
                                   " is not essential in declared input " +
                                   std::to_string(node.inputs[l]));
    }
    return warnings;
}

/// Normalized-sensitivity vectors keyed by truth table, shared across nodes
/// and across Derrida evaluations.
class SensitivityCache {
public:
    const std::vector<Rational>& normalized(const BooleanFunction& f) {
        auto it = cache_.find(f);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(f, sensitivity_profile(f).s).first->second;
    }

private:
    std::map<BooleanFunction, std::vector<Rational>> cache_;
};

/// Hypergeometric PMF: probability that a uniform m-subset of N elements
/// meets a fixed n-subset in exactly c elements.  Zero outside the support.
inline Rational hypergeometric_pmf(int N, int m, int n, int c) {
    if (N < 0 || m < 0 || n < 0 || m > N || n > N)
        throw std::out_of_range("hypergeometric parameters require 0 <= m, n <= N");
    if (c < 0 || c > n || c > m) return Rational(0);
    return Rational(binomial(m, c) * binomial(N - m, n - c), binomial(N, n));
}

struct DerridaPoint {
    int m = 0;
    Rational value;
};
using DerridaCurve = std::vector<DerridaPoint>;

/// Exact one-step Derrida value via the per-node hypergeometric mixture.
inline Rational derrida_value(const NetworkSpec& net, int m, SensitivityCache& cache) {
    if (m < 0 || m > net.N) throw std::out_of_range("m must lie in [0, N]");
    Rational D = 0;
    for (const NetworkNode& node : net.nodes) {
        int n = node.function.arity();
        const auto& s = cache.normalized(node.function);
        for (int c = std::max(0, m + n - net.N); c <= std::min(m, n); ++c)
            D += hypergeometric_pmf(net.N, m, n, c) * s[c];
    }
    return D;
}

inline DerridaCurve derrida_curve(const NetworkSpec& net, int m_lo, int m_hi,
                                  SensitivityCache& cache) {
    DerridaCurve curve;
    for (int m = m_lo; m <= m_hi; ++m) curve.push_back({m, derrida_value(net, m, cache)});
    return curve;
}

/// Homogeneous network shortcut: N nodes, each with arity n and normalized
/// sensitivities s[0..n]:  D(F, m) = N * sum_c H_{N,m,n}(c) * s[c].
inline Rational derrida_homogeneous(int N, const std::vector<Rational>& s, int n, int m) {
    if (n > N) throw std::invalid_argument("node arity exceeds network size");
    if (m < 0 || m > N) throw std::out_of_range("m must lie in [0, N]");
    if (static_cast<int>(s.size()) != n + 1)
        throw std::invalid_argument("sensitivity table must have n + 1 entries");
    Rational D = 0;
    for (int c = std::max(0, m + n - N); c <= std::min(m, n); ++c)
        D += hypergeometric_pmf(N, m, n, c) * s[c];
    return Rational(N) * D;
}

/// Row index of node i's function under global state `state`
/// (bit j-1 of `state` holds node j).
inline std::uint64_t node_input_row(const NetworkNode& node, std::uint64_t state) {
    std::uint64_t row = 0;
    for (int j : node.inputs) row = (row << 1) | ((state >> (j - 1)) & 1u);
    return row;
}

/// Synchronous update of a packed state (requires N <= 64).
inline std::uint64_t network_step(const NetworkSpec& net, std::uint64_t state) {
    std::uint64_t next = 0;
    for (int i = 0; i < net.N; ++i)
        if (net.nodes[i].function.test(node_input_row(net.nodes[i], state)))
            next |= 1ull << i;
    return next;
}

inline constexpr std::uint64_t kDerridaWorkCap = 1ull << 34;

/// Exact Derrida value by full enumeration of states and flip sets.
/// Work is 2^N * C(N, m) * N, capped; requires N <= 16.
inline Rational derrida_exhaustive(const NetworkSpec& net, int m,
                                   std::uint64_t work_cap = kDerridaWorkCap) {
    if (net.N > 16) throw WorkCapError("exhaustive Derrida supports at most 16 nodes");
    if (m < 0 || m > net.N) throw std::out_of_range("m must lie in [0, N]");
    BigInt work = (BigInt(1) << net.N) * binomial(net.N, m) * net.N;
    if (work > work_cap)
        throw WorkCapError("exhaustive Derrida work " + work.str() + " exceeds cap " +
                           std::to_string(work_cap));
    if (m == 0) return Rational(0);
    std::uint64_t states = 1ull << net.N;
    std::vector<std::uint32_t> next(states);
    for (std::uint64_t x = 0; x < states; ++x)
        next[x] = static_cast<std::uint32_t>(network_step(net, x));

    BigInt total = 0;
    // Enumerate all m-subsets of N bits with Gosper's hack.
    std::uint64_t mask = (1ull << m) - 1;
    while (mask < states) {
        std::uint64_t sub = 0;
        for (std::uint64_t x = 0; x < states; ++x)
            sub += std::popcount(next[x] ^ next[x ^ mask]);
        total += sub;
        std::uint64_t c = mask & (~mask + 1);
        std::uint64_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return Rational(total, BigInt(states) * binomial(net.N, m));
}

/// Monte Carlo estimate of D(F, m) (requires N <= 64).  Deterministic per
/// seed; one generator stream per sample.
inline MonteCarloEstimate derrida_monte_carlo(const NetworkSpec& net, int m,
                                              std::uint64_t samples, std::uint64_t seed) {
    if (net.N > 64) throw std::invalid_argument("Monte Carlo supports at most 64 nodes");
    if (m < 0 || m > net.N) throw std::out_of_range("m must lie in [0, N]");
    if (samples == 0) throw std::invalid_argument("sample count must be positive");
    double sum = 0, sum_sq = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Rng rng = Rng::stream(seed, i);
        std::uint64_t x = net.N == 64 ? rng.next_u64() : rng.next_below(1ull << net.N);
        std::uint64_t mask = 0;
        for (int b : rng.next_subset(net.N, m)) mask |= 1ull << b;
        auto d = static_cast<double>(
            std::popcount(network_step(net, x) ^ network_step(net, x ^ mask)));
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

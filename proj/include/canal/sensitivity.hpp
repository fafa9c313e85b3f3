#pragma once

// Activities and c-sensitivities.
//
// The activity of x_i is the probability that flipping x_i flips f(x) for a
// uniform x.  The (unnormalized) c-sensitivity S_c sums, over all ways to
// flip exactly c inputs at once, the probability that the output flips;
// s_c = S_c / C(n, c) normalizes by the number of flip sets.  S_0 = 0 by
// definition.  Enumeration over all rows and flip sets is the ground truth;
// the closed forms below (expected activities of k-canalizing functions,
// exact activities from the layer structure, nested-canalizing expectation
// values) are validated against it in the test suite.

#include <canal/canalization.hpp>
#include <canal/rational.hpp>
#include <canal/rng.hpp>
#include <canal/truth_table.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace canal {

class WorkCapError : public std::runtime_error {
public:
    explicit WorkCapError(const std::string& what) : std::runtime_error(what) {}
};

using ActivityVector = std::vector<Rational>;

/// Number of rows on which f and g disagree.
inline std::uint64_t difference_count(const BooleanFunction& f, const BooleanFunction& g) {
    if (f.arity() != g.arity()) throw std::invalid_argument("arity mismatch");
    std::uint64_t d = 0;
    for (std::size_t w = 0; w < f.words().size(); ++w)
        d += std::popcount(f.words()[w] ^ g.words()[w]);
    return d;
}

/// Activities (alpha_1 ... alpha_n) by enumeration.
inline ActivityVector activity_vector(const BooleanFunction& f) {
    ActivityVector alpha;
    alpha.reserve(f.arity());
    BigInt rows = BigInt(1) << f.arity();
    for (int i = 1; i <= f.arity(); ++i)
        alpha.emplace_back(BigInt(f.flip_difference_count(i)), rows);
    return alpha;
}

inline constexpr std::uint64_t kSensitivityWorkCap = 1ull << 32;

/// Exact S_c by enumerating every c-subset of inputs.  Work is
/// 2^n * C(n, c) row comparisons, capped by `work_cap`.
inline Rational c_sensitivity(const BooleanFunction& f, int c,
                              std::uint64_t work_cap = kSensitivityWorkCap) {
    int n = f.arity();
    if (c < 0 || c > n) throw std::out_of_range("c must lie in [0, arity]");
    if (c == 0) return Rational(0);
    BigInt work = (BigInt(1) << n) * binomial(n, c);
    if (work > work_cap)
        throw WorkCapError("c-sensitivity enumeration work " + work.str() +
                           " exceeds cap " + std::to_string(work_cap));
    std::vector<int> idx(c);
    for (int i = 0; i < c; ++i) idx[i] = i;  // variable indices 0-based
    BigInt total = 0;
    while (true) {
        std::uint64_t mask = 0;
        for (int i : idx) mask |= 1ull << (n - 1 - i);
        total += difference_count(f, f.xor_permuted(mask));
        // next combination in lexicographic order
        int p = c - 1;
        while (p >= 0 && idx[p] == n - c + p) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q < c; ++q) idx[q] = idx[q - 1] + 1;
    }
    return Rational(total, BigInt(1) << n);
}

struct SensitivityProfile {
    std::vector<Rational> S;  // S[c] for c = 0..n
    std::vector<Rational> s;  // normalized: s[c] = S[c] / C(n, c)
};

inline SensitivityProfile sensitivity_profile(const BooleanFunction& f,
                                              std::uint64_t work_cap = kSensitivityWorkCap) {
    SensitivityProfile p;
    int n = f.arity();
    p.S.reserve(n + 1);
    p.s.reserve(n + 1);
    for (int c = 0; c <= n; ++c) {
        p.S.push_back(c_sensitivity(f, c, work_cap));
        p.s.push_back(p.S.back() / Rational(binomial(n, c)));
    }
    return p;
}

struct MonteCarloEstimate {
    double estimate = 0;
    double std_error = 0;
    std::uint64_t samples = 0;
};

/// Monte Carlo fallback for S_c when enumeration exceeds the work cap.
inline MonteCarloEstimate c_sensitivity_monte_carlo(const BooleanFunction& f, int c,
                                                    std::uint64_t samples, std::uint64_t seed) {
    int n = f.arity();
    if (c < 0 || c > n) throw std::out_of_range("c must lie in [0, arity]");
    if (samples == 0) throw std::invalid_argument("sample count must be positive");
    double sum = 0, sum_sq = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Rng rng = Rng::stream(seed, i);
        std::uint64_t x = rng.next_below(1ull << n);
        std::uint64_t mask = 0;
        for (int v : rng.next_subset(n, c)) mask |= 1ull << (n - 1 - v);
        double d = f.test(x) != f.test(x ^ mask) ? 1.0 : 0.0;
        sum += d;
        sum_sq += d * d;
    }
    MonteCarloEstimate est;
    est.samples = samples;
    double mean = sum / static_cast<double>(samples);
    est.estimate = mean * static_cast<double>(binomial(n, c));  // estimate of S_c
    double var = sum_sq / static_cast<double>(samples) - mean * mean;
    if (var < 0) var = 0;
    est.std_error = std::sqrt(var / static_cast<double>(samples)) *
                    static_cast<double>(binomial(n, c));
    return est;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Expected activity of x_j over k-canalizing functions in n variables
/// (canalizing variables first, in canalizing order):
///   j < k : 1/2^j
///   j = k : (1/2^(k-1)) * 2^(2^(n-k)-1) / (2^(2^(n-k)) - 1)
///   j > k : (1/2^k)     * 2^(2^(n-k)-1) / (2^(2^(n-k)) - 1)
inline Rational expected_activity_k_canalizing(int n, int k, int j) {
    if (n < 1 || n > BooleanFunction::kMaxArity) throw std::out_of_range("bad arity");
    if (k < 1 || k > n) throw std::out_of_range("k must lie in [1, n]");
    if (j < 1 || j > n) throw std::out_of_range("j must lie in [1, n]");
    if (j < k) return Rational(1, pow2(j));
    std::uint64_t q = static_cast<std::uint64_t>(n - k);
    Rational tail(pow2((1ull << q) - 1), pow2(1ull << q) - 1);
    return j == k ? tail / Rational(pow2(k - 1)) : tail / Rational(pow2(k));
}

/// Weighted activity sum giving S_c for a canalizing function whose
/// activities are listed in canalizing order:
///   S_c = sum_{j=1}^{n-c+1} C(n-j, c-1) * alpha_j
inline Rational c_sensitivity_from_activities(const ActivityVector& alpha, int c) {
    int n = static_cast<int>(alpha.size());
    if (c < 1 || c > n) throw std::out_of_range("c must lie in [1, n]");
    Rational S = 0;
    for (int j = 1; j <= n - c + 1; ++j) S += Rational(binomial(n - j, c - 1)) * alpha[j - 1];
    return S;
}

/// Expected activities of nested canalizing functions:
/// (1/2, 1/4, ..., 1/2^(n-1), 1/2^(n-1)).
inline ActivityVector ncf_expected_activities(int n) {
    if (n < 1) throw std::out_of_range("arity must be >= 1");
    ActivityVector a;
    for (int j = 1; j < n; ++j) a.emplace_back(1, pow2(j));
    a.emplace_back(1, pow2(n - 1));
    return a;
}

/// Terminating Gauss hypergeometric series 2F1(a, b; c; z) for integer
/// b <= 0 (the series stops before any vanishing denominator is reached).
inline Rational gauss_2f1_terminating(const Rational& a, long b, long c, const Rational& z) {
    if (b > 0) throw std::invalid_argument("series requires a non-positive integer b");
    Rational sum = 1, term = 1;
    for (long t = 0; t < -b; ++t) {
        long denom = c + t;
        if (denom == 0)
            throw std::invalid_argument("series hits a vanishing denominator before terminating");
        term *= (a + t) * Rational(b + t) / (Rational(denom) * Rational(t + 1)) * z;
        sum += term;
    }
    return sum;
}

/// Raw series value (c / 2n) * 2F1(1, c - n; 1 - n; 1/2).  Matches the
/// expectation of s_c over nested canalizing functions for c >= 2; at c = 1
/// it under-counts the doubled activity of the innermost variable.
inline Rational ncf_series_normalized_c_sensitivity(int n, int c) {
    if (n < 2) throw std::out_of_range("arity must be >= 2");
    if (c < 1 || c > n) throw std::out_of_range("c must lie in [1, n]");
    Rational f = gauss_2f1_terminating(Rational(1), c - n, 1 - n, Rational(1, 2));
    return Rational(c, 2 * n) * f;
}

/// Expected normalized c-sensitivity of nested canalizing functions.
/// Exact for all c; equals the weighted-sum formula applied to
/// ncf_expected_activities (in particular 1/n at c = 1, 1/2 at c = n).
inline Rational ncf_expected_normalized_c_sensitivity(int n, int c) {
    if (n < 2) throw std::out_of_range("arity must be >= 2");
    if (c < 1 || c > n) throw std::out_of_range("c must lie in [1, n]");
    if (c == 1) return Rational(1, n);
    return ncf_series_normalized_c_sensitivity(n, c);
}

/// Recursion intermediates for the layered activity formula; entry i of each
/// vector belongs to layer i + 1.
struct ActivityRecursion {
    std::vector<Rational> phi;  // size r + 1, last two entries are zero
    std::vector<Rational> psi;  // size r
};

struct LayeredActivities {
    ActivityVector alpha;  // canalizing variables (in order), then core variables
    ActivityRecursion recursion;
};

/// Exact activities of a canalizing function with layer sizes k_1..k_r and v
/// core rows differing from the last canalized output.  v = 2^(n-k) encodes
/// a constant residual (no core; remaining variables are non-essential), and
/// the depth-n case uses v = 1.  The value reported for core variables is
/// the average over all cores with v off rows; individual core variables of
/// a specific function may deviate (their mean over that class does not).
inline LayeredActivities exact_activities_layered(int n, const std::vector<int>& layer_sizes,
                                                  std::uint64_t v) {
    if (n < 1 || n > BooleanFunction::kMaxArity) throw std::out_of_range("bad arity");
    if (layer_sizes.empty()) throw std::invalid_argument("at least one layer is required");
    int k = 0;
    for (int ks : layer_sizes) {
        if (ks < 1) throw std::invalid_argument("layer sizes must be positive");
        k += ks;
    }
    if (k > n) throw std::invalid_argument("layer sizes exceed arity");
    int r = static_cast<int>(layer_sizes.size());
    std::uint64_t q = static_cast<std::uint64_t>(n - k);
    std::uint64_t core_rows = 1ull << q;
    if (v < 1 || v > core_rows) throw std::out_of_range("v must lie in [1, 2^(n-k)]");

    LayeredActivities out;
    auto& phi = out.recursion.phi;
    auto& psi = out.recursion.psi;

    psi.assign(r, Rational(0));
    psi[r - 1] = Rational(BigInt(v), pow2(q));
    for (int i = r - 2; i >= 0; --i) psi[i] = Rational(1) - psi[i + 1];

    std::vector<int> prefix(r + 1, 0);  // prefix[i] = k_1 + ... + k_i
    for (int i = 1; i <= r; ++i) prefix[i] = prefix[i - 1] + layer_sizes[i - 1];

    phi.assign(r + 1, Rational(0));  // phi[i] is the value for layer i + 1
    for (int i = r - 1; i >= 1; --i) {
        Rational sum = 0;
        for (int s = 0; s < layer_sizes[i]; ++s)
            sum += Rational(1, pow2(static_cast<std::uint64_t>(prefix[i] + s)));
        phi[i - 1] = (i + 1 <= r ? phi[i + 1] : Rational(0)) + sum;
    }

    Rational half_pow_k1(1, pow2(static_cast<std::uint64_t>(k - 1)));
    for (int layer = 1; layer <= r; ++layer)
        for (int s = 0; s < layer_sizes[layer - 1]; ++s)
            out.alpha.push_back(phi[layer - 1] + psi[layer - 1] * half_pow_k1);

    if (q >= 1) {
        Rational noncanal(BigInt(v) * (core_rows - v),
                          pow2(static_cast<std::uint64_t>(n - 1)) * (pow2(q) - 1));
        for (std::uint64_t j = 0; j < q; ++j) out.alpha.push_back(noncanal);
    }
    return out;
}

/// Enumerated activities reordered to match a structure's canalizing order
/// (canalizing variables first, then the remaining variables ascending).
inline ActivityVector activities_in_canalizing_order(const BooleanFunction& f,
                                                     const CanalizingStructure& st) {
    ActivityVector raw = activity_vector(f);
    ActivityVector out;
    out.reserve(raw.size());
    for (int var : st.order) out.push_back(raw[var - 1]);
    for (int var = 1; var <= f.arity(); ++var)
        if (st.layer_of[var - 1] == 0) out.push_back(raw[var - 1]);
    return out;
}

}  // namespace canal

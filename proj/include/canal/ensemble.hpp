#pragma once

// Ensembles of canalizing functions: deterministic builders that assemble a
// function from its layer structure, random generators for the measures the
// closed-form expectations are derived under, core-table censuses, Spearman
// rank correlation, and the sweep drivers that tabulate Derrida values per
// structural class.
//
// Sampling measure: uniform over layered representations, i.e. uniform
// canalizing subset in ascending order, independent fair coins for the
// canalizing inputs a_i and canalized outputs b_i, and a uniform residual
// table subject to the stated exclusion (not constantly b_k for depth >= k,
// non-canalizing and non-constant for exact depth k).  This is the measure
// under which the expected-activity formulas hold; it is not uniform over
// the resulting function set.

#include <canal/canalization.hpp>
#include <canal/derrida.hpp>
#include <canal/rational.hpp>
#include <canal/rng.hpp>
#include <canal/sensitivity.hpp>
#include <canal/truth_table.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace canal {

struct LayerSpec {
    int n = 0;
    std::vector<int> layer_sizes;
    std::optional<std::uint64_t> v;  // core off rows; omit for a full cascade
};

namespace detail {

inline void check_layer_sizes(int n, const std::vector<int>& layer_sizes, bool core_present) {
    int k = 0;
    for (int part : layer_sizes) {
        if (part < 1) throw std::invalid_argument("layer sizes must be positive");
        k += part;
    }
    if (k < 1 || k > n) throw std::invalid_argument("layer sizes must sum to a depth in [1, n]");
    if (!core_present && k == n && n >= 2 && layer_sizes.back() < 2)
        throw std::invalid_argument("a full cascade needs a last layer of size >= 2");
    if (core_present && n - k < 2)
        throw std::invalid_argument("a core needs at least two residual variables");
}

}  // namespace detail

/// Assemble the function a CanalizingStructure describes: scan the canalizing
/// variables in order, emit b_i at the first one holding its canalizing
/// input, and fall through to the core (or to the constant 1 - b_k) on rows
/// where none does.  Inverse of decompose for structures in canonical form
/// (variables ascending within each layer).
inline BooleanFunction build_from_structure(const CanalizingStructure& st) {
    int n = st.arity;
    int k = st.depth;
    if (n < 1 || n > BooleanFunction::kMaxArity) throw std::invalid_argument("bad arity");
    if (static_cast<int>(st.order.size()) != k || static_cast<int>(st.inputs.size()) != k ||
        static_cast<int>(st.outputs.size()) != k)
        throw std::invalid_argument("order/inputs/outputs must each have one entry per depth");
    if (k == 0) {
        // The structure of a non-canalizing function is just its core; a
        // constant's structure does not determine the constant and cannot be
        // rebuilt.
        if (!st.layer_sizes.empty())
            throw std::invalid_argument("layer sizes must sum to the depth");
        if (!st.core)
            throw std::invalid_argument("a depth-0 structure without a core is not reconstructible");
        if (st.core->arity() != n)
            throw std::invalid_argument("core arity must equal the number of residual variables");
        if (st.core->is_constant() || !find_canalizing_variables(*st.core).empty())
            throw std::invalid_argument("core must be non-constant and non-canalizing");
        return *st.core;
    }
    detail::check_layer_sizes(n, st.layer_sizes, st.core.has_value());
    int layered = 0;
    for (int part : st.layer_sizes) layered += part;
    if (layered != k) throw std::invalid_argument("layer sizes must sum to the depth");

    std::vector<bool> canalizing(n, false);
    for (int var : st.order) {
        if (var < 1 || var > n) throw std::invalid_argument("variable index out of range");
        if (canalizing[var - 1]) throw std::invalid_argument("repeated variable in order");
        canalizing[var - 1] = true;
    }
    int pos = 0;
    for (std::size_t layer = 0; layer < st.layer_sizes.size(); ++layer) {
        int first = st.outputs[pos];
        for (int s = 0; s < st.layer_sizes[layer]; ++s, ++pos) {
            if (st.outputs[pos] != first)
                throw std::invalid_argument("canalized outputs must agree within a layer");
            if (st.inputs[pos] != 0 && st.inputs[pos] != 1)
                throw std::invalid_argument("canalizing inputs must be bits");
        }
        if (layer > 0 && first == st.outputs[pos - st.layer_sizes[layer] - 1])
            throw std::invalid_argument("canalized outputs must alternate between layers");
    }
    if (st.core) {
        if (st.core->arity() != n - k)
            throw std::invalid_argument("core arity must equal the number of residual variables");
        if (st.core->is_constant() || !find_canalizing_variables(*st.core).empty())
            throw std::invalid_argument("core must be non-constant and non-canalizing");
    }

    // Residual variables keep their ascending order.
    std::vector<int> rest;
    for (int var = 1; var <= n; ++var)
        if (!canalizing[var - 1]) rest.push_back(var);

    BooleanFunction f(n);
    std::uint64_t rows = f.row_count();
    for (std::uint64_t t = 0; t < rows; ++t) {
        int value = -1;
        for (int i = 0; i < k; ++i) {
            int bit = static_cast<int>((t >> (n - st.order[i])) & 1u);
            if (bit == st.inputs[i]) {
                value = st.outputs[i];
                break;
            }
        }
        if (value < 0) {
            if (st.core) {
                std::uint64_t row = 0;
                for (int var : rest) row = (row << 1) | ((t >> (n - var)) & 1u);
                value = st.core->test(row) ? 1 : 0;
            } else {
                value = 1 - st.outputs.back();
            }
        }
        if (value) f.set(t, true);
    }
    return f;
}

/// Off-row counts v for which a valid core exists: a table with exactly one
/// row differing from a constant is canalizing in every variable, so only
/// 2 <= v <= 2^q - 2 are realizable (and none at all for q < 2).
inline std::vector<std::uint64_t> buildable_core_off_counts(int q) {
    std::vector<std::uint64_t> vs;
    if (q >= 2)
        for (std::uint64_t v = 2; v + 2 <= (std::uint64_t{1} << q); ++v) vs.push_back(v);
    return vs;
}

/// Canonical structure for a layer specification: identity order, all
/// canalizing inputs 0, canalized outputs alternating from 0.  When a core
/// is needed (depth < n), a table with the requested off-row count is found
/// by seeded search among weight-class tables.
inline CanalizingStructure make_canonical_structure(const LayerSpec& spec,
                                                    std::uint64_t seed = 0) {
    int n = spec.n;
    int k = 0;
    for (int part : spec.layer_sizes) k += part;
    bool core_present = k < n;
    detail::check_layer_sizes(n, spec.layer_sizes, core_present);
    int q = n - k;

    CanalizingStructure st;
    st.arity = n;
    st.depth = k;
    st.layer_sizes = spec.layer_sizes;
    st.layer_of.assign(n, 0);
    int b = 0, pos = 0;
    for (std::size_t layer = 0; layer < spec.layer_sizes.size(); ++layer) {
        for (int s = 0; s < spec.layer_sizes[layer]; ++s, ++pos) {
            st.order.push_back(pos + 1);
            st.inputs.push_back(0);
            st.outputs.push_back(b);
            st.layer_of[pos] = static_cast<int>(layer) + 1;
        }
        b = 1 - b;
    }
    int b_last = st.outputs.back();

    if (!core_present) {
        if (spec.v && *spec.v != 1)
            throw std::invalid_argument("a full cascade has no core; v must be 1 or omitted");
        st.core_off_count = 1;
        return st;
    }
    if (!spec.v) throw std::invalid_argument("a core off-row count v is required when depth < n");
    std::uint64_t v = *spec.v;
    std::uint64_t q_rows = std::uint64_t{1} << q;
    if (v < 2 || v + 2 > q_rows)
        throw std::invalid_argument("no non-canalizing core exists with v = " + std::to_string(v));

    Rng rng(seed ^ 0x636f7265u);  // decouple from caller seeds reused elsewhere
    for (int attempt = 0; attempt < 20000; ++attempt) {
        BooleanFunction core = BooleanFunction::constant(q, b_last == 1);
        for (int row : rng.next_subset(static_cast<int>(q_rows), static_cast<int>(v)))
            core.set(static_cast<std::uint64_t>(row), b_last == 0);
        if (find_canalizing_variables(core).empty()) {
            st.core = core;
            st.core_off_count = v;
            return st;
        }
    }
    throw std::runtime_error("no non-canalizing core found (search cap reached)");
}

inline BooleanFunction build_canonical(const LayerSpec& spec, std::uint64_t seed = 0) {
    return build_from_structure(make_canonical_structure(spec, seed));
}

/// All compositions of k (ordered positive parts), lexicographic.
inline std::vector<std::vector<int>> compositions(int k) {
    if (k < 1) throw std::invalid_argument("compositions need k >= 1");
    std::vector<std::vector<int>> out;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int left) -> void {
        if (left == 0) {
            out.push_back(parts);
            return;
        }
        for (int part = 1; part <= left; ++part) {
            parts.push_back(part);
            self(self, left - part);
            parts.pop_back();
        }
    };
    rec(rec, k);
    return out;
}

/// Layer structures of full cascades on n variables: compositions of n with
/// last part >= 2 (the lone exception being n = 1).
inline std::vector<std::vector<int>> ncf_layer_compositions(int n) {
    if (n < 1) throw std::invalid_argument("arity must be positive");
    if (n == 1) return {{1}};
    std::vector<std::vector<int>> out;
    for (auto& comp : compositions(n))
        if (comp.back() >= 2) out.push_back(comp);
    return out;
}

/// A sampled layered representation: the function plus the canalizing
/// variables by drawn position.  Position matters for the expected-activity
/// statements, and decompose need not recover the drawn order (extra
/// canalization in the residual, ties within layers), so the draw keeps it.
struct DrawnRepresentation {
    BooleanFunction f;
    std::vector<int> order;
};

/// Uniform layered representation of depth >= k: uniform canalizing subset in
/// ascending order, fair-coin a_i and b_i, residual table uniform over all
/// tables except the constant b_k (which would erase the last variable).
/// Position-wise statistics are unaffected by the ascending canonicalization
/// because a_i, b_i and the residual are drawn independently of the subset.
inline DrawnRepresentation random_k_canalizing_representation(int n, int k, Rng& rng) {
    if (n < 1 || n > BooleanFunction::kMaxArity) throw std::invalid_argument("bad arity");
    if (k < 1 || k > n) throw std::invalid_argument("depth must lie in [1, n]");
    int q = n - k;
    std::vector<int> order;
    for (int var : rng.next_subset(n, k)) order.push_back(var + 1);
    std::vector<int> a(k), b(k);
    for (int i = 0; i < k; ++i) {
        a[i] = rng.next_bit();
        b[i] = rng.next_bit();
    }
    BooleanFunction g(q);
    if (q == 0) {
        g = BooleanFunction::constant(0, b[k - 1] == 0);
    } else {
        BooleanFunction forbidden = BooleanFunction::constant(q, b[k - 1] == 1);
        do {
            for (std::uint64_t row = 0; row < g.row_count(); ++row)
                g.set(row, rng.next_bit() != 0);
        } while (g == forbidden);
    }

    std::vector<bool> canalizing(n, false);
    for (int var : order) canalizing[var - 1] = true;
    std::vector<int> rest;
    for (int var = 1; var <= n; ++var)
        if (!canalizing[var - 1]) rest.push_back(var);

    BooleanFunction f(n);
    for (std::uint64_t t = 0; t < f.row_count(); ++t) {
        int value = -1;
        for (int i = 0; i < k; ++i) {
            if (static_cast<int>((t >> (n - order[i])) & 1u) == a[i]) {
                value = b[i];
                break;
            }
        }
        if (value < 0) {
            std::uint64_t row = 0;
            for (int var : rest) row = (row << 1) | ((t >> (n - var)) & 1u);
            value = g.test(row) ? 1 : 0;
        }
        if (value) f.set(t, true);
    }
    return {std::move(f), std::move(order)};
}

inline BooleanFunction random_k_canalizing(int n, int k, Rng& rng) {
    return random_k_canalizing_representation(n, k, rng).f;
}

inline BooleanFunction random_k_canalizing(int n, int k, std::uint64_t seed) {
    Rng rng(seed);
    return random_k_canalizing(n, k, rng);
}

/// Exact canalizing depth k: like random_k_canalizing but the residual is
/// resampled until non-canalizing and non-constant; k = 0 rejection-samples
/// whole functions.  No such function exists when n - k = 1.
inline BooleanFunction random_exact_depth(int n, int k, Rng& rng) {
    if (n < 1 || n > BooleanFunction::kMaxArity) throw std::invalid_argument("bad arity");
    if (k < 0 || k > n) throw std::invalid_argument("depth must lie in [0, n]");
    if (n - k == 1)
        throw std::invalid_argument(
            "no function has exact depth n - 1: a single residual variable "
            "is itself canalizing");
    if (k == n) return random_k_canalizing(n, n, rng);
    int q = n - k;
    auto random_ncnc = [&rng](int arity) {
        BooleanFunction g(arity);
        while (true) {
            for (std::uint64_t row = 0; row < g.row_count(); ++row)
                g.set(row, rng.next_bit() != 0);
            if (!g.is_constant() && find_canalizing_variables(g).empty()) return g;
        }
    };
    if (k == 0) return random_ncnc(n);

    BooleanFunction g = random_ncnc(q);
    std::vector<int> order;
    for (int var : rng.next_subset(n, k)) order.push_back(var + 1);
    CanalizingStructure st;
    st.arity = n;
    st.depth = k;
    st.order = order;
    st.layer_of.assign(n, 0);
    int prev = -1;
    for (int i = 0; i < k; ++i) {
        st.inputs.push_back(rng.next_bit());
        int bi = rng.next_bit();
        st.outputs.push_back(bi);
        if (bi == prev)
            ++st.layer_sizes.back();
        else
            st.layer_sizes.push_back(1);
        prev = bi;
    }
    int pos = 0;
    for (std::size_t layer = 0; layer < st.layer_sizes.size(); ++layer)
        for (int s = 0; s < st.layer_sizes[layer]; ++s, ++pos)
            st.layer_of[st.order[pos] - 1] = static_cast<int>(layer) + 1;
    st.core = g;
    int b_last = st.outputs.back();
    std::uint64_t w = g.weight();
    st.core_off_count = b_last == 0 ? w : g.row_count() - w;
    return build_from_structure(st);
}

inline BooleanFunction random_exact_depth(int n, int k, std::uint64_t seed) {
    Rng rng(seed);
    return random_exact_depth(n, k, rng);
}

/// Full cascade with the given layer structure: identity order, fair-coin
/// canalizing inputs, fair-coin initial output, outputs alternating between
/// layers.
inline BooleanFunction random_ncf_with_layers(int n, const std::vector<int>& layer_sizes,
                                              Rng& rng) {
    detail::check_layer_sizes(n, layer_sizes, false);
    int k = 0;
    for (int part : layer_sizes) k += part;
    if (k != n) throw std::invalid_argument("layer sizes must sum to n for a full cascade");
    CanalizingStructure st;
    st.arity = n;
    st.depth = n;
    st.layer_sizes = layer_sizes;
    st.layer_of.assign(n, 0);
    int b = rng.next_bit(), pos = 0;
    for (std::size_t layer = 0; layer < layer_sizes.size(); ++layer) {
        for (int s = 0; s < layer_sizes[layer]; ++s, ++pos) {
            st.order.push_back(pos + 1);
            st.inputs.push_back(rng.next_bit());
            st.outputs.push_back(b);
            st.layer_of[pos] = static_cast<int>(layer) + 1;
        }
        b = 1 - b;
    }
    st.core_off_count = 1;
    return build_from_structure(st);
}

inline BooleanFunction random_ncf_with_layers(int n, const std::vector<int>& layer_sizes,
                                              std::uint64_t seed) {
    Rng rng(seed);
    return random_ncf_with_layers(n, layer_sizes, rng);
}

/// Hamming weight of the canonical cascade (inputs 0, first output 0).  Row
/// blocks canalized by position i hold 2^(n-i) rows of value b_i; the last
/// row holds 1 - b_n.
inline std::uint64_t ncf_weight_of_layers(int n, const std::vector<int>& layer_sizes) {
    detail::check_layer_sizes(n, layer_sizes, false);
    int k = 0;
    for (int part : layer_sizes) k += part;
    if (k != n) throw std::invalid_argument("layer sizes must sum to n for a full cascade");
    std::uint64_t w = 0;
    int b = 0, i = 0;
    for (std::size_t layer = 0; layer < layer_sizes.size(); ++layer) {
        for (int s = 0; s < layer_sizes[layer]; ++s, ++i)
            if (b) w += std::uint64_t{1} << (n - i - 1);
        b = 1 - b;
    }
    // b now holds the alternation's next output, which equals 1 - b_n, and
    // that is exactly the final row's value.
    w += static_cast<std::uint64_t>(b);
    return w;
}

struct SpearmanResult {
    double value = 0;                // rank correlation in [-1, 1]
    Rational rank_covariance;        // exact numerator; its sign is exact
};

/// Spearman rank correlation with average ranks for ties.  No value when
/// either side has zero rank variance.
inline std::optional<SpearmanResult> spearman(const std::vector<Rational>& xs,
                                              const std::vector<Rational>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("length mismatch");
    std::size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("need at least two points");
    auto ranks = [n](const std::vector<Rational>& vals) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<Rational> r(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && vals[idx[j + 1]] == vals[idx[i]]) ++j;
            Rational avg = Rational(BigInt(i + 1) + BigInt(j + 1), 2);
            for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
            i = j + 1;
        }
        return r;
    };
    std::vector<Rational> rx = ranks(xs), ry = ranks(ys);
    Rational mean(BigInt(n) + 1, 2);  // average ranks always sum to n(n+1)/2
    Rational num = 0, ax = 0, ay = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Rational dx = rx[i] - mean, dy = ry[i] - mean;
        num += dx * dy;
        ax += dx * dx;
        ay += dy * dy;
    }
    if (ax == 0 || ay == 0) return std::nullopt;
    SpearmanResult res;
    res.rank_covariance = num;
    double dn = numerator(num).convert_to<double>() / denominator(num).convert_to<double>();
    double dax = numerator(ax).convert_to<double>() / denominator(ax).convert_to<double>();
    double day = numerator(ay).convert_to<double>() / denominator(ay).convert_to<double>();
    res.value = dn / std::sqrt(dax * day);
    return res;
}

/// Census of valid core tables (non-canalizing, non-constant) on q variables:
/// counts by Hamming weight plus the average single-flip sensitivity.
struct CoreCensus {
    int q = 0;
    bool sampled = false;
    std::uint64_t total = 0;               // tables counted (accepted, if sampled)
    std::vector<std::uint64_t> by_weight;  // index 0..2^q
    Rational mean_s1;                      // average sum of activities over the census
};

inline CoreCensus exhaustive_core_census(int q) {
    if (q < 2 || q > 4) throw std::invalid_argument("exhaustive census supports q in [2, 4]");
    CoreCensus census;
    census.q = q;
    std::uint64_t rows = std::uint64_t{1} << q;
    census.by_weight.assign(rows + 1, 0);
    Rational s1_sum = 0;
    std::uint64_t tables = std::uint64_t{1} << rows;
    std::uint64_t full = rows == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows) - 1;
    for (std::uint64_t bits = 0; bits < tables; ++bits) {
        if (bits == 0 || bits == full) continue;
        BooleanFunction g = BooleanFunction::from_words(q, {bits});
        if (!find_canalizing_variables(g).empty()) continue;
        ++census.total;
        ++census.by_weight[g.weight()];
        Rational s1 = 0;
        for (int j = 1; j <= q; ++j) s1 += Rational(g.flip_difference_count(j), rows);
        s1_sum += s1;
    }
    census.mean_s1 = s1_sum / census.total;
    return census;
}

inline CoreCensus sampled_core_census(int q, std::uint64_t samples, std::uint64_t seed) {
    if (q < 2 || q > 6) throw std::invalid_argument("sampled census supports q in [2, 6]");
    if (samples == 0) throw std::invalid_argument("sample count must be positive");
    CoreCensus census;
    census.q = q;
    census.sampled = true;
    std::uint64_t rows = std::uint64_t{1} << q;
    census.by_weight.assign(rows + 1, 0);
    std::uint64_t full = rows == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows) - 1;
    Rational s1_sum = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Rng rng = Rng::stream(seed, i);
        std::uint64_t bits = rng.next_u64() & full;
        if (bits == 0 || bits == full) continue;
        BooleanFunction g = BooleanFunction::from_words(q, {bits});
        if (!find_canalizing_variables(g).empty()) continue;
        ++census.total;
        ++census.by_weight[g.weight()];
        Rational s1 = 0;
        for (int j = 1; j <= q; ++j) s1 += Rational(g.flip_difference_count(j), rows);
        s1_sum += s1;
    }
    if (census.total == 0) throw std::runtime_error("census rejected every sample");
    census.mean_s1 = s1_sum / census.total;
    return census;
}

/// Expected sum of activities under the depth >= k representation measure.
inline Rational expected_s1_k_canalizing(int n, int k) {
    Rational sum = 0;
    for (int j = 1; j <= n; ++j) sum += expected_activity_k_canalizing(n, k, j);
    return sum;
}

/// Expected sum of activities under the exact-depth-k measure, averaging the
/// layered-activity formula over all 2^k output patterns (layers are runs of
/// equal outputs) and over the census's core weight distribution; the core
/// variables contribute the census's mean sensitivity scaled by 2^-k.
inline Rational expected_s1_exact_depth(int n, int k, const CoreCensus& census) {
    if (k < 0 || k > n) throw std::invalid_argument("depth must lie in [0, n]");
    int q = n - k;
    if (census.q != q) throw std::invalid_argument("census arity does not match n - k");
    if (k == 0) return census.mean_s1;
    std::uint64_t rows = std::uint64_t{1} << q;
    Rational canal_sum = 0;
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k); ++pattern) {
        // b_i is bit k-i of the pattern, so b_1 is the high bit.
        std::vector<int> layers;
        int prev = -1;
        for (int i = 0; i < k; ++i) {
            int bi = static_cast<int>((pattern >> (k - 1 - i)) & 1u);
            if (bi == prev)
                ++layers.back();
            else
                layers.push_back(1);
            prev = bi;
        }
        int b_last = static_cast<int>(pattern & 1u);
        for (std::uint64_t w = 2; w + 2 <= rows; ++w) {
            if (census.by_weight[w] == 0) continue;
            std::uint64_t v = b_last == 0 ? w : rows - w;
            LayeredActivities lay = exact_activities_layered(n, layers, v);
            Rational part = 0;
            for (int j = 0; j < k; ++j) part += lay.alpha[j];
            canal_sum += Rational(census.by_weight[w]) * part;
        }
    }
    Rational pow2k = Rational(BigInt(1) << k);
    return canal_sum / (pow2k * census.total) + census.mean_s1 / pow2k;
}

struct DepthComparisonRow {
    int n = 0;
    int k = 0;
    bool min_depth = false;  // true: depth >= k measure; false: exact depth k
    Rational d1;             // one-step Derrida value at m = 1 (equals mean S_1)
    bool approx = false;     // census sampled rather than exhaustive
};

/// Minimum-depth versus exact-depth ensembles at m = 1.  Core censuses are
/// exhaustive for n - k <= 4 and sampled beyond (flagged approx).
inline std::vector<DepthComparisonRow> sweep_depth_comparison(
    const std::vector<std::pair<int, int>>& nk_pairs, std::uint64_t samples,
    std::uint64_t seed) {
    std::vector<DepthComparisonRow> rows;
    std::uint64_t row_index = 0;
    for (auto [n, k] : nk_pairs) {
        int q = n - k;
        if (k < 1 || q < 2)
            throw std::invalid_argument("depth comparison needs k >= 1 and n - k >= 2");
        DepthComparisonRow min_row;
        min_row.n = n;
        min_row.k = k;
        min_row.min_depth = true;
        min_row.d1 = expected_s1_k_canalizing(n, k);
        rows.push_back(min_row);

        CoreCensus census = q <= 4 ? exhaustive_core_census(q)
                                   : sampled_core_census(q, samples, seed + row_index);
        DepthComparisonRow exact_row;
        exact_row.n = n;
        exact_row.k = k;
        exact_row.min_depth = false;
        exact_row.d1 = expected_s1_exact_depth(n, k, census);
        exact_row.approx = census.sampled;
        rows.push_back(exact_row);
        ++row_index;
    }
    return rows;
}

struct SweepRow {
    int n = 0;
    int k = 0;
    int r = 0;   // layer count
    int k1 = 0;  // first layer size
    std::vector<int> layer_sizes;
    std::uint64_t v = 1;
    std::uint64_t w = 0;  // Hamming weight of the class representative
    Rational abs_bias;
    std::vector<Rational> D;  // Derrida values, one per requested m
};

/// Normalized c-sensitivities of a full cascade with the given layers, from
/// the exact activity vector through the weighted-sum identity (exact for
/// full cascades).  Index c runs 0..n.
inline std::vector<Rational> ncf_normalized_sensitivities(int n,
                                                          const std::vector<int>& layers) {
    LayeredActivities lay = exact_activities_layered(n, layers, 1);
    std::vector<Rational> s(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int c = 1; c <= n; ++c)
        s[c] = c_sensitivity_from_activities(lay.alpha, c) / Rational(binomial(n, c));
    return s;
}

/// One row per (layer structure, initial output) class of full cascades on n
/// inputs, with Derrida values for every m in [m_lo, m_hi] in a homogeneous
/// N-node network.  Rows are sorted by Hamming weight.
inline std::vector<SweepRow> sweep_ncf(int N, int n, int m_lo, int m_hi) {
    if (m_lo < 0 || m_hi > N || m_lo > m_hi) throw std::out_of_range("bad m range");
    std::vector<SweepRow> rows;
    std::uint64_t full = std::uint64_t{1} << n;
    for (const auto& comp : ncf_layer_compositions(n)) {
        std::vector<Rational> s = ncf_normalized_sensitivities(n, comp);
        std::uint64_t w0 = ncf_weight_of_layers(n, comp);
        for (int flip : {0, 1}) {
            SweepRow row;
            row.n = n;
            row.k = n;
            row.r = static_cast<int>(comp.size());
            row.k1 = comp[0];
            row.layer_sizes = comp;
            row.v = 1;
            row.w = flip ? full - w0 : w0;
            BigInt diff = BigInt(2) * row.w - full;
            row.abs_bias = Rational(diff < 0 ? -diff : diff, full);
            for (int m = m_lo; m <= m_hi; ++m)
                row.D.push_back(derrida_homogeneous(N, s, n, m));
            rows.push_back(std::move(row));
        }
    }
    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.w < b.w; });
    return rows;
}

/// One row per (layer structure of depth k, core off count v) class on n
/// inputs, reporting the class-average D(F,1) (equal to the class-average
/// S_1, independent of network size).  Canalizing-variable activities are
/// exact per function; core-variable activities enter as the class mean.
inline std::vector<SweepRow> sweep_layered(int n, int k) {
    int q = n - k;
    if (k < 1 || q < 2)
        throw std::invalid_argument("layered sweep needs k >= 1 and n - k >= 2");
    std::vector<SweepRow> rows;
    std::uint64_t q_rows = std::uint64_t{1} << q;
    std::uint64_t full = std::uint64_t{1} << n;
    for (const auto& comp : compositions(k)) {
        for (std::uint64_t v : buildable_core_off_counts(q)) {
            LayeredActivities lay = exact_activities_layered(n, comp, v);
            SweepRow row;
            row.n = n;
            row.k = k;
            row.r = static_cast<int>(comp.size());
            row.k1 = comp[0];
            row.layer_sizes = comp;
            row.v = v;
            // Canonical weight: output blocks from the alternating pattern,
            // plus the core block's share of ones.
            std::uint64_t w = 0;
            int b = 0, i = 0;
            for (std::size_t layer = 0; layer < comp.size(); ++layer) {
                for (int s = 0; s < comp[layer]; ++s, ++i)
                    if (b) w += std::uint64_t{1} << (n - i - 1);
                b = 1 - b;
            }
            int b_last = 1 - b;
            w += b_last == 0 ? v : q_rows - v;
            row.w = w;
            BigInt diff = BigInt(2) * w - full;
            row.abs_bias = Rational(diff < 0 ? -diff : diff, full);
            Rational s1 = 0;
            for (const Rational& a : lay.alpha) s1 += a;
            row.D.push_back(s1);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace canal

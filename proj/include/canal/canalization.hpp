#pragma once

// Canalizing structure of Boolean functions.
//
// A variable canalizes if one of its input values forces the output.  The
// decomposition repeatedly peels off ALL currently canalizing variables at
// once (they provably share one canalized output and form a layer), then
// restricts every peeled variable to its non-canalizing input and repeats on
// the residual.  The process ends in a constant residual (no core) or in a
// non-canalizing, non-constant core function.
//
// Constants are not canalizing by convention.  A variable that canalizes for
// both of its inputs (a pure x_i / !x_i residual) is placed in its layer
// once, reported with the a = 0 triple first.

#include <canal/truth_table.hpp>

#include <optional>
#include <vector>

namespace canal {

struct CanalizingTriple {
    int var;     // 1-based variable index
    int input;   // canalizing input a
    int output;  // canalized output b
    bool operator==(const CanalizingTriple&) const = default;
};

/// All (var, a, b) with restrict(f, var, a) constant b.  Ordered by variable
/// index, a = 0 before a = 1.  Constant functions yield an empty list.
inline std::vector<CanalizingTriple> find_canalizing_variables(const BooleanFunction& f) {
    std::vector<CanalizingTriple> out;
    if (f.is_constant()) return out;
    for (int i = 1; i <= f.arity(); ++i) {
        for (int a = 0; a <= 1; ++a) {
            BooleanFunction r = f.restricted(i, a);
            std::uint64_t w = r.weight();
            if (w == 0)
                out.push_back({i, a, 0});
            else if (w == r.row_count())
                out.push_back({i, a, 1});
        }
    }
    return out;
}

struct CanalizingStructure {
    int arity = 0;                    // n
    int depth = 0;                    // k, number of canalizing variables
    std::vector<int> layer_sizes;     // k_1 ... k_r
    std::vector<int> order;           // canalizing variables, layer by layer,
                                      // ascending within a layer (1-based)
    std::vector<int> inputs;          // a_i per entry of `order`
    std::vector<int> outputs;         // b_i per entry of `order`
    std::vector<int> layer_of;        // size n, 1-based layer per variable,
                                      // 0 for non-canalizing variables
    std::optional<BooleanFunction> core;  // absent iff the residual is constant
    std::optional<std::uint64_t> core_off_count;  // v = #residual rows != b_k;
                                                  // 2^(n-k) when the core is
                                                  // absent (constant residual)

    int layer_count() const { return static_cast<int>(layer_sizes.size()); }
};

inline CanalizingStructure decompose(const BooleanFunction& f) {
    CanalizingStructure st;
    st.arity = f.arity();
    st.layer_of.assign(f.arity(), 0);

    BooleanFunction residual = f;
    std::vector<int> remaining(f.arity());  // original index per residual variable
    for (int i = 0; i < f.arity(); ++i) remaining[i] = i + 1;

    while (true) {
        if (residual.is_constant()) break;  // depth >= 1: residual == 1 - b_k
        auto triples = find_canalizing_variables(residual);
        if (triples.empty()) {
            st.core = residual;
            break;
        }
        int layer = st.layer_count() + 1;
        std::vector<CanalizingTriple> wave;
        for (const auto& t : triples)
            if (wave.empty() || wave.back().var != t.var) wave.push_back(t);
        st.layer_sizes.push_back(static_cast<int>(wave.size()));
        for (const auto& t : wave) {
            int orig = remaining[t.var - 1];
            st.order.push_back(orig);
            st.inputs.push_back(t.input);
            st.outputs.push_back(t.output);
            st.layer_of[orig - 1] = layer;
            ++st.depth;
        }
        // Peel highest local index first so lower indices stay valid.
        for (auto it = wave.rbegin(); it != wave.rend(); ++it) {
            residual = residual.restricted(it->var, 1 - it->input);
            remaining.erase(remaining.begin() + (it->var - 1));
        }
    }

    if (st.depth >= 1) {
        if (st.core) {
            int b_last = st.outputs.back();
            std::uint64_t w = st.core->weight();
            st.core_off_count = b_last == 0 ? w : st.core->row_count() - w;
        } else {
            // Constant residual 1 - b_k: every residual row is an off row.
            st.core_off_count = std::uint64_t{1} << (f.arity() - st.depth);
        }
    }
    return st;
}

inline int canalizing_depth(const BooleanFunction& f) { return decompose(f).depth; }

/// Whether f is k-canalizing (its canalizing depth is at least k).
inline bool is_k_canalizing(const BooleanFunction& f, int k) {
    if (k < 0 || k > f.arity()) throw std::out_of_range("k must lie in [0, arity]");
    if (k == 0) return true;
    return canalizing_depth(f) >= k;
}

/// True iff f is a nested canalizing function (depth == arity).
inline bool is_nested_canalizing(const BooleanFunction& f) {
    return f.arity() >= 1 && canalizing_depth(f) == f.arity();
}

}  // namespace canal

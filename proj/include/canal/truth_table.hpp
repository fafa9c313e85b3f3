#pragma once

// Truth-table representation of Boolean functions.
//
// A function f(x1, ..., xn) is stored as a packed bit vector of 2^n rows.
// Row index t encodes the assignment with x1 as the MOST significant bit and
// xn as the least significant bit, i.e. f(x1, ..., xn) = table[sum_i xi *
// 2^(n-i)].  "x1 & x2 & x3" therefore has the table 00000001.
//
// Table literals come in two forms:
//   - binary: "0110", rows 0..2^n-1 left to right, length a power of two
//   - hex:    "0x6", first character covers rows 0-3 (row 0 = high bit of
//             the nibble), requires arity >= 2

#include <canal/rational.hpp>

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace canal {

/// Error with a character position (0-based) into the offending input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class BooleanFunction {
public:
    /// Default arity cap for parsed input.
    static constexpr int kMaxArity = 24;

    BooleanFunction() : arity_(0), words_(1, 0) {}

    explicit BooleanFunction(int arity) : arity_(check_arity(arity)) {
        words_.assign(word_count(arity_), 0);
    }

    static BooleanFunction constant(int arity, bool value) {
        BooleanFunction f(arity);
        if (value) {
            for (auto& w : f.words_) w = ~0ull;
            f.trim();
        }
        return f;
    }

    /// Build from raw packed words (padding bits are cleared).
    static BooleanFunction from_words(int arity, std::vector<std::uint64_t> words) {
        BooleanFunction f(arity);
        if (words.size() != f.words_.size())
            throw std::invalid_argument("word count does not match arity");
        f.words_ = std::move(words);
        f.trim();
        return f;
    }

    int arity() const { return arity_; }
    std::uint64_t row_count() const { return 1ull << arity_; }

    bool test(std::uint64_t row) const {
        return (words_[row >> 6] >> (row & 63)) & 1u;
    }

    void set(std::uint64_t row, bool value) {
        std::uint64_t mask = 1ull << (row & 63);
        if (value)
            words_[row >> 6] |= mask;
        else
            words_[row >> 6] &= ~mask;
    }

    /// Evaluate at an explicit assignment; bits[0] is x1.
    bool evaluate(const std::vector<int>& bits) const {
        if (static_cast<int>(bits.size()) != arity_)
            throw std::invalid_argument("assignment length does not match arity");
        std::uint64_t row = 0;
        for (int i = 0; i < arity_; ++i) {
            if (bits[i] != 0 && bits[i] != 1)
                throw std::invalid_argument("assignment entries must be 0 or 1");
            row = (row << 1) | static_cast<unsigned>(bits[i]);
        }
        return test(row);
    }

    std::uint64_t weight() const {
        std::uint64_t w = 0;
        for (auto word : words_) w += std::popcount(word);
        return w;
    }

    bool is_constant() const {
        std::uint64_t w = weight();
        return w == 0 || w == row_count();
    }

    BooleanFunction complement() const {
        BooleanFunction g(*this);
        for (auto& w : g.words_) w = ~w;
        g.trim();
        return g;
    }

    /// Substitute x_var = value (var is 1-based); result keeps the remaining
    /// variables in their original order and has arity n-1.
    BooleanFunction restricted(int var, int value) const {
        if (arity_ == 0) throw std::invalid_argument("cannot restrict a 0-ary function");
        if (var < 1 || var > arity_) throw std::out_of_range("variable index out of range");
        if (value != 0 && value != 1) throw std::invalid_argument("restriction value must be 0 or 1");
        int pos = arity_ - var;  // bit position of x_var within a row index
        BooleanFunction g(arity_ - 1);
        std::uint64_t low_mask = (1ull << pos) - 1;
        for (std::uint64_t t = 0; t < g.row_count(); ++t) {
            std::uint64_t full = ((t >> pos) << (pos + 1)) |
                                 (static_cast<std::uint64_t>(value) << pos) | (t & low_mask);
            if (test(full)) g.set(t, true);
        }
        return g;
    }

    /// Number of rows t with f(t) != f(t xor e_var); var is 1-based.
    /// Dividing by 2^n gives the activity of x_var.
    std::uint64_t flip_difference_count(int var) const {
        if (var < 1 || var > arity_) throw std::out_of_range("variable index out of range");
        int pos = arity_ - var;
        std::uint64_t d = 1ull << pos;
        std::uint64_t pairs = 0;
        if (d >= 64) {
            std::size_t stride = static_cast<std::size_t>(d >> 6);
            for (std::size_t w = 0; w < words_.size(); ++w) {
                if (w & stride) continue;
                pairs += std::popcount(words_[w] ^ words_[w + stride]);
            }
        } else {
            std::uint64_t mask = in_word_mask(static_cast<unsigned>(d));
            for (auto word : words_)
                pairs += std::popcount((word ^ (word >> d)) & mask);
        }
        return 2 * pairs;
    }

    /// Table permuted by rows t -> t xor row_mask (same arity).
    BooleanFunction xor_permuted(std::uint64_t row_mask) const {
        if (row_mask >= row_count()) throw std::out_of_range("row mask exceeds table size");
        BooleanFunction g(*this);
        for (int pos = 0; pos < arity_; ++pos) {
            if (!((row_mask >> pos) & 1)) continue;
            std::uint64_t d = 1ull << pos;
            if (d >= 64) {
                std::size_t stride = static_cast<std::size_t>(d >> 6);
                for (std::size_t w = 0; w < g.words_.size(); ++w) {
                    if (w & stride) continue;
                    std::swap(g.words_[w], g.words_[w + stride]);
                }
            } else {
                std::uint64_t mask = in_word_mask(static_cast<unsigned>(d));
                for (auto& word : g.words_)
                    word = ((word & mask) << d) | ((word >> d) & mask);
            }
        }
        return g;
    }

    std::string render_binary() const {
        std::string s(row_count(), '0');
        for (std::uint64_t t = 0; t < row_count(); ++t)
            if (test(t)) s[t] = '1';
        return s;
    }

    std::string render_hex() const {
        if (arity_ < 2) throw std::invalid_argument("hex rendering requires arity >= 2");
        static const char* digits = "0123456789abcdef";
        std::string s = "0x";
        for (std::uint64_t j = 0; j < row_count() / 4; ++j) {
            unsigned v = 0;
            for (unsigned b = 0; b < 4; ++b) v = (v << 1) | static_cast<unsigned>(test(4 * j + b));
            s += digits[v];
        }
        return s;
    }

    /// Canonical table literal (hex when arity >= 2, binary otherwise).
    std::string render_table() const {
        return arity_ >= 2 ? render_hex() : render_binary();
    }

    static BooleanFunction from_binary(const std::string& text, int max_arity = kMaxArity) {
        if (text.empty()) throw ParseError("empty table literal", 0);
        if (!is_power_of_two(text.size()))
            throw ParseError("binary table length must be a power of two", text.size());
        int n = log2_exact(text.size());
        if (n > max_arity)
            throw ParseError("table implies arity " + std::to_string(n) +
                                 " above the cap " + std::to_string(max_arity), 0);
        BooleanFunction f(n);
        for (std::size_t t = 0; t < text.size(); ++t) {
            if (text[t] == '1')
                f.set(t, true);
            else if (text[t] != '0')
                throw ParseError("invalid character in binary table", t);
        }
        return f;
    }

    static BooleanFunction from_hex(const std::string& text, int max_arity = kMaxArity) {
        if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
            throw ParseError("hex table literal must start with 0x", 0);
        std::string body = text.substr(2);
        if (!is_power_of_two(body.size()))
            throw ParseError("hex table must encode a power-of-two row count", text.size());
        int n = log2_exact(body.size()) + 2;
        if (n > max_arity)
            throw ParseError("table implies arity " + std::to_string(n) +
                                 " above the cap " + std::to_string(max_arity), 0);
        BooleanFunction f(n);
        for (std::size_t j = 0; j < body.size(); ++j) {
            int v = hex_value(body[j]);
            if (v < 0) throw ParseError("invalid hex digit in table", j + 2);
            for (unsigned b = 0; b < 4; ++b)
                if ((v >> (3 - b)) & 1) f.set(4 * j + b, true);
        }
        return f;
    }

    /// Parse a table literal in either form.
    static BooleanFunction parse_table(const std::string& text, int max_arity = kMaxArity) {
        if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
            return from_hex(text, max_arity);
        return from_binary(text, max_arity);
    }

    bool operator==(const BooleanFunction& other) const {
        return arity_ == other.arity_ && words_ == other.words_;
    }
    bool operator!=(const BooleanFunction& other) const { return !(*this == other); }
    bool operator<(const BooleanFunction& other) const {
        if (arity_ != other.arity_) return arity_ < other.arity_;
        return words_ < other.words_;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    static int check_arity(int arity) {
        if (arity < 0) throw std::invalid_argument("arity must be non-negative");
        if (arity > 30) throw std::invalid_argument("arity too large for table representation");
        return arity;
    }
    static std::size_t word_count(int arity) {
        std::uint64_t rows = 1ull << arity;
        return static_cast<std::size_t>(rows <= 64 ? 1 : rows / 64);
    }
    static bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }
    static int log2_exact(std::size_t v) {
        int n = 0;
        while ((1ull << n) < v) ++n;
        return n;
    }
    static int hex_value(char c) {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }
    static std::uint64_t in_word_mask(unsigned d) {
        // Bit positions p with (p & d) == 0, for d in {1,2,4,8,16,32}.
        switch (d) {
            case 1: return 0x5555555555555555ull;
            case 2: return 0x3333333333333333ull;
            case 4: return 0x0f0f0f0f0f0f0f0full;
            case 8: return 0x00ff00ff00ff00ffull;
            case 16: return 0x0000ffff0000ffffull;
            default: return 0x00000000ffffffffull;
        }
    }
    /// Clear padding bits beyond 2^n rows (invariant: padding stays zero).
    void trim() {
        if (arity_ < 6) words_[0] &= (1ull << row_count()) - 1;
    }

    int arity_;
    std::vector<std::uint64_t> words_;
};

/// Whether f depends on x_var (1-based).
inline bool is_essential(const BooleanFunction& f, int var) {
    return f.flip_difference_count(var) != 0;
}

struct FunctionStats {
    std::uint64_t weight = 0;
    Rational bias;           // (weight - #zeros) / 2^n
    Rational absolute_bias;
    std::vector<int> essential;  // 1-based variable indices
};

inline FunctionStats stats(const BooleanFunction& f) {
    FunctionStats st;
    st.weight = f.weight();
    BigInt rows = BigInt(1) << f.arity();
    st.bias = Rational(2 * BigInt(st.weight) - rows, rows);
    st.absolute_bias = st.bias < 0 ? -st.bias : st.bias;
    for (int i = 1; i <= f.arity(); ++i)
        if (is_essential(f, i)) st.essential.push_back(i);
    return st;
}

}  // namespace canal

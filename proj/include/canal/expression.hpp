#pragma once

// Boolean expression parser.
//
// Grammar over variables x1..xn, constants 0/1, NOT (! or ~), AND (&),
// XOR (^), OR (|) and parentheses.  Precedence NOT > AND > XOR > OR, binary
// operators associate left.  The arity defaults to the highest referenced
// variable index and may be overridden upward (padding with non-essential
// variables).

#include <canal/truth_table.hpp>

#include <cctype>
#include <string>
#include <vector>

namespace canal {

namespace detail {

struct ExprNode {
    enum Kind { kConst0, kConst1, kVar, kNot, kAnd, kOr, kXor } kind;
    int var = 0;   // 1-based, kVar only
    int lhs = -1;  // node indices
    int rhs = -1;
};

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : text_(text) {}

    int parse() {
        int root = parse_or();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return root;
    }

    const std::vector<ExprNode>& nodes() const { return nodes_; }
    int max_var() const { return max_var_; }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    int add(ExprNode n) {
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }

    int parse_or() {
        int lhs = parse_xor();
        while (eat('|')) lhs = add({ExprNode::kOr, 0, lhs, parse_xor()});
        return lhs;
    }
    int parse_xor() {
        int lhs = parse_and();
        while (eat('^')) lhs = add({ExprNode::kXor, 0, lhs, parse_and()});
        return lhs;
    }
    int parse_and() {
        int lhs = parse_unary();
        while (eat('&')) lhs = add({ExprNode::kAnd, 0, lhs, parse_unary()});
        return lhs;
    }
    int parse_unary() {
        skip_ws();
        if (pos_ < text_.size() && (text_[pos_] == '!' || text_[pos_] == '~')) {
            ++pos_;
            return add({ExprNode::kNot, 0, parse_unary(), -1});
        }
        return parse_primary();
    }
    int parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            std::size_t open = pos_;
            ++pos_;
            int inner = parse_or();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                throw ParseError("unmatched '('", open);
            ++pos_;
            return inner;
        }
        if (c == '0' || c == '1') {
            ++pos_;
            return add({c == '0' ? ExprNode::kConst0 : ExprNode::kConst1, 0, -1, -1});
        }
        if (c == 'x' || c == 'X') {
            std::size_t start = pos_;
            ++pos_;
            std::size_t digits = 0;
            long idx = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                idx = idx * 10 + (text_[pos_] - '0');
                if (idx > BooleanFunction::kMaxArity * 100) break;  // avoid overflow on absurd input
                ++pos_;
                ++digits;
            }
            if (digits == 0) throw ParseError("variable name requires an index (x1, x2, ...)", start);
            if (idx < 1) throw ParseError("variable indices start at 1", start);
            max_var_ = std::max(max_var_, static_cast<int>(idx));
            return add({ExprNode::kVar, static_cast<int>(idx), -1, -1});
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::vector<ExprNode> nodes_;
    int max_var_ = 0;
};

/// 64-bit periodic pattern for a variable whose row stride is d < 64:
/// bit p set iff (p & d) != 0.
inline std::uint64_t var_pattern(unsigned d) {
    switch (d) {
        case 1: return 0xaaaaaaaaaaaaaaaaull;
        case 2: return 0xccccccccccccccccull;
        case 4: return 0xf0f0f0f0f0f0f0f0ull;
        case 8: return 0xff00ff00ff00ff00ull;
        case 16: return 0xffff0000ffff0000ull;
        default: return 0xffffffff00000000ull;
    }
}

}  // namespace detail

/// Parse an expression into a truth table.  `explicit_arity` < 0 means
/// "use the highest referenced variable index".
inline BooleanFunction parse_expression(const std::string& text, int explicit_arity = -1,
                                        int max_arity = BooleanFunction::kMaxArity) {
    detail::ExprParser parser(text);
    int root = parser.parse();
    int arity = parser.max_var();
    if (explicit_arity >= 0) {
        if (explicit_arity < parser.max_var())
            throw std::invalid_argument(
                "explicit arity " + std::to_string(explicit_arity) +
                " is below the highest referenced variable x" + std::to_string(parser.max_var()));
        arity = explicit_arity;
    }
    if (arity > max_arity)
        throw std::invalid_argument("expression arity " + std::to_string(arity) +
                                    " exceeds the cap " + std::to_string(max_arity));

    // Bit-parallel evaluation: every node value is a full packed table.
    const auto& nodes = parser.nodes();
    std::vector<BooleanFunction> value(nodes.size());
    auto eval = [&](auto&& self, int id) -> const BooleanFunction& {
        BooleanFunction& out = value[id];
        if (out.arity() == arity && arity != 0) return out;
        const detail::ExprNode& n = nodes[id];
        switch (n.kind) {
            case detail::ExprNode::kConst0: out = BooleanFunction::constant(arity, false); break;
            case detail::ExprNode::kConst1: out = BooleanFunction::constant(arity, true); break;
            case detail::ExprNode::kVar: {
                std::uint64_t d = 1ull << (arity - n.var);
                std::size_t nwords = std::max<std::size_t>(1, (1ull << arity) / 64);
                std::vector<std::uint64_t> words(nwords);
                if (d >= 64) {
                    std::size_t stride = static_cast<std::size_t>(d >> 6);
                    for (std::size_t w = 0; w < nwords; ++w)
                        if (w & stride) words[w] = ~0ull;
                } else {
                    std::uint64_t pattern = detail::var_pattern(static_cast<unsigned>(d));
                    for (auto& w : words) w = pattern;
                }
                out = BooleanFunction::from_words(arity, std::move(words));
                break;
            }
            case detail::ExprNode::kNot: out = self(self, n.lhs).complement(); break;
            default: {
                BooleanFunction a = self(self, n.lhs);
                const BooleanFunction& b = self(self, n.rhs);
                std::vector<std::uint64_t> words(a.words().size());
                for (std::size_t w = 0; w < words.size(); ++w) {
                    std::uint64_t x = a.words()[w], y = b.words()[w];
                    words[w] = n.kind == detail::ExprNode::kAnd ? (x & y)
                             : n.kind == detail::ExprNode::kOr  ? (x | y)
                                                                : (x ^ y);
                }
                out = BooleanFunction::from_words(arity, std::move(words));
                break;
            }
        }
        return out;
    };

    // Arity-0 expressions (pure constants) need a direct path because the
    // memo test above cannot distinguish "unset" from "constant on 0 vars".
    if (arity == 0) {
        std::vector<int> empty;
        auto direct = [&](auto&& self, int id) -> bool {
            const detail::ExprNode& n = nodes[id];
            switch (n.kind) {
                case detail::ExprNode::kConst0: return false;
                case detail::ExprNode::kConst1: return true;
                case detail::ExprNode::kNot: return !self(self, n.lhs);
                case detail::ExprNode::kAnd: return self(self, n.lhs) && self(self, n.rhs);
                case detail::ExprNode::kOr: return self(self, n.lhs) || self(self, n.rhs);
                case detail::ExprNode::kXor: return self(self, n.lhs) != self(self, n.rhs);
                default: throw std::logic_error("variable in arity-0 expression");
            }
        };
        return BooleanFunction::constant(0, direct(direct, root));
    }
    return eval(eval, root);
}

}  // namespace canal

#include <canal/rng.hpp>
#include <canal/truth_table.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

using namespace canal;

namespace {

BooleanFunction random_function(int n, Rng& rng) {
    BooleanFunction f(n);
    for (std::uint64_t t = 0; t < f.row_count(); ++t) f.set(t, rng.next_bit());
    return f;
}

}  // namespace

TEST_CASE("row indexing puts x1 in the most significant position") {
    // f(x1,x2) = x1 has table rows 0,0,1,1.
    BooleanFunction f = BooleanFunction::from_binary("0011");
    CHECK(f.evaluate({0, 0}) == false);
    CHECK(f.evaluate({0, 1}) == false);
    CHECK(f.evaluate({1, 0}) == true);
    CHECK(f.evaluate({1, 1}) == true);
    BooleanFunction g = BooleanFunction::from_binary("0101");  // g = x2
    CHECK(g.evaluate({1, 0}) == false);
    CHECK(g.evaluate({0, 1}) == true);
}

TEST_CASE("constants, weight, and is_constant") {
    BooleanFunction zero = BooleanFunction::constant(3, false);
    BooleanFunction one = BooleanFunction::constant(3, true);
    CHECK(zero.weight() == 0);
    CHECK(one.weight() == 8);
    CHECK(zero.is_constant());
    CHECK(one.is_constant());
    CHECK_FALSE(BooleanFunction::from_binary("01").is_constant());
    BooleanFunction big = BooleanFunction::constant(10, true);
    CHECK(big.weight() == 1024);
}

TEST_CASE("0-ary functions are single-row tables") {
    BooleanFunction f(0);
    CHECK(f.row_count() == 1);
    CHECK(f.is_constant());
    CHECK(f.weight() == 0);
    CHECK(BooleanFunction::constant(0, true).weight() == 1);
}

TEST_CASE("binary render and parse round-trip") {
    Rng rng(2024);
    for (int n : {0, 1, 2, 3, 6, 7}) {
        for (int rep = 0; rep < 5; ++rep) {
            BooleanFunction f = random_function(n, rng);
            CHECK(BooleanFunction::from_binary(f.render_binary()) == f);
            if (n >= 2) CHECK(BooleanFunction::from_hex(f.render_hex()) == f);
            CHECK(BooleanFunction::parse_table(f.render_table()) == f);
        }
    }
}

TEST_CASE("hex encoding maps the first nibble to rows 0..3") {
    // Rows 0110 1001 -> nibbles 0110, 1001 -> 0x69.
    BooleanFunction f = BooleanFunction::from_binary("01101001");
    CHECK(f.render_hex() == "0x69");
    CHECK(BooleanFunction::from_hex("0x69") == f);
    CHECK(BooleanFunction::from_hex("0X69") == f);
    CHECK(BooleanFunction::from_hex("0x8").render_binary() == "1000");
}

TEST_CASE("table parse errors carry positions") {
    CHECK_THROWS_AS(BooleanFunction::from_binary(""), ParseError);
    CHECK_THROWS_AS(BooleanFunction::from_binary("011"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::from_binary("01102001"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::from_hex("0xg"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::from_hex("12"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::from_hex("0x123"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::from_binary("0101", 1), ParseError);
}

TEST_CASE("from_words validates the word count and trims padding") {
    BooleanFunction f = BooleanFunction::from_words(2, {0b0110ull});
    CHECK(f.render_binary() == "0110");
    // High garbage beyond row_count must be cleared so equality is bitwise.
    BooleanFunction g = BooleanFunction::from_words(2, {0b0110ull | (0xffull << 32)});
    CHECK(g == f);
    CHECK_THROWS(BooleanFunction::from_words(7, {1, 2, 3}));
    BooleanFunction h = BooleanFunction::from_words(7, {1, 2});
    CHECK(h.arity() == 7);
}

TEST_CASE("complement flips every row") {
    Rng rng(7);
    for (int n : {1, 3, 7}) {
        BooleanFunction f = random_function(n, rng);
        BooleanFunction g = f.complement();
        for (std::uint64_t t = 0; t < f.row_count(); ++t) CHECK(g.test(t) != f.test(t));
        CHECK(g.complement() == f);
        CHECK(g.weight() + f.weight() == f.row_count());
    }
}

TEST_CASE("restricted substitutes one variable") {
    Rng rng(8);
    for (int n : {2, 3, 7}) {
        BooleanFunction f = random_function(n, rng);
        for (int var = 1; var <= n; ++var) {
            for (int value = 0; value <= 1; ++value) {
                BooleanFunction r = f.restricted(var, value);
                REQUIRE(r.arity() == n - 1);
                for (std::uint64_t t = 0; t < r.row_count(); ++t) {
                    std::vector<int> bits;
                    for (int i = n - 2; i >= 0; --i) bits.push_back((t >> i) & 1);
                    std::vector<int> full = bits;
                    full.insert(full.begin() + (var - 1), value);
                    CHECK(r.test(t) == f.evaluate(full));
                }
            }
        }
    }
    CHECK_THROWS(BooleanFunction(2).restricted(0, 0));
    CHECK_THROWS(BooleanFunction(2).restricted(3, 0));
    CHECK_THROWS(BooleanFunction(2).restricted(1, 2));
}

TEST_CASE("flip_difference_count counts rows whose value changes") {
    Rng rng(9);
    for (int n : {1, 2, 5, 7, 8}) {
        BooleanFunction f = random_function(n, rng);
        for (int var = 1; var <= n; ++var) {
            std::uint64_t naive = 0;
            std::uint64_t e = 1ull << (n - var);
            for (std::uint64_t t = 0; t < f.row_count(); ++t)
                if (f.test(t) != f.test(t ^ e)) ++naive;
            CHECK(f.flip_difference_count(var) == naive);
        }
    }
}

TEST_CASE("essential variables are those with nonzero flip count") {
    BooleanFunction f = BooleanFunction::from_binary("0011");  // x1 of two vars
    CHECK(is_essential(f, 1));
    CHECK_FALSE(is_essential(f, 2));
    FunctionStats st = stats(f);
    CHECK(st.essential == std::vector<int>{1});
    CHECK(st.weight == 2);
    CHECK(st.bias == Rational(0));
    CHECK(st.absolute_bias == Rational(0));
    FunctionStats sa = stats(BooleanFunction::from_binary("00000001"));
    CHECK(sa.essential == std::vector<int>{1, 2, 3});
    CHECK(sa.bias == Rational(-3, 4));
    CHECK(sa.absolute_bias == Rational(3, 4));
}

TEST_CASE("xor_permuted relabels rows by xor") {
    Rng rng(10);
    for (int n : {1, 3, 7, 8}) {
        BooleanFunction f = random_function(n, rng);
        for (int rep = 0; rep < 4; ++rep) {
            std::uint64_t mask = rng.next_below(f.row_count());
            BooleanFunction g = f.xor_permuted(mask);
            for (std::uint64_t t = 0; t < f.row_count(); ++t)
                CHECK(g.test(t) == f.test(t ^ mask));
        }
    }
    CHECK_THROWS(BooleanFunction(2).xor_permuted(4));
}

TEST_CASE("ordering is total and consistent with equality") {
    BooleanFunction a = BooleanFunction::from_binary("0001");
    BooleanFunction b = BooleanFunction::from_binary("0111");
    BooleanFunction c = BooleanFunction::from_binary("01");
    CHECK(a != b);
    CHECK((a < b || b < a));
    CHECK(c < a);  // smaller arity sorts first
    CHECK_FALSE(a < a);
}

TEST_CASE("padding rows stay zero after mutation") {
    BooleanFunction f(3);
    f.set(7, true);
    f.set(7, false);
    for (auto w : f.words()) CHECK(w == 0);
    BooleanFunction g = BooleanFunction::constant(2, true);
    CHECK(g.words()[0] == 0xfull);
}

TEST_CASE("large arity tables work across word boundaries") {
    BooleanFunction f(8);
    f.set(200, true);
    CHECK(f.test(200));
    CHECK(f.weight() == 1);
    CHECK(f.flip_difference_count(1) == 2);
    BooleanFunction g = f.xor_permuted(128);
    CHECK(g.test(200 ^ 128));
    CHECK(g.weight() == 1);
}

#include <canal/derrida.hpp>
#include <canal/network_io.hpp>
#include <canal/rng.hpp>
#include <canal/sensitivity.hpp>
#include <canal/truth_table.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace canal;

namespace {

BooleanFunction random_function(int n, Rng& rng) {
    BooleanFunction f(n);
    for (std::uint64_t t = 0; t < f.row_count(); ++t) f.set(t, rng.next_bit());
    return f;
}

NetworkSpec random_network(int N, int max_arity, Rng& rng) {
    NetworkSpec net;
    net.N = N;
    for (int i = 0; i < N; ++i) {
        int n = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(
                        std::min(max_arity, N))));
        NetworkNode node;
        for (int b : rng.next_subset(N, n)) node.inputs.push_back(b + 1);
        node.function = random_function(n, rng);
        net.nodes.push_back(std::move(node));
    }
    return net;
}

NetworkSpec identity_network(int N) {
    NetworkSpec net;
    net.N = N;
    for (int i = 1; i <= N; ++i)
        net.nodes.push_back({{i}, BooleanFunction::from_binary("01")});
    return net;
}

}  // namespace

TEST_CASE("hypergeometric PMF pins and support") {
    CHECK(hypergeometric_pmf(10, 1, 3, 1) == Rational(3, 10));
    CHECK(hypergeometric_pmf(10, 1, 3, 0) == Rational(7, 10));
    CHECK(hypergeometric_pmf(5, 5, 3, 3) == 1);
    CHECK(hypergeometric_pmf(5, 5, 3, 2) == 0);
    CHECK(hypergeometric_pmf(8, 2, 3, 5) == 0);   // c > n
    CHECK(hypergeometric_pmf(8, 2, 3, -1) == 0);  // c < 0
    CHECK(hypergeometric_pmf(6, 0, 2, 0) == 1);
    CHECK_THROWS_AS(hypergeometric_pmf(5, 6, 3, 1), std::out_of_range);
    CHECK_THROWS_AS(hypergeometric_pmf(5, 2, 6, 1), std::out_of_range);
    CHECK_THROWS_AS(hypergeometric_pmf(-1, 0, 0, 0), std::out_of_range);
}

TEST_CASE("hypergeometric PMF sums to one and the two closed forms agree") {
    for (int N = 1; N <= 12; ++N) {
        for (int m = 0; m <= N; ++m) {
            for (int n = 0; n <= N; ++n) {
                Rational sum = 0;
                for (int c = 0; c <= n; ++c) {
                    Rational h = hypergeometric_pmf(N, m, n, c);
                    sum += h;
                    // Swapping the roles of the perturbed set and the input
                    // set leaves the overlap distribution unchanged.
                    CHECK(h == Rational(binomial(n, c) * binomial(N - n, m - c), binomial(N, m)));
                }
                CHECK(sum == 1);
            }
        }
    }
}

TEST_CASE("hypergeometric mixture identity in N") {
    // Condition on whether a fixed element is perturbed.
    for (int N = 2; N <= 10; ++N)
        for (int n = 0; n <= N - 1; ++n)
            for (int m = 1; m <= N; ++m)
                for (int c = 0; c <= n; ++c) {
                    Rational rhs = Rational(m, N) * hypergeometric_pmf(N - 1, m - 1, n, c);
                    if (m < N)
                        rhs += Rational(N - m, N) * hypergeometric_pmf(N - 1, m, n, c);
                    CHECK(hypergeometric_pmf(N, m, n, c) == rhs);
                }
}

TEST_CASE("identity network copies the perturbation size") {
    NetworkSpec net = identity_network(5);
    SensitivityCache cache;
    for (int m = 0; m <= 5; ++m) {
        CHECK(derrida_value(net, m, cache) == m);
        CHECK(derrida_exhaustive(net, m) == m);
    }
}

TEST_CASE("homogeneous shortcut pins") {
    std::vector<Rational> s = sensitivity_profile(BooleanFunction::from_binary("00000001")).s;
    REQUIRE(s == std::vector<Rational>{0, Rational(1, 4), Rational(1, 4), Rational(1, 4)});
    CHECK(derrida_homogeneous(100, s, 3, 1) == Rational(3, 4));
    // D(F, 1) = n * s_1 does not depend on N.
    CHECK(derrida_homogeneous(1000, s, 3, 1) == Rational(3, 4));
    CHECK(derrida_homogeneous(12, s, 3, 1) == Rational(3, 4));
    CHECK_THROWS_AS(derrida_homogeneous(2, s, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(derrida_homogeneous(100, s, 3, 101), std::out_of_range);
    std::vector<Rational> short_s{0, 1};
    CHECK_THROWS_AS(derrida_homogeneous(100, short_s, 3, 1), std::invalid_argument);
}

TEST_CASE("homogeneous shortcut equals the per-node mixture for any wiring") {
    // The mixture only sees arities, so wiring (self-inputs included) cannot
    // matter when every node runs the same function.
    BooleanFunction f = BooleanFunction::from_binary("01101000");
    std::vector<Rational> s = sensitivity_profile(f).s;
    Rng rng(57);
    NetworkSpec net;
    net.N = 8;
    for (int i = 0; i < 8; ++i) {
        NetworkNode node;
        for (int b : rng.next_subset(8, 3)) node.inputs.push_back(b + 1);
        node.function = f;
        net.nodes.push_back(std::move(node));
    }
    SensitivityCache cache;
    for (int m = 0; m <= 8; ++m)
        CHECK(derrida_value(net, m, cache) == derrida_homogeneous(8, s, 3, m));
}

TEST_CASE("parity nodes: closed form equals exhaustive enumeration") {
    BooleanFunction parity = BooleanFunction::from_binary("01101001");
    std::vector<Rational> s = sensitivity_profile(parity).s;
    REQUIRE(s == std::vector<Rational>{0, 1, 0, 1});  // flips iff an odd overlap
    Rng rng(58);
    NetworkSpec net;
    net.N = 6;
    for (int i = 0; i < 6; ++i) {
        NetworkNode node;
        for (int b : rng.next_subset(6, 3)) node.inputs.push_back(b + 1);
        node.function = parity;
        net.nodes.push_back(std::move(node));
    }
    SensitivityCache cache;
    for (int m = 0; m <= 6; ++m) {
        Rational closed = derrida_homogeneous(6, s, 3, m);
        CHECK(derrida_value(net, m, cache) == closed);
        CHECK(derrida_exhaustive(net, m) == closed);
    }
}

TEST_CASE("closed form equals exhaustive enumeration on random networks") {
    SensitivityCache cache;
    for (int rep = 0; rep < 20; ++rep) {
        Rng rng = Rng::stream(59, rep);
        int N = 4 + static_cast<int>(rng.next_below(5));  // 4..8
        NetworkSpec net = random_network(N, 3, rng);
        for (int m = 0; m <= N; ++m)
            CHECK(derrida_value(net, m, cache) == derrida_exhaustive(net, m));
    }
}

TEST_CASE("complementing every node function leaves the curve unchanged") {
    Rng rng(60);
    NetworkSpec net = random_network(7, 3, rng);
    NetworkSpec flipped = net;
    for (NetworkNode& node : flipped.nodes) node.function = node.function.complement();
    SensitivityCache cache;
    for (int m = 0; m <= 7; ++m)
        CHECK(derrida_value(net, m, cache) == derrida_value(flipped, m, cache));
}

TEST_CASE("normalized curve is nearly independent of network size") {
    std::vector<Rational> s = sensitivity_profile(BooleanFunction::from_binary("00010111")).s;
    // Same perturbation fraction, ten times the nodes.
    Rational a = derrida_homogeneous(100, s, 3, 10) / 100;
    Rational b = derrida_homogeneous(1000, s, 3, 100) / 1000;
    Rational gap = a > b ? a - b : b - a;
    CHECK(gap < Rational(1, 100));
    CHECK(gap > 0);  // not exactly equal, just close
}

TEST_CASE("derrida_curve covers the requested range") {
    NetworkSpec net = identity_network(4);
    SensitivityCache cache;
    DerridaCurve curve = derrida_curve(net, 0, 4, cache);
    REQUIRE(curve.size() == 5);
    for (int m = 0; m <= 4; ++m) {
        CHECK(curve[m].m == m);
        CHECK(curve[m].value == m);
    }
}

TEST_CASE("Monte Carlo estimate is seeded and close to exact") {
    Rng rng(61);
    NetworkSpec net = random_network(8, 3, rng);
    SensitivityCache cache;
    Rational exact = derrida_value(net, 3, cache);
    double ex = numerator(exact).convert_to<double>() / denominator(exact).convert_to<double>();
    MonteCarloEstimate a = derrida_monte_carlo(net, 3, 50000, 7);
    MonteCarloEstimate b = derrida_monte_carlo(net, 3, 50000, 7);
    CHECK(a.estimate == b.estimate);
    CHECK(std::abs(a.estimate - ex) <= 5 * a.std_error + 1e-12);
    MonteCarloEstimate c = derrida_monte_carlo(net, 3, 50000, 8);
    CHECK(a.estimate != c.estimate);
    CHECK_THROWS_AS(derrida_monte_carlo(net, 3, 0, 7), std::invalid_argument);
    CHECK_THROWS_AS(derrida_monte_carlo(net, 9, 10, 7), std::out_of_range);
}

TEST_CASE("network validation") {
    NetworkSpec net = identity_network(3);
    CHECK(validate_network(net).empty());

    NetworkSpec wrong_count = net;
    wrong_count.N = 4;
    CHECK_THROWS_AS(validate_network(wrong_count), std::invalid_argument);

    NetworkSpec bad_index = net;
    bad_index.nodes[0].inputs[0] = 4;
    CHECK_THROWS_AS(validate_network(bad_index), std::invalid_argument);
    bad_index.nodes[0].inputs[0] = 0;
    CHECK_THROWS_AS(validate_network(bad_index), std::invalid_argument);

    NetworkSpec dup = net;
    dup.nodes[0].inputs = {2, 2};
    dup.nodes[0].function = BooleanFunction::from_binary("0110");
    CHECK_THROWS_AS(validate_network(dup), std::invalid_argument);

    NetworkSpec mismatch = net;
    mismatch.nodes[0].inputs = {1, 2};  // arity still 1
    CHECK_THROWS_AS(validate_network(mismatch), std::invalid_argument);

    NetworkSpec lazy = net;
    lazy.nodes[0].inputs = {1, 2};
    lazy.nodes[0].function = BooleanFunction::from_binary("0011");  // ignores x2
    std::vector<std::string> warnings = validate_network(lazy);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("node 1") != std::string::npos);
    CHECK(warnings[0].find("input 2") != std::string::npos);
}

TEST_CASE("exhaustive enumeration respects its work cap") {
    NetworkSpec net = identity_network(10);
    CHECK_THROWS_AS(derrida_exhaustive(net, 5, 100), WorkCapError);
    NetworkSpec big = identity_network(17);
    CHECK_THROWS_AS(derrida_exhaustive(big, 1), WorkCapError);
}

TEST_CASE("network JSON round-trip") {
    auto j = nlohmann::json::parse(R"({
      "N": 3,
      "nodes": [
        {"inputs": [2, 3], "function": "0x7"},
        {"inputs": [1],    "function": "01"},
        {"inputs": [1, 2], "function": "x1 & !x2"}
      ]
    })");
    NetworkSpec net = network_from_json(j);
    REQUIRE(net.N == 3);
    CHECK(net.nodes[0].inputs == std::vector<int>{2, 3});
    CHECK(net.nodes[0].function == BooleanFunction::from_binary("0111"));
    CHECK(net.nodes[1].function == BooleanFunction::from_binary("01"));
    CHECK(net.nodes[2].function == BooleanFunction::from_binary("0010"));

    NetworkSpec back = network_from_json(network_to_json(net));
    REQUIRE(back.N == net.N);
    for (int i = 0; i < net.N; ++i) {
        CHECK(back.nodes[i].inputs == net.nodes[i].inputs);
        CHECK(back.nodes[i].function == net.nodes[i].function);
    }
}

TEST_CASE("network JSON rejects malformed specs") {
    CHECK_THROWS(network_from_json(nlohmann::json::parse(R"({"nodes": "x"})")));
    CHECK_THROWS(network_from_json(nlohmann::json::parse(R"({"N": 2, "nodes": []})")));
    CHECK_THROWS(network_from_json(
        nlohmann::json::parse(R"({"nodes": [{"inputs": [1]}]})")));
    CHECK_THROWS(network_from_json(nlohmann::json::parse(
        R"({"nodes": [{"inputs": [1, 1], "function": "0110"}]})")));
    CHECK_THROWS(network_from_json(nlohmann::json::parse(
        R"({"nodes": [{"inputs": [1], "function": "0110"}]})")));  // arity mismatch
    CHECK_THROWS_AS(load_network("/nonexistent/path.json"), std::runtime_error);
}

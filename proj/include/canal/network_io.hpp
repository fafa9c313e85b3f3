#pragma once

// JSON (de)serialization for network and propensity specifications.
//
// Schema:
//   {
//     "N": 3,
//     "nodes": [
//       {"inputs": [2, 3], "function": "0x7"},
//       {"inputs": [1],    "function": "01", "p_up": "1/2", "p_down": 0.25},
//       {"inputs": [1, 2], "function": "x1 & !x2"}
//     ]
//   }
// A function is a binary truth table (power-of-two length of 0/1 digits), a
// hex truth table (0x prefix), or an expression; tables must match the
// declared input count.  Propensities may be JSON numbers or "p/q" strings
// and are kept as exact rationals (numbers go through their shortest decimal
// form, so 0.5 becomes exactly 1/2).

#include <canal/derrida.hpp>
#include <canal/expression.hpp>
#include <canal/rational.hpp>
#include <canal/sdds.hpp>
#include <canal/truth_table.hpp>

#include <json.hpp>

#include <fstream>
#include <string>

namespace canal {

inline Rational rational_from_json(const nlohmann::json& j, const std::string& what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number()) return parse_rational(j.dump());
    throw std::invalid_argument(what + " must be a number or a rational string");
}

inline BooleanFunction function_from_text(const std::string& text, int arity) {
    bool bits = !text.empty();
    for (char ch : text)
        if (ch != '0' && ch != '1') bits = false;
    bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    if (bits || hex) {
        BooleanFunction f = BooleanFunction::parse_table(text);
        if (f.arity() != arity)
            throw std::invalid_argument("truth table arity " + std::to_string(f.arity()) +
                                        " does not match declared input count " +
                                        std::to_string(arity));
        return f;
    }
    return parse_expression(text, arity);
}

inline NetworkSpec network_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array())
        throw std::invalid_argument("network spec must be an object with a nodes array");
    NetworkSpec net;
    net.N = static_cast<int>(j["nodes"].size());
    if (j.contains("N") && j["N"].get<int>() != net.N)
        throw std::invalid_argument("declared N does not match the number of nodes");
    for (const auto& jn : j["nodes"]) {
        if (!jn.contains("inputs") || !jn["inputs"].is_array() || !jn.contains("function"))
            throw std::invalid_argument("each node needs an inputs array and a function");
        NetworkNode node;
        for (const auto& ji : jn["inputs"]) node.inputs.push_back(ji.get<int>());
        node.function = function_from_text(jn["function"].get<std::string>(),
                                           static_cast<int>(node.inputs.size()));
        net.nodes.push_back(std::move(node));
    }
    validate_network(net);
    return net;
}

inline SddsSpec sdds_from_json(const nlohmann::json& j) {
    SddsSpec spec;
    spec.net = network_from_json(j);
    for (int i = 0; i < spec.net.N; ++i) {
        const auto& jn = j["nodes"][static_cast<std::size_t>(i)];
        if (!jn.contains("p_up") || !jn.contains("p_down"))
            throw std::invalid_argument("node " + std::to_string(i + 1) +
                                        ": propensity spec needs p_up and p_down");
        spec.p_up.push_back(rational_from_json(jn["p_up"], "p_up"));
        spec.p_down.push_back(rational_from_json(jn["p_down"], "p_down"));
    }
    validate_sdds(spec);
    return spec;
}

inline nlohmann::json network_to_json(const NetworkSpec& net) {
    nlohmann::json j;
    j["N"] = net.N;
    j["nodes"] = nlohmann::json::array();
    for (const NetworkNode& node : net.nodes) {
        nlohmann::json jn;
        jn["inputs"] = node.inputs;
        jn["function"] = node.function.render_table();
        j["nodes"].push_back(std::move(jn));
    }
    return j;
}

inline nlohmann::json sdds_to_json(const SddsSpec& spec) {
    nlohmann::json j = network_to_json(spec.net);
    for (int i = 0; i < spec.net.N; ++i) {
        j["nodes"][static_cast<std::size_t>(i)]["p_up"] = to_fraction_string(spec.p_up[i]);
        j["nodes"][static_cast<std::size_t>(i)]["p_down"] = to_fraction_string(spec.p_down[i]);
    }
    return j;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

inline NetworkSpec load_network(const std::string& path) {
    return network_from_json(load_json_file(path));
}

inline SddsSpec load_sdds(const std::string& path) { return sdds_from_json(load_json_file(path)); }

}  // namespace canal

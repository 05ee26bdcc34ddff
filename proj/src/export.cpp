#include "blockpar/export.hpp"

#include <sstream>

#include <json.hpp>

namespace blockpar {

namespace {

std::string bits(const DynamicsGraph& g, std::uint64_t x) {
    return Configuration::from_index(g.size(), x).to_string();
}

} // namespace

std::string to_dot(const DynamicsGraph& g) {
    std::ostringstream out;
    out << "digraph dynamics {\n";
    for (std::uint64_t x = 0; x < g.state_count(); ++x) out << "  \"" << bits(g, x) << "\";\n";
    for (std::uint64_t x = 0; x < g.state_count(); ++x)
        out << "  \"" << bits(g, x) << "\" -> \"" << bits(g, g.successor(x)) << "\";\n";
    out << "}\n";
    return out.str();
}

std::string to_json(const DynamicsGraph& g, int indent) {
    nlohmann::json edges = nlohmann::json::array();
    for (std::uint64_t x = 0; x < g.state_count(); ++x) edges.push_back({bits(g, x), bits(g, g.successor(x))});
    nlohmann::json members = nlohmann::json::array();
    for (const auto& c : g.cycles()) {
        nlohmann::json cycle = nlohmann::json::array();
        for (auto s : c.states) cycle.push_back(bits(g, s));
        members.push_back(std::move(cycle));
    }
    nlohmann::json doc{{"n", g.size()},
                       {"edges", std::move(edges)},
                       {"cycles", {{"lengths", g.cycle_lengths()}, {"members", std::move(members)}}}};
    return doc.dump(indent);
}

GadgetFiles export_gadget(const GadgetBundle& gadget) {
    return {serialize_network(gadget.network), serialize_schedule(gadget.schedule) + "\n"};
}

} // namespace blockpar

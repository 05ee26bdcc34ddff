#pragma once

#include <string>

#include "blockpar/dynamics.hpp"
#include "blockpar/gadgets.hpp"

namespace blockpar {

/// DOT digraph: one node per configuration bitstring, one arc per successor.
std::string to_dot(const DynamicsGraph& g);

/// JSON object {"n", "edges": [[x, y], ...], "cycles": {"lengths", "members"}}
/// with configurations written as bitstrings.
std::string to_json(const DynamicsGraph& g, int indent = -1);

/// Network DSL text and schedule JSON for a gadget.
struct GadgetFiles {
    std::string network;
    std::string schedule;
};
GadgetFiles export_gadget(const GadgetBundle& gadget);

} // namespace blockpar

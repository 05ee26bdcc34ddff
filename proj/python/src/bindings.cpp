// Python bindings. Schedules cross the boundary as lists of o-blocks,
// configurations as bit strings (automaton 0 leftmost), exact counts as ints.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blockpar/counting.hpp"
#include "blockpar/dynamics.hpp"
#include "blockpar/enumeration.hpp"
#include "blockpar/error.hpp"
#include "blockpar/export.hpp"
#include "blockpar/gadgets.hpp"

namespace py = pybind11;
using namespace blockpar;

namespace {

using OBlocks = std::vector<std::vector<Automaton>>;

py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.str())); }

PartitionedOrder make_schedule(const OBlocks& oblocks, std::optional<unsigned> n) {
    std::size_t total = 0;
    for (const auto& b : oblocks) total += b.size();
    return PartitionedOrder(n.value_or(static_cast<unsigned>(total)), oblocks);
}

OBlocks from_schedule(const PartitionedOrder& mu) { return mu.oblocks(); }

Configuration config(const std::string& bits, const BooleanNetwork& f) { return Configuration::parse(bits, f.size()); }

Limits limits_for(std::uint64_t max_substeps, unsigned max_automata) {
    Limits l;
    l.max_substeps = max_substeps;
    l.max_automata = max_automata;
    return l;
}

} // namespace

PYBIND11_MODULE(_blockpar, m) {
    m.doc() = "Block-parallel Boolean automata networks";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

    // partitions and counting
    m.def("partitions", [](unsigned n) {
        std::vector<std::vector<unsigned>> out;
        for_each_partition(n, [&](const Partition& p) { out.push_back(p.parts_descending()); });
        return out;
    }, py::arg("n"));
    m.def("count_bs", [](unsigned n) { return to_py(count_bs(n)); }, py::arg("n"));
    m.def("count_bp", [](unsigned n) { return to_py(count_bp(n)); }, py::arg("n"));
    m.def("count_bp0", [](unsigned n) { return to_py(count_bp0(n)); }, py::arg("n"));
    m.def("count_bp_star", [](unsigned n) { return to_py(count_bp_star(n)); }, py::arg("n"));
    m.def("count_bs_inter_bp", [](unsigned n) { return to_py(count_bs_inter_bp(n)); }, py::arg("n"));
    m.def("count_bp0_via_egf", [](unsigned n) { return to_py(count_bp0_via_egf(n)); }, py::arg("n"));

    // schedules
    m.def("canonical_schedule", [](const OBlocks& s, std::optional<unsigned> n) { return from_schedule(make_schedule(s, n)); },
          py::arg("schedule"), py::arg("n") = py::none());
    m.def("parse_schedule", [](const std::string& text) { return from_schedule(parse_schedule(text)); }, py::arg("text"));
    m.def("phi", [](const OBlocks& s, std::uint64_t max_blocks) { return phi(make_schedule(s, {}), max_blocks).blocks(); },
          py::arg("schedule"), py::arg("max_blocks") = kDefaultSubstepCap);
    m.def("equiv0", [](const OBlocks& a, const OBlocks& b) { return equiv0(make_schedule(a, {}), make_schedule(b, {})); },
          py::arg("a"), py::arg("b"));
    m.def("equiv_star", [](const OBlocks& a, const OBlocks& b) { return equiv_star(make_schedule(a, {}), make_schedule(b, {})); },
          py::arg("a"), py::arg("b"), "Shift s with phi(b) equal to phi(a) rotated by s, or None.");

    // enumeration
    py::class_<ScheduleStream>(m, "ScheduleStream")
        .def(py::init([](unsigned n, const std::string& cls) { return ScheduleStream(n, parse_schedule_class(cls)); }),
             py::arg("n"), py::arg("cls") = "bp")
        .def("__iter__", [](ScheduleStream& s) -> ScheduleStream& { return s; })
        .def("__next__", [](ScheduleStream& s) {
            if (!s.advance()) throw py::stop_iteration();
            return from_schedule(s.current());
        })
        .def_property_readonly("emitted", &ScheduleStream::emitted);
    m.def("enumerate", [](unsigned n, const std::string& cls) {
        std::vector<OBlocks> out;
        for (const auto& mu : enumerate_all(n, parse_schedule_class(cls))) out.push_back(from_schedule(mu));
        return out;
    }, py::arg("n"), py::arg("cls") = "bp");
    m.def("count_by_enumeration", [](unsigned n, const std::string& cls, unsigned threads) {
        return count_by_enumeration(n, parse_schedule_class(cls), threads);
    }, py::arg("n"), py::arg("cls") = "bp", py::arg("threads") = 1);

    // networks
    py::class_<BooleanNetwork>(m, "Network")
        .def(py::init([](const std::string& text) { return parse_network(text); }), py::arg("text"))
        .def_property_readonly("n", &BooleanNetwork::size)
        .def("local", [](const BooleanNetwork& f, unsigned i) { return f.local(i).to_string(); }, py::arg("i"))
        .def("__str__", &serialize_network)
        .def("__eq__", [](const BooleanNetwork& a, const BooleanNetwork& b) { return a == b; });

    // dynamics
    m.def("step", [](const BooleanNetwork& f, const OBlocks& s, const std::string& x, std::uint64_t cap) {
        return step(f, make_schedule(s, f.size()), config(x, f), limits_for(cap, 20)).to_string();
    }, py::arg("network"), py::arg("schedule"), py::arg("x"), py::arg("max_substeps") = kDefaultSubstepCap);
    m.def("trace", [](const BooleanNetwork& f, const OBlocks& s, const std::string& x, std::uint64_t cap) {
        std::vector<std::string> out;
        for (const auto& c : step_trace(f, make_schedule(s, f.size()), config(x, f), limits_for(cap, 20)))
            out.push_back(c.to_string());
        return out;
    }, py::arg("network"), py::arg("schedule"), py::arg("x"), py::arg("max_substeps") = kDefaultSubstepCap);

    py::class_<DynamicsGraph>(m, "DynamicsGraph")
        .def_property_readonly("n", &DynamicsGraph::size)
        .def_property_readonly("successors", &DynamicsGraph::successors)
        .def_property_readonly("cycles", [](const DynamicsGraph& g) {
            std::vector<std::vector<std::uint64_t>> out;
            for (const auto& c : g.cycles()) out.push_back(c.states);
            return out;
        })
        .def("cycle_lengths", &DynamicsGraph::cycle_lengths)
        .def("limit_set", &DynamicsGraph::limit_set)
        .def("to_dot", [](const DynamicsGraph& g) { return to_dot(g); })
        .def("to_json", [](const DynamicsGraph& g) { return to_json(g); });
    m.def("transition_graph", [](const BooleanNetwork& f, const OBlocks& s, unsigned max_automata, unsigned threads) {
        Limits l = limits_for(kDefaultSubstepCap, max_automata);
        l.threads = threads;
        return transition_graph(f, make_schedule(s, f.size()), l);
    }, py::arg("network"), py::arg("schedule"), py::arg("max_automata") = 20, py::arg("threads") = 1);

    m.def("fixed_points", [](const BooleanNetwork& f, const OBlocks& s) {
        std::vector<std::string> out;
        for (const auto& c : fixed_points(f, make_schedule(s, f.size()))) out.push_back(c.to_string());
        return out;
    }, py::arg("network"), py::arg("schedule"));
    m.def("limit_cycles", [](const BooleanNetwork& f, const OBlocks& s) {
        std::vector<std::vector<std::string>> out;
        for (const auto& cycle : limit_cycles(f, make_schedule(s, f.size()))) {
            auto& row = out.emplace_back();
            for (const auto& c : cycle) row.push_back(c.to_string());
        }
        return out;
    }, py::arg("network"), py::arg("schedule"));
    m.def("has_periodic_point", [](const BooleanNetwork& f, const OBlocks& s, std::uint64_t k) {
        return has_periodic_point(f, make_schedule(s, f.size()), k);
    }, py::arg("network"), py::arg("schedule"), py::arg("k"));
    m.def("reachable", [](const BooleanNetwork& f, const OBlocks& s, const std::string& x, const std::string& y) {
        return reachable(f, make_schedule(s, f.size()), config(x, f), config(y, f));
    }, py::arg("network"), py::arg("schedule"), py::arg("x"), py::arg("y"));
    m.def("preimage", [](const BooleanNetwork& f, const OBlocks& s, const std::string& y) -> std::optional<std::string> {
        const auto x = has_preimage(f, make_schedule(s, f.size()), config(y, f));
        if (!x) return std::nullopt;
        return x->to_string();
    }, py::arg("network"), py::arg("schedule"), py::arg("y"));
    m.def("is_bijective", [](const BooleanNetwork& f, const OBlocks& s) {
        return is_bijective(f, make_schedule(s, f.size()));
    }, py::arg("network"), py::arg("schedule"));
    m.def("is_identity", [](const BooleanNetwork& f, const OBlocks& s) {
        return is_identity(f, make_schedule(s, f.size()));
    }, py::arg("network"), py::arg("schedule"));
    m.def("is_constant", [](const BooleanNetwork& f, const OBlocks& s) -> std::optional<std::string> {
        const auto c = is_constant(f, make_schedule(s, f.size()));
        if (!c) return std::nullopt;
        return c->to_string();
    }, py::arg("network"), py::arg("schedule"));
    m.def("subdynamics", [](const BooleanNetwork& f, const OBlocks& s, const std::vector<std::uint32_t>& pattern) {
        return subdynamics(f, make_schedule(s, f.size()), pattern);
    }, py::arg("network"), py::arg("schedule"), py::arg("pattern"));
    m.def("distinguishing_network", [](const OBlocks& a, const OBlocks& b) -> py::object {
        const auto w = distinguishing_network(make_schedule(a, {}), make_schedule(b, {}));
        if (!w) return py::none();
        return py::make_tuple(w->network, w->witness.to_string(), w->index, w->partner);
    }, py::arg("a"), py::arg("b"), "(network, witness, index, partner) or None.");

    // gadgets
    m.def("counter_gadget", [](unsigned n) {
        const auto g = counter_gadget(n);
        py::dict d;
        d["network"] = g.network;
        d["schedule"] = from_schedule(g.schedule);
        d["primes"] = g.basis.primes;
        d["padding"] = py::make_tuple(g.padding.first, g.padding.last);
        d["counter"] = py::make_tuple(g.counter.first, g.counter.last);
        return d;
    }, py::arg("n"));
}

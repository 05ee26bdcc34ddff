#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "blockpar/network.hpp"
#include "blockpar/schedule.hpp"

namespace blockpar {

/// Desk-scale caps. Exceeding one raises ResourceLimitError, never truncates.
struct Limits {
    std::uint64_t max_substeps = kDefaultSubstepCap;  // |phi(mu)| per step
    unsigned max_automata = 20;                       // n for full-graph analysis
    unsigned max_pattern_nodes = 12;                  // |V(G)| for subdynamics
    unsigned threads = 1;                             // workers for transition_graph
};

/// One step of f under mu: the block updates of phi(mu) composed in order.
Configuration step(const BooleanNetwork& f, const PartitionedOrder& mu, const Configuration& x,
                   const Limits& limits = {});

/// x followed by the configuration after every substep (|phi(mu)| + 1 entries).
std::vector<Configuration> step_trace(const BooleanNetwork& f, const PartitionedOrder& mu, const Configuration& x,
                                      const Limits& limits = {});

/// Fixed-point verification for a single configuration.
bool is_fixed_point(const BooleanNetwork& f, const PartitionedOrder& mu, const Configuration& x,
                    const Limits& limits = {});

/// A limit cycle in orbit order, starting from its smallest state index.
struct Cycle {
    std::vector<std::uint64_t> states;
    std::size_t length() const noexcept { return states.size(); }
};

/// Functional graph of one step on B^n. State index bit i is automaton i.
class DynamicsGraph {
public:
    /// Takes an explicit successor table of size 2^n (or any size for patterns).
    DynamicsGraph(unsigned n, std::vector<std::uint32_t> successors);

    unsigned size() const noexcept { return n_; }
    std::uint64_t state_count() const noexcept { return succ_.size(); }
    std::uint64_t successor(std::uint64_t x) const { return succ_[x]; }
    const std::vector<std::uint32_t>& successors() const noexcept { return succ_; }

    const std::vector<Cycle>& cycles() const noexcept { return cycles_; }
    bool in_limit_set(std::uint64_t x) const { return on_cycle_[x]; }
    /// Index into cycles() of the cycle x eventually reaches.
    std::uint32_t basin(std::uint64_t x) const { return basin_[x]; }
    std::vector<std::uint64_t> limit_set() const;
    /// Sorted multiset of cycle lengths.
    std::vector<std::size_t> cycle_lengths() const;

private:
    void decompose();

    unsigned n_;
    std::vector<std::uint32_t> succ_;
    std::vector<Cycle> cycles_;
    std::vector<bool> on_cycle_;
    std::vector<std::uint32_t> basin_;
};

DynamicsGraph transition_graph(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits = {});

std::vector<Configuration> fixed_points(const BooleanNetwork& f, const PartitionedOrder& mu,
                                        const Limits& limits = {});

/// Every limit cycle with its members.
std::vector<std::vector<Configuration>> limit_cycles(const BooleanNetwork& f, const PartitionedOrder& mu,
                                                     const Limits& limits = {});

/// Whether some x satisfies F^k(x) = x, i.e. some cycle length divides k.
bool has_periodic_point(const DynamicsGraph& g, std::uint64_t k);
bool has_periodic_point(const BooleanNetwork& f, const PartitionedOrder& mu, std::uint64_t k,
                        const Limits& limits = {});

/// The restrictions to the limit sets are isomorphic (equal cycle types).
bool limit_isomorphic(const BooleanNetwork& f, const PartitionedOrder& mu, const PartitionedOrder& mu2,
                      const Limits& limits = {});

/// Whether y lies on the orbit of x (t = 0 included).
bool reachable(const BooleanNetwork& f, const PartitionedOrder& mu, const Configuration& x, const Configuration& y,
               const Limits& limits = {});

/// Some x with step(x) = y (the smallest index), or nullopt.
std::optional<Configuration> has_preimage(const BooleanNetwork& f, const PartitionedOrder& mu, const Configuration& y,
                                          const Limits& limits = {});

/// Image of the global step covers all of B^n.
bool bijective_by_image(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits = {});
/// Every distinct block W of phi(mu) gives a bijective single-block update.
bool bijective_by_blocks(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits = {});
/// Both methods; throws InvariantViolation if they disagree.
bool is_bijective(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits = {});

bool is_identity(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits = {});

/// The common image when the step is a constant map.
std::optional<Configuration> is_constant(const BooleanNetwork& f, const PartitionedOrder& mu,
                                         const Limits& limits = {});

/// Whether the functional graph `pattern` (pattern[v] is the successor of v)
/// embeds injectively into the dynamics, arcs onto arcs.
bool subdynamics(const DynamicsGraph& host, const std::vector<std::uint32_t>& pattern, const Limits& limits = {});
bool subdynamics(const BooleanNetwork& f, const PartitionedOrder& mu, const std::vector<std::uint32_t>& pattern,
                 const Limits& limits = {});

/// A network on which two schedules with different phi images disagree.
struct DistinguishingWitness {
    BooleanNetwork network;   // f_i = x_i | x_j, f_j = x_i, identity elsewhere
    Configuration witness;    // x_i = 0, x_j = 1, zeros elsewhere
    Automaton index;          // i: the images differ here
    Automaton partner;        // j
};

/// Looks for automata i != j with t(mu, i) <= t(mu, j) and t(mu2, i) > t(mu2, j),
/// where t is the first substep updating an automaton. Returns nullopt when no
/// such pair exists. Throws DomainError when mu and mu2 are equivalent.
std::optional<DistinguishingWitness> distinguishing_network(const PartitionedOrder& mu, const PartitionedOrder& mu2);

} // namespace blockpar

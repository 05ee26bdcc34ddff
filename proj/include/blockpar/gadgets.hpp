#pragma once

#include "blockpar/network.hpp"
#include "blockpar/partitions.hpp"
#include "blockpar/schedule.hpp"

namespace blockpar {

/// Half-open automaton index range [first, last).
struct IndexRange {
    Automaton first = 0;
    Automaton last = 0;
    unsigned size() const noexcept { return last - first; }
    bool contains(Automaton i) const noexcept { return first <= i && i < last; }
};

struct GadgetBundle {
    BooleanNetwork network;
    PartitionedOrder schedule;
    PrimeGadgetBasis basis;
    IndexRange padding;  // constant-0 automata in prime-length o-blocks
    IndexRange counter;  // saturating counter, least significant bit first
    unsigned counter_width = 0;
};

/// Prime padding automata followed by an n-bit saturating counter in singleton
/// o-blocks. One step runs lcm(primes) > 2^n substeps, so every configuration
/// ends at zero padding and an all-ones counter. Throws DomainError for n < 2.
GadgetBundle counter_gadget(unsigned n, PrimeSelection rule = PrimeSelection::FirstKn);

} // namespace blockpar

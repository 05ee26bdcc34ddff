#include "blockpar/gadgets.hpp"

#include "blockpar/error.hpp"

namespace blockpar {

namespace {

Expr all_of(Automaton first, Automaton last) {
    Expr acc = Expr::constant(true);
    for (Automaton i = first; i < last; ++i) acc = i == first ? Expr::variable(i) : acc & Expr::variable(i);
    return acc;
}

} // namespace

GadgetBundle counter_gadget(unsigned n, PrimeSelection rule) {
    if (n < 2) throw DomainError("counter_gadget requires n >= 2");
    PrimeGadgetBasis basis = gadget_primes(n, rule);
    const auto q = static_cast<Automaton>(basis.total());
    const unsigned size = q + n;

    std::vector<Expr> locals;
    locals.reserve(size);
    for (Automaton i = 0; i < q; ++i) locals.push_back(Expr::constant(false));
    for (Automaton b = q; b < size; ++b) {
        // b' = b xor carry-in, pinned to 1 once the counter is full.
        Expr flip = b == q ? !Expr::variable(b) : Expr::variable(b) ^ all_of(q, b);
        locals.push_back(std::move(flip) | all_of(q, size));
    }

    std::vector<OBlock> oblocks;
    for (std::size_t k = 0; k < basis.primes.size(); ++k) {
        OBlock block;
        for (auto i = basis.cumulative[k]; i < basis.cumulative[k + 1]; ++i) block.push_back(static_cast<Automaton>(i));
        oblocks.push_back(std::move(block));
    }
    for (Automaton b = q; b < size; ++b) oblocks.push_back({b});

    return GadgetBundle{BooleanNetwork(size, std::move(locals)), PartitionedOrder(size, std::move(oblocks)),
                        std::move(basis), IndexRange{0, q}, IndexRange{q, static_cast<Automaton>(size)}, n};
}

} // namespace blockpar

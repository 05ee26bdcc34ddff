#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blockpar/schedule.hpp"

namespace blockpar {

/// A point of B^n. Bit i is the state of automaton i; in text form automaton 0
/// is the leftmost character.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(unsigned n) : n_(n), words_((n + 63) / 64, 0) {}

    /// Parses "[01]{n}". When n is given the length must match.
    static Configuration parse(std::string_view bits, std::optional<unsigned> n = std::nullopt);
    /// Bit i of index is automaton i (n <= 64).
    static Configuration from_index(unsigned n, std::uint64_t index);

    unsigned size() const noexcept { return n_; }
    bool get(unsigned i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void set(unsigned i, bool value) {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value) words_[i / 64] |= mask;
        else words_[i / 64] &= ~mask;
    }
    std::uint64_t to_index() const;  // requires n <= 64
    std::string to_string() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend auto operator<=>(const Configuration&, const Configuration&) = default;

    std::size_t hash() const noexcept;

private:
    unsigned n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Boolean expression over automaton states, stored in postfix order.
class Expr {
public:
    enum class Op : std::uint8_t { Var, Const, Not, And, Or, Xor };
    struct Node {
        Op op;
        std::uint32_t value;  // variable index, or constant bit
        friend bool operator==(const Node&, const Node&) = default;
    };

    static Expr variable(Automaton i);
    static Expr constant(bool value);

    friend Expr operator!(Expr e);
    friend Expr operator&(Expr a, Expr b);
    friend Expr operator|(Expr a, Expr b);
    friend Expr operator^(Expr a, Expr b);

    /// Evaluates 64 configurations at once: lane(i) returns the states of
    /// automaton i packed one configuration per bit.
    template <class LaneFn>
    std::uint64_t eval_lanes(LaneFn&& lane) const;

    bool eval(const Configuration& x) const {
        return eval_lanes([&](Automaton i) { return x.get(i) ? ~std::uint64_t{0} : 0; }) & 1u;
    }

    /// Largest variable index referenced, if any.
    std::optional<Automaton> max_variable() const;
    bool is_variable(Automaton i) const { return nodes_.size() == 1 && nodes_[0] == Node{Op::Var, i}; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }

    /// Minimal-parenthesis text in the network DSL.
    std::string to_string() const;

    friend bool operator==(const Expr& a, const Expr& b) { return a.nodes_ == b.nodes_; }

private:
    static Expr binary(Op op, Expr a, Expr b);

    std::vector<Node> nodes_;
    std::uint32_t stack_need_ = 1;
};

/// n local functions; locals[i] computes the next state of automaton i.
class BooleanNetwork {
public:
    /// Throws DomainError when locals.size() != n or an expression reads x_k with k >= n.
    BooleanNetwork(unsigned n, std::vector<Expr> locals);

    static BooleanNetwork identity(unsigned n);
    static BooleanNetwork constant(unsigned n, bool value);

    unsigned size() const noexcept { return n_; }
    const Expr& local(unsigned i) const { return locals_.at(i); }
    const std::vector<Expr>& locals() const noexcept { return locals_; }

    friend bool operator==(const BooleanNetwork&, const BooleanNetwork&) = default;

private:
    unsigned n_;
    std::vector<Expr> locals_;
};

/// Parses the network DSL:
///   # comment
///   n=3
///   x0 = x1 & !x2
/// Operators by increasing binding: | ^ & !, with parentheses and constants 0/1.
/// Unassigned automata keep their state (x_i = x_i). Without a header n is
/// 1 + the largest index mentioned.
BooleanNetwork parse_network(std::string_view text);

/// Canonical text: header then one assignment per automaton.
std::string serialize_network(const BooleanNetwork& f);

/// f_i(x). Throws DomainError on a bad index or size mismatch.
bool eval_local(const BooleanNetwork& f, unsigned i, const Configuration& x);

/// Simultaneous update of the automata in w, all reading x.
Configuration update_block(const BooleanNetwork& f, std::span<const Automaton> w, const Configuration& x);

/// The same update on 64 packed configurations; lanes[i] holds automaton i.
/// scratch is resized as needed and may be reused across calls.
void update_block_lanes(const BooleanNetwork& f, std::span<const Automaton> w, std::vector<std::uint64_t>& lanes,
                        std::vector<std::uint64_t>& scratch);

/// Random expression trees of depth at most max_depth over n variables.
/// Deterministic for a given engine state on every platform.
BooleanNetwork random_network(unsigned n, std::mt19937_64& rng, unsigned max_depth = 4);

template <class LaneFn>
std::uint64_t Expr::eval_lanes(LaneFn&& lane) const {
    std::uint64_t small[32] = {};
    std::vector<std::uint64_t> large;
    std::uint64_t* stack = small;
    if (stack_need_ > 32) {
        large.resize(stack_need_);
        stack = large.data();
    }
    std::size_t top = 0;
    for (const Node& node : nodes_) {
        switch (node.op) {
        case Op::Var: stack[top++] = lane(node.value); break;
        case Op::Const: stack[top++] = node.value ? ~std::uint64_t{0} : 0; break;
        case Op::Not: stack[top - 1] = ~stack[top - 1]; break;
        case Op::And: --top; stack[top - 1] &= stack[top]; break;
        case Op::Or: --top; stack[top - 1] |= stack[top]; break;
        case Op::Xor: --top; stack[top - 1] ^= stack[top]; break;
        }
    }
    return stack[0];
}

} // namespace blockpar

template <>
struct std::hash<blockpar::Configuration> {
    std::size_t operator()(const blockpar::Configuration& c) const noexcept { return c.hash(); }
};

#include <doctest.h>

#include "blockpar/dynamics.hpp"
#include "blockpar/enumeration.hpp"
#include "blockpar/error.hpp"
#include "blockpar/gadgets.hpp"
#include "oracles.hpp"

using namespace blockpar;

namespace {

Expr x(Automaton i) { return Expr::variable(i); }
Configuration cfg(const char* bits) { return Configuration::parse(bits); }
PartitionedOrder po(unsigned n, std::vector<OBlock> blocks) { return PartitionedOrder(n, std::move(blocks)); }

BooleanNetwork example_network() { return BooleanNetwork(3, {x(1), !x(0), x(0) & x(2)}); }
BooleanNetwork swap2() { return BooleanNetwork(2, {x(1), x(0)}); }
BooleanNetwork negate1() { return BooleanNetwork(1, {!x(0)}); }

std::vector<std::string> bits_of(const std::vector<Configuration>& v) {
    std::vector<std::string> out;
    for (const auto& c : v) out.push_back(c.to_string());
    return out;
}

} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("step and trace on the three-automaton example") {
    const auto f = example_network();
    const auto mu = po(3, {{0}, {1, 2}});
    CHECK(step(f, mu, cfg("111")) == cfg("001"));
    CHECK(bits_of(step_trace(f, mu, cfg("111"))) == std::vector<std::string>{"111", "101", "001"});
}

TEST_CASE("identity network is inert") {
    const auto f = BooleanNetwork::identity(4);
    const auto mu = po(4, {{2, 0}, {1, 3}});
    for (std::uint64_t k = 0; k < 16; ++k) CHECK(step(f, mu, Configuration::from_index(4, k)).to_index() == k);
    const auto t = step_trace(f, PartitionedOrder::parallel(4), cfg("1010"));
    CHECK(t.size() == 2);
    CHECK(t[0] == t[1]);
    CHECK(is_identity(f, mu));
    CHECK(fixed_points(f, mu).size() == 16);
}

TEST_CASE("size mismatches and caps") {
    CHECK_THROWS_AS(step(example_network(), po(2, {{0, 1}}), cfg("11")), DomainError);
    CHECK_THROWS_AS(step(example_network(), po(3, {{0}, {1, 2}}), cfg("11")), DomainError);
    const auto g = counter_gadget(3);
    Limits tight;
    tight.max_substeps = 100;
    CHECK_THROWS_AS(step(g.network, g.schedule, Configuration(20), tight), ResourceLimitError);
    Limits small;
    small.max_automata = 10;
    CHECK_THROWS_AS(transition_graph(g.network, g.schedule, small), ResourceLimitError);
}

TEST_CASE("transition graph examples") {
    const auto neg = transition_graph(negate1(), PartitionedOrder::parallel(1));
    CHECK(neg.cycle_lengths() == std::vector<std::size_t>{2});
    CHECK(fixed_points(negate1(), PartitionedOrder::parallel(1)).empty());

    const auto sw = transition_graph(swap2(), PartitionedOrder::parallel(2));
    CHECK(sw.cycle_lengths() == std::vector<std::size_t>{1, 1, 2});
    CHECK(bits_of(fixed_points(swap2(), PartitionedOrder::parallel(2))) == std::vector<std::string>{"00", "11"});
    const auto cycles = limit_cycles(swap2(), PartitionedOrder::parallel(2));
    CHECK(cycles.size() == 3);
    CHECK(std::any_of(cycles.begin(), cycles.end(), [](const auto& c) {
        return c.size() == 2 && c[0] == cfg("10") && c[1] == cfg("01");
    }));
}

TEST_CASE("periodic points") {
    CHECK(has_periodic_point(swap2(), PartitionedOrder::parallel(2), 2));
    CHECK(has_periodic_point(BooleanNetwork::identity(2), PartitionedOrder::parallel(2), 1));
    CHECK_FALSE(has_periodic_point(negate1(), PartitionedOrder::parallel(1), 1));
    CHECK(has_periodic_point(negate1(), PartitionedOrder::parallel(1), 2));
    CHECK_THROWS_AS(has_periodic_point(negate1(), PartitionedOrder::parallel(1), 0), DomainError);
}

TEST_CASE("limit isomorphism") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        const auto f = random_network(2, rng);
        CHECK(limit_isomorphic(f, po(2, {{0, 1}}), po(2, {{1, 0}})));
        CHECK(limit_isomorphic(f, po(2, {{0}, {1}}), po(2, {{0}, {1}})));
    }
}

TEST_CASE("reachability") {
    CHECK(reachable(example_network(), po(3, {{0}, {1, 2}}), cfg("010"), cfg("010")));
    CHECK(reachable(negate1(), PartitionedOrder::parallel(1), cfg("0"), cfg("1")));
    CHECK_FALSE(reachable(BooleanNetwork::identity(2), PartitionedOrder::parallel(2), cfg("01"), cfg("10")));
    CHECK(reachable(swap2(), PartitionedOrder::parallel(2), cfg("01"), cfg("10")));
}

TEST_CASE("preimages") {
    const auto f = BooleanNetwork::constant(3, false);
    CHECK(has_preimage(f, PartitionedOrder::parallel(3), cfg("000")) == cfg("000"));
    CHECK_FALSE(has_preimage(f, PartitionedOrder::parallel(3), cfg("100")).has_value());
    // Bijective dynamics: exactly one preimage each.
    const auto mu = po(3, {{0}, {1, 2}});
    const auto g = BooleanNetwork(3, {x(0) ^ x(1), x(1), !x(2)});
    const auto graph = transition_graph(g, mu);
    for (std::uint64_t y = 0; y < 8; ++y) {
        const auto pre = has_preimage(g, mu, Configuration::from_index(3, y));
        REQUIRE(pre.has_value());
        CHECK(graph.successor(pre->to_index()) == y);
        CHECK(std::count(graph.successors().begin(), graph.successors().end(), y) == 1);
    }
}

TEST_CASE("bijectivity") {
    const auto neg = BooleanNetwork(3, {!x(0), !x(1), !x(2)});
    CHECK(is_bijective(neg, PartitionedOrder::parallel(3)));
    CHECK_FALSE(is_bijective(BooleanNetwork::constant(2, false), PartitionedOrder::parallel(2)));
    // Blocks {0,1} then {0,2}: the swap is bijective but the second block
    // overwrites x0 with x1, so 010 and 000 collide.
    const auto swap = BooleanNetwork(3, {x(1), x(0), x(2)});
    CHECK_FALSE(is_bijective(swap, po(3, {{0}, {1, 2}})));
    CHECK(step(swap, po(3, {{0}, {1, 2}}), cfg("010")) == step(swap, po(3, {{0}, {1, 2}}), cfg("000")));
    CHECK(is_bijective(swap, PartitionedOrder::parallel(3)));
    CHECK(is_bijective(BooleanNetwork(3, {x(0) ^ x(1), x(1), !x(2)}), po(3, {{0}, {1, 2}})));
    CHECK_FALSE(is_bijective(example_network(), po(3, {{0}, {1, 2}})));
}

TEST_CASE("identity and constant deciders") {
    const auto f = BooleanNetwork(3, {!x(0), x(1), x(2)});
    CHECK(is_identity(f, po(3, {{0}, {1, 2}})));
    CHECK_FALSE(is_identity(f, PartitionedOrder::parallel(3)));
    CHECK_FALSE(is_constant(BooleanNetwork::identity(2), PartitionedOrder::parallel(2)).has_value());
    CHECK(is_constant(BooleanNetwork::constant(4, false), PartitionedOrder::parallel(4)) == Configuration(4));
}

TEST_CASE("subdynamics examples") {
    const std::vector<std::uint32_t> loop{0}, two{1, 0}, three{1, 2, 0};
    CHECK(subdynamics(swap2(), PartitionedOrder::parallel(2), two));
    CHECK_FALSE(subdynamics(BooleanNetwork::identity(3), PartitionedOrder::parallel(3), three));
    CHECK(subdynamics(BooleanNetwork::identity(1), PartitionedOrder::parallel(1), loop));
    CHECK_FALSE(subdynamics(negate1(), PartitionedOrder::parallel(1), loop));
    CHECK_THROWS_AS(subdynamics(swap2(), PartitionedOrder::parallel(2), std::vector<std::uint32_t>{2, 0}),
                    DomainError);
    CHECK_THROWS_AS(subdynamics(swap2(), PartitionedOrder::parallel(2), std::vector<std::uint32_t>{}), DomainError);
    Limits l;
    l.max_pattern_nodes = 2;
    CHECK_THROWS_AS(subdynamics(swap2(), PartitionedOrder::parallel(2), three, l), ResourceLimitError);
}

TEST_CASE("subdynamics agrees with brute-force embedding") {
    std::mt19937_64 rng(17);
    const std::vector<std::vector<std::uint32_t>> patterns{
        {0},       {1, 0},       {1, 1},       {1, 2, 2},    {1, 2, 0},    {2, 2, 2},
        {1, 0, 0}, {1, 0, 3, 2}, {0, 1},       {1, 1, 1, 1}, {1, 2, 3, 3}, {0, 0, 1, 1}, {3, 3, 3, 3, 0},
    };
    for (int t = 0; t < 40; ++t) {
        const unsigned n = 2 + t % 3;
        const auto f = random_network(n, rng);
        const auto mu = enumerate_all(n, ScheduleClass::All)[rng() % 3];
        const auto host = oracle::successor_table(f, oracle::to_schedule(mu));
        const auto graph = transition_graph(f, mu);
        for (const auto& p : patterns) {
            CAPTURE(t);
            CHECK(subdynamics(graph, p) == oracle::embeds(p, host));
        }
        CHECK(subdynamics(graph, {0}) == !fixed_points(f, mu).empty());
    }
}

TEST_CASE("distinguishing networks") {
    const auto a = po(2, {{0, 1}});
    const auto b = po(2, {{1, 0}});
    const auto w = distinguishing_network(a, b);
    REQUIRE(w.has_value());
    CHECK(w->index == 0);
    CHECK(w->partner == 1);
    CHECK(w->witness == cfg("01"));
    CHECK(w->network.local(0) == (x(0) | x(1)));
    CHECK(w->network.local(1) == x(0));
    CHECK(step(w->network, a, w->witness).get(0) != step(w->network, b, w->witness).get(0));

    const auto par = PartitionedOrder::parallel(2);
    const auto w2 = distinguishing_network(par, b);
    REQUIRE(w2.has_value());
    CHECK(step(w2->network, par, w2->witness).get(w2->index) != step(w2->network, b, w2->witness).get(w2->index));

    CHECK_THROWS_AS(distinguishing_network(a, a), DomainError);
    CHECK_THROWS_AS(distinguishing_network(po(4, {{0, 1}, {2, 3}}), po(4, {{0, 3}, {2, 1}})), DomainError);
}

TEST_CASE("graph invariants on random networks") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
        const unsigned n = 1 + t % 5;
        const auto f = random_network(n, rng);
        const auto all = enumerate_all(n, ScheduleClass::All);
        const auto& mu = all[rng() % all.size()];
        const auto g = transition_graph(f, mu);
        const auto succ = oracle::successor_table(f, oracle::to_schedule(mu));
        REQUIRE(g.state_count() == succ.size());
        for (std::uint64_t s = 0; s < succ.size(); ++s) CHECK(g.successor(s) == succ[s]);
        CHECK(g.cycle_lengths() == oracle::cycle_lengths(succ));

        // Limit set is closed and the successor map permutes it.
        const auto omega = g.limit_set();
        std::set<std::uint64_t> image;
        for (auto s : omega) image.insert(g.successor(s));
        CHECK(image == std::set<std::uint64_t>(omega.begin(), omega.end()));
        std::size_t members = 0;
        for (const auto& c : g.cycles()) {
            members += c.length();
            CHECK(*std::min_element(c.states.begin(), c.states.end()) == c.states.front());
            for (std::size_t i = 0; i < c.length(); ++i)
                CHECK(g.successor(c.states[i]) == c.states[(i + 1) % c.length()]);
        }
        CHECK(members == omega.size());
        // Every state's basin is the cycle its orbit reaches.
        for (std::uint64_t s = 0; s < succ.size(); ++s) {
            std::uint64_t y = s;
            for (std::size_t k = 0; k < succ.size(); ++k) y = succ[y];
            const auto& c = g.cycles()[g.basin(s)];
            CHECK(std::find(c.states.begin(), c.states.end(), y) != c.states.end());
        }
        // Periodic points by cycle divisibility.
        for (std::uint64_t k = 1; k <= 6; ++k) {
            bool expected = false;
            for (auto len : g.cycle_lengths()) expected = expected || k % len == 0;
            CHECK(has_periodic_point(g, k) == expected);
        }
    }
}

TEST_CASE("step matches trace and manual block composition") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 100; ++t) {
        const unsigned n = 1 + t % 6;
        const auto f = random_network(n, rng);
        const auto all = enumerate_all(n, ScheduleClass::LimitIsomorphism);
        const auto& mu = all[rng() % all.size()];
        const auto x0 = Configuration::from_index(n, rng() % (1u << n));
        const auto trace = step_trace(f, mu, x0);
        const auto y = step(f, mu, x0);
        CHECK(trace.back() == y);
        CHECK(BigInt(trace.size() - 1) == mu.substep_count());
        auto cur = x0;
        const auto seq = phi(mu);
        for (const auto& w : seq.blocks()) cur = update_block(f, w, cur);
        CHECK(cur == y);
        CHECK(oracle::step(f, oracle::to_schedule(mu), x0) == y);
        CHECK(is_fixed_point(f, mu, x0) == (y == x0));
    }
}

TEST_CASE("threaded transition graphs are identical") {
    std::mt19937_64 rng(31);
    const auto f = random_network(12, rng);
    const auto mu = po(12, {{0, 1, 2}, {3, 4}, {5}, {6, 7, 8, 9}, {10, 11}});
    Limits par;
    par.threads = 4;
    CHECK(transition_graph(f, mu).successors() == transition_graph(f, mu, par).successors());
}

}

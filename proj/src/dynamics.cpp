#include "blockpar/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "blockpar/error.hpp"

namespace blockpar {

namespace {

constexpr std::uint64_t kAllOnes = ~std::uint64_t{0};

// Lane k of pattern i has bit i of k, for the low six index bits.
constexpr std::uint64_t kLowBitPatterns[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

void require_same_size(const BooleanNetwork& f, const PartitionedOrder& mu) {
    if (f.size() != mu.size()) {
        throw DomainError("network has " + std::to_string(f.size()) + " automata but the schedule covers " +
                          std::to_string(mu.size()));
    }
}

std::uint64_t checked_substeps(const PartitionedOrder& mu, const Limits& limits) {
    const BigInt l = mu.substep_count();
    if (l > limits.max_substeps) {
        throw ResourceLimitError("schedule expands to " + l.str() + " substeps per step, above the cap of " +
                                 std::to_string(limits.max_substeps));
    }
    return static_cast<std::uint64_t>(l);
}

void require_desk_scale(const BooleanNetwork& f, const Limits& limits) {
    const unsigned cap = std::min(limits.max_automata, 30u);
    if (f.size() > cap) {
        throw ResourceLimitError("full-graph analysis is capped at n=" + std::to_string(cap) + ", got n=" +
                                 std::to_string(f.size()));
    }
}

/// Walks the substeps of phi(mu) without materializing the sequence.
template <class Fn>
void for_each_substep(const PartitionedOrder& mu, std::uint64_t length, Fn&& fn) {
    Block w(mu.oblock_count());
    for (std::uint64_t i = 0; i < length; ++i) {
        for (std::size_t k = 0; k < mu.oblock_count(); ++k) {
            const auto& s = mu.oblocks()[k];
            w[k] = s[i % s.size()];
        }
        fn(std::span<const Automaton>(w));
    }
}

std::vector<std::uint64_t> lanes_of(const Configuration& x) {
    std::vector<std::uint64_t> lanes(x.size());
    for (unsigned i = 0; i < x.size(); ++i) lanes[i] = x.get(i) ? kAllOnes : 0;
    return lanes;
}

Configuration config_of(const std::vector<std::uint64_t>& lanes) {
    Configuration x(static_cast<unsigned>(lanes.size()));
    for (unsigned i = 0; i < lanes.size(); ++i) x.set(i, lanes[i] & 1u);
    return x;
}

void load_batch(unsigned n, std::uint64_t base, std::vector<std::uint64_t>& lanes) {
    for (unsigned i = 0; i < n; ++i) lanes[i] = i < 6 ? kLowBitPatterns[i] : (((base >> i) & 1u) ? kAllOnes : 0);
}

/// Applies `blocks` in order to every configuration of B^n, writing successor indices.
std::vector<std::uint32_t> image_table(const BooleanNetwork& f, const std::vector<Block>& blocks, unsigned threads) {
    const unsigned n = f.size();
    const std::uint64_t states = std::uint64_t{1} << n;
    const std::uint64_t batches = (states + 63) / 64;
    std::vector<std::uint32_t> succ(states);

    auto work = [&](std::uint64_t first, std::uint64_t last) {
        std::vector<std::uint64_t> lanes(n), scratch;
        for (std::uint64_t b = first; b < last; ++b) {
            const std::uint64_t base = b * 64;
            load_batch(n, base, lanes);
            for (const auto& w : blocks) update_block_lanes(f, w, lanes, scratch);
            const std::uint64_t count = std::min<std::uint64_t>(64, states - base);
            for (std::uint64_t k = 0; k < count; ++k) {
                std::uint32_t y = 0;
                for (unsigned i = 0; i < n; ++i) y |= static_cast<std::uint32_t>((lanes[i] >> k) & 1u) << i;
                succ[base + k] = y;
            }
        }
    };

    threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, batches)));
    if (threads == 1) {
        work(0, batches);
    } else {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (batches + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t first = t * chunk, last = std::min(batches, first + chunk);
            if (first < last) pool.emplace_back(work, first, last);
        }
    }
    return succ;
}

std::vector<Block> step_blocks(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits) {
    require_same_size(f, mu);
    require_desk_scale(f, limits);
    return phi(mu, limits.max_substeps).blocks();
}

} // namespace

// Simulation -------------------------------------------------------------------

Configuration step(const BooleanNetwork& f, const PartitionedOrder& mu, const Configuration& x, const Limits& limits) {
    require_same_size(f, mu);
    if (x.size() != f.size()) throw DomainError("configuration size does not match the network");
    const std::uint64_t length = checked_substeps(mu, limits);
    auto lanes = lanes_of(x);
    std::vector<std::uint64_t> scratch;
    for_each_substep(mu, length, [&](std::span<const Automaton> w) { update_block_lanes(f, w, lanes, scratch); });
    return config_of(lanes);
}

std::vector<Configuration> step_trace(const BooleanNetwork& f, const PartitionedOrder& mu, const Configuration& x,
                                      const Limits& limits) {
    require_same_size(f, mu);
    if (x.size() != f.size()) throw DomainError("configuration size does not match the network");
    const std::uint64_t length = checked_substeps(mu, limits);
    std::vector<Configuration> trace{x};
    trace.reserve(length + 1);
    auto lanes = lanes_of(x);
    std::vector<std::uint64_t> scratch;
    for_each_substep(mu, length, [&](std::span<const Automaton> w) {
        update_block_lanes(f, w, lanes, scratch);
        trace.push_back(config_of(lanes));
    });
    return trace;
}

bool is_fixed_point(const BooleanNetwork& f, const PartitionedOrder& mu, const Configuration& x, const Limits& limits) {
    return step(f, mu, x, limits) == x;
}

// DynamicsGraph ----------------------------------------------------------------

DynamicsGraph::DynamicsGraph(unsigned n, std::vector<std::uint32_t> successors) : n_(n), succ_(std::move(successors)) {
    for (auto y : succ_)
        if (y >= succ_.size()) throw DomainError("successor out of range in functional graph");
    decompose();
}

void DynamicsGraph::decompose() {
    const std::size_t size = succ_.size();
    enum : std::uint8_t { White, Gray, Black };
    std::vector<std::uint8_t> color(size, White);
    on_cycle_.assign(size, false);
    basin_.assign(size, 0);
    std::vector<std::uint32_t> path;

    for (std::size_t start = 0; start < size; ++start) {
        if (color[start] != White) continue;
        path.clear();
        std::uint32_t v = static_cast<std::uint32_t>(start);
        while (color[v] == White) {
            color[v] = Gray;
            path.push_back(v);
            v = succ_[v];
        }
        std::uint32_t basin;
        if (color[v] == Gray) {
            // New cycle: the path suffix starting at v.
            auto it = std::find(path.begin(), path.end(), v);
            Cycle c{std::vector<std::uint64_t>(it, path.end())};
            std::rotate(c.states.begin(), std::min_element(c.states.begin(), c.states.end()), c.states.end());
            basin = static_cast<std::uint32_t>(cycles_.size());
            for (auto s : c.states) on_cycle_[s] = true;
            cycles_.push_back(std::move(c));
        } else {
            basin = basin_[v];
        }
        for (auto u : path) {
            color[u] = Black;
            basin_[u] = basin;
        }
    }
}

std::vector<std::uint64_t> DynamicsGraph::limit_set() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < succ_.size(); ++x)
        if (on_cycle_[x]) out.push_back(x);
    return out;
}

std::vector<std::size_t> DynamicsGraph::cycle_lengths() const {
    std::vector<std::size_t> out;
    out.reserve(cycles_.size());
    for (const auto& c : cycles_) out.push_back(c.length());
    std::sort(out.begin(), out.end());
    return out;
}

DynamicsGraph transition_graph(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits) {
    const auto blocks = step_blocks(f, mu, limits);
    return DynamicsGraph(f.size(), image_table(f, blocks, limits.threads));
}

// Deciders ---------------------------------------------------------------------

std::vector<Configuration> fixed_points(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits) {
    const auto g = transition_graph(f, mu, limits);
    std::vector<Configuration> out;
    for (const auto& c : g.cycles())
        if (c.length() == 1) out.push_back(Configuration::from_index(f.size(), c.states[0]));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.to_index() < b.to_index(); });
    return out;
}

std::vector<std::vector<Configuration>> limit_cycles(const BooleanNetwork& f, const PartitionedOrder& mu,
                                                     const Limits& limits) {
    const auto g = transition_graph(f, mu, limits);
    std::vector<std::vector<Configuration>> out;
    for (const auto& c : g.cycles()) {
        std::vector<Configuration> members;
        for (auto s : c.states) members.push_back(Configuration::from_index(f.size(), s));
        out.push_back(std::move(members));
    }
    return out;
}

bool has_periodic_point(const DynamicsGraph& g, std::uint64_t k) {
    if (k == 0) throw DomainError("period k must be positive");
    return std::any_of(g.cycles().begin(), g.cycles().end(), [k](const Cycle& c) { return k % c.length() == 0; });
}

bool has_periodic_point(const BooleanNetwork& f, const PartitionedOrder& mu, std::uint64_t k, const Limits& limits) {
    return has_periodic_point(transition_graph(f, mu, limits), k);
}

bool limit_isomorphic(const BooleanNetwork& f, const PartitionedOrder& mu, const PartitionedOrder& mu2,
                      const Limits& limits) {
    return transition_graph(f, mu, limits).cycle_lengths() == transition_graph(f, mu2, limits).cycle_lengths();
}

bool reachable(const BooleanNetwork& f, const PartitionedOrder& mu, const Configuration& x, const Configuration& y,
               const Limits& limits) {
    if (x.size() != f.size() || y.size() != f.size()) throw DomainError("configuration size does not match the network");
    std::unordered_set<Configuration> seen;
    Configuration cur = x;
    while (seen.insert(cur).second) {
        if (cur == y) return true;
        cur = step(f, mu, cur, limits);
    }
    return false;
}

std::optional<Configuration> has_preimage(const BooleanNetwork& f, const PartitionedOrder& mu, const Configuration& y,
                                          const Limits& limits) {
    if (y.size() != f.size()) throw DomainError("configuration size does not match the network");
    const auto g = transition_graph(f, mu, limits);
    const std::uint64_t target = y.to_index();
    for (std::uint64_t x = 0; x < g.state_count(); ++x)
        if (g.successor(x) == target) return Configuration::from_index(f.size(), x);
    return std::nullopt;
}

namespace {

bool is_permutation_table(const std::vector<std::uint32_t>& table) {
    std::vector<bool> hit(table.size(), false);
    for (auto y : table) {
        if (hit[y]) return false;
        hit[y] = true;
    }
    return true;
}

} // namespace

bool bijective_by_image(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits) {
    const auto blocks = step_blocks(f, mu, limits);
    return is_permutation_table(image_table(f, blocks, limits.threads));
}

bool bijective_by_blocks(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits) {
    auto blocks = step_blocks(f, mu, limits);
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    for (const auto& w : blocks)
        if (!is_permutation_table(image_table(f, {w}, limits.threads))) return false;
    return true;
}

bool is_bijective(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits) {
    const bool by_image = bijective_by_image(f, mu, limits);
    const bool by_blocks = bijective_by_blocks(f, mu, limits);
    if (by_image != by_blocks) {
        throw InvariantViolation("global and per-block bijectivity disagree for schedule " + serialize_schedule(mu));
    }
    return by_image;
}

bool is_identity(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits) {
    const auto g = transition_graph(f, mu, limits);
    for (std::uint64_t x = 0; x < g.state_count(); ++x)
        if (g.successor(x) != x) return false;
    return true;
}

std::optional<Configuration> is_constant(const BooleanNetwork& f, const PartitionedOrder& mu, const Limits& limits) {
    const auto g = transition_graph(f, mu, limits);
    const auto& succ = g.successors();
    if (std::adjacent_find(succ.begin(), succ.end(), std::not_equal_to<>()) != succ.end()) return std::nullopt;
    return Configuration::from_index(f.size(), succ.front());
}

// Subdynamics ------------------------------------------------------------------

namespace {

/// In-tree structure of a functional graph: children exclude the cycle predecessor.
struct InForest {
    std::vector<std::uint64_t> offsets;
    std::vector<std::uint32_t> children;

    InForest(const DynamicsGraph& g) {
        const std::size_t size = g.state_count();
        offsets.assign(size + 1, 0);
        auto is_tree_arc = [&](std::uint64_t u) { return !g.in_limit_set(u); };
        for (std::uint64_t u = 0; u < size; ++u)
            if (is_tree_arc(u)) ++offsets[g.successor(u) + 1];
        std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
        children.resize(offsets.back());
        std::vector<std::uint64_t> fill(offsets.begin(), offsets.end() - 1);
        for (std::uint64_t u = 0; u < size; ++u)
            if (is_tree_arc(u)) children[fill[g.successor(u)]++] = static_cast<std::uint32_t>(u);
    }

    std::span<const std::uint32_t> of(std::uint64_t v) const {
        return {children.data() + offsets[v], children.data() + offsets[v + 1]};
    }
};

/// Kuhn's augmenting paths; left side is small, right side may be large.
template <class Compatible>
bool saturating_matching(std::size_t left, const std::vector<std::vector<std::uint32_t>>& candidates,
                         Compatible&& compatible) {
    std::unordered_map<std::uint32_t, std::size_t> owner;
    for (std::size_t l = 0; l < left; ++l) {
        std::unordered_set<std::uint32_t> visited;
        auto augment = [&](auto&& self, std::size_t u) -> bool {
            for (auto r : candidates[u]) {
                if (!compatible(u, r) || !visited.insert(r).second) continue;
                auto it = owner.find(r);
                if (it == owner.end() || self(self, it->second)) {
                    owner[r] = u;
                    return true;
                }
            }
            return false;
        };
        if (!augment(augment, l)) return false;
    }
    return true;
}

class Embedder {
public:
    Embedder(const DynamicsGraph& pattern, const DynamicsGraph& host)
        : pattern_(pattern), host_(host), pattern_forest_(pattern), host_forest_(host) {}

    /// The in-tree hanging at pattern node v embeds into the in-tree at host node u.
    bool tree_embeds(std::uint32_t v, std::uint32_t u) {
        const std::uint64_t key = (static_cast<std::uint64_t>(v) << 32) | u;
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const auto pc = pattern_forest_.of(v);
        const auto hc = host_forest_.of(u);
        bool ok = pc.size() <= hc.size();
        if (ok && !pc.empty()) {
            std::vector<std::vector<std::uint32_t>> cand(pc.size(), std::vector<std::uint32_t>(hc.begin(), hc.end()));
            ok = saturating_matching(pc.size(), cand, [&](std::size_t l, std::uint32_t r) {
                return tree_embeds(pc[l], r);
            });
        }
        memo_[key] = ok;
        return ok;
    }

    /// Pattern cycle embeds onto host cycle with some rotation.
    bool cycle_embeds(const Cycle& pc, const Cycle& hc) {
        const std::size_t len = pc.length();
        if (hc.length() != len) return false;
        for (std::size_t r = 0; r < len; ++r) {
            bool ok = true;
            for (std::size_t t = 0; t < len && ok; ++t)
                ok = tree_embeds(static_cast<std::uint32_t>(pc.states[t]),
                                 static_cast<std::uint32_t>(hc.states[(t + r) % len]));
            if (ok) return true;
        }
        return false;
    }

private:
    const DynamicsGraph& pattern_;
    const DynamicsGraph& host_;
    InForest pattern_forest_;
    InForest host_forest_;
    std::unordered_map<std::uint64_t, bool> memo_;
};

} // namespace

bool subdynamics(const DynamicsGraph& host, const std::vector<std::uint32_t>& pattern, const Limits& limits) {
    if (pattern.empty()) throw DomainError("pattern graph must have at least one vertex");
    if (pattern.size() > limits.max_pattern_nodes) {
        throw ResourceLimitError("pattern has " + std::to_string(pattern.size()) + " vertices, above the cap of " +
                                 std::to_string(limits.max_pattern_nodes));
    }
    const DynamicsGraph g(0, pattern);  // validates out-degree one
    Embedder embed(g, host);

    // Each pattern component owns a cycle, which must land on its own host cycle.
    std::vector<std::vector<std::uint32_t>> candidates(g.cycles().size());
    for (std::size_t c = 0; c < g.cycles().size(); ++c) {
        for (std::uint32_t h = 0; h < host.cycles().size(); ++h)
            if (embed.cycle_embeds(g.cycles()[c], host.cycles()[h])) candidates[c].push_back(h);
        if (candidates[c].empty()) return false;
    }
    return saturating_matching(candidates.size(), candidates, [](std::size_t, std::uint32_t) { return true; });
}

bool subdynamics(const BooleanNetwork& f, const PartitionedOrder& mu, const std::vector<std::uint32_t>& pattern,
                 const Limits& limits) {
    return subdynamics(transition_graph(f, mu, limits), pattern, limits);
}

// Equivalence witnesses --------------------------------------------------------

std::optional<DistinguishingWitness> distinguishing_network(const PartitionedOrder& mu, const PartitionedOrder& mu2) {
    if (mu.size() != mu2.size()) throw DomainError("distinguishing_network: schedules differ in n");
    if (equiv0(mu, mu2)) throw DomainError("distinguishing_network: schedules are dynamically equal");
    const unsigned n = mu.size();
    const auto t = first_update_times(mu);
    const auto t2 = first_update_times(mu2);
    for (Automaton i = 0; i < n; ++i) {
        for (Automaton j = 0; j < n; ++j) {
            if (i == j || !(t[i] <= t[j] && t2[i] > t2[j])) continue;
            std::vector<Expr> locals;
            for (Automaton k = 0; k < n; ++k) locals.push_back(Expr::variable(k));
            locals[i] = Expr::variable(i) | Expr::variable(j);
            locals[j] = Expr::variable(i);
            Configuration x(n);
            x.set(j, true);
            return DistinguishingWitness{BooleanNetwork(n, std::move(locals)), std::move(x), i, j};
        }
    }
    return std::nullopt;
}

} // namespace blockpar

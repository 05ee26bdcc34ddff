#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blockpar/bigint.hpp"
#include "blockpar/partitions.hpp"

namespace blockpar {

using Automaton = std::uint32_t;
using OBlock = std::vector<Automaton>;

/// Default cap on the number of blocks materialized from one schedule.
inline constexpr std::uint64_t kDefaultSubstepCap = 1'000'000;

/// A block-parallel update schedule: an unordered set of ordered o-blocks that
/// covers [0, n) with every automaton exactly once.
///
/// O-blocks are kept in canonical order (by length, then lexicographically), so
/// two schedules are equal as sets iff they compare equal.
class PartitionedOrder {
public:
    /// Validates and canonicalizes. Throws DomainError naming the offending
    /// o-block / position on empty o-blocks, indices >= n, duplicates, or gaps.
    PartitionedOrder(unsigned n, std::vector<OBlock> oblocks);

    /// The parallel schedule {(0), (1), ..., (n-1)}.
    static PartitionedOrder parallel(unsigned n);

    unsigned size() const noexcept { return n_; }
    std::size_t oblock_count() const noexcept { return oblocks_.size(); }
    const std::vector<OBlock>& oblocks() const noexcept { return oblocks_; }

    /// The integer partition formed by the o-block lengths.
    Partition support() const;
    /// lcm of the o-block lengths, i.e. the number of substeps per step.
    BigInt substep_count() const;

    friend bool operator==(const PartitionedOrder&, const PartitionedOrder&) = default;
    friend auto operator<=>(const PartitionedOrder&, const PartitionedOrder&) = default;

private:
    struct Trusted {};
    PartitionedOrder(Trusted, unsigned n, std::vector<OBlock> oblocks);
    friend class ScheduleStream;

    unsigned n_;
    std::vector<OBlock> oblocks_;
};

/// Sorted automaton set updated at one substep.
using Block = std::vector<Automaton>;

/// A sequence of update blocks (W_0, ..., W_{l-1}); blocks are sorted sets.
class BlockSequence {
public:
    /// Blocks may be given in any inner order; they are sorted. Throws
    /// DomainError on empty blocks, repeated indices inside a block, or indices >= n.
    BlockSequence(unsigned n, std::vector<Block> blocks);

    unsigned size() const noexcept { return n_; }
    std::size_t length() const noexcept { return blocks_.size(); }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    const Block& operator[](std::size_t i) const { return blocks_[i]; }

    friend bool operator==(const BlockSequence&, const BlockSequence&) = default;

private:
    unsigned n_;
    std::vector<Block> blocks_;
};

/// Rewrites a partitioned order into its block sequence: block i holds, for
/// each o-block S, the element at position i mod |S|. Throws ResourceLimitError
/// when the lcm of o-block lengths exceeds max_blocks.
BlockSequence phi(const PartitionedOrder& mu, std::uint64_t max_blocks = kDefaultSubstepCap);

/// Block i of phi(mu) without materializing the sequence (i taken mod lcm).
Block phi_block(const PartitionedOrder& mu, std::uint64_t i);

/// O-blocks grouped by length j into matrices with m(j) rows and j columns.
/// Rows follow the canonical o-block order.
struct MatrixRepresentation {
    std::map<unsigned, std::vector<OBlock>> matrices;

    const std::vector<OBlock>& rows(unsigned j) const { return matrices.at(j); }
};

MatrixRepresentation matrix_repr(const PartitionedOrder& mu);

/// phi(mu) == phi(mu2). Throws DomainError when the schedules differ in n.
bool equiv0(const PartitionedOrder& mu, const PartitionedOrder& mu2,
            std::uint64_t max_blocks = kDefaultSubstepCap);

/// Smallest i in [0, l) with phi(mu) == sigma^i(phi(mu2)), where sigma^i moves
/// the block at position 0 to position i; nullopt when there is none.
std::optional<std::uint64_t> equiv_star(const PartitionedOrder& mu, const PartitionedOrder& mu2,
                                        std::uint64_t max_blocks = kDefaultSubstepCap);

/// Shift search on already-rewritten sequences.
std::optional<std::uint64_t> circular_shift_between(const BlockSequence& a, const BlockSequence& b);

/// True iff the blocks are pairwise disjoint, cover [0, n), and share one size.
bool is_bs_intersection(const BlockSequence& seq);

/// First substep at which each automaton is updated (its position in its o-block).
std::vector<std::uint64_t> first_update_times(const PartitionedOrder& mu);

/// Parses "[[0],[1,2]]". n defaults to 1 + the largest index.
PartitionedOrder parse_schedule(std::string_view text, std::optional<unsigned> n = std::nullopt);

/// Canonical compact text, e.g. "[[0],[1,2]]".
std::string serialize_schedule(const PartitionedOrder& mu);

std::string to_string(const BlockSequence& seq);

} // namespace blockpar

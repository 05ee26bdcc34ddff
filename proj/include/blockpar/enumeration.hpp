#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "blockpar/partitions.hpp"
#include "blockpar/schedule.hpp"

namespace blockpar {

enum class ScheduleClass {
    All,                // BP_n
    DynamicalEquality,  // one representative per phi image
    LimitIsomorphism,   // one representative per phi image up to circular shift
};

/// "bp", "bp0", "bpstar".
std::string_view to_string(ScheduleClass cls);
ScheduleClass parse_schedule_class(std::string_view name);

/// Coefficients a[j] (returned at index j - 1) bounding the columns that may
/// hold the minimum of matrix M_j: scanning j from the largest part down,
/// a[j] = gcd(b, j) and b = lcm(b, j) when m(j) > 0, else a[j] = j.
std::vector<unsigned> star_coefficients(const Partition& p);

/// Lazy, duplicate-free enumeration of one schedule class.
///
/// Partitions are visited in partitions_of(n) order. Within a partition the
/// matrices are filled largest part first; every choice is a lexicographic
/// combination over ascending indices, so the output order is deterministic.
/// All recursion is unrolled into an explicit stack of levels, so a stream can
/// be paused between any two elements.
///
/// Single consumer. Distinct streams are independent.
class ScheduleStream {
public:
    ScheduleStream(unsigned n, ScheduleClass cls);
    /// Restricts the stream to schedules whose support is `only`.
    ScheduleStream(unsigned n, ScheduleClass cls, Partition only);

    /// Moves to the next schedule. Returns false once the stream is exhausted.
    bool advance();
    /// The schedule produced by the last successful advance().
    const PartitionedOrder& current() const { return *current_; }
    std::optional<PartitionedOrder> next();

    std::uint64_t emitted() const noexcept { return emitted_; }
    unsigned size() const noexcept { return n_; }
    ScheduleClass schedule_class() const noexcept { return cls_; }

private:
    enum class Kind : std::uint8_t { MatrixSet, RowSet, RowOrder, ColumnSet };
    enum class Source : std::uint8_t { Universe, Chosen, Rest };

    struct Level {
        Level(Kind k, unsigned m, int src, Source f, unsigned t)
            : kind(k), matrix(m), source(src), field(f), take(t) {}

        Kind kind;
        unsigned matrix;       // index into matrices_
        int source;            // level feeding this one's pool, -1 for the universe
        Source field;
        unsigned take;         // elements in the choice, forced one included
        bool min_rule = false; // column that must take the matrix minimum if still free
        std::vector<Automaton> pool;
        std::vector<unsigned> idx;
        std::vector<Automaton> chosen;
        std::vector<Automaton> rest;
        bool forced = false;
    };

    struct MatrixLayout {
        unsigned width;   // j
        unsigned rows;    // m(j)
        int set_level;
        std::vector<int> slots;  // row-order or column levels
    };

    bool start_partition(std::size_t index);
    void build_levels(const Partition& p);
    void init_level(std::size_t i);
    bool step_level(std::size_t i);
    void refresh_choice(Level& lv);
    void materialize();

    unsigned n_;
    ScheduleClass cls_;
    std::vector<Partition> partitions_;
    std::size_t partition_index_ = 0;
    std::vector<Level> levels_;
    std::vector<MatrixLayout> matrices_;
    std::optional<PartitionedOrder> current_;
    std::uint64_t emitted_ = 0;
    bool started_ = false;
    bool done_ = false;
};

/// Drains a stream into a vector (desk-scale n only).
std::vector<PartitionedOrder> enumerate_all(unsigned n, ScheduleClass cls);

/// Counts a class by enumeration, sharding partitions across `threads` workers.
/// The total is identical for every thread count.
std::uint64_t count_by_enumeration(unsigned n, ScheduleClass cls, unsigned threads = 1);

} // namespace blockpar

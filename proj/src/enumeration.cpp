#include "blockpar/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "blockpar/error.hpp"

namespace blockpar {

std::string_view to_string(ScheduleClass cls) {
    switch (cls) {
    case ScheduleClass::All: return "bp";
    case ScheduleClass::DynamicalEquality: return "bp0";
    case ScheduleClass::LimitIsomorphism: return "bpstar";
    }
    return "?";
}

ScheduleClass parse_schedule_class(std::string_view name) {
    if (name == "bp") return ScheduleClass::All;
    if (name == "bp0") return ScheduleClass::DynamicalEquality;
    if (name == "bpstar") return ScheduleClass::LimitIsomorphism;
    throw DomainError("unknown schedule class '" + std::string(name) + "' (expected bp, bp0 or bpstar)");
}

std::vector<unsigned> star_coefficients(const Partition& p) {
    std::vector<unsigned> a(p.largest_part(), 0);
    BigInt b = 1;
    for (unsigned j = p.largest_part(); j >= 1; --j) {
        if (p.multiplicity(j) > 0) {
            a[j - 1] = std::gcd(static_cast<unsigned>(b % j), j);
            b = boost::multiprecision::lcm(b, BigInt(j));
        } else {
            a[j - 1] = j;
        }
    }
    return a;
}

ScheduleStream::ScheduleStream(unsigned n, ScheduleClass cls) : n_(n), cls_(cls) {
    if (n == 0) throw DomainError("enumeration requires n >= 1");
    partitions_ = partitions_of(n);
}

ScheduleStream::ScheduleStream(unsigned n, ScheduleClass cls, Partition only) : n_(n), cls_(cls) {
    if (n == 0) throw DomainError("enumeration requires n >= 1");
    if (only.total() != n) {
        throw DomainError("partition " + only.to_string() + " does not sum to " + std::to_string(n));
    }
    partitions_.push_back(std::move(only));
}

void ScheduleStream::build_levels(const Partition& p) {
    levels_.clear();
    matrices_.clear();
    const auto coeff = star_coefficients(p);
    int prev_set = -1;
    for (unsigned j : p.distinct_parts_descending()) {
        const unsigned m = p.multiplicity(j);
        MatrixLayout layout{j, m, static_cast<int>(levels_.size()), {}};
        levels_.push_back(Level{Kind::MatrixSet, static_cast<unsigned>(matrices_.size()), prev_set,
                                prev_set < 0 ? Source::Universe : Source::Rest, j * m});
        prev_set = layout.set_level;

        int feed = layout.set_level;
        Source field = Source::Chosen;
        if (cls_ == ScheduleClass::All) {
            // Rows up to row permutation: each row holds the smallest element
            // still free, then its members are ordered in every possible way.
            for (unsigned r = 0; r < m; ++r) {
                const int row_set = static_cast<int>(levels_.size());
                levels_.push_back(Level{Kind::RowSet, static_cast<unsigned>(matrices_.size()), feed, field, j});
                levels_.push_back(Level{Kind::RowOrder, static_cast<unsigned>(matrices_.size()), row_set,
                                        Source::Chosen, j});
                layout.slots.push_back(static_cast<int>(levels_.size()) - 1);
                feed = row_set;
                field = Source::Rest;
            }
        } else {
            // Columns as unordered sets of m elements each.
            for (unsigned c = 0; c < j; ++c) {
                Level col{Kind::ColumnSet, static_cast<unsigned>(matrices_.size()), feed, field, m};
                col.min_rule = cls_ == ScheduleClass::LimitIsomorphism && c + 1 == coeff[j - 1];
                levels_.push_back(std::move(col));
                layout.slots.push_back(static_cast<int>(levels_.size()) - 1);
                feed = static_cast<int>(levels_.size()) - 1;
                field = Source::Rest;
            }
        }
        matrices_.push_back(std::move(layout));
    }
}

void ScheduleStream::refresh_choice(Level& lv) {
    const std::size_t offset = lv.forced ? 1 : 0;
    lv.chosen.clear();
    if (lv.forced) lv.chosen.push_back(lv.pool[0]);
    for (unsigned k : lv.idx) lv.chosen.push_back(lv.pool[offset + k]);
    lv.rest.clear();
    std::set_difference(lv.pool.begin(), lv.pool.end(), lv.chosen.begin(), lv.chosen.end(),
                        std::back_inserter(lv.rest));
}

void ScheduleStream::init_level(std::size_t i) {
    Level& lv = levels_[i];
    switch (lv.field) {
    case Source::Universe:
        lv.pool.resize(n_);
        std::iota(lv.pool.begin(), lv.pool.end(), Automaton{0});
        break;
    case Source::Chosen: lv.pool = levels_[lv.source].chosen; break;
    case Source::Rest: lv.pool = levels_[lv.source].rest; break;
    }

    if (lv.kind == Kind::RowOrder) {
        lv.chosen = lv.pool;  // sorted: the first permutation
        lv.rest = levels_[lv.source].rest;
        return;
    }

    lv.forced = false;
    if (lv.kind == Kind::RowSet) {
        lv.forced = true;
    } else if (lv.kind == Kind::ColumnSet && lv.min_rule) {
        // The matrix minimum is the smallest element of the matrix set; it is
        // still free iff it heads this pool.
        const auto& matrix_set = levels_[matrices_[lv.matrix].set_level].chosen;
        lv.forced = lv.pool.front() == matrix_set.front();
    }
    const unsigned r = lv.take - (lv.forced ? 1 : 0);
    lv.idx.resize(r);
    std::iota(lv.idx.begin(), lv.idx.end(), 0u);
    refresh_choice(lv);
}

bool ScheduleStream::step_level(std::size_t i) {
    Level& lv = levels_[i];
    if (lv.kind == Kind::RowOrder) return std::next_permutation(lv.chosen.begin(), lv.chosen.end());

    const unsigned free = static_cast<unsigned>(lv.pool.size()) - (lv.forced ? 1 : 0);
    const unsigned r = static_cast<unsigned>(lv.idx.size());
    // Lexicographic successor of an r-combination of [0, free).
    int k = static_cast<int>(r) - 1;
    while (k >= 0 && lv.idx[k] == free - r + static_cast<unsigned>(k)) --k;
    if (k < 0) return false;
    ++lv.idx[k];
    for (unsigned t = static_cast<unsigned>(k) + 1; t < r; ++t) lv.idx[t] = lv.idx[t - 1] + 1;
    refresh_choice(lv);
    return true;
}

bool ScheduleStream::start_partition(std::size_t index) {
    partition_index_ = index;
    if (index >= partitions_.size()) return false;
    build_levels(partitions_[index]);
    for (std::size_t i = 0; i < levels_.size(); ++i) init_level(i);
    return true;
}

void ScheduleStream::materialize() {
    std::vector<OBlock> blocks;
    blocks.reserve(levels_.size());
    for (const auto& mx : matrices_) {
        if (cls_ == ScheduleClass::All) {
            for (int slot : mx.slots) blocks.push_back(levels_[slot].chosen);
        } else {
            for (unsigned row = 0; row < mx.rows; ++row) {
                OBlock block(mx.width);
                for (unsigned c = 0; c < mx.width; ++c) block[c] = levels_[mx.slots[c]].chosen[row];
                blocks.push_back(std::move(block));
            }
        }
    }
    current_.emplace(PartitionedOrder(PartitionedOrder::Trusted{}, n_, std::move(blocks)));
    ++emitted_;
}

bool ScheduleStream::advance() {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        if (!start_partition(0)) {
            done_ = true;
            return false;
        }
        materialize();
        return true;
    }
    for (std::size_t i = levels_.size(); i-- > 0;) {
        if (step_level(i)) {
            for (std::size_t k = i + 1; k < levels_.size(); ++k) init_level(k);
            materialize();
            return true;
        }
    }
    if (!start_partition(partition_index_ + 1)) {
        done_ = true;
        current_.reset();
        return false;
    }
    materialize();
    return true;
}

std::optional<PartitionedOrder> ScheduleStream::next() {
    if (!advance()) return std::nullopt;
    return *current_;
}

std::vector<PartitionedOrder> enumerate_all(unsigned n, ScheduleClass cls) {
    std::vector<PartitionedOrder> out;
    ScheduleStream stream(n, cls);
    while (stream.advance()) out.push_back(stream.current());
    return out;
}

std::uint64_t count_by_enumeration(unsigned n, ScheduleClass cls, unsigned threads) {
    const auto parts = partitions_of(n);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(parts.size())));
    std::vector<std::uint64_t> totals(threads, 0);
    auto work = [&](unsigned worker) {
        for (std::size_t i = worker; i < parts.size(); i += threads) {
            ScheduleStream stream(n, cls, parts[i]);
            while (stream.advance()) {}
            totals[worker] += stream.emitted();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    return std::accumulate(totals.begin(), totals.end(), std::uint64_t{0});
}

} // namespace blockpar

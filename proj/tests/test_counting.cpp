#include <doctest.h>

#include "blockpar/counting.hpp"
#include "blockpar/enumeration.hpp"
#include "blockpar/error.hpp"
#include "oracles.hpp"

using namespace blockpar;

namespace {

// Published sequences, index n - 1.
const std::vector<std::uint64_t> kBp{1,       3,        13,        73,         501,         4051,
                                     37633,   394353,   4596553,   58941091,   824073141,   12470162233ull};
const std::vector<std::uint64_t> kBp0{1,       3,        13,        67,         471,         3591,
                                      33573,   329043,   3919387,   47827093,   663429603,   9764977399ull};
const std::vector<std::uint64_t> kBpStar{1,      2,       6,        24,        120,        795,
                                         5565,   46060,   454860,   4727835,   54223785,   734932121};
const std::vector<std::uint64_t> kBs{1, 3, 13, 75, 541, 4683, 47293, 545835, 7087261, 102247563};

} // namespace

TEST_SUITE("counting") {

TEST_CASE("published sequences") {
    for (unsigned n = 1; n <= 12; ++n) {
        CAPTURE(n);
        CHECK(count_bp(n) == kBp[n - 1]);
        CHECK(count_bp0(n) == kBp0[n - 1]);
        CHECK(count_bp_star(n) == kBpStar[n - 1]);
        if (n <= 10) CHECK(count_bs(n) == kBs[n - 1]);
    }
}

TEST_CASE("spot values") {
    CHECK(count_bs(1) == 1);
    CHECK(count_bs(4) == 75);
    CHECK(count_bp(5) == 501);
    CHECK(count_bp0(4) == 67);
    CHECK(count_bp_star(2) == 2);
    CHECK(count_bs_inter_bp(1) == 1);
    CHECK(count_bs_inter_bp(2) == 3);
    CHECK(count_bs_inter_bp(4) == 31);
    CHECK(count_bp0_via_egf(1) == 1);
    CHECK(count_bp0_via_egf(4) == 67);
    CHECK(count_bp0_via_egf(7) == 33573);
}

TEST_CASE("factorial and binomial") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(20) == BigInt("2432902008176640000"));
    CHECK(factorial(25) == BigInt("15511210043330985984000000"));
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("redundant formulas agree for n <= 30") {
    for (unsigned n = 1; n <= 30; ++n) {
        CAPTURE(n);
        for (const auto& p : partitions_of(n)) {
            CHECK(formulas::bp_sets_of_lists(p) == formulas::bp_binomial(p));
            CHECK(formulas::bp0_factorial(p) == formulas::bp0_columns(p));
            CHECK(formulas::bp0_factorial(p) == formulas::bp0_matrices(p));
            CHECK(formulas::bp0_factorial(p) % lcm_of(p) == 0);
        }
        CHECK(count_bp0_via_egf(n) == count_bp0(n));
    }
}

TEST_CASE("brute-force oracles agree, n <= 6") {
    for (unsigned n = 1; n <= 6; ++n) {
        CAPTURE(n);
        CHECK(count_bp(n) == oracle::all_partitioned_orders(n).size());
        CHECK(count_bp0(n) == oracle::phi_images(n).size());
        CHECK(count_bp_star(n) == oracle::rotation_classes(n).size());
        CHECK(count_bs(n) == oracle::ordered_set_partitions(n));
        CHECK(count_bs_inter_bp(n) == oracle::bs_inter_bp(n));
    }
}

TEST_CASE("enumeration cardinalities, n <= 8") {
    for (unsigned n = 1; n <= 8; ++n) {
        CAPTURE(n);
        CHECK(count_bp(n) == count_by_enumeration(n, ScheduleClass::All));
        CHECK(count_bp0(n) == count_by_enumeration(n, ScheduleClass::DynamicalEquality));
        CHECK(count_bp_star(n) == count_by_enumeration(n, ScheduleClass::LimitIsomorphism));
    }
}

TEST_CASE("quotient inequalities") {
    for (unsigned n = 1; n <= 40; ++n) {
        CHECK(count_bp_star(n) <= count_bp0(n));
        CHECK(count_bp0(n) <= count_bp(n));
    }
}

TEST_CASE("part-size recursion matches per-partition sums, n <= 40") {
    for (unsigned n = 1; n <= kPerPartitionLimit; n += (n < 20 ? 1 : 5)) {
        CAPTURE(n);
        const auto c = counts_by_part_size(n);
        BigInt bs = 0, bp = 0, bp0 = 0, star = 0;
        for (const auto& t : per_partition_terms(n)) {
            bs += formulas::bs_term(t.partition);
            bp += t.bp;
            bp0 += t.bp0;
            star += t.bp_star;
        }
        CHECK(c.bs == bs);
        CHECK(c.bp == bp);
        CHECK(c.bp0 == bp0);
        CHECK(c.bp_star == star);
    }
}

TEST_CASE("exact at n = 100") {
    const auto bp = count_bp(100);
    const auto bp0 = count_bp0(100);
    const auto star = count_bp_star(100);
    CHECK(bp > factorial(100));  // at least every single-o-block ordering
    CHECK(bp0 <= bp);
    CHECK(star <= bp0);
    CHECK(bp0 == count_bp0_via_egf(100));
    CHECK(star * 232792560 >= bp0);  // lcm of any partition of 100 is at most 232792560
    CHECK(count_bs(100) > bp);
    CHECK(count_bs_inter_bp(100) > 0);
    CHECK_THROWS_AS(counts_by_part_size(0), DomainError);
}

TEST_CASE("per-partition terms match per-partition enumeration, n <= 7") {
    for (unsigned n = 1; n <= 7; ++n) {
        for (const auto& t : per_partition_terms(n)) {
            CAPTURE(t.partition.to_string());
            for (auto cls : {ScheduleClass::All, ScheduleClass::DynamicalEquality, ScheduleClass::LimitIsomorphism}) {
                ScheduleStream stream(n, cls, t.partition);
                while (stream.advance()) {}
                const auto& expected = cls == ScheduleClass::All                 ? t.bp
                                       : cls == ScheduleClass::DynamicalEquality ? t.bp0
                                                                                 : t.bp_star;
                CHECK(expected == stream.emitted());
            }
        }
    }
}

}

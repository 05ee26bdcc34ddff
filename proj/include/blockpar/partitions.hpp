#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blockpar/bigint.hpp"

namespace blockpar {

/// An integer partition of n, stored as multiplicities m(1..d) with d the
/// largest part. Zero multiplicities are allowed inside 1..d.
class Partition {
public:
    /// Parts in any order. Throws DomainError on an empty list or a zero part.
    static Partition from_parts(std::span<const unsigned> parts);

    /// mult[j - 1] is the multiplicity of part j. Trailing zeros are trimmed.
    static Partition from_multiplicities(std::vector<unsigned> mult);

    /// Parses the diagnostic form "2+2+3" (any part order).
    static Partition parse(std::string_view text);

    unsigned total() const noexcept { return total_; }
    unsigned largest_part() const noexcept { return static_cast<unsigned>(mult_.size()); }
    unsigned multiplicity(unsigned part) const noexcept {
        return (part == 0 || part > mult_.size()) ? 0 : mult_[part - 1];
    }
    unsigned part_count() const noexcept;

    /// Parts in descending order, e.g. {3,2,2}.
    std::vector<unsigned> parts_descending() const;
    /// Distinct part sizes with non-zero multiplicity, descending.
    std::vector<unsigned> distinct_parts_descending() const;

    /// Ascending "+"-joined form, e.g. "2+2+3".
    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    Partition(unsigned total, std::vector<unsigned> mult) : total_(total), mult_(std::move(mult)) {}

    unsigned total_;
    std::vector<unsigned> mult_;
};

/// Every partition of n exactly once, in descending-lexicographic order of the
/// descending part lists: [n], [n-1,1], ..., [1,...,1]. Throws DomainError for n = 0.
std::vector<Partition> partitions_of(unsigned n);

/// Visits the partitions of n in partitions_of(n) order without storing them.
void for_each_partition(unsigned n, const std::function<void(const Partition&)>& visit);

/// Number of partitions p(n) by the pentagonal recurrence (no enumeration).
BigInt partition_count(unsigned n);

/// Least common multiple of the distinct part sizes.
BigInt lcm_of(const Partition& p);

enum class PrimeSelection {
    /// The first k_n = floor(n^2 / (2 ln n)) primes below n^2.
    FirstKn,
    /// The smallest primes, stopping as soon as their product exceeds 2^n.
    Smallest,
};

/// Distinct primes whose product exceeds 2^n, plus their cumulative sums.
struct PrimeGadgetBasis {
    unsigned n = 0;
    std::vector<std::uint64_t> primes;      // strictly increasing
    std::vector<std::uint64_t> cumulative;  // q_0 = 0, q_j = p_1 + ... + p_j

    std::uint64_t total() const { return cumulative.back(); }
    BigInt product() const;
};

/// floor(n^2 / (2 ln n)); the number of primes taken under PrimeSelection::FirstKn.
unsigned gadget_prime_bound(unsigned n);

/// Primes below n^2 with product > 2^n. Throws DomainError for n < 2.
PrimeGadgetBasis gadget_primes(unsigned n, PrimeSelection rule = PrimeSelection::FirstKn);

/// Sieve of Eratosthenes: all primes strictly below limit.
std::vector<std::uint64_t> primes_below(std::uint64_t limit);

} // namespace blockpar

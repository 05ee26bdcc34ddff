#include "blockpar/partitions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "blockpar/error.hpp"

namespace blockpar {

Partition Partition::from_parts(std::span<const unsigned> parts) {
    if (parts.empty()) throw DomainError("partition must have at least one part");
    unsigned largest = 0;
    unsigned total = 0;
    for (unsigned p : parts) {
        if (p == 0) throw DomainError("partition parts must be positive");
        largest = std::max(largest, p);
        total += p;
    }
    std::vector<unsigned> mult(largest, 0);
    for (unsigned p : parts) ++mult[p - 1];
    return Partition(total, std::move(mult));
}

Partition Partition::from_multiplicities(std::vector<unsigned> mult) {
    while (!mult.empty() && mult.back() == 0) mult.pop_back();
    if (mult.empty()) throw DomainError("partition must have at least one part");
    unsigned total = 0;
    for (std::size_t j = 0; j < mult.size(); ++j) total += static_cast<unsigned>(j + 1) * mult[j];
    return Partition(total, std::move(mult));
}

Partition Partition::parse(std::string_view text) {
    std::vector<unsigned> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t plus = text.find('+', pos);
        if (plus == std::string_view::npos) plus = text.size();
        std::string_view token = text.substr(pos, plus - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        unsigned value = 0;
        auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || end != token.data() + token.size() || value == 0) {
            throw ParseError("invalid partition part '" + std::string(token) + "'", 1, pos + 1);
        }
        parts.push_back(value);
        pos = plus + 1;
    }
    return from_parts(parts);
}

unsigned Partition::part_count() const noexcept {
    return std::accumulate(mult_.begin(), mult_.end(), 0u);
}

std::vector<unsigned> Partition::parts_descending() const {
    std::vector<unsigned> out;
    for (unsigned j = largest_part(); j >= 1; --j) out.insert(out.end(), mult_[j - 1], j);
    return out;
}

std::vector<unsigned> Partition::distinct_parts_descending() const {
    std::vector<unsigned> out;
    for (unsigned j = largest_part(); j >= 1; --j)
        if (mult_[j - 1] > 0) out.push_back(j);
    return out;
}

std::string Partition::to_string() const {
    std::string out;
    for (unsigned j = 1; j <= largest_part(); ++j) {
        for (unsigned k = 0; k < mult_[j - 1]; ++k) {
            if (!out.empty()) out += '+';
            out += std::to_string(j);
        }
    }
    return out;
}

std::vector<Partition> partitions_of(unsigned n) {
    std::vector<Partition> out;
    for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
    return out;
}

void for_each_partition(unsigned n, const std::function<void(const Partition&)>& visit) {
    if (n == 0) throw DomainError("partitions of n require n >= 1");
    // Reverse-lexicographic successor on a descending part list.
    std::vector<unsigned> a{n};
    while (true) {
        visit(Partition::from_parts(a));
        // Strip trailing ones, then decrement the last part > 1.
        unsigned ones = 0;
        while (!a.empty() && a.back() == 1) {
            a.pop_back();
            ++ones;
        }
        if (a.empty()) break;
        unsigned k = --a.back();
        unsigned rest = ones + 1;
        while (rest > k) {
            a.push_back(k);
            rest -= k;
        }
        if (rest > 0) a.push_back(rest);
    }
}

BigInt partition_count(unsigned n) {
    std::vector<BigInt> p(n + 1);
    p[0] = 1;
    for (unsigned m = 1; m <= n; ++m) {
        BigInt sum = 0;
        for (long k = 1;; ++k) {
            long g1 = k * (3 * k - 1) / 2;
            long g2 = k * (3 * k + 1) / 2;
            if (g1 > static_cast<long>(m)) break;
            BigInt term = p[m - g1];
            if (g2 <= static_cast<long>(m)) term += p[m - g2];
            if (k % 2 == 1) sum += term;
            else sum -= term;
        }
        p[m] = sum;
    }
    return p[n];
}

BigInt lcm_of(const Partition& p) {
    BigInt l = 1;
    for (unsigned j : p.distinct_parts_descending()) l = boost::multiprecision::lcm(l, BigInt(j));
    return l;
}

BigInt PrimeGadgetBasis::product() const {
    BigInt prod = 1;
    for (auto q : primes) prod *= q;
    return prod;
}

unsigned gadget_prime_bound(unsigned n) {
    if (n < 2) throw DomainError("gadget_prime_bound requires n >= 2");
    double nn = static_cast<double>(n) * n;
    return static_cast<unsigned>(std::floor(nn / (2.0 * std::log(static_cast<double>(n)))));
}

std::vector<std::uint64_t> primes_below(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 3) return out;
    std::vector<bool> composite(limit, false);
    for (std::uint64_t i = 2; i < limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t k = i * i; k < limit; k += i) composite[k] = true;
    }
    return out;
}

PrimeGadgetBasis gadget_primes(unsigned n, PrimeSelection rule) {
    if (n < 2) throw DomainError("gadget_primes requires n >= 2");
    const std::uint64_t limit = static_cast<std::uint64_t>(n) * n;
    const auto sieve = primes_below(limit);
    const BigInt threshold = BigInt(1) << n;

    PrimeGadgetBasis basis;
    basis.n = n;
    if (rule == PrimeSelection::FirstKn) {
        const unsigned k = gadget_prime_bound(n);
        if (sieve.size() < k) throw InvariantViolation("fewer than k_n primes below n^2");
        basis.primes.assign(sieve.begin(), sieve.begin() + k);
    } else {
        BigInt prod = 1;
        for (auto q : sieve) {
            basis.primes.push_back(q);
            prod *= q;
            if (prod > threshold) break;
        }
    }
    basis.cumulative.push_back(0);
    for (auto q : basis.primes) basis.cumulative.push_back(basis.cumulative.back() + q);
    if (basis.product() <= threshold) throw InvariantViolation("prime product does not exceed 2^n");
    return basis;
}

} // namespace blockpar

#include "blockpar/counting.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "blockpar/error.hpp"

namespace blockpar {

namespace {

// Grows on demand; shared by all counting calls.
class FactorialTable {
public:
    const BigInt& operator()(unsigned n) {
        std::lock_guard lock(mutex_);
        while (table_.size() <= n) table_.push_back(table_.back() * table_.size());
        return table_[n];
    }

private:
    std::mutex mutex_;
    std::vector<BigInt> table_{BigInt(1)};
};

FactorialTable& factorials() {
    static FactorialTable table;
    return table;
}

ExactCount pow(const ExactCount& base, unsigned e) {
    ExactCount out = 1;
    for (unsigned i = 0; i < e; ++i) out *= base;
    return out;
}

ExactCount exact_div(const ExactCount& num, const ExactCount& den, const char* what) {
    ExactCount q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw InvariantViolation(std::string("non-exact division in ") + what);
    return q;
}

void require_positive(unsigned n, const char* what) {
    if (n == 0) throw DomainError(std::string(what) + " requires n >= 1");
}

} // namespace

ExactCount factorial(unsigned n) { return factorials()(n); }

ExactCount binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

namespace formulas {

ExactCount bs_term(const Partition& p) {
    ExactCount den_left = 1, den_right = 1;
    unsigned blocks = 0;
    for (unsigned j = 1; j <= p.largest_part(); ++j) {
        const unsigned m = p.multiplicity(j);
        den_left *= pow(factorial(j), m);
        den_right *= factorial(m);
        blocks += m;
    }
    return exact_div(factorial(p.total()), den_left, "bs_term") *
           exact_div(factorial(blocks), den_right, "bs_term");
}

ExactCount bp_sets_of_lists(const Partition& p) {
    ExactCount den = 1;
    for (unsigned j = 1; j <= p.largest_part(); ++j) den *= factorial(p.multiplicity(j));
    return exact_div(factorial(p.total()), den, "bp_sets_of_lists");
}

ExactCount bp_binomial(const Partition& p) {
    ExactCount prod = 1;
    unsigned placed = 0;
    for (unsigned j = 1; j <= p.largest_part(); ++j) {
        const unsigned m = p.multiplicity(j);
        prod *= binomial(p.total() - placed, j * m) * exact_div(factorial(j * m), factorial(m), "bp_binomial");
        placed += j * m;
    }
    return prod;
}

ExactCount bp0_factorial(const Partition& p) {
    ExactCount den = 1;
    for (unsigned j = 1; j <= p.largest_part(); ++j) den *= pow(factorial(p.multiplicity(j)), j);
    return exact_div(factorial(p.total()), den, "bp0_factorial");
}

ExactCount bp0_columns(const Partition& p) {
    ExactCount prod = 1;
    unsigned placed = 0;
    for (unsigned j = 1; j <= p.largest_part(); ++j) {
        const unsigned m = p.multiplicity(j);
        for (unsigned l = 1; l <= j; ++l) prod *= binomial(p.total() - placed - (l - 1) * m, m);
        placed += j * m;
    }
    return prod;
}

ExactCount bp0_matrices(const Partition& p) {
    ExactCount prod = 1;
    unsigned placed = 0;
    for (unsigned j = 1; j <= p.largest_part(); ++j) {
        const unsigned m = p.multiplicity(j);
        ExactCount columns = 1;
        for (unsigned l = 1; l <= j; ++l) columns *= binomial((j - l + 1) * m, m);
        prod *= binomial(p.total() - placed, j * m) * columns;
        placed += j * m;
    }
    return prod;
}

} // namespace formulas

PartitionTerms partition_terms(const Partition& p) {
    PartitionTerms t{p, formulas::bs_term(p), formulas::bp_sets_of_lists(p), formulas::bp0_factorial(p), 0};
    if (formulas::bp_binomial(p) != t.bp) {
        throw InvariantViolation("BP formulas disagree on partition " + p.to_string());
    }
    if (formulas::bp0_columns(p) != t.bp0 || formulas::bp0_matrices(p) != t.bp0) {
        throw InvariantViolation("BP0 formulas disagree on partition " + p.to_string());
    }
    t.bp_star = exact_div(t.bp0, lcm_of(p), "bp_star term");
    return t;
}

std::vector<PartitionTerms> per_partition_terms(unsigned n) {
    require_positive(n, "per_partition_terms");
    std::vector<PartitionTerms> out;
    for (const auto& p : partitions_of(n)) out.push_back(partition_terms(p));
    return out;
}

namespace {

ExactCount sum_terms(unsigned n, ExactCount (*term)(const Partition&)) {
    ExactCount sum = 0;
    for_each_partition(n, [&](const Partition& p) { sum += term(p); });
    return sum;
}

using Table = std::vector<std::vector<BigInt>>;

/// Integer recursion over part sizes j = 1..n. table[s][k] accumulates, over
/// partial partitions with parts < j covering s elements and key k, the product
/// of the per-size factors; factor(j, m, s) is the contribution of m parts of
/// size j placed after s elements, and key(k, j, m) updates the key.
template <class Factor, class Key>
Table part_size_recursion(unsigned n, std::size_t keys, Factor&& factor, Key&& key) {
    Table table(n + 1, std::vector<BigInt>(keys, BigInt(0)));
    table[0][0] = 1;
    for (unsigned j = 1; j <= n; ++j) {
        for (unsigned s = n; s-- > 0;) {
            if (std::all_of(table[s].begin(), table[s].end(), [](const BigInt& v) { return v == 0; })) continue;
            for (unsigned m = 1; s + j * m <= n; ++m) {
                const BigInt f = factor(j, m, s);
                for (std::size_t k = 0; k < keys; ++k)
                    if (table[s][k] != 0) table[s + j * m][key(k, j, m)] += table[s][k] * f;
            }
        }
    }
    return table;
}

BigRational rational_recursion(unsigned n, const std::function<BigRational(unsigned, unsigned)>& weight) {
    std::vector<BigRational> table(n + 1, BigRational(0));
    table[0] = 1;
    for (unsigned j = 1; j <= n; ++j) {
        for (unsigned s = n; s-- > 0;) {
            if (table[s] == 0) continue;
            const BigRational base = table[s];
            for (unsigned m = 1; s + j * m <= n; ++m) table[s + j * m] += base * weight(j, m);
        }
    }
    return table[n];
}

ExactCount integral(const BigRational& q, const char* what) {
    if (boost::multiprecision::denominator(q) != 1) throw InvariantViolation(std::string(what) + " is not integral");
    return boost::multiprecision::numerator(q);
}

} // namespace

namespace {

ClassCounts compute_by_part_size(unsigned n) {
    const BigRational nf(factorial(n));
    auto one_key = [](std::size_t, unsigned, unsigned) { return std::size_t{0}; };

    // BS: set partitions of the given type, times the orderings of all blocks;
    // the key is the number of blocks so far.
    const Table bs_table = part_size_recursion(
        n, n + 1,
        [&](unsigned j, unsigned m, unsigned s) {
            return binomial(n - s, j * m) *
                   exact_div(factorial(j * m), pow(factorial(j), m) * factorial(m), "bs factor");
        },
        [](std::size_t k, unsigned, unsigned m) { return k + m; });
    ExactCount bs = 0;
    for (unsigned b = 0; b <= n; ++b) bs += bs_table[n][b] * factorial(b);

    const ExactCount bp_lists = integral(nf * rational_recursion(n, [](unsigned, unsigned m) {
                                             return BigRational(BigInt(1), factorial(m));
                                         }),
                                         "n! / prod m(j)! sum");
    const ExactCount bp_binom = part_size_recursion(
        n, 1,
        [&](unsigned j, unsigned m, unsigned s) {
            return binomial(n - s, j * m) * exact_div(factorial(j * m), factorial(m), "bp factor");
        },
        one_key)[n][0];
    if (bp_lists != bp_binom) throw InvariantViolation("BP recursions disagree at n=" + std::to_string(n));

    const ExactCount bp0_fact = integral(nf * rational_recursion(n, [](unsigned j, unsigned m) {
                                             return BigRational(BigInt(1), pow(factorial(m), j));
                                         }),
                                         "n! / prod (m(j)!)^j sum");
    const ExactCount bp0_cols = part_size_recursion(
        n, 1,
        [&](unsigned j, unsigned m, unsigned s) {
            ExactCount prod = 1;
            for (unsigned l = 1; l <= j; ++l) prod *= binomial(n - s - (l - 1) * m, m);
            return prod;
        },
        one_key)[n][0];
    auto matrices_factor = [&](unsigned j, unsigned m, unsigned s) {
        return binomial(n - s, j * m) * exact_div(factorial(j * m), pow(factorial(m), j), "bp0 factor");
    };
    const ExactCount bp0_mats = part_size_recursion(n, 1, matrices_factor, one_key)[n][0];
    if (bp0_fact != bp0_cols || bp0_cols != bp0_mats)
        throw InvariantViolation("BP0 recursions disagree at n=" + std::to_string(n));

    // BP*: matrices weighted by 1/lcm, so the state also tracks the lcm of the
    // part sizes used so far.
    std::vector<std::map<std::uint64_t, BigInt>> by_lcm(n + 1);
    by_lcm[0][1] = 1;
    for (unsigned j = 1; j <= n; ++j) {
        for (unsigned s = n; s-- > 0;) {
            if (by_lcm[s].empty()) continue;
            for (unsigned m = 1; s + j * m <= n; ++m) {
                const BigInt f = matrices_factor(j, m, s);
                auto& target = by_lcm[s + j * m];
                for (const auto& [l, w] : by_lcm[s]) {
                    std::uint64_t next;
                    if (__builtin_mul_overflow(l / std::gcd(l, std::uint64_t{j}), std::uint64_t{j}, &next))
                        throw ResourceLimitError("lcm of part sizes exceeds 64 bits at n=" + std::to_string(n));
                    target[next] += w * f;
                }
            }
        }
    }
    ExactCount bp_star = 0;
    for (const auto& [l, w] : by_lcm[n]) bp_star += exact_div(w, BigInt(l), "bp_star recursion");

    return {bs, bp_lists, bp0_fact, bp_star};
}

} // namespace

ClassCounts counts_by_part_size(unsigned n) {
    require_positive(n, "counts_by_part_size");
    static std::mutex mutex;
    static std::map<unsigned, ClassCounts> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    ClassCounts out = compute_by_part_size(n);
    std::lock_guard lock(mutex);
    return cache.emplace(n, std::move(out)).first->second;
}

ExactCount count_bs(unsigned n) {
    require_positive(n, "count_bs");
    if (n > kPerPartitionLimit) return counts_by_part_size(n).bs;
    return sum_terms(n, formulas::bs_term);
}

ExactCount count_bp(unsigned n) {
    require_positive(n, "count_bp");
    if (n > kPerPartitionLimit) return counts_by_part_size(n).bp;
    const ExactCount a = sum_terms(n, formulas::bp_sets_of_lists);
    const ExactCount b = sum_terms(n, formulas::bp_binomial);
    if (a != b) throw InvariantViolation("BP formulas disagree at n=" + std::to_string(n));
    return a;
}

ExactCount count_bp0(unsigned n) {
    require_positive(n, "count_bp0");
    if (n > kPerPartitionLimit) return counts_by_part_size(n).bp0;
    const ExactCount f1 = sum_terms(n, formulas::bp0_factorial);
    const ExactCount f2 = sum_terms(n, formulas::bp0_columns);
    const ExactCount f3 = sum_terms(n, formulas::bp0_matrices);
    if (f1 != f2 || f2 != f3) throw InvariantViolation("BP0 formulas disagree at n=" + std::to_string(n));
    return f1;
}

ExactCount count_bp_star(unsigned n) {
    require_positive(n, "count_bp_star");
    if (n > kPerPartitionLimit) return counts_by_part_size(n).bp_star;
    ExactCount sum = 0;
    for_each_partition(n, [&](const Partition& p) {
        sum += exact_div(formulas::bp0_factorial(p), lcm_of(p), "bp_star term");
    });
    return sum;
}

ExactCount count_bs_inter_bp(unsigned n) {
    require_positive(n, "count_bs_inter_bp");
    ExactCount sum = 0;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        sum += exact_div(factorial(n), pow(factorial(n / d), d), "bs_inter_bp");
    }
    return sum;
}

ExactCount count_bp0_via_egf(unsigned n) {
    require_positive(n, "count_bp0_via_egf");
    // series[i] is the coefficient of x^i; factors with j > n are 1 below x^(n+1).
    std::vector<BigRational> series(n + 1, BigRational(0));
    series[0] = 1;
    for (unsigned j = 1; j <= n; ++j) {
        // Factor sum_k x^(jk) / (k!)^j, truncated at degree n.
        std::vector<BigRational> next(n + 1, BigRational(0));
        for (unsigned k = 0; k * j <= n; ++k) {
            const BigRational c(BigInt(1), pow(factorial(k), j));
            for (unsigned i = 0; i + k * j <= n; ++i) {
                if (series[i] != 0) next[i + k * j] += series[i] * c;
            }
        }
        series = std::move(next);
    }
    const BigRational scaled = series[n] * BigRational(factorial(n));
    if (boost::multiprecision::denominator(scaled) != 1) {
        throw InvariantViolation("EGF coefficient times n! is not integral at n=" + std::to_string(n));
    }
    return boost::multiprecision::numerator(scaled);
}

} // namespace blockpar

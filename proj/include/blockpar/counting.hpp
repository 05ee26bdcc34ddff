#pragma once

#include <vector>

#include "blockpar/bigint.hpp"
#include "blockpar/partitions.hpp"

namespace blockpar {

/// Ordered set partitions of [0, n) (ordered Bell numbers), summed over the
/// integer partitions of n.
ExactCount count_bs(unsigned n);

/// Partitioned orders. Evaluates both the n!/prod m(j)! sum and the
/// product-of-binomials form; throws InvariantViolation if they differ.
ExactCount count_bp(unsigned n);

/// Classes up to dynamical equality. All three closed forms are evaluated and
/// must agree.
ExactCount count_bp0(unsigned n);

/// Classes up to limit isomorphism: per-partition BP0 term divided by lcm.
/// The division must be exact.
ExactCount count_bp_star(unsigned n);

/// Block sequences that are both block-sequential and images of partitioned
/// orders: sum over d | n of n! / ((n/d)!)^d.
ExactCount count_bs_inter_bp(unsigned n);

/// BP0 count from the x^n coefficient of prod_j sum_k (x^k/k!)^j, times n!,
/// computed with exact rational series truncated at degree n.
ExactCount count_bp0_via_egf(unsigned n);

/// Totals from a recursion over part sizes instead of over partitions: each
/// formula's per-partition product factors over part sizes, so the sums are
/// accumulated part size by part size (polynomial in n; the limit-isomorphism
/// sum also tracks the lcm of the parts so far). Every redundant formula is
/// evaluated and must agree. Used by the count_* functions above
/// kPerPartitionLimit. Throws ResourceLimitError if an lcm of part sizes
/// exceeds 64 bits (not before n in the hundreds).
struct ClassCounts {
    ExactCount bs;
    ExactCount bp;
    ExactCount bp0;
    ExactCount bp_star;
};
ClassCounts counts_by_part_size(unsigned n);

/// Largest n for which the count_* functions sum explicit per-partition terms.
inline constexpr unsigned kPerPartitionLimit = 40;

/// Per-partition contributions, in partitions_of(n) order.
struct PartitionTerms {
    Partition partition;
    ExactCount bs;
    ExactCount bp;
    ExactCount bp0;
    ExactCount bp_star;
};

/// Throws InvariantViolation when any redundant formula disagrees.
std::vector<PartitionTerms> per_partition_terms(unsigned n);

/// Single-partition terms (all formulas cross-checked).
PartitionTerms partition_terms(const Partition& p);

/// The individual closed forms, exposed for cross-validation.
namespace formulas {
ExactCount bp_sets_of_lists(const Partition& p);  // n! / prod m(j)!
ExactCount bp_binomial(const Partition& p);       // prod C(rest, j m) (j m)! / m!
ExactCount bp0_factorial(const Partition& p);     // n! / prod (m(j)!)^j
ExactCount bp0_columns(const Partition& p);       // prod_j prod_l C(rest - (l-1) m, m)
ExactCount bp0_matrices(const Partition& p);      // prod_j C(rest, j m) prod_l C((j-l+1) m, m)
ExactCount bs_term(const Partition& p);
} // namespace formulas

/// Exact n! and C(n, k).
ExactCount factorial(unsigned n);
ExactCount binomial(unsigned n, unsigned k);

} // namespace blockpar

// Acceptance suite: one line per criterion, nonzero exit if any hard criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "blockpar/counting.hpp"
#include "blockpar/dynamics.hpp"
#include "blockpar/enumeration.hpp"
#include "blockpar/gadgets.hpp"

using namespace blockpar;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double limit_s;  // wall-clock budget
    bool soft;       // a miss is flagged, never a failure
    std::function<Outcome()> run;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

// Published sequences, index n - 1.
const std::vector<std::uint64_t> kBp{1,       3,        13,        73,         501,         4051,
                                     37633,   394353,   4596553,   58941091,   824073141,   12470162233ull};
const std::vector<std::uint64_t> kBp0{1,       3,        13,        67,         471,         3591,
                                      33573,   329043,   3919387,   47827093,   663429603,   9764977399ull};
const std::vector<std::uint64_t> kBpStar{1,      2,       6,        24,        120,        795,
                                         5565,   46060,   454860,   4727835,   54223785,   734932121};
const std::vector<std::uint64_t> kBs{1, 3, 13, 75, 541, 4683, 47293, 545835, 7087261, 102247563};

constexpr double kReferenceBpStar10 = 16.3;  // seconds, single run of a Python implementation

Outcome count_reproduction() {
    for (unsigned n = 1; n <= 12; ++n) {
        if (count_bp(n) != kBp[n - 1]) return fail("bp mismatch at n=" + std::to_string(n));
        if (count_bp0(n) != kBp0[n - 1]) return fail("bp0 mismatch at n=" + std::to_string(n));
        if (count_bp_star(n) != kBpStar[n - 1]) return fail("bp_star mismatch at n=" + std::to_string(n));
        if (n <= 10 && count_bs(n) != kBs[n - 1]) return fail("bs mismatch at n=" + std::to_string(n));
    }
    return {true, "n=1..12 term-for-term"};
}

Outcome formula_redundancy() {
    for (unsigned n = 1; n <= 30; ++n) {
        for (const auto& p : partitions_of(n)) {
            if (formulas::bp_sets_of_lists(p) != formulas::bp_binomial(p)) return fail("bp formulas at " + p.to_string());
            const auto f1 = formulas::bp0_factorial(p);
            if (f1 != formulas::bp0_columns(p) || f1 != formulas::bp0_matrices(p))
                return fail("bp0 formulas at " + p.to_string());
        }
        if (count_bp0_via_egf(n) != count_bp0(n)) return fail("egf at n=" + std::to_string(n));
    }
    return {true, "n=1..30, 3 bp0 forms, 2 bp forms, egf"};
}

Outcome enumeration_oracle() {
    const std::uint64_t bp = count_by_enumeration(8, ScheduleClass::All);
    const std::uint64_t bp0 = count_by_enumeration(8, ScheduleClass::DynamicalEquality);
    const std::uint64_t star = count_by_enumeration(8, ScheduleClass::LimitIsomorphism);
    for (unsigned n = 1; n < 8; ++n) {
        if (count_by_enumeration(n, ScheduleClass::All) != count_bp(n) ||
            count_by_enumeration(n, ScheduleClass::DynamicalEquality) != count_bp0(n) ||
            count_by_enumeration(n, ScheduleClass::LimitIsomorphism) != count_bp_star(n))
            return fail("stream length differs at n=" + std::to_string(n));
    }
    const std::string detail = "n=8: " + std::to_string(bp) + ", " + std::to_string(bp0) + ", " + std::to_string(star);
    if (bp != 394353 || bp0 != 329043 || star != 46060) return fail(detail);
    return {true, detail};
}

Outcome algorithm_soundness() {
    std::vector<BlockSequence> reps;
    for (const auto& mu : enumerate_all(6, ScheduleClass::LimitIsomorphism)) reps.push_back(phi(mu));
    if (reps.size() != 795) return fail(std::to_string(reps.size()) + " representatives");
    std::uint64_t pairs = 0;
    for (std::size_t a = 0; a < reps.size(); ++a) {
        for (std::size_t b = a + 1; b < reps.size(); ++b, ++pairs)
            if (circular_shift_between(reps[a], reps[b])) return fail("representatives " + std::to_string(a) + " and " +
                                                                      std::to_string(b) + " are equivalent");
    }
    std::uint64_t mapped = 0;
    for (const auto& mu : enumerate_all(6, ScheduleClass::All)) {
        const auto w = phi(mu);
        int hits = 0;
        for (const auto& r : reps) hits += circular_shift_between(w, r).has_value();
        if (hits != 1) return fail(serialize_schedule(mu) + " matches " + std::to_string(hits) + " representatives");
        ++mapped;
    }
    return {true, std::to_string(pairs) + " pairs distinct, " + std::to_string(mapped) + " schedules mapped once"};
}

Outcome performance() {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t count = count_by_enumeration(10, ScheduleClass::LimitIsomorphism);
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%llu representatives in %.2f s, reference %.1f s, ratio %.3f",
                  static_cast<unsigned long long>(count), t, kReferenceBpStar10, t / kReferenceBpStar10);
    if (count != 4727835) return fail(buf);
    return {t < kReferenceBpStar10, buf};
}

Outcome dynamics_correctness() {
    const auto x = [](Automaton i) { return Expr::variable(i); };
    const BooleanNetwork f(3, {x(1), !x(0), x(0) & x(2)});
    const PartitionedOrder mu(3, {{0}, {1, 2}});
    std::string trace;
    for (const auto& c : step_trace(f, mu, Configuration::parse("111"))) trace += (trace.empty() ? "" : "->") + c.to_string();
    if (trace != "111->101->001") return fail("trace " + trace);

    const auto g = counter_gadget(3);
    const std::string frozen = std::string(17, '0') + "111";
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 1000; ++t) {
        Configuration c(20);
        for (unsigned i = 0; i < 20; ++i) c.set(i, rng() & 1u);
        if (step(g.network, g.schedule, c).to_string() != frozen) return fail("gadget image of " + c.to_string());
    }
    const auto states = step_trace(g.network, g.schedule, Configuration::parse(std::string(17, '0') + "010"));
    std::vector<unsigned> values;
    for (const auto& c : states) values.push_back(c.get(17) | c.get(18) << 1 | c.get(19) << 2);
    const std::vector<unsigned> head{2, 3, 4, 5, 6, 7, 7};
    if (states.size() != 211 || !std::equal(head.begin(), head.end(), values.begin()) ||
        !std::all_of(values.begin() + 5, values.end(), [](unsigned v) { return v == 7; }))
        return fail("counter does not freeze at 111");
    return {true, trace + "; 1000/1000 gadget images " + frozen + "; counter 2,3,4,5,6,7,7,... over 210 substeps"};
}

Outcome bijectivity_by_blocks() {
    const auto reps = enumerate_all(4, ScheduleClass::DynamicalEquality);
    if (reps.size() != 67) return fail(std::to_string(reps.size()) + " schedules");
    std::mt19937_64 rng(7);
    std::uint64_t agree = 0, bijective = 0;
    for (int t = 0; t < 100; ++t) {
        // Odd trials draw xor/negation shapes so bijective steps occur.
        BooleanNetwork f = random_network(4, rng);
        if (t % 2 == 1) {
            std::vector<Expr> locals;
            for (Automaton i = 0; i < 4; ++i) {
                Expr e = Expr::variable(i);
                if (rng() & 1u) e = !e;
                if (rng() & 1u) e = e ^ Expr::variable((i + 1 + rng() % 3) % 4);
                locals.push_back(e);
            }
            f = BooleanNetwork(4, std::move(locals));
        }
        for (const auto& mu : reps) {
            const bool a = bijective_by_image(f, mu);
            if (a != bijective_by_blocks(f, mu)) return fail("disagreement on " + serialize_schedule(mu));
            ++agree;
            bijective += a;
        }
    }
    if (bijective == 0 || bijective == agree) return fail("only one answer occurred");
    return {true, std::to_string(agree) + " cases agree (" + std::to_string(bijective) + " bijective)"};
}

Outcome equivalence_semantics() {
    std::uint64_t eq0 = 0, eqs = 0, witnessed = 0, absent = 0, separated = 0;
    for (unsigned n = 1; n <= 3; ++n) {
        const auto all = enumerate_all(n, ScheduleClass::All);
        for (std::size_t a = 0; a < all.size(); ++a) {
            for (std::size_t b = 0; b < all.size(); ++b) {
                const bool same0 = equiv0(all[a], all[b]);
                const bool same_star = equiv_star(all[a], all[b]).has_value();
                bool differ = false;
                std::mt19937_64 rng(1000003u * n + 1009u * a + b);
                for (int t = 0; t < 20; ++t) {
                    const auto f = random_network(n, rng);
                    const auto ga = transition_graph(f, all[a]);
                    const auto gb = transition_graph(f, all[b]);
                    if (same0 && ga.successors() != gb.successors())
                        return fail("equiv0 pair with different graphs: " + serialize_schedule(all[a]));
                    if (same_star && ga.cycle_lengths() != gb.cycle_lengths())
                        return fail("equiv_star pair with different cycle types: " + serialize_schedule(all[a]));
                    differ = differ || ga.successors() != gb.successors();
                }
                eq0 += same0;
                eqs += same_star;
                if (same0) continue;
                const auto w = distinguishing_network(all[a], all[b]);
                if (!w) {
                    ++absent;
                    separated += differ;
                    continue;
                }
                if (step(w->network, all[a], w->witness).get(w->index) ==
                    step(w->network, all[b], w->witness).get(w->index))
                    return fail("witness fails for " + serialize_schedule(all[a]) + " vs " + serialize_schedule(all[b]));
                ++witnessed;
            }
        }
    }
    return {true, std::to_string(eq0) + " equiv0 pairs, " + std::to_string(eqs) + " equiv_star pairs, " +
                      std::to_string(witnessed) + " witnesses verified, " + std::to_string(absent) + " without witness (" + std::to_string(separated) +
                      " of them separated by a random network)"};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "count reproduction", 1.0, false, count_reproduction},
        {2, "formula redundancy", 10.0, false, formula_redundancy},
        {3, "enumeration/counting equivalence", 60.0, false, enumeration_oracle},
        {4, "limit-isomorphism enumeration soundness", 120.0, false, algorithm_soundness},
        {5, "bpstar(10) performance", kReferenceBpStar10, true, performance},
        {6, "dynamics correctness", 10.0, false, dynamics_correctness},
        {7, "bijectivity by blocks", 60.0, false, bijectivity_by_blocks},
        {8, "equivalence semantics", 120.0, false, equivalence_semantics},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = fail(std::string("exception: ") + e.what());
        }
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = out.ok;
        if (ok && t > c.limit_s) {
            ok = false;
            out.detail += "; over the " + std::to_string(c.limit_s) + " s budget";
        }
        const char* label = ok ? "PASS" : c.soft ? "FLAGGED" : "FAIL";
        if (!ok && !c.soft) ++failures;
        std::printf("[%s] criterion %d: %s (%.2f s) - %s\n", label, c.id, c.name, t, out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d hard failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}

#include "blockpar/schedule.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "blockpar/error.hpp"

namespace blockpar {

namespace {

bool canonical_less(const OBlock& a, const OBlock& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::string where(std::size_t block, std::size_t pos) {
    return "o-block " + std::to_string(block) + ", position " + std::to_string(pos);
}

std::uint64_t checked_length(const PartitionedOrder& mu, std::uint64_t max_blocks) {
    const BigInt l = mu.substep_count();
    if (l > max_blocks) {
        throw ResourceLimitError("schedule expands to " + l.str() + " substeps, above the cap of " +
                                 std::to_string(max_blocks));
    }
    return static_cast<std::uint64_t>(l);
}

} // namespace

PartitionedOrder::PartitionedOrder(unsigned n, std::vector<OBlock> oblocks) : n_(n) {
    if (n == 0) throw DomainError("schedule must cover at least one automaton");
    std::vector<bool> seen(n, false);
    for (std::size_t k = 0; k < oblocks.size(); ++k) {
        if (oblocks[k].empty()) throw DomainError("empty o-block at index " + std::to_string(k));
        for (std::size_t p = 0; p < oblocks[k].size(); ++p) {
            const Automaton a = oblocks[k][p];
            if (a >= n) {
                throw DomainError("automaton " + std::to_string(a) + " out of range for n=" +
                                  std::to_string(n) + " at " + where(k, p));
            }
            if (seen[a]) throw DomainError("duplicate automaton " + std::to_string(a) + " at " + where(k, p));
            seen[a] = true;
        }
    }
    for (unsigned a = 0; a < n; ++a)
        if (!seen[a]) throw DomainError("missing automaton " + std::to_string(a));
    std::sort(oblocks.begin(), oblocks.end(), canonical_less);
    oblocks_ = std::move(oblocks);
}

PartitionedOrder::PartitionedOrder(Trusted, unsigned n, std::vector<OBlock> oblocks)
    : n_(n), oblocks_(std::move(oblocks)) {
    std::sort(oblocks_.begin(), oblocks_.end(), canonical_less);
}

PartitionedOrder PartitionedOrder::parallel(unsigned n) {
    std::vector<OBlock> blocks(n);
    for (unsigned i = 0; i < n; ++i) blocks[i] = {i};
    return PartitionedOrder(n, std::move(blocks));
}

Partition PartitionedOrder::support() const {
    std::vector<unsigned> parts;
    parts.reserve(oblocks_.size());
    for (const auto& b : oblocks_) parts.push_back(static_cast<unsigned>(b.size()));
    return Partition::from_parts(parts);
}

BigInt PartitionedOrder::substep_count() const {
    BigInt l = 1;
    std::size_t last = 0;
    for (const auto& b : oblocks_) {
        if (b.size() == last) continue;  // canonical order groups equal lengths
        last = b.size();
        l = boost::multiprecision::lcm(l, BigInt(b.size()));
    }
    return l;
}

BlockSequence::BlockSequence(unsigned n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        auto& w = blocks_[i];
        if (w.empty()) throw DomainError("empty block at index " + std::to_string(i));
        std::sort(w.begin(), w.end());
        if (std::adjacent_find(w.begin(), w.end()) != w.end())
            throw DomainError("repeated automaton inside block " + std::to_string(i));
        if (w.back() >= n) throw DomainError("automaton out of range in block " + std::to_string(i));
    }
}

Block phi_block(const PartitionedOrder& mu, std::uint64_t i) {
    Block w;
    w.reserve(mu.oblock_count());
    for (const auto& s : mu.oblocks()) w.push_back(s[i % s.size()]);
    std::sort(w.begin(), w.end());
    return w;
}

BlockSequence phi(const PartitionedOrder& mu, std::uint64_t max_blocks) {
    const std::uint64_t l = checked_length(mu, max_blocks);
    std::vector<Block> blocks;
    blocks.reserve(l);
    for (std::uint64_t i = 0; i < l; ++i) blocks.push_back(phi_block(mu, i));
    return BlockSequence(mu.size(), std::move(blocks));
}

MatrixRepresentation matrix_repr(const PartitionedOrder& mu) {
    MatrixRepresentation out;
    for (const auto& s : mu.oblocks()) out.matrices[static_cast<unsigned>(s.size())].push_back(s);
    return out;
}

bool equiv0(const PartitionedOrder& mu, const PartitionedOrder& mu2, std::uint64_t max_blocks) {
    if (mu.size() != mu2.size()) throw DomainError("equiv0: schedules differ in n");
    if (mu.substep_count() != mu2.substep_count()) return false;
    return phi(mu, max_blocks) == phi(mu2, max_blocks);
}

std::optional<std::uint64_t> circular_shift_between(const BlockSequence& a, const BlockSequence& b) {
    const std::size_t l = a.length();
    if (a.size() != b.size() || l != b.length() || l == 0) return std::nullopt;
    // a[k] == b[(k - i) mod l]; only shifts that align a[0] are candidates.
    for (std::size_t i = 0; i < l; ++i) {
        if (a[0] != b[(l - i) % l]) continue;
        bool match = true;
        for (std::size_t k = 1; k < l && match; ++k) match = a[k] == b[(k + l - i) % l];
        if (match) return i;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> equiv_star(const PartitionedOrder& mu, const PartitionedOrder& mu2,
                                        std::uint64_t max_blocks) {
    if (mu.size() != mu2.size()) throw DomainError("equiv_star: schedules differ in n");
    if (mu.substep_count() != mu2.substep_count()) return std::nullopt;
    return circular_shift_between(phi(mu, max_blocks), phi(mu2, max_blocks));
}

bool is_bs_intersection(const BlockSequence& seq) {
    if (seq.length() == 0) return false;
    const std::size_t width = seq[0].size();
    std::vector<bool> seen(seq.size(), false);
    std::size_t covered = 0;
    for (const auto& w : seq.blocks()) {
        if (w.size() != width) return false;
        for (Automaton a : w) {
            if (seen[a]) return false;
            seen[a] = true;
            ++covered;
        }
    }
    return covered == seq.size();
}

std::vector<std::uint64_t> first_update_times(const PartitionedOrder& mu) {
    std::vector<std::uint64_t> t(mu.size(), 0);
    for (const auto& s : mu.oblocks())
        for (std::size_t p = 0; p < s.size(); ++p) t[s[p]] = p;
    return t;
}

PartitionedOrder parse_schedule(std::string_view text, std::optional<unsigned> n) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed schedule: ") + e.what(), 1, e.byte);
    }
    if (!doc.is_array()) throw ParseError("schedule must be an array of arrays");
    std::vector<OBlock> blocks;
    unsigned max_index = 0;
    bool any = false;
    for (std::size_t k = 0; k < doc.size(); ++k) {
        const auto& inner = doc[k];
        if (!inner.is_array()) throw ParseError("o-block " + std::to_string(k) + " is not an array");
        OBlock block;
        for (std::size_t p = 0; p < inner.size(); ++p) {
            const auto& v = inner[p];
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xFFFFFFFEull) {
                throw ParseError("expected a non-negative automaton index at " + where(k, p));
            }
            const auto a = v.get<Automaton>();
            max_index = std::max(max_index, a);
            any = true;
            block.push_back(a);
        }
        blocks.push_back(std::move(block));
    }
    if (!any) throw ParseError("schedule has no automata");
    try {
        return PartitionedOrder(n.value_or(max_index + 1), std::move(blocks));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

std::string serialize_schedule(const PartitionedOrder& mu) {
    std::string out = "[";
    for (std::size_t k = 0; k < mu.oblock_count(); ++k) {
        if (k) out += ',';
        out += '[';
        const auto& s = mu.oblocks()[k];
        for (std::size_t p = 0; p < s.size(); ++p) {
            if (p) out += ',';
            out += std::to_string(s[p]);
        }
        out += ']';
    }
    out += ']';
    return out;
}

std::string to_string(const BlockSequence& seq) {
    std::string out = "(";
    for (std::size_t i = 0; i < seq.length(); ++i) {
        if (i) out += ", ";
        out += '{';
        for (std::size_t k = 0; k < seq[i].size(); ++k) {
            if (k) out += ',';
            out += std::to_string(seq[i][k]);
        }
        out += '}';
    }
    out += ')';
    return out;
}

} // namespace blockpar

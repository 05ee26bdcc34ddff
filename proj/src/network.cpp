#include "blockpar/network.hpp"

#include <algorithm>
#include <cctype>

#include "blockpar/error.hpp"

namespace blockpar {

// Configuration ---------------------------------------------------------------

Configuration Configuration::parse(std::string_view bits, std::optional<unsigned> n) {
    if (bits.empty()) throw ParseError("empty configuration");
    if (n && bits.size() != *n) {
        throw ParseError("configuration has " + std::to_string(bits.size()) + " bits, expected " +
                         std::to_string(*n));
    }
    Configuration x(static_cast<unsigned>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') {
            throw ParseError(std::string("invalid configuration character '") + bits[i] + "'", 1, i + 1);
        }
        x.set(static_cast<unsigned>(i), bits[i] == '1');
    }
    return x;
}

Configuration Configuration::from_index(unsigned n, std::uint64_t index) {
    if (n > 64) throw DomainError("from_index supports at most 64 automata");
    Configuration x(n);
    if (n > 0) x.words_[0] = n == 64 ? index : index & ((std::uint64_t{1} << n) - 1);
    return x;
}

std::uint64_t Configuration::to_index() const {
    if (n_ > 64) throw DomainError("to_index supports at most 64 automata");
    return words_.empty() ? 0 : words_[0];
}

std::string Configuration::to_string() const {
    std::string out(n_, '0');
    for (unsigned i = 0; i < n_; ++i)
        if (get(i)) out[i] = '1';
    return out;
}

std::size_t Configuration::hash() const noexcept {
    std::size_t h = n_;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

// Expr ------------------------------------------------------------------------

Expr Expr::variable(Automaton i) {
    Expr e;
    e.nodes_.push_back({Op::Var, i});
    return e;
}

Expr Expr::constant(bool value) {
    Expr e;
    e.nodes_.push_back({Op::Const, value ? 1u : 0u});
    return e;
}

Expr operator!(Expr e) {
    e.nodes_.push_back({Expr::Op::Not, 0});
    return e;
}

Expr Expr::binary(Op op, Expr a, Expr b) {
    a.stack_need_ = std::max(a.stack_need_, b.stack_need_ + 1);
    a.nodes_.insert(a.nodes_.end(), b.nodes_.begin(), b.nodes_.end());
    a.nodes_.push_back({op, 0});
    return a;
}

Expr operator&(Expr a, Expr b) { return Expr::binary(Expr::Op::And, std::move(a), std::move(b)); }
Expr operator|(Expr a, Expr b) { return Expr::binary(Expr::Op::Or, std::move(a), std::move(b)); }
Expr operator^(Expr a, Expr b) { return Expr::binary(Expr::Op::Xor, std::move(a), std::move(b)); }

std::optional<Automaton> Expr::max_variable() const {
    std::optional<Automaton> best;
    for (const auto& node : nodes_)
        if (node.op == Op::Var && (!best || node.value > *best)) best = node.value;
    return best;
}

namespace {

int precedence(Expr::Op op) {
    switch (op) {
    case Expr::Op::Or: return 1;
    case Expr::Op::Xor: return 2;
    case Expr::Op::And: return 3;
    case Expr::Op::Not: return 4;
    default: return 5;
    }
}

} // namespace

std::string Expr::to_string() const {
    struct Item {
        std::string text;
        int prec;
    };
    std::vector<Item> stack;
    for (const Node& node : nodes_) {
        switch (node.op) {
        case Op::Var: stack.push_back({"x" + std::to_string(node.value), 5}); break;
        case Op::Const: stack.push_back({node.value ? "1" : "0", 5}); break;
        case Op::Not: {
            Item& top = stack.back();
            top.text = top.prec < 4 ? "!(" + top.text + ")" : "!" + top.text;
            top.prec = 4;
            break;
        }
        default: {
            const int p = precedence(node.op);
            Item rhs = std::move(stack.back());
            stack.pop_back();
            Item& lhs = stack.back();
            const char* sym = node.op == Op::And ? " & " : node.op == Op::Or ? " | " : " ^ ";
            std::string l = lhs.prec < p ? "(" + lhs.text + ")" : lhs.text;
            std::string r = rhs.prec <= p ? "(" + rhs.text + ")" : rhs.text;
            lhs.text = l + sym + r;
            lhs.prec = p;
        }
        }
    }
    return stack.back().text;
}

// BooleanNetwork ---------------------------------------------------------------

BooleanNetwork::BooleanNetwork(unsigned n, std::vector<Expr> locals) : n_(n), locals_(std::move(locals)) {
    if (n == 0) throw DomainError("network must have at least one automaton");
    if (locals_.size() != n) {
        throw DomainError("network has " + std::to_string(locals_.size()) + " local functions, expected " +
                          std::to_string(n));
    }
    for (unsigned i = 0; i < n; ++i) {
        if (auto v = locals_[i].max_variable(); v && *v >= n) {
            throw DomainError("local function " + std::to_string(i) + " reads x" + std::to_string(*v) +
                              " outside n=" + std::to_string(n));
        }
    }
}

BooleanNetwork BooleanNetwork::identity(unsigned n) {
    std::vector<Expr> locals;
    for (unsigned i = 0; i < n; ++i) locals.push_back(Expr::variable(i));
    return BooleanNetwork(n, std::move(locals));
}

BooleanNetwork BooleanNetwork::constant(unsigned n, bool value) {
    return BooleanNetwork(n, std::vector<Expr>(n, Expr::constant(value)));
}

// Parser ----------------------------------------------------------------------

namespace {

class LineParser {
public:
    LineParser(std::string_view line, std::size_t line_no) : s_(line), line_(line_no) {}

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what, line_, pos_ + 1);
    }
    void expect(char c) {
        if (peek() != c) {
            if (pos_ >= s_.size()) fail(std::string("expected '") + c + "' before end of line");
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }
    std::uint32_t integer() {
        skip_ws();
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            if (v > 0xFFFFFFFEull) fail("integer too large");
            ++pos_;
        }
        if (pos_ == start) fail(pos_ >= s_.size() ? "expected an integer before end of line" : "expected an integer");
        return static_cast<std::uint32_t>(v);
    }
    Automaton variable() {
        if (peek() != 'x') fail("expected a variable x<i>");
        ++pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected digits after 'x'");
        const Automaton v = integer();
        max_seen = std::max<std::int64_t>(max_seen, v);
        return v;
    }

    Expr expr() {
        Expr e = xor_expr();
        while (peek() == '|') {
            ++pos_;
            e = std::move(e) | xor_expr();
        }
        return e;
    }

    std::int64_t max_seen = -1;
    std::size_t pos_ = 0;

private:
    Expr xor_expr() {
        Expr e = and_expr();
        while (peek() == '^') {
            ++pos_;
            e = std::move(e) ^ and_expr();
        }
        return e;
    }
    Expr and_expr() {
        Expr e = unary();
        while (peek() == '&') {
            ++pos_;
            e = std::move(e) & unary();
        }
        return e;
    }
    Expr unary() {
        if (peek() == '!') {
            ++pos_;
            return !unary();
        }
        return primary();
    }
    Expr primary() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (c == 'x') return Expr::variable(variable());
        if (c == '0' || c == '1') {
            ++pos_;
            return Expr::constant(c == '1');
        }
        if (c == '\0') fail("unexpected end of line, expected an operand");
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t line_;
};

} // namespace

BooleanNetwork parse_network(std::string_view text) {
    std::optional<unsigned> declared;
    std::size_t declared_line = 0;
    std::vector<std::optional<Expr>> assigned;
    std::vector<std::size_t> assigned_line;
    std::int64_t max_seen = -1;
    std::int64_t max_seen_line = 0;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        LineParser p(line, line_no);
        if (p.at_end()) continue;
        if (p.peek() == 'n') {
            ++p.pos_;
            p.expect('=');
            const unsigned n = p.integer();
            if (!p.at_end()) p.fail("unexpected text after header");
            if (declared) p.fail("duplicate n= header");
            if (n == 0) p.fail("n must be positive");
            declared = n;
            declared_line = line_no;
            continue;
        }
        const Automaton target = p.variable();
        p.expect('=');
        Expr rhs = p.expr();
        if (!p.at_end()) p.fail("unexpected text after expression");
        if (assigned.size() <= target) {
            assigned.resize(target + 1);
            assigned_line.resize(target + 1, 0);
        }
        if (assigned[target]) {
            throw ParseError("duplicate assignment to x" + std::to_string(target) + " (first on line " +
                                 std::to_string(assigned_line[target]) + ")",
                             line_no, 1);
        }
        assigned[target] = std::move(rhs);
        assigned_line[target] = line_no;
        if (p.max_seen > max_seen) {
            max_seen = p.max_seen;
            max_seen_line = static_cast<std::int64_t>(line_no);
        }
    }

    if (!declared && max_seen < 0) throw ParseError("network mentions no automata and has no n= header");
    const unsigned n = declared ? *declared : static_cast<unsigned>(max_seen + 1);
    if (declared && max_seen >= static_cast<std::int64_t>(n)) {
        throw ParseError("index x" + std::to_string(max_seen) + " out of range for n=" + std::to_string(n) +
                             " declared on line " + std::to_string(declared_line),
                         static_cast<std::size_t>(max_seen_line), 1);
    }
    std::vector<Expr> locals;
    locals.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        locals.push_back(i < assigned.size() && assigned[i] ? std::move(*assigned[i]) : Expr::variable(i));
    }
    return BooleanNetwork(n, std::move(locals));
}

std::string serialize_network(const BooleanNetwork& f) {
    std::string out = "n=" + std::to_string(f.size()) + "\n";
    for (unsigned i = 0; i < f.size(); ++i) out += "x" + std::to_string(i) + " = " + f.local(i).to_string() + "\n";
    return out;
}

// Evaluation ------------------------------------------------------------------

bool eval_local(const BooleanNetwork& f, unsigned i, const Configuration& x) {
    if (i >= f.size()) throw DomainError("automaton index " + std::to_string(i) + " out of range");
    if (x.size() != f.size()) throw DomainError("configuration size does not match the network");
    return f.local(i).eval(x);
}

Configuration update_block(const BooleanNetwork& f, std::span<const Automaton> w, const Configuration& x) {
    if (w.empty()) throw DomainError("update_block requires a non-empty block");
    if (x.size() != f.size()) throw DomainError("configuration size does not match the network");
    for (Automaton a : w)
        if (a >= f.size()) throw DomainError("block automaton " + std::to_string(a) + " out of range");
    std::vector<bool> next(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) next[k] = f.local(w[k]).eval(x);
    Configuration y = x;
    for (std::size_t k = 0; k < w.size(); ++k) y.set(w[k], next[k]);
    return y;
}

void update_block_lanes(const BooleanNetwork& f, std::span<const Automaton> w, std::vector<std::uint64_t>& lanes,
                        std::vector<std::uint64_t>& scratch) {
    scratch.resize(w.size());
    auto lane = [&](Automaton i) { return lanes[i]; };
    for (std::size_t k = 0; k < w.size(); ++k) scratch[k] = f.local(w[k]).eval_lanes(lane);
    for (std::size_t k = 0; k < w.size(); ++k) lanes[w[k]] = scratch[k];
}

namespace {

Expr random_expr(unsigned n, std::mt19937_64& rng, unsigned depth_left) {
    // Leaves: variables (7 in 8) or constants. Internal: ! & | ^ or an early leaf.
    auto leaf = [&]() {
        if (rng() % 8 == 0) return Expr::constant(rng() % 2 == 1);
        return Expr::variable(static_cast<Automaton>(rng() % n));
    };
    if (depth_left == 0) return leaf();
    const auto kind = rng() % 5;
    if (kind == 0) return leaf();
    if (kind == 1) return !random_expr(n, rng, depth_left - 1);
    // Operands are drawn in sequence so the engine is consumed in a fixed order.
    Expr lhs = random_expr(n, rng, depth_left - 1);
    Expr rhs = random_expr(n, rng, depth_left - 1);
    if (kind == 2) return std::move(lhs) & std::move(rhs);
    if (kind == 3) return std::move(lhs) | std::move(rhs);
    return std::move(lhs) ^ std::move(rhs);
}

} // namespace

BooleanNetwork random_network(unsigned n, std::mt19937_64& rng, unsigned max_depth) {
    if (n == 0) throw DomainError("random_network requires n >= 1");
    std::vector<Expr> locals;
    locals.reserve(n);
    for (unsigned i = 0; i < n; ++i) locals.push_back(random_expr(n, rng, max_depth));
    return BooleanNetwork(n, std::move(locals));
}

} // namespace blockpar

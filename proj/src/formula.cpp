#include "mbr/formula.hpp"

#include <algorithm>
#include <cctype>

#include "mbr/error.hpp"

namespace mbr {

Formula Formula::make(Kind kind, int index, const Formula* lhs, const Formula* rhs) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->index = index;
    node->propositional = kind != Kind::Belief;
    node->hash = static_cast<std::size_t>(kind) * 0x9e3779b97f4a7c15ULL + static_cast<std::size_t>(index + 1);
    for (const Formula* operand : {lhs, rhs}) {
        if (!operand) continue;
        node->operands.push_back(*operand);
        node->propositional = node->propositional && operand->is_propositional();
        node->depth = std::max(node->depth, operand->depth() + 1);
        node->hash = (node->hash ^ operand->hash()) * 0x100000001b3ULL + 0x7f4a7c15;
    }
    return Formula(std::move(node));
}

Formula Formula::top() {
    static const Formula f = make(Kind::True, -1, nullptr, nullptr);
    return f;
}

Formula Formula::bottom() {
    static const Formula f = make(Kind::False, -1, nullptr, nullptr);
    return f;
}

Formula Formula::atom(PropId p) { return make(Kind::Atom, p, nullptr, nullptr); }
Formula Formula::negation(Formula f) { return make(Kind::Not, -1, &f, nullptr); }
Formula Formula::conjunction(Formula l, Formula r) { return make(Kind::And, -1, &l, &r); }
Formula Formula::disjunction(Formula l, Formula r) { return make(Kind::Or, -1, &l, &r); }
Formula Formula::implication(Formula l, Formula r) { return make(Kind::Implies, -1, &l, &r); }
Formula Formula::equivalence(Formula l, Formula r) { return make(Kind::Iff, -1, &l, &r); }
Formula Formula::belief(AgentId a, Formula body) { return make(Kind::Belief, a, &body, nullptr); }

const Formula& Formula::lhs() const {
    if (node_->operands.empty()) throw DomainError("formula node has no operand");
    return node_->operands.front();
}

const Formula& Formula::rhs() const {
    if (node_->operands.size() < 2) throw DomainError("formula node has no right operand");
    return node_->operands[1];
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash()) return false;
    return a.kind() == b.kind() && a.index() == b.index() && a.node_->operands == b.node_->operands;
}

FirstDegreeBelief::FirstDegreeBelief(AgentId a, Formula b) : agent(a), body(std::move(b)) {
    if (!body.is_propositional()) throw DomainError("first-degree belief body must be propositional");
}

namespace {

class Parser {
public:
    Parser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

    Formula parse_top() {
        Formula lhs = parse();
        skip_ws();
        if (at_end()) return lhs;
        // Bare top-level binary operator.
        auto op = parse_op();
        Formula rhs = parse();
        skip_ws();
        if (!at_end()) {
            if (peek_op()) fail("binary operators must be parenthesised when chained");
            fail("unexpected trailing input");
        }
        return combine(op, std::move(lhs), std::move(rhs));
    }

private:
    enum class Op { And, Or, Implies, Iff };

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            fail("expected identifier");
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    bool peek_op() {
        skip_ws();
        return starts_with("&") || starts_with("|") || starts_with("->") || starts_with("<->");
    }

    Op parse_op() {
        skip_ws();
        if (starts_with("<->")) { pos_ += 3; return Op::Iff; }
        if (starts_with("->")) { pos_ += 2; return Op::Implies; }
        if (starts_with("&")) { pos_ += 1; return Op::And; }
        if (starts_with("|")) { pos_ += 1; return Op::Or; }
        fail("expected binary operator (&, |, ->, <->)");
    }

    static Formula combine(Op op, Formula lhs, Formula rhs) {
        switch (op) {
            case Op::And: return Formula::conjunction(std::move(lhs), std::move(rhs));
            case Op::Or: return Formula::disjunction(std::move(lhs), std::move(rhs));
            case Op::Implies: return Formula::implication(std::move(lhs), std::move(rhs));
            case Op::Iff: return Formula::equivalence(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Formula parse() {
        skip_ws();
        if (at_end()) fail("unexpected end of formula");
        char c = peek();
        if (c == '~') {
            ++pos_;
            return Formula::negation(parse());
        }
        if (c == '(') {
            ++pos_;
            Formula lhs = parse();
            Op op = parse_op();
            Formula rhs = parse();
            expect(')');
            return combine(op, std::move(lhs), std::move(rhs));
        }
        std::size_t start = pos_;
        std::string id = ident();
        if (id == "true") return Formula::top();
        if (id == "false") return Formula::bottom();
        skip_ws();
        if (id == "B" && peek() == '[') {
            ++pos_;
            std::size_t agent_pos = pos_;
            std::string agent = ident();
            expect(']');
            auto a = sig_.find_agent(agent);
            if (!a) throw SignatureError("unknown agent '" + agent + "' at offset " + std::to_string(agent_pos));
            return Formula::belief(*a, parse());
        }
        auto p = sig_.find_prop(id);
        if (!p) throw SignatureError("unknown proposition '" + id + "' at offset " + std::to_string(start));
        return Formula::atom(*p);
    }

    std::string_view text_;
    const Signature& sig_;
    std::size_t pos_ = 0;
};

void print(const Formula& f, const Signature& sig, std::string& out) {
    using K = Formula::Kind;
    auto binary = [&](const char* op) {
        out += '(';
        print(f.lhs(), sig, out);
        out += ' ';
        out += op;
        out += ' ';
        print(f.rhs(), sig, out);
        out += ')';
    };
    switch (f.kind()) {
        case K::True: out += "true"; break;
        case K::False: out += "false"; break;
        case K::Atom: out += sig.prop_name(f.index()); break;
        case K::Not:
            out += '~';
            print(f.lhs(), sig, out);
            break;
        case K::And: binary("&"); break;
        case K::Or: binary("|"); break;
        case K::Implies: binary("->"); break;
        case K::Iff: binary("<->"); break;
        case K::Belief:
            out += "B[";
            out += sig.agent_name(f.index());
            out += "] ";
            print(f.lhs(), sig, out);
            break;
    }
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) { return Parser(text, sig).parse_top(); }

std::string to_string(const Formula& f, const Signature& sig) {
    std::string out;
    print(f, sig, out);
    return out;
}

bool eval_prop(Valuation v, const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::True: return true;
        case K::False: return false;
        case K::Atom: return v.holds(f.index());
        case K::Not: return !eval_prop(v, f.lhs());
        case K::And: return eval_prop(v, f.lhs()) && eval_prop(v, f.rhs());
        case K::Or: return eval_prop(v, f.lhs()) || eval_prop(v, f.rhs());
        case K::Implies: return !eval_prop(v, f.lhs()) || eval_prop(v, f.rhs());
        case K::Iff: return eval_prop(v, f.lhs()) == eval_prop(v, f.rhs());
        case K::Belief: break;
    }
    throw DomainError("eval_prop called on a belief formula");
}

bool prop_entails(const Formula& lhs, const Formula& rhs, const Signature& sig) {
    for (std::uint32_t bits = 0; bits < sig.valuation_count(); ++bits) {
        Valuation v(bits);
        if (eval_prop(v, lhs) && !eval_prop(v, rhs)) return false;
    }
    return true;
}

bool prop_equivalent(const Formula& lhs, const Formula& rhs, const Signature& sig) {
    return prop_entails(lhs, rhs, sig) && prop_entails(rhs, lhs, sig);
}

bool prop_satisfiable(const Formula& f, const Signature& sig) {
    return !prop_entails(f, Formula::bottom(), sig);
}

bool prop_tautology(const Formula& f, const Signature& sig) { return prop_entails(Formula::top(), f, sig); }

void validate(const Formula& f, const Signature& sig) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::True:
        case K::False: return;
        case K::Atom:
            if (f.index() < 0 || f.index() >= sig.prop_count()) throw SignatureError("proposition index out of range");
            return;
        case K::Belief:
            if (f.index() < 0 || f.index() >= sig.agent_count()) throw SignatureError("agent index out of range");
            validate(f.lhs(), sig);
            return;
        case K::Not: validate(f.lhs(), sig); return;
        default:
            validate(f.lhs(), sig);
            validate(f.rhs(), sig);
    }
}

}  // namespace mbr

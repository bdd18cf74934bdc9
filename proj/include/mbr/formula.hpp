#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mbr/signature.hpp"

namespace mbr {

/// Immutable belief-formula AST. Nodes are shared; copying a Formula is cheap.
///
/// Proposition formulas are the subset with no belief node. Agent and
/// proposition references are indices into the signature the formula was
/// built against; the formula itself does not carry the signature.
class Formula {
public:
    enum class Kind { True, False, Atom, Not, And, Or, Implies, Iff, Belief };

    static Formula top();
    static Formula bottom();
    static Formula atom(PropId p);
    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula equivalence(Formula lhs, Formula rhs);
    static Formula belief(AgentId agent, Formula body);

    Kind kind() const;
    /// Proposition index for Atom, agent index for Belief.
    int index() const;
    /// Operand of Not/Belief, left operand of binary nodes.
    const Formula& lhs() const;
    const Formula& rhs() const;

    bool is_propositional() const;
    int depth() const;
    /// Structural hash, consistent with operator==.
    std::size_t hash() const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula make(Kind kind, int index, const Formula* lhs, const Formula* rhs);

    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Kind kind;
    int index = -1;
    std::vector<Formula> operands;
    bool propositional = true;
    int depth = 0;
    std::size_t hash = 0;
};

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline int Formula::index() const { return node_->index; }
inline bool Formula::is_propositional() const { return node_->propositional; }
inline int Formula::depth() const { return node_->depth; }
inline std::size_t Formula::hash() const { return node_->hash; }

/// Agent-indexed first-degree belief B_a body, with a purely propositional body.
struct FirstDegreeBelief {
    AgentId agent;
    Formula body;

    FirstDegreeBelief(AgentId agent, Formula body);
    Formula as_formula() const { return Formula::belief(agent, body); }
};

/// Parses the ASCII formula grammar:
///
///     formula := "true" | "false" | ident | "~" formula
///              | "(" formula op formula ")" | "B[" ident "]" formula
///     op      := "&" | "|" | "->" | "<->"
///
/// A single top-level binary operator may omit its parentheses ("p & q").
/// Throws ParseError on malformed text and SignatureError on unknown ids.
Formula parse_formula(std::string_view text, const Signature& sig);

/// Canonical, fully parenthesised form accepted by parse_formula.
std::string to_string(const Formula& f, const Signature& sig);

/// Truth-functional evaluation; throws DomainError on a belief node.
bool eval_prop(Valuation v, const Formula& f);

/// Validity of "lhs -> rhs" by enumerating every valuation of `sig`.
bool prop_entails(const Formula& lhs, const Formula& rhs, const Signature& sig);
bool prop_equivalent(const Formula& lhs, const Formula& rhs, const Signature& sig);
bool prop_satisfiable(const Formula& f, const Signature& sig);
bool prop_tautology(const Formula& f, const Signature& sig);

/// Checks every agent/prop index in `f` is in range for `sig`.
void validate(const Formula& f, const Signature& sig);

}  // namespace mbr

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mbr/kripke.hpp"

namespace mbr {

struct Literal {
    PropId prop;
    bool positive;

    Literal negated() const { return {prop, !positive}; }
    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Finite set of literals as two bitmasks; may be contradictory (p and ~p).
class LiteralSet {
public:
    LiteralSet() = default;
    LiteralSet(std::uint32_t pos, std::uint32_t neg) : pos_(pos), neg_(neg) {}
    LiteralSet(std::initializer_list<Literal> lits);

    /// The complete literal set of a valuation.
    static LiteralSet of(Valuation v, const Signature& sig);

    std::uint32_t positive() const { return pos_; }
    std::uint32_t negative() const { return neg_; }
    bool contains(Literal l) const;
    bool empty() const { return pos_ == 0 && neg_ == 0; }
    int size() const;
    bool consistent() const { return (pos_ & neg_) == 0; }
    /// Total and consistent over the signature.
    bool complete(const Signature& sig) const;
    Valuation to_valuation(const Signature& sig) const;  // requires complete()

    LiteralSet with(Literal l) const;
    LiteralSet united(LiteralSet o) const { return {pos_ | o.pos_, neg_ | o.neg_}; }
    LiteralSet intersected(LiteralSet o) const { return {pos_ & o.pos_, neg_ & o.neg_}; }
    LiteralSet minus(LiteralSet o) const { return {pos_ & ~o.pos_, neg_ & ~o.neg_}; }
    /// Element-wise complement: {~l | l in this}.
    LiteralSet negated() const { return {neg_, pos_}; }
    bool subset_of(LiteralSet o) const { return (pos_ & ~o.pos_) == 0 && (neg_ & ~o.neg_) == 0; }
    std::vector<Literal> literals() const;

    friend bool operator==(const LiteralSet&, const LiteralSet&) = default;

private:
    std::uint32_t pos_ = 0;
    std::uint32_t neg_ = 0;
};

std::string to_string(const LiteralSet& s, const Signature& sig);

/// Classically consistent conjunction of literals; the empty one is "true".
class LiteralConjunction {
public:
    LiteralConjunction() = default;
    explicit LiteralConjunction(LiteralSet lits);  // throws DomainError if inconsistent

    /// Accepts true, literals and conjunctions of those. Throws DomainError
    /// for anything else or for a contradictory conjunction.
    static LiteralConjunction from_formula(const Formula& f);

    const LiteralSet& literals() const { return lits_; }
    Formula to_formula() const;
    /// Disjunction of the negated literals; false for the empty conjunction.
    Formula negation_formula() const;

    friend bool operator==(const LiteralConjunction&, const LiteralConjunction&) = default;

private:
    LiteralSet lits_;
};

/// body -> head. Rules read from files have one literal on each side.
struct Rule {
    LiteralSet body;
    LiteralSet head;
    friend bool operator==(const Rule&, const Rule&) = default;
};

class RuleSet {
public:
    RuleSet() = default;
    explicit RuleSet(std::vector<Rule> rules) : rules_(std::move(rules)) {}

    const std::vector<Rule>& rules() const { return rules_; }
    bool empty() const { return rules_.empty(); }
    void add(Rule r) { rules_.push_back(r); }
    /// True when every rule maps a single literal to a single literal.
    bool literal_rules_only() const;

    friend bool operator==(const RuleSet&, const RuleSet&) = default;

private:
    std::vector<Rule> rules_;
};

/// One rule per line, "lit -> lit" with lit being p or ~p. Blank lines and
/// lines starting with '#' are skipped. A side may also be a conjunction
/// "p & ~q".
RuleSet parse_rules(std::string_view text, const Signature& sig);
std::string to_string(const RuleSet& r, const Signature& sig);

/// Least superset of w closed under the rules.
LiteralSet closure(LiteralSet w, const RuleSet& rules);
/// pi(u) = C_R(pi(u)).
bool is_r_consistent(Valuation u, const RuleSet& rules, const Signature& sig);
/// C_R(phi) is classically consistent.
bool is_admissible(const LiteralConjunction& phi, const RuleSet& rules);

/// star_update(u, phi) has exactly one solution for every valuation u
/// closed under the rules.
bool star_well_defined(const LiteralConjunction& phi, const RuleSet& rules, const Signature& sig);

/// The unique valuation u' with u' = C_R((u ∩ u') ∪ phi), found by trying
/// every valuation. Throws StarUpdateError when there is none or several.
Valuation star_update(Valuation u, const LiteralConjunction& phi, const RuleSet& rules, const Signature& sig);

struct IdentityEffect {
    friend bool operator==(const IdentityEffect&, const IdentityEffect&) = default;
};
struct StarEffect {
    LiteralConjunction phi;
    RuleSet rules;
    friend bool operator==(const StarEffect&, const StarEffect&) = default;
};
using EffectSpec = std::variant<IdentityEffect, StarEffect>;

Valuation apply_effect(const EffectSpec& eff, Valuation v, const Signature& sig);

struct Event {
    std::string id;  // no '@'
    Formula pre;
    EffectSpec eff;
};

class EventModel {
public:
    explicit EventModel(Signature sig);

    int add_event(std::string id, Formula pre, EffectSpec eff = IdentityEffect{});
    void add_edge(AgentId agent, const std::string& from, const std::string& to);

    const Signature& signature() const { return sig_; }
    int event_count() const { return static_cast<int>(events_.size()); }
    const Event& event(int e) const { return events_.at(e); }
    int index_of(const std::string& id) const;
    const std::vector<int>& successors(AgentId agent, int e) const { return rel_.at(agent).at(e); }
    bool related(AgentId agent, int from, int to) const;
    std::size_t edge_count(AgentId agent) const;

private:
    Signature sig_;
    std::vector<Event> events_;
    std::vector<std::vector<std::vector<int>>> rel_;  // [agent][event]
};

/// Sigma^a(phi): events sigma, delta, sigma_a, delta_a, epsilon.
EventModel build_event_model_ev(const Signature& sig, AgentId a, const LiteralConjunction& phi, const RuleSet& rules);
/// Sigma^a_b(phi): events sigma, sigma_a, epsilon.
EventModel build_event_model_rb(const Signature& sig, AgentId a, const LiteralConjunction& phi, const RuleSet& rules);

/// Worlds (u, e) with (M,u) |= pre(e), named "u@e". Throws DomainError when
/// the designated event's precondition fails at the designated world.
PointedModel product_update(const PointedModel& pm, const EventModel& em, const std::string& designated_event);

PointedModel revise_full_meet(const PointedModel& pm, AgentId a, const Formula& phi);
PointedModel revise_ev(const PointedModel& pm, AgentId a, const LiteralConjunction& phi, const RuleSet& rules);
PointedModel revise_rb(const PointedModel& pm, AgentId a, const LiteralConjunction& phi, const RuleSet& rules);

struct RevisionOperator {
    enum class Tag { FM, EV, RB };
    Tag tag = Tag::FM;
    RuleSet rules;  // ignored by FM

    PointedModel apply(const PointedModel& pm, AgentId a, const Formula& phi) const;
    /// Whether `phi` is in the operator's input class (always true for FM).
    bool accepts(const Formula& phi) const;
};

std::string to_string(RevisionOperator::Tag tag);  // "fm", "ev", "rb"
RevisionOperator::Tag parse_operator_tag(std::string_view text);

}  // namespace mbr

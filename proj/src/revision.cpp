#include "mbr/revision.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "mbr/error.hpp"
#include "mbr/model_ops.hpp"

namespace mbr {

LiteralSet::LiteralSet(std::initializer_list<Literal> lits) {
    for (Literal l : lits) *this = with(l);
}

LiteralSet LiteralSet::of(Valuation v, const Signature& sig) {
    return {v.bits(), ~v.bits() & sig.full_mask()};
}

bool LiteralSet::contains(Literal l) const {
    std::uint32_t bit = 1U << l.prop;
    return (l.positive ? pos_ : neg_) & bit;
}

int LiteralSet::size() const { return std::popcount(pos_) + std::popcount(neg_); }

bool LiteralSet::complete(const Signature& sig) const {
    return consistent() && (pos_ | neg_) == sig.full_mask();
}

Valuation LiteralSet::to_valuation(const Signature& sig) const {
    if (!complete(sig)) throw DomainError("literal set is not a complete interpretation");
    return Valuation(pos_);
}

LiteralSet LiteralSet::with(Literal l) const {
    std::uint32_t bit = 1U << l.prop;
    return l.positive ? LiteralSet(pos_ | bit, neg_) : LiteralSet(pos_, neg_ | bit);
}

std::vector<Literal> LiteralSet::literals() const {
    std::vector<Literal> out;
    for (int p = 0; p < 32; ++p) {
        if (pos_ >> p & 1U) out.push_back({p, true});
        if (neg_ >> p & 1U) out.push_back({p, false});
    }
    return out;
}

std::string to_string(const LiteralSet& s, const Signature& sig) {
    std::string out = "{";
    bool first = true;
    for (Literal l : s.literals()) {
        if (!first) out += ',';
        first = false;
        if (!l.positive) out += '~';
        out += sig.prop_name(l.prop);
    }
    return out + "}";
}

LiteralConjunction::LiteralConjunction(LiteralSet lits) : lits_(lits) {
    if (!lits.consistent()) throw DomainError("inconsistent literal conjunction");
}

namespace {

void collect_literals(const Formula& f, LiteralSet& out) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::True: return;
        case K::Atom: out = out.with({f.index(), true}); return;
        case K::Not:
            if (f.lhs().kind() == K::Atom) {
                out = out.with({f.lhs().index(), false});
                return;
            }
            break;
        case K::And:
            collect_literals(f.lhs(), out);
            collect_literals(f.rhs(), out);
            return;
        default: break;
    }
    throw DomainError("formula is not a conjunction of literals");
}

Formula literal_formula(Literal l) {
    auto atom = Formula::atom(l.prop);
    return l.positive ? atom : Formula::negation(atom);
}

}  // namespace

LiteralConjunction LiteralConjunction::from_formula(const Formula& f) {
    LiteralSet lits;
    collect_literals(f, lits);
    return LiteralConjunction(lits);
}

Formula LiteralConjunction::to_formula() const {
    auto lits = lits_.literals();
    if (lits.empty()) return Formula::top();
    Formula f = literal_formula(lits[0]);
    for (std::size_t i = 1; i < lits.size(); ++i) f = Formula::conjunction(f, literal_formula(lits[i]));
    return f;
}

Formula LiteralConjunction::negation_formula() const {
    auto lits = lits_.literals();
    if (lits.empty()) return Formula::bottom();
    Formula f = literal_formula(lits[0].negated());
    for (std::size_t i = 1; i < lits.size(); ++i) f = Formula::disjunction(f, literal_formula(lits[i].negated()));
    return f;
}

bool RuleSet::literal_rules_only() const {
    return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.body.size() == 1 && r.head.size() == 1; });
}

namespace {

LiteralSet parse_side(std::string_view text, std::size_t line_start, const Signature& sig) {
    LiteralSet out;
    std::size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    for (;;) {
        skip();
        bool positive = true;
        if (i < text.size() && text[i] == '~') {
            positive = false;
            ++i;
            skip();
        }
        std::size_t start = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
        if (start == i) throw ParseError("expected a literal", line_start + i);
        auto name = text.substr(start, i - start);
        auto p = sig.find_prop(name);
        if (!p) throw SignatureError("unknown proposition '" + std::string(name) + "' (at offset " + std::to_string(line_start + start) + ")");
        out = out.with({*p, positive});
        skip();
        if (i == text.size()) break;
        if (text[i] != '&') throw ParseError("expected '&' or end of rule side", line_start + i);
        ++i;
    }
    return out;
}

}  // namespace

RuleSet parse_rules(std::string_view text, const Signature& sig) {
    RuleSet rules;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        auto first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] != '#') {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
            auto arrow = line.find("->");
            if (arrow == std::string_view::npos) throw ParseError("rule needs '->'", pos + first);
            rules.add({parse_side(line.substr(0, arrow), pos, sig), parse_side(line.substr(arrow + 2), pos + arrow + 2, sig)});
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    return rules;
}

std::string to_string(const RuleSet& r, const Signature& sig) {
    auto side = [&](LiteralSet s) {
        std::string out;
        for (Literal l : s.literals()) {
            if (!out.empty()) out += " & ";
            if (!l.positive) out += '~';
            out += sig.prop_name(l.prop);
        }
        return out;
    };
    std::string out;
    for (const auto& rule : r.rules()) out += side(rule.body) + " -> " + side(rule.head) + "\n";
    return out;
}

LiteralSet closure(LiteralSet w, const RuleSet& rules) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rules.rules()) {
            if (r.body.subset_of(w) && !r.head.subset_of(w)) {
                w = w.united(r.head);
                changed = true;
            }
        }
    }
    return w;
}

bool is_r_consistent(Valuation u, const RuleSet& rules, const Signature& sig) {
    auto lits = LiteralSet::of(u, sig);
    return closure(lits, rules) == lits;
}

bool is_admissible(const LiteralConjunction& phi, const RuleSet& rules) {
    return closure(phi.literals(), rules).consistent();
}

Valuation star_update(Valuation u, const LiteralConjunction& phi, const RuleSet& rules, const Signature& sig) {
    auto lu = LiteralSet::of(u, sig);
    std::vector<Valuation> found;
    for (Valuation v : sig.all_valuations()) {
        auto lv = LiteralSet::of(v, sig);
        if (closure(lu.intersected(lv).united(phi.literals()), rules) == lv) found.push_back(v);
    }
    if (found.size() == 1) return found.front();
    std::string what = "update of " + sig.format(u) + " by " + to_string(phi.literals(), sig);
    if (found.empty()) throw StarUpdateError(StarUpdateError::Kind::NoSolution, what + " has no solution under the rules");
    std::string list;
    for (Valuation v : found) list += (list.empty() ? "" : " ") + sig.format(v);
    throw StarUpdateError(StarUpdateError::Kind::MultipleSolutions, what + " has several solutions: " + list);
}

bool star_well_defined(const LiteralConjunction& phi, const RuleSet& rules, const Signature& sig) {
    for (Valuation u : sig.all_valuations()) {
        if (!is_r_consistent(u, rules, sig)) continue;
        try {
            star_update(u, phi, rules, sig);
        } catch (const StarUpdateError&) {
            return false;
        }
    }
    return true;
}

Valuation apply_effect(const EffectSpec& eff, Valuation v, const Signature& sig) {
    if (const auto* star = std::get_if<StarEffect>(&eff)) return star_update(v, star->phi, star->rules, sig);
    return v;
}

EventModel::EventModel(Signature sig) : sig_(std::move(sig)) { rel_.resize(sig_.agent_count()); }

int EventModel::add_event(std::string id, Formula pre, EffectSpec eff) {
    if (id.empty() || id.find('@') != std::string::npos) throw Error("event id must be nonempty and contain no '@'");
    for (const auto& e : events_)
        if (e.id == id) throw Error("duplicate event id '" + id + "'");
    validate(pre, sig_);
    events_.push_back({std::move(id), std::move(pre), std::move(eff)});
    for (auto& r : rel_) r.emplace_back();
    return event_count() - 1;
}

int EventModel::index_of(const std::string& id) const {
    for (int e = 0; e < event_count(); ++e)
        if (events_[e].id == id) return e;
    throw Error("unknown event '" + id + "'");
}

void EventModel::add_edge(AgentId agent, const std::string& from, const std::string& to) {
    int f = index_of(from), t = index_of(to);
    auto& s = rel_.at(agent).at(f);
    if (std::find(s.begin(), s.end(), t) == s.end()) {
        s.push_back(t);
        std::sort(s.begin(), s.end());
    }
}

bool EventModel::related(AgentId agent, int from, int to) const {
    const auto& s = successors(agent, from);
    return std::binary_search(s.begin(), s.end(), to);
}

std::size_t EventModel::edge_count(AgentId agent) const {
    std::size_t n = 0;
    for (const auto& s : rel_.at(agent)) n += s.size();
    return n;
}

EventModel build_event_model_ev(const Signature& sig, AgentId a, const LiteralConjunction& phi, const RuleSet& rules) {
    Formula not_phi = phi.negation_formula();
    Formula disbelief = Formula::belief(a, not_phi);
    EventModel em(sig);
    em.add_event("sigma", Formula::negation(disbelief));
    em.add_event("delta", disbelief);
    em.add_event("sigma_a", phi.to_formula());
    em.add_event("delta_a", not_phi, StarEffect{phi, rules});
    em.add_event("epsilon", Formula::top());
    for (AgentId x = 0; x < sig.agent_count(); ++x) {
        if (x == a) {
            em.add_edge(x, "sigma", "sigma_a");
            em.add_edge(x, "sigma_a", "epsilon");
            em.add_edge(x, "delta", "delta_a");
            em.add_edge(x, "delta_a", "epsilon");
        } else {
            em.add_edge(x, "sigma", "epsilon");
            em.add_edge(x, "delta", "epsilon");
        }
        em.add_edge(x, "epsilon", "epsilon");
    }
    return em;
}

EventModel build_event_model_rb(const Signature& sig, AgentId a, const LiteralConjunction& phi, const RuleSet& rules) {
    EventModel em(sig);
    em.add_event("sigma", Formula::top());
    em.add_event("sigma_a", Formula::top(), StarEffect{phi, rules});
    em.add_event("epsilon", Formula::top());
    for (AgentId x = 0; x < sig.agent_count(); ++x) {
        if (x == a) {
            em.add_edge(x, "sigma", "sigma_a");
        } else {
            em.add_edge(x, "sigma", "epsilon");
        }
        em.add_edge(x, "sigma_a", "epsilon");
        em.add_edge(x, "epsilon", "epsilon");
    }
    return em;
}

PointedModel product_update(const PointedModel& pm, const EventModel& em, const std::string& designated_event) {
    require_same_signature(pm.signature(), em.signature());
    const auto& m = pm.model();
    const auto& sig = pm.signature();
    int de = em.index_of(designated_event);
    if (!satisfies(pm, em.event(de).pre))
        throw DomainError("precondition of event '" + designated_event + "' fails at the designated world");

    int n = m.world_count(), k = em.event_count();
    std::vector<int> index(static_cast<std::size_t>(n) * k, -1);
    KripkeModel::Builder b(sig);
    for (int u = 0; u < n; ++u) {
        for (int e = 0; e < k; ++e) {
            const auto& ev = em.event(e);
            if (!satisfies_at(m, u, ev.pre)) continue;
            index[u * k + e] = b.add_world(m.id(u) + "@" + ev.id, apply_effect(ev.eff, m.valuation(u), sig));
        }
    }
    for (AgentId x = 0; x < sig.agent_count(); ++x) {
        for (int u = 0; u < n; ++u) {
            for (int e = 0; e < k; ++e) {
                int from = index[u * k + e];
                if (from < 0) continue;
                for (WorldIndex v : m.successors(x, u))
                    for (int f : em.successors(x, e))
                        if (int to = index[v * k + f]; to >= 0) b.add_edge(x, from, to);
            }
        }
    }
    return PointedModel(std::move(b).build(), index[pm.designated() * k + de]);
}

PointedModel revise_full_meet(const PointedModel& pm, AgentId a, const Formula& phi) {
    if (!phi.is_propositional()) throw DomainError("revision needs a proposition formula");
    if (!believes_prop(pm, a, Formula::negation(phi))) return expand(pm, a, phi);
    return expand(minimal_model(pm.signature(), pm.designated_valuation()), a, phi);
}

namespace {

void require_r_consistent(const PointedModel& pm, const RuleSet& rules) {
    const auto& m = pm.model();
    for (int w = 0; w < m.world_count(); ++w)
        if (!is_r_consistent(m.valuation(w), rules, pm.signature()))
            throw DomainError("world '" + m.id(w) + "' is not closed under the rules");
}

}  // namespace

PointedModel revise_ev(const PointedModel& pm, AgentId a, const LiteralConjunction& phi, const RuleSet& rules) {
    require_r_consistent(pm, rules);
    auto em = build_event_model_ev(pm.signature(), a, phi, rules);
    bool open = !believes_prop(pm, a, phi.negation_formula());
    return product_update(pm, em, open ? "sigma" : "delta");
}

PointedModel revise_rb(const PointedModel& pm, AgentId a, const LiteralConjunction& phi, const RuleSet& rules) {
    require_r_consistent(pm, rules);
    return product_update(pm, build_event_model_rb(pm.signature(), a, phi, rules), "sigma");
}

PointedModel RevisionOperator::apply(const PointedModel& pm, AgentId a, const Formula& phi) const {
    switch (tag) {
        case Tag::FM: return revise_full_meet(pm, a, phi);
        case Tag::EV: return revise_ev(pm, a, LiteralConjunction::from_formula(phi), rules);
        case Tag::RB: return revise_rb(pm, a, LiteralConjunction::from_formula(phi), rules);
    }
    throw Error("unknown operator");
}

bool RevisionOperator::accepts(const Formula& phi) const {
    if (!phi.is_propositional()) return false;
    if (tag == Tag::FM) return true;
    try {
        LiteralConjunction::from_formula(phi);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

std::string to_string(RevisionOperator::Tag tag) {
    switch (tag) {
        case RevisionOperator::Tag::FM: return "fm";
        case RevisionOperator::Tag::EV: return "ev";
        case RevisionOperator::Tag::RB: return "rb";
    }
    return "?";
}

RevisionOperator::Tag parse_operator_tag(std::string_view text) {
    if (text == "fm") return RevisionOperator::Tag::FM;
    if (text == "ev") return RevisionOperator::Tag::EV;
    if (text == "rb") return RevisionOperator::Tag::RB;
    throw Error("unknown operator '" + std::string(text) + "' (expected fm, ev or rb)");
}

}  // namespace mbr

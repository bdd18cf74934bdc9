#include "mbr/postulates.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "mbr/error.hpp"

namespace mbr {

namespace {

constexpr std::array kNames{
    std::pair{PostulateId::Closure, "Closure"},
    std::pair{PostulateId::Success, "Success"},
    std::pair{PostulateId::Inclusion, "Inclusion"},
    std::pair{PostulateId::Vacuity, "Vacuity"},
    std::pair{PostulateId::Consistency1, "Consistency1"},
    std::pair{PostulateId::Consistency2, "Consistency2"},
    std::pair{PostulateId::Extensionality, "Extensionality"},
    std::pair{PostulateId::Superexpansion, "Superexpansion"},
    std::pair{PostulateId::Subexpansion, "Subexpansion"},
    std::pair{PostulateId::DP1, "DP1"},
    std::pair{PostulateId::DP2, "DP2"},
    std::pair{PostulateId::DP2Weak, "DP2Weak"},
    std::pair{PostulateId::DP3, "DP3"},
    std::pair{PostulateId::DP4, "DP4"},
    std::pair{PostulateId::IN, "IN"},
};

constexpr std::array kAgm{PostulateId::Closure,      PostulateId::Success,        PostulateId::Inclusion,
                          PostulateId::Vacuity,      PostulateId::Consistency1,   PostulateId::Consistency2,
                          PostulateId::Extensionality, PostulateId::Superexpansion, PostulateId::Subexpansion};
constexpr std::array kIterated{PostulateId::DP1, PostulateId::DP2, PostulateId::DP2Weak,
                               PostulateId::DP3, PostulateId::DP4, PostulateId::IN};

std::vector<PostulateId> make_all() {
    std::vector<PostulateId> all(kAgm.begin(), kAgm.end());
    all.insert(all.end(), kIterated.begin(), kIterated.end());
    return all;
}

const std::vector<PostulateId> kAll = make_all();

}  // namespace

std::string_view to_string(PostulateId id) {
    for (auto [k, name] : kNames)
        if (k == id) return name;
    return "?";
}

PostulateId parse_postulate_id(std::string_view text) {
    for (auto [k, name] : kNames)
        if (text == name) return k;
    throw Error("unknown postulate '" + std::string(text) + "'");
}

std::span<const PostulateId> agm_postulates() { return kAgm; }
std::span<const PostulateId> iterated_postulates() { return kIterated; }
std::span<const PostulateId> all_postulates() { return kAll; }

bool needs_second(PostulateId id) {
    switch (id) {
        case PostulateId::Extensionality:
        case PostulateId::Superexpansion:
        case PostulateId::Subexpansion:
        case PostulateId::DP1:
        case PostulateId::DP2:
        case PostulateId::DP2Weak:
        case PostulateId::DP3:
        case PostulateId::DP4:
        case PostulateId::IN: return true;
        default: return false;
    }
}

bool belief_implication_valid(const FirstDegreeBelief& premise, const FirstDegreeBelief& conclusion, const Signature& sig) {
    if (prop_tautology(conclusion.body, sig)) return true;
    return premise.agent == conclusion.agent && prop_entails(premise.body, conclusion.body, sig);
}

bool belief_equivalence_valid(const FirstDegreeBelief& x, const FirstDegreeBelief& y, const Signature& sig) {
    return belief_implication_valid(x, y, sig) && belief_implication_valid(y, x, sig);
}

namespace {

std::string describe_profile(const BeliefProfile& k) {
    std::string out;
    for (AgentId a = 0; a < k.signature.agent_count(); ++a) {
        if (a) out += ' ';
        out += k.signature.agent_name(a) + "={";
        bool first = true;
        for (Valuation v : k.of(a)) {
            if (!first) out += ',';
            first = false;
            out += k.signature.format(v);
        }
        out += '}';
    }
    return out;
}

}  // namespace

InstanceEvaluator::InstanceEvaluator(RevisionOperator op, PointedModel base, std::ostream* trace)
    : op_(std::move(op)), base_{"K", base, first_degree_profile(base)}, trace_(trace) {
    if (trace_) *trace_ << "K =\n" << describe(base_.model) << "profile(K): " << describe_profile(base_.profile) << "\n";
}

std::string InstanceEvaluator::name(AgentId a, const Formula& body) const {
    return to_string(Formula::belief(a, body), base_.model.signature());
}

std::size_t InstanceEvaluator::KeyHash::operator()(const Key& k) const {
    std::size_t h = static_cast<std::size_t>(k.step) * 31 + static_cast<std::size_t>(k.a1 + 1);
    h = h * 0x100000001b3ULL ^ k.f1.hash();
    h = h * 0x100000001b3ULL ^ static_cast<std::size_t>(k.a2 + 1);
    return h * 0x100000001b3ULL ^ k.f2.hash();
}

std::string InstanceEvaluator::label(const Key& k) const {
    switch (k.step) {
        case Step::Rev: return "K * " + name(k.a1, k.f1);
        case Step::Rev2: return "(K * " + name(k.a1, k.f1) + ") * " + name(k.a2, k.f2);
        case Step::Exp: return "K + " + name(k.a1, k.f1);
        case Step::RevExp: return "(K * " + name(k.a1, k.f1) + ") + " + name(k.a2, k.f2);
    }
    return {};
}

template <class Build>
const InstanceEvaluator::Cached& InstanceEvaluator::remember(const Key& key, Build&& build) {
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    PointedModel pm = build();
    BeliefProfile profile = first_degree_profile(pm);
    std::string text;
    if (trace_) {
        text = label(key);
        *trace_ << text << " =\n" << describe(pm) << "profile(" << text << "): " << describe_profile(profile) << "\n";
    }
    auto [it, inserted] = cache_.emplace(key, Cached{std::move(text), std::move(pm), std::move(profile)});
    return it->second;
}

const InstanceEvaluator::Cached& InstanceEvaluator::rev(const FirstDegreeBelief& b) {
    return remember(Key{Step::Rev, b.agent, b.body}, [&] { return op_.apply(base_.model, b.agent, b.body); });
}

const InstanceEvaluator::Cached& InstanceEvaluator::rev2(const FirstDegreeBelief& first, const FirstDegreeBelief& second) {
    return remember(Key{Step::Rev2, first.agent, first.body, second.agent, second.body}, [&] {
        return op_.apply(rev(first).model, second.agent, second.body);
    });
}

const InstanceEvaluator::Cached& InstanceEvaluator::exp(const FirstDegreeBelief& b) {
    return remember(Key{Step::Exp, b.agent, b.body}, [&] { return expand(base_.model, b.agent, b.body); });
}

const InstanceEvaluator::Cached& InstanceEvaluator::rev_exp(const FirstDegreeBelief& first, const FirstDegreeBelief& second) {
    return remember(Key{Step::RevExp, first.agent, first.body, second.agent, second.body}, [&] {
        return expand(rev(first).model, second.agent, second.body);
    });
}

const InstanceEvaluator::Cached& InstanceEvaluator::rev_conj(const FirstDegreeBelief& first, const FirstDegreeBelief& second) {
    return rev(FirstDegreeBelief(first.agent, Formula::conjunction(first.body, second.body)));
}

const PointedModel& InstanceEvaluator::revised(const FirstDegreeBelief& b) { return rev(b).model; }
const PointedModel& InstanceEvaluator::revised_twice(const FirstDegreeBelief& f, const FirstDegreeBelief& s) { return rev2(f, s).model; }
const PointedModel& InstanceEvaluator::expanded(const FirstDegreeBelief& b) { return exp(b).model; }
const PointedModel& InstanceEvaluator::revised_then_expanded(const FirstDegreeBelief& f, const FirstDegreeBelief& s) {
    return rev_exp(f, s).model;
}
const PointedModel& InstanceEvaluator::revised_by_conjunction(const FirstDegreeBelief& f, const FirstDegreeBelief& s) {
    return rev_conj(f, s).model;
}

bool InstanceEvaluator::believes(const Cached& k, AgentId a, const Formula& phi) {
    bool r = profile_believes(k.profile, a, phi);
    if (trace_) {
        *trace_ << "  " << to_string(Formula::belief(a, phi), base_.model.signature()) << (r ? " in " : " not in ")
                << k.label << "\n";
    }
    return r;
}

bool InstanceEvaluator::consistent(const Cached& k, AgentId a) {
    bool r = !k.profile.of(a).empty();
    if (trace_) *trace_ << "  B[" << base_.model.signature().agent_name(a) << "] false" << (r ? " not in " : " in ") << k.label << "\n";
    return r;
}

bool InstanceEvaluator::subset(const Cached& k1, const Cached& k2) {
    bool r = belief_subset(k1.profile, k2.profile);
    if (trace_) *trace_ << "  " << k1.label << (r ? " <= " : " not <= ") << k2.label << "\n";
    return r;
}

bool InstanceEvaluator::equal(const Cached& k1, const Cached& k2) {
    bool r = belief_equal(k1.profile, k2.profile);
    if (trace_) *trace_ << "  " << k1.label << (r ? " == " : " != ") << k2.label << "\n";
    return r;
}

PostulateOutcome InstanceEvaluator::evaluate(PostulateId id, const FirstDegreeBelief& first,
                                             const std::optional<FirstDegreeBelief>& second) {
    const auto& sig = base_.model.signature();
    if (needs_second(id) && !second) throw DomainError(std::string(to_string(id)) + " needs a second belief");
    if ((id == PostulateId::Superexpansion || id == PostulateId::Subexpansion) && second->agent != first.agent)
        throw DomainError(std::string(to_string(id)) + " needs both beliefs to be of the same agent");

    AgentId a = first.agent;
    const Formula& phi = first.body;
    Formula not_phi = Formula::negation(phi);
    PostulateOutcome out;
    switch (id) {
        case PostulateId::Closure:
            out.note = "vacuous: the theory of a pointed model is deductively closed";
            break;
        case PostulateId::Success: out.conclusion = believes(rev(first), a, phi); break;
        case PostulateId::Inclusion: out.conclusion = subset(rev(first), exp(first)); break;
        case PostulateId::Vacuity:
            out.premise = !believes(base_, a, not_phi);
            if (out.premise) out.conclusion = subset(exp(first), rev(first));
            break;
        case PostulateId::Consistency1:
            out.premise = prop_satisfiable(phi, sig);
            if (out.premise) out.conclusion = consistent(rev(first), a);
            break;
        case PostulateId::Consistency2:
            out.premise = prop_satisfiable(phi, sig);
            if (out.premise) {
                const auto& k = rev(first);
                for (AgentId b = 0; b < sig.agent_count() && out.conclusion; ++b)
                    if (!base_.profile.of(b).empty()) out.conclusion = consistent(k, b);
            }
            break;
        case PostulateId::Extensionality:
            out.premise = belief_equivalence_valid(first, *second, sig);
            if (out.premise) out.conclusion = equal(rev(first), rev(*second));
            break;
        case PostulateId::Superexpansion: out.conclusion = subset(rev_conj(first, *second), rev_exp(first, *second)); break;
        case PostulateId::Subexpansion:
            out.premise = !believes(rev(first), a, Formula::negation(second->body));
            if (out.premise) out.conclusion = subset(rev_exp(first, *second), rev_conj(first, *second));
            break;
        case PostulateId::DP1:
            out.premise = belief_implication_valid(*second, first, sig);
            if (out.premise) out.conclusion = equal(rev2(first, *second), rev(*second));
            break;
        case PostulateId::DP2:
        case PostulateId::DP2Weak:
            out.premise = belief_implication_valid(*second, FirstDegreeBelief(a, not_phi), sig);
            if (out.premise) {
                out.conclusion = id == PostulateId::DP2 ? equal(rev2(first, *second), rev(*second))
                                                        : subset(rev2(first, *second), rev(*second));
            }
            break;
        case PostulateId::DP3:
            out.premise = believes(rev(*second), a, phi);
            if (out.premise) out.conclusion = believes(rev2(first, *second), a, phi);
            break;
        case PostulateId::DP4:
            out.premise = !believes(rev(*second), a, not_phi);
            if (out.premise) out.conclusion = !believes(rev2(first, *second), a, not_phi);
            break;
        case PostulateId::IN:
            out.premise = !believes(rev(*second), a, not_phi);
            if (out.premise) out.conclusion = believes(rev2(first, *second), a, phi);
            break;
    }
    if (trace_) {
        *trace_ << to_string(id) << ": premise " << (out.premise ? "holds" : "fails") << ", conclusion "
                << (out.conclusion ? "holds" : "fails") << (out.holds() ? " -> satisfied" : " -> violated") << "\n";
    }
    return out;
}

namespace {

void require_in_domain(const RevisionOperator& op, PostulateId id, const RevisionInstance& inst) {
    if (op.tag != RevisionOperator::Tag::FM && !(op.rules == inst.ruleset))
        throw DomainError("instance rule set differs from the operator's");
    auto check = [&](const FirstDegreeBelief& b) {
        if (!op.accepts(b.body)) throw DomainError("formula outside the operator's input class");
    };
    check(inst.first);
    if (needs_second(id)) {
        if (!inst.second) throw DomainError(std::string(to_string(id)) + " needs a second belief");
        check(*inst.second);
    }
}

}  // namespace

PostulateOutcome evaluate_postulate(const RevisionOperator& op, PostulateId id, const RevisionInstance& inst,
                                    std::ostream* trace) {
    require_in_domain(op, id, inst);
    InstanceEvaluator ev(op, inst.pm, trace);
    return ev.evaluate(id, inst.first, inst.second);
}

bool check_postulate(const RevisionOperator& op, PostulateId id, const RevisionInstance& inst) {
    return evaluate_postulate(op, id, inst).holds();
}

// --- model sources ---------------------------------------------------------

namespace {

std::vector<Valuation> allowed_or_all(const Signature& sig, std::vector<Valuation> allowed) {
    if (allowed.empty()) return sig.all_valuations();
    return allowed;
}

std::string world_id(int w) { return "w" + std::to_string(w); }

}  // namespace

ModelEnumerator::ModelEnumerator(Signature sig, int max_worlds, std::vector<Valuation> allowed)
    : sig_(std::move(sig)), max_worlds_(max_worlds), allowed_(allowed_or_all(sig_, std::move(allowed))) {
    if (max_worlds < 1) throw Error("max_worlds must be at least 1");
    if (max_worlds > 7) throw Error("max_worlds above 7 is out of reach for exhaustive enumeration");
    vals_.assign(1, 0);
    masks_.assign(sig_.agent_count(), 0);
}

bool ModelEnumerator::advance() {
    if (++designated_ < worlds_) return true;
    designated_ = 0;
    std::uint64_t limit = std::uint64_t{1} << (worlds_ * worlds_);
    for (int a = static_cast<int>(masks_.size()) - 1; a >= 0; --a) {
        if (++masks_[a] < limit) return true;
        masks_[a] = 0;
    }
    for (int w = worlds_ - 1; w >= 0; --w) {
        if (++vals_[w] < static_cast<int>(allowed_.size())) return true;
        vals_[w] = 0;
    }
    if (++worlds_ > max_worlds_) return false;
    vals_.assign(worlds_, 0);
    return true;
}

PointedModel ModelEnumerator::current() const {
    KripkeModel::Builder b(sig_);
    for (int w = 0; w < worlds_; ++w) b.add_world(world_id(w), allowed_[vals_[w]]);
    for (AgentId a = 0; a < sig_.agent_count(); ++a)
        for (int bit = 0; bit < worlds_ * worlds_; ++bit)
            if (masks_[a] >> bit & 1U) b.add_edge(a, bit / worlds_, bit % worlds_);
    return PointedModel(std::move(b).build(), designated_);
}

std::optional<PointedModel> ModelEnumerator::next() {
    if (done_) return std::nullopt;
    if (started_ && !advance()) {
        done_ = true;
        return std::nullopt;
    }
    started_ = true;
    return current();
}

std::uint64_t ModelEnumerator::total() const {
    std::uint64_t sum = 0;
    for (int n = 1; n <= max_worlds_; ++n) {
        std::uint64_t count = n;
        for (int w = 0; w < n; ++w) count *= allowed_.size();
        for (int a = 0; a < sig_.agent_count(); ++a) count <<= n * n;
        sum += count;
    }
    return sum;
}

std::vector<PointedModel> enumerate_models(const Signature& sig, int max_worlds, std::vector<Valuation> allowed) {
    ModelEnumerator en(sig, max_worlds, std::move(allowed));
    std::vector<PointedModel> out;
    while (auto pm = en.next()) out.push_back(std::move(*pm));
    return out;
}

ModelSampler::ModelSampler(Signature sig, int max_worlds, std::uint64_t seed, std::vector<Valuation> allowed)
    : sig_(std::move(sig)), max_worlds_(max_worlds), allowed_(allowed_or_all(sig_, std::move(allowed))), rng_(seed) {
    if (max_worlds < 1) throw Error("max_worlds must be at least 1");
}

PointedModel ModelSampler::next() {
    int n = 1 + static_cast<int>(draw(max_worlds_));
    KripkeModel::Builder b(sig_);
    for (int w = 0; w < n; ++w) b.add_world(world_id(w), allowed_[draw(allowed_.size())]);
    for (AgentId a = 0; a < sig_.agent_count(); ++a)
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (rng_() & 1U) b.add_edge(a, u, v);
    int designated = static_cast<int>(draw(n));
    return PointedModel(std::move(b).build(), designated);
}

std::vector<PointedModel> sample_models(const Signature& sig, int max_worlds, std::uint64_t seed, std::size_t count,
                                        std::vector<Valuation> allowed) {
    ModelSampler s(sig, max_worlds, seed, std::move(allowed));
    std::vector<PointedModel> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(s.next());
    return out;
}

std::vector<Valuation> r_consistent_valuations(const Signature& sig, const RuleSet& rules) {
    std::vector<Valuation> out;
    for (Valuation v : sig.all_valuations())
        if (is_r_consistent(v, rules, sig)) out.push_back(v);
    return out;
}

bool all_agents_consistent(const PointedModel& pm) {
    for (AgentId a = 0; a < pm.signature().agent_count(); ++a)
        if (inconsistent_beliefs(pm, a)) return false;
    return true;
}

// --- formula spaces --------------------------------------------------------

namespace {

std::vector<LiteralSet> all_literal_sets(const Signature& sig) {
    std::vector<LiteralSet> out;
    std::uint32_t full = sig.full_mask();
    for (std::uint32_t pos = 0; pos <= full; ++pos)
        for (std::uint32_t neg = 0; neg <= full; ++neg)
            if ((pos & neg) == 0) out.emplace_back(pos, neg);
    auto key = [](const LiteralSet& s) {
        std::vector<std::pair<int, int>> k;
        for (Literal l : s.literals()) k.emplace_back(l.prop, l.positive ? 0 : 1);
        return std::pair{s.size(), k};
    };
    std::sort(out.begin(), out.end(), [&](const LiteralSet& x, const LiteralSet& y) { return key(x) < key(y); });
    return out;
}

std::uint32_t models_mask(const Formula& f, const Signature& sig) {
    std::uint32_t mask = 0;
    for (Valuation v : sig.all_valuations())
        if (eval_prop(v, f)) mask |= 1U << v.bits();
    return mask;
}

}  // namespace

FormulaSpace truth_function_representatives(const Signature& sig) {
    if (sig.prop_count() > 3) throw Error("truth-function space needs at most 3 propositions");
    std::uint32_t functions = 1U << sig.valuation_count();
    std::vector<std::optional<Formula>> best(functions);
    for (const auto& lits : all_literal_sets(sig)) {
        Formula f = LiteralConjunction(lits).to_formula();
        auto m = models_mask(f, sig);
        if (!best[m]) best[m] = f;
    }
    FormulaSpace space{"truth-functions", {}};
    std::uint32_t all = functions - 1;
    space.formulas.push_back(Formula::top());
    space.formulas.push_back(Formula::bottom());
    for (std::uint32_t m = 1; m < all; ++m) {
        if (best[m]) continue;
        if (best[all ^ m]) {
            best[m] = Formula::negation(*best[all ^ m]);
            continue;
        }
        std::optional<Formula> dnf;
        for (Valuation v : sig.all_valuations()) {
            if (!(m >> v.bits() & 1U)) continue;
            Formula minterm = LiteralConjunction(LiteralSet::of(v, sig)).to_formula();
            dnf = dnf ? Formula::disjunction(*dnf, minterm) : minterm;
        }
        best[m] = dnf;
    }
    // literals and conjunctions first, in literal order; then the rest by mask
    for (const auto& lits : all_literal_sets(sig)) {
        if (lits.empty()) continue;
        Formula f = LiteralConjunction(lits).to_formula();
        auto m = models_mask(f, sig);
        if (best[m] && *best[m] == f) {
            space.formulas.push_back(f);
            best[m].reset();
        }
    }
    for (std::uint32_t m = 1; m < all; ++m)
        if (best[m]) space.formulas.push_back(*best[m]);
    return space;
}

FormulaSpace literal_conjunctions(const Signature& sig, const RuleSet& rules) {
    FormulaSpace space{"literal-conjunctions", {}};
    for (const auto& lits : all_literal_sets(sig)) {
        LiteralConjunction c(lits);
        if (star_well_defined(c, rules, sig)) space.formulas.push_back(c.to_formula());
    }
    return space;
}

FormulaSpace single_literals(const Signature& sig, const RuleSet& rules) {
    FormulaSpace space{"single-literals", {}};
    for (PropId p = 0; p < sig.prop_count(); ++p) {
        for (bool positive : {true, false}) {
            LiteralConjunction c(LiteralSet{}.with(Literal{p, positive}));
            if (star_well_defined(c, rules, sig)) space.formulas.push_back(c.to_formula());
        }
    }
    return space;
}

std::vector<Formula> equivalent_variants(const Formula& phi, const RevisionOperator& op) {
    std::vector<Formula> out;
    if (op.tag == RevisionOperator::Tag::FM) out.push_back(Formula::negation(Formula::negation(phi)));
    out.push_back(Formula::conjunction(phi, Formula::top()));
    if (phi.kind() == Formula::Kind::And) out.push_back(Formula::conjunction(phi.rhs(), phi.lhs()));
    else out.push_back(Formula::conjunction(Formula::top(), phi));
    std::erase_if(out, [&](const Formula& f) { return !op.accepts(f); });
    return out;
}

// --- claims and suites -----------------------------------------------------

std::string_view to_string(Expectation e) {
    switch (e) {
        case Expectation::Holds: return "holds";
        case Expectation::Counterexample: return "counterexample";
        case Expectation::Conditional: return "conditional";
        case Expectation::Unclaimed: return "unclaimed";
    }
    return "?";
}

Claim theorem_claim(RevisionOperator::Tag op, PostulateId id) {
    using T = RevisionOperator::Tag;
    bool agm = std::find(kAgm.begin(), kAgm.end(), id) != kAgm.end();
    if (agm || op == T::RB) return {Expectation::Holds, ""};
    if (op == T::FM) {
        if (id == PostulateId::DP2 || id == PostulateId::IN) return {Expectation::Counterexample, ""};
        return {Expectation::Holds, ""};
    }
    switch (id) {
        case PostulateId::DP1: return {Expectation::Conditional, "dp1-side"};
        case PostulateId::DP2: return {Expectation::Conditional, "dp2-side"};
        case PostulateId::DP3: return {Expectation::Holds, ""};
        case PostulateId::DP4:
        case PostulateId::IN: return {Expectation::Conditional, "a-consistent"};
        default: return {Expectation::Unclaimed, ""};
    }
}

bool condition_holds(std::string_view condition, InstanceEvaluator& ev, const FirstDegreeBelief& first,
                     const std::optional<FirstDegreeBelief>& second) {
    AgentId a = first.agent;
    if (condition == "a-consistent") return !inconsistent_beliefs(ev.base(), a);
    if (!second) throw DomainError("condition '" + std::string(condition) + "' needs a second belief");
    if (condition == "dp1-side") return !believes_prop(ev.revised(first), a, Formula::negation(second->body));
    if (condition == "dp2-side") return believes_prop(ev.base(), a, first.body) || believes_prop(ev.base(), a, second->body);
    throw Error("unknown condition '" + std::string(condition) + "'");
}

std::string PostulateReport::verdict() const { return counterexample_found() ? "counterexample-found" : "holds"; }

std::string PostulateReport::status() const {
    switch (claim.expectation) {
        case Expectation::Holds: return violations == 0 ? "ok" : "violated";
        case Expectation::Conditional: return violations_under_condition == 0 ? "ok" : "violated";
        case Expectation::Counterexample: return violations > 0 ? "expected" : "missing-counterexample";
        case Expectation::Unclaimed: return "unclaimed";
    }
    return "?";
}

bool PostulateReport::claim_violated() const { return status() == "violated"; }

std::string describe_tier(const SuiteSpec& spec) {
    std::ostringstream out;
    out << (spec.tier == SuiteSpec::Tier::Exhaustive ? "exhaustive" : "sampled")
        << " agents=" << spec.signature.agent_count() << " props=" << spec.signature.prop_count()
        << " worlds<=" << spec.max_worlds;
    if (spec.tier == SuiteSpec::Tier::Sampled) out << " seed=" << spec.seed << " samples=" << spec.samples;
    if (spec.consistent_only) out << " consistent-only";
    if (spec.op.tag != RevisionOperator::Tag::FM) {
        std::string rules = to_string(spec.op.rules, spec.signature);
        std::replace(rules.begin(), rules.end(), '\n', ';');
        if (!rules.empty() && rules.back() == ';') rules.pop_back();
        out << " rules={" << rules << "}";
    }
    return out.str();
}

FormulaSpace formula_space_for(const SuiteSpec& spec) {
    std::string kind = spec.formula_space;
    if (kind == "auto") kind = spec.op.tag == RevisionOperator::Tag::FM ? "truth-functions" : "literal-conjunctions";
    if (kind == "truth-functions") return truth_function_representatives(spec.signature);
    if (kind == "literal-conjunctions") return literal_conjunctions(spec.signature, spec.op.rules);
    if (kind == "single-literals") return single_literals(spec.signature, spec.op.rules);
    throw Error("unknown formula space '" + spec.formula_space + "'");
}

namespace {

struct InstanceSpec {
    FirstDegreeBelief first;
    std::optional<FirstDegreeBelief> second;
};

// Instances for one base model in canonical order: agent, formula, then the
// second agent and formula where the postulate has one.
std::vector<InstanceSpec> instances_for(PostulateId id, const Signature& sig, const FormulaSpace& space,
                                        const RevisionOperator& op) {
    std::vector<InstanceSpec> out;
    int agents = sig.agent_count();
    for (AgentId a = 0; a < agents; ++a) {
        for (const auto& phi : space.formulas) {
            FirstDegreeBelief first(a, phi);
            if (!needs_second(id)) {
                out.push_back({first, std::nullopt});
            } else if (id == PostulateId::Extensionality) {
                for (const auto& v : equivalent_variants(phi, op)) out.push_back({first, FirstDegreeBelief(a, v)});
            } else if (id == PostulateId::Superexpansion || id == PostulateId::Subexpansion) {
                for (const auto& psi : space.formulas) {
                    Formula both = Formula::conjunction(phi, psi);
                    if (op.tag != RevisionOperator::Tag::FM) {
                        if (!op.accepts(both) || !star_well_defined(LiteralConjunction::from_formula(both), op.rules, sig))
                            continue;
                    }
                    out.push_back({first, FirstDegreeBelief(a, psi)});
                }
            } else {
                for (AgentId b = 0; b < agents; ++b)
                    for (const auto& psi : space.formulas) out.push_back({first, FirstDegreeBelief(b, psi)});
            }
        }
    }
    return out;
}

}  // namespace

std::vector<PostulateReport> run_suite(const SuiteSpec& spec) {
    if (spec.postulates.empty()) throw Error("suite has no postulates");
    const auto& sig = spec.signature;
    FormulaSpace space = formula_space_for(spec);
    std::vector<Valuation> allowed;
    if (spec.op.tag != RevisionOperator::Tag::FM) {
        allowed = r_consistent_valuations(sig, spec.op.rules);
        if (allowed.empty()) throw Error("no valuation is closed under the rules");
    }

    std::vector<PostulateReport> reports;
    std::vector<std::vector<InstanceSpec>> plans;
    for (PostulateId id : spec.postulates) {
        PostulateReport r;
        r.op = spec.op;
        r.postulate = id;
        r.tier = describe_tier(spec);
        r.formula_space = space.name;
        r.claim = theorem_claim(spec.op.tag, id);
        if (id == PostulateId::Closure) r.note = "vacuous: the theory of a pointed model is deductively closed";
        reports.push_back(std::move(r));
        plans.push_back(instances_for(id, sig, space, spec.op));
    }

    std::uint64_t models = 0;
    auto visit = [&](const PointedModel& pm) {
        ++models;
        InstanceEvaluator ev(spec.op, pm);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            auto& r = reports[i];
            for (const auto& inst : plans[i]) {
                auto outcome = ev.evaluate(r.postulate, inst.first, inst.second);
                ++r.instances;
                if (outcome.premise) ++r.premise_held;
                if (outcome.holds()) continue;
                ++r.violations;
                bool under = true;
                if (r.claim.expectation == Expectation::Conditional)
                    under = condition_holds(r.claim.condition, ev, inst.first, inst.second);
                if (under) ++r.violations_under_condition;
                else ++r.violations_outside_condition;
                auto kept = std::count_if(r.witnesses.begin(), r.witnesses.end(),
                                          [&](const Witness& w) { return w.under_condition == under; });
                if (static_cast<std::size_t>(kept) < spec.max_witnesses)
                    r.witnesses.push_back({RevisionInstance{pm, inst.first, inst.second, spec.op.rules}, under, ""});
            }
        }
    };

    if (spec.tier == SuiteSpec::Tier::Exhaustive) {
        ModelEnumerator en(sig, spec.max_worlds, allowed);
        while (auto pm = en.next())
            if (!spec.consistent_only || all_agents_consistent(*pm)) visit(*pm);
    } else {
        if (spec.samples == 0) throw Error("sampled tier needs a positive sample count");
        ModelSampler sampler(sig, spec.max_worlds, spec.seed, allowed);
        std::size_t drawn = 0;
        while (models < spec.samples) {
            if (++drawn > spec.samples * 1000) throw Error("sampler cannot find models satisfying the tier filter");
            auto pm = sampler.next();
            if (!spec.consistent_only || all_agents_consistent(pm)) visit(pm);
        }
    }
    for (auto& r : reports) {
        std::string count = std::to_string(models) + " models";
        r.note = r.note.empty() ? count : r.note + "; " + count;
    }
    return reports;
}

std::string replay_witness(const PostulateReport& report, std::size_t index) {
    if (index >= report.witnesses.size())
        throw Error("report for " + std::string(to_string(report.postulate)) + " has no witness " + std::to_string(index));
    const auto& w = report.witnesses[index];
    const auto& sig = w.instance.pm.signature();
    std::ostringstream out;
    out << "operator " << to_string(report.op.tag) << ", postulate " << to_string(report.postulate) << "\n";
    out << "first: " << to_string(w.instance.first.as_formula(), sig) << "\n";
    if (w.instance.second) out << "second: " << to_string(w.instance.second->as_formula(), sig) << "\n";
    RevisionOperator op = report.op;
    op.rules = w.instance.ruleset;
    auto outcome = evaluate_postulate(op, report.postulate, w.instance, &out);
    if (outcome.holds()) throw Error("stale witness: the instance no longer violates " + std::string(to_string(report.postulate)));
    return out.str();
}

}  // namespace mbr

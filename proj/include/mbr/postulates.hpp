#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <string_view>
#include <vector>

#include "mbr/model_ops.hpp"
#include "mbr/revision.hpp"

namespace mbr {

enum class PostulateId {
    Closure,
    Success,
    Inclusion,
    Vacuity,
    Consistency1,
    Consistency2,
    Extensionality,
    Superexpansion,
    Subexpansion,
    DP1,
    DP2,
    DP2Weak,
    DP3,
    DP4,
    IN,
};

std::string_view to_string(PostulateId id);
PostulateId parse_postulate_id(std::string_view text);
std::span<const PostulateId> agm_postulates();
std::span<const PostulateId> iterated_postulates();
std::span<const PostulateId> all_postulates();
/// Postulates that quantify over a second belief.
bool needs_second(PostulateId id);

struct RevisionInstance {
    PointedModel pm;
    FirstDegreeBelief first;
    std::optional<FirstDegreeBelief> second;
    RuleSet ruleset;
};

/// Validity of B_b psi -> B_a phi over all pointed models: phi is a
/// tautology, or a = b and psi entails phi.
bool belief_implication_valid(const FirstDegreeBelief& premise, const FirstDegreeBelief& conclusion, const Signature& sig);
/// Validity of B_a phi <-> B_b psi.
bool belief_equivalence_valid(const FirstDegreeBelief& x, const FirstDegreeBelief& y, const Signature& sig);

struct PostulateOutcome {
    bool premise = true;
    bool conclusion = true;
    std::string note;

    bool holds() const { return !premise || conclusion; }
};

/// Evaluates postulates on one base model, caching every revision and
/// expansion it computes. When a trace stream is set, each intermediate
/// model and belief query is written to it.
class InstanceEvaluator {
public:
    InstanceEvaluator(RevisionOperator op, PointedModel base, std::ostream* trace = nullptr);

    const RevisionOperator& op() const { return op_; }
    const PointedModel& base() const { return base_.model; }

    PostulateOutcome evaluate(PostulateId id, const FirstDegreeBelief& first,
                              const std::optional<FirstDegreeBelief>& second);

    const PointedModel& revised(const FirstDegreeBelief& b);
    const PointedModel& revised_twice(const FirstDegreeBelief& first, const FirstDegreeBelief& second);
    const PointedModel& expanded(const FirstDegreeBelief& b);
    const PointedModel& revised_then_expanded(const FirstDegreeBelief& first, const FirstDegreeBelief& second);
    /// K * B_a (phi & psi) for two beliefs of the same agent.
    const PointedModel& revised_by_conjunction(const FirstDegreeBelief& first, const FirstDegreeBelief& second);

private:
    struct Cached {
        std::string label;  // only filled in when tracing
        PointedModel model;
        BeliefProfile profile;
    };
    enum class Step { Rev, Rev2, Exp, RevExp };
    struct Key {
        Step step;
        AgentId a1;
        Formula f1;
        AgentId a2 = -1;
        Formula f2 = Formula::top();
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    template <class Build>
    const Cached& remember(const Key& key, Build&& build);
    std::string label(const Key& key) const;
    const Cached& rev(const FirstDegreeBelief& b);
    const Cached& rev2(const FirstDegreeBelief& first, const FirstDegreeBelief& second);
    const Cached& exp(const FirstDegreeBelief& b);
    const Cached& rev_exp(const FirstDegreeBelief& first, const FirstDegreeBelief& second);
    const Cached& rev_conj(const FirstDegreeBelief& first, const FirstDegreeBelief& second);
    bool believes(const Cached& k, AgentId a, const Formula& phi);
    bool consistent(const Cached& k, AgentId a);
    bool subset(const Cached& k1, const Cached& k2);
    bool equal(const Cached& k1, const Cached& k2);
    std::string name(AgentId a, const Formula& body) const;

    RevisionOperator op_;
    Cached base_;
    std::ostream* trace_;
    std::unordered_map<Key, Cached, KeyHash> cache_;
};

/// Throws DomainError when the instance is outside the operator's input
/// class or its rule set differs from the operator's.
bool check_postulate(const RevisionOperator& op, PostulateId id, const RevisionInstance& inst);
PostulateOutcome evaluate_postulate(const RevisionOperator& op, PostulateId id, const RevisionInstance& inst,
                                    std::ostream* trace = nullptr);

/// Pointed models with 1..max_worlds worlds, in canonical order: world count,
/// then the valuation tuple, then one relation bitmask per agent, then the
/// designated world. World ids are "w0", "w1", ... Only valuations from
/// `allowed` are used (all valuations when empty).
class ModelEnumerator {
public:
    ModelEnumerator(Signature sig, int max_worlds, std::vector<Valuation> allowed = {});

    std::optional<PointedModel> next();
    /// Number of models the full stream yields.
    std::uint64_t total() const;

private:
    bool advance();
    PointedModel current() const;

    Signature sig_;
    int max_worlds_;
    std::vector<Valuation> allowed_;
    int worlds_ = 1;
    std::vector<int> vals_;
    std::vector<std::uint64_t> masks_;
    int designated_ = 0;
    bool done_ = false;
    bool started_ = false;
};

std::vector<PointedModel> enumerate_models(const Signature& sig, int max_worlds, std::vector<Valuation> allowed = {});

/// Reproducible pseudorandom models: world count, valuations, edges (each
/// pair independently with probability 1/2) and designated world are drawn
/// from a 64-bit Mersenne Twister.
class ModelSampler {
public:
    ModelSampler(Signature sig, int max_worlds, std::uint64_t seed, std::vector<Valuation> allowed = {});
    PointedModel next();

private:
    std::uint64_t draw(std::uint64_t bound) { return rng_() % bound; }

    Signature sig_;
    int max_worlds_;
    std::vector<Valuation> allowed_;
    std::mt19937_64 rng_;
};

std::vector<PointedModel> sample_models(const Signature& sig, int max_worlds, std::uint64_t seed, std::size_t count,
                                        std::vector<Valuation> allowed = {});

/// Valuations closed under the rules.
std::vector<Valuation> r_consistent_valuations(const Signature& sig, const RuleSet& rules);

/// Every agent has an accessible world from the designated one.
bool all_agents_consistent(const PointedModel& pm);

struct FormulaSpace {
    std::string name;
    std::vector<Formula> formulas;
};

/// One formula per truth function over the signature (true, false, literals
/// and literal conjunctions where possible, otherwise a DNF).
FormulaSpace truth_function_representatives(const Signature& sig);
/// All consistent literal conjunctions for which the valuation update is
/// well defined under the rules, smallest first; includes the empty
/// conjunction "true".
FormulaSpace literal_conjunctions(const Signature& sig, const RuleSet& rules);
/// Single literals p and ~p, dropping those whose update is not well defined under `rules`.
FormulaSpace single_literals(const Signature& sig, const RuleSet& rules = {});
/// Syntactic variants of phi that the operator accepts and that are
/// propositionally equivalent to phi.
std::vector<Formula> equivalent_variants(const Formula& phi, const RevisionOperator& op);

enum class Expectation { Holds, Counterexample, Conditional, Unclaimed };
std::string_view to_string(Expectation e);

/// What the operator's published results claim for a postulate.
struct Claim {
    Expectation expectation = Expectation::Unclaimed;
    std::string condition;  // for Conditional claims, see condition_holds
};

Claim theorem_claim(RevisionOperator::Tag op, PostulateId id);
/// Evaluates a named side condition: "dp1-side", "dp2-side", "a-consistent".
bool condition_holds(std::string_view condition, InstanceEvaluator& ev, const FirstDegreeBelief& first,
                     const std::optional<FirstDegreeBelief>& second);

struct Witness {
    RevisionInstance instance;
    bool under_condition = true;
    std::string detail;
};

struct PostulateReport {
    RevisionOperator op;
    PostulateId postulate = PostulateId::Closure;
    std::string tier;
    std::string formula_space;
    Claim claim;
    std::uint64_t instances = 0;
    std::uint64_t premise_held = 0;
    std::uint64_t violations = 0;
    std::uint64_t violations_under_condition = 0;
    std::uint64_t violations_outside_condition = 0;
    std::vector<Witness> witnesses;
    std::string note;

    bool counterexample_found() const { return violations > 0; }
    /// "holds" or "counterexample-found".
    std::string verdict() const;
    /// The claim is contradicted: a claimed satisfaction has a violation.
    bool claim_violated() const;
    /// "ok", "expected", "violated", "missing-counterexample" or "unclaimed".
    std::string status() const;
};

struct SuiteSpec {
    RevisionOperator op;
    std::vector<PostulateId> postulates;
    Signature signature;
    enum class Tier { Exhaustive, Sampled } tier = Tier::Exhaustive;
    int max_worlds = 2;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    /// Keep only models where every agent has consistent beliefs.
    bool consistent_only = false;
    /// "auto", "truth-functions", "literal-conjunctions" or "single-literals".
    std::string formula_space = "auto";
    std::size_t max_witnesses = 3;
};

std::string describe_tier(const SuiteSpec& spec);
FormulaSpace formula_space_for(const SuiteSpec& spec);
std::vector<PostulateReport> run_suite(const SuiteSpec& spec);

/// Re-runs witness `index` of the report with tracing and returns the
/// trace. Throws Error when there is no such witness or when the instance
/// no longer violates the postulate.
std::string replay_witness(const PostulateReport& report, std::size_t index);

}  // namespace mbr

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbr/kripke.hpp"

namespace mbr {

/// First-degree fragment of a belief set: for each agent, the sorted set of
/// valuations of worlds accessible from the designated world. An empty entry
/// means the agent believes false.
struct BeliefProfile {
    Signature signature;
    std::vector<std::vector<Valuation>> per_agent;

    const std::vector<Valuation>& of(AgentId a) const { return per_agent.at(a); }
    friend bool operator==(const BeliefProfile&, const BeliefProfile&) = default;
};

BeliefProfile first_degree_profile(const PointedModel& pm);

/// K1 ⊆ K2 on first-degree beliefs: every B_a phi of K1 holds in K2, which is
/// the inclusion profile2[a] ⊆ profile1[a] for every agent.
bool belief_subset(const BeliefProfile& k1, const BeliefProfile& k2);
bool belief_equal(const BeliefProfile& k1, const BeliefProfile& k2);
bool belief_subset(const PointedModel& k1, const PointedModel& k2);
bool belief_equal(const PointedModel& k1, const PointedModel& k2);

/// B_a phi for propositional phi read off a profile.
bool profile_believes(const BeliefProfile& k, AgentId a, const Formula& phi);

struct Bisimulation {
    std::vector<std::pair<WorldIndex, WorldIndex>> pairs;  // sorted
    bool contains(WorldIndex w1, WorldIndex w2) const;
};

/// Largest bisimulation between the two models if it relates the designated
/// worlds, otherwise nullopt.
std::optional<Bisimulation> bisimilar(const PointedModel& pm1, const PointedModel& pm2);

/// W = 2^P, total relations, pi(w) = w. World ids render the valuation ("{p}").
PointedModel minimal_model(const Signature& sig, Valuation designated);

/// (M,s) + B_a phi with a replica of W; see README for the construction.
PointedModel expand(const PointedModel& pm, AgentId a, const Formula& phi);

/// Drops worlds unreachable from the designated world. Surviving worlds keep
/// their relative order and ids.
PointedModel garbage_collect(const PointedModel& pm);

/// Copy of `pm` restricted to `keep` (sorted world indices, must contain the
/// designated world).
PointedModel restrict_to(const PointedModel& pm, const std::vector<WorldIndex>& keep);

}  // namespace mbr

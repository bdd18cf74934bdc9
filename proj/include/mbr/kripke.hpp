#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mbr/formula.hpp"
#include "mbr/signature.hpp"

namespace mbr {

using WorldIndex = int;

/// Kripke structure <W, {R_a}, pi> over a signature. Worlds are addressed by
/// dense indices; each also carries a unique opaque string id.
class KripkeModel {
public:
    class Builder;

    const Signature& signature() const { return sig_; }
    int world_count() const { return static_cast<int>(ids_.size()); }
    const std::string& id(WorldIndex w) const { return ids_.at(w); }
    Valuation valuation(WorldIndex w) const { return vals_.at(w); }
    std::optional<WorldIndex> find(const std::string& id) const;
    WorldIndex index_of(const std::string& id) const;  // throws Error

    /// Sorted, duplicate-free successor list of `w` under R_agent.
    std::span<const WorldIndex> successors(AgentId agent, WorldIndex w) const {
        const auto& off = offsets_[agent];
        return std::span<const WorldIndex>(targets_[agent]).subspan(off[w], off[w + 1] - off[w]);
    }
    bool related(AgentId agent, WorldIndex from, WorldIndex to) const;
    std::size_t edge_count(AgentId agent) const;

    friend bool operator==(const KripkeModel& a, const KripkeModel& b);

private:
    explicit KripkeModel(Signature sig) : sig_(std::move(sig)) {}

    Signature sig_;
    std::vector<std::string> ids_;
    std::vector<Valuation> vals_;
    // Per agent, successors of w are targets_[a][offsets_[a][w] .. offsets_[a][w+1]).
    std::vector<std::vector<int>> offsets_;
    std::vector<std::vector<WorldIndex>> targets_;
    std::vector<WorldIndex> by_id_;  // world indices sorted by id
};

class KripkeModel::Builder {
public:
    explicit Builder(Signature sig);

    WorldIndex add_world(std::string id, Valuation v);
    void add_edge(AgentId agent, WorldIndex from, WorldIndex to);
    void add_edge(AgentId agent, const std::string& from, const std::string& to);
    int world_count() const { return model_.world_count(); }
    void reserve(int worlds, std::size_t edges);

    /// Sorts and deduplicates successor lists and rejects duplicate world
    /// ids. The builder is spent afterwards.
    KripkeModel build() &&;

private:
    struct Edge {
        AgentId agent;
        WorldIndex from, to;
    };
    KripkeModel model_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, WorldIndex> lookup_;  // filled on first lookup by id
};

/// Kripke model with a designated ("true") world.
class PointedModel {
public:
    PointedModel(KripkeModel model, WorldIndex designated);
    PointedModel(KripkeModel model, const std::string& designated_id);

    const KripkeModel& model() const { return model_; }
    const Signature& signature() const { return model_.signature(); }
    WorldIndex designated() const { return designated_; }
    const std::string& designated_id() const { return model_.id(designated_); }
    Valuation designated_valuation() const { return model_.valuation(designated_); }

    friend bool operator==(const PointedModel& a, const PointedModel& b) = default;

private:
    KripkeModel model_;
    WorldIndex designated_;
};

/// (M, w) |= f for an arbitrary world w of the model.
bool satisfies_at(const KripkeModel& model, WorldIndex w, const Formula& f);
/// (M, s) |= f at the designated world.
bool satisfies(const PointedModel& pm, const Formula& f);
/// B_agent f for propositional f: every agent-successor of the designated
/// world satisfies f (vacuously true without successors).
bool believes_prop(const PointedModel& pm, AgentId agent, const Formula& f);
/// B_agent false holds, i.e. the agent has no successor at the designated world.
bool inconsistent_beliefs(const PointedModel& pm, AgentId agent);

/// Multi-line listing of worlds, valuations and edges, for traces.
std::string describe(const PointedModel& pm);

}  // namespace mbr

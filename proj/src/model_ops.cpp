#include "mbr/model_ops.hpp"

#include <algorithm>
#include <deque>

#include "mbr/error.hpp"

namespace mbr {

BeliefProfile first_degree_profile(const PointedModel& pm) {
    const auto& m = pm.model();
    BeliefProfile k{pm.signature(), {}};
    k.per_agent.resize(pm.signature().agent_count());
    for (AgentId a = 0; a < pm.signature().agent_count(); ++a) {
        auto& vals = k.per_agent[a];
        for (WorldIndex t : m.successors(a, pm.designated())) vals.push_back(m.valuation(t));
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    }
    return k;
}

bool belief_subset(const BeliefProfile& k1, const BeliefProfile& k2) {
    require_same_signature(k1.signature, k2.signature);
    for (std::size_t a = 0; a < k1.per_agent.size(); ++a) {
        const auto& p1 = k1.per_agent[a];
        const auto& p2 = k2.per_agent[a];
        if (!std::includes(p1.begin(), p1.end(), p2.begin(), p2.end())) return false;
    }
    return true;
}

bool belief_equal(const BeliefProfile& k1, const BeliefProfile& k2) {
    require_same_signature(k1.signature, k2.signature);
    return k1.per_agent == k2.per_agent;
}

bool belief_subset(const PointedModel& k1, const PointedModel& k2) {
    return belief_subset(first_degree_profile(k1), first_degree_profile(k2));
}

bool belief_equal(const PointedModel& k1, const PointedModel& k2) {
    return belief_equal(first_degree_profile(k1), first_degree_profile(k2));
}

bool profile_believes(const BeliefProfile& k, AgentId a, const Formula& phi) {
    for (Valuation v : k.of(a))
        if (!eval_prop(v, phi)) return false;
    return true;
}

bool Bisimulation::contains(WorldIndex w1, WorldIndex w2) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(w1, w2));
}

namespace {

// every successor of `from` on one side has a related successor on the other
bool matched(const std::vector<char>& z, int n2, std::span<const WorldIndex> lhs,
             std::span<const WorldIndex> rhs, bool forth) {
    for (WorldIndex x : lhs) {
        bool found = false;
        for (WorldIndex y : rhs) {
            bool rel = forth ? z[x * n2 + y] : z[y * n2 + x];
            if (rel) { found = true; break; }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

std::optional<Bisimulation> bisimilar(const PointedModel& pm1, const PointedModel& pm2) {
    require_same_signature(pm1.signature(), pm2.signature());
    const auto& m1 = pm1.model();
    const auto& m2 = pm2.model();
    int n1 = m1.world_count(), n2 = m2.world_count();
    int agents = pm1.signature().agent_count();

    std::vector<char> z(static_cast<std::size_t>(n1) * n2, 0);
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v) z[u * n2 + v] = m1.valuation(u) == m2.valuation(v);

    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < n1; ++u) {
            for (int v = 0; v < n2; ++v) {
                if (!z[u * n2 + v]) continue;
                for (AgentId a = 0; a < agents; ++a) {
                    if (!matched(z, n2, m1.successors(a, u), m2.successors(a, v), true) ||
                        !matched(z, n2, m2.successors(a, v), m1.successors(a, u), false)) {
                        z[u * n2 + v] = 0;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }

    if (!z[pm1.designated() * n2 + pm2.designated()]) return std::nullopt;
    Bisimulation b;
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v)
            if (z[u * n2 + v]) b.pairs.emplace_back(u, v);
    return b;
}

PointedModel minimal_model(const Signature& sig, Valuation designated) {
    if (designated.bits() & ~sig.full_mask()) throw SignatureError("valuation mentions unknown propositions");
    KripkeModel::Builder b(sig);
    auto vals = sig.all_valuations();
    b.reserve(static_cast<int>(vals.size()), vals.size() * vals.size() * sig.agent_count());
    for (Valuation v : vals) b.add_world(sig.format(v), v);
    int n = static_cast<int>(vals.size());
    for (AgentId a = 0; a < sig.agent_count(); ++a)
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) b.add_edge(a, u, v);
    return PointedModel(std::move(b).build(), static_cast<WorldIndex>(designated.bits()));
}

namespace {

// Picks the first replica suffix and designated id that do not clash with the
// existing ids, so iterated expansions stay well formed.
std::pair<std::string, std::string> fresh_names(const KripkeModel& m) {
    auto replica_clashes = [&](const std::string& suffix) {
        for (int w = 0; w < m.world_count(); ++w)
            if (m.find(m.id(w) + suffix)) return true;
        return false;
    };
    std::string suffix = "^r";
    for (int k = 2; replica_clashes(suffix); ++k) suffix = "^r" + std::to_string(k);

    auto clashes = [&](const std::string& id) {
        if (m.find(id)) return true;
        for (int w = 0; w < m.world_count(); ++w)
            if (m.id(w) + suffix == id) return true;
        return false;
    };
    std::string plus = "s_plus";
    for (int k = 2; clashes(plus); ++k) plus = "s_plus" + std::to_string(k);
    return {suffix, plus};
}

}  // namespace

PointedModel expand(const PointedModel& pm, AgentId a, const Formula& phi) {
    if (!phi.is_propositional()) throw DomainError("expansion needs a proposition formula");
    validate(phi, pm.signature());
    const auto& m = pm.model();
    const auto& sig = pm.signature();
    if (a < 0 || a >= sig.agent_count()) throw SignatureError("agent index out of range");
    int n = m.world_count();
    WorldIndex s = pm.designated();
    auto [suffix, plus] = fresh_names(m);

    KripkeModel::Builder b(sig);
    std::size_t edges = 0;
    for (AgentId x = 0; x < sig.agent_count(); ++x) edges += m.edge_count(x);
    b.reserve(2 * n + 1, 3 * edges);
    for (int w = 0; w < n; ++w) b.add_world(m.id(w), m.valuation(w));
    for (int w = 0; w < n; ++w) b.add_world(m.id(w) + suffix, m.valuation(w));
    WorldIndex sp = b.add_world(plus, m.valuation(s));

    std::vector<char> good(n);
    for (int w = 0; w < n; ++w) good[w] = eval_prop(m.valuation(w), phi);

    for (AgentId x = 0; x < sig.agent_count(); ++x) {
        for (int u = 0; u < n; ++u) {
            for (WorldIndex v : m.successors(x, u)) {
                b.add_edge(x, u, v);
                if (x != a || good[v]) b.add_edge(x, n + u, n + v);
            }
        }
        for (WorldIndex v : m.successors(x, s)) {
            if (x != a) b.add_edge(x, sp, v);
            else if (good[v]) b.add_edge(x, sp, n + v);
        }
    }
    return PointedModel(std::move(b).build(), sp);
}

PointedModel restrict_to(const PointedModel& pm, const std::vector<WorldIndex>& keep) {
    const auto& m = pm.model();
    std::vector<int> remap(m.world_count(), -1);
    KripkeModel::Builder b(pm.signature());
    for (WorldIndex w : keep) remap[w] = b.add_world(m.id(w), m.valuation(w));
    if (remap.at(pm.designated()) < 0) throw Error("restriction drops the designated world");
    for (AgentId a = 0; a < pm.signature().agent_count(); ++a)
        for (WorldIndex w : keep)
            for (WorldIndex t : m.successors(a, w))
                if (remap[t] >= 0) b.add_edge(a, remap[w], remap[t]);
    return PointedModel(std::move(b).build(), remap[pm.designated()]);
}

PointedModel garbage_collect(const PointedModel& pm) {
    const auto& m = pm.model();
    std::vector<char> seen(m.world_count(), 0);
    std::deque<WorldIndex> queue{pm.designated()};
    seen[pm.designated()] = 1;
    while (!queue.empty()) {
        WorldIndex w = queue.front();
        queue.pop_front();
        for (AgentId a = 0; a < pm.signature().agent_count(); ++a)
            for (WorldIndex t : m.successors(a, w))
                if (!seen[t]) { seen[t] = 1; queue.push_back(t); }
    }
    std::vector<WorldIndex> keep;
    for (int w = 0; w < m.world_count(); ++w)
        if (seen[w]) keep.push_back(w);
    return restrict_to(pm, keep);
}

}  // namespace mbr

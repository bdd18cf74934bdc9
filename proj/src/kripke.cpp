#include "mbr/kripke.hpp"

#include <algorithm>

#include "mbr/error.hpp"

namespace mbr {

std::optional<WorldIndex> KripkeModel::find(const std::string& id) const {
    auto it = std::lower_bound(by_id_.begin(), by_id_.end(), id,
                               [&](WorldIndex w, const std::string& key) { return ids_[w] < key; });
    if (it == by_id_.end() || ids_[*it] != id) return std::nullopt;
    return *it;
}

WorldIndex KripkeModel::index_of(const std::string& id) const {
    if (auto w = find(id)) return *w;
    throw Error("unknown world '" + id + "'");
}

bool KripkeModel::related(AgentId agent, WorldIndex from, WorldIndex to) const {
    if (agent < 0 || agent >= sig_.agent_count() || from < 0 || from >= world_count())
        throw Error("relation query out of range");
    auto s = successors(agent, from);
    return std::binary_search(s.begin(), s.end(), to);
}

std::size_t KripkeModel::edge_count(AgentId agent) const { return targets_.at(agent).size(); }

bool operator==(const KripkeModel& a, const KripkeModel& b) {
    return a.sig_ == b.sig_ && a.ids_ == b.ids_ && a.vals_ == b.vals_ && a.offsets_ == b.offsets_ &&
           a.targets_ == b.targets_;
}

KripkeModel::Builder::Builder(Signature sig) : model_(std::move(sig)) {}

void KripkeModel::Builder::reserve(int worlds, std::size_t edges) {
    model_.ids_.reserve(worlds);
    model_.vals_.reserve(worlds);
    edges_.reserve(edges);
}

WorldIndex KripkeModel::Builder::add_world(std::string id, Valuation v) {
    if (id.empty()) throw Error("empty world id");
    if (v.bits() & ~model_.sig_.full_mask()) throw SignatureError("valuation mentions unknown propositions");
    auto w = static_cast<WorldIndex>(model_.ids_.size());
    if (!lookup_.empty() && !lookup_.emplace(id, w).second) throw Error("duplicate world id '" + id + "'");
    model_.ids_.push_back(std::move(id));
    model_.vals_.push_back(v);
    return w;
}

void KripkeModel::Builder::add_edge(AgentId agent, WorldIndex from, WorldIndex to) {
    if (agent < 0 || agent >= model_.sig_.agent_count()) throw SignatureError("agent index out of range");
    int n = model_.world_count();
    if (from < 0 || from >= n || to < 0 || to >= n) throw Error("relation endpoint is not a world");
    edges_.push_back({agent, from, to});
}

void KripkeModel::Builder::add_edge(AgentId agent, const std::string& from, const std::string& to) {
    if (lookup_.empty()) {
        for (int w = 0; w < model_.world_count(); ++w)
            if (!lookup_.emplace(model_.ids_[w], w).second) throw Error("duplicate world id '" + model_.ids_[w] + "'");
    }
    auto at = [&](const std::string& id) {
        auto it = lookup_.find(id);
        if (it == lookup_.end()) throw Error("unknown world '" + id + "'");
        return it->second;
    };
    add_edge(agent, at(from), at(to));
}

KripkeModel KripkeModel::Builder::build() && {
    auto& m = model_;
    int n = m.world_count();
    int agents = m.sig_.agent_count();

    m.by_id_.resize(n);
    for (int w = 0; w < n; ++w) m.by_id_[w] = w;
    std::sort(m.by_id_.begin(), m.by_id_.end(), [&](WorldIndex x, WorldIndex y) { return m.ids_[x] < m.ids_[y]; });
    for (int i = 1; i < n; ++i)
        if (m.ids_[m.by_id_[i - 1]] == m.ids_[m.by_id_[i]]) throw Error("duplicate world id '" + m.ids_[m.by_id_[i]] + "'");

    // Bucket edges by (agent, from), then sort and dedup each small bucket in place.
    m.offsets_.assign(agents, std::vector<int>(n + 1, 0));
    m.targets_.assign(agents, {});
    for (const Edge& e : edges_) ++m.offsets_[e.agent][e.from + 1];
    for (AgentId a = 0; a < agents; ++a) {
        auto& off = m.offsets_[a];
        for (int w = 0; w < n; ++w) off[w + 1] += off[w];
        m.targets_[a].resize(off[n]);
    }
    {
        std::vector<std::vector<int>> fill(m.offsets_);
        for (const Edge& e : edges_) m.targets_[e.agent][fill[e.agent][e.from]++] = e.to;
    }
    for (AgentId a = 0; a < agents; ++a) {
        auto& off = m.offsets_[a];
        auto& t = m.targets_[a];
        int out = 0;
        for (int w = 0; w < n; ++w) {
            auto first = t.begin() + off[w], last = t.begin() + off[w + 1];
            std::sort(first, last);
            last = std::unique(first, last);
            off[w] = out;
            out = static_cast<int>(std::copy(first, last, t.begin() + out) - t.begin());
        }
        off[n] = out;
        t.resize(out);
    }
    return std::move(m);
}

PointedModel::PointedModel(KripkeModel model, WorldIndex designated)
    : model_(std::move(model)), designated_(designated) {
    if (designated_ < 0 || designated_ >= model_.world_count()) throw Error("designated world is not a world of the model");
}

PointedModel::PointedModel(KripkeModel model, const std::string& designated_id)
    : model_(std::move(model)), designated_(model_.index_of(designated_id)) {}

bool satisfies_at(const KripkeModel& m, WorldIndex w, const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::True: return true;
        case K::False: return false;
        case K::Atom: return m.valuation(w).holds(f.index());
        case K::Not: return !satisfies_at(m, w, f.lhs());
        case K::And: return satisfies_at(m, w, f.lhs()) && satisfies_at(m, w, f.rhs());
        case K::Or: return satisfies_at(m, w, f.lhs()) || satisfies_at(m, w, f.rhs());
        case K::Implies: return !satisfies_at(m, w, f.lhs()) || satisfies_at(m, w, f.rhs());
        case K::Iff: return satisfies_at(m, w, f.lhs()) == satisfies_at(m, w, f.rhs());
        case K::Belief:
            for (WorldIndex t : m.successors(f.index(), w))
                if (!satisfies_at(m, t, f.lhs())) return false;
            return true;
    }
    return false;
}

bool satisfies(const PointedModel& pm, const Formula& f) { return satisfies_at(pm.model(), pm.designated(), f); }

bool believes_prop(const PointedModel& pm, AgentId agent, const Formula& f) {
    if (!f.is_propositional()) throw DomainError("believes_prop needs a proposition formula");
    const auto& m = pm.model();
    for (WorldIndex t : m.successors(agent, pm.designated()))
        if (!eval_prop(m.valuation(t), f)) return false;
    return true;
}

bool inconsistent_beliefs(const PointedModel& pm, AgentId agent) {
    return pm.model().successors(agent, pm.designated()).empty();
}

std::string describe(const PointedModel& pm) {
    const auto& m = pm.model();
    const auto& sig = pm.signature();
    std::string out = "designated " + pm.designated_id() + "\n";
    for (int w = 0; w < m.world_count(); ++w) out += "  " + m.id(w) + " " + sig.format(m.valuation(w)) + "\n";
    for (AgentId a = 0; a < sig.agent_count(); ++a) {
        out += "  " + sig.agent_name(a) + ":";
        for (int w = 0; w < m.world_count(); ++w)
            for (WorldIndex t : m.successors(a, w)) out += " " + m.id(w) + "->" + m.id(t);
        out += "\n";
    }
    return out;
}

}  // namespace mbr

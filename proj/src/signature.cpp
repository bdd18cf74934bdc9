#include "mbr/signature.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "mbr/error.hpp"

namespace mbr {
namespace {

void check_ids(const std::vector<std::string>& ids, const char* what) {
    std::set<std::string_view> seen;
    for (const auto& id : ids) {
        if (id.empty()) throw SignatureError(std::string("empty ") + what + " id");
        for (unsigned char c : id) {
            if (!(std::isalnum(c) || c == '_'))
                throw SignatureError(std::string("invalid character in ") + what + " id '" + id + "'");
        }
        if (std::isdigit(static_cast<unsigned char>(id.front())))
            throw SignatureError(std::string(what) + " id '" + id + "' must not start with a digit");
        if (id == "true" || id == "false")
            throw SignatureError(std::string("reserved word used as ") + what + " id: " + id);
        if (!seen.insert(id).second) throw SignatureError(std::string("duplicate ") + what + " id '" + id + "'");
    }
}

}  // namespace

Signature::Signature(std::vector<std::string> agents, std::vector<std::string> props) {
    if (agents.empty()) throw SignatureError("signature needs at least one agent");
    if (props.size() > max_props) throw SignatureError("too many propositions");
    check_ids(agents, "agent");
    check_ids(props, "proposition");
    data_ = std::make_shared<const Data>(Data{std::move(agents), std::move(props)});
}

std::optional<AgentId> Signature::find_agent(std::string_view id) const {
    auto it = std::find(data_->agents.begin(), data_->agents.end(), id);
    if (it == data_->agents.end()) return std::nullopt;
    return static_cast<AgentId>(it - data_->agents.begin());
}

std::optional<PropId> Signature::find_prop(std::string_view id) const {
    auto it = std::find(data_->props.begin(), data_->props.end(), id);
    if (it == data_->props.end()) return std::nullopt;
    return static_cast<PropId>(it - data_->props.begin());
}

AgentId Signature::agent(std::string_view id) const {
    if (auto a = find_agent(id)) return *a;
    throw SignatureError("unknown agent '" + std::string(id) + "'");
}

PropId Signature::prop(std::string_view id) const {
    if (auto p = find_prop(id)) return *p;
    throw SignatureError("unknown proposition '" + std::string(id) + "'");
}

std::vector<Valuation> Signature::all_valuations() const {
    std::vector<Valuation> out;
    out.reserve(valuation_count());
    for (std::uint32_t bits = 0; bits < valuation_count(); ++bits) out.emplace_back(bits);
    return out;
}

Valuation Signature::valuation_of(const std::vector<std::string>& true_props) const {
    Valuation v;
    for (const auto& name : true_props) v = v.with(prop(name), true);
    return v;
}

std::vector<std::string> Signature::true_props(Valuation v) const {
    std::vector<std::string> out;
    for (PropId p = 0; p < prop_count(); ++p)
        if (v.holds(p)) out.push_back(prop_name(p));
    return out;
}

std::string Signature::format(Valuation v) const {
    std::string out = "{";
    bool first = true;
    for (const auto& name : true_props(v)) {
        if (!first) out += ',';
        out += name;
        first = false;
    }
    return out + "}";
}

bool operator==(const Signature& a, const Signature& b) {
    return a.data_ == b.data_ || (a.agents() == b.agents() && a.props() == b.props());
}

void require_same_signature(const Signature& a, const Signature& b) {
    if (!(a == b)) throw SignatureError("signature mismatch");
}

}  // namespace mbr

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mbr {

using AgentId = int;
using PropId = int;

/// Assignment of truth values to the propositions of a signature; bit i is
/// proposition i.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(std::uint32_t bits) : bits_(bits) {}

    constexpr bool holds(PropId p) const { return (bits_ >> p) & 1U; }
    constexpr Valuation with(PropId p, bool value) const {
        return Valuation(value ? (bits_ | (1U << p)) : (bits_ & ~(1U << p)));
    }
    constexpr std::uint32_t bits() const { return bits_; }

    friend constexpr auto operator<=>(Valuation, Valuation) = default;

private:
    std::uint32_t bits_ = 0;
};

/// Agents and propositions of a multi-agent domain. Copies share storage.
class Signature {
public:
    static constexpr std::size_t max_props = 16;

    Signature(std::vector<std::string> agents, std::vector<std::string> props);

    const std::vector<std::string>& agents() const { return data_->agents; }
    const std::vector<std::string>& props() const { return data_->props; }
    int agent_count() const { return static_cast<int>(data_->agents.size()); }
    int prop_count() const { return static_cast<int>(data_->props.size()); }

    std::optional<AgentId> find_agent(std::string_view id) const;
    std::optional<PropId> find_prop(std::string_view id) const;
    AgentId agent(std::string_view id) const;  // throws SignatureError
    PropId prop(std::string_view id) const;    // throws SignatureError

    const std::string& agent_name(AgentId a) const { return data_->agents.at(a); }
    const std::string& prop_name(PropId p) const { return data_->props.at(p); }

    std::uint32_t valuation_count() const { return 1U << prop_count(); }
    std::uint32_t full_mask() const { return valuation_count() - 1U; }
    std::vector<Valuation> all_valuations() const;

    /// Valuation from the list of true proposition names.
    Valuation valuation_of(const std::vector<std::string>& true_props) const;
    std::vector<std::string> true_props(Valuation v) const;
    /// "{p,q}" style rendering of the true propositions.
    std::string format(Valuation v) const;

    friend bool operator==(const Signature& a, const Signature& b);

private:
    struct Data {
        std::vector<std::string> agents;
        std::vector<std::string> props;
    };
    std::shared_ptr<const Data> data_;
};

void require_same_signature(const Signature& a, const Signature& b);

}  // namespace mbr

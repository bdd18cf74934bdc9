#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbr/kripke.hpp"
#include "mbr/postulates.hpp"
#include "mbr/revision.hpp"

namespace mbr {

/// Model documents are JSON objects:
///
///     {"signature": {"agents": [...], "props": [...]},
///      "worlds": [{"id": "w1", "true_props": ["p"]}, ...],
///      "relations": {"a": [["w1", "w2"], ...], ...},
///      "designated": "w1"}
///
/// Unknown keys are rejected at every level. Agents without an entry in
/// "relations" have no edges.
std::string serialize_model(const PointedModel& pm);
PointedModel parse_model(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);
PointedModel load_model(const std::filesystem::path& path);
void save_model(const std::filesystem::path& path, const PointedModel& pm);
RuleSet load_rules(const std::filesystem::path& path, const Signature& sig);

/// Graphviz digraph. Worlds become nodes labelled with id and true props,
/// the designated world is double-circled, edges carry the agent name.
std::string render_dot(const PointedModel& pm);

struct SuiteConfig {
    SuiteSpec spec;
    std::string output;  // report path; empty means none
};

/// Suite configs are JSON objects with keys operator, rules (list of rule
/// lines), tier, agents, props, max_worlds, seed, samples, postulates
/// (ids, or the groups "agm", "iterated", "all"), consistent_only,
/// formula_space, max_witnesses and output. Relative rule files are not
/// supported; rules are inline.
SuiteConfig parse_suite_config(std::string_view text);
SuiteConfig load_suite_config(const std::filesystem::path& path);

/// One JSON object per line, one line per report, witnesses embedded with
/// their full model. Deterministic: no timings or host data.
std::string serialize_reports(const std::vector<PostulateReport>& reports);
std::vector<PostulateReport> parse_reports(std::string_view text);

/// Fixed-width summary with one row per report.
std::string format_report_table(const std::vector<PostulateReport>& reports);

}  // namespace mbr

#include "mbr/io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mbr/error.hpp"

namespace mbr {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void only_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
    if (!obj.is_object()) throw ParseError(std::string(where) + " must be an object", 0);
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto k : allowed) known = known || key == k;
        if (!known) throw ParseError("unknown key '" + key + "' in " + std::string(where), 0);
    }
}

const json& need(const json& obj, const char* key, std::string_view where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("missing key '" + std::string(key) + "' in " + std::string(where), 0);
    return *it;
}

std::vector<std::string> string_list(const json& j, std::string_view where) {
    if (!j.is_array()) throw ParseError(std::string(where) + " must be a list", 0);
    std::vector<std::string> out;
    for (const auto& x : j) {
        if (!x.is_string()) throw ParseError(std::string(where) + " entries must be strings", 0);
        out.push_back(x.get<std::string>());
    }
    return out;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
    }
}

ordered_json model_json(const PointedModel& pm) {
    const auto& m = pm.model();
    const auto& sig = pm.signature();
    ordered_json doc;
    doc["signature"]["agents"] = sig.agents();
    doc["signature"]["props"] = sig.props();
    doc["worlds"] = ordered_json::array();
    for (int w = 0; w < m.world_count(); ++w) {
        ordered_json world;
        world["id"] = m.id(w);
        world["true_props"] = ordered_json::array();
        for (const auto& p : sig.true_props(m.valuation(w))) world["true_props"].push_back(p);
        doc["worlds"].push_back(std::move(world));
    }
    doc["relations"] = ordered_json::object();
    for (AgentId a = 0; a < sig.agent_count(); ++a) {
        auto edges = ordered_json::array();
        for (int w = 0; w < m.world_count(); ++w)
            for (WorldIndex t : m.successors(a, w)) edges.push_back({m.id(w), m.id(t)});
        doc["relations"][sig.agent_name(a)] = std::move(edges);
    }
    doc["designated"] = pm.designated_id();
    return doc;
}

PointedModel model_from_json(const json& doc) {
    only_keys(doc, {"signature", "worlds", "relations", "designated"}, "model");
    const auto& sj = need(doc, "signature", "model");
    only_keys(sj, {"agents", "props"}, "signature");
    Signature sig(string_list(need(sj, "agents", "signature"), "signature.agents"),
                  string_list(need(sj, "props", "signature"), "signature.props"));

    KripkeModel::Builder b(sig);
    const auto& worlds = need(doc, "worlds", "model");
    if (!worlds.is_array()) throw ParseError("worlds must be a list", 0);
    for (const auto& wj : worlds) {
        only_keys(wj, {"id", "true_props"}, "world");
        const auto& id = need(wj, "id", "world");
        if (!id.is_string()) throw ParseError("world id must be a string", 0);
        std::vector<std::string> props;
        if (wj.contains("true_props")) props = string_list(wj["true_props"], "true_props");
        b.add_world(id.get<std::string>(), sig.valuation_of(props));
    }
    if (doc.contains("relations")) {
        const auto& rel = doc["relations"];
        if (!rel.is_object()) throw ParseError("relations must be an object", 0);
        for (const auto& [agent, edges] : rel.items()) {
            AgentId a = sig.agent(agent);
            if (!edges.is_array()) throw ParseError("relation of '" + agent + "' must be a list", 0);
            for (const auto& e : edges) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
                    throw ParseError("edges must be [from, to] pairs of world ids", 0);
                b.add_edge(a, e[0].get<std::string>(), e[1].get<std::string>());
            }
        }
    }
    const auto& d = need(doc, "designated", "model");
    if (!d.is_string()) throw ParseError("designated must be a world id", 0);
    return PointedModel(std::move(b).build(), d.get<std::string>());
}

std::vector<std::string> rule_lines(const RuleSet& rules, const Signature& sig) {
    std::vector<std::string> out;
    std::istringstream in(to_string(rules, sig));
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(line);
    return out;
}

RuleSet rules_from_lines(const std::vector<std::string>& lines, const Signature& sig) {
    std::string text;
    for (const auto& l : lines) text += l + "\n";
    return parse_rules(text, sig);
}

std::vector<PostulateId> postulate_list(const json& j) {
    std::vector<PostulateId> out;
    auto add = [&](std::span<const PostulateId> ids) { out.insert(out.end(), ids.begin(), ids.end()); };
    for (const auto& name : string_list(j, "postulates")) {
        if (name == "agm") add(agm_postulates());
        else if (name == "iterated") add(iterated_postulates());
        else if (name == "all") add(all_postulates());
        else out.push_back(parse_postulate_id(name));
    }
    std::vector<PostulateId> unique;
    for (auto id : out)
        if (std::find(unique.begin(), unique.end(), id) == unique.end()) unique.push_back(id);
    return unique;
}

Expectation parse_expectation(std::string_view s) {
    for (auto e : {Expectation::Holds, Expectation::Counterexample, Expectation::Conditional, Expectation::Unclaimed})
        if (to_string(e) == s) return e;
    throw ParseError("unknown expectation '" + std::string(s) + "'", 0);
}

}  // namespace

std::string serialize_model(const PointedModel& pm) { return model_json(pm).dump(2) + "\n"; }

PointedModel parse_model(std::string_view text) { return model_from_json(parse_json(text)); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error("write to '" + path.string() + "' failed");
}

PointedModel load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

void save_model(const std::filesystem::path& path, const PointedModel& pm) { write_file(path, serialize_model(pm)); }

RuleSet load_rules(const std::filesystem::path& path, const Signature& sig) { return parse_rules(read_file(path), sig); }

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string dot_quote(const std::string& s) { return "\"" + dot_escape(s) + "\""; }

}  // namespace

std::string render_dot(const PointedModel& pm) {
    const auto& m = pm.model();
    const auto& sig = pm.signature();
    std::ostringstream out;
    out << "digraph model {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (int w = 0; w < m.world_count(); ++w) {
        out << "  " << dot_quote(m.id(w)) << " [label=\"" << dot_escape(m.id(w)) << "\\n" << dot_escape(sig.format(m.valuation(w))) << "\"";
        if (w == pm.designated()) out << ", shape=doublecircle";
        out << "];\n";
    }
    // One edge per world pair, labelled with every agent that has it.
    for (int u = 0; u < m.world_count(); ++u) {
        for (int v = 0; v < m.world_count(); ++v) {
            std::string label;
            for (AgentId a = 0; a < sig.agent_count(); ++a) {
                if (!m.related(a, u, v)) continue;
                if (!label.empty()) label += ",";
                label += sig.agent_name(a);
            }
            if (!label.empty()) out << "  " << dot_quote(m.id(u)) << " -> " << dot_quote(m.id(v)) << " [label=" << dot_quote(label) << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

namespace {

SuiteConfig suite_config_from_json(const json& doc) {
    only_keys(doc, {"operator", "rules", "tier", "agents", "props", "max_worlds", "seed", "samples", "postulates",
                    "consistent_only", "formula_space", "max_witnesses", "output"},
              "suite config");
    auto agents = string_list(need(doc, "agents", "suite config"), "agents");
    auto props = string_list(need(doc, "props", "suite config"), "props");
    if (agents.empty() || agents.size() > 4) throw Error("suite configs support 1 to 4 agents");
    if (props.empty() || props.size() > 4) throw Error("suite configs support 1 to 4 propositions");
    SuiteConfig cfg{SuiteSpec{RevisionOperator{}, {}, Signature(std::move(agents), std::move(props))}, {}};
    auto& spec = cfg.spec;
    const auto& op = need(doc, "operator", "suite config");
    if (!op.is_string()) throw ParseError("operator must be a string", 0);
    spec.op.tag = parse_operator_tag(op.get<std::string>());

    if (doc.contains("rules")) {
        if (spec.op.tag == RevisionOperator::Tag::FM) throw Error("rules are only meaningful for ev and rb");
        spec.op.rules = rules_from_lines(string_list(doc["rules"], "rules"), spec.signature);
    }

    std::string tier = doc.value("tier", std::string("exhaustive"));
    if (tier == "exhaustive") spec.tier = SuiteSpec::Tier::Exhaustive;
    else if (tier == "sampled") spec.tier = SuiteSpec::Tier::Sampled;
    else throw Error("tier must be 'exhaustive' or 'sampled'");

    spec.max_worlds = doc.value("max_worlds", 2);
    int limit = spec.tier == SuiteSpec::Tier::Exhaustive ? 3 : 8;
    if (spec.max_worlds < 1 || spec.max_worlds > limit)
        throw Error("max_worlds must be between 1 and " + std::to_string(limit) + " for this tier");
    if (spec.tier == SuiteSpec::Tier::Sampled) {
        if (!doc.contains("seed")) throw Error("the sampled tier needs a seed");
        spec.seed = doc["seed"].get<std::uint64_t>();
        spec.samples = doc.value("samples", std::size_t{10000});
        if (spec.samples == 0) throw Error("samples must be positive");
    } else if (doc.contains("seed") || doc.contains("samples")) {
        throw Error("seed and samples only apply to the sampled tier");
    }

    if (doc.contains("postulates")) spec.postulates = postulate_list(doc["postulates"]);
    else spec.postulates.assign(all_postulates().begin(), all_postulates().end());
    if (spec.postulates.empty()) throw Error("no postulates selected");

    spec.consistent_only = doc.value("consistent_only", false);
    spec.formula_space = doc.value("formula_space", std::string("auto"));
    spec.max_witnesses = doc.value("max_witnesses", std::size_t{3});
    cfg.output = doc.value("output", std::string());
    formula_space_for(spec);  // rejects unknown spaces early
    return cfg;
}

}  // namespace

SuiteConfig parse_suite_config(std::string_view text) {
    json doc = parse_json(text);
    try {
        return suite_config_from_json(doc);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad suite config value: ") + e.what(), 0);
    }
}

SuiteConfig load_suite_config(const std::filesystem::path& path) { return parse_suite_config(read_file(path)); }

std::string serialize_reports(const std::vector<PostulateReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        ordered_json j;
        j["operator"] = to_string(r.op.tag);
        j["postulate"] = std::string(to_string(r.postulate));
        j["tier"] = r.tier;
        j["formula_space"] = r.formula_space;
        j["claim"] = std::string(to_string(r.claim.expectation));
        if (!r.claim.condition.empty()) j["condition"] = r.claim.condition;
        j["instances"] = r.instances;
        j["premise_held"] = r.premise_held;
        j["violations"] = r.violations;
        j["violations_under_condition"] = r.violations_under_condition;
        j["violations_outside_condition"] = r.violations_outside_condition;
        j["verdict"] = r.verdict();
        j["status"] = r.status();
        if (!r.note.empty()) j["note"] = r.note;
        j["witnesses"] = ordered_json::array();
        for (const auto& w : r.witnesses) {
            const auto& sig = w.instance.pm.signature();
            ordered_json wj;
            wj["model"] = model_json(w.instance.pm);
            wj["rules"] = rule_lines(w.instance.ruleset, sig);
            wj["first"] = to_string(w.instance.first.as_formula(), sig);
            if (w.instance.second) wj["second"] = to_string(w.instance.second->as_formula(), sig);
            wj["under_condition"] = w.under_condition;
            if (!w.detail.empty()) wj["detail"] = w.detail;
            j["witnesses"].push_back(std::move(wj));
        }
        out += j.dump() + "\n";
    }
    return out;
}

namespace {

FirstDegreeBelief belief_from_text(const std::string& text, const Signature& sig) {
    Formula f = parse_formula(text, sig);
    if (f.kind() != Formula::Kind::Belief || !f.lhs().is_propositional())
        throw ParseError("witness belief '" + text + "' is not first-degree", 0);
    return FirstDegreeBelief(f.index(), f.lhs());
}

PostulateReport report_from_json(const json& j) {
    only_keys(j, {"operator", "postulate", "tier", "formula_space", "claim", "condition", "instances", "premise_held",
                  "violations", "violations_under_condition", "violations_outside_condition", "verdict", "status",
                  "note", "witnesses"},
              "report");
    PostulateReport r;
    r.op.tag = parse_operator_tag(need(j, "operator", "report").get<std::string>());
    r.postulate = parse_postulate_id(need(j, "postulate", "report").get<std::string>());
    r.tier = j.value("tier", std::string());
    r.formula_space = j.value("formula_space", std::string());
    r.claim.expectation = parse_expectation(need(j, "claim", "report").get<std::string>());
    r.claim.condition = j.value("condition", std::string());
    r.instances = j.value("instances", std::uint64_t{0});
    r.premise_held = j.value("premise_held", std::uint64_t{0});
    r.violations = j.value("violations", std::uint64_t{0});
    r.violations_under_condition = j.value("violations_under_condition", std::uint64_t{0});
    r.violations_outside_condition = j.value("violations_outside_condition", std::uint64_t{0});
    r.note = j.value("note", std::string());
    bool first_witness = true;
    for (const auto& wj : j.value("witnesses", json::array())) {
        only_keys(wj, {"model", "rules", "first", "second", "under_condition", "detail"}, "witness");
        PointedModel pm = model_from_json(need(wj, "model", "witness"));
        const auto& sig = pm.signature();
        RuleSet rules = rules_from_lines(wj.contains("rules") ? string_list(wj["rules"], "rules") : std::vector<std::string>{}, sig);
        auto first = belief_from_text(need(wj, "first", "witness").get<std::string>(), sig);
        std::optional<FirstDegreeBelief> second;
        if (wj.contains("second")) second = belief_from_text(wj["second"].get<std::string>(), sig);
        if (first_witness) r.op.rules = rules;
        first_witness = false;
        r.witnesses.push_back({RevisionInstance{std::move(pm), first, second, std::move(rules)},
                               wj.value("under_condition", true), wj.value("detail", std::string())});
    }
    return r;
}

}  // namespace

std::vector<PostulateReport> parse_reports(std::string_view text) {
    std::vector<PostulateReport> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        start = end + 1;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            out.push_back(report_from_json(parse_json(line)));
        } catch (const json::exception& e) {
            throw ParseError(std::string("malformed report record: ") + e.what(), 0);
        }
    }
    return out;
}

std::string format_report_table(const std::vector<PostulateReport>& reports) {
    std::ostringstream out;
    out << std::left << std::setw(4) << "op" << std::setw(16) << "postulate" << std::setw(22) << "verdict"
        << std::setw(24) << "status" << std::right << std::setw(10) << "instances" << std::setw(10) << "premise"
        << std::setw(11) << "violations" << std::setw(8) << "under" << std::setw(9) << "outside" << "\n";
    for (const auto& r : reports) {
        std::string claim(to_string(r.claim.expectation));
        if (!r.claim.condition.empty()) claim += "(" + r.claim.condition + ")";
        out << std::left << std::setw(4) << to_string(r.op.tag) << std::setw(16) << to_string(r.postulate)
            << std::setw(22) << r.verdict() << std::setw(24) << r.status() << std::right << std::setw(10)
            << r.instances << std::setw(10) << r.premise_held << std::setw(11) << r.violations << std::setw(8)
            << r.violations_under_condition << std::setw(9) << r.violations_outside_condition << "  " << claim;
        if (!r.note.empty()) out << "  [" << r.note << "]";
        out << "\n";
    }
    if (!reports.empty()) out << "tier: " << reports.front().tier << "\n";
    return out.str();
}

}  // namespace mbr

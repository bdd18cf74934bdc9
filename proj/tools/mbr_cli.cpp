// mbr: batch front end for models, revisions and postulate suites.
// Exit codes: 0 success or true, 1 false or violated claim, 2 error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mbr/error.hpp"
#include "mbr/io.hpp"
#include "mbr/model_ops.hpp"
#include "mbr/postulates.hpp"
#include "mbr/revision.hpp"

namespace {

using namespace mbr;

struct Globals {
    bool gc = false;
    std::string format = "table";
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") std::cout << text;
    else write_file(out_path, text);
}

PointedModel finish(PointedModel pm, const Globals& g) { return g.gc ? garbage_collect(pm) : pm; }

int verdict(bool value, const char* yes, const char* no) {
    std::cout << (value ? yes : no) << "\n";
    return value ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-agent belief revision over pointed Kripke models"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--gc", g.gc, "drop worlds unreachable from the designated world in written models");
    app.add_option("--format", g.format, "suite output on stdout")->check(CLI::IsMember({"table", "records"}));

    std::string model, model2, formula, agent, out, rules_path, op_name = "fm", mode = "equal", config, report;
    std::string postulate;
    std::size_t index = 0;
    bool show_relation = false;

    auto* check = app.add_subcommand("check", "evaluate a formula at the designated world");
    check->add_option("model", model)->required();
    check->add_option("formula", formula)->required();

    auto* revise = app.add_subcommand("revise", "revise the model by B[agent] formula");
    revise->add_option("--op", op_name, "fm, ev or rb")->check(CLI::IsMember({"fm", "ev", "rb"}));
    revise->add_option("--rules", rules_path, "rule file for ev and rb");
    revise->add_option("model", model)->required();
    revise->add_option("agent", agent)->required();
    revise->add_option("formula", formula)->required();
    revise->add_option("-o,--output", out, "output model path (stdout by default)");

    auto* expand_cmd = app.add_subcommand("expand", "expand the model by B[agent] formula");
    expand_cmd->add_option("model", model)->required();
    expand_cmd->add_option("agent", agent)->required();
    expand_cmd->add_option("formula", formula)->required();
    expand_cmd->add_option("-o,--output", out, "output model path (stdout by default)");

    auto* compare = app.add_subcommand("compare", "compare two pointed models");
    compare->add_option("--mode", mode, "subset, equal or bisim")->check(CLI::IsMember({"subset", "equal", "bisim"}));
    compare->add_flag("--relation", show_relation, "print the bisimulation when one exists");
    compare->add_option("first", model)->required();
    compare->add_option("second", model2)->required();

    auto* suite = app.add_subcommand("suite", "run a postulate suite from a config file");
    suite->add_option("config", config)->required();
    suite->add_option("-o,--output", out, "report path, overrides the config's output");

    auto* render = app.add_subcommand("render", "write a Graphviz description of the model");
    render->add_option("model", model)->required();
    render->add_option("-o,--output", out, "output path (stdout by default)");

    auto* replay = app.add_subcommand("replay", "re-run a stored counterexample with a full trace");
    replay->add_option("report", report)->required();
    replay->add_option("--postulate", postulate, "postulate id of the report record")->required();
    replay->add_option("--index", index, "witness index within the record");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check) {
            PointedModel pm = load_model(model);
            return verdict(satisfies(pm, parse_formula(formula, pm.signature())), "true", "false");
        }
        if (*revise || *expand_cmd) {
            PointedModel pm = load_model(model);
            const auto& sig = pm.signature();
            Formula phi = parse_formula(formula, sig);
            AgentId a = sig.agent(agent);
            PointedModel result = pm;
            if (*expand_cmd) {
                result = expand(pm, a, phi);
            } else {
                RevisionOperator op{parse_operator_tag(op_name), {}};
                if (!rules_path.empty()) {
                    if (op.tag == RevisionOperator::Tag::FM) throw Error("--rules only applies to ev and rb");
                    op.rules = load_rules(rules_path, sig);
                }
                result = op.apply(pm, a, phi);
            }
            emit(serialize_model(finish(std::move(result), g)), out);
            return 0;
        }
        if (*compare) {
            PointedModel k1 = load_model(model), k2 = load_model(model2);
            require_same_signature(k1.signature(), k2.signature());
            if (mode == "subset") return verdict(belief_subset(k1, k2), "subset", "not subset");
            if (mode == "equal") return verdict(belief_equal(k1, k2), "equal", "not equal");
            auto bisim = bisimilar(k1, k2);
            if (bisim && show_relation)
                for (auto [u, v] : bisim->pairs) std::cout << k1.model().id(u) << " ~ " << k2.model().id(v) << "\n";
            return verdict(bisim.has_value(), "bisimilar", "not bisimilar");
        }
        if (*suite) {
            SuiteConfig cfg = load_suite_config(config);
            if (!out.empty()) cfg.output = out;
            auto reports = run_suite(cfg.spec);
            std::string records = serialize_reports(reports);
            if (!cfg.output.empty()) write_file(cfg.output, records);
            std::cout << (g.format == "records" ? records : format_report_table(reports));
            for (const auto& r : reports)
                if (r.claim_violated()) return 1;
            return 0;
        }
        if (*render) {
            emit(render_dot(finish(load_model(model), g)), out);
            return 0;
        }
        if (*replay) {
            PostulateId id = parse_postulate_id(postulate);
            for (const auto& r : parse_reports(read_file(report))) {
                if (r.postulate != id) continue;
                std::cout << replay_witness(r, index);
                return 0;
            }
            throw Error("report has no record for " + postulate);
        }
    } catch (const StarUpdateError& e) {
        std::cerr << "error: valuation update failed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

// Python module mbr._core: models as JSON text, formulas as strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mbr/error.hpp"
#include "mbr/io.hpp"
#include "mbr/model_ops.hpp"
#include "mbr/postulates.hpp"
#include "mbr/revision.hpp"

namespace py = pybind11;
using namespace mbr;

namespace {

RevisionOperator make_operator(const std::string& op, const std::string& rules, const Signature& sig) {
    RevisionOperator out{parse_operator_tag(op), {}};
    if (!rules.empty()) {
        if (out.tag == RevisionOperator::Tag::FM) throw Error("rules only apply to ev and rb");
        out.rules = parse_rules(rules, sig);
    }
    return out;
}

py::dict profile_dict(const PointedModel& pm) {
    const auto& sig = pm.signature();
    auto profile = first_degree_profile(pm);
    py::dict out;
    for (AgentId a = 0; a < sig.agent_count(); ++a) {
        py::list worlds;
        for (Valuation v : profile.of(a)) worlds.append(sig.true_props(v));
        out[py::str(sig.agent_name(a))] = worlds;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    // translators run newest first, so the base class goes in first
    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<SignatureError>(m, "SignatureError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<StarUpdateError>(m, "StarUpdateError", base.ptr());

    py::class_<PointedModel>(m, "Model")
        .def_static("parse", [](const std::string& text) { return parse_model(text); })
        .def_static("load", [](const std::string& path) { return load_model(path); })
        .def_static("minimal", [](const std::vector<std::string>& agents, const std::vector<std::string>& props,
                                  const std::vector<std::string>& true_props) {
            Signature sig(agents, props);
            return minimal_model(sig, sig.valuation_of(true_props));
        }, py::arg("agents"), py::arg("props"), py::arg("true_props"))
        .def("to_json", [](const PointedModel& pm) { return serialize_model(pm); })
        .def("to_dot", [](const PointedModel& pm) { return render_dot(pm); })
        .def("save", [](const PointedModel& pm, const std::string& path) { save_model(path, pm); })
        .def("satisfies", [](const PointedModel& pm, const std::string& f) {
            return satisfies(pm, parse_formula(f, pm.signature()));
        })
        .def("expand", [](const PointedModel& pm, const std::string& agent, const std::string& f) {
            return expand(pm, pm.signature().agent(agent), parse_formula(f, pm.signature()));
        })
        .def("revise", [](const PointedModel& pm, const std::string& agent, const std::string& f, const std::string& op,
                          const std::string& rules) {
            return make_operator(op, rules, pm.signature())
                .apply(pm, pm.signature().agent(agent), parse_formula(f, pm.signature()));
        }, py::arg("agent"), py::arg("formula"), py::arg("op") = "fm", py::arg("rules") = "")
        .def("garbage_collect", [](const PointedModel& pm) { return garbage_collect(pm); })
        .def("profile", &profile_dict)
        .def("belief_subset", [](const PointedModel& x, const PointedModel& y) { return belief_subset(x, y); })
        .def("belief_equal", [](const PointedModel& x, const PointedModel& y) { return belief_equal(x, y); })
        .def("bisimilar", [](const PointedModel& x, const PointedModel& y) { return bisimilar(x, y).has_value(); })
        .def_property_readonly("world_count", [](const PointedModel& pm) { return pm.model().world_count(); })
        .def_property_readonly("designated", [](const PointedModel& pm) { return pm.designated_id(); })
        .def("__eq__", [](const PointedModel& x, const PointedModel& y) { return x == y; })
        .def("__repr__", [](const PointedModel& pm) { return describe(pm); });

    m.def("run_suite", [](const std::string& config_json) {
        return serialize_reports(run_suite(parse_suite_config(config_json).spec));
    }, "Run a suite given the JSON text of a config; returns JSON lines.");
    m.def("report_table", [](const std::string& records) { return format_report_table(parse_reports(records)); });
    m.def("replay", [](const std::string& records, const std::string& postulate, std::size_t index) {
        PostulateId id = parse_postulate_id(postulate);
        for (const auto& r : parse_reports(records))
            if (r.postulate == id) return replay_witness(r, index);
        throw Error("report has no record for " + postulate);
    }, py::arg("records"), py::arg("postulate"), py::arg("index") = 0);
}

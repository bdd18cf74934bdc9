#include <gtest/gtest.h>

#include <filesystem>

#include "mbr/error.hpp"
#include "mbr/io.hpp"
#include "mbr/postulates.hpp"
#include "support.hpp"

using namespace mbr;

namespace {

std::string two_world(const std::string& extra = "") {
    return R"({"signature": {"agents": ["a"], "props": ["p"]},
  "worlds": [{"id": "s", "true_props": ["p"]}, {"id": "t", "true_props": []}],
  "relations": {"a": [["s", "t"]]},
  "designated": "s")" + extra + "}";
}

}  // namespace

TEST(ModelFiles, FixturesRoundTrip) {
    for (const char* name : {"ignorant_a.model", "ignorant_a_extra.model", "common_p.model", "minimal.model"}) {
        auto pm = fixtures::load(name);
        auto text = serialize_model(pm);
        EXPECT_EQ(parse_model(text), pm) << name;
        EXPECT_EQ(serialize_model(parse_model(text)), text);
    }
}

TEST(ModelFiles, SampledModelsRoundTrip) {
    Signature sig({"a", "b", "c"}, {"p", "q", "r"});
    for (const auto& pm : sample_models(sig, 4, 3, 300)) ASSERT_EQ(parse_model(serialize_model(pm)), pm);
    auto path = std::filesystem::temp_directory_path() / "mbr_io_roundtrip.model";
    auto pm = sample_models(sig, 3, 9, 1).front();
    save_model(path, pm);
    EXPECT_EQ(load_model(path), pm);
    std::filesystem::remove(path);
}

TEST(ModelFiles, RejectsMalformedDocuments) {
    EXPECT_NO_THROW(parse_model(two_world()));
    EXPECT_THROW(parse_model(two_world(R"(, "colour": 1)")), ParseError);
    EXPECT_THROW(parse_model("{"), ParseError);
    EXPECT_THROW(parse_model("[]"), ParseError);
    auto bad_prop = two_world();
    bad_prop.replace(bad_prop.find("[\"p\"]}, {"), 5, "[\"z\"]");
    EXPECT_THROW(parse_model(bad_prop), Error);
    auto bad_edge = two_world();
    bad_edge.replace(bad_edge.find("[\"s\", \"t\"]"), 10, "[\"s\", \"x\"]");
    EXPECT_THROW(parse_model(bad_edge), Error);
    auto bad_designated = two_world();
    bad_designated.replace(bad_designated.find("\"designated\": \"s\""), 17, "\"designated\": \"q\"");
    EXPECT_THROW(parse_model(bad_designated), Error);
    EXPECT_THROW(load_model("/nonexistent/file.model"), Error);
}

TEST(RuleFiles, Load) {
    Signature sig({"a"}, {"p", "q"});
    auto path = std::filesystem::temp_directory_path() / "mbr_io_rules.txt";
    write_file(path, "p -> q\n# note\n~q -> ~p\n");
    auto rules = load_rules(path, sig);
    EXPECT_EQ(rules, parse_rules("p -> q\n~q -> ~p", sig));
    std::filesystem::remove(path);
}

TEST(Dot, TwoWorldExample) {
    auto dot = render_dot(fixtures::load("ignorant_a.model"));
    EXPECT_EQ(dot.rfind("digraph model {", 0), 0u);
    EXPECT_NE(dot.find("\"s\" [label=\"s\\n{p}\", shape=doublecircle];"), std::string::npos);
    EXPECT_NE(dot.find("\"t\" [label=\"t\\n{}\"];"), std::string::npos);
    EXPECT_NE(dot.find("\"s\" -> \"t\" [label=\"a,b\"];"), std::string::npos);
    EXPECT_NE(dot.find("\"s\" -> \"s\" [label=\"a\"];"), std::string::npos);
    EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n'), 10);
    EXPECT_EQ(dot, render_dot(fixtures::load("ignorant_a.model")));
}

TEST(SuiteConfigs, ShippedConfigsParse) {
    std::filesystem::path dir = std::filesystem::path(MBR_FIXTURE_DIR).parent_path().parent_path() / "configs";
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        auto cfg = load_suite_config(entry.path());
        EXPECT_FALSE(cfg.output.empty()) << entry.path();
        EXPECT_FALSE(cfg.spec.postulates.empty());
        ++count;
    }
    EXPECT_GE(count, 8);
    auto cfg = load_suite_config(dir / "ev_agm_rules.cfg");
    EXPECT_EQ(cfg.spec.op.tag, RevisionOperator::Tag::EV);
    EXPECT_EQ(cfg.spec.op.rules.rules().size(), 2u);
    EXPECT_TRUE(cfg.spec.consistent_only);
    EXPECT_EQ(cfg.spec.postulates.size(), agm_postulates().size());
    auto sampled = load_suite_config(dir / "fm_agm_sampled.cfg");
    EXPECT_EQ(sampled.spec.tier, SuiteSpec::Tier::Sampled);
    EXPECT_EQ(sampled.spec.samples, 10000u);
}

TEST(SuiteConfigs, Validation) {
    auto base = [](const std::string& extra) {
        return R"({"operator": "fm", "agents": ["a", "b"], "props": ["p"], "tier": "exhaustive", "max_worlds": 2,
                   "postulates": ["agm"])" + extra + "}";
    };
    EXPECT_NO_THROW(parse_suite_config(base("")));
    auto ids = parse_suite_config(base("").replace(base("").find("[\"agm\"]"), 7, "[\"DP1\", \"IN\"]"));
    EXPECT_EQ(ids.spec.postulates, (std::vector<PostulateId>{PostulateId::DP1, PostulateId::IN}));
    EXPECT_THROW(parse_suite_config(base(R"(, "workers": 4)")), ParseError);
    EXPECT_THROW(parse_suite_config(base(R"(, "seed": 4)")), Error);
    EXPECT_THROW(parse_suite_config(base(R"(, "rules": ["p -> q"])")), Error);
    EXPECT_THROW(parse_suite_config(base(R"(, "formula_space": "everything")")), Error);
    auto too_big = base("");
    too_big.replace(too_big.find("\"max_worlds\": 2"), 15, "\"max_worlds\": 5");
    EXPECT_THROW(parse_suite_config(too_big), Error);
    auto sampled = base("");
    sampled.replace(sampled.find("\"exhaustive\""), 12, "\"sampled\"");
    EXPECT_THROW(parse_suite_config(sampled), Error);  // no seed
    auto ok = parse_suite_config(sampled.substr(0, sampled.size() - 1) + R"(, "seed": 1})");
    EXPECT_EQ(ok.spec.samples, 10000u);
    EXPECT_THROW(parse_suite_config("{\"operator\": \"fm\"}"), Error);
}

TEST(Reports, RoundTrip) {
    SuiteSpec spec{RevisionOperator{}, {iterated_postulates().begin(), iterated_postulates().end()},
                   Signature({"a", "b"}, {"p"})};
    auto reports = run_suite(spec);
    auto text = serialize_reports(reports);
    auto back = parse_reports(text);
    ASSERT_EQ(back.size(), reports.size());
    EXPECT_EQ(serialize_reports(back), text);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        EXPECT_EQ(back[i].postulate, reports[i].postulate);
        EXPECT_EQ(back[i].violations, reports[i].violations);
        EXPECT_EQ(back[i].witnesses.size(), reports[i].witnesses.size());
        if (!back[i].witnesses.empty()) EXPECT_EQ(replay_witness(back[i], 0), replay_witness(reports[i], 0));
    }
    auto table = format_report_table(reports);
    EXPECT_NE(table.find("DP2"), std::string::npos);
    EXPECT_NE(table.find("tier: "), std::string::npos);
    EXPECT_THROW(parse_reports("{\"operator\": \"fm\"}\n"), Error);
}

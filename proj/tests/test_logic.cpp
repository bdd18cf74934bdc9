#include <gtest/gtest.h>

#include <random>

#include "mbr/error.hpp"
#include "mbr/formula.hpp"
#include "mbr/kripke.hpp"
#include "mbr/postulates.hpp"
#include "support.hpp"

using namespace mbr;

namespace {

Signature ab_p() { return Signature({"a", "b"}, {"p"}); }
Signature ab_pq() { return Signature({"a", "b"}, {"p", "q"}); }

Formula F(const char* text, const Signature& sig) { return parse_formula(text, sig); }

}  // namespace

TEST(Signature, RejectsDuplicatesAndUnknownNames) {
    EXPECT_THROW(Signature({"a", "a"}, {"p"}), SignatureError);
    EXPECT_THROW(Signature({"a"}, {"p", "p"}), SignatureError);
    auto sig = ab_pq();
    EXPECT_EQ(sig.agent("b"), 1);
    EXPECT_THROW(sig.prop("r"), SignatureError);
    EXPECT_EQ(sig.format(Valuation(3)), "{p,q}");
    EXPECT_EQ(sig.format(Valuation(0)), "{}");
    EXPECT_EQ(sig.all_valuations().size(), 4u);
}

TEST(Parser, RoundTripsCanonicalText) {
    auto sig = ab_pq();
    for (const char* text : {"true", "false", "p", "~q", "(p & q)", "(p | ~q)", "(p -> q)", "(p <-> q)", "B[a] p",
                             "B[b] (p & B[a] ~q)", "~B[a] false"}) {
        Formula f = F(text, sig);
        EXPECT_EQ(F(to_string(f, sig).c_str(), sig), f) << text;
    }
    EXPECT_EQ(to_string(F("B[a]B[b]~p", sig), sig), "B[a] B[b] ~p");
}

TEST(Parser, AcceptsOneBareTopLevelOperator) {
    auto sig = ab_pq();
    EXPECT_EQ(F("p & ~p", sig), F("(p & ~p)", sig));
    EXPECT_EQ(F("B[a]p -> B[b]q", sig), F("(B[a]p -> B[b]q)", sig));
    EXPECT_THROW(F("p & q & p", sig), ParseError);
}

TEST(Parser, ReportsErrors) {
    auto sig = ab_pq();
    EXPECT_THROW(F("", sig), ParseError);
    EXPECT_THROW(F("(p & q", sig), ParseError);
    EXPECT_THROW(F("B[a p", sig), ParseError);
    EXPECT_THROW(F("p q", sig), ParseError);
    EXPECT_THROW(F("r", sig), SignatureError);
    EXPECT_THROW(F("B[c] p", sig), SignatureError);
}

TEST(PropLogic, TrivialCases) {
    auto sig = ab_pq();
    EXPECT_TRUE(eval_prop(Valuation(1), F("p", sig)));
    EXPECT_TRUE(eval_prop(Valuation(0), F("p | ~p", sig)));
    EXPECT_FALSE(eval_prop(Valuation(1), F("p & ~p", sig)));
    EXPECT_TRUE(prop_entails(F("p & q", sig), F("p", sig), sig));
    EXPECT_FALSE(prop_entails(F("p", sig), F("p & q", sig), sig));
    EXPECT_TRUE(prop_entails(Formula::bottom(), F("q", sig), sig));
    EXPECT_THROW(eval_prop(Valuation(0), F("B[a] p", sig)), DomainError);
}

TEST(PropLogic, EntailmentAgreesWithTruthTables) {
    auto sig = ab_pq();
    // Every pair of truth-function representatives, then random depth-4 pairs.
    auto reps = oracle::formulas_by_table(2, 2);
    ASSERT_EQ(reps.size(), 16u);
    for (const auto& f : reps) {
        for (const auto& g : reps) {
            auto tf = oracle::table(f, 2), tg = oracle::table(g, 2);
            ASSERT_EQ(prop_entails(f, g, sig), (tf & ~tg) == 0);
            ASSERT_EQ(prop_equivalent(f, g, sig), tf == tg);
        }
    }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20000; ++i) {
        Formula f = oracle::random_formula(rng, 2, 4), g = oracle::random_formula(rng, 2, 4);
        auto tf = oracle::table(f, 2), tg = oracle::table(g, 2);
        ASSERT_EQ(prop_entails(f, g, sig), (tf & ~tg) == 0) << to_string(f, sig) << " |= " << to_string(g, sig);
        ASSERT_EQ(prop_satisfiable(f, sig), tf != 0);
        ASSERT_EQ(prop_tautology(f, sig), tf == 0xF);
    }
}

TEST(Kripke, BuilderSortsAndDeduplicatesEdges) {
    auto sig = ab_p();
    KripkeModel::Builder b(sig);
    b.add_world("s", Valuation(1));
    b.add_world("t", Valuation(0));
    b.add_edge(0, "t", "s");
    b.add_edge(0, 1, 0);
    b.add_edge(0, 1, 1);
    b.add_edge(1, 0, 1);
    auto m = std::move(b).build();
    ASSERT_EQ(m.successors(0, 1).size(), 2u);
    EXPECT_EQ(m.successors(0, 1)[0], 0);
    EXPECT_EQ(m.edge_count(0), 2u);
    EXPECT_TRUE(m.related(1, 0, 1));
    EXPECT_FALSE(m.related(1, 1, 0));
    EXPECT_EQ(m.index_of("t"), 1);
    EXPECT_FALSE(m.find("u"));
}

TEST(Kripke, BuilderRejectsBadInput) {
    auto sig = ab_p();
    {
        KripkeModel::Builder b(sig);
        b.add_world("s", Valuation(0));
        b.add_world("s", Valuation(1));
        EXPECT_THROW(std::move(b).build(), Error);
    }
    KripkeModel::Builder b(sig);
    b.add_world("s", Valuation(0));
    EXPECT_THROW(b.add_world("t", Valuation(2)), SignatureError);
    EXPECT_THROW(b.add_edge(0, 0, 3), Error);
    EXPECT_THROW(b.add_edge(2, 0, 0), SignatureError);
    EXPECT_THROW(b.add_edge(0, "s", "x"), Error);
    EXPECT_THROW(PointedModel(std::move(b).build(), 4), Error);
}

TEST(Semantics, IgnorancePairAssertions) {
    auto m1 = fixtures::load("ignorant_a.model");
    auto m2 = fixtures::load("ignorant_a_extra.model");
    const auto& sig = m1.signature();
    EXPECT_TRUE(satisfies(m1, F("B[b]~p", sig)));
    EXPECT_TRUE(satisfies(m1, F("~B[a]p & ~B[a]~p", sig)));
    EXPECT_TRUE(satisfies(m1, F("B[b](~B[a]p & ~B[a]~p)", sig)));
    EXPECT_TRUE(satisfies(m1, F("B[a]B[b]~p", sig)));
    EXPECT_FALSE(satisfies(m2, F("B[a]B[b]~p", sig)));
    EXPECT_TRUE(satisfies(m2, F("B[b]~p", sig)));
    EXPECT_TRUE(satisfies(m1, F("p", sig)));
    EXPECT_FALSE(believes_prop(m1, 0, F("p", sig)));
    EXPECT_FALSE(believes_prop(m1, 0, F("~p", sig)));
}

TEST(Semantics, CommonBelief) {
    auto pm = fixtures::load("common_p.model");
    const auto& sig = pm.signature();
    EXPECT_TRUE(believes_prop(pm, 0, F("p", sig)));
    EXPECT_TRUE(believes_prop(pm, 1, F("p", sig)));
    EXPECT_TRUE(satisfies(pm, F("B[a]B[b]B[a]p", sig)));
    EXPECT_TRUE(believes_prop(pm, 0, Formula::top()));
    EXPECT_THROW(believes_prop(pm, 0, F("B[a]p", sig)), DomainError);
}

TEST(Semantics, EmptyAccessibilityMakesBeliefVacuous) {
    auto sig = ab_p();
    KripkeModel::Builder b(sig);
    b.add_world("s", Valuation(1));
    b.add_edge(1, 0, 0);
    PointedModel pm(std::move(b).build(), 0);
    EXPECT_TRUE(inconsistent_beliefs(pm, 0));
    EXPECT_FALSE(inconsistent_beliefs(pm, 1));
    for (const char* text : {"B[a] false", "B[a] p", "B[a] ~p", "B[a] B[b] false"}) EXPECT_TRUE(satisfies(pm, F(text, sig)));
    EXPECT_FALSE(satisfies(pm, F("B[b] false", sig)));
}

TEST(Semantics, AgreesWithDefinitionOnEnumeratedModels) {
    // Library semantics vs the test-side definition, plus the belief/prop
    // specialisation and De Morgan on every small model.
    auto sig = ab_p();
    std::mt19937_64 rng(11);
    std::vector<Formula> probes;
    for (int i = 0; i < 40; ++i) {
        Formula f = oracle::random_formula(rng, 1, 2);
        probes.push_back(Formula::belief(static_cast<int>(rng() % 2), f));
        probes.push_back(Formula::belief(0, Formula::belief(1, f)));
    }
    for (const auto& pm : enumerate_models(sig, 2)) {
        for (const auto& f : probes) {
            ASSERT_EQ(satisfies(pm, f), oracle::holds(pm.model(), pm.designated(), f));
            if (f.lhs().is_propositional()) ASSERT_EQ(satisfies(pm, f), believes_prop(pm, f.index(), f.lhs()));
        }
        for (std::size_t i = 0; i + 1 < probes.size(); i += 2) {
            const auto& x = probes[i];
            const auto& y = probes[i + 1];
            ASSERT_EQ(satisfies(pm, Formula::negation(Formula::conjunction(x, y))),
                      satisfies(pm, Formula::disjunction(Formula::negation(x), Formula::negation(y))));
            ASSERT_EQ(satisfies(pm, Formula::negation(Formula::negation(x))), satisfies(pm, x));
        }
    }
}

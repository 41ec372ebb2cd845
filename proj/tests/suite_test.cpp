#include <gtest/gtest.h>

#include "k3b/reference_cases.hpp"
#include "k3b/serialize.hpp"

using namespace k3b;

namespace {

const NamedCheck* find_check(const ExampleVerdict& v, const std::string& name) {
    for (const auto& c : v.checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

}  // namespace

TEST(Serialize, IntegersAndRationals) {
    Integer big("-123456789012345678901234567890");
    EXPECT_EQ(to_json(big), Json("-123456789012345678901234567890"));
    EXPECT_EQ(integer_from_json(to_json(big)), big);
    EXPECT_EQ(integer_from_json(Json(-42)), -42);
    EXPECT_THROW(integer_from_json(Json("12x")), Error);
    EXPECT_THROW(integer_from_json(Json(1.5)), Error);
    EXPECT_EQ(rational_from_json(to_json(Rational(-6, 4))), Rational(-3, 2));
    EXPECT_THROW(rational_from_json(Json::array({"1", "0"})), Error);
}

TEST(Serialize, GramRoundTrip) {
    GramLattice g(IntMatrix{{16, 1}, {1, -2}});
    Json j = gram_to_json(g);
    EXPECT_EQ(j.dump(), R"([["16","1"],["1","-2"]])");
    EXPECT_EQ(gram_from_json(j), g);
    EXPECT_EQ(gram_from_string("[[16,1],[1,-2]]"), g);
    EXPECT_THROW(gram_from_string("[[1,2],[3]]"), Error);
    EXPECT_THROW(gram_from_string("[[1,2]"), Error);
    EXPECT_THROW(gram_from_string("[[1,2],[3,4],[5,6]]"), Error);
}

TEST(Serialize, DiscRoundTrip) {
    FiniteQuadForm f = disc_form(GramLattice(IntMatrix{{16, 1}, {1, -2}}));
    Json j = disc_to_json(f);
    EXPECT_EQ(j["orders"], Json::array({33}));
    FiniteQuadForm g = disc_from_json(j);
    EXPECT_EQ(g.cyclic_orders, f.cyclic_orders);
    EXPECT_EQ(g.q_matrix, f.q_matrix);
    EXPECT_EQ(disc_to_json(g), j);
    FiniteQuadForm u = disc_form(GramLattice(block_diagonal({IntMatrix{{0, 2}, {2, 0}}, IntMatrix{{2}}})));
    EXPECT_EQ(disc_to_json(disc_from_json(disc_to_json(u))), disc_to_json(u));
}

TEST(Serialize, PellAndCountsRoundTrip) {
    for (long D : {1L, 9L, 25L, 37L}) {
        PellResult r = pell_pm(Integer(D), Integer(8));
        Json j = pell_to_json(r);
        EXPECT_EQ(pell_to_json(pell_from_json(j)), j);
    }
    EXPECT_EQ(pell_to_json(pell_pm(Integer(1), Integer(8)))["sign"], "+");
    CountTable t = count_classes(3, 3);
    Json j = counts_to_json(t);
    EXPECT_EQ(j[0]["count"].type(), Json::value_t::string);
    EXPECT_EQ(counts_to_json(counts_from_json(j)), j);
}

TEST(Serialize, LabelsAndKappa) {
    ClassLabel l{LemmaCase::A_ii, true, ThetaTag::even_theta};
    EXPECT_EQ(label_from_json(label_to_json(l)), l);
    ClassLabel m{LemmaCase::B_iv, true, std::nullopt};
    EXPECT_EQ(label_from_json(label_to_json(m)), m);
    Json k = kappa_to_json(SurfaceParams{1, 2, 3, -1});
    EXPECT_EQ(gram_from_json(k["pic_S"]).gram(), (IntMatrix{{2, 3}, {3, -8}}));
    EXPECT_EQ(k["det_X"], "-25");
    EXPECT_EQ(k["det_S"], "-25");
    EXPECT_EQ(k["alpha_eq_vanishing"], true);
    EXPECT_EQ(k["theta"]["kind"], "even_theta");
    EXPECT_EQ(k["fiber_degree"], "524800");
    EXPECT_TRUE(kappa_to_json(SurfaceParams{2, 3, 1, -1})["theta"].is_null());
}

TEST(ReferenceCases, Verdicts) {
    const std::vector<std::pair<std::string, Conclusion>> expected = {
        {"X8_rnc3", Conclusion::not_isomorphic},
        {"X16_line", Conclusion::isomorphic},
        {"X18_line", Conclusion::isomorphic},
        {"X24_line", Conclusion::not_isomorphic},
        {"X36_line", Conclusion::isomorphic},
    };
    const std::vector<long> dets = {-25, -33, -37, -49, -73};
    ASSERT_EQ(case_ids().size(), 5u);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        ExampleVerdict v = run_case(expected[i].first);
        EXPECT_EQ(v.isomorphic_conclusion, expected[i].second) << v.case_id;
        EXPECT_EQ(v.det_X, dets[i]);
        EXPECT_EQ(v.det_S, dets[i]);
        EXPECT_TRUE(v.matches_expected()) << v.case_id;
        for (const auto& c : v.checks)
            EXPECT_TRUE(c.passed) << v.case_id << " " << c.name << " " << c.detail;
        if (v.isomorphic_conclusion == Conclusion::isomorphic) {
            EXPECT_TRUE(v.pic_isometric);
            EXPECT_EQ(v.glue_unique, true);
        }
    }
    EXPECT_THROW(run_case("X99"), Error);
}

TEST(ReferenceCases, SpecificFindings) {
    ExampleVerdict x8 = run_case("X8_rnc3");
    EXPECT_FALSE(x8.pic_isometric);
    EXPECT_FALSE(x8.minus_two_S);
    ASSERT_TRUE(x8.pell);
    EXPECT_FALSE(x8.pell->solvable);

    ExampleVerdict x16 = run_case("X16_line");
    ASSERT_NE(find_check(x16, "automorph_disc_action"), nullptr);
    EXPECT_TRUE(find_check(x16, "automorph_disc_action")->passed);

    ExampleVerdict x24 = run_case("X24_line");
    EXPECT_FALSE(x24.minus_two_S);
    ASSERT_TRUE(x24.minus_two_X);

    auto w = mn04_witnesses(SurfaceParams{1, 3, 1, -1});
    EXPECT_NE(std::find(w.begin(), w.end(), std::make_pair(Integer(1), Integer(3))), w.end());
    for (const auto& [x, y] : w) {
        EXPECT_EQ(18 * x * x + 2 * x * y - 2 * y * y, 6);
        EXPECT_EQ(mod_floor(18 * x + y, 3), 0);
    }
}

TEST(ReferenceCases, UndeterminedWhenGlueNotUnique) {
    // Conclusion law: isometric but glue not unique never reports isomorphic.
    for (const auto& id : case_ids()) {
        ExampleVerdict v = run_case(id);
        if (v.isomorphic_conclusion == Conclusion::isomorphic) {
            EXPECT_TRUE(v.pic_isometric && v.glue_unique.value_or(false));
        }
        if (v.pic_isometric && !v.glue_unique.value_or(false)) {
            EXPECT_EQ(v.isomorphic_conclusion, Conclusion::undetermined);
        }
    }
}

TEST(Report, StructureAndDeterminism) {
    SuiteReport r = run_suite();
    EXPECT_TRUE(r.all_match);
    Json j = report_to_json(r);
    EXPECT_EQ(j["schema"], "k3b-report/1");
    EXPECT_EQ(j["cases"].size(), 5u);
    EXPECT_GE(j["flagged_discrepancies"].size(), 2u);
    std::vector<std::string> ids;
    for (const auto& d : j["flagged_discrepancies"]) {
        ids.push_back(d["id"]);
        EXPECT_EQ(d["status"], "confirmed");
    }
    for (const char* id : {"pell_d9_witness", "b_odd_vs_p_divides_b", "b_i_minus_one"})
        EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
    EXPECT_EQ(j["bounds"]["mn04_search"], 50);
    EXPECT_EQ(report_to_json(run_suite()).dump(), j.dump());
    std::string table = report_table(r);
    EXPECT_NE(table.find("X36_line"), std::string::npos);
    EXPECT_NE(table.find("all expected verdicts match: yes"), std::string::npos);
}

/*
   Copyright 2026 The sphiso Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sphiso/experiments.hpp"

using namespace sphiso;
using nlohmann::json;

namespace {

json cap_json(double theta, int sign = 1)
{
    return {{"shape", "cap"}, {"pole_axis", 0}, {"pole_sign", sign}, {"theta", theta}};
}

}  // namespace

TEST(Wilson, FrozenValues)
{
    // statsmodels proportion_confint(method="wilson")
    auto a = wilson_interval(1990, 2000);
    EXPECT_NEAR(a.lower, 0.99082030405005805, 1e-14);
    EXPECT_NEAR(a.upper, 0.99728181914150138, 1e-14);
    auto b = wilson_interval(0, 10);
    EXPECT_EQ(b.lower, 0.0);
    EXPECT_NEAR(b.upper, 0.27753279986288926, 1e-14);
    auto c = wilson_interval(10, 10);
    EXPECT_NEAR(c.lower, 0.72246720013711063, 1e-14);
    EXPECT_NEAR(c.upper, 1.0, 1e-14);
    auto d = wilson_interval(57, 100);
    EXPECT_NEAR(d.lower, 0.47215389549212305, 1e-14);
    EXPECT_NEAR(d.upper, 0.66266701475889878, 1e-14);
}

TEST(Concentration, ExactValues)
{
    // On S^2 the band |height| <= sin(eps) carries probability sin(eps)
    auto const two = run_concentration({.m = 3, .eps = 0.1});
    EXPECT_NEAR(two.exact_value("probability"), std::sin(0.1), 1e-15);
    EXPECT_FALSE(two.all_passed());

    auto const big = run_concentration({.m = 1000, .eps = 0.1});
    EXPECT_NEAR(big.exact_value("probability"), 0.99843603500734677123, 1e-14);
    EXPECT_TRUE(big.check("exact_ge_1_minus_eps"));
    EXPECT_NEAR(run_concentration({.m = 128, .eps = 0.1}).exact_value("probability"),
                0.73969385218382066696, 1e-13);

    double prev = 0;
    for (int m = 2; m < 300; m += 13)
    {
        double const p = run_concentration({.m = m, .eps = 0.3}).exact_value("probability");
        EXPECT_GT(p, prev);
        prev = p;
    }
    EXPECT_NEAR(run_concentration({.m = 5, .eps = pi / 2 - 1e-12}).exact_value("probability"), 1.0,
                1e-11);
    EXPECT_THROW(run_concentration({.eps = 0.0}), DomainError);
    EXPECT_THROW(run_concentration({.eps = 2.0}), DomainError);
}

TEST(Concentration, SampledEstimateIsDeterministic)
{
    ConcentrationConfig cfg{.m = 40, .eps = 0.2, .samples = 20000, .seed = 5};
    auto const a = run_concentration(cfg);
    cfg.threads = 3;
    auto const b = run_concentration(cfg);
    EXPECT_TRUE(a.check("sample_matches_exact"));
    EXPECT_EQ(a.table.str(), b.table.str());
    auto const& est = a.estimate("probability");
    EXPECT_EQ(est.n, 20000u);
    EXPECT_NEAR(est.mean, a.exact_value("probability"), 4 * est.std_error + 1e-12);
}

TEST(Blowup, FrozenValuesAndShapes)
{
    auto const band = run_blowup(
        {.m = 128, .set = {{"shape", "band"}, {"theta1", 1.0}, {"theta2", 1.4}}, .eps = 0.1});
    EXPECT_NEAR(band.exact_value("neighborhood_probability"), 0.86984692615732307009, 1e-12);
    EXPECT_FALSE(band.check("neighborhood_ge_1_minus_eps"));

    auto const anti = run_blowup({.m = 128,
                                  .set = json::array({cap_json(0.6), cap_json(0.6, -1)}),
                                  .eps = 0.1});
    EXPECT_EQ(anti.exact_value("neighborhood_probability"), 1.0);
    EXPECT_TRUE(anti.all_passed());

    // A complement of a cap is measured as the antipodal cap
    auto const comp = run_blowup(
        {.m = 128, .set = {{"shape", "complement"}, {"of", cap_json(0.3)}}, .eps = 0.1});
    auto const cap = run_blowup({.m = 128, .set = cap_json(pi - 0.3, -1), .eps = 0.1});
    EXPECT_EQ(comp.table.str(), cap.table.str());

    auto const tiny = run_blowup({.m = 64, .set = cap_json(0.2), .eps = 0.1});
    EXPECT_NEAR(tiny.exact_value("radius"), pi / 2 - 0.2 + 0.1, 1e-12);
    EXPECT_THROW(run_blowup({.m = 8,
                             .set = {{"shape", "complement"},
                                     {"of", {{"shape", "band"}, {"theta1", 0.5}, {"theta2", 1.0}}}}}),
                 UnsupportedShapeError);
    EXPECT_THROW(run_blowup({.m = 8, .set = {{"shape", "blob"}}}), DescriptorError);
}

TEST(Theorem1, ComplementAndCapGiveIdenticalOutcomes)
{
    Theorem1Config cfg{.m = 24, .set = {{"shape", "complement"}, {"of", cap_json(pi - 1.2, -1)}},
                       .n_outer = 150, .n_inner = 400, .seed = 3};
    auto const a = run_theorem1(cfg);
    cfg.set = cap_json(1.2);
    auto const b = run_theorem1(cfg);
    EXPECT_NEAR(*a.theta, *b.theta, 1e-12);
    EXPECT_EQ(a.outcome("successes"), b.outcome("successes"));
    ASSERT_EQ(a.table.rows.size(), 150u);
    for (std::size_t i = 0; i < a.table.rows.size(); ++i)
    {
        double const ea = std::get<double>(a.table.rows[i][5]);
        double const eb = std::get<double>(b.table.rows[i][5]);
        ASSERT_NEAR(ea, eb, 1e-9 * std::max(ea, eb) + 1e-300);
    }
}

TEST(Theorem1, HitsAndConditionalAgree)
{
    Theorem1Config cfg{.m = 8, .set = cap_json(1.2), .omega = 0.9, .eps = 0.1,
                       .n_outer = 200, .n_inner = 3000, .estimator = InnerEstimator::hits, .seed = 2};
    auto const hits = run_theorem1(cfg);
    cfg.estimator = InnerEstimator::conditional;
    auto const cond = run_theorem1(cfg);
    auto const& h = hits.estimate("intersection_mean");
    auto const& c = cond.estimate("intersection_mean");
    EXPECT_NEAR(h.mean, c.mean, 4 * std::hypot(h.std_error, c.std_error));
    EXPECT_TRUE(hits.check("total_mass_identity"));
    EXPECT_TRUE(cond.check("total_mass_identity"));
    EXPECT_EQ(hits.notes.front().second, "hits");
    EXPECT_EQ(cond.notes.front().second, "conditional");
    // The conditional estimator has smaller per-Y error
    EXPECT_LT(c.std_error, h.std_error * 1.5);
}

TEST(Theorem1, DeterministicAcrossThreadCounts)
{
    Theorem1Config cfg{.m = 32, .set = {{"shape", "band"}, {"theta1", 0.8}, {"theta2", 1.3}},
                       .omega = 1.0, .eps = 0.2, .n_outer = 120, .n_inner = 300, .seed = 7,
                       .threads = 1};
    auto const a = run_theorem1(cfg);
    cfg.threads = 3;
    auto const b = run_theorem1(cfg);
    EXPECT_EQ(a.table.str(), b.table.str());
    cfg.seed = 8;
    EXPECT_NE(run_theorem1(cfg).table.str(), a.table.str());
    auto const side = a.sidecar(json{{"m", 32}});
    EXPECT_EQ(side["config"]["m"], 32);
    EXPECT_TRUE(side.contains("wall_seconds"));
}

TEST(Theorem1, Preconditions)
{
    EXPECT_THROW(run_theorem1({.m = 16, .set = cap_json(0.5), .omega = 0.5}),
                 TrivialIntersectionError);
    EXPECT_THROW(run_theorem1({.m = 16, .set = cap_json(1.2), .omega = 0.0}), DomainError);
    EXPECT_THROW(run_theorem1({.m = 16, .set = cap_json(1.2), .eps = 1.0}), DomainError);
    EXPECT_THROW(run_theorem1({.m = 16, .set = cap_json(1.2), .n_outer = 10}), DomainError);
    json tilted = json::array({cap_json(1.0), {{"shape", "cap"}, {"pole_axis", 1}, {"theta", 1.0}}});
    EXPECT_THROW(run_theorem1({.m = 16, .set = tilted, .n_outer = 100, .n_inner = 100,
                               .estimator = InnerEstimator::conditional}),
                 UnsupportedShapeError);
    EXPECT_EQ(parse_inner_estimator("hits"), InnerEstimator::hits);
    EXPECT_THROW(parse_inner_estimator("guess"), std::invalid_argument);
}

TEST(Riesz, RecordHasTrialsAndEqualityRows)
{
    auto const rec = run_riesz({.m = 5, .grid_n = 128, .trials = 12, .seed = 4});
    EXPECT_TRUE(rec.all_passed());
    EXPECT_EQ(rec.table.rows.size(), 15u);
    EXPECT_EQ(rec.outcome("violations"), 0.0);
    EXPECT_TRUE(rec.check("equality_constant_kernel"));
    EXPECT_TRUE(rec.check("equality_symmetric_decreasing"));
    EXPECT_TRUE(rec.check("equality_zero_function"));
    EXPECT_EQ(rec.table.str(), run_riesz({.m = 5, .grid_n = 128, .trials = 12, .seed = 4,
                                          .threads = 2})
                                   .table.str());
}

TEST(ProofChain, RecordForCapIncludesEquality)
{
    auto const rec = run_proof_chain({.m = 16, .set = cap_json(1.2), .omega = 1.0, .grid_n = 512});
    EXPECT_TRUE(rec.all_passed());
    EXPECT_TRUE(rec.check("cap_equality"));
    EXPECT_EQ(rec.table.rows.size(), 512u);
    auto const band = run_proof_chain(
        {.m = 16, .set = {{"shape", "band"}, {"theta1", 0.9}, {"theta2", 1.5}}, .grid_n = 512});
    EXPECT_TRUE(band.all_passed());
    EXPECT_THROW(band.check("cap_equality"), std::out_of_range);
}

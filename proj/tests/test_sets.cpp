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

#include "oracles.hpp"
#include "sphiso/random.hpp"
#include "sphiso/sampling.hpp"
#include "sphiso/sets.hpp"

using namespace sphiso;
using nlohmann::json;

namespace {

double frac(Sphere const& s, double t)
{
    return cap_fraction(s, t);
}

}  // namespace

TEST(ParseSet, Shapes)
{
    Sphere const s(5);
    auto const cap = parse_set(json{{"shape", "cap"}, {"pole_axis", 2}, {"theta", 1.0}}, s);
    ASSERT_TRUE(std::holds_alternative<CapShape>(cap.shape()));
    EXPECT_EQ(std::get<CapShape>(cap.shape()).cap.pole.axis_index(), 2);

    auto const band = parse_set(
        json{{"shape", "band"}, {"pole_axis", 1}, {"pole_sign", -1}, {"theta1", 0.5}, {"theta2", 1.1}},
        s);
    auto const& b = std::get<BandShape>(band.shape());
    EXPECT_EQ(b.pole[1], -1.0);
    EXPECT_EQ(b.theta1, 0.5);

    auto const bare = parse_set(json::parse(R"([{"theta":0.3},{"pole_sign":-1,"theta":0.4}])"), s);
    EXPECT_EQ(std::get<UnionShape>(bare.shape()).caps.size(), 2u);

    auto const comp = parse_set(
        json::parse(R"({"shape":"complement","of":{"shape":"cap","pole":[0,0,3,0,4],"theta":0.7}})"),
        s);
    auto const& inner = *std::get<ComplementShape>(comp.shape()).inner;
    EXPECT_NEAR(std::get<CapShape>(inner.shape()).cap.pole[4], 0.8, 1e-15);
}

TEST(ParseSet, RoundTripsThroughJson)
{
    Sphere const s(6);
    for (auto const* text :
         {R"({"shape":"cap","pole_axis":3,"pole_sign":-1,"theta":1.25})",
          R"({"shape":"band","pole_axis":0,"pole_sign":1,"theta1":0.25,"theta2":2.0})",
          R"({"shape":"union","caps":[{"shape":"cap","pole_axis":0,"pole_sign":1,"theta":0.5},{"shape":"cap","pole_axis":1,"pole_sign":1,"theta":0.75}]})",
          R"({"shape":"complement","of":{"shape":"cap","pole_axis":0,"pole_sign":1,"theta":0.5}})"})
    {
        auto const j = json::parse(text);
        auto const set = parse_set(j, s);
        EXPECT_EQ(to_json(set), j) << text;
        EXPECT_EQ(to_json(parse_set(to_json(set), s)), to_json(set));
    }
}

TEST(ParseSet, Errors)
{
    Sphere const s(4);
    for (auto const* text :
         {R"({"shape":"torus"})", R"({"theta":1})", R"(3)", R"({"shape":"cap"})",
          R"({"shape":"cap","theta":4})", R"({"shape":"cap","theta":1,"pole_axis":4})",
          R"({"shape":"cap","theta":1,"pole_sign":0})", R"({"shape":"cap","theta":1,"pole":[1,0]})",
          R"({"shape":"band","theta1":1.2,"theta2":0.4})", R"({"shape":"union","caps":[]})",
          R"({"shape":"union"})", R"({"shape":"union","caps":[{"shape":"band","theta1":0,"theta2":1}]})",
          R"({"shape":"complement"})", R"({"shape":"cap","theta":"wide"})"})
    {
        EXPECT_THROW(parse_set(json::parse(text), s), DescriptorError) << text;
    }
}

TEST(Contains, ClosedBoundariesAndComplements)
{
    Sphere const s(3);
    auto const e0 = SpherePoint::axis(s, 0);
    auto const e1 = SpherePoint::axis(s, 1);
    auto const hemi = SphereSet::cap(e0, pi / 2);
    EXPECT_TRUE(contains(hemi, e0));
    EXPECT_TRUE(contains(hemi, e1));
    EXPECT_FALSE(contains(hemi, e0.antipode()));
    EXPECT_FALSE(contains(SphereSet::complement(hemi), e1));
    EXPECT_TRUE(contains(SphereSet::complement(hemi), e0.antipode()));
    auto const band = SphereSet::band(e0, 1.0, 2.0);
    EXPECT_TRUE(contains(band, e1));
    EXPECT_FALSE(contains(band, e0));
    auto const u = SphereSet::union_of({CapSpec(e0, 0.1), CapSpec(e1, 0.1)});
    EXPECT_TRUE(contains(u, e1));
    EXPECT_FALSE(contains(u, SpherePoint::axis(s, 2)));
}

TEST(Measure, ExactShapes)
{
    Sphere const s(9, 1.7);
    auto const p = SpherePoint::axis(s, 0);
    double const area = log_sphere_area(s).value();

    auto const cap = measure(SphereSet::cap(p, 1.0));
    EXPECT_TRUE(cap.exact);
    EXPECT_NEAR(cap.probability(), frac(s, 1.0), 1e-15);
    EXPECT_NEAR(cap.measure.value(), area * frac(s, 1.0), 1e-12 * area);
    EXPECT_NEAR(std::exp(cap.log_q), 1 - frac(s, 1.0), 1e-15);

    auto const band = measure(SphereSet::band(p, 0.6, 2.0));
    EXPECT_NEAR(band.probability(), frac(s, 2.0) - frac(s, 0.6), 1e-14);
    EXPECT_NEAR(std::exp(log_band_fraction(s, 0.6, 2.0)), band.probability(), 1e-15);

    // Antipodal caps, overlapping caps on a common axis
    auto const anti = measure(SphereSet::union_of({CapSpec(p, 0.9), CapSpec(p.antipode(), 0.7)}));
    EXPECT_TRUE(anti.exact);
    EXPECT_NEAR(anti.probability(), frac(s, 0.9) + frac(s, 0.7), 1e-14);
    auto const nested = measure(SphereSet::union_of({CapSpec(p, 0.9), CapSpec(p, 1.3)}));
    EXPECT_NEAR(nested.probability(), frac(s, 1.3), 1e-15);
    auto const cover = measure(SphereSet::union_of({CapSpec(p, 2.0), CapSpec(p.antipode(), 1.5)}));
    EXPECT_EQ(cover.probability(), 1.0);

    // Disjoint caps on different axes
    auto const disjoint = measure(SphereSet::union_of(
        {CapSpec(p, 0.5), CapSpec(SpherePoint::axis(s, 3), 0.6)}));
    EXPECT_TRUE(disjoint.exact);
    EXPECT_NEAR(disjoint.probability(), frac(s, 0.5) + frac(s, 0.6), 1e-15);

    auto const comp = measure(SphereSet::complement(SphereSet::band(p, 0.6, 2.0)));
    EXPECT_NEAR(comp.probability(), 1 - band.probability(), 1e-14);
}

TEST(Measure, TinyComplementKeepsPrecision)
{
    // At m = 1000 the cap of angle pi - 0.3 misses only e^-1222 of the sphere
    Sphere const s(1000);
    auto const big = measure(SphereSet::cap(SpherePoint::axis(s, 0), pi - 0.3));
    EXPECT_NEAR(big.log_q, -1222.1260152413636803, 1e-8);
    EXPECT_EQ(big.log_p, 0.0);
    auto const comp = measure(SphereSet::complement(SphereSet::cap(SpherePoint::axis(s, 0), pi - 0.3)));
    EXPECT_NEAR(comp.log_p, -1222.1260152413636803, 1e-8);
}

TEST(Measure, OverlappingUnionFallsBackToMonteCarlo)
{
    Sphere const s(4);
    auto const a = SpherePoint::axis(s, 0);
    auto const b = SpherePoint::axis(s, 1);
    auto const u = SphereSet::union_of({CapSpec(a, 1.0), CapSpec(b, 1.0)});
    auto const est = measure(u, {.samples = 400000, .seed = 3});
    EXPECT_FALSE(est.exact);
    EXPECT_EQ(est.samples, 400000u);
    // Inclusion-exclusion with the exact pairwise intersection
    double const expected
        = 2 * frac(s, 1.0) - cap_intersection_fraction(s, 1.0, 1.0, pi / 2);
    EXPECT_NEAR(est.probability(), expected, 4 * est.std_error);
    EXPECT_GT(est.std_error, 0);
    EXPECT_THROW(measure(u, {.samples = 0}), DomainError);
}

TEST(EffectiveAngle, MatchesCapOfEqualMeasure)
{
    Sphere const s(128);
    auto const p = SpherePoint::axis(s, 0);
    EXPECT_NEAR(effective_angle(SphereSet::cap(p, 1.2)).theta, 1.2, 1e-12);
    EXPECT_NEAR(effective_angle(SphereSet::cap(p, 2.9)).theta, 2.9, 1e-12);
    auto const band = effective_angle(SphereSet::band(p, 1.0, 1.4));
    EXPECT_TRUE(band.exact);
    EXPECT_NEAR(band.theta, 1.3999999999725988081, 1e-12);
    for (double theta : {0.6, 1.2, 1.7})
    {
        EXPECT_NEAR(effective_angle(band_with_effective_angle(p, theta / 2, theta)).theta, theta,
                    1e-11);
        EXPECT_NEAR(effective_angle(antipodal_caps_with_effective_angle(p, theta)).theta, theta,
                    1e-11);
    }
    EXPECT_THROW(band_with_effective_angle(p, 2.0, 2.0), DomainError);
}

TEST(Neighborhood, GrowsEveryShape)
{
    Sphere const s(5);
    auto const p = SpherePoint::axis(s, 0);
    auto const cap = std::get<CapShape>(neighborhood(SphereSet::cap(p, 1.0), 0.5).shape());
    EXPECT_EQ(cap.cap.theta, 1.5);
    EXPECT_EQ(std::get<CapShape>(neighborhood(SphereSet::cap(p, 3.0), 0.5).shape()).cap.theta, pi);
    auto const band = std::get<BandShape>(neighborhood(SphereSet::band(p, 0.3, 2.8), 0.5).shape());
    EXPECT_EQ(band.theta1, 0.0);
    EXPECT_EQ(band.theta2, pi);
    auto const u = std::get<UnionShape>(
        neighborhood(SphereSet::union_of({CapSpec(p, 0.2), CapSpec(p.antipode(), 0.4)}), 0.1)
            .shape());
    EXPECT_NEAR(u.caps[1].theta, 0.5, 1e-15);
    EXPECT_THROW(neighborhood(SphereSet::complement(SphereSet::cap(p, 1.0)), 0.1),
                 UnsupportedShapeError);
    EXPECT_THROW(neighborhood(SphereSet::cap(p, 1.0), -0.1), DomainError);
}

TEST(Neighborhood, ContainsEveryNearbyPointProperty)
{
    // A point within t of a point of A lies in A_t
    Sphere const s(6);
    auto const p = SpherePoint::axis(s, 0);
    auto const set = SphereSet::band(p, 0.8, 1.3);
    auto const grown = neighborhood(set, 0.2);
    RandomStream stream(12, 0);
    int tested = 0;
    for (int i = 0; i < 4000 && tested < 300; ++i)
    {
        auto const z = sample_sphere(s, stream);
        if (!contains(set, z))
            continue;
        ++tested;
        auto const w = sample_cap(CapSpec(z, 0.2), stream);
        EXPECT_TRUE(contains(grown, w));
    }
    EXPECT_EQ(tested, 300);
}

TEST(LatitudeIntervals, AlignmentAndMerging)
{
    Sphere const s(7);
    auto const p = SpherePoint::axis(s, 2);
    auto const iv = latitude_intervals(
        SphereSet::union_of({CapSpec(p, 0.5), CapSpec(p.antipode(), 0.4), CapSpec(p, 0.3)}), p);
    ASSERT_EQ(iv.size(), 2u);
    EXPECT_EQ(iv[0].hi, 0.5);
    EXPECT_NEAR(iv[1].lo, pi - 0.4, 1e-15);

    auto const gap = latitude_intervals(SphereSet::complement(SphereSet::band(p, 1.0, 2.0)), p);
    ASSERT_EQ(gap.size(), 2u);
    EXPECT_EQ(gap[0].lo, 0.0);
    EXPECT_EQ(gap[1].hi, pi);

    auto const tilted = SphereSet::union_of({CapSpec(p, 0.5), CapSpec(SpherePoint::axis(s, 0), 0.4)});
    EXPECT_FALSE(common_axis(tilted).has_value());
    EXPECT_THROW(latitude_intervals(tilted, p), UnsupportedShapeError);
    auto const grid = make_grid(s, 64);
    EXPECT_THROW(zonal_profile(tilted, grid), UnsupportedShapeError);
}

TEST(ZonalProfile, IntegratesToTheMeasure)
{
    Sphere const s(16);
    auto const p = SpherePoint::axis(s, 0);
    auto const grid = make_grid(s, 2048);
    for (auto const& set : {SphereSet::cap(p, 1.2), SphereSet::band(p.antipode(), 0.9, 1.5),
                            antipodal_caps_with_effective_angle(p, 1.2)})
    {
        auto const f = zonal_profile(set, grid, p);
        double const exact = measure(set).measure.value();
        // Each boundary can misclassify at most one cell
        EXPECT_NEAR(f.integral(), exact, 4 * grid->cell_measure());
    }
}

TEST(Canonicalize, RewritesEquivalentForms)
{
    Sphere const s(8);
    auto const p = SpherePoint::axis(s, 1);
    auto const c = canonicalize(SphereSet::complement(SphereSet::cap(p, 1.0)));
    auto const& cap = std::get<CapShape>(c.shape()).cap;
    EXPECT_EQ(cap.pole[1], -1.0);
    EXPECT_NEAR(cap.theta, pi - 1.0, 1e-15);

    EXPECT_TRUE(std::holds_alternative<CapShape>(canonicalize(SphereSet::band(p, 0, 1.0)).shape()));
    auto const tail = canonicalize(SphereSet::complement(SphereSet::band(p, 0.7, pi)));
    EXPECT_EQ(std::get<CapShape>(tail.shape()).cap.theta, 0.7);
    auto const twice = canonicalize(SphereSet::complement(SphereSet::complement(SphereSet::band(p, 0.5, 1.0))));
    EXPECT_TRUE(std::holds_alternative<BandShape>(twice.shape()));
    auto const kept = canonicalize(SphereSet::complement(SphereSet::band(p, 0.5, 1.0)));
    EXPECT_TRUE(std::holds_alternative<ComplementShape>(kept.shape()));

    // Measure is preserved
    for (auto const& set : {SphereSet::complement(SphereSet::cap(p, 1.0)),
                            SphereSet::complement(SphereSet::band(p, 0.7, pi))})
    {
        EXPECT_NEAR(measure(canonicalize(set)).probability(), measure(set).probability(), 1e-14);
    }
}

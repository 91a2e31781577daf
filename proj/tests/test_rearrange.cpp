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


#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sphiso/rearrange.hpp"

using namespace sphiso;

namespace {

// Azimuthal average of the indicator of arccos(u) <= angle, integrating the
// azimuth weight up to the edge found in closed form
double indicator_average(int m, double angle, double alpha, double phi)
{
    double const c = (std::cos(angle) - std::cos(phi) * std::cos(alpha))
                     / (std::sin(phi) * std::sin(alpha));
    if (c >= 1)
        return 0;
    if (c <= -1)
        return 1;
    if (m == 2)
        return 0.5;
    double const edge = std::acos(c);
    auto w = [&](double psi) { return std::pow(std::sin(psi), m - 3); };
    return oracle::gk_integrate(w, 0, edge) / oracle::gk_integrate(w, 0, pi);
}

ZonalFunction random_profile(GridPtr const& grid, std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(grid->size());
    for (double& x : v)
        x = u(gen) < 0.4 ? 0.0 : std::floor(4 * u(gen)) / 3;
    return ZonalFunction(grid, std::move(v));
}

}  // namespace

TEST(MonotoneKernel, EvaluationAndValidation)
{
    auto const ind = MonotoneKernel::indicator(1.0);
    EXPECT_EQ(ind(std::cos(1.0)), 1.0);
    EXPECT_EQ(ind(std::cos(1.0) - 1e-12), 0.0);
    EXPECT_EQ(ind.max_value(), 1.0);

    auto const step = MonotoneKernel::step({-0.5, 0.5}, {1.0, 2.0, 4.0});
    EXPECT_EQ(step(-0.9), 1.0);
    EXPECT_EQ(step(-0.5), 2.0);
    EXPECT_EQ(step(0.49), 2.0);
    EXPECT_EQ(step(0.5), 4.0);
    EXPECT_EQ(step.min_value(), 1.0);
    EXPECT_EQ(step.max_value(), 4.0);

    auto const lin = MonotoneKernel::linear({-1.0, 0.0, 1.0}, {0.0, 0.0, 2.0});
    EXPECT_FALSE(lin.is_step());
    EXPECT_DOUBLE_EQ(lin(0.25), 0.5);
    EXPECT_EQ(MonotoneKernel::constant(3.0)(0.1), 3.0);

    EXPECT_THROW(MonotoneKernel::indicator(-0.1), DomainError);
    EXPECT_THROW(MonotoneKernel::step({0.5, 0.2}, {0, 1, 2}), DomainError);
    EXPECT_THROW(MonotoneKernel::step({0.5}, {1, 0}), DomainError);
    EXPECT_THROW(MonotoneKernel::step({1.5}, {0, 1}), DomainError);
    EXPECT_THROW(MonotoneKernel::step({0.5}, {0, 1, 2}), DomainError);
    EXPECT_THROW(MonotoneKernel::linear({0.0}, {1.0}), DomainError);
    EXPECT_THROW(MonotoneKernel::linear({0.0, 0.5}, {1.0, 0.0}), DomainError);
    EXPECT_THROW(MonotoneKernel::constant(NAN), DomainError);
}

TEST(Rearrange, SortsAndPreservesDistribution)
{
    std::mt19937_64 gen(1);
    auto const grid = make_grid(Sphere(7), 300);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto const f = random_profile(grid, gen);
        auto const r = rearrange(f);
        EXPECT_TRUE(std::is_sorted(r.values().rbegin(), r.values().rend()));
        EXPECT_NEAR(r.integral(), f.integral(), 1e-12 * std::max(1.0, f.integral()));
        for (double d : {-0.1, 0.0, 0.5, 0.9, 1.0})
            EXPECT_EQ(super_level_measure(r, d).log_value, super_level_measure(f, d).log_value);
        EXPECT_EQ(rearrange(r).values()[0], r.values()[0]);
    }
    EXPECT_EQ(super_level_measure(ZonalFunction(grid, 0.0), 0.0).log_value, neg_inf);
}

TEST(LayerCake, EqualsDirectIntegral)
{
    std::mt19937_64 gen(2);
    auto const grid = make_grid(Sphere(9), 257);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto const f = random_profile(grid, gen);
        auto const mask = random_profile(grid, gen);
        double direct = 0;
        for (int i = 0; i < grid->size(); ++i)
            direct += mask[i] != 0 ? f[i] : 0.0;
        direct *= grid->cell_measure();
        EXPECT_NEAR(layer_cake_integral(f, mask), direct, 1e-12 * std::max(1.0, direct));
    }
    std::vector<double> neg(257, 0.0);
    neg[5] = -1;
    EXPECT_THROW(layer_cake_integral(ZonalFunction(grid, neg), ZonalFunction(grid, 1.0)),
                 DomainError);
}

TEST(ProjectedKernel, IndicatorMatchesAzimuthOracle)
{
    for (int m : {2, 3, 4, 9, 32})
    {
        for (double angle : {0.4, 1.3, 2.6})
        {
            for (auto [alpha, phi] : {std::pair{0.3, 0.5}, {1.0, 1.9}, {2.5, 0.8}, {1.5, 1.5}})
            {
                auto const k = MonotoneKernel::indicator(angle);
                EXPECT_NEAR(projected_kernel(k, alpha, phi, m),
                            indicator_average(m, angle, alpha, phi), 1e-12)
                    << m << " " << angle << " " << alpha << " " << phi;
            }
        }
    }
}

TEST(ProjectedKernel, StepAndLinearMatchAzimuthOracle)
{
    auto const step = MonotoneKernel::step({-0.3, 0.2, 0.8}, {-1.0, 0.0, 0.5, 2.0});
    auto const lin = MonotoneKernel::linear({-1.0, -0.2, 0.6, 1.0}, {0.0, 0.5, 0.6, 3.0});
    for (int m : {2, 3, 6, 20})
    {
        for (auto [alpha, phi] : {std::pair{0.3, 0.5}, {1.0, 1.9}, {2.5, 0.8}})
        {
            double expected_step = -1.0;
            expected_step += 1.0 * indicator_average(m, std::acos(-0.3), alpha, phi);
            expected_step += 0.5 * indicator_average(m, std::acos(0.2), alpha, phi);
            expected_step += 1.5 * indicator_average(m, std::acos(0.8), alpha, phi);
            EXPECT_NEAR(projected_kernel(step, alpha, phi, m), expected_step, 1e-12);
            // The piecewise-linear integrand has kinks; the oracle resolves them adaptively
            EXPECT_NEAR(projected_kernel(lin, alpha, phi, m),
                        oracle::azimuth_average(lin, m, alpha, phi), 1e-9)
                << m << " " << alpha << " " << phi;
            EXPECT_NEAR(projected_kernel(lin, alpha, phi, m), projected_kernel(lin, phi, alpha, m),
                        1e-13);
        }
    }
    EXPECT_EQ(projected_kernel(MonotoneKernel::constant(2.5), 0.4, 2.0, 5), 2.5);
    EXPECT_THROW(projected_kernel(step, -0.1, 1.0, 5), DomainError);
}

TEST(KernelMatrix, MatchesConvolutionAndIsThreadIndependent)
{
    std::mt19937_64 gen(3);
    auto const grid = make_grid(Sphere(8), 128);
    auto const k = MonotoneKernel::step({-0.5, 0.1}, {0.0, 1.0, 3.0});
    KernelMatrix const one(grid, k, 1);
    KernelMatrix const many(grid, k, 4);
    auto const f = random_profile(grid, gen);
    auto const a = zonal_convolve(f, k, 1);
    auto const b = one.convolve(f);
    auto const c = many.convolve(f);
    for (int i = 0; i < 128; ++i)
    {
        EXPECT_NEAR(a[i], b[i], 1e-12 * std::max(1.0, std::fabs(a[i])));
        EXPECT_EQ(b[i], c[i]);
        EXPECT_EQ(one(i, 5), one(5, i));
    }
    EXPECT_EQ(zonal_convolve(f, k, 1).values()[17], zonal_convolve(f, k, 3).values()[17]);
    // A constant kernel integrates to K mu(S) from every cell
    KernelMatrix const flat(grid, MonotoneKernel::constant(2.0));
    double const area = log_sphere_area(Sphere(8)).value();
    for (double r : flat.row_mass())
        EXPECT_NEAR(r, 2.0 * area, 1e-12 * area);
    EXPECT_THROW(one.convolve(ZonalFunction(make_grid(Sphere(8), 64), 1.0)), DomainError);
}

TEST(Riesz, RearrangementNeverDecreasesTheFunctionalProperty)
{
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int m : {3, 8})
    {
        auto const grid = make_grid(Sphere(m), 256);
        for (int trial = 0; trial < 15; ++trial)
        {
            auto const k = MonotoneKernel::indicator(pi * (0.05 + 0.9 * u(gen)));
            KernelMatrix const mat(grid, k);
            auto const f = random_profile(grid, gen);
            auto const g = random_profile(grid, gen);
            double const lhs = riesz_functional(f, g, mat);
            double const rhs = riesz_functional(rearrange(f), rearrange(g), mat);
            EXPECT_LE(lhs, rhs + riesz_grid_tolerance(f, g, k));
            EXPECT_NEAR(lhs, riesz_functional(f, g, k), 1e-10 * std::max(1.0, lhs));
            // Symmetric kernel: the functional is symmetric in f and g
            EXPECT_NEAR(lhs, riesz_functional(g, f, mat), 1e-10 * std::max(1.0, lhs));
        }
    }
}

TEST(BetaThreshold, ClosedSuperLevelConvention)
{
    auto const grid = make_grid(Sphere(3), 4);
    ZonalFunction const psi(grid, std::vector<double>{3.0, 2.0, 2.0, 1.0});
    EXPECT_EQ(beta_cell(psi, 2.5), 1);
    EXPECT_EQ(beta_cell(psi, 2.0), 1);
    EXPECT_EQ(beta_cell(psi, 0.5), 4);
    EXPECT_EQ(beta_threshold(psi, 0.5), pi);
    EXPECT_EQ(beta_threshold(psi, 5.0), 0.0);
    EXPECT_NEAR(beta_threshold(psi, 2.0), pi / 3, 1e-14);
    EXPECT_THROW(beta_cell(ZonalFunction(grid, std::vector<double>{1.0, 2.0, 0.0, 0.0}), 1.0),
                 DomainError);
}

TEST(ProofChain, CapIsItsOwnRearrangement)
{
    Sphere const s(16);
    auto const set = SphereSet::cap(SpherePoint::axis(s, 0), 1.2);
    auto const r = proof_chain_check(set, 1.0, 0.1, 1024, 1);
    EXPECT_TRUE(r.all_ok());
    EXPECT_NEAR(r.theta, 1.2, 1e-12);
    EXPECT_EQ(r.f, r.f_star);
    EXPECT_EQ(r.psi_star, r.psi_bar);
    EXPECT_NEAR(r.prefix_psi_star, r.prefix_psi_bar, 1e-9 * std::max(1.0, r.prefix_psi_bar));
    EXPECT_NEAR(r.threshold, 0.9 * r.V, 1e-15 * r.V);
    EXPECT_GT(r.beta, pi / 2);
}

TEST(ProofChain, BandAndUnionPassAndRejectBadInput)
{
    Sphere const s(16);
    auto const p = SpherePoint::axis(s, 0);
    auto const band = proof_chain_check(SphereSet::band(p, 0.9, 1.5), 1.0, 0.1, 1024);
    EXPECT_TRUE(band.all_ok());
    EXPECT_NEAR(band.total_psi_star, band.total_psi_bar, band.integral_tolerance);
    auto const u = proof_chain_check(antipodal_caps_with_effective_angle(p, 1.2), 1.2, 0.1, 1024);
    EXPECT_TRUE(u.all_ok());

    EXPECT_THROW(proof_chain_check(SphereSet::cap(p, 1.2), 1.0, 0.0, 64), DomainError);
    EXPECT_THROW(proof_chain_check(SphereSet::cap(p, 1.2), 0.0, 0.1, 64), DomainError);
    EXPECT_THROW(proof_chain_check(SphereSet::cap(p, 0.3), 0.5, 0.1, 64), TrivialIntersectionError);
    EXPECT_THROW(proof_chain_check(SphereSet::union_of({CapSpec(p, 1.0),
                                                        CapSpec(SpherePoint::axis(s, 1), 1.0)}),
                                   1.0, 0.1, 64),
                 UnsupportedShapeError);
    // Each cap holds about 1/130 of a cell, so no midpoint falls inside
    EXPECT_THROW(proof_chain_check(antipodal_caps_with_effective_angle(p, 0.5), 1.2, 0.1, 4096),
                 DomainError);
}

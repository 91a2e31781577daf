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
#include <concepts>
#include <random>
#include <set>

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sphiso/random.hpp"
#include "sphiso/specfun.hpp"

using namespace sphiso;

// Known-answer vectors published with the Random123 library
TEST(Philox, KnownAnswers)
{
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
              (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                            {0xffffffff, 0xffffffff}),
              (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                            {0xa4093822, 0x299f31d0}),
              (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(NormalQuantile, MatchesBoost)
{
    boost::math::normal_distribution<double> const nd;
    for (double p : {1e-300, 1e-20, 1e-8, 0.001, 0.02425, 0.075, 0.3, 0.5, 0.7, 0.925,
                     0.97575, 0.999, 1 - 1e-12})
    {
        double const expected = boost::math::quantile(nd, p);
        EXPECT_NEAR(normal_quantile(p), expected, 1e-14 * std::max(1.0, std::fabs(expected)))
            << p;
    }
    EXPECT_THROW(normal_quantile(0.0), DomainError);
    EXPECT_THROW(normal_quantile(1.0), DomainError);
}

TEST(RandomStream, ReproducibleAndIndependent)
{
    RandomStream a(42, 7);
    RandomStream b(42, 7);
    RandomStream c(42, 8);
    RandomStream d(43, 7);
    int same_c = 0;
    int same_d = 0;
    for (int i = 0; i < 1000; ++i)
    {
        auto const x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        same_c += x == c.next_u64();
        same_d += x == d.next_u64();
    }
    EXPECT_EQ(same_c, 0);
    EXPECT_EQ(same_d, 0);
}

TEST(RandomStream, SubstreamsAreDistinctAndStable)
{
    RandomStream const base(1, 0);
    std::set<std::uint64_t> ids;
    for (std::uint64_t i = 0; i < 10000; ++i)
        ids.insert(base.substream(i).stream_id());
    EXPECT_EQ(ids.size(), 10000u);
    auto s1 = base.substream(5);
    auto s2 = base.substream(5);
    EXPECT_EQ(s1.next_u64(), s2.next_u64());
    EXPECT_NE(base.substream(5).stream_id(), base.substream(5).substream(0).stream_id());
}

TEST(RandomStream, UniformIsOpenAndEvenlySpread)
{
    RandomStream s(9, 0);
    std::vector<double> u(50000);
    for (double& x : u)
    {
        x = s.uniform();
        ASSERT_GT(x, 0.0);
        ASSERT_LT(x, 1.0);
    }
    double const d = oracle::ks_statistic(u, [](double x) { return x; });
    EXPECT_LT(d, oracle::ks_critical_1pct(u.size()));
}

TEST(RandomStream, NormalsPassKolmogorovSmirnov)
{
    RandomStream s(10, 3);
    boost::math::normal_distribution<double> const nd;
    std::vector<double> z(50000);
    double sum = 0;
    double sum2 = 0;
    for (double& x : z)
    {
        x = s.normal();
        sum += x;
        sum2 += x * x;
    }
    double const n = static_cast<double>(z.size());
    EXPECT_NEAR(sum / n, 0.0, 4 / std::sqrt(n));
    EXPECT_NEAR(sum2 / n, 1.0, 4 * std::sqrt(2 / n));
    double const d = oracle::ks_statistic(z, [&](double x) { return boost::math::cdf(nd, x); });
    EXPECT_LT(d, oracle::ks_critical_1pct(z.size()));
}

TEST(RandomStream, SatisfiesUniformRandomBitGenerator)
{
    static_assert(std::uniform_random_bit_generator<RandomStream>);
    RandomStream s(1, 1);
    std::uniform_int_distribution<int> die(1, 6);
    int counts[7] = {};
    for (int i = 0; i < 6000; ++i)
        ++counts[die(s)];
    for (int k = 1; k <= 6; ++k)
        EXPECT_NEAR(counts[k], 1000, 150);
}

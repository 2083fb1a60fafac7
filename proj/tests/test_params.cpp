// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "ergg/params.hpp"

using ergg::ModelParams;
using ergg::ParameterError;
using ergg::RateSpec;

TEST(ModelParams, AcceptsValidHomogeneous)
{
    auto m = ModelParams::homogeneous(5, 1.5, 0.7, 0.3);
    EXPECT_EQ(m.rates.size(), 5u);
    EXPECT_TRUE(m.interior_homogeneous());
    EXPECT_EQ(m.interior_rates().size(), 4u);
}

TEST(ModelParams, RejectsOutOfDomain)
{
    EXPECT_THROW(ModelParams::homogeneous(1, 1.0, 1.0, 0.0), ParameterError);
    EXPECT_THROW(ModelParams::homogeneous(3, 1.0, 1.0, 1.0), ParameterError);
    EXPECT_THROW(ModelParams::homogeneous(3, 1.0, 1.0, -0.1), ParameterError);
    EXPECT_THROW(ModelParams::homogeneous(3, 0.0, 1.0, 0.5), ParameterError);
    EXPECT_THROW(ModelParams::homogeneous(3, 1.0, 0.0, 0.5), ParameterError);
    ModelParams short_rates{3, 0.5, {1.0, 1.0}, 1.0};
    EXPECT_THROW(short_rates.validate(), ParameterError);
}

TEST(ModelParams, HomogeneityIgnoresOriginGap)
{
    ModelParams m{3, 0.0, {5.0, 1.0, 1.0}, 1.0};
    EXPECT_TRUE(m.interior_homogeneous());
    m.rates[2] = 2.0;
    EXPECT_FALSE(m.interior_homogeneous());
}

TEST(RateSpec, Scalar)
{
    auto spec = RateSpec::parse("2.5");
    EXPECT_TRUE(spec.is_scalar());
    EXPECT_EQ(spec.expand(3), (std::vector<double>{2.5, 2.5, 2.5}));
}

TEST(RateSpec, PiecewiseMustCoverN)
{
    auto spec = RateSpec::parse("2:1,3:2");
    EXPECT_EQ(spec.expand(5), (std::vector<double>{1, 1, 2, 2, 2}));
    EXPECT_THROW(spec.expand(6), ParameterError);
    EXPECT_THROW(spec.expand(4), ParameterError);
}

TEST(RateSpec, StarAbsorbsRemainder)
{
    auto spec = RateSpec::parse("11:1,*:2");
    auto rates = spec.expand(14);
    EXPECT_EQ(rates.size(), 14u);
    EXPECT_EQ(rates[10], 1.0);
    EXPECT_EQ(rates[11], 2.0);
    EXPECT_THROW(spec.expand(10), ParameterError);
    EXPECT_THROW(RateSpec::parse("*:1,*:2"), ParameterError);
}

TEST(RateSpec, Malformed)
{
    EXPECT_THROW(RateSpec::parse("abc"), ParameterError);
    EXPECT_THROW(RateSpec::parse("2:1:3"), ParameterError);
    EXPECT_THROW(RateSpec::parse("1.5:2"), ParameterError);
}

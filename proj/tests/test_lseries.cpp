// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0

#include <mwl3/lseries.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace mwl3;

namespace
{
// Oracle: (1 + a T)^r by repeated convolution.
std::vector<BigInt> binomial_power(const BigInt& a, unsigned r)
{
    std::vector<BigInt> out{1};
    for (unsigned i = 0; i < r; ++i)
    {
        std::vector<BigInt> next(out.size() + 1, BigInt(0));
        for (std::size_t k = 0; k < out.size(); ++k)
        {
            next[k] += out[k];
            next[k + 1] += a * out[k];
        }
        out = std::move(next);
    }
    return out;
}
}  // namespace

TEST(LocalFactor, Shapes)
{
    EXPECT_EQ(local_factor(0, 1, true, 9), (std::vector<BigInt>{1, 0, 9}));
    EXPECT_EQ(local_factor(0, 1, false, 9), (std::vector<BigInt>{1, 0}));
    EXPECT_EQ(local_factor(1, 1, false, 9), (std::vector<BigInt>{1, -1}));
    EXPECT_EQ(local_factor(-3, 2, true, 3), (std::vector<BigInt>{1, 0, 3, 0, 9}));
    EXPECT_THROW(local_factor(7, 1, true, 9), VerificationError);
    EXPECT_THROW(local_factor(2, 1, false, 9), VerificationError);
}

TEST(LFromSums, BinomialExample)
{
    std::vector<BigInt> S;
    for (unsigned j = 1; j <= 6; ++j)
        S.push_back(-6 * big_pow(9, j));
    const LPoly L = l_from_sums(S, 9);
    EXPECT_EQ(L.c, (std::vector<BigInt>{1, -54, 1215, -14580, 98415, -354294, 531441}));
    EXPECT_EQ(L.c, binomial_power(-9, 6));
    EXPECT_EQ(L, expected_l(1));
}

TEST(LFromSums, TrivialCases)
{
    EXPECT_EQ(l_from_sums({0, 0, 0}, 9).c, (std::vector<BigInt>{1, 0, 0, 0}));
    EXPECT_EQ(l_from_sums({-1, -1, -1, -1}, 9).degree(), 1);
    EXPECT_EQ(l_from_sums({-1, -1, -1, -1}, 9).c[1], -1);
    EXPECT_THROW(l_from_sums({1, 0}, 9), MathError);  // exp(T) has c_2 = 1/2
    EXPECT_THROW(l_from_sums({}, 9), std::invalid_argument);
}

TEST(LFromSums, RoundTripOnRandomIntegerPolynomials)
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial)
    {
        LPoly L{9, {1}};
        const int d = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < d; ++i)
            L.c.push_back(static_cast<std::int64_t>(rng() % 2001) - 1000);
        const std::size_t J = static_cast<std::size_t>(d) + 4;
        const auto S = sums_from_l(L, J);
        const LPoly back = l_from_sums(S, 9);
        EXPECT_EQ(back, L);
        EXPECT_EQ(sums_from_l(back, J), S);
    }
}

TEST(ExpectedL, DegreesAndRanks)
{
    EXPECT_EQ(expected_l(1).c, binomial_power(-9, 6));
    EXPECT_EQ(expected_l(2).degree(), 18);
    EXPECT_EQ(expected_l(2).c, binomial_power(-81, 18));
    for (std::uint32_t n = 1; n <= 4; ++n)
    {
        const auto rk = analytic_rank(expected_l(n));
        EXPECT_EQ(rk.rank, 2 * checked_pow(3, n));
        EXPECT_EQ(rk.special_value, 1);
    }
}

TEST(AnalyticRank, SmallCases)
{
    EXPECT_EQ(analytic_rank(LPoly{9, {1}}).rank, 0u);
    EXPECT_EQ(analytic_rank(LPoly{9, {1}}).special_value, 1);
    EXPECT_EQ(analytic_rank(LPoly{9, {1, -9}}).rank, 1u);
    EXPECT_EQ(analytic_rank(LPoly{9, {1, -9}}).special_value, 1);
    // (1 - 9T)(1 + 9T): rank 1, L* = 1 + 9/9 = 2.
    const auto rk = analytic_rank(LPoly{9, {1, 0, -81}});
    EXPECT_EQ(rk.rank, 1u);
    EXPECT_EQ(rk.special_value, 2);
    EXPECT_THROW(analytic_rank(LPoly{9, {0}}), std::invalid_argument);
}

TEST(RootModuli, WeilCheck)
{
    for (double m : inverse_root_moduli(expected_l(1)))
        EXPECT_NEAR(m, 9.0, 1e-9);
    // 1 + 9T^2 has inverse roots +-3i.
    const auto ms = inverse_root_moduli(LPoly{9, {1, 0, 9}});
    ASSERT_EQ(ms.size(), 2u);
    for (double m : ms)
        EXPECT_NEAR(m, 3.0, 1e-9);
}

TEST(TheoremA, FullPolynomialAtNEqualsOne)
{
    const auto rep = verify_theorem_a(1, 6);
    ASSERT_EQ(rep.rows.size(), 6u);
    for (const auto& row : rep.rows)
    {
        EXPECT_TRUE(row.pass) << "j = " << row.j;
        EXPECT_EQ(row.computed, -2 * big_pow(3, 1 + 2 * row.j));
    }
    ASSERT_TRUE(rep.l_poly.has_value());
    EXPECT_EQ(rep.l_poly->c, (std::vector<BigInt>{1, -54, 1215, -14580, 98415, -354294, 531441}));
    EXPECT_TRUE(rep.full_match);
    EXPECT_EQ(rep.rank, 6u);
    EXPECT_TRUE(rep.rank_from_counts);
    EXPECT_EQ(rep.special_value, 1);
    EXPECT_EQ(rep.conductor_degree, 10);
    EXPECT_TRUE(rep.degree_consistent);
    for (double m : rep.root_moduli)
        EXPECT_NEAR(m, 9.0, 1e-9);
    EXPECT_TRUE(rep.pass);
}

TEST(TheoremA, PartialChecks)
{
    const auto r2 = verify_theorem_a(2, 2);
    EXPECT_TRUE(r2.pass);
    EXPECT_TRUE(r2.rows[0].brute.has_value());
    EXPECT_TRUE(r2.rows[1].brute.has_value());
    EXPECT_EQ(r2.conductor_degree, 22);
    EXPECT_FALSE(r2.rank_from_counts);
    const auto r3 = verify_theorem_a(3, 1);
    EXPECT_TRUE(r3.pass);
    EXPECT_EQ(r3.rows[0].computed, -2 * big_pow(3, 9));
    EXPECT_THROW(verify_theorem_a(1, 0), std::invalid_argument);
    EXPECT_THROW(verify_theorem_a(2, 1, FieldElement::from_int(f9_presentation(), 1)), std::invalid_argument);
}

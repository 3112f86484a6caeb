// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0

#include <mwl3/density.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace mwl3;

namespace
{
// Oracle: the packing bound straight from the raw invariants in long double,
// (sqrt(d)/2)^r / (c * sqrt(|k|^-1 H / c)) with no symbolic bookkeeping.
long double log2_density_oracle(unsigned n)
{
    const long double q = std::pow(3.0L, n);
    const long double disc = 2 * (q + 3);
    const long double r = 2 * q;
    const long double log2_k = 2 * n * std::log2(3.0L);
    const long double log2_H = log2_k * disc / 12;
    const long double log2_reg = -log2_k + log2_H - std::log2(3.0L);
    const long double log2_covol = std::log2(3.0L) + log2_reg / 2;
    return r * (0.5L * std::log2(disc / 6) - 1) - log2_covol;
}
}  // namespace

TEST(Density, PublishedTable)
{
    const auto rows = density_table(6);
    ASSERT_EQ(rows.size(), 6u);
    const std::vector<long long> ranks = {6, 18, 54, 162, 486, 1458};
    for (const auto& row : rows)
    {
        EXPECT_EQ(row.rank, ranks[row.n - 1]);
        ASSERT_TRUE(row.published.has_value());
        EXPECT_TRUE(row.matches_published) << "n = " << row.n << ": " << row.log2_density;
    }
    EXPECT_NEAR(rows[0].log2_density, -3.79248, 1e-5);
    EXPECT_NEAR(rows[2].log2_density, 15.88002, 1e-5);
    EXPECT_NEAR(rows[4].log2_density, 741.1001, 1e-4);
}

TEST(Density, AgreesWithFloatingOracle)
{
    for (unsigned n = 1; n <= 8; ++n)
    {
        const auto rep = center_density_lower(n);
        const long double want = log2_density_oracle(n);
        EXPECT_NEAR(rep.value, static_cast<double>(want), 1e-6 * std::max(1.0L, std::abs(want))) << n;
        EXPECT_TRUE(rep.pipelines_agree);
    }
}

TEST(Density, ExactForms)
{
    EXPECT_EQ(center_density_lower(1).log2_density.radical_form().value(), "√3/24");
    EXPECT_EQ(center_density_lower(2).log2_density.radical_form().value(), "√3/27");
    // n = 3: sqrt(3) 5^27 / (2^27 3^13)
    const LogQuantity want = LogQuantity::log2_prime(3, Rational(1, 2)) + LogQuantity::log2_prime(5, Rational(27)) -
                             LogQuantity::log2_prime(2, Rational(27)) - LogQuantity::log2_prime(3, Rational(13));
    EXPECT_EQ(center_density_lower(3).log2_density, want);
    EXPECT_EQ(want.power_form(), "2^(-27) * 3^(-25/2) * 5^(27)");
}

TEST(Density, RegulatorAndMinimalNorm)
{
    EXPECT_EQ(regulator_upper(1).value, Rational(1, 3));
    EXPECT_EQ(regulator_upper(2).value, Rational(27));
    EXPECT_EQ(sha_regulator_constraint(1), Rational(1, 3));
    EXPECT_EQ(sha_regulator_constraint(2), Rational(27));
    for (unsigned n = 1; n <= 6; ++n)
    {
        EXPECT_EQ(min_norm_lower(n), Rational(big_pow(3, n - 1) + 1)) << n;
        // |Sha| >= 1 turns the exact product into the regulator bound.
        EXPECT_EQ(sha_regulator_constraint(n), regulator_upper(n).value) << n;
    }
}

TEST(Density, InvariantsMatchLocalData)
{
    for (unsigned n = 1; n <= 4; ++n)
    {
        const auto inv = invariants(n);
        const auto E = Curve::family(n, choose_b(n));
        const auto M = infinity_model(E);
        EXPECT_EQ(inv.disc_degree, BigInt(12 * M.mu));
        EXPECT_EQ(inv.conductor_degree - 4, inv.rank) << "deg L = deg f - 4";
    }
    EXPECT_EQ(invariants(1).rank_source, RankSource::fully_verified);
    EXPECT_EQ(invariants(5).rank_source, RankSource::asserted);
}

TEST(Density, NarrowVersusFull)
{
    EXPECT_NEAR(narrow_vs_full_ratio(1).value, 8.0 / 9.0, 1e-12);
    EXPECT_NEAR(narrow_vs_full_ratio(2).value, 0.58142, 1e-5);
    EXPECT_NEAR(narrow_vs_full_ratio(3).value, 0.465709, 1e-6);
    double prev = 1.0;
    for (unsigned n = 1; n <= 8; ++n)
    {
        const auto r = narrow_vs_full_ratio(n);
        EXPECT_LT(r.value, prev);
        EXPECT_GT(r.value, r.limit);
        prev = r.value;
    }
    EXPECT_NEAR(narrow_vs_full_ratio(8).value, 3 * std::exp(-2.0), 5e-4);
}

TEST(Density, AsymptoticColumn)
{
    const auto rows = density_table(8);
    EXPECT_NEAR(rows[0].asymptotic_reference, 6.4624, 1e-3);
    EXPECT_NEAR(rows[5].asymptotic_reference, 6384.69, 1e-2);
    EXPECT_FALSE(rows[7].published.has_value());
    EXPECT_NEAR(rows[7].log2_density, 45815.20, 1e-2);
}

TEST(Density, LogQuantityAlgebra)
{
    const auto a = LogQuantity::log2_of(Rational(12));
    EXPECT_EQ(a, LogQuantity::constant(2) + LogQuantity::log2_prime(3, 1));
    EXPECT_NEAR(a.eval(), std::log2(12.0), 1e-12);
    EXPECT_EQ(a - a, LogQuantity());
    EXPECT_EQ((Rational(1, 2) * a).radical_form().value(), "√3*2");
    EXPECT_FALSE(LogQuantity::log2_prime(3, Rational(1, 3)).radical_form().has_value());
    EXPECT_THROW(LogQuantity::log2_of(Rational(0)), std::invalid_argument);
    EXPECT_THROW(LogQuantity::log2_prime(4, 1), std::invalid_argument);
}

TEST(Density, Errors)
{
    EXPECT_THROW(density_table(0), std::invalid_argument);
    EXPECT_THROW(density_table(9), GuardError);
    EXPECT_THROW(center_density_lower(0), std::invalid_argument);
    EXPECT_TRUE(matches_printed(741.100156, "741.1001"));
    EXPECT_FALSE(matches_printed(741.2, "741.1001"));
}

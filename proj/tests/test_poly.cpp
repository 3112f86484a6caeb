// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0

#include <mwl3/poly.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace mwl3;

namespace
{
Poly random_poly(const FieldPtr& k, std::mt19937_64& rng, int max_degree)
{
    const int d = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
    std::vector<Elem> c(static_cast<std::size_t>(d) + 1);
    for (auto& e : c)
        e = Elem{static_cast<std::uint32_t>(rng() % k->size())};
    return Poly(k, std::move(c));
}
}  // namespace

TEST(Poly, SmallIdentities)
{
    auto k = make_field(3, 2);
    const Poly t = Poly::t(k);
    const Poly one = Poly::constant(k, Field::one());
    EXPECT_EQ((t * t - one) / (t - one), t + one);
    EXPECT_EQ((t + one).pow(3), t.pow(3) + one);  // Frobenius in characteristic 3
    EXPECT_EQ(Poly::from_ints(k, {1, 0, 2}).to_string(), "2*t^2 + 1");
    EXPECT_EQ(Poly(k).degree(), Poly::kZeroDegree);
    EXPECT_EQ(t.pow(5).derivative(), t.pow(4).scaled(k->from_int(5)));
    EXPECT_EQ(gcd(t * t - one, t * t + t.scaled(k->from_int(2)) + one), t + one);
}

TEST(Poly, KaratsubaMatchesSchoolbook)
{
    auto k = make_field(3, 4);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial)
    {
        const Poly a = random_poly(k, rng, 400);
        const Poly b = random_poly(k, rng, 300);
        const Poly prod = a * b;
        const auto naive = detail::mul_schoolbook(*k, a.coeffs(), b.coeffs());
        EXPECT_EQ(prod, Poly(k, naive));
    }
}

TEST(Poly, DivisionIdentity)
{
    auto k = make_field(3, 3);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial)
    {
        const Poly a = random_poly(k, rng, 40);
        Poly b = random_poly(k, rng, 15);
        if (b.is_zero())
            continue;
        auto [q, r] = a.divmod(b);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
    }
    EXPECT_THROW(Poly::t(k).divmod(Poly(k)), MathError);
}

TEST(Poly, GcdDividesBothAndIsMonic)
{
    auto k = make_field(3, 2);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial)
    {
        const Poly c = random_poly(k, rng, 4);
        const Poly a = random_poly(k, rng, 6) * c;
        const Poly b = random_poly(k, rng, 6) * c;
        if (a.is_zero() || b.is_zero())
            continue;
        const Poly g = gcd(a, b);
        EXPECT_TRUE(g.is_monic());
        EXPECT_TRUE((a % g).is_zero());
        EXPECT_TRUE((b % g).is_zero());
        if (!c.is_zero())
        {
            EXPECT_TRUE((g % c.monic()).is_zero());
        }
    }
}

TEST(Poly, EvaluationIsHomomorphism)
{
    auto k = make_field(3, 2);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial)
    {
        const Poly a = random_poly(k, rng, 6);
        const Poly b = random_poly(k, rng, 6);
        for (std::uint32_t x = 0; x < 9; ++x)
            EXPECT_EQ((a * b).eval(Elem{x}), k->mul(a.eval(Elem{x}), b.eval(Elem{x})));
    }
}

TEST(Poly, ScaleVariable)
{
    auto k = make_field(3, 2);
    const Poly f = Poly::from_ints(k, {1, 2, 0, 1});
    const Elem c = k->generator();
    const Poly g = f.scale_variable(c);
    for (std::uint32_t x = 0; x < 9; ++x)
        EXPECT_EQ(g.eval(Elem{x}), f.eval(k->mul(c, Elem{x})));
}

TEST(RatFn, NormalisesAndMeasures)
{
    auto k = make_field(3, 2);
    const Poly t = Poly::t(k);
    const Poly one = Poly::constant(k, Field::one());
    const RatFn r(t * t - one, (t - one).scaled(k->from_int(2)));
    EXPECT_TRUE(r.is_polynomial());
    EXPECT_EQ(r, RatFn((t + one).scaled(k->from_int(2))));
    const RatFn s(t.pow(3), t.pow(5) + one);
    EXPECT_EQ(s.degree(), 5);
    EXPECT_EQ(s.valuation_at_infinity(), 2);
    EXPECT_EQ(s.value_at_infinity(), Field::zero());
    EXPECT_EQ(RatFn(t.pow(4) + one, t.pow(4).scaled(k->from_int(2))).value_at_infinity(), k->from_int(2));
    EXPECT_THROW(RatFn(t, Poly(k)), MathError);
    EXPECT_THROW(RatFn(t) / RatFn(Poly(k)), MathError);
    EXPECT_EQ(RatFn(t).mul_t_power(-3), RatFn(one, t * t));
}

TEST(RatFn, FieldAxiomsOnSamples)
{
    auto k = make_field(3, 2);
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial)
    {
        Poly d1 = random_poly(k, rng, 3), d2 = random_poly(k, rng, 3);
        if (d1.is_zero() || d2.is_zero())
            continue;
        const RatFn a(random_poly(k, rng, 4), d1), b(random_poly(k, rng, 4), d2);
        EXPECT_EQ((a + b) - b, a);
        EXPECT_EQ(a * b, b * a);
        if (!b.is_zero())
        {
            EXPECT_EQ((a / b) * b, a);
        }
    }
}

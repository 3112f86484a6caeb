// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0

#include <mwl3/curve.hpp>

#include <gtest/gtest.h>

using namespace mwl3;

namespace
{
// Oracle: 4^-m deg x(2^m P) with the full chord-tangent law, no x-only shortcut.
Rational height_by_group_law(const Curve& E, Point P, unsigned m)
{
    for (unsigned i = 0; i < m; ++i)
        P = dbl(E, P);
    return Rational(naive_height(P)) / Rational(big_pow(4, m));
}

const Point& named(const ExplicitPoints& pp, const std::string& name)
{
    for (const auto& np : pp.points)
        if (np.name == name)
            return np.point;
    throw std::out_of_range(name);
}
}  // namespace

TEST(Curve, ExplicitPointsLieOnTheirCurves)
{
    for (std::uint32_t n : {1u, 2u, 3u, 4u})
    {
        const auto pp = explicit_points(n);
        EXPECT_EQ(pp.curve.n, n);
        for (const auto& np : pp.points)
            EXPECT_TRUE(on_curve(pp.curve, np.point)) << np.name;
    }
    EXPECT_EQ(explicit_points(4).points.size(), 1u);
}

TEST(Curve, P1Arithmetic)
{
    const auto pp = explicit_points(1);
    const auto& E = pp.curve;
    const auto k = E.k;
    const Point& P = named(pp, "P1");
    // Slope a4/(2y) = 1/(2(-t^3 + t)); x(2P) = slope^2 - 2 t^2.
    const RatFn slope = tangent_slope(E, P);
    EXPECT_EQ(slope, RatFn(Poly::constant(k, Field::one()), Poly::from_ints(k, {0, 2, 0, -2})));
    const Point P2 = dbl(E, P);
    EXPECT_TRUE(on_curve(E, P2));
    EXPECT_EQ(P2.x(), slope * slope - RatFn(Poly::from_ints(k, {0, 0, 2})));
    EXPECT_EQ(*x_double(E, P.x()), P2.x());
    EXPECT_EQ(add(E, P, neg(E, P)), Point::identity());
    EXPECT_EQ(mul(E, 3, P), add(E, P2, P));
    EXPECT_EQ(mul(E, -2, P), neg(E, P2));
    EXPECT_EQ(mul(E, 0, P), Point::identity());
}

TEST(Curve, GroupLawAxiomsOnSamples)
{
    const auto pp = explicit_points(1);
    const auto& E = pp.curve;
    const Point& P = named(pp, "P1");
    const Point& Q = named(pp, "Q1");
    const auto cs = conjugation_factors(E);
    ASSERT_EQ(cs.size(), 4u);  // c^4 = 1 in F_9
    const Point R = conjugate(E, P, cs[1]);
    EXPECT_TRUE(on_curve(E, R));
    EXPECT_EQ(add(E, P, Q), add(E, Q, P));
    EXPECT_EQ(add(E, add(E, P, Q), R), add(E, P, add(E, Q, R)));
    EXPECT_EQ(add(E, add(E, P, P), Q), add(E, P, add(E, P, Q)));
    EXPECT_EQ(sub(E, add(E, P, R), R), P);
}

TEST(Curve, XOnlyDoublingMatchesGroupLaw)
{
    for (std::uint32_t n : {1u, 2u})
    {
        const auto pp = explicit_points(n);
        for (const auto& np : pp.points)
        {
            Point P = np.point;
            RatFn x = P.x();
            for (int i = 0; i < 3; ++i)
            {
                P = dbl(pp.curve, P);
                x = *x_double(pp.curve, x);
                EXPECT_EQ(x, P.x()) << np.name << " step " << i;
            }
        }
    }
}

TEST(Curve, CanonicalHeightsOfExplicitPoints)
{
    const std::vector<std::pair<std::uint32_t, std::pair<std::string, Rational>>> cases = {
        {1, {"P1", Rational(2)}}, {1, {"Q1", Rational(4, 3)}}, {2, {"P2", Rational(4)}}, {3, {"P3", Rational(10)}}};
    for (const auto& [n, c] : cases)
    {
        const auto pp = explicit_points(n);
        const auto est = canonical_height(pp.curve, named(pp, c.first));
        EXPECT_TRUE(est.converged) << c.first;
        EXPECT_LE(est.m_used, 5u);
        EXPECT_NEAR(est.as_double(), to_double(c.second), 1e-2) << c.first;
    }
}

TEST(Curve, HeightOfQnFromLocalContributions)
{
    // x(Q_n) = 0 has no poles, so h(Q_n) = 2 chi - contr_inf = 2 mu - 2/3.
    for (std::uint32_t n : {1u, 2u, 3u})
    {
        const auto E = Curve::family(n, choose_b(n));
        const auto M = infinity_model(E);
        const double want = 2.0 * static_cast<double>(M.mu) - 2.0 / 3.0;
        HeightOptions opt;
        opt.m_max = 6;
        opt.degree_cap = 60000;
        const auto est = canonical_height(E, q_point(E), opt);
        EXPECT_NEAR(est.as_double(), want, 1e-2) << "n = " << n;
        EXPECT_LE(std::abs(est.as_double() - want), 4 * est.error_bound + 1e-12);
    }
}

TEST(Curve, HeightEstimateAgreesWithGroupLawOracle)
{
    const auto pp = explicit_points(1);
    for (const auto& np : pp.points)
    {
        HeightOptions opt;
        opt.tol = 0;  // never stop early
        opt.m_max = 3;
        const auto est = canonical_height(pp.curve, np.point, opt);
        EXPECT_EQ(est.value, height_by_group_law(pp.curve, np.point, 3)) << np.name;
        EXPECT_EQ(est.m_used, 3u);
        EXPECT_EQ(est.degrees.size(), 4u);
    }
}

TEST(Curve, HeightIsQuadratic)
{
    const auto pp = explicit_points(1);
    const auto& E = pp.curve;
    const Point& P = named(pp, "P1");
    const Point& Q = named(pp, "Q1");
    const double hP = canonical_height(E, P).as_double();
    const double hQ = canonical_height(E, Q).as_double();
    EXPECT_NEAR(canonical_height(E, dbl(E, P)).as_double(), 4 * hP, 4e-2);
    // Parallelogram law.
    const double lhs =
        canonical_height(E, add(E, P, Q)).as_double() + canonical_height(E, sub(E, P, Q)).as_double();
    EXPECT_NEAR(lhs, 2 * hP + 2 * hQ, 4e-2);
    const auto pr = height_pairing(E, P, Q);
    const auto rp = height_pairing(E, Q, P);
    EXPECT_NEAR(pr.value, rp.value, 1e-9);
}

TEST(Curve, ConjugationPreservesHeight)
{
    const auto pp = explicit_points(2);
    const auto& E = pp.curve;
    const auto cs = conjugation_factors(E);
    EXPECT_EQ(cs.size(), 10u);  // c^10 = 1 in F_81
    const Point& P = named(pp, "P2");
    for (std::size_t i = 0; i < cs.size(); i += 3)
    {
        const Point R = conjugate(E, P, cs[i]);
        EXPECT_TRUE(on_curve(E, R));
        EXPECT_NEAR(canonical_height(E, R).as_double(), 4.0, 1e-2);
    }
    EXPECT_THROW(conjugate(E, P, E.k->generator()), MathError);
}

TEST(Curve, InfinityModelIsTypeIV)
{
    for (std::uint32_t n : {1u, 2u, 3u, 4u})
    {
        const auto E = Curve::family(n, choose_b(n));
        const auto M = infinity_model(E);
        const std::int64_t m = static_cast<std::int64_t>(checked_pow(3, n)) + 1;
        EXPECT_EQ(M.mu, (m + 5) / 6);
        EXPECT_EQ(6 * M.mu - m, 2);
        const auto L = tate_type_iv_check(M);
        EXPECT_EQ(L.kodaira, "IV");
        EXPECT_EQ(L.v_disc, 12 * M.mu);
        EXPECT_EQ(L.conductor_exponent, 12 * M.mu - 2);
        EXPECT_EQ(L.tamagawa, 3);
        EXPECT_TRUE(E.good_away_from_infinity());
        EXPECT_EQ(discriminant_degree(E, M), 12 * M.mu);
    }
}

TEST(Curve, TateCheckRejectsOtherTypes)
{
    // y^2 = x^3 + x + t^6 has good reduction at infinity (mu = 1, 6 mu - m = 0).
    auto k = make_field(3, 2);
    const auto good = Curve::generic(k, Field::one(), Poly::monomial(k, Field::one(), 6));
    EXPECT_THROW(tate_type_iv_check(infinity_model(good)), VerificationError);
    // t^5: 6 mu - m = 1, type II.
    const auto two = Curve::generic(k, Field::one(), Poly::monomial(k, Field::one(), 5));
    EXPECT_THROW(tate_type_iv_check(infinity_model(two)), VerificationError);
}

TEST(Curve, NarrowMembership)
{
    for (std::uint32_t n : {1u, 2u, 3u})
    {
        const auto pp = explicit_points(n);
        for (const auto& np : pp.points)
        {
            const bool want = np.name[0] == 'P';
            EXPECT_EQ(is_narrow(pp.curve, np.point), want) << np.name;
        }
    }
    const auto pp = explicit_points(1);
    const auto M = infinity_model(pp.curve);
    EXPECT_EQ(reduce_at_infinity(pp.curve, named(pp, "Q1"), M).kind, ReductionKind::singular);
    // The component group has order 3: 2 Q1 still misses the identity component, 3 Q1 does not.
    const Point Q = named(pp, "Q1");
    EXPECT_FALSE(is_narrow(pp.curve, mul(pp.curve, 2, Q)));
    EXPECT_TRUE(is_narrow(pp.curve, mul(pp.curve, 3, Q)));
}

TEST(Curve, Errors)
{
    const auto pp = explicit_points(1);
    auto k = pp.curve.k;
    const Point bad(RatFn(Poly::t(k)), RatFn(Poly::t(k)));
    EXPECT_FALSE(on_curve(pp.curve, bad));
    EXPECT_THROW(add(pp.curve, bad, bad), MathError);
    EXPECT_THROW(canonical_height(pp.curve, bad), MathError);
    EXPECT_THROW(Curve::family(0, choose_b(1)), std::invalid_argument);
    EXPECT_THROW(Curve::family(2, choose_b(1)), std::invalid_argument);
    HeightOptions tight;
    tight.degree_cap = 10;
    EXPECT_THROW(canonical_height(pp.curve, named(pp, "P1"), tight), GuardError);
    // Q4 outgrows the default cap after four doublings: a capped, unconverged estimate.
    const auto p4 = explicit_points(4);
    const auto est = canonical_height(p4.curve, named(p4, "Q4"));
    EXPECT_TRUE(est.capped);
    EXPECT_FALSE(est.converged);
    EXPECT_EQ(est.m_used, 4u);
    EXPECT_NEAR(est.as_double(), 82.0 / 3, 4 * est.error_bound);
}

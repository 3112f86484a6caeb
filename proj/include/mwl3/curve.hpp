// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*
 * Elliptic curves y^2 = x^3 + a4 x + a6(t) over K = k(t), with a4 in k and
 * a6 in k[t]. The family E_{n,b} is a4 = b, a6 = t^(3^n + 1) over
 * k = F_{3^{2n}}.
 *
 * Heights use the normalisation h(P) = deg x(P) (degree of x as a map to
 * P^1), so the canonical height is lim 4^-m h(2^m P) and the narrow
 * Mordell-Weil lattice is even integral.
 */

#include "poly.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace mwl3
{
struct Curve
{
    FieldPtr k;
    Elem a4{};
    Poly a6;
    /// Family index n for E_{n,b}; 0 for curves not built by family().
    std::uint32_t n = 0;
    /// Twist parameter in its own F_{3^n} presentation (family curves only).
    std::optional<FieldElement> b;
    /// F_{3^n} -> k used to place b and any F_{3^n}-rational coefficients.
    std::optional<Embedding> base_embedding;

    /// E_{n,b}: y^2 = x^3 + b x + t^(3^n+1) over F_{3^{2n}}(t).
    static Curve family(std::uint32_t n, const FieldElement& b)
    {
        if (n == 0)
            throw std::invalid_argument("n must be >= 1");
        if (b.field()->characteristic() != 3 || b.field()->degree() != n)
            throw std::invalid_argument("b must lie in F_{3^n}");
        if (b.is_zero())
            throw std::invalid_argument("b must be nonzero");
        Curve c;
        c.k = make_field(3, 2 * n);
        c.n = n;
        c.b = b;
        c.base_embedding = Embedding::find(b.field(), c.k);
        c.a4 = (*c.base_embedding)(b.elem());
        c.a6 = Poly::monomial(c.k, Field::one(), checked_pow(3, n) + 1);
        return c;
    }

    /// y^2 = x^3 + a4 x + a6(t) for arbitrary constant a4 and polynomial a6.
    static Curve generic(FieldPtr k, Elem a4, Poly a6)
    {
        if (!a6.field()->same_as(*k))
            throw ContextMismatch("a6 is not over the constant field");
        Curve c;
        c.k = std::move(k);
        c.a4 = a4;
        c.a6 = std::move(a6);
        return c;
    }

    RatFn rhs(const RatFn& x) const
    {
        return x * x * x + x.scaled(a4) + RatFn(a6);
    }

    /// Discriminant -16(4 a4^3 + 27 a6^2) of the affine model, a polynomial in t.
    Poly affine_discriminant() const
    {
        const Poly a4p = Poly::constant(k, a4);
        const Poly inner = (a4p * a4p * a4p).scaled(k->from_int(4)) + (a6 * a6).scaled(k->from_int(27));
        return inner.scaled(k->from_int(-16));
    }

    /// True when the affine model has good reduction at every finite place.
    bool good_away_from_infinity() const
    {
        const Poly d = affine_discriminant();
        return d.degree() == 0;
    }

    std::string to_string() const
    {
        return "y^2 = x^3 + (" + k->format(a4) + ")*x + " + a6.to_string() + " over " + k->description();
    }
};

class Point
{
public:
    static Point identity() { return Point(); }
    Point(RatFn x, RatFn y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {}

    bool is_identity() const noexcept { return inf_; }
    const RatFn& x() const
    {
        if (inf_)
            throw MathError("identity has no affine coordinates");
        return x_;
    }
    const RatFn& y() const
    {
        if (inf_)
            throw MathError("identity has no affine coordinates");
        return y_;
    }

    friend bool operator==(const Point& a, const Point& b)
    {
        if (a.inf_ || b.inf_)
            return a.inf_ == b.inf_;
        return a.x_ == b.x_ && a.y_ == b.y_;
    }

    std::string to_string() const
    {
        if (inf_)
            return "O";
        return "(" + x_.to_string() + " ; " + y_.to_string() + ")";
    }

private:
    Point() = default;
    bool inf_ = true;
    RatFn x_;
    RatFn y_;
};

inline bool on_curve(const Curve& E, const Point& P)
{
    if (P.is_identity())
        return true;
    if (!P.x().field()->same_as(*E.k) || !P.y().field()->same_as(*E.k))
        return false;
    return P.y() * P.y() == E.rhs(P.x());
}

inline Point neg(const Curve&, const Point& P)
{
    if (P.is_identity())
        return P;
    return Point(P.x(), -P.y());
}

/// Doubling slope (3x^2 + a4)/(2y); in characteristic 3 the 3x^2 term vanishes and the slope is a4/(2y).
inline RatFn tangent_slope(const Curve& E, const Point& P)
{
    const RatFn two_y = P.y().scaled(E.k->from_int(2));
    if (E.k->characteristic() == 3)
        return RatFn::constant(E.k, E.a4) / two_y;
    const RatFn three_x2 = (P.x() * P.x()).scaled(E.k->from_int(3));
    return (three_x2 + RatFn::constant(E.k, E.a4)) / two_y;
}

namespace detail
{
inline Point add_unchecked(const Curve& E, const Point& P, const Point& Q)
{
    if (P.is_identity())
        return Q;
    if (Q.is_identity())
        return P;
    RatFn lambda;
    if (P.x() == Q.x())
    {
        if (P.y() == -Q.y())
            return Point::identity();  // also covers 2-torsion doubling
        lambda = tangent_slope(E, P);
    }
    else
        lambda = (Q.y() - P.y()) / (Q.x() - P.x());
    RatFn x3 = lambda * lambda - P.x() - Q.x();
    RatFn y3 = lambda * (P.x() - x3) - P.y();
    return Point(std::move(x3), std::move(y3));
}
}  // namespace detail

inline Point add(const Curve& E, const Point& P, const Point& Q)
{
    if (!on_curve(E, P) || !on_curve(E, Q))
        throw MathError("point is not on " + E.to_string());
    return detail::add_unchecked(E, P, Q);
}

inline Point sub(const Curve& E, const Point& P, const Point& Q)
{
    return add(E, P, neg(E, Q));
}

inline Point dbl(const Curve& E, const Point& P)
{
    return add(E, P, P);
}

/// [k]P by double-and-add.
inline Point mul(const Curve& E, std::int64_t k, const Point& P)
{
    if (!on_curve(E, P))
        throw MathError("point is not on " + E.to_string());
    Point base = k < 0 ? neg(E, P) : P;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
    Point acc = Point::identity();
    while (e != 0)
    {
        if (e & 1u)
            acc = detail::add_unchecked(E, acc, base);
        e >>= 1;
        if (e != 0)
            base = detail::add_unchecked(E, base, base);
    }
    return acc;
}

/// x(2P) from x(P); nullopt when 2P = O.
inline std::optional<RatFn> x_double(const Curve& E, const RatFn& x)
{
    const Field& k = *E.k;
    const Poly& N = x.num();
    const Poly& D = x.den();
    const Poly N2 = N * N;
    const Poly D2 = D * D;
    const Poly D3 = D2 * D;
    const Elem a4 = E.a4;
    // x^4 - 2 a4 x^2 - 8 a6 x + a4^2 over 4 (x^3 + a4 x + a6), homogenised in (N, D).
    Poly num = N2 * N2 - (N2 * D2).scaled(k.mul(k.from_int(2), a4)) - (E.a6 * N * D3).scaled(k.from_int(8)) +
               (D2 * D2).scaled(k.mul(a4, a4));
    Poly den = (D * (N2 * N + (N * D2).scaled(a4) + E.a6 * D3)).scaled(k.from_int(4));
    if (den.is_zero())
        return std::nullopt;
    return RatFn(std::move(num), std::move(den));
}

inline int naive_height(const Point& P)
{
    return P.is_identity() ? 0 : P.x().degree();
}

struct HeightOptions
{
    unsigned m_max = 5;
    double tol = 1e-2;
    int degree_cap = 20000;
};

struct HeightEstimate
{
    unsigned m_used = 0;
    Rational value{0};
    double error_bound = 0.0;
    bool converged = true;
    bool capped = false;  ///< stopped by the degree cap rather than m_max or convergence
    /// h(2^m P) for m = 0..m_used.
    std::vector<int> degrees;

    double as_double() const { return to_double(value); }
};

/// Canonical height as 4^-m h(2^m P), stopping at m_max, at the degree cap, or
/// once two consecutive Cauchy increments fall below tol/4 (tol = 0 disables
/// the early stop). The last increment is reported as the error bound.
inline HeightEstimate canonical_height(const Curve& E, const Point& P, const HeightOptions& opt = {})
{
    if (!on_curve(E, P))
        throw MathError("point is not on " + E.to_string());
    HeightEstimate est;
    if (P.is_identity())
    {
        est.degrees.push_back(0);
        return est;
    }
    RatFn x = P.x();
    int deg = x.degree();
    est.degrees.push_back(deg);
    Rational prev(deg);
    est.value = prev;
    double last_inc = std::numeric_limits<double>::infinity();
    unsigned small_run = 0;
    BigInt scale = 1;
    for (unsigned m = 1; m <= opt.m_max; ++m)
    {
        if (static_cast<std::int64_t>(deg) * 4 + 8 > opt.degree_cap)
        {
            est.capped = true;
            break;
        }
        auto next = x_double(E, x);
        scale *= 4;
        if (!next)
        {
            // 2^m P = O: torsion, canonical height zero.
            est.degrees.push_back(0);
            est.m_used = m;
            est.value = 0;
            est.error_bound = 0.0;
            est.converged = true;
            return est;
        }
        x = std::move(*next);
        deg = x.degree();
        est.degrees.push_back(deg);
        const Rational cur = Rational(deg) / Rational(scale);
        last_inc = std::abs(to_double(cur - prev));
        est.value = cur;
        est.m_used = m;
        prev = cur;
        small_run = (last_inc <= opt.tol / 4) ? small_run + 1 : 0;
        if (opt.tol > 0 && small_run >= 2)
            break;
    }
    est.error_bound = est.m_used == 0 ? std::numeric_limits<double>::infinity() : last_inc;
    est.converged = est.error_bound <= opt.tol;
    if (est.capped && est.m_used == 0)
        throw GuardError("degree cap " + std::to_string(opt.degree_cap) + " reached before the first doubling");
    return est;
}

struct PairingEstimate
{
    double value = 0.0;
    double error_bound = 0.0;
};

/// <P, Q> = (h(P+Q) - h(P) - h(Q)) / 2 with canonical heights.
inline PairingEstimate height_pairing(const Curve& E, const Point& P, const Point& Q, const HeightOptions& opt = {})
{
    const auto hp = canonical_height(E, P, opt);
    const auto hq = canonical_height(E, Q, opt);
    const auto hs = canonical_height(E, add(E, P, Q), opt);
    return {(hs.as_double() - hp.as_double() - hq.as_double()) / 2.0,
            (hs.error_bound + hp.error_bound + hq.error_bound) / 2.0};
}

/// Constants c with a6(c t) = a6(t); t -> c t then maps E(K) to itself.
inline std::vector<Elem> conjugation_factors(const Curve& E)
{
    std::vector<Elem> out;
    if (E.k->size() > (1u << 20))
        throw GuardError("constant field too large to enumerate");
    for (std::uint64_t c = 1; c < E.k->size(); ++c)
    {
        const Elem e{static_cast<std::uint32_t>(c)};
        if (E.a6.scale_variable(e) == E.a6)
            out.push_back(e);
    }
    return out;
}

/// (x(ct), y(ct)); requires a6(ct) = a6(t).
inline Point conjugate(const Curve& E, const Point& P, Elem c)
{
    if (!(E.a6.scale_variable(c) == E.a6))
        throw MathError("t -> c t does not preserve the curve");
    if (P.is_identity())
        return P;
    return Point(P.x().scale_variable(c), P.y().scale_variable(c));
}

inline std::ostream& operator<<(std::ostream& os, const Point& P)
{
    return os << P.to_string();
}

// ---------------------------------------------------------------------------
// The place at infinity.

/// Weierstrass model at t = infinity after (x, y) -> (x t^-2mu, y t^-3mu);
/// coefficients are polynomials in the uniformizer pi = 1/t.
struct InfinityModel
{
    FieldPtr k;
    std::uint32_t n = 0;
    std::int64_t m = 0;   ///< deg a6
    std::int64_t mu = 0;  ///< ceil(m / 6)
    Poly a4;
    Poly a6;
    Poly b2, b4, b6, b8;
    Poly discriminant;

    /// pi-adic valuation of a polynomial in pi (large sentinel for zero).
    static int valuation(const Poly& f) { return f.is_zero() ? std::numeric_limits<int>::max() : f.low_degree(); }
};

inline InfinityModel infinity_model(const Curve& E)
{
    InfinityModel M;
    M.k = E.k;
    M.n = E.n;
    M.m = E.a6.degree() < 0 ? 0 : E.a6.degree();
    M.mu = ceil_div(M.m, 6);
    if (E.n != 0 && 6 * M.mu - M.m != 2)
        throw VerificationError("6 mu - (3^n + 1) = " + std::to_string(6 * M.mu - M.m) + ", expected 2");
    const Field& k = *E.k;
    M.a4 = Poly::monomial(E.k, E.a4, static_cast<std::size_t>(4 * M.mu));
    std::vector<Elem> c(static_cast<std::size_t>(6 * M.mu + 1), Field::zero());
    for (int i = 0; i <= E.a6.degree(); ++i)
        c[static_cast<std::size_t>(6 * M.mu - i)] = E.a6.coeff(static_cast<std::size_t>(i));
    M.a6 = Poly(E.k, std::move(c));
    // a1 = a2 = a3 = 0.
    M.b2 = Poly(E.k);
    M.b4 = M.a4.scaled(k.from_int(2));
    M.b6 = M.a6.scaled(k.from_int(4));
    M.b8 = -(M.a4 * M.a4);
    M.discriminant = (M.b4 * M.b4 * M.b4).scaled(k.from_int(-8)) - (M.b6 * M.b6).scaled(k.from_int(27)) -
                     (M.b2 * M.b2 * M.b8) + (M.b2 * M.b4 * M.b6).scaled(k.from_int(9));
    return M;
}

struct LocalData
{
    std::string kodaira;
    int v_disc = 0;
    int conductor_exponent = 0;
    int tamagawa = 0;
};

/// Runs Tate's algorithm at infinity through step 5 and confirms it stops
/// there with type IV; throws VerificationError naming the failed step.
inline LocalData tate_type_iv_check(const InfinityModel& M)
{
    const Field& k = *M.k;
    const int v_disc = InfinityModel::valuation(M.discriminant);
    if (v_disc == 0)
        throw VerificationError("step 1: good reduction at infinity, not type IV");
    // Step 2: the singular point of the reduction must be (0, 0): pi | a4, pi | a6.
    if (InfinityModel::valuation(M.a4) < 1 || InfinityModel::valuation(M.a6) < 1)
        throw VerificationError("step 2: singular point of the reduction is not (0, 0)");
    if (InfinityModel::valuation(M.b2) < 1)
        throw VerificationError("step 2: pi does not divide b2 (multiplicative reduction)");
    if (InfinityModel::valuation(M.a6) < 2)
        throw VerificationError("step 3: pi^2 does not divide a6 (type II)");
    if (InfinityModel::valuation(M.b8) < 3)
        throw VerificationError("step 4: pi^3 does not divide b8 (type III)");
    if (InfinityModel::valuation(M.b6) >= 3)
        throw VerificationError("step 5: pi^3 divides b6 (algorithm continues past type IV)");
    // Tamagawa number: 3 if Y^2 + a3,1 Y - a6,2 splits over the residue field (a3 = 0 here).
    const Elem a62 = M.a6.coeff(2);
    const int c = k.is_square(a62) ? 3 : 1;
    return LocalData{"IV", v_disc, v_disc - 2, c};
}

/// Degree of the minimal discriminant divisor: finite part plus the order at infinity.
inline int discriminant_degree(const Curve& E, const InfinityModel& M)
{
    return std::max(E.affine_discriminant().degree(), 0) + InfinityModel::valuation(M.discriminant);
}

enum class ReductionKind
{
    identity,
    smooth,
    singular
};

struct Reduction
{
    ReductionKind kind = ReductionKind::identity;
    Elem x{};
    Elem y{};
};

inline Reduction reduce_at_infinity(const Curve& E, const Point& P, const InfinityModel& M)
{
    if (P.is_identity())
        return {};
    const RatFn xs = P.x().mul_t_power(static_cast<int>(-2 * M.mu));
    const RatFn ys = P.y().mul_t_power(static_cast<int>(-3 * M.mu));
    if (!xs.is_zero() && xs.valuation_at_infinity() < 0)
        return {};  // pole: reduces to the identity
    Reduction r;
    r.x = xs.value_at_infinity();
    r.y = ys.value_at_infinity();
    const Field& k = *E.k;
    const Elem a4 = M.a4.coeff(0);
    const Elem a6 = M.a6.coeff(0);
    // (x, y) is singular on y^2 = f(x) iff y = 0 and f(x) = f'(x) = 0.
    const Elem fx = k.add(k.add(k.mul(k.sqr(r.x), r.x), k.mul(a4, r.x)), a6);
    const Elem dfx = k.add(k.mul(k.from_int(3), k.sqr(r.x)), a4);
    r.kind = (r.y.code == 0 && fx.code == 0 && dfx.code == 0) ? ReductionKind::singular : ReductionKind::smooth;
    return r;
}

/// Membership in the narrow Mordell-Weil lattice; requires good reduction away from infinity.
inline bool is_narrow(const Curve& E, const Point& P)
{
    if (!E.good_away_from_infinity())
        throw std::invalid_argument("narrow membership implemented only for curves with good finite reduction");
    if (!on_curve(E, P))
        throw MathError("point is not on " + E.to_string());
    return reduce_at_infinity(E, P, infinity_model(E)).kind != ReductionKind::singular;
}

// ---------------------------------------------------------------------------
// Explicit points.

struct NamedPoint
{
    std::string name;
    Point point;
};

struct ExplicitPoints
{
    Curve curve;
    std::vector<NamedPoint> points;
};

namespace detail
{
inline Poly ints_poly(const FieldPtr& k, std::initializer_list<std::pair<std::size_t, std::int64_t>> terms)
{
    Poly out(k);
    for (auto [d, c] : terms)
        out = out + Poly::monomial(k, k->from_int(c), d);
    return out;
}
}  // namespace detail

/// Q_n = (0, t^((3^n+1)/2)) on a family curve.
inline Point q_point(const Curve& E)
{
    const std::size_t e = static_cast<std::size_t>((checked_pow(3, E.n) + 1) / 2);
    return Point(RatFn(Poly(E.k)), RatFn(Poly::monomial(E.k, Field::one(), e)));
}

/// The minimal narrow points P_1, P_2, P_3 (n <= 3) and Q_n, validated on their curve.
inline ExplicitPoints explicit_points(std::uint32_t n)
{
    if (n == 0)
        throw std::invalid_argument("n must be >= 1");
    ExplicitPoints out;
    if (n == 2)
    {
        // F_9 = F_3[X]/(X^2 - X - 1), b = z = class of X.
        const auto f9 = f9_presentation();
        out.curve = Curve::family(2, FieldElement(f9, f9->x()));
        const auto& k = out.curve.k;
        const Elem z = out.curve.a4;
        const Elem z1 = k->add(z, Field::one());
        Poly x = detail::ints_poly(k, {{4, 1}, {0, -1}}) + Poly::monomial(k, z1, 2);
        Poly y = detail::ints_poly(k, {{6, -1}, {4, 1}, {2, -1}, {0, 1}}) - Poly::constant(k, z);
        out.points.push_back({"P2", Point(RatFn(x), RatFn(y))});
    }
    else
    {
        out.curve = Curve::family(n, choose_b(n));
        const auto& k = out.curve.k;
        if (n == 1)
            out.points.push_back(
                {"P1", Point(RatFn(detail::ints_poly(k, {{2, 1}})), RatFn(detail::ints_poly(k, {{3, -1}, {1, 1}})))});
        else if (n == 3)
            out.points.push_back(
                {"P3", Point(RatFn(detail::ints_poly(k, {{10, 1}, {8, 1}, {2, 1}})),
                             RatFn(detail::ints_poly(k, {{15, -1}, {13, 1}, {11, -1}, {7, -1}, {5, -1}, {1, 1}})))});
    }
    out.points.push_back({"Q" + std::to_string(n), q_point(out.curve)});
    for (const auto& np : out.points)
        if (!on_curve(out.curve, np.point))
            throw VerificationError(np.name + " is not on " + out.curve.to_string());
    return out;
}

}  // namespace mwl3

// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*
 * BSD bookkeeping and the sphere-packing bound for the narrow Mordell-Weil
 * lattice L_n = E_{n,b}(K)^0.
 *
 * With L = (1 - |k|T)^r the special value is 1 and |Sha| >= 1 gives
 *   Reg <= |tors|^2 |k|^(g_X - 1) H / c,      H = |k|^(Delta/12),
 * the minimal norm is >= Delta/6, and
 *   delta(L_n) >= (Delta/24)^(r/2) / (c^(1/2) |tors| |k|^(g_X/2 - 1/2) H^(1/2)).
 *
 * Exponents reach the thousands, so every quantity is kept as an exact
 * combination of log2 of primes and only evaluated at the boundary.
 */

#include "curve.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mwl3
{
using HighFloat = boost::multiprecision::cpp_dec_float_50;

/// sum_p e_p log2(p): the log2 of prod p^(e_p) with rational exponents.
class LogQuantity
{
public:
    LogQuantity() = default;

    /// log2 of a positive rational.
    static LogQuantity log2_of(const Rational& v)
    {
        if (v <= 0)
            throw std::invalid_argument("log of a non-positive number");
        LogQuantity out;
        for (const auto& [p, k] : factorize(boost::multiprecision::numerator(v)))
            out.add_term(p, Rational(k));
        for (const auto& [p, k] : factorize(boost::multiprecision::denominator(v)))
            out.add_term(p, -Rational(k));
        return out;
    }

    /// e * log2(p) for a prime p.
    static LogQuantity log2_prime(std::uint64_t p, const Rational& e)
    {
        if (!is_prime(p))
            throw std::invalid_argument("log2_prime expects a prime");
        LogQuantity out;
        out.add_term(BigInt(p), e);
        return out;
    }

    static LogQuantity constant(const Rational& a) { return log2_prime(2, a); }

    friend LogQuantity operator+(LogQuantity a, const LogQuantity& b)
    {
        for (const auto& [p, e] : b.terms_)
            a.add_term(p, e);
        return a;
    }
    friend LogQuantity operator-(LogQuantity a, const LogQuantity& b)
    {
        for (const auto& [p, e] : b.terms_)
            a.add_term(p, -e);
        return a;
    }
    friend LogQuantity operator*(const Rational& s, LogQuantity a)
    {
        if (s == 0)
            return {};
        for (auto& [p, e] : a.terms_)
            e *= s;
        return a;
    }
    LogQuantity operator-() const { return Rational(-1) * *this; }

    friend bool operator==(const LogQuantity& a, const LogQuantity& b) { return a.terms_ == b.terms_; }

    /// Exponent of the prime p (the rational part when p = 2).
    Rational exponent(std::uint64_t p) const
    {
        auto it = terms_.find(BigInt(p));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const std::map<BigInt, Rational>& terms() const noexcept { return terms_; }

    HighFloat eval_high() const
    {
        HighFloat acc = 0;
        for (const auto& [p, e] : terms_)
        {
            const HighFloat num(boost::multiprecision::numerator(e).str());
            const HighFloat den(boost::multiprecision::denominator(e).str());
            if (p == 2)
                acc += num / den;
            else
                acc += num / den * boost::multiprecision::log(HighFloat(p.str())) / boost::multiprecision::log(HighFloat(2));
        }
        return acc;
    }

    double eval() const
    {
        double acc = 0;
        for (const auto& [p, e] : terms_)
            acc += to_double(e) * (p == 2 ? 1.0 : std::log2(p.convert_to<double>()));
        return acc;
    }

    /// "a + b*log2(3) + ..." with the rational part first.
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [p, e] : terms_)
        {
            if (!out.empty())
                out += " + ";
            out += p == 2 ? mwl3::to_string(e) : "(" + mwl3::to_string(e) + ")*log2(" + p.str() + ")";
        }
        return out;
    }

    /// "2^a * 3^b" exponent form of the underlying number.
    std::string power_form() const
    {
        if (terms_.empty())
            return "1";
        std::string out;
        for (const auto& [p, e] : terms_)
            out += (out.empty() ? "" : " * ") + p.str() + "^(" + mwl3::to_string(e) + ")";
        return out;
    }

    /// "sqrt(m)*a/b" when every exponent is a half-integer and the integers stay printable.
    std::optional<std::string> radical_form(std::uint64_t max_digits = 60) const
    {
        BigInt rad = 1, num = 1, den = 1;
        for (const auto& [p, e] : terms_)
        {
            const BigInt d = boost::multiprecision::denominator(e);
            if (d != 1 && d != 2)
                return std::nullopt;
            Rational rest = e;
            if (d == 2)
            {
                rad *= p;
                rest -= Rational(1, 2);
            }
            const BigInt k = boost::multiprecision::numerator(rest);
            if (boost::multiprecision::abs(k) > 4 * max_digits)
                return std::nullopt;
            const auto kk = static_cast<std::uint64_t>(boost::multiprecision::abs(k).convert_to<std::uint64_t>());
            (k >= 0 ? num : den) *= big_pow(p, kk);
        }
        if (num.str().size() > max_digits || den.str().size() > max_digits)
            return std::nullopt;
        std::string out;
        if (rad != 1)
            out = "√" + rad.str();
        if (num != 1 || out.empty())
            out += (out.empty() ? "" : "*") + num.str();
        if (den != 1)
            out += "/" + den.str();
        return out;
    }

private:
    void add_term(const BigInt& p, const Rational& e)
    {
        auto& slot = terms_[p];
        slot += e;
        if (slot == 0)
            terms_.erase(p);
    }

    std::map<BigInt, Rational> terms_;
};

// ---------------------------------------------------------------------------

enum class RankSource
{
    fully_verified,      ///< L reconstructed exactly from counted sums (n = 1)
    partially_verified,  ///< leading sums checked, rank taken from the theorem (n = 2, 3)
    asserted             ///< rank taken from the theorem without counting
};

inline std::string to_string(RankSource s)
{
    switch (s)
    {
    case RankSource::fully_verified:
        return "verified";
    case RankSource::partially_verified:
        return "partially-verified";
    case RankSource::asserted:
        return "asserted";
    }
    return "?";
}

struct CurveInvariants
{
    std::uint32_t n = 0;
    BigInt k_size;               ///< 3^(2n)
    int genus_base = 0;          ///< g_X
    BigInt disc_degree;          ///< 2(3^n + 3)
    BigInt conductor_degree;     ///< disc_degree - 2
    BigInt tamagawa = 3;
    BigInt torsion = 1;
    Rational height_exponent;    ///< H = 3^height_exponent
    BigInt rank;                 ///< 2 * 3^n
    Rational special_value = 1;
    RankSource rank_source = RankSource::asserted;

    /// log2 H
    LogQuantity log2_height() const { return LogQuantity::log2_prime(3, height_exponent); }
};

inline RankSource default_rank_source(std::uint32_t n)
{
    return n == 1 ? RankSource::fully_verified : (n <= 3 ? RankSource::partially_verified : RankSource::asserted);
}

/// Invariants of E_{n,b}; for n <= 4 the discriminant, conductor and Tamagawa data are re-derived from Tate's algorithm.
inline CurveInvariants invariants(std::uint32_t n, bool cross_check = true)
{
    if (n == 0)
        throw std::invalid_argument("n must be >= 1");
    if (n > 30)
        throw GuardError("n too large");
    CurveInvariants inv;
    inv.n = n;
    const BigInt q = big_pow(3, n);
    inv.k_size = q * q;
    inv.disc_degree = 2 * (q + 3);
    inv.conductor_degree = inv.disc_degree - 2;
    inv.rank = 2 * q;
    // H = |k|^(Delta/12) = 3^(2n (3^n+3)/6); the exponent is an integer since 3 | 3^n + 3.
    inv.height_exponent = Rational(2 * BigInt(n) * inv.disc_degree, BigInt(12));
    if (!is_integer(inv.height_exponent))
        throw VerificationError("height exponent " + to_string(inv.height_exponent) + " is not integral");
    inv.rank_source = default_rank_source(n);
    if (cross_check && n <= 4)
    {
        const Curve E = Curve::family(n, choose_b(n));
        const auto M = infinity_model(E);
        const auto L = tate_type_iv_check(M);
        if (BigInt(discriminant_degree(E, M)) != inv.disc_degree || BigInt(L.conductor_exponent) != inv.conductor_degree ||
            BigInt(L.tamagawa) != inv.tamagawa)
            throw VerificationError("local data at infinity disagree with the invariants for n = " + std::to_string(n));
    }
    return inv;
}

struct RegulatorBound
{
    BigInt exponent_of_3;  ///< Reg <= 3^exponent
    Rational value;        ///< exact bound
    LogQuantity log2;
};

/// Reg <= |tors|^2 |k|^(g_X - 1) H / c.
inline RegulatorBound regulator_upper(const CurveInvariants& inv)
{
    const LogQuantity lq = 2 * LogQuantity::log2_of(Rational(inv.torsion)) +
                           Rational(inv.genus_base - 1) * LogQuantity::log2_of(Rational(inv.k_size)) +
                           inv.log2_height() - LogQuantity::log2_of(Rational(inv.tamagawa));
    RegulatorBound r;
    r.log2 = lq;
    const Rational e3 = lq.exponent(3);
    if (!is_integer(e3) || lq.terms().size() > 1)
        throw VerificationError("regulator bound is not a power of 3");
    r.exponent_of_3 = boost::multiprecision::numerator(e3);
    const BigInt mag = big_pow(3, boost::multiprecision::abs(r.exponent_of_3).convert_to<std::uint64_t>());
    r.value = r.exponent_of_3 >= 0 ? Rational(mag) : Rational(BigInt(1), mag);
    return r;
}

inline RegulatorBound regulator_upper(std::uint32_t n)
{
    return regulator_upper(invariants(n));
}

/// Minimal norm of the narrow lattice: h(P) >= Delta/6 = 3^(n-1) + 1.
inline Rational min_norm_lower(const CurveInvariants& inv)
{
    return Rational(inv.disc_degree, BigInt(6));
}

inline Rational min_norm_lower(std::uint32_t n)
{
    return min_norm_lower(invariants(n, false));
}

struct DensityReport
{
    std::uint32_t n = 0;
    BigInt rank;
    RankSource rank_source = RankSource::asserted;
    Rational min_norm;
    RegulatorBound regulator;
    LogQuantity log2_covolume_upper;  ///< log2 of the narrow-lattice covolume bound
    LogQuantity log2_density;         ///< closed form
    LogQuantity log2_density_chain;   ///< through the general formula
    bool pipelines_agree = false;
    double value = 0.0;               ///< log2 delta as a double
    std::optional<double> table_value;
    std::optional<std::string> table_text;
};

/// Closed form: 3^n log2((3^(n-1)+1)/4) - 1/2 log2 3 - n(3^(n-1)-1)/2 log2 3.
inline LogQuantity density_closed_form(std::uint32_t n)
{
    const BigInt q1 = big_pow(3, n - 1);
    return Rational(big_pow(3, n)) * LogQuantity::log2_of(Rational(q1 + 1, BigInt(4))) -
           LogQuantity::log2_prime(3, Rational(1, 2)) -
           LogQuantity::log2_prime(3, Rational(BigInt(n) * (q1 - 1), BigInt(2)));
}

struct TableEntry
{
    std::uint32_t n;
    double value;
    const char* text;
    const char* literature_value;
    const char* literature_source;
};

/// The six published lower bounds and the best lattice packings they were compared with
/// (literature values, echoed rather than computed).
inline const std::vector<TableEntry>& published_table()
{
    static const std::vector<TableEntry> rows = {
        {1, -3.79248, "-3.79248", "1/(8*sqrt(3)) [E6]", "Conway-Sloane, SPLAG, p. xix"},
        {2, -3.962406, "-3.962406", "-3.79248", "Conway-Sloane, SPLAG, p. xix"},
        {3, 15.88002, "15.88002", "15.88", "Elkies, in Conway-Sloane, SPLAG, p. xviii"},
        {4, 144.1852, "144.1852", "130.679", "Craig refinement"},
        {5, 741.1001, "741.1001", "703.05", "Ball, lower bound on packing density"},
        {6, 3172.032, "3172.032", "3236.6", "Ball, lower bound on packing density"},
    };
    return rows;
}

inline std::optional<TableEntry> published_entry(std::uint32_t n)
{
    for (const auto& e : published_table())
        if (e.n == n)
            return e;
    return std::nullopt;
}

/// Agreement with a printed value: within one unit of its last printed decimal (capped at 1e-4).
inline bool matches_printed(double computed, const std::string& text)
{
    const auto dot = text.find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
    const double tol = std::pow(10.0, -std::min(decimals, 4));
    return std::abs(computed - std::stod(text)) < tol;
}

inline DensityReport center_density_lower(const CurveInvariants& inv)
{
    DensityReport d;
    d.n = inv.n;
    d.rank = inv.rank;
    d.rank_source = inv.rank_source;
    d.min_norm = min_norm_lower(inv);
    d.regulator = regulator_upper(inv);
    const LogQuantity log2_c = LogQuantity::log2_of(Rational(inv.tamagawa));
    const LogQuantity log2_tors = LogQuantity::log2_of(Rational(inv.torsion));
    const LogQuantity log2_k = LogQuantity::log2_of(Rational(inv.k_size));
    // covol(L_n) = [E(K) : L_n] Reg^(1/2) <= c (Reg bound)^(1/2).
    d.log2_covolume_upper = log2_c + Rational(1, 2) * d.regulator.log2;
    d.log2_density_chain = Rational(inv.rank, BigInt(2)) * LogQuantity::log2_of(Rational(inv.disc_degree, BigInt(24))) -
                           Rational(1, 2) * log2_c - log2_tors -
                           Rational(inv.genus_base - 1, 2) * log2_k - Rational(1, 2) * inv.log2_height();
    d.log2_density = density_closed_form(inv.n);
    d.pipelines_agree = d.log2_density == d.log2_density_chain;
    // The packing bound itself: (sqrt(min norm)/2)^r / covolume.
    const LogQuantity from_parts = Rational(inv.rank, BigInt(2)) * LogQuantity::log2_of(d.min_norm / 4) -
                                   d.log2_covolume_upper;
    if (!(from_parts == d.log2_density_chain))
        throw VerificationError("density chain inconsistent with its minimal-norm and covolume parts");
    if (!d.pipelines_agree)
        throw VerificationError("closed form and general formula disagree for n = " + std::to_string(inv.n) + ": " +
                                d.log2_density.to_string() + " vs " + d.log2_density_chain.to_string());
    d.value = d.log2_density.eval();
    if (auto e = published_entry(inv.n))
    {
        d.table_value = e->value;
        d.table_text = e->text;
    }
    return d;
}

inline DensityReport center_density_lower(std::uint32_t n)
{
    return center_density_lower(invariants(n));
}

struct DensityRow
{
    std::uint32_t n = 0;
    BigInt rank;
    double log2_density = 0.0;
    double asymptotic_reference = 0.0;  ///< (1/2 - 1/12) r log2 r
    std::optional<TableEntry> published;
    bool matches_published = true;
};

inline std::vector<DensityRow> density_table(std::uint32_t n_max)
{
    if (n_max == 0)
        throw std::invalid_argument("max n must be >= 1");
    if (n_max > 8)
        throw GuardError("density table supports n <= 8");
    std::vector<DensityRow> rows;
    for (std::uint32_t n = 1; n <= n_max; ++n)
    {
        const auto rep = center_density_lower(n);
        DensityRow row;
        row.n = n;
        row.rank = rep.rank;
        row.log2_density = rep.value;
        const double r = rep.rank.convert_to<double>();
        row.asymptotic_reference = (0.5 - 1.0 / 12.0) * r * std::log2(r);
        row.published = published_entry(n);
        if (row.published)
            row.matches_published = matches_printed(row.log2_density, row.published->text);
        rows.push_back(row);
    }
    return rows;
}

struct NarrowRatio
{
    std::uint32_t n = 0;
    Rational base;      ///< 1 - 2/(3^n + 3)
    BigInt exponent;    ///< 3^n
    double value = 0.0; ///< 3 * base^exponent
    double limit = 0.0; ///< 3 e^-2
};

/// Upper bound 3 (1 - 2/(3^n+3))^(3^n) on delta(E(K)) / delta(L_n), from the index 3 and h(Q_n) = Delta/6 - 2/3.
inline NarrowRatio narrow_vs_full_ratio(std::uint32_t n)
{
    if (n == 0)
        throw std::invalid_argument("n must be >= 1");
    const auto inv = invariants(n, false);
    NarrowRatio r;
    r.n = n;
    const Rational m = min_norm_lower(inv);
    r.base = (m - Rational(2, 3)) / m;
    r.exponent = big_pow(3, n);
    const HighFloat exact_base = HighFloat(boost::multiprecision::numerator(r.base).str()) /
                                 HighFloat(boost::multiprecision::denominator(r.base).str());
    r.value = static_cast<double>(3 * boost::multiprecision::pow(exact_base, HighFloat(r.exponent.str())));
    r.limit = 3.0 * std::exp(-2.0);
    return r;
}

/// |Sha| * Reg = (1/3) (3^(2n))^(-1 + Delta/12), exactly.
inline Rational sha_regulator_constraint(std::uint32_t n)
{
    const auto inv = invariants(n, false);
    const Rational e = Rational(2 * BigInt(n)) * (Rational(inv.disc_degree, BigInt(12)) - 1) - 1;
    if (!is_integer(e))
        throw VerificationError("non-integral exponent");
    const BigInt k = boost::multiprecision::numerator(e);
    const BigInt mag = big_pow(3, boost::multiprecision::abs(k).convert_to<std::uint64_t>());
    return k >= 0 ? Rational(mag) : Rational(BigInt(1), mag);
}

struct MinNormSearch
{
    std::uint32_t n = 0;
    Rational bound;                  ///< 3^(n-1) + 1
    std::size_t generated = 0;       ///< distinct points before the narrow filter
    std::size_t narrow_checked = 0;  ///< nonzero narrow points whose height was computed
    double min_height = 0.0;
    double min_error_bound = 0.0;
    std::string argmin;
    bool all_above = false;          ///< every checked height >= bound - tol
};

/// Observed minimum of h over nonzero narrow points built from the explicit points by negation,
/// conjugation t -> ct and sums of at most two of them. Reports, never asserts sharpness.
///
/// Conjugation and negation are automorphisms commuting with the group law and preserving h,
/// so it suffices to take the first summand up to that symmetry.
inline MinNormSearch minimal_norm_search(std::uint32_t n, double tol = 1e-2, const HeightOptions& opt = {})
{
    const auto pp = explicit_points(n);
    const auto& E = pp.curve;
    const auto cs = conjugation_factors(E);
    struct Named
    {
        std::string name;
        Point P;
    };
    std::vector<Named> orbit;
    for (const auto& np : pp.points)
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (int sign : {1, -1})
            {
                Point R = conjugate(E, np.point, cs[i]);
                if (sign < 0)
                    R = neg(E, R);
                orbit.push_back({(sign < 0 ? "-" : "") + np.name + "^c" + std::to_string(i), std::move(R)});
            }

    MinNormSearch out;
    out.n = n;
    out.bound = min_norm_lower(n);
    out.min_height = std::numeric_limits<double>::infinity();
    std::vector<Point> seen;
    auto consider = [&](const std::string& name, const Point& P) {
        if (P.is_identity() || std::find(seen.begin(), seen.end(), P) != seen.end())
            return;
        seen.push_back(P);
        if (!is_narrow(E, P))
            return;
        ++out.narrow_checked;
        const auto est = canonical_height(E, P, opt);
        if (est.as_double() < out.min_height)
        {
            out.min_height = est.as_double();
            out.min_error_bound = est.error_bound;
            out.argmin = name;
        }
    };
    for (const auto& a : orbit)
        consider(a.name, a.P);
    for (const auto& first : pp.points)
        for (const auto& b : orbit)
            consider(first.name + " + " + b.name, add(E, first.point, b.P));
    out.generated = seen.size();
    out.all_above = out.narrow_checked > 0 && out.min_height >= to_double(out.bound) - tol;
    return out;
}

}  // namespace mwl3

// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// L-functions L(E/K, T) in Z[T] assembled from the sums S(j) through
// log L = sum_j S(j) T^j / j. Everything here is exact.

#include "counting.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace mwl3
{
/// Integer polynomial in T together with the size |k| of the constant field.
struct LPoly
{
    BigInt k_size;
    std::vector<BigInt> c;  ///< c[0] = 1

    int degree() const
    {
        for (std::size_t i = c.size(); i-- > 0;)
            if (c[i] != 0)
                return static_cast<int>(i);
        return -1;
    }

    BigInt coeff(std::size_t i) const { return i < c.size() ? c[i] : BigInt(0); }

    /// Coefficient-wise equality after dropping trailing zeros.
    friend bool operator==(const LPoly& a, const LPoly& b)
    {
        const std::size_t m = std::max(a.c.size(), b.c.size());
        for (std::size_t i = 0; i < m; ++i)
            if (a.coeff(i) != b.coeff(i))
                return false;
        return a.k_size == b.k_size;
    }

    std::string to_string() const
    {
        std::string out = "[";
        for (std::size_t i = 0; i < c.size(); ++i)
            out += (i ? ", " : "") + c[i].str();
        return out + "]";
    }
};

/// Truncated log L = sum_{j=1}^{J} S_j T^j / j.
struct LogSeries
{
    std::vector<BigInt> sums;  ///< S_1..S_J

    std::size_t order() const noexcept { return sums.size(); }
    Rational coeff(std::size_t j) const
    {
        if (j == 0 || j > sums.size())
            return Rational(0);
        return Rational(sums[j - 1], BigInt(j));
    }
};

/// 1 - a T^d + |k|^d T^(2d) at a good place, 1 - a T^d at a bad one.
inline std::vector<BigInt> local_factor(const BigInt& a_v, unsigned deg_v, bool good, const BigInt& k_size)
{
    if (deg_v == 0)
        throw std::invalid_argument("place degree must be positive");
    std::vector<BigInt> f(good ? 2 * deg_v + 1 : deg_v + 1, BigInt(0));
    f[0] = 1;
    f[deg_v] = -a_v;
    if (good)
    {
        const BigInt norm = big_pow(k_size, deg_v);
        if (a_v * a_v > 4 * norm)
            throw VerificationError("Hasse bound violated: a_v = " + a_v.str() + ", |F_v| = " + norm.str());
        f[2 * deg_v] = norm;
    }
    else if (a_v < -1 || a_v > 1)
        throw VerificationError("bad place with a_v = " + a_v.str() + " outside {-1, 0, 1}");
    return f;
}

/// exp of the log series: k c_k = sum_{j=1}^{k} S_j c_{k-j}; every c_k must be an integer.
inline LPoly l_from_sums(const std::vector<BigInt>& sums, const BigInt& k_size)
{
    if (sums.empty())
        throw std::invalid_argument("need at least S_1");
    const std::size_t J = sums.size();
    LPoly L{k_size, std::vector<BigInt>(J + 1, BigInt(0))};
    L.c[0] = 1;
    for (std::size_t k = 1; k <= J; ++k)
    {
        BigInt acc = 0;
        for (std::size_t j = 1; j <= k; ++j)
            acc += sums[j - 1] * L.c[k - j];
        if (acc % k != 0)
            throw MathError("coefficient of T^" + std::to_string(k) + " is " + to_string(Rational(acc, BigInt(k))) +
                            ", not an integer: the sums are inconsistent");
        L.c[k] = acc / k;
    }
    return L;
}

/// Inverse of l_from_sums: S_k = k c_k - sum_{j=1}^{k-1} S_j c_{k-j}.
inline std::vector<BigInt> sums_from_l(const LPoly& L, std::size_t J)
{
    if (L.c.empty() || L.c[0] != 1)
        throw std::invalid_argument("L(0) must be 1");
    std::vector<BigInt> S(J);
    for (std::size_t k = 1; k <= J; ++k)
    {
        BigInt acc = BigInt(k) * L.coeff(k);
        for (std::size_t j = 1; j < k; ++j)
            acc -= S[j - 1] * L.coeff(k - j);
        S[k - 1] = acc;
    }
    return S;
}

/// (1 - q^2 T)^(2 * 3^n) with q = 3^n.
inline LPoly expected_l(std::uint32_t n)
{
    if (n == 0)
        throw std::invalid_argument("n must be >= 1");
    const std::uint64_t q = checked_pow(3, n);
    const BigInt k_size = BigInt(q) * q;
    const std::uint64_t r = 2 * q;
    LPoly L{k_size, {}};
    BigInt binom = 1, pw = 1;
    for (std::uint64_t i = 0; i <= r; ++i)
    {
        L.c.push_back(binom * pw);
        binom = binom * (r - i) / (i + 1);
        pw *= -k_size;
    }
    return L;
}

struct RankReport
{
    unsigned rank = 0;
    Rational special_value{0};  ///< L(T)/(1 - |k|T)^rank at T = 1/|k|
};

/// Order of vanishing at T = 1/|k| by exact division by (1 - |k| T), and the leading value there.
inline RankReport analytic_rank(const LPoly& L)
{
    if (L.degree() < 0)
        throw std::invalid_argument("L must be nonzero");
    std::vector<BigInt> p(L.c.begin(), L.c.begin() + L.degree() + 1);
    const BigInt a = L.k_size;
    RankReport r;
    while (p.size() > 1)
    {
        // p = (1 - aT) s: s_i = p_i + a s_{i-1}, and p_D = -a s_{D-1} must hold.
        std::vector<BigInt> s(p.size() - 1);
        BigInt prev = 0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            prev = s[i] = p[i] + a * prev;
        if (p.back() != -a * s.back())
            break;
        p = std::move(s);
        ++r.rank;
    }
    Rational v = 0, x = Rational(BigInt(1), a), pw = 1;
    for (const auto& ci : p)
    {
        v += Rational(ci) * pw;
        pw *= x;
    }
    r.special_value = v;
    return r;
}

namespace detail
{
using QPoly = std::vector<Rational>;  // constant term first

inline void q_trim(QPoly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

inline QPoly q_rem(QPoly a, const QPoly& b)
{
    q_trim(a);
    while (a.size() >= b.size() && !a.empty())
    {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= f * b[i];
        q_trim(a);
    }
    return a;
}

inline QPoly q_div(QPoly a, const QPoly& b)
{
    q_trim(a);
    if (a.size() < b.size())
        return {};
    QPoly out(a.size() - b.size() + 1);
    while (a.size() >= b.size() && !a.empty())
    {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        out[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= f * b[i];
        q_trim(a);
    }
    return out;
}

inline QPoly q_gcd(QPoly a, QPoly b)
{
    q_trim(a);
    q_trim(b);
    while (!b.empty())
    {
        QPoly r = q_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Durand-Kerner on a squarefree polynomial with rational coefficients.
inline std::vector<std::complex<long double>> dk_roots(const QPoly& f)
{
    const std::size_t d = f.size() - 1;
    std::vector<std::complex<long double>> coef(d + 1);
    const long double lead = f.back().convert_to<long double>();
    for (std::size_t i = 0; i <= d; ++i)
        coef[i] = f[i].convert_to<long double>() / lead;
    auto eval = [&](std::complex<long double> z) {
        std::complex<long double> v = 0;
        for (std::size_t i = d + 1; i-- > 0;)
            v = v * z + coef[i];
        return v;
    };
    // Start on a circle of the Cauchy-bound radius.
    long double radius = 1;
    for (std::size_t i = 0; i < d; ++i)
        radius = std::max(radius, 1 + std::abs(coef[i]));
    std::vector<std::complex<long double>> z(d);
    for (std::size_t i = 0; i < d; ++i)
        z[i] = std::polar(radius, static_cast<long double>(2 * M_PI * i / d + 0.4));
    for (int it = 0; it < 2000; ++it)
    {
        long double move = 0;
        for (std::size_t i = 0; i < d; ++i)
        {
            std::complex<long double> den = 1;
            for (std::size_t k = 0; k < d; ++k)
                if (k != i)
                    den *= z[i] - z[k];
            const auto step = eval(z[i]) / den;
            z[i] -= step;
            move = std::max(move, std::abs(step) / std::max<long double>(1, std::abs(z[i])));
        }
        if (move < 1e-18L)
            break;
    }
    return z;
}
}  // namespace detail

/// |1/root| for every distinct root of L (multiplicities removed by gcd(L, L')).
inline std::vector<double> inverse_root_moduli(const LPoly& L)
{
    detail::QPoly f;
    for (int i = 0; i <= L.degree(); ++i)
        f.emplace_back(L.c[static_cast<std::size_t>(i)]);
    if (f.size() <= 1)
        return {};
    detail::QPoly df;
    for (std::size_t i = 1; i < f.size(); ++i)
        df.push_back(f[i] * Rational(BigInt(i)));
    const auto g = detail::q_gcd(f, df);
    const auto sq = detail::q_div(f, g);
    std::vector<double> out;
    if (sq.size() <= 1)
        return out;
    for (const auto& z : detail::dk_roots(sq))
        out.push_back(static_cast<double>(1.0L / std::abs(z)));
    return out;
}

// ---------------------------------------------------------------------------

struct TheoremARow
{
    std::uint32_t j = 0;
    BigInt computed;              ///< fast path
    std::optional<BigInt> brute;  ///< where the double loop is affordable
    BigInt expected;              ///< -2 q^(1+2j)
    bool pass = false;
    double wall_time_ms = 0.0;
};

struct TheoremAReport
{
    std::uint32_t n = 0;
    std::string b;
    std::vector<TheoremARow> rows;
    std::optional<LPoly> l_poly;  ///< when j_max >= 2 * 3^n
    LPoly expected;
    bool full_match = false;
    int conductor_degree = 0;   ///< deg f(E/K)
    int predicted_degree = 0;   ///< deg f - 4
    bool degree_consistent = false;
    unsigned rank = 0;
    Rational special_value{0};
    /// True when rank and special value come from the reconstructed polynomial,
    /// false when they are read off the predicted one.
    bool rank_from_counts = false;
    std::vector<double> root_moduli;
    bool pass = false;
};

struct VerifyOptions
{
    Guards guards;
    unsigned jobs = 1;
    bool brute_when_affordable = true;
};

/// S_b(n, j) for j = 1..j_max against -2 q^(1+2j), plus the full polynomial when it is determined.
inline TheoremAReport verify_theorem_a(std::uint32_t n, std::uint32_t j_max, const std::optional<FieldElement>& b_in = {},
                                       const VerifyOptions& opt = {})
{
    if (n == 0)
        throw std::invalid_argument("n must be >= 1");
    if (j_max == 0)
        throw std::invalid_argument("j_max must be >= 1");
    const FieldElement b = b_in ? *b_in : choose_b(n);
    require_valid_b(n, b);
    TheoremAReport rep;
    rep.n = n;
    rep.b = b.field()->description() + ":" + b.to_string();
    rep.expected = expected_l(n);

    // Degree prediction from the conductor: only infinity is bad, f = v(Delta) - 2 there.
    const Curve E = Curve::family(n, b);
    const auto M = infinity_model(E);
    const auto local = tate_type_iv_check(M);
    rep.conductor_degree = local.conductor_exponent;
    rep.predicted_degree = rep.conductor_degree - 4;
    rep.degree_consistent = rep.predicted_degree == rep.expected.degree();

    const std::uint64_t q = checked_pow(3, n);
    bool all = true;
    std::vector<BigInt> sums;
    for (std::uint32_t j = 1; j <= j_max; ++j)
    {
        const auto t0 = std::chrono::steady_clock::now();
        const Tower T(n, b, j, opt.guards.single_pass);
        TheoremARow row;
        row.j = j;
        row.computed = s_sum(T, Method::fast, opt.guards, opt.jobs);
        if (opt.brute_when_affordable && T.size() <= opt.guards.double_loop)
            row.brute = s_sum(T, Method::brute, opt.guards, opt.jobs);
        row.expected = -2 * big_pow(BigInt(q), 1 + 2 * std::uint64_t{j});
        row.pass = row.computed == row.expected && (!row.brute || *row.brute == row.expected);
        row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        all = all && row.pass;
        sums.push_back(row.computed);
        rep.rows.push_back(std::move(row));
    }
    if (j_max >= 2 * q)
    {
        rep.l_poly = l_from_sums(sums, BigInt(q) * q);
        // The degree is 2q, so coefficients beyond it must vanish.
        rep.full_match = *rep.l_poly == rep.expected;
        const auto rk = analytic_rank(*rep.l_poly);
        rep.rank = rk.rank;
        rep.special_value = rk.special_value;
        rep.rank_from_counts = true;
        rep.root_moduli = inverse_root_moduli(*rep.l_poly);
        all = all && rep.full_match;
    }
    else
    {
        const auto rk = analytic_rank(rep.expected);
        rep.rank = rk.rank;
        rep.special_value = rk.special_value;
    }
    rep.pass = all && rep.degree_consistent;
    return rep;
}

}  // namespace mwl3

// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*
 * Point counts and character sums attached to E_{n,b}.
 *
 * Throughout, q = 3^n, N = 3^{2nj} is the size of the extension where the
 * j-th sums live, g(x) = x^3 + b x is the additive map whose image has index
 * 3, and lambda is the quadratic character of F_N.
 *
 *   C_{n,b}: v^{q+1} = u^3 + b u        (one point at infinity)
 *   sigma(j, t) = sum_x lambda(g(x) + t)
 *   Gamma(j)    = { w : w^{q+1} in im g }
 *   S(n, j)     = -sum_{w, x} lambda(g(x) + w^{q+1})
 */

#include "curve.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <set>
#include <string>
#include <vector>

namespace mwl3
{
enum class Method
{
    brute,
    fast,
    closed
};

inline std::string to_string(Method m)
{
    switch (m)
    {
    case Method::brute:
        return "brute";
    case Method::fast:
        return "fast";
    case Method::closed:
        return "closed";
    }
    return "?";
}

inline Method parse_method(const std::string& s)
{
    if (s == "brute")
        return Method::brute;
    if (s == "fast")
        return Method::fast;
    if (s == "closed" || s == "closed-form")
        return Method::closed;
    throw std::invalid_argument("unknown method '" + s + "'");
}

/// Enumeration budgets, in field elements.
struct Guards
{
    std::uint64_t single_pass = 531441;  // 3^12
    std::uint64_t double_loop = 6561;    // 3^8, i.e. 3^16 pairs
};

namespace detail
{
inline void guard(std::uint64_t size, std::uint64_t limit, const char* what)
{
    if (size > limit)
        throw GuardError(std::string(what) + ": field of size " + std::to_string(size) + " exceeds the limit " +
                         std::to_string(limit) + " (raise it explicitly to continue)");
}

/// Size of F_{p^e}, or a GuardError if it does not fit the toolkit at all.
inline std::uint64_t field_size(std::uint32_t p, std::uint64_t e)
{
    if (e > 64)
        throw GuardError("extension degree too large");
    return checked_pow(p, e);
}
}  // namespace detail

/// The superelliptic curve C_{n,b}: v^(3^n+1) = u^3 + b u over F_{3^n}.
struct SuperellipticCurve
{
    std::uint32_t n = 0;
    FieldElement b;

    std::uint64_t genus() const { return checked_pow(3, n); }
    const FieldPtr& base_field() const { return b.field(); }
};

/// F_{3^{2nj}} with b and the maps g, w -> w^(q+1) in place.
class Tower
{
public:
    Tower(std::uint32_t n, const FieldElement& b, std::uint32_t j, std::uint64_t limit = Field::kMaxSize)
        : n_(n), j_(j), b_src_(b)
    {
        if (n == 0 || j == 0)
            throw std::invalid_argument("n and j must be >= 1");
        if (b.field()->characteristic() != 3 || b.field()->degree() != n || b.is_zero())
            throw std::invalid_argument("b must be a nonzero element of F_{3^n}");
        const std::uint64_t size = detail::field_size(3, std::uint64_t{2} * n * j);
        detail::guard(size, limit, "extension");
        big_ = make_field(3, 2 * n * j);
        b_ = Embedding::find(b.field(), big_)(b.elem());
        q_ = checked_pow(3, n);
    }

    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t j() const noexcept { return j_; }
    const FieldElement& b() const noexcept { return b_src_; }
    const FieldPtr& field() const noexcept { return big_; }
    Elem b_big() const noexcept { return b_; }
    std::uint64_t q() const noexcept { return q_; }
    std::uint64_t size() const noexcept { return big_->size(); }

    Elem g(Elem x) const noexcept
    {
        const Field& k = *big_;
        return k.add(k.mul(k.sqr(x), x), k.mul(b_, x));
    }

    Elem norm_power(Elem w) const noexcept { return big_->pow(w, q_ + 1); }

    /// (-q)^j
    BigInt minus_q_pow() const { return neg_pow(q_, j_); }

private:
    std::uint32_t n_;
    std::uint32_t j_;
    FieldElement b_src_;
    FieldPtr big_;
    Elem b_{};
    std::uint64_t q_ = 0;
};

/// Bitset of im(g) in F_{3^{2nj}}, indexed by element code.
class ImageMembership
{
public:
    explicit ImageMembership(const Tower& T, const Guards& guards = {})
    {
        detail::guard(T.size(), guards.single_pass, "image membership");
        bits_.assign(T.size(), 0);
        for (std::uint64_t x = 0; x < T.size(); ++x)
            bits_[T.g(Elem{static_cast<std::uint32_t>(x)}).code] = 1;
        for (auto b : bits_)
            count_ += b;
    }

    bool contains(Elem t) const { return bits_.at(t.code) != 0; }
    std::uint64_t image_size() const noexcept { return count_; }
    std::uint64_t field_size() const noexcept { return bits_.size(); }
    /// [F : im g]; the kernel of g has 3 elements, so this is 3.
    std::uint64_t index() const noexcept { return bits_.size() / count_; }

    /// Smallest-code element outside the image.
    Elem first_outside() const
    {
        for (std::uint64_t i = 0; i < bits_.size(); ++i)
            if (!bits_[i])
                return Elem{static_cast<std::uint32_t>(i)};
        throw MathError("g is surjective");
    }

private:
    std::vector<std::uint8_t> bits_;
    std::uint64_t count_ = 0;
};

inline void require_valid_b(std::uint32_t n, const FieldElement& b)
{
    if (!is_valid_b(n, b))
        throw std::invalid_argument("b = " + b.to_string() + " violates b^((3^n-1)/2) = (-1)^(n+1)");
}

// ---------------------------------------------------------------------------
// Superelliptic counts.

/// |C_{n,b}(F_{3^{2nj}})|: brute walks all (u, v) pairs, fast tallies u^3 + b u
/// once and looks up every v^(q+1), closed is 3^{2nj} + 1 - 2 q (-q)^j.
inline BigInt count_superelliptic(std::uint32_t n, const FieldElement& b, std::uint32_t j, Method method,
                                  const Guards& guards = {}, unsigned jobs = 1)
{
    if (method == Method::closed)
    {
        require_valid_b(n, b);
        const std::uint64_t q = checked_pow(3, n);
        return big_pow(3, std::uint64_t{2} * n * j) + 1 - 2 * BigInt(q) * neg_pow(q, j);
    }
    const Tower T(n, b, j, method == Method::brute ? guards.double_loop : guards.single_pass);
    const std::uint64_t N = T.size();
    std::vector<Elem> lhs(N);
    for (std::uint64_t v = 0; v < N; ++v)
        lhs[v] = T.norm_power(Elem{static_cast<std::uint32_t>(v)});
    std::int64_t affine = 0;
    if (method == Method::brute)
    {
        affine = parallel_sum<std::int64_t>(N, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
            std::int64_t c = 0;
            for (std::uint64_t u = lo; u < hi; ++u)
            {
                const Elem gu = T.g(Elem{static_cast<std::uint32_t>(u)});
                for (std::uint64_t v = 0; v < N; ++v)
                    c += lhs[v] == gu;
            }
            return c;
        });
    }
    else
    {
        std::vector<std::uint32_t> hist(N, 0);
        for (std::uint64_t u = 0; u < N; ++u)
            ++hist[T.g(Elem{static_cast<std::uint32_t>(u)}).code];
        for (std::uint64_t v = 0; v < N; ++v)
            affine += hist[lhs[v].code];
    }
    return BigInt(affine) + 1;
}

struct KernelCount
{
    BigInt count;
    unsigned dim_ker_f = 0;   ///< f: x -> x^q - x
    unsigned dim_ker_g = 0;   ///< g_b: x -> x^p + b x
    unsigned dim_ker_fg = 0;  ///< f o g_b
};

namespace detail
{
inline unsigned log_p(std::uint64_t count, std::uint32_t p)
{
    unsigned d = 0;
    while (count > 1)
    {
        if (count % p != 0)
            throw MathError("subspace size is not a power of p");
        count /= p;
        ++d;
    }
    return d;
}
}  // namespace detail

/// Smallest b in F_{p^n} with N(b) = (-1)^(n+1); for p = 3 the twist parameter choose_b(n).
inline FieldElement default_kernel_parameter(std::uint32_t p, std::uint32_t n)
{
    if (p == 3)
        return choose_b(n);
    const auto k = make_field(p, n);
    for (std::uint64_t c = 1; c < k->size(); ++c)
    {
        const FieldElement b(k, Elem{static_cast<std::uint32_t>(c)});
        if (satisfies_norm_hypothesis(b))
            return b;
    }
    throw MathError("no b in F_" + std::to_string(p) + "^" + std::to_string(n) + " satisfies the norm hypothesis");
}

/// #{x in F_{q^2} : x^p + b x in F_q} by enumeration, with the kernel dimensions behind it.
inline KernelCount kernel_count(std::uint32_t p, std::uint32_t n, const FieldElement& b, const Guards& guards = {})
{
    if (!is_prime(p) || p == 2)
        throw std::invalid_argument("p must be an odd prime");
    if (b.field()->characteristic() != p || b.field()->degree() != n || b.is_zero())
        throw std::invalid_argument("b must be a nonzero element of F_{p^n}");
    if (!satisfies_norm_hypothesis(b))
        throw std::invalid_argument("b = " + b.to_string() + " violates N(b) = (-1)^(n+1); the count is not asserted");
    const std::uint64_t size = detail::field_size(p, std::uint64_t{2} * n);
    detail::guard(size, guards.single_pass, "kernel count");
    const auto big = make_field(p, 2 * n);
    const Elem bb = Embedding::find(b.field(), big)(b.elem());
    const std::uint64_t q = checked_pow(p, n);
    std::uint64_t fg = 0, kf = 0, kg = 0;
    for (std::uint64_t c = 0; c < size; ++c)
    {
        const Elem x{static_cast<std::uint32_t>(c)};
        const Elem gx = big->add(big->pow(x, std::uint64_t{p}), big->mul(bb, x));
        fg += big->pow(gx, q) == gx;
        kf += big->pow(x, q) == x;
        kg += gx.code == 0;
    }
    return {BigInt(fg), detail::log_p(kf, p), detail::log_p(kg, p), detail::log_p(fg, p)};
}

// ---------------------------------------------------------------------------
// Character sums.

namespace detail
{
/// sum_x lambda(g(x) + t) over a precomputed table of g.
inline std::int64_t sigma_from_table(const Field& k, const std::vector<Elem>& gtab, Elem t)
{
    std::int64_t s = 0;
    for (const Elem gx : gtab)
        s += k.legendre(k.add(gx, t));
    return s;
}

inline std::vector<Elem> g_table(const Tower& T)
{
    std::vector<Elem> out(T.size());
    for (std::uint64_t x = 0; x < T.size(); ++x)
        out[x] = T.g(Elem{static_cast<std::uint32_t>(x)});
    return out;
}
}  // namespace detail

/// sigma_b(j, t). Enumeration is a single pass, so brute and fast coincide;
/// closed dispatches on image membership.
inline BigInt sigma(const Tower& T, Elem t, Method method, const Guards& guards = {})
{
    if (!T.field()->contains(t))
        throw std::invalid_argument("t is not an element of F_{3^{2nj}}");
    if (method == Method::closed)
    {
        require_valid_b(T.n(), T.b());
        const ImageMembership img(T, guards);
        const BigInt base = T.minus_q_pow();
        return img.contains(t) ? BigInt(-2 * base) : base;
    }
    detail::guard(T.size(), guards.single_pass, "sigma");
    return BigInt(detail::sigma_from_table(*T.field(), detail::g_table(T), t));
}

/// |Gamma_b(n, j)|; closed form (3^{2nj} - 2 q (-q)^j) / 3.
inline BigInt gamma_count(const Tower& T, Method method, const Guards& guards = {})
{
    if (method == Method::closed)
    {
        require_valid_b(T.n(), T.b());
        return (BigInt(T.size()) - 2 * BigInt(T.q()) * T.minus_q_pow()) / 3;
    }
    const ImageMembership img(T, guards);
    std::uint64_t c = 0;
    for (std::uint64_t w = 0; w < T.size(); ++w)
        c += img.contains(T.norm_power(Elem{static_cast<std::uint32_t>(w)}));
    return BigInt(c);
}

/// The two observed values of sigma and the population of Gamma, as used by the fast S-sum.
struct SigmaSplit
{
    BigInt sigma_image;    ///< sigma(j, 0); constant on im g
    BigInt sigma_outside;  ///< sigma at the smallest t outside im g
    BigInt gamma;
    Elem outside_witness{};
};

inline SigmaSplit sigma_split(const Tower& T, const Guards& guards = {})
{
    const ImageMembership img(T, guards);
    const auto gtab = detail::g_table(T);
    SigmaSplit s;
    s.outside_witness = img.first_outside();
    s.sigma_image = detail::sigma_from_table(*T.field(), gtab, Field::zero());
    s.sigma_outside = detail::sigma_from_table(*T.field(), gtab, s.outside_witness);
    std::uint64_t c = 0;
    for (std::uint64_t w = 0; w < T.size(); ++w)
        c += img.contains(T.norm_power(Elem{static_cast<std::uint32_t>(w)}));
    s.gamma = c;
    return s;
}

struct SigmaStructure
{
    std::set<std::int64_t> values;  ///< every sigma(j, t) observed
    std::uint64_t in_image = 0;     ///< #t in im g
    std::uint64_t mismatched = 0;   ///< t whose value disagrees with the image dispatch
    BigInt total;                   ///< sum over all t
    BigInt image_value;             ///< -2 (-q)^j
    BigInt outside_value;           ///< (-q)^j

    bool two_valued() const
    {
        return mismatched == 0 && values == std::set<std::int64_t>{image_value.convert_to<std::int64_t>(),
                                                                 outside_value.convert_to<std::int64_t>()};
    }
};

/// sigma(j, t) for every t, compared against the dispatch on image membership.
inline SigmaStructure sigma_structure(const Tower& T, const Guards& guards = {})
{
    detail::guard(T.size(), guards.double_loop, "exhaustive sigma");
    const ImageMembership img(T, guards);
    const auto gtab = detail::g_table(T);
    SigmaStructure r;
    r.outside_value = T.minus_q_pow();
    r.image_value = -2 * r.outside_value;
    for (std::uint64_t c = 0; c < T.size(); ++c)
    {
        const Elem t{static_cast<std::uint32_t>(c)};
        const std::int64_t s = detail::sigma_from_table(*T.field(), gtab, t);
        r.values.insert(s);
        r.total += s;
        const bool inside = img.contains(t);
        r.in_image += inside;
        r.mismatched += BigInt(s) != (inside ? r.image_value : r.outside_value);
    }
    return r;
}

/// S_b(n, j) = -sum_{w in F} sum_x lambda(x^3 + b x + w^(q+1)).
///
/// brute: the double sum. fast: sigma is invariant under t -> t + g(x0) and
/// t -> -t, so it is constant on im g and on its complement (the two nonzero
/// cosets are swapped by negation); the sum is then -(sigma_0 |Gamma| +
/// sigma_* (N - |Gamma|)) with both sigma values and |Gamma| enumerated.
/// closed: -2 * 3^(n(1+2j)).
inline BigInt s_sum(const Tower& T, Method method, const Guards& guards = {}, unsigned jobs = 1)
{
    switch (method)
    {
    case Method::closed:
        require_valid_b(T.n(), T.b());
        return -2 * big_pow(3, std::uint64_t{T.n()} * (1 + 2 * std::uint64_t{T.j()}));
    case Method::fast:
    {
        const auto s = sigma_split(T, guards);
        return -(s.sigma_image * s.gamma + s.sigma_outside * (BigInt(T.size()) - s.gamma));
    }
    case Method::brute:
        break;
    }
    detail::guard(T.size(), guards.double_loop, "brute S-sum");
    const auto gtab = detail::g_table(T);
    const Field& k = *T.field();
    const std::int64_t total = parallel_sum<std::int64_t>(T.size(), jobs, [&](std::uint64_t lo, std::uint64_t hi) {
        std::int64_t acc = 0;
        for (std::uint64_t w = lo; w < hi; ++w)
            acc += detail::sigma_from_table(k, gtab, T.norm_power(Elem{static_cast<std::uint32_t>(w)}));
        return acc;
    });
    return BigInt(-total);
}

struct SumReport
{
    std::string kind;  ///< "S_b", "sigma_b", "gamma_count", "curve_count", "kernel_count"
    std::uint32_t n = 0;
    std::string b;
    std::uint32_t j = 0;
    Method method = Method::closed;
    BigInt value;
    double wall_time_ms = 0.0;
};

/// Runs `fn` and stamps the wall time into a SumReport.
template <typename Fn>
SumReport timed_report(std::string kind, std::uint32_t n, const FieldElement& b, std::uint32_t j, Method method,
                       Fn&& fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    SumReport r{std::move(kind), n, b.field()->description() + ":" + b.to_string(), j, method, BigInt(0), 0.0};
    r.value = fn();
    r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// ---------------------------------------------------------------------------
// Zeta function of C_{n,b} over F_{3^{2n}}.

struct ZetaReport
{
    BigInt field_size;                ///< 3^{2n}
    std::uint64_t genus = 0;          ///< 3^n
    std::vector<BigInt> counts;       ///< |C(F_{3^{2n j})| for the j used
    std::vector<std::uint32_t> js;
    std::vector<BigInt> power_sums;   ///< sum_k omega_k^j for the j used
    Rational eigenvalue{0};           ///< common value forced by the Weil bound
    std::vector<BigInt> numerator;    ///< coefficients of prod (1 - omega_k T)
    bool weil_extremal = false;       ///< |sum omega| = 2g sqrt(|k|), forcing equal eigenvalues
    bool consistent = false;          ///< the later power sums match the forced eigenvalue
    double max_modulus_error = 0.0;
};

/// Frobenius data of C_{n,b}/F_{3^{2n}} inferred from point counts at j = 1 and j = 2.
/// The Weil bound makes |s_1| = 2g * 3^n extremal, which forces all eigenvalues equal.
inline ZetaReport zeta_report(std::uint32_t n, const FieldElement& b, const Guards& guards = {}, unsigned jobs = 1)
{
    ZetaReport z;
    const std::uint64_t q = checked_pow(3, n);
    z.field_size = BigInt(q) * q;
    z.genus = q;
    const std::uint64_t two_g = 2 * z.genus;
    for (std::uint32_t j : {1u, 2u})
    {
        const BigInt c = count_superelliptic(n, b, j, Method::fast, guards, jobs);
        z.js.push_back(j);
        z.counts.push_back(c);
        z.power_sums.push_back(big_pow(z.field_size, j) + 1 - c);
    }
    const BigInt& s1 = z.power_sums[0];
    z.weil_extremal = s1 == BigInt(two_g) * q || s1 == -BigInt(two_g) * q;
    z.eigenvalue = Rational(s1, BigInt(two_g));
    z.consistent = z.weil_extremal;
    for (std::size_t i = 0; i < z.js.size(); ++i)
    {
        Rational pred = Rational(BigInt(two_g));
        for (std::uint32_t e = 0; e < z.js[i]; ++e)
            pred *= z.eigenvalue;
        z.consistent = z.consistent && pred == Rational(z.power_sums[i]);
    }
    const double modulus = std::abs(to_double(z.eigenvalue));
    z.max_modulus_error = std::abs(modulus - static_cast<double>(q));
    if (z.weil_extremal)
    {
        // prod (1 - omega T)^{2g} with omega an integer.
        const BigInt omega = boost::multiprecision::numerator(z.eigenvalue);
        BigInt binom = 1;
        BigInt pw = 1;
        for (std::uint64_t i = 0; i <= two_g; ++i)
        {
            z.numerator.push_back(binom * pw);
            binom = binom * (two_g - i) / (i + 1);
            pw *= -omega;
        }
    }
    return z;
}

// ---------------------------------------------------------------------------
// A-sums for y^2 = x^3 + a4 x + a6(t) over F_{|k|}(t).

struct ASumReport
{
    std::uint32_t j = 0;
    BigInt affine;    ///< sum over w in F_{|k|^j} of A([w], j)
    BigInt infinity;  ///< A(infinity, j)
    BigInt total;     ///< S_E(j)
    std::string infinity_fibre;  ///< "good", "multiplicative", "additive"
};

namespace detail
{
inline std::uint64_t root_multiplicity(Poly f, Elem w)
{
    const auto& k = f.field();
    const Poly lin = Poly(k, {k->neg(w), Field::one()});
    std::uint64_t m = 0;
    while (!f.is_zero() && f.eval(w).code == 0)
    {
        f = f / lin;
        ++m;
    }
    return m;
}
}  // namespace detail

/// S_E(j) = sum over w in P^1(F_{|k|^j}) of |k|^j + 1 - |E_w(F_{|k|^j})|, reading each
/// fibre on the given model; throws if some model in play is not minimal.
inline ASumReport a_number(const Curve& E, std::uint32_t j, const Guards& guards = {}, unsigned jobs = 1)
{
    if (j == 0)
        throw std::invalid_argument("j must be >= 1");
    const std::uint32_t p = E.k->characteristic();
    const std::uint64_t size = detail::field_size(p, std::uint64_t{E.k->degree()} * j);
    detail::guard(size, guards.double_loop, "A-sum");
    const auto F = make_field(p, E.k->degree() * j);
    const Embedding emb = Embedding::find(E.k, F);
    const Elem a4 = emb(E.a4);
    const Poly a6 = E.a6.mapped(emb);

    // Finite places: the affine model is minimal wherever v(Delta) < 12.
    const Poly disc = E.affine_discriminant().mapped(emb);
    for (std::uint64_t c = 0; c < size && !disc.is_zero(); ++c)
    {
        const Elem w{static_cast<std::uint32_t>(c)};
        if (detail::root_multiplicity(disc, w) >= 12)
            throw std::invalid_argument("affine model is not minimal at t = " + F->format(w));
    }

    std::vector<Elem> cubic(size);
    for (std::uint64_t x = 0; x < size; ++x)
    {
        const Elem e{static_cast<std::uint32_t>(x)};
        cubic[x] = F->add(F->mul(F->sqr(e), e), F->mul(a4, e));
    }
    const std::int64_t affine = parallel_sum<std::int64_t>(size, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
        std::int64_t acc = 0;
        for (std::uint64_t w = lo; w < hi; ++w)
            acc -= detail::sigma_from_table(*F, cubic, a6.eval(Elem{static_cast<std::uint32_t>(w)}));
        return acc;
    });

    // Infinity: the model after (x, y) -> (x t^-2mu, y t^-3mu).
    const InfinityModel M = infinity_model(E);
    const int v_disc = InfinityModel::valuation(M.discriminant);
    bool minimal = v_disc < 12;
    if (!minimal && p == 3)
    {
        try
        {
            (void)tate_type_iv_check(M);
            minimal = true;  // Tate's algorithm stops at IV only on a minimal model
        }
        catch (const VerificationError&)
        {
        }
    }
    if (!minimal)
        throw std::invalid_argument("model at infinity is not known to be minimal (v(Delta) = " +
                                    std::to_string(v_disc) + ")");
    const Elem a4_inf = emb(M.a4.coeff(0));
    const Elem a6_inf = emb(M.a6.coeff(0));
    std::int64_t inf_sum = 0;
    for (std::uint64_t x = 0; x < size; ++x)
    {
        const Elem e{static_cast<std::uint32_t>(x)};
        inf_sum += F->legendre(F->add(F->add(F->mul(F->sqr(e), e), F->mul(a4_inf, e)), a6_inf));
    }
    ASumReport r;
    r.j = j;
    r.affine = affine;
    r.infinity = -inf_sum;  // projective count of y^2 = cubic is |F| + 1 + sum lambda
    r.total = r.affine + r.infinity;
    if (v_disc == 0)
        r.infinity_fibre = "good";
    else if (InfinityModel::valuation(M.a4) >= 1 && InfinityModel::valuation(M.a6) >= 1)
        r.infinity_fibre = "additive";
    else
        r.infinity_fibre = "multiplicative";
    return r;
}

struct PrimeExperiment
{
    std::uint32_t p = 0;
    std::vector<ASumReport> sums;
    std::vector<Rational> ratios;  ///< S_E(j) / (p^2)^j
    /// True when every ratio equals the same integer, as (1 - p^2 T)^r would force.
    bool constant_integer_pattern = false;
};

/// y^2 = x^3 + x + t^(p+1) over F_{p^2}(t).
inline Curve prime_curve(std::uint32_t p)
{
    const auto k = make_field(p, 2);
    return Curve::generic(k, Field::one(), Poly::monomial(k, Field::one(), p + 1));
}

inline PrimeExperiment analyse_sums(std::uint32_t p, std::uint64_t field_size, std::vector<ASumReport> sums)
{
    PrimeExperiment e;
    e.p = p;
    e.sums = std::move(sums);
    for (const auto& s : e.sums)
        e.ratios.push_back(Rational(s.total, big_pow(BigInt(field_size), s.j)));
    e.constant_integer_pattern = !e.ratios.empty();
    for (const auto& r : e.ratios)
        e.constant_integer_pattern = e.constant_integer_pattern && is_integer(r) && r == e.ratios.front();
    return e;
}

/// S_E(j) and S_E(j)/(p^2)^j for j = 1..j_max on y^2 = x^3 + x + t^(p+1), p in {5, 7}.
inline PrimeExperiment prime_experiment(std::uint32_t p, std::uint32_t j_max = 2, const Guards& guards = {},
                                        unsigned jobs = 1)
{
    if (p != 5 && p != 7)
        throw std::invalid_argument("prime experiment supports p = 5 and p = 7");
    if (j_max == 0 || j_max > 2)
        throw std::invalid_argument("prime experiment supports j = 1, 2");
    const Curve E = prime_curve(p);
    std::vector<ASumReport> sums;
    for (std::uint32_t j = 1; j <= j_max; ++j)
        sums.push_back(a_number(E, j, guards, jobs));
    return analyse_sums(p, E.k->size(), std::move(sums));
}

}  // namespace mwl3

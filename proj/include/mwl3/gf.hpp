// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*
 * Finite fields F_{p^m} = F_p[X]/(f) with explicit embeddings between them.
 *
 * An element is stored as its serial code: the coefficient vector of its
 * representative polynomial read as a base-p integer, constant term least
 * significant. Codes below p are the prime-field constants in every
 * presentation, so integers embed identically into all contexts.
 *
 * Fields of at most 2^21 elements carry discrete log/exp tables and split
 * addition tables; larger ones (up to 2^32 elements) fall back to digit-wise
 * polynomial arithmetic.
 */

#include "core.hpp"

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mwl3
{
struct Elem
{
    std::uint32_t code = 0;

    constexpr auto operator<=>(const Elem&) const = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail
{
// Dense polynomials over F_p, constant term first, used for modulus search.
using FpPoly = std::vector<std::uint32_t>;

inline void fp_trim(FpPoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& f, std::uint32_t p)
{
    fp_trim(a);
    const std::size_t df = f.size() - 1;
    const std::uint64_t inv_lead = [&] {
        std::uint64_t r = 1, b = f.back(), e = p - 2;
        while (e != 0)
        {
            if (e & 1u)
                r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }();
    while (a.size() > df)
    {
        const std::uint64_t c = a.back() * inv_lead % p;
        const std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i <= df; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - f[i]) * c) % p);
        fp_trim(a);
    }
    return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, std::uint32_t p)
{
    if (a.empty() || b.empty())
        return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    return fp_mod(std::move(r), f, p);
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p)
{
    fp_trim(a);
    fp_trim(b);
    while (!b.empty())
    {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Ben-Or: f of degree m is irreducible iff gcd(f, X^{p^i} - X) = 1 for i <= m/2.
inline bool fp_is_irreducible(const FpPoly& f, std::uint32_t p)
{
    const std::size_t m = f.size() - 1;
    if (m == 0 || f.back() == 0)
        return false;
    if (m == 1)
        return true;
    FpPoly u = fp_mod({0, 1}, f, p);
    for (std::size_t i = 1; i <= m / 2; ++i)
    {
        FpPoly acc = {1};
        FpPoly base = u;
        for (std::uint32_t e = p; e != 0; e >>= 1)
        {
            if (e & 1u)
                acc = fp_mulmod(acc, base, f, p);
            base = fp_mulmod(base, base, f, p);
        }
        u = acc;
        FpPoly diff = u;
        if (diff.size() < 2)
            diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(diff);
        if (diff.empty())
            return false;  // X^{p^i} = X mod f means f splits over F_{p^i}
        if (fp_gcd(f, diff, p).size() > 1)
            return false;
    }
    return true;
}
}  // namespace detail

class Field
{
public:
    static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 32;
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 21;

    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return m_; }
    std::uint64_t size() const noexcept { return q_; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    bool has_tables() const noexcept { return !log_.empty(); }

    static constexpr Elem zero() noexcept { return Elem{0}; }
    static constexpr Elem one() noexcept { return Elem{1}; }

    /// The fixed multiplicative generator (smallest code of order q - 1).
    Elem generator() const noexcept { return generator_; }

    /// Class of X, i.e. the presentation's adjoined root.
    Elem x() const noexcept { return m_ == 1 ? reduce_x_prime() : Elem{p_}; }

    Elem from_int(std::int64_t v) const noexcept
    {
        const auto p = static_cast<std::int64_t>(p_);
        return Elem{static_cast<std::uint32_t>(((v % p) + p) % p)};
    }

    Elem from_coeffs(std::span<const std::uint32_t> c) const
    {
        std::array<std::uint32_t, 64> d{};
        if (c.size() > 64)
            throw std::invalid_argument("too many coefficients");
        for (std::size_t i = 0; i < c.size(); ++i)
            d[i] = c[i] % p_;
        // Reduce representatives longer than m modulo the defining polynomial.
        for (std::size_t k = c.size(); k-- > m_;)
        {
            const std::uint64_t lead = d[k];
            if (lead == 0)
                continue;
            d[k] = 0;
            for (std::uint32_t i = 0; i < m_; ++i)
                d[k - m_ + i] = static_cast<std::uint32_t>((d[k - m_ + i] + (p_ - modulus_[i]) * lead) % p_);
        }
        return encode(d);
    }

    std::vector<std::uint32_t> coeffs(Elem a) const
    {
        std::vector<std::uint32_t> out(m_);
        for (std::uint32_t i = 0; i < m_; ++i)
        {
            out[i] = a.code % p_;
            a.code /= p_;
        }
        return out;
    }

    bool contains(Elem a) const noexcept { return a.code < q_; }

    Elem add(Elem a, Elem b) const noexcept
    {
        if (!add_full_.empty())
            return Elem{add_full_[std::size_t{a.code} * q_ + b.code]};
        if (!add_lo_.empty())
        {
            const std::uint32_t al = a.code % lo_size_, ah = a.code / lo_size_;
            const std::uint32_t bl = b.code % lo_size_, bh = b.code / lo_size_;
            return Elem{add_hi_[std::size_t{ah} * hi_size_ + bh] * lo_size_ + add_lo_[std::size_t{al} * lo_size_ + bl]};
        }
        return add_digits(a, b);
    }

    Elem neg(Elem a) const noexcept
    {
        if (!neg_.empty())
            return Elem{neg_[a.code]};
        std::uint32_t r = 0, scale = 1;
        for (std::uint32_t i = 0; i < m_; ++i)
        {
            const std::uint32_t d = a.code % p_;
            a.code /= p_;
            r += ((p_ - d) % p_) * scale;
            scale *= p_;
        }
        return Elem{r};
    }

    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const noexcept
    {
        if (a.code == 0 || b.code == 0)
            return zero();
        if (!log_.empty())
            return Elem{exp_[std::size_t{log_[a.code]} + log_[b.code]]};
        return mul_generic(a, b);
    }

    Elem sqr(Elem a) const noexcept { return mul(a, a); }

    Elem inv(Elem a) const
    {
        if (a.code == 0)
            throw MathError("inverse of zero in " + description());
        if (!log_.empty())
            return Elem{exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
        return pow(a, q_ - 2);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t e) const noexcept
    {
        if (e == 0)
            return one();
        if (a.code == 0)
            return zero();
        const std::uint64_t r = e % (q_ - 1);
        if (!log_.empty())
            return Elem{exp_[static_cast<std::size_t>((std::uint64_t{log_[a.code]} * r) % (q_ - 1))]};
        return pow_generic(a, r);
    }

    /// Square-and-multiply with an arbitrary-precision exponent; negative
    /// exponents invert first.
    Elem pow(Elem a, const BigInt& e) const
    {
        if (e < 0)
            return pow(inv(a), BigInt(-e));
        if (e == 0)
            return one();
        if (a.code == 0)
            return zero();
        const BigInt reduced = e % (q_ - 1);
        return pow(a, reduced.convert_to<std::uint64_t>());
    }

    /// a^(p^k)
    Elem frobenius(Elem a, std::uint32_t k = 1) const noexcept
    {
        for (std::uint32_t i = 0; i < k; ++i)
            a = pow(a, std::uint64_t{p_});
        return a;
    }

    /// The quadratic character: 0 at 0, otherwise a^((q-1)/2) read as +-1.
    int legendre(Elem a) const
    {
        if (p_ == 2)
            throw std::domain_error("Legendre symbol undefined in characteristic 2");
        if (a.code == 0)
            return 0;
        if (!log_.empty())
            return (log_[a.code] & 1u) ? -1 : 1;
        return pow(a, (q_ - 1) / 2) == one() ? 1 : -1;
    }

    bool is_square(Elem a) const { return legendre(a) >= 0; }

    /// Discrete logarithm to the fixed generator (tabulated fields only).
    std::uint64_t log(Elem a) const
    {
        if (a.code == 0)
            throw MathError("log of zero");
        if (!log_.empty())
            return log_[a.code];
        throw GuardError("discrete log requires a tabulated field");
    }

    /// Textual presentation "p^m:c0,c1,...,cm" (modulus coefficients, constant first).
    std::string description() const
    {
        std::ostringstream os;
        os << p_ << '^' << m_ << ':';
        for (std::size_t i = 0; i < modulus_.size(); ++i)
            os << (i ? "," : "") << modulus_[i];
        return os.str();
    }

    /// Human-readable element in the variable `var` (e.g. "z + 2").
    std::string format(Elem a, char var = 'z') const
    {
        if (a.code == 0)
            return "0";
        const auto c = coeffs(a);
        std::string out;
        for (std::size_t i = c.size(); i-- > 0;)
        {
            if (c[i] == 0)
                continue;
            if (!out.empty())
                out += " + ";
            if (i == 0 || c[i] != 1)
                out += std::to_string(c[i]);
            if (i >= 1)
            {
                if (c[i] != 1)
                    out += '*';
                out += var;
                if (i > 1)
                    out += '^' + std::to_string(i);
            }
        }
        return out;
    }

    bool same_as(const Field& other) const noexcept
    {
        return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
    }

    // Construction goes through make_field / make_field_with_modulus.
    struct Private
    {
        explicit Private() = default;
    };

    Field(Private, std::uint32_t p, std::vector<std::uint32_t> modulus)
        : p_(p), m_(static_cast<std::uint32_t>(modulus.size() - 1)), modulus_(std::move(modulus))
    {
        q_ = checked_pow(p_, m_);
        find_generator();
        build_tables();
    }

private:
    Elem reduce_x_prime() const noexcept
    {
        // In F_p = F_p[X]/(X + c0) the class of X is -c0.
        return Elem{(p_ - modulus_[0]) % p_};
    }

    Elem encode(const std::array<std::uint32_t, 64>& d) const noexcept
    {
        std::uint64_t code = 0;
        for (std::uint32_t i = m_; i-- > 0;)
            code = code * p_ + d[i];
        return Elem{static_cast<std::uint32_t>(code)};
    }

    Elem add_digits(Elem a, Elem b) const noexcept
    {
        std::uint64_t r = 0, scale = 1;
        for (std::uint32_t i = 0; i < m_; ++i)
        {
            const std::uint32_t s = (a.code % p_ + b.code % p_) % p_;
            a.code /= p_;
            b.code /= p_;
            r += s * scale;
            scale *= p_;
        }
        return Elem{static_cast<std::uint32_t>(r)};
    }

    Elem mul_generic(Elem a, Elem b) const noexcept
    {
        std::array<std::uint32_t, 64> da{}, db{};
        for (std::uint32_t i = 0; i < m_; ++i)
        {
            da[i] = a.code % p_;
            a.code /= p_;
            db[i] = b.code % p_;
            b.code /= p_;
        }
        std::array<std::uint64_t, 128> prod{};
        for (std::uint32_t i = 0; i < m_; ++i)
        {
            if (da[i] == 0)
                continue;
            for (std::uint32_t j = 0; j < m_; ++j)
                prod[i + j] += std::uint64_t{da[i]} * db[j];
        }
        for (std::uint32_t k = 0; k + 1 < 2 * m_; ++k)
            prod[k] %= p_;
        for (std::uint32_t k = 2 * m_ - 1; k-- > m_;)
        {
            const std::uint64_t lead = prod[k];
            if (lead == 0)
                continue;
            for (std::uint32_t i = 0; i < m_; ++i)
                prod[k - m_ + i] = (prod[k - m_ + i] + (p_ - modulus_[i]) * lead) % p_;
        }
        std::array<std::uint32_t, 64> out{};
        for (std::uint32_t i = 0; i < m_; ++i)
            out[i] = static_cast<std::uint32_t>(prod[i] % p_);
        return encode(out);
    }

    Elem pow_generic(Elem a, std::uint64_t e) const noexcept
    {
        Elem r = one();
        while (e != 0)
        {
            if (e & 1u)
                r = mul_generic(r, a);
            e >>= 1;
            if (e != 0)
                a = mul_generic(a, a);
        }
        return r;
    }

    void find_generator()
    {
        if (q_ == 2)
        {
            generator_ = one();
            return;
        }
        const auto factors = prime_factors(q_ - 1);
        for (std::uint64_t c = 1; c < q_; ++c)
        {
            const Elem g{static_cast<std::uint32_t>(c)};
            bool ok = true;
            for (auto r : factors)
                if (pow_generic(g, (q_ - 1) / r) == one())
                {
                    ok = false;
                    break;
                }
            if (ok)
            {
                generator_ = g;
                return;
            }
        }
        throw MathError("no generator found; modulus is not irreducible");
    }

    void build_tables()
    {
        if (q_ > kTableLimit)
            return;
        const std::size_t n = q_ - 1;
        exp_.assign(2 * n + 1, 0);
        log_.assign(q_, 0);
        Elem x = one();
        for (std::size_t i = 0; i < n; ++i)
        {
            exp_[i] = x.code;
            log_[x.code] = static_cast<std::uint32_t>(i);
            x = mul_generic(x, generator_);
        }
        for (std::size_t i = n; i < exp_.size(); ++i)
            exp_[i] = exp_[i - n];

        neg_.resize(q_);
        for (std::uint64_t c = 0; c < q_; ++c)
        {
            std::uint32_t r = 0, scale = 1, v = static_cast<std::uint32_t>(c);
            for (std::uint32_t i = 0; i < m_; ++i)
            {
                r += ((p_ - v % p_) % p_) * scale;
                v /= p_;
                scale *= p_;
            }
            neg_[c] = r;
        }

        if (q_ <= 1024)
        {
            add_full_.resize(q_ * q_);
            for (std::uint64_t a = 0; a < q_; ++a)
                for (std::uint64_t b = 0; b < q_; ++b)
                    add_full_[a * q_ + b] = add_digits(Elem{static_cast<std::uint32_t>(a)}, Elem{static_cast<std::uint32_t>(b)}).code;
            return;
        }
        const std::uint32_t h = m_ / 2;
        lo_size_ = static_cast<std::uint32_t>(checked_pow(p_, h));
        hi_size_ = static_cast<std::uint32_t>(checked_pow(p_, m_ - h));
        auto digit_table = [&](std::uint32_t base, std::uint32_t digits) {
            std::vector<std::uint32_t> t(std::size_t{base} * base);
            for (std::uint32_t a = 0; a < base; ++a)
                for (std::uint32_t b = 0; b < base; ++b)
                {
                    std::uint32_t r = 0, scale = 1, x1 = a, x2 = b;
                    for (std::uint32_t i = 0; i < digits; ++i)
                    {
                        r += ((x1 % p_ + x2 % p_) % p_) * scale;
                        x1 /= p_;
                        x2 /= p_;
                        scale *= p_;
                    }
                    t[std::size_t{a} * base + b] = r;
                }
            return t;
        };
        add_lo_ = digit_table(lo_size_, h);
        add_hi_ = digit_table(hi_size_, m_ - h);
    }

    std::uint32_t p_;
    std::uint32_t m_;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    Elem generator_{};

    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint16_t> add_full_;
    std::vector<std::uint32_t> add_lo_;
    std::vector<std::uint32_t> add_hi_;
    std::uint32_t lo_size_ = 0;
    std::uint32_t hi_size_ = 0;
};

namespace detail
{
inline FieldPtr intern_field(std::uint32_t p, std::vector<std::uint32_t> modulus)
{
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, FieldPtr> cache;
    std::lock_guard lock(mu);
    auto key = std::make_pair(p, modulus);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    auto field = std::make_shared<const Field>(Field::Private{}, p, std::move(modulus));
    cache.emplace(std::move(key), field);
    return field;
}

inline void check_field_params(std::uint32_t p, std::uint32_t m)
{
    if (!is_prime(p))
        throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    if (m == 0)
        throw std::invalid_argument("field degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i)
    {
        q *= p;
        if (q > Field::kMaxSize)
            throw GuardError("field " + std::to_string(p) + "^" + std::to_string(m) + " exceeds 2^32 elements");
    }
}
}  // namespace detail

/// F_{p^m} presented by the lexicographically smallest monic irreducible of
/// degree m (coefficient tuples compared constant term first).
inline FieldPtr make_field(std::uint32_t p, std::uint32_t m)
{
    detail::check_field_params(p, m);
    const std::uint64_t count = checked_pow(p, m);
    detail::FpPoly f(m + 1, 0);
    f[m] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx)
    {
        std::uint64_t v = idx;
        for (std::uint32_t i = m; i-- > 0;)
        {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        if (detail::fp_is_irreducible(f, p))
            return detail::intern_field(p, f);
    }
    throw MathError("no irreducible polynomial found");
}

/// F_{p^m} with a caller-chosen monic irreducible modulus (constant term first).
inline FieldPtr make_field_with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus)
{
    if (modulus.size() < 2)
        throw std::invalid_argument("modulus must have degree >= 1");
    detail::check_field_params(p, static_cast<std::uint32_t>(modulus.size() - 1));
    for (auto& c : modulus)
        c %= p;
    if (modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic");
    if (!detail::fp_is_irreducible(modulus, p))
        throw MathError("modulus is reducible over F_" + std::to_string(p));
    return detail::intern_field(p, std::move(modulus));
}

/// Parses the "p^m:c0,...,cm" presentation emitted by Field::description().
inline FieldPtr parse_field_description(std::string_view text)
{
    const auto caret = text.find('^');
    const auto colon = text.find(':');
    if (caret == std::string_view::npos || colon == std::string_view::npos || colon < caret)
        throw std::invalid_argument("field description must look like p^m:c0,...,cm");
    const auto p = static_cast<std::uint32_t>(std::stoul(std::string(text.substr(0, caret))));
    const auto m = static_cast<std::uint32_t>(std::stoul(std::string(text.substr(caret + 1, colon - caret - 1))));
    std::vector<std::uint32_t> coeffs;
    std::string rest(text.substr(colon + 1));
    std::stringstream ss(rest);
    for (std::string tok; std::getline(ss, tok, ',');)
        coeffs.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    if (coeffs.size() != m + 1)
        throw std::invalid_argument("modulus length does not match degree");
    return make_field_with_modulus(p, std::move(coeffs));
}

/// The presentation F_9 = F_3[X]/(X^2 - X - 1) used for the n = 2 example points.
inline FieldPtr f9_presentation()
{
    return make_field_with_modulus(3, {2, 2, 1});
}

/// An element together with the context that owns it; arithmetic checks the contexts agree.
class FieldElement
{
public:
    FieldElement() = default;
    FieldElement(FieldPtr k, Elem e) : k_(std::move(k)), e_(e)
    {
        if (!k_ || !k_->contains(e_))
            throw std::invalid_argument("element code outside its field");
    }

    static FieldElement from_int(FieldPtr k, std::int64_t v)
    {
        const Elem e = k->from_int(v);
        return {std::move(k), e};
    }

    const FieldPtr& field() const noexcept { return k_; }
    Elem elem() const noexcept { return e_; }
    std::vector<std::uint32_t> coeffs() const { return k_->coeffs(e_); }
    bool is_zero() const noexcept { return e_.code == 0; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b)
    {
        check(a, b);
        return {a.k_, a.k_->add(a.e_, b.e_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b)
    {
        check(a, b);
        return {a.k_, a.k_->sub(a.e_, b.e_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b)
    {
        check(a, b);
        return {a.k_, a.k_->mul(a.e_, b.e_)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b)
    {
        check(a, b);
        return {a.k_, a.k_->div(a.e_, b.e_)};
    }
    FieldElement operator-() const { return {k_, k_->neg(e_)}; }
    FieldElement inverse() const { return {k_, k_->inv(e_)}; }
    FieldElement pow(const BigInt& e) const { return {k_, k_->pow(e_, e)}; }
    int legendre() const { return k_->legendre(e_); }

    friend bool operator==(const FieldElement& a, const FieldElement& b)
    {
        check(a, b);
        return a.e_ == b.e_;
    }

    std::string to_string(char var = 'z') const { return k_->format(e_, var); }

private:
    static void check(const FieldElement& a, const FieldElement& b)
    {
        if (!a.k_ || !b.k_ || !a.k_->same_as(*b.k_))
            throw ContextMismatch("operands belong to different fields");
    }

    FieldPtr k_;
    Elem e_{};
};

/// Ring embedding F_{p^a} -> F_{p^b} (a | b), determined by the image of X.
class Embedding
{
public:
    /// Smallest-code root of the source modulus in the target.
    static Embedding find(FieldPtr src, FieldPtr dst)
    {
        if (src->characteristic() != dst->characteristic())
            throw ContextMismatch("embedding between different characteristics");
        if (dst->degree() % src->degree() != 0)
            throw std::invalid_argument("source degree does not divide target degree");

        // Candidates: the subfield of dst with |src| elements, i.e. 0 and the
        // powers of g^((Q-1)/(q-1)).
        const std::uint64_t big = dst->size() - 1;
        const std::uint64_t small = src->size() - 1;
        const Elem h = dst->pow(dst->generator(), big / small);
        const auto& f = src->modulus();
        auto is_root = [&](Elem x) {
            Elem acc = Field::zero();
            for (std::size_t i = f.size(); i-- > 0;)
                acc = dst->add(dst->mul(acc, x), Elem{f[i]});
            return acc == Field::zero();
        };
        std::optional<Elem> best;
        if (is_root(Field::zero()))
            best = Field::zero();
        Elem cur = Field::one();
        for (std::uint64_t i = 0; i < small; ++i)
        {
            if ((!best || cur < *best) && is_root(cur))
                best = cur;
            cur = dst->mul(cur, h);
        }
        if (!best)
            throw MathError("source modulus has no root in target field");
        return Embedding(std::move(src), std::move(dst), *best);
    }

    /// second o first
    static Embedding compose(const Embedding& first, const Embedding& second)
    {
        if (!first.dst_->same_as(*second.src_))
            throw ContextMismatch("embeddings do not chain");
        return Embedding(first.src_, second.dst_, second(first.alpha_));
    }

    const FieldPtr& source() const noexcept { return src_; }
    const FieldPtr& target() const noexcept { return dst_; }
    Elem image_of_x() const noexcept { return alpha_; }

    Elem operator()(Elem e) const
    {
        if (!table_.empty())
            return table_[e.code];
        return evaluate(e);
    }

    FieldElement operator()(const FieldElement& e) const
    {
        if (!e.field()->same_as(*src_))
            throw ContextMismatch("element is not in the embedding's source field");
        return {dst_, (*this)(e.elem())};
    }

private:
    Embedding(FieldPtr src, FieldPtr dst, Elem alpha) : src_(std::move(src)), dst_(std::move(dst)), alpha_(alpha)
    {
        powers_.resize(src_->degree());
        Elem cur = Field::one();
        for (auto& pw : powers_)
        {
            pw = cur;
            cur = dst_->mul(cur, alpha_);
        }
        if (src_->size() <= (1u << 16))
        {
            table_.resize(src_->size());
            for (std::uint64_t c = 0; c < src_->size(); ++c)
                table_[c] = evaluate(Elem{static_cast<std::uint32_t>(c)});
        }
    }

    Elem evaluate(Elem e) const
    {
        Elem acc = Field::zero();
        const std::uint32_t p = src_->characteristic();
        for (std::size_t i = 0; i < powers_.size(); ++i)
        {
            const std::uint32_t c = e.code % p;
            e.code /= p;
            if (c != 0)
                acc = dst_->add(acc, dst_->mul(Elem{c}, powers_[i]));
        }
        return acc;
    }

    FieldPtr src_;
    FieldPtr dst_;
    Elem alpha_{};
    std::vector<Elem> powers_;
    std::vector<Elem> table_;
};

/// Relative norm N_{F_{p^m}/F_{p^d}}(x) = x^((p^m - 1)/(p^d - 1)), as an element of the big field.
inline Elem norm(const Field& big, std::uint32_t sub_degree, Elem x)
{
    if (sub_degree == 0 || big.degree() % sub_degree != 0)
        throw std::invalid_argument("subfield degree must divide the field degree");
    const std::uint64_t small = checked_pow(big.characteristic(), sub_degree);
    return big.pow(x, (big.size() - 1) / (small - 1));
}

/// Relative trace: sum of x^(q^i) for i < m/d with q = p^d.
inline Elem trace(const Field& big, std::uint32_t sub_degree, Elem x)
{
    if (sub_degree == 0 || big.degree() % sub_degree != 0)
        throw std::invalid_argument("subfield degree must divide the field degree");
    Elem acc = Field::zero();
    for (std::uint32_t i = 0; i < big.degree() / sub_degree; ++i)
    {
        acc = big.add(acc, x);
        x = big.frobenius(x, sub_degree);
    }
    return acc;
}

inline FieldElement norm(const FieldElement& x, std::uint32_t sub_degree)
{
    return {x.field(), norm(*x.field(), sub_degree, x.elem())};
}

inline FieldElement trace(const FieldElement& x, std::uint32_t sub_degree)
{
    return {x.field(), trace(*x.field(), sub_degree, x.elem())};
}

/// True when x lies in the subfield F_{p^d} of `big`.
inline bool in_subfield(const Field& big, std::uint32_t sub_degree, Elem x)
{
    return big.frobenius(x, sub_degree) == x;
}

/// Whether b in F_{3^n} satisfies b^((3^n - 1)/2) = (-1)^(n+1).
inline bool is_valid_b(std::uint32_t n, const FieldElement& b)
{
    const auto& k = *b.field();
    if (k.characteristic() != 3 || k.degree() != n || b.is_zero())
        return false;
    const Elem want = (n % 2 == 1) ? Field::one() : k.from_int(-1);
    return k.pow(b.elem(), (k.size() - 1) / 2) == want;
}

/// Default twist parameter: 1 for odd n, the fixed generator (a non-square) for even n.
inline FieldElement choose_b(std::uint32_t n)
{
    if (n == 0)
        throw std::invalid_argument("n must be >= 1");
    auto k = make_field(3, n);
    const Elem b = (n % 2 == 1) ? Field::one() : k->generator();
    return {k, b};
}

/// Whether b in F_{p^n} satisfies N_{F_q/F_p}(b) = b^((p^n-1)/(p-1)) = (-1)^(n+1).
inline bool satisfies_norm_hypothesis(const FieldElement& b)
{
    const auto& k = *b.field();
    const std::uint32_t n = k.degree();
    const Elem want = (n % 2 == 1) ? Field::one() : k.from_int(-1);
    return norm(k, 1, b.elem()) == want;
}

}  // namespace mwl3

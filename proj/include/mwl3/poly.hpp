// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gf.hpp"

#include <span>
#include <ostream>
#include <string>
#include <vector>

namespace mwl3
{
namespace detail
{
inline std::vector<Elem> mul_schoolbook(const Field& k, std::span<const Elem> a, std::span<const Elem> b)
{
    std::vector<Elem> out(a.size() + b.size() - 1, Field::zero());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        if (a[i].code == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j].code != 0)
                out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
    }
    return out;
}

inline void add_into(const Field& k, std::vector<Elem>& dst, std::span<const Elem> src, std::size_t shift)
{
    if (dst.size() < src.size() + shift)
        dst.resize(src.size() + shift, Field::zero());
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i + shift] = k.add(dst[i + shift], src[i]);
}

inline std::vector<Elem> mul_karatsuba(const Field& k, std::span<const Elem> a, std::span<const Elem> b)
{
    if (a.empty() || b.empty())
        return {};
    if (std::min(a.size(), b.size()) < 48)
        return mul_schoolbook(k, a, b);
    const std::size_t h = std::max(a.size(), b.size()) / 2;
    if (a.size() <= h || b.size() <= h)
    {
        // Unbalanced: split only the longer operand.
        const bool a_long = a.size() > b.size();
        auto lng = a_long ? a : b;
        auto sht = a_long ? b : a;
        std::vector<Elem> out = mul_karatsuba(k, lng.subspan(0, h), sht);
        add_into(k, out, mul_karatsuba(k, lng.subspan(h), sht), h);
        return out;
    }
    auto a0 = a.subspan(0, h), a1 = a.subspan(h);
    auto b0 = b.subspan(0, h), b1 = b.subspan(h);
    std::vector<Elem> z0 = mul_karatsuba(k, a0, b0);
    std::vector<Elem> z2 = mul_karatsuba(k, a1, b1);
    std::vector<Elem> sa(a0.begin(), a0.end()), sb(b0.begin(), b0.end());
    add_into(k, sa, a1, 0);
    add_into(k, sb, b1, 0);
    std::vector<Elem> z1 = mul_karatsuba(k, sa, sb);
    for (std::size_t i = 0; i < z0.size(); ++i)
        z1[i] = k.sub(z1[i], z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i)
        z1[i] = k.sub(z1[i], z2[i]);
    std::vector<Elem> out(a.size() + b.size() - 1, Field::zero());
    add_into(k, out, z0, 0);
    add_into(k, out, z1, h);
    add_into(k, out, z2, 2 * h);
    out.resize(a.size() + b.size() - 1);
    return out;
}
}  // namespace detail

/// Dense polynomial in t over a finite field; coefficients constant term first, no trailing zeros.
class Poly
{
public:
    static constexpr int kZeroDegree = -1;

    Poly() = default;
    explicit Poly(FieldPtr k) : k_(std::move(k)) {}
    Poly(FieldPtr k, std::vector<Elem> c) : k_(std::move(k)), c_(std::move(c)) { trim(); }

    static Poly constant(FieldPtr k, Elem c) { return Poly(std::move(k), {c}); }
    static Poly monomial(FieldPtr k, Elem c, std::size_t degree)
    {
        std::vector<Elem> v(degree + 1, Field::zero());
        v[degree] = c;
        return Poly(std::move(k), std::move(v));
    }
    static Poly t(FieldPtr k) { return monomial(std::move(k), Field::one(), 1); }

    /// Polynomial with prime-field integer coefficients (constant term first).
    static Poly from_ints(FieldPtr k, std::initializer_list<std::int64_t> c)
    {
        std::vector<Elem> v;
        for (auto x : c)
            v.push_back(k->from_int(x));
        return Poly(std::move(k), std::move(v));
    }

    const FieldPtr& field() const noexcept { return k_; }
    const std::vector<Elem>& coeffs() const noexcept { return c_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    Elem coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : Field::zero(); }
    Elem leading() const noexcept { return c_.empty() ? Field::zero() : c_.back(); }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == Field::one(); }

    /// Index of the lowest nonzero coefficient (order of vanishing at t = 0).
    int low_degree() const noexcept
    {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i].code != 0)
                return static_cast<int>(i);
        return kZeroDegree;
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        check(a, b);
        const Field& k = *a.k_;
        std::vector<Elem> r(std::max(a.c_.size(), b.c_.size()), Field::zero());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = k.add(a.coeff(i), b.coeff(i));
        return Poly(a.k_, std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b)
    {
        check(a, b);
        const Field& k = *a.k_;
        std::vector<Elem> r(std::max(a.c_.size(), b.c_.size()), Field::zero());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = k.sub(a.coeff(i), b.coeff(i));
        return Poly(a.k_, std::move(r));
    }

    Poly operator-() const
    {
        std::vector<Elem> r(c_);
        for (auto& x : r)
            x = k_->neg(x);
        return Poly(k_, std::move(r));
    }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        check(a, b);
        if (a.is_zero() || b.is_zero())
            return Poly(a.k_);
        return Poly(a.k_, detail::mul_karatsuba(*a.k_, a.c_, b.c_));
    }

    Poly scaled(Elem s) const
    {
        if (s.code == 0)
            return Poly(k_);
        std::vector<Elem> r(c_);
        for (auto& x : r)
            x = k_->mul(x, s);
        return Poly(k_, std::move(r));
    }

    /// Multiplies by t^k.
    Poly shifted(std::size_t k) const
    {
        if (is_zero())
            return *this;
        std::vector<Elem> r(k, Field::zero());
        r.insert(r.end(), c_.begin(), c_.end());
        return Poly(k_, std::move(r));
    }

    Poly pow(std::uint64_t e) const
    {
        Poly r = constant(k_, Field::one());
        Poly base = *this;
        while (e != 0)
        {
            if (e & 1u)
                r = r * base;
            e >>= 1;
            if (e != 0)
                base = base * base;
        }
        return r;
    }

    /// Quotient and remainder; throws MathError on a zero divisor.
    std::pair<Poly, Poly> divmod(const Poly& d) const
    {
        check(*this, d);
        if (d.is_zero())
            throw MathError("polynomial division by zero");
        const Field& k = *k_;
        if (degree() < d.degree())
            return {Poly(k_), *this};
        std::vector<Elem> r(c_);
        std::vector<Elem> q(c_.size() - d.c_.size() + 1, Field::zero());
        const Elem inv_lead = k.inv(d.leading());
        const std::size_t dd = d.c_.size() - 1;
        for (std::size_t top = r.size(); top-- > dd;)
        {
            const Elem c = k.mul(r[top], inv_lead);
            if (c.code == 0)
                continue;
            const std::size_t shift = top - dd;
            q[shift] = c;
            for (std::size_t i = 0; i <= dd; ++i)
                r[shift + i] = k.sub(r[shift + i], k.mul(c, d.c_[i]));
        }
        r.resize(dd);
        return {Poly(k_, std::move(q)), Poly(k_, std::move(r))};
    }

    friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

    Poly monic() const
    {
        if (is_zero())
            return *this;
        return scaled(k_->inv(leading()));
    }

    Elem eval(Elem x) const
    {
        Elem acc = Field::zero();
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = k_->add(k_->mul(acc, x), c_[i]);
        return acc;
    }

    Poly derivative() const
    {
        if (c_.size() <= 1)
            return Poly(k_);
        std::vector<Elem> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = k_->mul(k_->from_int(static_cast<std::int64_t>(i % k_->characteristic())), c_[i]);
        return Poly(k_, std::move(r));
    }

    /// p(c*t)
    Poly scale_variable(Elem c) const
    {
        std::vector<Elem> r(c_);
        Elem pw = Field::one();
        for (auto& x : r)
        {
            x = k_->mul(x, pw);
            pw = k_->mul(pw, c);
        }
        return Poly(k_, std::move(r));
    }

    /// Coefficient-wise image under a field embedding.
    Poly mapped(const Embedding& emb) const
    {
        if (!emb.source()->same_as(*k_))
            throw ContextMismatch("polynomial is not over the embedding's source");
        std::vector<Elem> r;
        r.reserve(c_.size());
        for (auto x : c_)
            r.push_back(emb(x));
        return Poly(emb.target(), std::move(r));
    }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        check(a, b);
        return a.c_ == b.c_;
    }

    std::string to_string(char var = 't', char coeff_var = 'z') const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;)
        {
            if (c_[i].code == 0)
                continue;
            std::string coef = k_->format(c_[i], coeff_var);
            const bool compound = coef.find(' ') != std::string::npos;
            if (!out.empty())
                out += " + ";
            if (i == 0)
                out += compound ? "(" + coef + ")" : coef;
            else
            {
                if (coef != "1")
                    out += (compound ? "(" + coef + ")" : coef) + "*";
                out += var;
                if (i > 1)
                    out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    static void check(const Poly& a, const Poly& b)
    {
        if (!a.k_ || !b.k_ || !a.k_->same_as(*b.k_))
            throw ContextMismatch("polynomials over different fields");
    }

    void trim()
    {
        while (!c_.empty() && c_.back().code == 0)
            c_.pop_back();
    }

    FieldPtr k_;
    std::vector<Elem> c_;
};

/// Monic gcd (zero when both inputs are zero).
inline Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero())
    {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Element of k(t) in lowest terms with a monic denominator.
class RatFn
{
public:
    RatFn() = default;
    explicit RatFn(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), Field::one())) {}
    RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFn constant(FieldPtr k, Elem c) { return RatFn(Poly::constant(std::move(k), c)); }
    static RatFn t(FieldPtr k) { return RatFn(Poly::t(std::move(k))); }

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    const FieldPtr& field() const noexcept { return num_.field(); }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() == 0; }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }

    /// Degree as a map to P^1: max(deg num, deg den) in lowest terms.
    int degree() const noexcept { return std::max(std::max(num_.degree(), 0), den_.degree()); }

    /// Order at the place t = infinity (uniformizer 1/t); throws for zero.
    int valuation_at_infinity() const
    {
        if (is_zero())
            throw MathError("valuation of zero");
        return den_.degree() - num_.degree();
    }

    /// Value at t = infinity; requires non-negative valuation there.
    Elem value_at_infinity() const
    {
        if (is_zero())
            return Field::zero();
        const int v = valuation_at_infinity();
        if (v < 0)
            throw MathError("rational function has a pole at infinity");
        if (v > 0)
            return Field::zero();
        return field()->div(num_.leading(), den_.leading());
    }

    Elem eval(Elem x) const
    {
        const Elem d = den_.eval(x);
        if (d.code == 0)
            throw MathError("rational function has a pole at the evaluation point");
        return field()->div(num_.eval(x), d);
    }

    friend RatFn operator+(const RatFn& a, const RatFn& b)
    {
        if (a.den_ == b.den_)
            return RatFn(a.num_ + b.num_, a.den_);
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b)
    {
        if (a.den_ == b.den_)
            return RatFn(a.num_ - b.num_, a.den_);
        return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator*(const RatFn& a, const RatFn& b) { return RatFn(a.num_ * b.num_, a.den_ * b.den_); }
    friend RatFn operator/(const RatFn& a, const RatFn& b)
    {
        if (b.is_zero())
            throw MathError("division by the zero rational function");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFn operator-() const
    {
        RatFn r = *this;
        r.num_ = -r.num_;
        return r;
    }

    RatFn scaled(Elem s) const { return RatFn(num_.scaled(s), den_); }

    /// f(c*t)
    RatFn scale_variable(Elem c) const { return RatFn(num_.scale_variable(c), den_.scale_variable(c)); }

    /// f * t^k for any integer k.
    RatFn mul_t_power(int k) const
    {
        if (k >= 0)
            return RatFn(num_.shifted(static_cast<std::size_t>(k)), den_);
        return RatFn(num_, den_.shifted(static_cast<std::size_t>(-k)));
    }

    RatFn mapped(const Embedding& emb) const { return RatFn(num_.mapped(emb), den_.mapped(emb)); }

    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    std::string to_string(char var = 't', char coeff_var = 'z') const
    {
        if (is_polynomial())
            return num_.to_string(var, coeff_var);
        return "(" + num_.to_string(var, coeff_var) + ")/(" + den_.to_string(var, coeff_var) + ")";
    }

private:
    void normalize()
    {
        if (den_.is_zero())
            throw MathError("rational function with zero denominator");
        if (num_.is_zero())
        {
            den_ = Poly::constant(den_.field(), Field::one());
            return;
        }
        if (den_.degree() > 0)
        {
            Poly g = gcd(num_, den_);
            if (g.degree() > 0)
            {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        if (!den_.is_monic())
        {
            const Elem s = den_.field()->inv(den_.leading());
            num_ = num_.scaled(s);
            den_ = den_.scaled(s);
        }
    }

    Poly num_;
    Poly den_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& f)
{
    return os << f.to_string();
}

inline std::ostream& operator<<(std::ostream& os, const RatFn& f)
{
    return os << f.to_string();
}

}  // namespace mwl3

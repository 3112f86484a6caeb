// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Text literals for field elements, polynomials and points.
//
//   element   z^3 + 2*z,  -1,  z+1
//   poly      t^4 - 1 + (z+1)*t^2,  [1, 0, z, 2]   (coefficient list, constant first)
//   point     (t^2 ; -t^3 + t),  O
//
// `z` is the class of X in the coefficient field, `t` the function-field variable.
// Juxtaposition multiplies: "2t^2", "z t".

#include "curve.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace mwl3
{
struct ParseError : Error
{
    ParseError(std::string_view text, std::size_t pos, const std::string& what)
        : Error("cannot parse '" + std::string(text) + "' at offset " + std::to_string(pos) + ": " + what)
    {
    }
};

namespace detail
{
class ExprParser
{
public:
    ExprParser(FieldPtr k, std::string_view text, bool allow_t) : k_(std::move(k)), text_(text), allow_t_(allow_t) {}

    RatFn parse_all()
    {
        RatFn v = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    static constexpr std::uint64_t kMaxExponent = 1u << 20;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(text_, pos_, what); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    RatFn expr()
    {
        RatFn acc;
        bool first = true;
        for (;;)
        {
            char c = peek();
            int sign = 1;
            if (c == '+' || c == '-')
            {
                sign = c == '-' ? -1 : 1;
                ++pos_;
            }
            else if (!first)
                return acc;
            RatFn term = product();
            if (sign < 0)
                term = -term;
            acc = first ? term : acc + term;
            first = false;
        }
    }

    static bool starts_factor(char c)
    {
        return std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'z' || c == '(';
    }

    RatFn product()
    {
        RatFn acc = power();
        for (;;)
        {
            const char c = peek();
            if (c == '*')
            {
                ++pos_;
                acc = acc * power();
            }
            else if (c == '/')
            {
                ++pos_;
                const RatFn d = power();
                if (d.is_zero())
                    fail("division by zero");
                acc = acc / d;
            }
            else if (starts_factor(c))
                acc = acc * power();
            else
                return acc;
        }
    }

    RatFn power()
    {
        RatFn base = atom();
        if (peek() != '^')
            return base;
        ++pos_;
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("exponent must be a non-negative integer");
        const auto digits = text_.substr(start, pos_ - start);
        if (digits.size() > 7 || std::stoull(std::string(digits)) > kMaxExponent)
            fail("exponent too large");
        std::uint64_t e = std::stoull(std::string(digits));
        RatFn out = RatFn::constant(k_, Field::one());
        while (e)
        {
            if (e & 1)
                out = out * base;
            e >>= 1;
            if (e)
                base = base * base;
        }
        return out;
    }

    RatFn atom()
    {
        const char c = peek();
        if (c == '(')
        {
            ++pos_;
            RatFn v = expr();
            if (peek() != ')')
                fail("missing ')'");
            ++pos_;
            return v;
        }
        if (c == '-')
        {
            ++pos_;
            return -power();
        }
        if (c == 't')
        {
            if (!allow_t_)
                fail("'t' is not allowed in a constant");
            ++pos_;
            return RatFn::t(k_);
        }
        if (c == 'z')
        {
            if (k_->degree() == 1)
                fail("'z' is not defined over a prime field");
            ++pos_;
            return RatFn::constant(k_, k_->x());
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
        {
            std::uint64_t v = 0;
            const std::uint32_t p = k_->characteristic();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                v = (v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0')) % p;
            return RatFn::constant(k_, k_->from_int(static_cast<std::int64_t>(v)));
        }
        fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
    }

    FieldPtr k_;
    std::string_view text_;
    bool allow_t_;
    std::size_t pos_ = 0;
};

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}
}  // namespace detail

/// A constant of k, e.g. "z", "2*z + 1", "-1".
inline FieldElement parse_element(const FieldPtr& k, std::string_view text)
{
    const RatFn v = detail::ExprParser(k, text, false).parse_all();
    return FieldElement(k, v.num().coeff(0));
}

/// A rational function in t: an expression or a coefficient list "[c0, c1, ...]".
inline RatFn parse_ratfn(const FieldPtr& k, std::string_view text)
{
    const auto s = detail::trim(text);
    if (!s.empty() && s.front() == '[')
    {
        if (s.back() != ']')
            throw ParseError(text, text.size(), "missing ']'");
        std::vector<Elem> coeffs;
        const auto body = s.substr(1, s.size() - 2);
        if (!detail::trim(body).empty())
        {
            std::size_t start = 0;
            for (;;)
            {
                const auto comma = body.find(',', start);
                const auto item = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
                coeffs.push_back(parse_element(k, item).elem());
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
        }
        return RatFn(Poly(k, std::move(coeffs)));
    }
    return detail::ExprParser(k, s, true).parse_all();
}

/// A polynomial in t; rejects genuine fractions.
inline Poly parse_poly(const FieldPtr& k, std::string_view text)
{
    const RatFn v = parse_ratfn(k, text);
    if (v.den().degree() != 0)
        throw ParseError(text, 0, "not a polynomial");
    return v.num().scaled(k->inv(v.den().leading()));
}

/// A point "(x ; y)" on E, or "O" for the identity; the point must lie on the curve.
inline Point parse_point(const Curve& E, std::string_view text)
{
    const auto s = detail::trim(text);
    if (s == "O" || s == "0" || s == "inf")
        return Point::identity();
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ParseError(text, 0, "point literal must look like (x ; y)");
    const auto body = s.substr(1, s.size() - 2);
    const auto semi = body.find(';');
    if (semi == std::string_view::npos || body.find(';', semi + 1) != std::string_view::npos)
        throw ParseError(text, 0, "point literal needs exactly one ';'");
    Point P(parse_ratfn(E.k, body.substr(0, semi)), parse_ratfn(E.k, body.substr(semi + 1)));
    if (!on_curve(E, P))
        throw MathError("point " + std::string(s) + " is not on " + E.to_string());
    return P;
}

/// Inverse of parse_point for affine points and the identity.
inline std::string format_point(const Point& P)
{
    if (P.is_identity())
        return "O";
    return "(" + P.x().to_string() + " ; " + P.y().to_string() + ")";
}

}  // namespace mwl3

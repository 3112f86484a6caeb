// mwl3: arithmetic of cubic-twist elliptic curves in characteristic three
// Copyright 2026 The mwl3 Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <exception>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace mwl3
{
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class for every error raised by the toolkit.
struct Error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// An enumeration or degree budget would be exceeded.
struct GuardError : Error
{
    using Error::Error;
};

/// Operands live in different field contexts.
struct ContextMismatch : Error
{
    using Error::Error;
};

/// A mathematical precondition failed (division by zero, point not on curve, ...).
struct MathError : Error
{
    using Error::Error;
};

/// A verification found a value that contradicts the expected identity.
struct VerificationError : Error
{
    using Error::Error;
};

inline std::string to_string(const BigInt& v)
{
    return v.str();
}

inline std::string to_string(const Rational& v)
{
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

inline double to_double(const Rational& v)
{
    return v.convert_to<double>();
}

inline bool is_integer(const Rational& v)
{
    return boost::multiprecision::denominator(v) == 1;
}

inline BigInt big_pow(BigInt base, std::uint64_t e)
{
    BigInt r = 1;
    while (e != 0)
    {
        if (e & 1u)
            r *= base;
        e >>= 1;
        if (e != 0)
            base *= base;
    }
    return r;
}

/// Signed power (-q)^j as a big integer.
inline BigInt neg_pow(std::uint64_t q, std::uint64_t j)
{
    BigInt r = big_pow(BigInt(q), j);
    return (j % 2 == 1) ? BigInt(-r) : r;
}

/// base^e in 64 bits; throws GuardError on overflow.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i)
    {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw GuardError("integer power overflows 64 bits");
        r *= base;
    }
    return r;
}

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Distinct prime factors by trial division (n < 2^64, small factors expected).
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d)
    {
        if (n % d != 0)
            continue;
        out.push_back(d);
        while (n % d == 0)
            n /= d;
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

/// Prime factorization as (prime, multiplicity) pairs.
inline std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n)
{
    std::vector<std::pair<BigInt, unsigned>> out;
    if (n < 0)
        n = -n;
    for (BigInt d = 2; d * d <= n; ++d)
    {
        unsigned k = 0;
        while (n % d == 0)
        {
            n /= d;
            ++k;
        }
        if (k != 0)
            out.emplace_back(d, k);
    }
    if (n > 1)
        out.emplace_back(n, 1u);
    return out;
}

/// Ceiling of a/b for positive b.
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b)
{
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

// Splits [0, count) into `jobs` contiguous chunks, runs `chunk(begin, end)` on
// each, and folds the partial results with operator+ in chunk order.
template <typename T, typename Chunk>
T parallel_sum(std::uint64_t count, unsigned jobs, Chunk&& chunk)
{
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count < 4096)
        return chunk(std::uint64_t{0}, count);

    std::vector<T> partial(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    const std::uint64_t step = (count + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w)
    {
        const std::uint64_t lo = std::min<std::uint64_t>(count, w * step);
        const std::uint64_t hi = std::min<std::uint64_t>(count, lo + step);
        workers.emplace_back([&, w, lo, hi] {
            try
            {
                partial[w] = chunk(lo, hi);
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    T total{};
    for (auto& p : partial)
        total = total + p;
    return total;
}

}  // namespace mwl3

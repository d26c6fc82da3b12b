#pragma once

// Independent reference implementations for the tests. Nothing here calls
// into the library except for types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Int = std::int64_t;
using Poly = std::vector<mpz_class>;  // lowest degree first

inline Int gcd(Int a, Int b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Int mod(Int x, Int n)
{
    Int r = x % n;
    return r < 0 ? r + n : r;
}

inline Int phi(Int n)
{
    Int c = 0;
    for (Int k = 1; k <= n; ++k)
        c += gcd(k, n) == 1;
    return c;
}

inline std::vector<Int> divisors(Int n)
{
    std::vector<Int> out;
    for (Int d = 1; d <= n; ++d)
        if (n % d == 0)
            out.push_back(d);
    return out;
}

inline std::vector<Int> primes_of(Int n)
{
    std::vector<Int> out;
    for (Int p = 2; p <= n; ++p) {
        bool prime = true;
        for (Int k = 2; k * k <= p; ++k)
            if (p % k == 0)
                prime = false;
        if (prime && n % p == 0)
            out.push_back(p);
    }
    return out;
}

inline int moebius(Int n)
{
    int s = 1;
    for (Int p : primes_of(n)) {
        if ((n / p) % p == 0)
            return 0;
        s = -s;
    }
    return s;
}

inline bool is_prime_power(Int n) { return primes_of(n).size() == 1; }

/// Class of x under x ~ -x mod n, in [0, n/2].
inline Int cls(Int x, Int n)
{
    Int r = mod(x, n);
    return std::min(r, n - r);
}

inline void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    trim(c);
    return c;
}

/// Schoolbook long division by a monic g; returns {quotient, remainder}.
inline std::pair<Poly, Poly> divmod(Poly f, const Poly& g)
{
    trim(f);
    const std::size_t dg = g.size() - 1;
    if (f.size() <= dg)
        return {{}, f};
    Poly q(f.size() - dg);
    for (std::size_t k = f.size(); k-- > dg;) {
        const mpz_class c = f[k];
        if (c == 0)
            continue;
        q[k - dg] = c;
        for (std::size_t j = 0; j <= dg; ++j)
            f[k - dg + j] -= c * g[j];
    }
    trim(f);
    trim(q);
    return {q, f};
}

inline Poly x_pow_minus_one(Int d)
{
    Poly p(static_cast<std::size_t>(d) + 1);
    p[0] = -1;
    p[static_cast<std::size_t>(d)] = 1;
    return p;
}

/// Phi_n = prod_{d | n} (X^d - 1)^{mu(n/d)}.
inline Poly cyclotomic(Int n)
{
    Poly num{1};
    Poly den{1};
    for (Int d : divisors(n)) {
        const int m = moebius(n / d);
        if (m == 1)
            num = mul(num, x_pow_minus_one(d));
        else if (m == -1)
            den = mul(den, x_pow_minus_one(d));
    }
    if (den.back() < 0)
        for (auto& c : den)
            c = -c;
    if (num.back() < 0)
        for (auto& c : num)
            c = -c;
    auto [q, r] = divmod(num, den);
    return q;
}

/// Remainder of sum c_j X^j mod Phi_n, padded to length phi(n).
inline Poly reduce(const Poly& c, Int n)
{
    Poly r = divmod(c, cyclotomic(n)).second;
    r.resize(static_cast<std::size_t>(phi(n)));
    return r;
}

inline std::complex<double> eval(const Poly& c, Int n)
{
    std::complex<double> s = 0;
    for (std::size_t j = 0; j < c.size(); ++j)
        s += c[j].get_d() * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    return s;
}

inline Int ramanujan(Int n, Int s)
{
    double t = 0;
    for (Int k = 1; k <= n; ++k)
        if (gcd(k, n) == 1)
            t += std::cos(2 * std::numbers::pi * static_cast<double>(k * s) / static_cast<double>(n));
    return std::llround(t);
}

/// (nus) ~_{n/c} (1..d) for every c | n, c != 1, by direct comparison of
/// sorted class lists.
inline bool power_constraints(const std::vector<Int>& nus, Int n, Int d)
{
    if (static_cast<Int>(nus.size()) != d)
        return false;
    for (Int c : divisors(n)) {
        if (c == 1)
            continue;
        const Int m = n / c;
        std::vector<Int> a;
        std::vector<Int> b;
        for (Int i = 0; i < d; ++i) {
            a.push_back(cls(nus[static_cast<std::size_t>(i)], m));
            b.push_back(cls(i + 1, m));
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            return false;
    }
    return true;
}

/// All nondecreasing tuples of length d over [0, n/2] satisfying the power
/// constraints, in lexicographic order.
inline std::vector<std::vector<Int>> brute_force_tuples(Int n, Int d)
{
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur;
    auto rec = [&](auto&& self, Int lo) -> void {
        if (static_cast<Int>(cur.size()) == d) {
            if (power_constraints(cur, n, d))
                out.push_back(cur);
            return;
        }
        for (Int x = lo; x <= n / 2; ++x) {
            cur.push_back(x);
            self(self, x);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// Multiplicity of zeta^l among 1, zeta^{+-x}, ..., zeta^{+-m x}.
inline Int theta_multiplicity(Int n, Int m, Int x, Int l)
{
    Int c = 0;
    for (Int j = -m; j <= m; ++j)
        c += mod(j * x - l, n) == 0;
    return c;
}

/// Hand-rolled generator for property tests.
struct Gen {
    std::mt19937_64 rng;

    explicit Gen(std::uint64_t seed) : rng(seed) {}

    Int uniform(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

    Poly poly(std::size_t len, Int lo, Int hi)
    {
        Poly p(len);
        for (auto& c : p)
            c = static_cast<long>(uniform(lo, hi));
        return p;
    }

    Int odd(Int lo, Int hi)
    {
        Int x = uniform(lo, hi);
        return x % 2 ? x : (x + 1 <= hi ? x + 1 : x - 1);
    }
};

} // namespace oracle

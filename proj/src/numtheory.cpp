#include "torsion/numtheory.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace torsion {

Int mod(Int x, Int n)
{
    Int r = x % n;
    return r < 0 ? r + n : r;
}

Int gcd(Int a, Int b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool is_prime(Int m)
{
    if (m < 2)
        return false;
    for (Int p = 2; p * p <= m; ++p)
        if (m % p == 0)
            return false;
    return true;
}

std::vector<PrimePower> factorize(Int m)
{
    if (m < 1)
        throw std::invalid_argument("factorize: expected a positive integer, got " + std::to_string(m));
    std::vector<PrimePower> out;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p != 0)
            continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (m > 1)
        out.push_back({m, 1});
    return out;
}

Int euler_phi(Int m)
{
    Int phi = m;
    for (const auto& [p, e] : factorize(m))
        phi = phi / p * (p - 1);
    return phi;
}

Modulus::Modulus(Int n) : n_(n), radical_(1), factors_(factorize(n))
{
    for (const auto& f : factors_)
        radical_ *= f.prime;
}

Int Modulus::part(Int p) const
{
    for (const auto& [q, e] : factors_) {
        if (q != p)
            continue;
        Int r = 1;
        for (int k = 0; k < e; ++k)
            r *= q;
        return r;
    }
    return 1;
}

std::vector<Int> Modulus::primes() const
{
    std::vector<Int> out;
    out.reserve(factors_.size());
    for (const auto& f : factors_)
        out.push_back(f.prime);
    return out;
}

Int Modulus::smallest_prime() const
{
    if (factors_.empty())
        throw std::domain_error("Modulus::smallest_prime: 1 has no prime divisors");
    return factors_.front().prime;
}

std::vector<Int> Modulus::divisors() const
{
    std::vector<Int> divs{1};
    for (const auto& [p, e] : factors_) {
        const std::size_t base = divs.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j)
                divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

Int valuation(Int p, Int m)
{
    if (m == 0)
        throw std::domain_error("valuation: v_p(0) is undefined");
    if (p < 2)
        throw std::invalid_argument("valuation: p must be prime");
    Int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

int moebius(Int m)
{
    if (m < 1)
        throw std::invalid_argument("moebius: expected m >= 1");
    int sign = 1;
    for (const auto& [p, e] : factorize(m)) {
        if (e > 1)
            return 0;
        sign = -sign;
    }
    return sign;
}

int prime_count(Int m)
{
    if (m < 1)
        throw std::invalid_argument("prime_count: expected m >= 1");
    return static_cast<int>(factorize(m).size());
}

SignedResidue signed_residue(Int x, Int n)
{
    if (n < 1)
        throw std::invalid_argument("signed_residue: modulus must be positive");
    Int r = mod(x, n);
    // r in [0, n); shift into (-n/2, n/2] using 2r > n.
    if (2 * r > n)
        r -= n;
    return {r, n};
}

Int gamma(const Modulus& n, Int x)
{
    Int g = 1;
    for (const auto& [p, e] : n.factors()) {
        const Int np = n.part(p);
        if (2 * p * signed_residue(x, np).abs() < np)
            g *= p;
    }
    return g;
}

int kappa(Int n, Int x)
{
    return mod(x, n) == 0 ? 2 : 1;
}

int delta(Int n, Int x, Int y)
{
    if (n < 1)
        throw std::invalid_argument("delta: modulus must be positive");
    return (mod(x - y, n) == 0 || mod(x + y, n) == 0) ? 1 : 0;
}

std::vector<Int> b_set(const Modulus& n)
{
    if (n.value() < 3)
        throw std::invalid_argument("b_set: expected n >= 3");
    std::vector<Int> out;
    for (Int x = 0; x < n.value(); ++x) {
        bool keep = true;
        for (const auto& [p, e] : n.factors()) {
            const Int np = n.part(p);
            if (!(2 * p * signed_residue(x, np).abs() > np)) {
                keep = false;
                break;
            }
        }
        if (keep)
            out.push_back(x);
    }
    return out;
}

Int gamma_class(Int x, Int n)
{
    const Int r = mod(x, n);
    return 2 * r > n ? n - r : r;
}

GammaClassIndex gamma_class_reps(Int n)
{
    GammaClassIndex idx{Modulus(n), {}};
    for (Int x = 0; x <= n / 2; ++x)
        idx.representatives.push_back(x);
    return idx;
}

Int ramanujan_sum(Int n, Int s)
{
    const Int g = gcd(s, n);
    const Int m = n / g;
    return moebius(m) * (euler_phi(n) / euler_phi(m));
}

} // namespace torsion
